#pragma once

// Nilpotent Lie algebras given by structure constants, and the group law in
// exponential coordinates of the first kind.

#include "relconv/verdict.hpp"

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace relconv {

/// Residual tolerance for identities that are exact polynomials.
inline constexpr double kExactTolerance = 1e-12;

/// One nonzero structure constant: [e_i, e_j] has coefficient `value` on e_k.
/// Indices are 0-based.
struct BracketTerm
{
	int i = 0;
	int j = 0;
	int k = 0;
	double value = 0.0;
};

class NilpotentAlgebra
{
  public:
	/// `constants` is the dense tensor c[i][j][k] in row-major order, length
	/// dim^3. Throws StructuralError on shape mismatch or non-finite entries.
	NilpotentAlgebra(int dim, int step, std::vector<double> constants);

	/// Builds the tensor from a sparse list. Terms are taken literally: no
	/// antisymmetric partner is added. Repeated (i, j, k) entries accumulate.
	static NilpotentAlgebra from_terms(int dim, int step,
	                                   std::span<const BracketTerm> terms);

	/// [e1, e2] = e3.
	static NilpotentAlgebra heisenberg();
	static NilpotentAlgebra abelian(int dim);
	/// Free step-2 algebra on `generators` generators; the brackets
	/// [e_a, e_b] (a < b) follow in lexicographic order.
	static NilpotentAlgebra free_step2(int generators);
	/// [e1, e2] = e3, [e1, e3] = e4. Step 3.
	static NilpotentAlgebra engel();

	int dim() const { return dim_; }
	int step() const { return step_; }
	double constant(int i, int j, int k) const
	{
		return c_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k];
	}
	const std::vector<double> &constants() const { return c_; }
	const std::vector<BracketTerm> &nonzero_terms() const { return terms_; }

  private:
	int dim_;
	int step_;
	std::vector<double> c_;
	std::vector<BracketTerm> terms_;
};

/// Exponential coordinates of a group element. Coordinates are finite.
class GroupPoint
{
  public:
	GroupPoint() = default;
	explicit GroupPoint(Eigen::VectorXd coords);
	GroupPoint(std::initializer_list<double> coords);

	static GroupPoint identity(int dim);

	int dim() const { return static_cast<int>(coords_.size()); }
	const Eigen::VectorXd &coords() const { return coords_; }
	double operator[](int i) const { return coords_[i]; }

  private:
	Eigen::VectorXd coords_;
};

/// Antisymmetry, Jacobi, and nilpotency of the declared step, each with its
/// maximal residual. Passes iff all residuals are within kExactTolerance.
ValidationVerdict validate_algebra(const NilpotentAlgebra &a);

/// Number of nonzero terms of the lower central series g ⊃ [g,g] ⊃ ...
/// Returns -1 if the series does not terminate within dim + 1 steps.
int lower_central_series_length(const NilpotentAlgebra &a);

Eigen::VectorXd bracket(const NilpotentAlgebra &a, const Eigen::VectorXd &x,
                        const Eigen::VectorXd &y);

/// exp(g1) exp(g2) via the BCH series truncated after the nested brackets of
/// depth 3. Exact for step <= 3; larger steps throw UnsupportedStep.
GroupPoint bch_multiply(const NilpotentAlgebra &a, const GroupPoint &g1,
                        const GroupPoint &g2);

GroupPoint inverse(const GroupPoint &g);

/// by^{-1} g by
GroupPoint conjugate(const NilpotentAlgebra &a, const GroupPoint &g,
                     const GroupPoint &by);

/// 0-based indices of the basis vectors spanning [g, g]. The basis must be
/// adapted: the brackets span exactly a trailing block of basis vectors.
/// Throws NonAdaptedBasis otherwise.
std::vector<int> commutator_subalgebra(const NilpotentAlgebra &a);

} // namespace relconv
