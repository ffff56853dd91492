#pragma once

// The homogeneous space X = G/H realised as a block of exponential
// coordinates, with the zero-fill section s: X -> G.

#include "relconv/lie_core.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace relconv {

struct XPoint
{
	Eigen::VectorXd coords;
};

struct HPoint
{
	Eigen::VectorXd coords;
};

class HomogeneousChart
{
  public:
	/// `h_indices` are 0-based; the X-coordinates are the complement in
	/// increasing order. Throws StructuralError on duplicates or
	/// out-of-range indices. Containment of [g,g] is not enforced here so
	/// that invalid charts can still be diagnosed; see validate_chart.
	HomogeneousChart(NilpotentAlgebra algebra, std::vector<int> h_indices);

	/// The chart with H = exp([g,g]).
	static HomogeneousChart commutator_chart(const NilpotentAlgebra &algebra);

	const NilpotentAlgebra &algebra() const { return algebra_; }
	const std::vector<int> &h_indices() const { return h_; }
	const std::vector<int> &x_indices() const { return x_; }
	int x_dim() const { return static_cast<int>(x_.size()); }
	int h_dim() const { return static_cast<int>(h_.size()); }

	/// Embeds an H-point as a group element with zero X-coordinates.
	GroupPoint embed_h(const HPoint &h) const;
	HPoint h_part(const GroupPoint &g) const;

  private:
	NilpotentAlgebra algebra_;
	std::vector<int> h_;
	std::vector<int> x_;
};

/// Unitary character exp(i λ·h) of H.
class Character
{
  public:
	/// Checks multiplicativity on sampled pairs of H (H must be abelian or
	/// the weight must vanish on [h, h]); throws StructuralError otherwise.
	Character(const HomogeneousChart &chart, Eigen::VectorXd weight);

	const Eigen::VectorXd &weight() const { return weight_; }

  private:
	Eigen::VectorXd weight_;
};

XPoint project_p(const HomogeneousChart &chart, const GroupPoint &g);
GroupPoint section_s(const HomogeneousChart &chart, const XPoint &x);

/// Chart invariants: H contains [g,g], and the projection is well defined
/// on cosets (g1^{-1} g2 has zero X-part whenever p(g1) = p(g2)).
ValidationVerdict validate_chart(const HomogeneousChart &chart,
                                 int sample_count = 1000,
                                 std::uint64_t seed = 1);

/// Samples p(s(x)^{-1} g s(x)) = p(g) on `sample_count` pseudorandom pairs
/// with coordinates uniform in [-2, 2]. Deterministic in `seed`.
ValidationVerdict check_ccp(const HomogeneousChart &chart, int sample_count,
                            std::uint64_t seed);

/// h(x, g) = g^{-1} s(x)^{-1} g s(x). Throws CcpViolation if the product
/// has X-coordinates above kExactTolerance.
HPoint h_of_xg(const HomogeneousChart &chart, const XPoint &x,
               const GroupPoint &g);

std::complex<double> character_eval(const Character &chi, const HPoint &h);

} // namespace relconv
