#include "relconv/lie_core.hpp"
#include "relconv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace relconv {

namespace {

void require_length(const NilpotentAlgebra &a, Eigen::Index n,
                    const char *what)
{
	if (n != a.dim())
		throw StructuralError(fmt::format("{}: expected length {}, got {}",
		                                  what, a.dim(), n));
}

/// Orthonormal basis (as columns) of the span of the given columns.
Eigen::MatrixXd span_basis(const Eigen::MatrixXd &vectors)
{
	if (vectors.cols() == 0)
		return Eigen::MatrixXd(vectors.rows(), 0);
	Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeThinU);
	const auto &sv = svd.singularValues();
	Eigen::Index rank = 0;
	while (rank < sv.size() && sv[rank] > kExactTolerance)
		++rank;
	return svd.matrixU().leftCols(rank);
}

/// All brackets [e_i, b] for b a column of `ideal`.
Eigen::MatrixXd bracket_with_algebra(const NilpotentAlgebra &a,
                                     const Eigen::MatrixXd &ideal)
{
	const int n = a.dim();
	Eigen::MatrixXd out(n, n * ideal.cols());
	for (int i = 0; i < n; ++i)
		for (Eigen::Index b = 0; b < ideal.cols(); ++b)
			out.col(i * ideal.cols() + b) =
			    bracket(a, Eigen::VectorXd::Unit(n, i), ideal.col(b));
	return out;
}

} // namespace

NilpotentAlgebra::NilpotentAlgebra(int dim, int step,
                                   std::vector<double> constants)
    : dim_(dim), step_(step), c_(std::move(constants))
{
	if (dim <= 0)
		throw StructuralError(fmt::format("algebra dimension must be positive, got {}", dim));
	if (step <= 0)
		throw StructuralError(fmt::format("nilpotency step must be positive, got {}", step));
	const size_t expected = static_cast<size_t>(dim) * dim * dim;
	if (c_.size() != expected)
		throw StructuralError(fmt::format(
		    "structure constants: expected {}x{}x{} = {} entries, got {}", dim,
		    dim, dim, expected, c_.size()));
	for (int i = 0; i < dim; ++i)
		for (int j = 0; j < dim; ++j)
			for (int k = 0; k < dim; ++k)
			{
				double v = constant(i, j, k);
				if (!std::isfinite(v))
					throw StructuralError(fmt::format(
					    "structure constant c[{}][{}][{}] is not finite", i, j, k));
				if (v != 0.0)
					terms_.push_back({i, j, k, v});
			}
}

NilpotentAlgebra NilpotentAlgebra::from_terms(int dim, int step,
                                              std::span<const BracketTerm> terms)
{
	if (dim <= 0)
		throw StructuralError(fmt::format("algebra dimension must be positive, got {}", dim));
	std::vector<double> c(static_cast<size_t>(dim) * dim * dim, 0.0);
	for (const auto &t : terms)
	{
		if (t.i < 0 || t.i >= dim || t.j < 0 || t.j >= dim || t.k < 0 ||
		    t.k >= dim)
			throw StructuralError(fmt::format(
			    "bracket term ({}, {}, {}) out of range for dimension {}",
			    t.i, t.j, t.k, dim));
		c[(static_cast<size_t>(t.i) * dim + t.j) * dim + t.k] += t.value;
	}
	return NilpotentAlgebra(dim, step, std::move(c));
}

NilpotentAlgebra NilpotentAlgebra::heisenberg()
{
	const BracketTerm terms[] = {{0, 1, 2, 1.0}, {1, 0, 2, -1.0}};
	return from_terms(3, 2, terms);
}

NilpotentAlgebra NilpotentAlgebra::abelian(int dim)
{
	return from_terms(dim, 1, {});
}

NilpotentAlgebra NilpotentAlgebra::free_step2(int generators)
{
	if (generators < 2)
		throw StructuralError("free step-2 algebra needs at least 2 generators");
	const int dim = generators + generators * (generators - 1) / 2;
	std::vector<BracketTerm> terms;
	int k = generators;
	for (int a = 0; a < generators; ++a)
		for (int b = a + 1; b < generators; ++b, ++k)
		{
			terms.push_back({a, b, k, 1.0});
			terms.push_back({b, a, k, -1.0});
		}
	return from_terms(dim, 2, terms);
}

NilpotentAlgebra NilpotentAlgebra::engel()
{
	const BracketTerm terms[] = {
	    {0, 1, 2, 1.0}, {1, 0, 2, -1.0}, {0, 2, 3, 1.0}, {2, 0, 3, -1.0}};
	return from_terms(4, 3, terms);
}

GroupPoint::GroupPoint(Eigen::VectorXd coords) : coords_(std::move(coords))
{
	if (!coords_.allFinite())
		throw StructuralError("group point has non-finite coordinates");
}

GroupPoint::GroupPoint(std::initializer_list<double> coords)
    : GroupPoint(Eigen::Map<const Eigen::VectorXd>(
          coords.begin(), static_cast<Eigen::Index>(coords.size())))
{}

GroupPoint GroupPoint::identity(int dim)
{
	return GroupPoint(Eigen::VectorXd::Zero(dim));
}

ValidationVerdict validate_algebra(const NilpotentAlgebra &a)
{
	const int n = a.dim();
	ValidationVerdict v;

	double anti = 0.0;
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			for (int k = 0; k < n; ++k)
				anti = std::max(anti, std::abs(a.constant(i, j, k) +
				                               a.constant(j, i, k)));
	v.add("antisymmetry", anti, kExactTolerance);

	double jacobi = 0.0;
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			for (int l = 0; l < n; ++l)
				for (int k = 0; k < n; ++k)
				{
					double s = 0.0;
					for (int m = 0; m < n; ++m)
						s += a.constant(i, j, m) * a.constant(m, l, k) +
						     a.constant(j, l, m) * a.constant(m, i, k) +
						     a.constant(l, i, m) * a.constant(m, j, k);
					jacobi = std::max(jacobi, std::abs(s));
				}
	v.add("jacobi", jacobi, kExactTolerance);

	// g_1 = g, g_{k+1} = [g, g_k]; the declared step must kill g_{step+1}.
	Eigen::MatrixXd ideal = Eigen::MatrixXd::Identity(n, n);
	for (int k = 1; k < a.step() && ideal.cols() > 0; ++k)
		ideal = span_basis(bracket_with_algebra(a, ideal));
	double tail = 0.0;
	if (ideal.cols() > 0)
		tail = bracket_with_algebra(a, ideal).cwiseAbs().maxCoeff();
	v.add("nilpotency", tail, kExactTolerance);

	const int length = lower_central_series_length(a);
	auto &step_check =
	    v.add("step", length < 0 ? INFINITY : std::abs(length - a.step()), 0.0);
	step_check.note = fmt::format("declared {}, lower central series length {}",
	                              a.step(), length);
	return v;
}

int lower_central_series_length(const NilpotentAlgebra &a)
{
	const int n = a.dim();
	Eigen::MatrixXd ideal = Eigen::MatrixXd::Identity(n, n);
	for (int length = 1; length <= n + 1; ++length)
	{
		ideal = span_basis(bracket_with_algebra(a, ideal));
		if (ideal.cols() == 0)
			return length;
	}
	return -1;
}

Eigen::VectorXd bracket(const NilpotentAlgebra &a, const Eigen::VectorXd &x,
                        const Eigen::VectorXd &y)
{
	require_length(a, x.size(), "bracket lhs");
	require_length(a, y.size(), "bracket rhs");
	Eigen::VectorXd out = Eigen::VectorXd::Zero(a.dim());
	for (const auto &t : a.nonzero_terms())
		out[t.k] += x[t.i] * y[t.j] * t.value;
	return out;
}

GroupPoint bch_multiply(const NilpotentAlgebra &a, const GroupPoint &g1,
                        const GroupPoint &g2)
{
	if (a.step() > 3)
		throw UnsupportedStep(a.step());
	require_length(a, g1.dim(), "bch_multiply lhs");
	require_length(a, g2.dim(), "bch_multiply rhs");
	const auto &x = g1.coords();
	const auto &y = g2.coords();
	Eigen::VectorXd z = x + y;
	if (a.step() >= 2)
	{
		Eigen::VectorXd xy = bracket(a, x, y);
		z += 0.5 * xy;
		if (a.step() >= 3)
			z += (bracket(a, x, xy) - bracket(a, y, xy)) / 12.0;
	}
	return GroupPoint(std::move(z));
}

GroupPoint inverse(const GroupPoint &g)
{
	return GroupPoint(Eigen::VectorXd(-g.coords()));
}

GroupPoint conjugate(const NilpotentAlgebra &a, const GroupPoint &g,
                     const GroupPoint &by)
{
	return bch_multiply(a, bch_multiply(a, inverse(by), g), by);
}

std::vector<int> commutator_subalgebra(const NilpotentAlgebra &a)
{
	const int n = a.dim();
	Eigen::MatrixXd brackets(n, n * n);
	for (int i = 0; i < n; ++i)
		for (int j = 0; j < n; ++j)
			for (int k = 0; k < n; ++k)
				brackets(k, i * n + j) = a.constant(i, j, k);

	std::vector<int> support;
	for (int k = 0; k < n; ++k)
		if (brackets.row(k).cwiseAbs().maxCoeff() > kExactTolerance)
			support.push_back(k);
	if (support.empty())
		return support;

	const int first = n - static_cast<int>(support.size());
	for (size_t m = 0; m < support.size(); ++m)
		if (support[m] != first + static_cast<int>(m))
			throw NonAdaptedBasis(fmt::format(
			    "brackets touch basis vector e{} outside a trailing block; "
			    "change to an adapted basis",
			    support[m] + 1));
	const auto rank = span_basis(brackets).cols();
	if (rank != static_cast<Eigen::Index>(support.size()))
		throw NonAdaptedBasis(fmt::format(
		    "brackets span a {}-dimensional subspace of the {}-dimensional "
		    "trailing block; change to an adapted basis",
		    rank, support.size()));
	return support;
}

} // namespace relconv
