#include "relconv/homogeneous.hpp"
#include "relconv/errors.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <random>

namespace relconv {

namespace {

constexpr double kSampleRadius = 2.0;

Eigen::VectorXd random_coords(std::mt19937_64 &rng, int n)
{
	std::uniform_real_distribution<double> u(-kSampleRadius, kSampleRadius);
	Eigen::VectorXd v(n);
	for (int i = 0; i < n; ++i)
		v[i] = u(rng);
	return v;
}

double x_part_norm(const HomogeneousChart &chart, const GroupPoint &g)
{
	double m = 0.0;
	for (int i : chart.x_indices())
		m = std::max(m, std::abs(g[i]));
	return m;
}

} // namespace

HomogeneousChart::HomogeneousChart(NilpotentAlgebra algebra,
                                   std::vector<int> h_indices)
    : algebra_(std::move(algebra)), h_(std::move(h_indices))
{
	const int n = algebra_.dim();
	std::vector<bool> used(n, false);
	for (int i : h_)
	{
		if (i < 0 || i >= n)
			throw StructuralError(fmt::format(
			    "H index {} out of range for dimension {}", i + 1, n));
		if (used[i])
			throw StructuralError(fmt::format("H index {} repeated", i + 1));
		used[i] = true;
	}
	std::sort(h_.begin(), h_.end());
	for (int i = 0; i < n; ++i)
		if (!used[i])
			x_.push_back(i);
}

HomogeneousChart HomogeneousChart::commutator_chart(const NilpotentAlgebra &a)
{
	return HomogeneousChart(a, commutator_subalgebra(a));
}

GroupPoint HomogeneousChart::embed_h(const HPoint &h) const
{
	if (h.coords.size() != h_dim())
		throw StructuralError(fmt::format("H-point has {} coordinates, chart needs {}",
		                                  h.coords.size(), h_dim()));
	Eigen::VectorXd g = Eigen::VectorXd::Zero(algebra_.dim());
	for (int m = 0; m < h_dim(); ++m)
		g[h_[m]] = h.coords[m];
	return GroupPoint(std::move(g));
}

HPoint HomogeneousChart::h_part(const GroupPoint &g) const
{
	HPoint h{Eigen::VectorXd(h_dim())};
	for (int m = 0; m < h_dim(); ++m)
		h.coords[m] = g[h_[m]];
	return h;
}

Character::Character(const HomogeneousChart &chart, Eigen::VectorXd weight)
    : weight_(std::move(weight))
{
	if (weight_.size() != chart.h_dim())
		throw StructuralError(fmt::format(
		    "character weight has {} entries, H has dimension {}",
		    weight_.size(), chart.h_dim()));
	if (!weight_.allFinite())
		throw StructuralError("character weight is not finite");

	std::mt19937_64 rng(0x5eed);
	double worst = 0.0;
	for (int s = 0; s < 64; ++s)
	{
		HPoint h1{random_coords(rng, chart.h_dim())};
		HPoint h2{random_coords(rng, chart.h_dim())};
		GroupPoint prod = bch_multiply(chart.algebra(), chart.embed_h(h1),
		                               chart.embed_h(h2));
		auto lhs = character_eval(*this, chart.h_part(prod));
		auto rhs = character_eval(*this, h1) * character_eval(*this, h2);
		worst = std::max(worst, std::abs(lhs - rhs));
	}
	if (worst > kExactTolerance)
		throw StructuralError(fmt::format(
		    "weight does not define a character of H (multiplicativity "
		    "residual {:.3e})",
		    worst));
}

XPoint project_p(const HomogeneousChart &chart, const GroupPoint &g)
{
	if (g.dim() != chart.algebra().dim())
		throw StructuralError("project_p: group point has wrong dimension");
	XPoint x{Eigen::VectorXd(chart.x_dim())};
	for (int m = 0; m < chart.x_dim(); ++m)
		x.coords[m] = g[chart.x_indices()[m]];
	return x;
}

GroupPoint section_s(const HomogeneousChart &chart, const XPoint &x)
{
	if (x.coords.size() != chart.x_dim())
		throw StructuralError(fmt::format("X-point has {} coordinates, chart needs {}",
		                                  x.coords.size(), chart.x_dim()));
	Eigen::VectorXd g = Eigen::VectorXd::Zero(chart.algebra().dim());
	for (int m = 0; m < chart.x_dim(); ++m)
		g[chart.x_indices()[m]] = x.coords[m];
	return GroupPoint(std::move(g));
}

ValidationVerdict validate_chart(const HomogeneousChart &chart,
                                 int sample_count, std::uint64_t seed)
{
	ValidationVerdict v;
	const auto &a = chart.algebra();

	auto &contain = v.add("contains_commutator", 0.0, 0.0);
	try
	{
		auto comm = commutator_subalgebra(a);
		std::vector<int> missing;
		std::set_difference(comm.begin(), comm.end(), chart.h_indices().begin(),
		                    chart.h_indices().end(), std::back_inserter(missing));
		contain.residual = static_cast<double>(missing.size());
		contain.pass = missing.empty();
		if (!missing.empty())
			contain.note = fmt::format("{} commutator direction(s) missing from H",
			                           missing.size());
	}
	catch (const NonAdaptedBasis &e)
	{
		contain.residual = INFINITY;
		contain.pass = false;
		contain.note = e.what();
	}

	// g1, g2 share their X-coordinates and differ in the H-block.
	std::mt19937_64 rng(seed);
	double worst = 0.0;
	for (int s = 0; s < sample_count; ++s)
	{
		Eigen::VectorXd c1 = random_coords(rng, a.dim());
		Eigen::VectorXd c2 = c1;
		Eigen::VectorXd hc = random_coords(rng, chart.h_dim());
		for (int m = 0; m < chart.h_dim(); ++m)
			c2[chart.h_indices()[m]] = hc[m];
		GroupPoint g1(std::move(c1)), g2(std::move(c2));
		worst = std::max(worst,
		                 x_part_norm(chart, bch_multiply(a, inverse(g1), g2)));
	}
	v.add("well_defined_projection", worst, kExactTolerance);
	return v;
}

ValidationVerdict check_ccp(const HomogeneousChart &chart, int sample_count,
                            std::uint64_t seed)
{
	const auto &a = chart.algebra();
	std::mt19937_64 rng(seed);
	double worst = 0.0;
	for (int s = 0; s < sample_count; ++s)
	{
		XPoint x{random_coords(rng, chart.x_dim())};
		GroupPoint g(random_coords(rng, a.dim()));
		GroupPoint conj = conjugate(a, g, section_s(chart, x));
		double r = (project_p(chart, conj).coords - project_p(chart, g).coords)
		               .cwiseAbs()
		               .maxCoeff();
		if (chart.x_dim() == 0)
			r = 0.0;
		worst = std::max(worst, r);
	}
	ValidationVerdict v;
	v.add("complemented_commutator", worst, kExactTolerance).note =
	    fmt::format("{} samples, seed {}", sample_count, seed);
	return v;
}

HPoint h_of_xg(const HomogeneousChart &chart, const XPoint &x,
               const GroupPoint &g)
{
	const auto &a = chart.algebra();
	GroupPoint h = bch_multiply(a, inverse(g), conjugate(a, g, section_s(chart, x)));
	double r = x_part_norm(chart, h);
	if (r > kExactTolerance)
		throw CcpViolation(
		    fmt::format("g^-1 s(x)^-1 g s(x) has X-part {:.3e}; chart lacks the "
		                "complemented commutator property",
		                r),
		    r);
	return chart.h_part(h);
}

std::complex<double> character_eval(const Character &chi, const HPoint &h)
{
	if (h.coords.size() != chi.weight().size())
		throw StructuralError("character_eval: H-point has wrong dimension");
	return std::polar(1.0, chi.weight().dot(h.coords));
}

} // namespace relconv
