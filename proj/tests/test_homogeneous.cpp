#include "relconv/errors.hpp"
#include "relconv/homogeneous.hpp"

#include <gtest/gtest.h>
#include <numbers>
#include <random>

using namespace relconv;

namespace {

Eigen::VectorXd uniform_vec(std::mt19937_64 &rng, int n, double r = 2.0)
{
	std::uniform_real_distribution<double> u(-r, r);
	Eigen::VectorXd v(n);
	for (int i = 0; i < n; ++i)
		v[i] = u(rng);
	return v;
}

} // namespace

TEST(Chart, HeisenbergProjectionAndSection)
{
	auto chart = HomogeneousChart::commutator_chart(NilpotentAlgebra::heisenberg());
	EXPECT_EQ(chart.h_indices(), std::vector<int>{2});
	EXPECT_EQ(chart.x_indices(), (std::vector<int>{0, 1}));

	XPoint x = project_p(chart, GroupPoint{1.5, -2.0, 7.0});
	EXPECT_EQ(x.coords, Eigen::VectorXd(Eigen::Vector2d(1.5, -2.0)));
	EXPECT_EQ(section_s(chart, x).coords(), Eigen::VectorXd(Eigen::Vector3d(1.5, -2.0, 0.0)));

	std::mt19937_64 rng(2);
	for (int s = 0; s < 100; ++s)
	{
		XPoint p{uniform_vec(rng, 2)};
		EXPECT_EQ(project_p(chart, section_s(chart, p)).coords, p.coords);
	}
}

TEST(Chart, RejectsBadIndices)
{
	auto a = NilpotentAlgebra::heisenberg();
	EXPECT_THROW(HomogeneousChart(a, {3}), StructuralError);
	EXPECT_THROW(HomogeneousChart(a, {2, 2}), StructuralError);
	EXPECT_THROW(HomogeneousChart(a, {-1}), StructuralError);
}

TEST(Chart, ValidateFlagsMissingCommutator)
{
	auto a = NilpotentAlgebra::heisenberg();
	EXPECT_TRUE(validate_chart(HomogeneousChart(a, {2})).pass());
	EXPECT_TRUE(validate_chart(HomogeneousChart(a, {1, 2})).pass());
	auto bad = validate_chart(HomogeneousChart(a, {1}));
	EXPECT_FALSE(bad.pass());
	EXPECT_FALSE(bad.find("contains_commutator")->pass);
}

TEST(Ccp, PassesForCommutatorAndLargerSubgroups)
{
	for (const auto &a : {NilpotentAlgebra::heisenberg(), NilpotentAlgebra::free_step2(3)})
	{
		auto chart = HomogeneousChart::commutator_chart(a);
		auto v = check_ccp(chart, 1000, 42);
		EXPECT_TRUE(v.pass()) << v.max_residual();
		EXPECT_LE(v.max_residual(), kExactTolerance);
	}
	// H strictly larger than the commutator: add a generator direction.
	EXPECT_TRUE(check_ccp(HomogeneousChart(NilpotentAlgebra::heisenberg(), {1, 2}), 1000, 42).pass());
	EXPECT_TRUE(
	    check_ccp(HomogeneousChart(NilpotentAlgebra::free_step2(3), {2, 3, 4, 5}), 1000, 42).pass());
}

TEST(Ccp, FailsForChartMissingCommutator)
{
	// H = span(e2) on Heisenberg: s(x)^{-1} g s(x) moves along e3, which is in X.
	auto v = check_ccp(HomogeneousChart(NilpotentAlgebra::heisenberg(), {1}), 1000, 42);
	EXPECT_FALSE(v.pass());
	EXPECT_GT(v.max_residual(), 1e-3);
	// Trivial H on free step-2.
	EXPECT_FALSE(check_ccp(HomogeneousChart(NilpotentAlgebra::free_step2(3), {}), 1000, 42).pass());
}

TEST(Ccp, DeterministicInSeed)
{
	HomogeneousChart bad(NilpotentAlgebra::heisenberg(), {1});
	EXPECT_EQ(check_ccp(bad, 200, 9).max_residual(), check_ccp(bad, 200, 9).max_residual());
	EXPECT_NE(check_ccp(bad, 200, 9).max_residual(), check_ccp(bad, 200, 10).max_residual());
}

TEST(HOfXg, HeisenbergClosedForm)
{
	// g = (u,v,s), s(x) = (x,y,0). With [e1,e2] = e3 and step 2,
	// g^{-1} s(x)^{-1} = (-u-x, -v-y, -s + (u y - v x)/2),
	// g s(x)            = ( u+x,  v+y,  s + (u y - v x)/2),
	// and the product of opposite X-parts leaves only the centre terms:
	// h = u y - v x.
	auto chart = HomogeneousChart::commutator_chart(NilpotentAlgebra::heisenberg());
	std::mt19937_64 rng(1234);
	double worst = 0.0;
	for (int s = 0; s < 1000; ++s)
	{
		Eigen::VectorXd g = uniform_vec(rng, 3, 3.0), x = uniform_vec(rng, 2, 3.0);
		HPoint h = h_of_xg(chart, XPoint{x}, GroupPoint(g));
		ASSERT_EQ(h.coords.size(), 1);
		const double oracle = g[0] * x[1] - g[1] * x[0];
		worst = std::max(worst, std::abs(h.coords[0] - oracle));
	}
	EXPECT_LE(worst, kExactTolerance);
}

TEST(HOfXg, ViolationRaises)
{
	HomogeneousChart bad(NilpotentAlgebra::heisenberg(), {1});
	EXPECT_THROW(h_of_xg(bad, XPoint{Eigen::Vector2d(1.0, 0.0)}, GroupPoint{0.0, 1.0, 0.0}),
	             CcpViolation);
	try
	{
		h_of_xg(bad, XPoint{Eigen::Vector2d(1.0, 0.0)}, GroupPoint{0.0, 1.0, 0.0});
	}
	catch (const CcpViolation &e)
	{
		EXPECT_GT(e.residual, 0.5);
	}
}

TEST(CharacterTest, MultiplicativeOnAbelianH)
{
	auto chart = HomogeneousChart::commutator_chart(NilpotentAlgebra::free_step2(3));
	Character chi(chart, Eigen::Vector3d(0.7, -1.1, 2.0));
	std::mt19937_64 rng(4);
	double worst = 0.0;
	for (int s = 0; s < 200; ++s)
	{
		HPoint h1{uniform_vec(rng, 3)}, h2{uniform_vec(rng, 3)};
		HPoint sum{h1.coords + h2.coords};
		worst = std::max(worst, std::abs(character_eval(chi, sum) -
		                                 character_eval(chi, h1) * character_eval(chi, h2)));
		EXPECT_NEAR(std::abs(character_eval(chi, h1)), 1.0, 1e-15);
	}
	EXPECT_LE(worst, kExactTolerance);
	EXPECT_EQ(character_eval(chi, HPoint{Eigen::Vector3d::Zero()}), std::complex<double>(1.0));
}

TEST(CharacterTest, ValueMatchesPolarForm)
{
	auto chart = HomogeneousChart::commutator_chart(NilpotentAlgebra::heisenberg());
	Character chi(chart, Eigen::VectorXd::Constant(1, -1.0));
	auto z = character_eval(chi, HPoint{Eigen::VectorXd::Constant(1, std::numbers::pi / 2)});
	EXPECT_NEAR(z.real(), 0.0, 1e-15);
	EXPECT_NEAR(z.imag(), -1.0, 1e-15);
}

TEST(CharacterTest, NonMultiplicativeWeightRejected)
{
	// H = span(e1, e2, e3) on Heisenberg is the whole (non-abelian) group;
	// a weight that sees the centre is not a character.
	HomogeneousChart whole(NilpotentAlgebra::heisenberg(), {0, 1, 2});
	EXPECT_THROW(Character(whole, Eigen::Vector3d(0.0, 0.0, 1.0)), StructuralError);
	EXPECT_NO_THROW(Character(whole, Eigen::Vector3d(1.0, 2.0, 0.0)));
	auto chart = HomogeneousChart::commutator_chart(NilpotentAlgebra::heisenberg());
	EXPECT_THROW(Character(chart, Eigen::Vector2d(1.0, 0.0)), StructuralError);
}
