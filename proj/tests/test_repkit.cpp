#include "relconv/bounds.hpp"
#include "relconv/errors.hpp"
#include "relconv/kernels.hpp"
#include "relconv/repkit.hpp"

#include <gtest/gtest.h>
#include <numbers>
#include <random>

using namespace relconv;

namespace {

HomogeneousChart centre_chart()
{
	return HomogeneousChart::commutator_chart(NilpotentAlgebra::heisenberg());
}

SchrodingerRep make_rep(double lambda = 1.0, RepGrid grid = RepGrid(-12.0, 12.0, 256))
{
	return SchrodingerRep(centre_chart(), lambda, grid);
}

GroupPoint random_point(std::mt19937_64 &rng, double r)
{
	std::uniform_real_distribution<double> u(-r, r);
	return GroupPoint{u(rng), u(rng), u(rng)};
}

StateVector random_state(std::mt19937_64 &rng, const RepGrid &grid)
{
	std::normal_distribution<double> n;
	Eigen::VectorXcd s(grid.n_points);
	for (auto &z : s)
		z = Complex(n(rng), n(rng));
	return StateVector(grid, s);
}

double rel_diff(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b)
{
	return (a - b).norm() / std::max(b.norm(), 1e-300);
}

double max_abs_diff(const std::vector<Complex> &a, const std::vector<Complex> &b)
{
	double m = 0.0;
	for (size_t i = 0; i < a.size(); ++i)
		m = std::max(m, std::abs(a[i] - b[i]));
	return m;
}

} // namespace

TEST(States, HermiteFunctionsAreOrthonormal)
{
	RepGrid grid(-12.0, 12.0, 256);
	for (int a = 0; a < 10; ++a)
		for (int b = 0; b < 10; ++b)
		{
			const Complex ip = inner(hermite_state(grid, a), hermite_state(grid, b));
			EXPECT_NEAR(std::abs(ip - Complex(a == b ? 1.0 : 0.0)), 0.0, 1e-12) << a << "," << b;
		}
}

TEST(States, GridValidation)
{
	EXPECT_THROW(RepGrid(0.0, 1.0, 7), StructuralError);
	EXPECT_THROW(RepGrid(1.0, 1.0, 64), StructuralError);
	RepGrid grid(-1.0, 1.0, 16);
	EXPECT_THROW(StateVector(grid, Eigen::VectorXcd::Zero(15)), StructuralError);
	Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(16);
	bad[3] = Complex(NAN, 0.0);
	EXPECT_THROW(StateVector(grid, bad), StructuralError);
}

TEST(Rep, RejectsNonHeisenbergAndZeroLambda)
{
	EXPECT_THROW(SchrodingerRep(centre_chart(), 0.0, RepGrid(-1, 1, 16)), StructuralError);
	auto engel = HomogeneousChart::commutator_chart(NilpotentAlgebra::engel());
	EXPECT_THROW(SchrodingerRep(engel, 1.0, RepGrid(-1, 1, 16)), StructuralError);
	auto rep = make_rep();
	EXPECT_THROW(rep_apply(rep, GroupPoint{0.0, 0.0}, gaussian_state(rep.grid())),
	             StructuralError);
	EXPECT_THROW(rep_apply(rep, GroupPoint{0.0, 0.0, 0.0}, gaussian_state(RepGrid(-1, 1, 16))),
	             StructuralError);
}

TEST(Rep, GaussianMatchesStraightLineEvaluation)
{
	// [π(u,v,s)φ](t) = exp(iλ(s - u t - u v/2)) φ(t + v) with φ evaluated
	// analytically at t + v.
	RepGrid grid(-10.0, 10.0, 128);
	std::mt19937_64 rng(21);
	for (double lambda : {1.0, -0.7, 2.5})
	{
		auto rep = make_rep(lambda, grid);
		auto phi = gaussian_state(grid);
		for (int k = 0; k < 20; ++k)
		{
			auto g = random_point(rng, 1.0);
			Eigen::VectorXcd want(grid.n_points);
			for (int i = 0; i < grid.n_points; ++i)
			{
				const double t = grid.node(i);
				want[i] = std::polar(1.0, lambda * (g[2] - g[0] * t - 0.5 * g[0] * g[1])) *
				          std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * (t + g[1]) * (t + g[1]));
			}
			auto got = rep_apply(rep, g, phi);
			EXPECT_LE((got.state.samples() - want).cwiseAbs().maxCoeff(), 1e-12);
			EXPECT_FALSE(got.truncated);
		}
	}
}

TEST(Rep, HomomorphismOnGaussian)
{
	auto rep = make_rep();
	auto v = gaussian_state(rep.grid());
	const auto &alg = rep.chart().algebra();
	std::mt19937_64 rng(22);
	double worst = 0.0;
	for (int k = 0; k < 50; ++k)
	{
		auto g1 = random_point(rng, 1.5), g2 = random_point(rng, 1.5);
		auto two_step = rep_apply(rep, g1, rep_apply(rep, g2, v).state).state;
		auto direct = rep_apply(rep, bch_multiply(alg, g1, g2), v).state;
		worst = std::max(worst, norm(StateVector(rep.grid(), two_step.samples() - direct.samples())) /
		                            norm(v));
	}
	EXPECT_LE(worst, 1e-8);
}

TEST(Rep, UnitaryOnArbitraryVectors)
{
	auto rep = make_rep(1.3);
	std::mt19937_64 rng(23);
	for (int k = 0; k < 50; ++k)
	{
		auto w = random_state(rng, rep.grid());
		auto g = random_point(rng, 5.0);
		EXPECT_NEAR(norm(rep_apply(rep, g, w).state) / norm(w), 1.0, 1e-12);
	}
}

TEST(Rep, CentreActsByScalar)
{
	auto rep = make_rep(0.8);
	std::mt19937_64 rng(24);
	auto w = random_state(rng, rep.grid());
	auto out = rep_apply(rep, GroupPoint{0.0, 0.0, 1.7}, w).state;
	EXPECT_LE(rel_diff(out.samples(), std::polar(1.0, 0.8 * 1.7) * w.samples()), 1e-15);
}

TEST(Rep, TruncationFlag)
{
	auto rep = make_rep();
	auto v = gaussian_state(rep.grid());
	auto near = rep_apply(rep, GroupPoint{0.0, 1.0, 0.0}, v);
	EXPECT_FALSE(near.truncated);
	EXPECT_LT(near.wrapped_mass, kWrapTolerance);
	auto far = rep_apply(rep, GroupPoint{0.0, 15.0, 0.0}, v);
	EXPECT_TRUE(far.truncated);
	EXPECT_GT(far.wrapped_mass, 0.9);
	EXPECT_TRUE(rep_apply(rep, GroupPoint{0.0, -15.0, 0.0}, v).truncated);
}

TEST(Wavelet, GaussianAmbiguityClosedForm)
{
	// <φ, π(u,v,0)φ> = exp(-(λ² u² + v²)/4) for the normalised Gaussian.
	for (double lambda : {1.0, 2.0, -1.5})
	{
		auto rep = make_rep(lambda);
		auto phi = gaussian_state(rep.grid());
		std::mt19937_64 rng(31);
		std::uniform_real_distribution<double> u(-3.0, 3.0);
		for (int k = 0; k < 40; ++k)
		{
			const double a = u(rng), b = u(rng);
			const Complex w = wavelet_transform(rep, phi, phi, GroupPoint{a, b, 0.0});
			EXPECT_NEAR(std::abs(w - std::exp(-(lambda * lambda * a * a + b * b) / 4)), 0.0, 1e-12);
		}
	}
}

TEST(Wavelet, CauchySchwarzAndLinearity)
{
	auto rep = make_rep();
	auto phi = gaussian_state(rep.grid());
	std::mt19937_64 rng(32);
	auto v1 = hermite_state(rep.grid(), 3), v2 = random_state(rng, rep.grid());
	const Complex alpha(0.3, -1.2);
	StateVector mix(rep.grid(), alpha * v1.samples() + v2.samples());
	for (int k = 0; k < 50; ++k)
	{
		auto g = random_point(rng, 4.0);
		EXPECT_LE(std::abs(wavelet_transform(rep, v2, phi, g)), norm(v2) * norm(phi) * (1 + 1e-12));
		const Complex lhs = wavelet_transform(rep, mix, phi, g);
		const Complex rhs =
		    alpha * wavelet_transform(rep, v1, phi, g) + wavelet_transform(rep, v2, phi, g);
		EXPECT_LE(std::abs(lhs - rhs), 1e-12 * (1 + std::abs(rhs)));
	}
}

TEST(Wavelet, LeftAndRightIntertwining)
{
	auto rep = make_rep();
	const auto &alg = rep.chart().algebra();
	auto phi = gaussian_state(rep.grid());
	std::mt19937_64 rng(33);
	double left = 0.0, right = 0.0;
	for (int pair = 0; pair < 20; ++pair)
	{
		auto g0 = random_point(rng, 1.5);
		auto v = hermite_state(rep.grid(), pair % 6);
		std::vector<GroupPoint> pts, left_pts, right_pts;
		for (int k = 0; k < 16; ++k)
		{
			auto g = random_point(rng, 2.0);
			pts.push_back(g);
			left_pts.push_back(bch_multiply(alg, inverse(g0), g));
			right_pts.push_back(bch_multiply(alg, g, g0));
		}
		// Λ(g0) W_φ v = W_φ π(g0) v
		auto moved_v = rep_apply(rep, g0, v).state;
		left = std::max(left, max_abs_diff(wavelet_samples(rep, moved_v, phi, pts),
		                                   wavelet_samples(rep, v, phi, left_pts)));
		// R(g0) W_φ v = W_{π(g0)φ} v
		auto moved_phi = rep_apply(rep, g0, phi).state;
		right = std::max(right, max_abs_diff(wavelet_samples(rep, v, moved_phi, pts),
		                                     wavelet_samples(rep, v, phi, right_pts)));
	}
	EXPECT_LE(left, 1e-8);
	EXPECT_LE(right, 1e-8);
}

TEST(Wavelet, CovariantUnderCentre)
{
	auto rep = make_rep(1.7);
	const auto &alg = rep.chart().algebra();
	const Character chi = rep.covariance_character();
	EXPECT_DOUBLE_EQ(chi.weight()[0], -1.7);
	auto phi = gaussian_state(rep.grid());
	auto v = hermite_state(rep.grid(), 2);
	std::mt19937_64 rng(34);
	std::uniform_real_distribution<double> u(-3.0, 3.0);
	for (int k = 0; k < 50; ++k)
	{
		auto g = random_point(rng, 2.0);
		const double h = u(rng);
		const Complex lhs = wavelet_transform(rep, v, phi, bch_multiply(alg, g, GroupPoint{0.0, 0.0, h}));
		const Complex rhs =
		    character_eval(chi, HPoint{Eigen::VectorXd::Constant(1, h)}) *
		    wavelet_transform(rep, v, phi, g);
		EXPECT_LE(std::abs(lhs - rhs), 1e-12);
	}
	SchrodingerRep other(HomogeneousChart(alg, {1, 2}), 1.0, RepGrid(-1, 1, 16));
	EXPECT_THROW(other.covariance_character(), StructuralError);
}

TEST(Operators, DeltaAtOriginIsIdentity)
{
	auto rep = make_rep();
	auto xgrid = BoxGrid::cube(2, 8.0, 65);
	KernelOnX delta{xgrid, delta_samples(xgrid, Eigen::Vector2d::Zero())};
	auto op = relative_convolution(rep, delta);
	const auto n = rep.grid().n_points;
	EXPECT_LE((op.entries - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-14);
	EXPECT_FALSE(op.truncated);
	EXPECT_THROW(delta_samples(xgrid, Eigen::Vector2d(8.0, 0.0)), StructuralError);
}

TEST(Operators, DeltaAtPointIsRepMatrix)
{
	auto rep = make_rep();
	auto xgrid = BoxGrid::cube(2, 8.0, 65);
	const Eigen::Vector2d at(0.5, -1.25);
	KernelOnX delta{xgrid, delta_samples(xgrid, at)};
	std::mt19937_64 rng(41);
	auto w = random_state(rng, rep.grid());
	auto via_op = contravariant_transform(rep, delta, w);
	auto direct = rep_apply(rep, GroupPoint{at[0], at[1], 0.0}, w).state;
	EXPECT_LE(rel_diff(via_op.samples(), direct.samples()), 1e-13);
}

TEST(Operators, TruncationFlagOnWideKernels)
{
	auto rep = make_rep(1.0, RepGrid(-4.0, 4.0, 64));
	auto k = sample_on_x(BoxGrid::cube(2, 6.0, 9), gaussian_kernel());
	EXPECT_TRUE(relative_convolution(rep, k).truncated);
	EXPECT_FALSE(relative_convolution(make_rep(), k).truncated);
}

TEST(Operators, SeparableKernelFactorises)
{
	// k(u,v,s) = a(u,v) b(s): π(k) = (Σ_s w_s b(s) e^{iλs}) π_X(a).
	const double lambda = 0.9;
	auto rep = make_rep(lambda, RepGrid(-10.0, 10.0, 96));
	Axis uv{-6.0, 6.0, 25}, s_axis{-6.0, 6.0, 49};
	BoxGrid ggrid({uv, uv, s_axis});
	auto a = gaussian_kernel(1.0);
	auto b = [](double s) { return std::exp(-0.5 * s * s) * (1.0 + 0.3 * s); };
	auto k = sample_on_g(ggrid, [&](const Eigen::VectorXd &g) {
		return a(g.head<2>()) * b(g[2]);
	});
	Complex factor = 0.0;
	for (int i = 0; i < s_axis.points; ++i)
	{
		const double s = s_axis.node(i);
		factor += s_axis.weight(i) * s_axis.spacing() * b(s) * std::polar(1.0, lambda * s);
	}
	auto ka = sample_on_x(BoxGrid({uv, uv}), a);
	auto full = integrated_rep(rep, k).entries;
	auto split = (factor * relative_convolution(rep, ka).entries).eval();
	EXPECT_LE((full - split).cwiseAbs().maxCoeff(), 1e-13 * split.cwiseAbs().maxCoeff());
}

TEST(Operators, NormBoundedByL1)
{
	auto rep = make_rep(1.0, RepGrid(-10.0, 10.0, 96));
	auto xgrid = BoxGrid::cube(2, 6.0, 33);
	for (std::uint64_t seed : {1u, 2u, 3u, 4u})
	{
		auto k = sample_on_x(xgrid, band_limited_random_kernel(seed));
		double l1 = 0.0;
		for (size_t m = 0; m < xgrid.size(); ++m)
			l1 += xgrid.quadrature_weight(m) * std::abs(k.samples[m]);
		const double op = operator_norm(relative_convolution(rep, k));
		EXPECT_LE(op, l1) << "seed " << seed << " margin " << l1 - op;
	}
}

TEST(Contravariant, LinearInKernel)
{
	auto rep = make_rep(1.0, RepGrid(-10.0, 10.0, 96));
	auto xgrid = BoxGrid::cube(2, 6.0, 33);
	auto k1 = sample_on_x(xgrid, band_limited_random_kernel(7));
	auto k2 = sample_on_x(xgrid, band_limited_random_kernel(8));
	const Complex alpha(-0.4, 2.1);
	KernelOnX mix{xgrid, alpha * k1.samples + k2.samples};
	auto psi = hermite_state(rep.grid(), 1);
	auto m1 = contravariant_transform(rep, k1, psi).samples();
	auto m2 = contravariant_transform(rep, k2, psi).samples();
	auto mm = contravariant_transform(rep, mix, psi).samples();
	EXPECT_LE((mm - alpha * m1 - m2).norm() / (std::abs(alpha) * m1.norm() + m2.norm()), 1e-13);
}

TEST(Contravariant, LeftTranslationIntertwines)
{
	// M_ψ Λ(g) k = π(g) M_ψ k for grid-compatible p(g).
	auto rep = make_rep();
	auto xgrid = BoxGrid::cube(2, 6.0, 49);
	auto psi = gaussian_state(rep.grid());
	std::mt19937_64 rng(51);
	std::uniform_int_distribution<int> steps(-4, 4); // support stays inside the box
	std::uniform_real_distribution<double> centre(-2.0, 2.0);
	const double h = xgrid.axes()[0].spacing();
	for (int trial = 0; trial < 6; ++trial)
	{
		auto k = sample_on_x(xgrid, band_limited_random_kernel(100 + trial));
		GroupPoint g{steps(rng) * h, steps(rng) * h, centre(rng)};
		auto lhs = contravariant_transform(rep, left_translate(rep, k, g), psi);
		auto rhs = rep_apply(rep, g, contravariant_transform(rep, k, psi)).state;
		EXPECT_LE(rel_diff(lhs.samples(), rhs.samples()), 1e-8);
	}
	auto k = sample_on_x(xgrid, gaussian_kernel());
	EXPECT_THROW(left_translate(rep, k, GroupPoint{0.3 * h, 0.0, 0.0}), StructuralError);
}

TEST(LambdaRho, MultiplicationMatchesConjugation)
{
	// (Λ⊗R)(s(x)) F (g) = F(s(x)^{-1} g s(x)), evaluated both directly and
	// as multiplication by χ(h(x, g)).
	auto rep = make_rep(1.2);
	const auto &chart = rep.chart();
	const auto &alg = chart.algebra();
	auto phi = gaussian_state(rep.grid());
	auto v = hermite_state(rep.grid(), 4);
	std::mt19937_64 rng(61);
	std::uniform_real_distribution<double> u(-2.0, 2.0);
	CoefficientFunction F;
	for (int k = 0; k < 64; ++k)
		F.points.push_back(random_point(rng, 2.0));
	F.values = wavelet_samples(rep, v, phi, F.points);
	double worst = 0.0;
	for (int trial = 0; trial < 10; ++trial)
	{
		XPoint x{Eigen::Vector2d(u(rng), u(rng))};
		auto sx = section_s(chart, x);
		std::vector<GroupPoint> conj;
		for (const auto &g : F.points)
			conj.push_back(conjugate(alg, g, sx));
		auto direct = wavelet_samples(rep, v, phi, conj);
		auto mult = lambda_rho_action(rep, chart, x, F);
		worst = std::max(worst, max_abs_diff(mult.values, direct));
	}
	EXPECT_LE(worst, 1e-6);
}

TEST(Reconstruction, CalibratedRoundTripAndRefinement)
{
	auto rep = make_rep();
	auto xgrid = BoxGrid::cube(2, 8.0, 65);
	auto phi = gaussian_state(rep.grid());
	const double c = calibrate_reconstruction(rep, phi, xgrid);
	EXPECT_NEAR(c, 2 * std::numbers::pi, 1e-3);

	SchrodingerRep fine_rep(rep.chart(), rep.lambda(), rep.grid().refined());
	auto fine_grid = xgrid.refined();
	auto fine_phi = gaussian_state(fine_rep.grid());
	const double fine_c = calibrate_reconstruction(fine_rep, fine_phi, fine_grid);

	double coarse_err = 0.0, fine_err = 0.0;
	for (int n = 0; n < 10; ++n)
	{
		auto v = hermite_state(rep.grid(), n);
		auto back = reconstruct(rep, v, phi, phi, xgrid, c);
		coarse_err = std::max(coarse_err, rel_diff(back.samples(), v.samples()));
		auto fv = hermite_state(fine_rep.grid(), n);
		auto fback = reconstruct(fine_rep, fv, fine_phi, fine_phi, fine_grid, fine_c);
		fine_err = std::max(fine_err, rel_diff(fback.samples(), fv.samples()));
	}
	EXPECT_LE(coarse_err, 1e-3);
	EXPECT_LE(fine_err, coarse_err / 10);
}
