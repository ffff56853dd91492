#include "relconv/errors.hpp"
#include "relconv/scenario.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <fmt/format.h>
#include <numbers>
#include <random>

namespace relconv {

namespace {

constexpr int kAssociativityTriples = 100;
constexpr int kPointsPerPair = 16;
constexpr int kParenSamples = 32;

Record residual(std::string name, double value, double tol, std::string note = {})
{
	return Record{std::move(name), value, tol, "<=", value <= tol, std::move(note)};
}

Record at_least(std::string name, double value, double min, std::string note = {})
{
	return Record{std::move(name), value, min, ">=", value >= min, std::move(note)};
}

Record bound_record(std::string name, const BoundVerdict &v)
{
	return at_least(std::move(name), v.margin, 0.0 - v.discretization_estimate,
	                fmt::format("lhs {:.6e}, rhs {:.6e}, eps_disc {:.3e}; {}", v.lhs, v.rhs,
	                            v.discretization_estimate, v.note));
}

Eigen::VectorXd uniform(std::mt19937_64 &rng, int n, double r)
{
	std::uniform_real_distribution<double> u(-r, r);
	Eigen::VectorXd v(n);
	for (int i = 0; i < n; ++i)
		v[i] = u(rng);
	return v;
}

double rel_diff(const Eigen::VectorXcd &a, const Eigen::VectorXcd &b)
{
	return (a - b).norm() / std::max(b.norm(), 1e-300);
}

bool is_heisenberg_centre(const ScenarioConfig &cfg)
{
	return cfg.dim == 3 && cfg.h_indices == std::vector<int>{2} &&
	       cfg.algebra().constants() == NilpotentAlgebra::heisenberg().constants();
}

/// Everything the representation-based suites share.
struct RepContext
{
	SchrodingerRep rep;
	StateVector phi;
	BoxGrid xgrid;
};

RepContext make_context(const ScenarioConfig &cfg, bool refined)
{
	RepGrid grid = refined ? cfg.rep_grid.refined() : cfg.rep_grid;
	BoxGrid xgrid = refined ? cfg.x_grid().refined() : cfg.x_grid();
	SchrodingerRep rep(cfg.chart(), *cfg.rep_lambda, grid);
	return RepContext{rep, gaussian_state(grid), xgrid};
}

KernelOnX configured_kernel(const ScenarioConfig &cfg, const BoxGrid &grid, std::uint64_t seed)
{
	switch (cfg.kernel.family)
	{
	case KernelSpec::Family::Gaussian:
		return sample_on_x(grid, gaussian_kernel(cfg.kernel.width, cfg.kernel.amplitude));
	case KernelSpec::Family::BandLimitedRandom:
		return sample_on_x(grid, band_limited_random_kernel(seed, cfg.kernel.band));
	case KernelSpec::Family::Delta:
		return KernelOnX{grid, delta_samples(grid, Eigen::Map<const Eigen::VectorXd>(
		                                               cfg.kernel.at.data(),
		                                               static_cast<Eigen::Index>(cfg.kernel.at.size())))};
	}
	throw StructuralError("unknown kernel family");
}

BoundOptions bound_options(const ScenarioConfig &cfg)
{
	BoundOptions opts;
	opts.power.rel_tol = cfg.tol.power_rel_tol;
	opts.power.seed ^= cfg.seed;
	return opts;
}

Character chart_character(const ScenarioConfig &cfg)
{
	return Character(cfg.chart(), Eigen::Map<const Eigen::VectorXd>(
	                                  cfg.chart_lambda.data(),
	                                  static_cast<Eigen::Index>(cfg.chart_lambda.size())));
}

Record character_match(const ScenarioConfig &cfg, const SchrodingerRep &rep)
{
	const double want = rep.covariance_character().weight()[0];
	const double got = cfg.chart_lambda.empty() ? want : cfg.chart_lambda[0];
	return residual("chart_character_matches_rep", std::abs(got - want), cfg.tol.exact,
	                fmt::format("chart weight {}, rep covariance weight {}", got, want));
}

// ---- suites ---------------------------------------------------------------

void algebra_suite(const ScenarioConfig &cfg, SuiteOutcome &out)
{
	const auto alg = cfg.algebra();
	const auto v = validate_algebra(alg);
	for (const auto &c : v.checks)
	{
		const double tol = c.name == "step" ? c.tolerance : cfg.tol.exact;
		out.records.push_back(residual(c.name, c.residual, tol, c.note));
	}
	if (!v.pass())
		return;

	std::mt19937_64 rng(cfg.seed);
	double assoc = 0.0, inv = 0.0;
	for (int s = 0; s < kAssociativityTriples; ++s)
	{
		GroupPoint a(uniform(rng, cfg.dim, 2.0)), b(uniform(rng, cfg.dim, 2.0)),
		    c(uniform(rng, cfg.dim, 2.0));
		const auto lhs = bch_multiply(alg, bch_multiply(alg, a, b), c);
		const auto rhs = bch_multiply(alg, a, bch_multiply(alg, b, c));
		assoc = std::max(assoc, (lhs.coords() - rhs.coords()).cwiseAbs().maxCoeff());
		const auto i1 = inverse(bch_multiply(alg, a, b));
		const auto i2 = bch_multiply(alg, inverse(b), inverse(a));
		inv = std::max(inv, (i1.coords() - i2.coords()).cwiseAbs().maxCoeff());
	}
	out.records.push_back(residual("associativity", assoc, cfg.tol.exact,
	                               fmt::format("{} seeded triples", kAssociativityTriples)));
	out.records.push_back(residual("inverse_of_product", inv, cfg.tol.exact));
}

void ccp_suite(const ScenarioConfig &cfg, SuiteOutcome &out)
{
	const auto chart = cfg.chart();
	for (const auto &c : validate_chart(chart, cfg.sample_count, cfg.seed).checks)
		out.records.push_back(
		    c.name == "contains_commutator"
		        ? residual(c.name, c.residual, c.tolerance, c.note)
		        : residual(c.name, c.residual, cfg.tol.exact, c.note));
	const auto ccp = check_ccp(chart, cfg.sample_count, cfg.seed);
	for (const auto &c : ccp.checks)
		out.records.push_back(residual(c.name, c.residual, cfg.tol.exact,
		                               fmt::format("{} seeded samples", cfg.sample_count)));
	if (!ccp.pass())
		return;

	std::mt19937_64 rng(cfg.seed + 1);
	if (!cfg.chart_lambda.empty())
	{
		const auto chi = chart_character(cfg);
		const auto &alg = chart.algebra();
		double worst = 0.0;
		for (int s = 0; s < cfg.sample_count; ++s)
		{
			HPoint h1{uniform(rng, chart.h_dim(), 2.0)}, h2{uniform(rng, chart.h_dim(), 2.0)};
			const auto prod = chart.h_part(bch_multiply(alg, chart.embed_h(h1), chart.embed_h(h2)));
			worst = std::max(worst, std::abs(character_eval(chi, prod) -
			                                 character_eval(chi, h1) * character_eval(chi, h2)));
		}
		out.records.push_back(residual("character_multiplicative", worst, cfg.tol.exact));
	}

	if (is_heisenberg_centre(cfg))
	{
		// h(x, g) = u y - v x for g = (u, v, s), s(x) = (x, y, 0).
		double worst = 0.0;
		for (int s = 0; s < cfg.sample_count; ++s)
		{
			const Eigen::VectorXd g = uniform(rng, 3, 2.0), x = uniform(rng, 2, 2.0);
			const double h = h_of_xg(chart, XPoint{x}, GroupPoint(g)).coords[0];
			worst = std::max(worst, std::abs(h - (g[0] * x[1] - g[1] * x[0])));
		}
		out.records.push_back(residual("h_closed_form", worst, cfg.tol.exact, "h = u y - v x"));
	}
}

std::vector<double> reconstruction_errors(const ScenarioConfig &cfg, const RepContext &ctx,
                                          double &calibration)
{
	calibration = calibrate_reconstruction(ctx.rep, ctx.phi, ctx.xgrid);
	std::vector<double> errs;
	for (int n = 0; n < cfg.hermite_count; ++n)
	{
		const auto v = hermite_state(ctx.rep.grid(), n);
		const auto back = reconstruct(ctx.rep, v, ctx.phi, ctx.phi, ctx.xgrid, calibration);
		errs.push_back(rel_diff(back.samples(), inner(ctx.phi, ctx.phi) * v.samples()));
	}
	return errs;
}

void reconstruction_suite(const ScenarioConfig &cfg, SuiteOutcome &out)
{
	const auto ctx = make_context(cfg, false);
	double c = 0.0;
	const auto errs = reconstruction_errors(cfg, ctx, c);
	const double theory = 2 * std::numbers::pi / std::abs(*cfg.rep_lambda);
	const std::string grids =
	    fmt::format("rep {}, X {}", ctx.rep.grid().describe(), ctx.xgrid.describe());
	for (size_t n = 0; n < errs.size(); ++n)
		out.records.push_back(
		    residual(fmt::format("hermite_{}", n), errs[n], cfg.tol.reconstruction,
		             n == 0 ? fmt::format("calibration {:.12g} (2pi/|lambda| = {:.12g}); {}", c,
		                                  theory, grids)
		                    : std::string{}));
	if (!cfg.refine)
		return;

	const auto fine = make_context(cfg, true);
	double fc = 0.0;
	const auto ferrs = reconstruction_errors(cfg, fine, fc);
	for (size_t n = 0; n < ferrs.size(); ++n)
		out.records.push_back(residual(fmt::format("hermite_{}_refined", n), ferrs[n],
		                               cfg.tol.reconstruction,
		                               n == 0 ? fmt::format("calibration {:.12g}; rep {}, X {}", fc,
		                                                    fine.rep.grid().describe(),
		                                                    fine.xgrid.describe())
		                                      : std::string{}));
	const double coarse_max = *std::max_element(errs.begin(), errs.end());
	const double fine_max = *std::max_element(ferrs.begin(), ferrs.end());
	out.records.push_back(at_least("refine_gain", coarse_max / std::max(fine_max, 1e-300),
	                               cfg.tol.refine_gain,
	                               fmt::format("max error {:.3e} -> {:.3e}", coarse_max, fine_max)));
}

void intertwine_suite(const ScenarioConfig &cfg, SuiteOutcome &out)
{
	const auto ctx = make_context(cfg, false);
	const auto &rep = ctx.rep;
	const auto &alg = rep.chart().algebra();
	const auto &grid = rep.grid();
	std::mt19937_64 rng(cfg.seed);
	const int pairs = cfg.intertwine_pairs;

	double homo = 0.0, unit = 0.0, left = 0.0, right = 0.0, eq5 = 0.0, lr = 0.0;
	bool truncated = false;
	std::normal_distribution<double> normal;

	const auto k = configured_kernel(cfg, ctx.xgrid, cfg.kernel.seed);
	const auto base_op = relative_convolution(rep, k);
	const double hx = ctx.xgrid.axes()[0].spacing(), hy = ctx.xgrid.axes()[1].spacing();
	std::uniform_int_distribution<int> steps(-4, 4);
	std::uniform_real_distribution<double> centre(-2.0, 2.0);

	for (int p = 0; p < pairs; ++p)
	{
		const auto v = hermite_state(grid, p % cfg.hermite_count);

		// π(g1)π(g2) = π(g1 g2)
		GroupPoint g1(uniform(rng, 3, 1.5)), g2(uniform(rng, 3, 1.5));
		const auto two = rep_apply(rep, g1, rep_apply(rep, g2, ctx.phi).state);
		const auto one = rep_apply(rep, bch_multiply(alg, g1, g2), ctx.phi);
		truncated = truncated || two.truncated || one.truncated;
		homo = std::max(homo, rel_diff(two.state.samples(), one.state.samples()));

		Eigen::VectorXcd w(grid.n_points);
		for (auto &z : w)
			z = Complex(normal(rng), normal(rng));
		const StateVector ws(grid, w);
		unit = std::max(unit, std::abs(norm(rep_apply(rep, g1, ws).state) / norm(ws) - 1.0));

		// Λ(g0) W_φ v = W_φ π(g0) v and R(g0) W_φ v = W_{π(g0)φ} v
		GroupPoint g0(uniform(rng, 3, 1.5));
		std::vector<GroupPoint> pts, lpts, rpts;
		for (int s = 0; s < kPointsPerPair; ++s)
		{
			GroupPoint g(uniform(rng, 3, 2.0));
			pts.push_back(g);
			lpts.push_back(bch_multiply(alg, inverse(g0), g));
			rpts.push_back(bch_multiply(alg, g, g0));
		}
		const auto a = wavelet_samples(rep, rep_apply(rep, g0, v).state, ctx.phi, pts);
		const auto b = wavelet_samples(rep, v, ctx.phi, lpts);
		const auto c = wavelet_samples(rep, v, rep_apply(rep, g0, ctx.phi).state, pts);
		const auto d = wavelet_samples(rep, v, ctx.phi, rpts);
		for (int s = 0; s < kPointsPerPair; ++s)
		{
			left = std::max(left, std::abs(a[s] - b[s]));
			right = std::max(right, std::abs(c[s] - d[s]));
		}

		// M_ψ Λ(g) k = π(g) M_ψ k
		GroupPoint shift{steps(rng) * hx, steps(rng) * hy, centre(rng)};
		const auto moved = relative_convolution(rep, left_translate(rep, k, shift));
		const StateVector mk(grid, base_op.entries * v.samples());
		const Eigen::VectorXcd lhs = moved.entries * v.samples();
		const auto rhs = rep_apply(rep, shift, mk);
		truncated = truncated || rhs.truncated || moved.truncated;
		eq5 = std::max(eq5, rel_diff(lhs, rhs.state.samples()));

		// (Λ⊗R)(s(x)) by conjugation vs by multiplication with χ(h(x, ·))
		CoefficientFunction F;
		F.points = pts;
		F.values = wavelet_samples(rep, v, ctx.phi, pts);
		const XPoint x{uniform(rng, 2, 2.0)};
		const auto sx = section_s(rep.chart(), x);
		std::vector<GroupPoint> conj;
		for (const auto &g : pts)
			conj.push_back(conjugate(alg, g, sx));
		const auto direct = wavelet_samples(rep, v, ctx.phi, conj);
		const auto mult = lambda_rho_action(rep, rep.chart(), x, F);
		for (int s = 0; s < kPointsPerPair; ++s)
			lr = std::max(lr, std::abs(direct[s] - mult.values[s]));
	}
	const std::string n = fmt::format("{} seeded pairs", pairs);
	out.records.push_back(residual("homomorphism", homo, cfg.tol.homomorphism, n));
	out.records.push_back(residual("unitarity", unit, cfg.tol.exact, n));
	out.records.push_back(residual("wavelet_left_covariance", left, cfg.tol.intertwine, n));
	out.records.push_back(residual("wavelet_right_covariance", right, cfg.tol.intertwine, n));
	out.records.push_back(residual("contravariant_intertwining", eq5, cfg.tol.intertwine,
	                               n + (truncated ? "; translation truncated" : "")));
	out.records.push_back(residual("lambda_rho_consistency", lr, cfg.tol.lambda_rho, n));
}

BoundVerdict lemma_at(const ScenarioConfig &cfg, bool refined)
{
	const auto ctx = make_context(cfg, refined);
	const auto f = configured_kernel(cfg, ctx.xgrid, cfg.kernel.seed);
	return verify_lemma_bound(ctx.rep, ctx.rep.chart(), f, ctx.phi, bound_options(cfg));
}

void lemma_suite(const ScenarioConfig &cfg, SuiteOutcome &out)
{
	const auto ctx = make_context(cfg, false);
	out.records.push_back(character_match(cfg, ctx.rep));
	auto v = lemma_at(cfg, false);
	if (cfg.refine)
		v = combine_resolutions(v, lemma_at(cfg, true));
	out.records.push_back(bound_record("lemma_bound", v));
}

BoundVerdict prop_at(const ScenarioConfig &cfg, bool refined, std::uint64_t seed)
{
	const auto ctx = make_context(cfg, refined);
	const auto f = configured_kernel(cfg, ctx.xgrid, seed);
	return verify_prop_bound(ctx.rep, ctx.rep.chart(), chart_character(cfg), f, ctx.phi,
	                         bound_options(cfg));
}

void prop_suite(const ScenarioConfig &cfg, SuiteOutcome &out)
{
	const auto ctx = make_context(cfg, false);
	out.records.push_back(character_match(cfg, ctx.rep));
	const auto chi = chart_character(cfg);
	const auto chart = ctx.rep.chart();

	// Fast path vs direct quadrature on fΦ^{-1}, then s-independence.
	const auto f = configured_kernel(cfg, ctx.xgrid, cfg.kernel.seed);
	const auto k = divide_by_Phi(ctx.rep, f, ctx.phi);
	const auto fast = paren_transform_fast(chart, chi, k, bound_options(cfg).fft_padding);
	std::mt19937_64 rng(cfg.seed);
	std::uniform_int_distribution<size_t> pick(0, fast.values.size() - 1);
	double diff = 0.0, scale = std::abs(paren_transform(chart, chi, k, GroupPoint::identity(3)));
	double s_dep = 0.0;
	for (int s = 0; s < kParenSamples; ++s)
	{
		const size_t i = pick(rng);
		const Complex direct = paren_transform(chart, chi, k, fast.points[i]);
		diff = std::max(diff, std::abs(fast.values[i] - direct));
		scale = std::max(scale, std::abs(direct));
		Eigen::VectorXd lifted = fast.points[i].coords();
		lifted[2] += uniform(rng, 1, 5.0)[0];
		s_dep = std::max(s_dep, std::abs(paren_transform(chart, chi, k, GroupPoint(lifted)) - direct));
	}
	out.records.push_back(residual("paren_fast_vs_direct", scale > 0 ? diff / scale : diff,
	                               cfg.tol.paren_agreement,
	                               fmt::format("{} lattice points, relative to the sampled peak",
	                                           kParenSamples)));
	out.records.push_back(residual("paren_central_independence", s_dep, cfg.tol.exact));
	double l1 = 0.0;
	for (size_t m = 0; m < k.grid.size(); ++m)
		l1 += k.grid.quadrature_weight(m) * std::abs(k.samples[m]);
	// (L1 - sup) / L1; positive kernels attain equality at the origin.
	out.records.push_back(at_least("paren_sup_below_l1",
	                               l1 > 0 ? (l1 - fast.sup_abs()) / l1 : 0.0, 0.0 - cfg.tol.exact,
	                               fmt::format("sup {:.6e}, L1 {:.6e}", fast.sup_abs(), l1)));

	auto v = prop_at(cfg, false, cfg.kernel.seed);
	if (cfg.refine)
		v = combine_resolutions(v, prop_at(cfg, true, cfg.kernel.seed));
	out.records.push_back(bound_record("prop_bound", v));
}

void sweep_suite(const ScenarioConfig &cfg, int family_size, SuiteOutcome &out,
                 std::vector<SweepRow> &rows)
{
	if (cfg.kernel.family != KernelSpec::Family::BandLimitedRandom)
		throw StructuralError(fmt::format("sweep needs a seeded kernel family "
		                                  "(band-limited-random), config has {}",
		                                  family_name(cfg.kernel.family)));
	const auto ctx = make_context(cfg, false);
	out.records.push_back(character_match(cfg, ctx.rep));
	const std::string grid = fmt::format("X {} / rep {}", ctx.xgrid.describe(), ctx.rep.grid().describe());
	double min_margin = INFINITY, min_eps = 0.0;
	for (int i = 0; i < family_size; ++i)
	{
		const std::uint64_t seed = cfg.kernel.seed + static_cast<std::uint64_t>(i);
		const auto coarse = prop_at(cfg, false, seed);
		const auto fine = prop_at(cfg, true, seed);
		auto both = combine_resolutions(coarse, fine);
		both.pass = both.pass && coarse.pass && fine.pass;
		rows.push_back(SweepRow{seed, *cfg.rep_lambda, grid, both});
		auto rec = bound_record(fmt::format("kernel_seed_{}", seed), both);
		rec.pass = both.pass;
		out.records.push_back(rec);
		if (both.margin < min_margin)
		{
			min_margin = both.margin;
			min_eps = both.discretization_estimate;
		}
	}
	if (family_size > 0)
		out.records.push_back(at_least("min_margin", min_margin, 0.0 - min_eps,
		                               fmt::format("over {} kernels, default and refined grids",
		                                           family_size)));
}

SuiteOutcome run_one(Suite suite, const ScenarioConfig &cfg, int family_size,
                     std::vector<SweepRow> &rows)
{
	SuiteOutcome out;
	out.suite = suite;
	try
	{
		switch (suite)
		{
		case Suite::Algebra:
			algebra_suite(cfg, out);
			break;
		case Suite::Ccp:
			ccp_suite(cfg, out);
			break;
		case Suite::Reconstruction:
			reconstruction_suite(cfg, out);
			break;
		case Suite::Intertwine:
			intertwine_suite(cfg, out);
			break;
		case Suite::LemmaBound:
			lemma_suite(cfg, out);
			break;
		case Suite::PropBound:
			prop_suite(cfg, out);
			break;
		case Suite::Sweep:
			sweep_suite(cfg, family_size, out, rows);
			break;
		}
	}
	catch (const Error &e)
	{
		out.status = SuiteOutcome::Status::Errored;
		out.reason = e.what();
	}
	return out;
}

RunReport run_suites(const ScenarioConfig &cfg, const std::vector<Suite> &selected, int family_size)
{
	const auto start = std::chrono::steady_clock::now();
	RunReport report;
	report.config_echo = echo_config(cfg);
	report.config_source = cfg.source;
	bool algebra_failed = false;
	for (Suite s : kAllSuites)
	{
		if (std::find(selected.begin(), selected.end(), s) == selected.end())
			continue;
		if (algebra_failed)
		{
			report.suites.push_back(
			    SuiteOutcome{s, SuiteOutcome::Status::Skipped, "algebra suite failed", {}});
			continue;
		}
		report.suites.push_back(run_one(s, cfg, family_size, report.sweep_rows));
		if (s == Suite::Algebra && !report.suites.back().pass())
			algebra_failed = true;
	}
	report.wall_clock =
	    std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	return report;
}

} // namespace

bool SuiteOutcome::pass() const
{
	if (status == Status::Errored)
		return false;
	// A skipped suite records nothing; its cause fails elsewhere.
	return std::all_of(records.begin(), records.end(), [](const Record &r) { return r.pass; });
}

bool RunReport::pass() const
{
	return std::all_of(suites.begin(), suites.end(), [](const SuiteOutcome &s) { return s.pass(); });
}

size_t RunReport::check_count() const
{
	size_t n = 0;
	for (const auto &s : suites)
		n += s.records.size();
	return n;
}

std::optional<Suite> RunReport::first_failure() const
{
	for (const auto &s : suites)
		if (!s.pass())
			return s.suite;
	return std::nullopt;
}

int RunReport::exit_code() const
{
	const auto f = first_failure();
	return f ? suite_exit_code(*f) : 0;
}

RunReport run_scenario(const ScenarioConfig &cfg)
{
	return run_suites(cfg, cfg.suites, cfg.family_size);
}

RunReport sweep(const ScenarioConfig &cfg, int family_size)
{
	if (family_size < 0)
		throw ConfigError("sweep.family_size", 0, "must be non-negative");
	if (!cfg.rep_lambda)
		throw ConfigError("representation", 0, "sweep needs a representation section");
	if (cfg.chart_lambda.empty())
		throw ConfigError("chart.lambda", 0, "sweep needs a chart character");
	return run_suites(cfg, {Suite::Sweep}, family_size);
}

void export_operator(const ScenarioConfig &cfg, const std::string &path)
{
	if (!cfg.rep_lambda)
		throw ConfigError("representation", 0, "operator export needs a representation section");
	const auto ctx = make_context(cfg, cfg.refine);
	const auto op = relative_convolution(ctx.rep, configured_kernel(cfg, ctx.xgrid, cfg.kernel.seed));
	const auto &m = op.entries;
	const bool csv = std::filesystem::path(path).extension() == ".csv";
	std::ofstream out(path, csv ? std::ios::out : std::ios::binary);
	if (!out)
		throw StructuralError(fmt::format("cannot write '{}'", path));
	if (csv)
	{
		out << fmt::format("# relconv-operator v1 rows={} cols={} re,im pairs per row\n", m.rows(),
		                   m.cols());
		for (Eigen::Index i = 0; i < m.rows(); ++i)
		{
			std::string line;
			for (Eigen::Index j = 0; j < m.cols(); ++j)
				line += fmt::format("{}{:.17g},{:.17g}", j ? "," : "", m(i, j).real(), m(i, j).imag());
			out << line << '\n';
		}
	}
	else
	{
		const std::uint64_t rows = m.rows(), cols = m.cols();
		out.write("RCMX", 4);
		out.write(reinterpret_cast<const char *>(&rows), sizeof rows);
		out.write(reinterpret_cast<const char *>(&cols), sizeof cols);
		for (Eigen::Index i = 0; i < m.rows(); ++i)
			for (Eigen::Index j = 0; j < m.cols(); ++j)
			{
				const double re = m(i, j).real(), im = m(i, j).imag();
				out.write(reinterpret_cast<const char *>(&re), sizeof re);
				out.write(reinterpret_cast<const char *>(&im), sizeof im);
			}
	}
	if (!out)
		throw StructuralError(fmt::format("write to '{}' failed", path));
}

} // namespace relconv
