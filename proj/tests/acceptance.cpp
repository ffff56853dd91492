// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "relconv/bounds.hpp"
#include "relconv/errors.hpp"
#include "relconv/kernels.hpp"
#include "relconv/scenario.hpp"

#include <Eigen/SVD>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <numbers>
#include <random>

using namespace relconv;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
	return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome
{
	bool pass = false;
	std::string detail;
};

const Record *find_record(const RunReport &r, Suite s, const std::string &name)
{
	for (const auto &o : r.suites)
		if (o.suite == s)
			for (const auto &rec : o.records)
				if (rec.name == name)
					return &rec;
	return nullptr;
}

bool suite_passed(const RunReport &r, Suite s)
{
	for (const auto &o : r.suites)
		if (o.suite == s)
			return o.status == SuiteOutcome::Status::Ran && o.pass() && !o.records.empty();
	return false;
}

ScenarioConfig with_suites(const std::string &name, std::vector<Suite> suites)
{
	auto cfg = resolve_config(name);
	cfg.suites = std::move(suites);
	return cfg;
}

Outcome algebra_laws()
{
	const auto t0 = Clock::now();
	bool ok = true;
	double worst = 0.0;
	for (const char *name : {"heisenberg-default", "free-step2-3"})
	{
		auto r = run_scenario(with_suites(name, {Suite::Algebra}));
		ok = ok && suite_passed(r, Suite::Algebra);
		for (const char *check : {"antisymmetry", "jacobi", "nilpotency", "associativity"})
		{
			const auto *rec = find_record(r, Suite::Algebra, check);
			ok = ok && rec && rec->pass && rec->tolerance <= 1e-12;
			if (rec)
				worst = std::max(worst, rec->value);
		}
	}
	const double t = seconds_since(t0);
	return {ok && t < 1.0, fmt::format("max residual {:.3e} <= 1e-12, {:.3f} s < 1 s", worst, t)};
}

Outcome ccp_charts()
{
	auto run = [](std::vector<int> h) {
		auto cfg = with_suites("heisenberg-default", {Suite::Algebra, Suite::Ccp});
		cfg.h_indices = std::move(h);
		cfg.chart_lambda.assign(cfg.h_indices.size(), 0.0);
		return run_scenario(cfg);
	};
	auto commutator = run({2});
	auto larger = run({1, 2});
	auto free3 = run_scenario(with_suites("free-step2-3", {Suite::Algebra, Suite::Ccp}));
	auto invalid = run({0});
	const bool valid_ok = suite_passed(commutator, Suite::Ccp) && suite_passed(larger, Suite::Ccp) &&
	                      suite_passed(free3, Suite::Ccp);
	const bool invalid_flagged = invalid.first_failure() == Suite::Ccp;
	const auto *n = find_record(commutator, Suite::Ccp, "complemented_commutator");
	const bool counted = n && n->note.find("1000") != std::string::npos;
	return {valid_ok && invalid_flagged && counted,
	        fmt::format("commutator/larger/free-step2 pass: {}, invalid chart rejected: {}, 1000 samples: {}",
	                    valid_ok, invalid_flagged, counted)};
}

Outcome h_closed_form()
{
	auto r = run_scenario(with_suites("heisenberg-default", {Suite::Algebra, Suite::Ccp}));
	const auto *rec = find_record(r, Suite::Ccp, "h_closed_form");
	if (!rec)
		return {false, "h_closed_form record missing"};
	return {rec->pass && rec->tolerance <= 1e-12,
	        fmt::format("max |h - (u y - v x)| {:.3e} <= 1e-12 over 1000 samples", rec->value)};
}

Outcome reconstruction()
{
	const auto t0 = Clock::now();
	auto cfg = with_suites("heisenberg-default", {Suite::Algebra, Suite::Reconstruction});
	cfg.refine = true;
	auto r = run_scenario(cfg);
	const double t = seconds_since(t0);
	double coarse = 0.0, fine = 0.0;
	int found = 0;
	for (int n = 0; n < 10; ++n)
	{
		const auto *a = find_record(r, Suite::Reconstruction, fmt::format("hermite_{}", n));
		const auto *b = find_record(r, Suite::Reconstruction, fmt::format("hermite_{}_refined", n));
		if (a && b && a->tolerance <= 1e-3)
		{
			++found;
			coarse = std::max(coarse, a->value);
			fine = std::max(fine, b->value);
		}
	}
	const bool ok = found == 10 && suite_passed(r, Suite::Reconstruction) && coarse <= 1e-3 &&
	                fine * 10 <= coarse && t < 30.0;
	return {ok, fmt::format("max error {:.3e} <= 1e-3, refined {:.3e} (gain {:.2e} >= 10), {:.1f} s < 30 s",
	                        coarse, fine, coarse / fine, t)};
}

Outcome intertwining()
{
	auto r = run_scenario(with_suites("heisenberg-default", {Suite::Algebra, Suite::Intertwine}));
	bool ok = suite_passed(r, Suite::Intertwine);
	double worst = 0.0;
	for (const char *name : {"wavelet_left_covariance", "wavelet_right_covariance",
	                         "contravariant_intertwining", "lambda_rho_consistency"})
	{
		const auto *rec = find_record(r, Suite::Intertwine, name);
		ok = ok && rec && rec->tolerance <= 1e-6 && rec->note.find("20 ") != std::string::npos;
		if (rec)
			worst = std::max(worst, rec->value);
	}
	return {ok, fmt::format("max residual {:.3e} <= 1e-6 on 20 pairs", worst)};
}

Outcome paren_transform_checks()
{
	bool ok = true;
	double fast_direct = 0.0, central = 0.0;
	for (auto family : {KernelSpec::Family::Gaussian, KernelSpec::Family::BandLimitedRandom})
	{
		auto cfg = with_suites("heisenberg-default", {Suite::Algebra, Suite::PropBound});
		cfg.kernel.family = family;
		auto r = run_scenario(cfg);
		const auto *fd = find_record(r, Suite::PropBound, "paren_fast_vs_direct");
		const auto *ci = find_record(r, Suite::PropBound, "paren_central_independence");
		ok = ok && suite_passed(r, Suite::PropBound) && fd && ci && fd->tolerance <= 1e-8 &&
		     ci->tolerance <= 1e-12;
		if (fd && ci)
		{
			fast_direct = std::max(fast_direct, fd->value);
			central = std::max(central, ci->value);
		}
	}
	// Closed form: exp(-|x|²/2) has transform 2π exp(-(u²+v²)/2).
	auto cfg = resolve_config("heisenberg-default");
	auto chart = cfg.chart();
	Character chi(chart, Eigen::Map<const Eigen::VectorXd>(cfg.chart_lambda.data(),
	                                                       static_cast<Eigen::Index>(cfg.chart_lambda.size())));
	auto k = sample_on_x(cfg.x_grid(), gaussian_kernel());
	auto fast = paren_transform_fast(chart, chi, k);
	double closed = 0.0;
	for (size_t i = 0; i < fast.values.size(); ++i)
	{
		const auto &g = fast.points[i];
		closed = std::max(closed, std::abs(fast.values[i] - 2 * std::numbers::pi *
		                                                         std::exp(-(g[0] * g[0] + g[1] * g[1]) / 2)));
	}
	ok = ok && closed <= 1e-6;
	return {ok, fmt::format("fast vs direct {:.3e} <= 1e-8, Gaussian closed form {:.3e} <= 1e-6, "
	                        "central independence {:.3e} <= 1e-12",
	                        fast_direct, closed, central)};
}

RunReport sweep_report;
std::string sweep_csv;

Outcome bound_sweep()
{
	const auto t0 = Clock::now();
	auto cfg = resolve_config("heisenberg-default");
	sweep_report = sweep(cfg, 20);
	sweep_csv = render_sweep_csv(sweep_report, cfg.name);
	const double t = seconds_since(t0);
	bool ok = sweep_report.pass() && sweep_report.sweep_rows.size() == 20 && t < 300.0;
	double min_margin = INFINITY;
	for (const auto &row : sweep_report.sweep_rows)
	{
		ok = ok && row.verdict.pass;
		min_margin = std::min(min_margin, row.verdict.margin);
	}
	return {ok, fmt::format("20 kernels, each at two resolutions, all pass; min margin {:.6e}, {:.1f} s < 300 s",
	                        min_margin, t)};
}

Outcome operator_norm_vs_svd()
{
	std::mt19937_64 rng(2024);
	std::uniform_int_distribution<int> size(1, 64);
	std::normal_distribution<double> n;
	double worst = 0.0;
	for (int trial = 0; trial < 50; ++trial)
	{
		Eigen::MatrixXcd m(size(rng), size(rng));
		for (Eigen::Index j = 0; j < m.cols(); ++j)
			for (Eigen::Index i = 0; i < m.rows(); ++i)
				m(i, j) = Complex(n(rng), n(rng));
		const double oracle = Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()[0];
		worst = std::max(worst, std::abs(operator_norm(m) - oracle) / oracle);
	}
	return {worst <= 1e-10, fmt::format("max relative error {:.3e} <= 1e-10 on 50 matrices up to 64x64", worst)};
}

Outcome sweep_determinism()
{
	auto cfg = resolve_config("heisenberg-default");
	const auto again = render_sweep_csv(sweep(cfg, 20), cfg.name);
	const bool same = !sweep_csv.empty() && again == sweep_csv;
	return {same, fmt::format("two sweeps from kernel seed {} byte-identical ({} bytes)", cfg.kernel.seed, again.size())};
}

} // namespace

int main()
{
	const std::pair<const char *, std::function<Outcome()>> criteria[] = {
	    {"algebra laws", algebra_laws},
	    {"homogeneous-space charts", ccp_charts},
	    {"h(x,g) closed form", h_closed_form},
	    {"wavelet reconstruction", reconstruction},
	    {"intertwining", intertwining},
	    {"paren transform", paren_transform_checks},
	    {"bound sweep", bound_sweep},
	    {"operator norm", operator_norm_vs_svd},
	    {"sweep determinism", sweep_determinism},
	};
	int failed = 0, index = 0;
	for (const auto &[name, run] : criteria)
	{
		++index;
		Outcome o;
		try
		{
			o = run();
		}
		catch (const std::exception &e)
		{
			o = {false, std::string("error: ") + e.what()};
		}
		failed += !o.pass;
		fmt::print("criterion {} {}: {} ({})\n", index, o.pass ? "PASS" : "FAIL", name, o.detail);
		std::fflush(stdout);
	}
	fmt::print("acceptance: {}/{} criteria pass\n", index - failed, index);
	return failed == 0 ? 0 : 1;
}
