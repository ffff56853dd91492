#include "relconv/scenario.hpp"

#include <Eigen/Core>
#include <fmt/format.h>

namespace relconv {

namespace {

std::string status_word(const SuiteOutcome &s)
{
	switch (s.status)
	{
	case SuiteOutcome::Status::Skipped:
		return "SKIPPED";
	case SuiteOutcome::Status::Errored:
		return "ERROR";
	case SuiteOutcome::Status::Ran:
		break;
	}
	return s.pass() ? "PASS" : "FAIL";
}

std::string csv_field(const std::string &s)
{
	if (s.find_first_of(",\"\n") == std::string::npos)
		return s;
	std::string q = "\"";
	for (char c : s)
		q += c == '"' ? std::string("\"\"") : std::string(1, c);
	return q + "\"";
}

} // namespace

std::string render_report(const RunReport &report, bool with_timing)
{
	std::string o;
	o += fmt::format("relconv {} (Eigen {}.{}.{}, fmt {})\n", kVersion, EIGEN_WORLD_VERSION,
	                 EIGEN_MAJOR_VERSION, EIGEN_MINOR_VERSION, FMT_VERSION);
	o += fmt::format("config: {}\n", report.config_source);
	o += "--- config\n" + report.config_echo + "---\n";
	for (const auto &s : report.suites)
	{
		o += fmt::format("[{}] {}", suite_name(s.suite), status_word(s));
		if (!s.reason.empty())
			o += ": " + s.reason;
		o += "\n";
		for (const auto &r : s.records)
		{
			o += fmt::format("  {:<4} {:<30} {:.6e} {} {}", r.pass ? "ok" : "FAIL", r.name, r.value,
			                 r.relation, r.tolerance);
			if (!r.note.empty())
				o += "  (" + r.note + ")";
			o += "\n";
		}
	}
	if (report.check_count() == 0 && report.pass())
		o += "overall: PASS (no checks)\n";
	else
		o += fmt::format("overall: {} ({} checks)\n", report.pass() ? "PASS" : "FAIL",
		                 report.check_count());
	if (with_timing)
		o += fmt::format("wall-clock: {:.3f} s\n", report.wall_clock);
	return o;
}

std::string render_sweep_csv(const RunReport &report, const std::string &scenario)
{
	std::string o = std::string(kCsvHeader) + "\n";
	o += "scenario,kernel_seed,lambda,grid,lhs,rhs,margin,eps_disc,pass\n";
	for (const auto &r : report.sweep_rows)
	{
		const auto &v = r.verdict;
		o += fmt::format("{},{},{:.17g},{},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", csv_field(scenario),
		                 r.kernel_seed, r.lambda, csv_field(r.grid), v.lhs, v.rhs, v.margin,
		                 v.discretization_estimate, v.pass ? "true" : "false");
	}
	return o;
}

std::string render_records_csv(const RunReport &report)
{
	std::string o = "# relconv-checks-csv v1\n";
	o += "suite,status,check,value,relation,tolerance,pass\n";
	for (const auto &s : report.suites)
	{
		if (s.records.empty())
			o += fmt::format("{},{},,,,,{}\n", suite_name(s.suite), status_word(s),
			                 s.pass() ? "true" : "false");
		for (const auto &r : s.records)
			o += fmt::format("{},{},{},{:.17g},{},{},{}\n", suite_name(s.suite), status_word(s),
			                 csv_field(r.name), r.value, csv_field(r.relation), r.tolerance,
			                 r.pass ? "true" : "false");
	}
	return o;
}

} // namespace relconv
