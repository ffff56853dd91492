#pragma once

// Scenario configs, the fixed suite pipeline, sweeps and run reports.

#include "relconv/bounds.hpp"
#include "relconv/kernels.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace relconv {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kCsvHeader = "# relconv-bounds-csv v1";
/// Environment variable naming the directory searched for `<name>.yaml`.
inline constexpr const char *kConfigDirEnv = "RELCONV_CONFIG_DIR";

/// Suites in execution order.
enum class Suite
{
	Algebra,
	Ccp,
	Reconstruction,
	Intertwine,
	LemmaBound,
	PropBound,
	Sweep,
};

inline constexpr Suite kAllSuites[] = {Suite::Algebra,    Suite::Ccp,       Suite::Reconstruction,
                                       Suite::Intertwine, Suite::LemmaBound, Suite::PropBound,
                                       Suite::Sweep};

std::string_view suite_name(Suite s);
std::optional<Suite> parse_suite(std::string_view name);
/// Process exit code when `s` is the first failing suite: 10 + position.
int suite_exit_code(Suite s);

inline constexpr int kExitConfigError = 2;
inline constexpr int kExitRuntimeError = 3;

struct KernelSpec
{
	enum class Family
	{
		Gaussian,
		BandLimitedRandom,
		Delta,
	};
	Family family = Family::BandLimitedRandom;
	double width = 1.0;
	double amplitude = 1.0;
	std::uint64_t seed = 1;
	BandLimitedParams band;
	/// Delta position on X.
	std::vector<double> at;
};

std::string_view family_name(KernelSpec::Family f);

/// Every tolerance a suite compares against.
struct Tolerances
{
	double exact = 1e-12;
	double homomorphism = 1e-8;
	double reconstruction = 1e-3;
	/// Minimum coarse/fine reconstruction error ratio under refinement.
	double refine_gain = 10.0;
	double intertwine = 1e-6;
	double lambda_rho = 1e-6;
	double paren_agreement = 1e-8;
	double power_rel_tol = 1e-10;
};

struct ScenarioConfig
{
	std::string name;
	/// File path or "built-in:<name>".
	std::string source;
	std::uint64_t seed = 1;

	int dim = 0;
	int step = 0;
	/// 0-based, as stored; configs list them 1-based.
	std::vector<BracketTerm> brackets;

	std::vector<int> h_indices;
	std::vector<double> chart_lambda;

	/// Absent for algebra-only scenarios.
	std::optional<double> rep_lambda;
	RepGrid rep_grid{-12.0, 12.0, 256};

	double x_half_width = 8.0;
	int x_points = 65;

	KernelSpec kernel;
	std::vector<Suite> suites;

	int sample_count = 1000;
	int hermite_count = 10;
	int intertwine_pairs = 20;
	int family_size = 20;
	/// Also run every resolution-dependent check on refined grids.
	bool refine = false;

	Tolerances tol;

	NilpotentAlgebra algebra() const;
	HomogeneousChart chart() const;
	BoxGrid x_grid() const;
};

/// Parses YAML text. Throws ConfigError with line and field on any problem.
ScenarioConfig parse_config(const std::string &text, const std::string &source);
ScenarioConfig load_config_file(const std::string &path);

std::vector<std::string> builtin_config_names();
std::optional<std::string> builtin_config_text(std::string_view name);

/// An existing file path; else `<name>.yaml` in $RELCONV_CONFIG_DIR; else a
/// built-in name. Throws ConfigError if none matches.
ScenarioConfig resolve_config(const std::string &name_or_path);

/// Canonical YAML for the config; parse_config(echo_config(c)) == c.
std::string echo_config(const ScenarioConfig &cfg);

struct Record
{
	std::string name;
	double value = 0.0;
	double tolerance = 0.0;
	/// "<=" for residuals, ">=" for margins and gains.
	std::string relation = "<=";
	bool pass = false;
	std::string note;
};

struct SuiteOutcome
{
	enum class Status
	{
		Ran,
		Skipped,
		Errored,
	};
	Suite suite = Suite::Algebra;
	Status status = Status::Ran;
	/// Skip reason or error message.
	std::string reason;
	std::vector<Record> records;

	bool pass() const;
};

struct SweepRow
{
	std::uint64_t kernel_seed = 0;
	double lambda = 0.0;
	std::string grid;
	BoundVerdict verdict;
};

struct RunReport
{
	std::string config_echo;
	std::string config_source;
	std::vector<SuiteOutcome> suites;
	std::vector<SweepRow> sweep_rows;
	/// Seconds; rendered only when requested.
	double wall_clock = 0.0;

	bool pass() const;
	size_t check_count() const;
	/// First suite that did not pass, in execution order.
	std::optional<Suite> first_failure() const;
	int exit_code() const;
};

/// Runs cfg.suites in the fixed order of kAllSuites. A failing algebra suite
/// skips the rest. Errors inside a suite become an Errored outcome.
RunReport run_scenario(const ScenarioConfig &cfg);

/// verify_prop_bound over `family_size` kernels seeded kernel.seed + i, each
/// at the default and refined resolution.
RunReport sweep(const ScenarioConfig &cfg, int family_size);

std::string render_report(const RunReport &report, bool with_timing);
std::string render_sweep_csv(const RunReport &report, const std::string &scenario);
/// One row per check record.
std::string render_records_csv(const RunReport &report);

/// π(f) for the configured kernel: CSV "re,im" per entry, row-major, or the
/// binary layout "RCMX", uint64 rows, uint64 cols, interleaved doubles.
void export_operator(const ScenarioConfig &cfg, const std::string &path);

} // namespace relconv
