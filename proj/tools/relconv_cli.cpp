#include "relconv/errors.hpp"
#include "relconv/scenario.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fstream>
#include <iostream>

using namespace relconv;

namespace {

struct Options
{
	std::string config = "heisenberg-default";
	std::string csv;
	std::optional<std::uint64_t> seed;
	bool refine = false;
	bool timing = false;
	std::string export_path;
	std::vector<std::string> suites;
	std::optional<int> family_size;
};

void write_file(const std::string &path, const std::string &text)
{
	std::ofstream out(path, std::ios::binary);
	out << text;
	if (!out)
		throw StructuralError(fmt::format("cannot write '{}'", path));
}

ScenarioConfig load(const Options &opt)
{
	ScenarioConfig cfg = resolve_config(opt.config);
	if (opt.seed)
	{
		cfg.seed = *opt.seed;
		cfg.kernel.seed = *opt.seed;
	}
	if (opt.refine)
		cfg.refine = true;
	return cfg;
}

int finish(const Options &opt, const ScenarioConfig &cfg, const RunReport &report, bool sweep_csv)
{
	std::cout << render_report(report, opt.timing);
	const std::string csv =
	    sweep_csv ? render_sweep_csv(report, cfg.name) : render_records_csv(report);
	if (!opt.csv.empty())
		write_file(opt.csv, csv);
	else if (sweep_csv)
		std::cout << csv;
	return report.exit_code();
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Numerical checks for convolution-type operators on nilpotent groups"};
	app.require_subcommand(1);
	app.fallthrough();
	Options opt;
	app.add_option("--config", opt.config,
	               fmt::format("Config file, name in ${}, or built-in name", kConfigDirEnv))
	    ->capture_default_str();
	app.add_option("--csv", opt.csv, "Write check records (or sweep rows) as CSV");
	app.add_option("--seed", opt.seed, "Override the config seed (also the kernel seed)");
	app.add_flag("--refine", opt.refine, "Repeat resolution-dependent checks on refined grids");
	app.add_flag("--timing", opt.timing, "Append wall-clock time to the report");
	app.add_option("--export-operator", opt.export_path,
	               "Write π(f) for the configured kernel (.csv text, otherwise binary)");

	auto *algebra = app.add_subcommand("check-algebra", "Validate the algebra and group law");
	auto *ccp = app.add_subcommand("check-ccp", "Validate the chart and the CCP condition");
	auto *verify = app.add_subcommand("verify", "Run suites (default: those listed in the config)");
	verify->add_option("--suite", opt.suites,
	                   "algebra | ccp | reconstruction | intertwine | lemma-bound | prop-bound "
	                   "| sweep | all; repeatable");
	auto *sweep_cmd = app.add_subcommand("sweep", "Prop-bound margins over a seeded kernel family");
	sweep_cmd->add_option("--family-size", opt.family_size, "Number of kernels")
	    ->check(CLI::NonNegativeNumber);
	app.add_subcommand("list-configs", "Print the built-in config names");

	CLI11_PARSE(app, argc, argv);

	try
	{
		if (app.got_subcommand("list-configs"))
		{
			for (const auto &n : builtin_config_names())
				std::cout << n << "\n";
			return 0;
		}
		ScenarioConfig cfg = load(opt);
		if (!opt.export_path.empty())
			export_operator(cfg, opt.export_path);

		if (algebra->parsed())
		{
			cfg.suites = {Suite::Algebra};
			return finish(opt, cfg, run_scenario(cfg), false);
		}
		if (ccp->parsed())
		{
			cfg.suites = {Suite::Algebra, Suite::Ccp};
			return finish(opt, cfg, run_scenario(cfg), false);
		}
		if (verify->parsed())
		{
			if (!opt.suites.empty())
			{
				cfg.suites.clear();
				for (const auto &name : opt.suites)
				{
					if (name == "all")
					{
						cfg.suites.assign(std::begin(kAllSuites), std::end(kAllSuites));
						continue;
					}
					auto s = parse_suite(name);
					if (!s)
						throw ConfigError("--suite", 0, fmt::format("unknown suite '{}'", name));
					cfg.suites.push_back(*s);
				}
			}
			const auto report = run_scenario(cfg);
			const bool only_sweep = cfg.suites == std::vector<Suite>{Suite::Sweep};
			return finish(opt, cfg, report, only_sweep);
		}
		if (sweep_cmd->parsed())
			return finish(opt, cfg, sweep(cfg, opt.family_size.value_or(cfg.family_size)), true);
	}
	catch (const ConfigError &e)
	{
		std::cerr << "config error: " << e.what() << "\n";
		return kExitConfigError;
	}
	catch (const std::exception &e)
	{
		std::cerr << "error: " << e.what() << "\n";
		return kExitRuntimeError;
	}
	return kExitRuntimeError;
}
