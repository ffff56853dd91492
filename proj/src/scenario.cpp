#include "relconv/scenario.hpp"
#include "relconv/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <yaml-cpp/yaml.h>

namespace relconv {

namespace {

constexpr const char *kHeisenbergDefault = R"(name: heisenberg-default
seed: 1
algebra:
  dim: 3
  step: 2
  # [i, j, k, value]: [e_i, e_j] has coefficient `value` on e_k (1-based)
  brackets:
    - [1, 2, 3, 1]
    - [2, 1, 3, -1]
chart:
  h_indices: [3]
  lambda: [-1]
representation:
  lambda: 1
  grid: {t_min: -12, t_max: 12, n_points: 256}
x_grid: {half_width: 8, points: 65}
kernel:
  family: band-limited-random
  seed: 7
  terms: 6
  bandwidth: 2
  support_radius: 5
suites: [algebra, ccp, reconstruction, intertwine, lemma-bound, prop-bound]
sweep: {family_size: 20}
)";

constexpr const char *kFreeStep2 = R"(name: free-step2-3
seed: 1
algebra:
  dim: 6
  step: 2
  brackets:
    - [1, 2, 4, 1]
    - [2, 1, 4, -1]
    - [1, 3, 5, 1]
    - [3, 1, 5, -1]
    - [2, 3, 6, 1]
    - [3, 2, 6, -1]
chart:
  h_indices: [4, 5, 6]
  lambda: [1, -0.5, 0.25]
suites: [algebra, ccp]
)";

constexpr const char *kEngel = R"(name: engel
seed: 1
algebra:
  dim: 4
  step: 3
  brackets:
    - [1, 2, 3, 1]
    - [2, 1, 3, -1]
    - [1, 3, 4, 1]
    - [3, 1, 4, -1]
chart:
  h_indices: [3, 4]
  lambda: [0.5, 1]
suites: [algebra, ccp]
)";

const std::map<std::string, const char *, std::less<>> &builtins()
{
	static const std::map<std::string, const char *, std::less<>> m = {
	    {"heisenberg-default", kHeisenbergDefault},
	    {"free-step2-3", kFreeStep2},
	    {"engel", kEngel},
	};
	return m;
}

int line_of(const YAML::Node &n)
{
	return n.Mark().is_null() ? 0 : n.Mark().line + 1;
}

/// Field path plus the node it came from, for diagnostics.
class Reader
{
  public:
	Reader(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {}

	[[noreturn]] void fail(const std::string &msg) const { throw ConfigError(path_, line_of(node_), msg); }

	const YAML::Node &node() const { return node_; }
	const std::string &path() const { return path_; }

	void require_map(std::initializer_list<const char *> allowed) const
	{
		if (!node_.IsMap())
			fail("expected a mapping");
		for (const auto &kv : node_)
		{
			const auto key = kv.first.as<std::string>();
			if (std::none_of(allowed.begin(), allowed.end(),
			                 [&](const char *a) { return key == a; }))
				throw ConfigError(child_path(key), line_of(kv.first), "unknown field");
		}
	}

	bool has(const char *key) const { return node_[key].IsDefined() && !node_[key].IsNull(); }

	Reader at(const char *key) const
	{
		if (!has(key))
			fail(fmt::format("missing required field '{}'", key));
		return Reader(node_[key], child_path(key));
	}

	Reader item(size_t i) const { return Reader(node_[i], fmt::format("{}[{}]", path_, i)); }

	template <class T>
	T as(const char *type) const
	{
		if (!node_.IsScalar())
			fail(fmt::format("expected {}", type));
		try
		{
			return node_.as<T>();
		}
		catch (const YAML::Exception &)
		{
			fail(fmt::format("expected {}, got '{}'", type, node_.Scalar()));
		}
	}

	double number() const
	{
		const double v = as<double>("a number");
		if (!std::isfinite(v))
			fail("must be finite");
		return v;
	}

	double positive() const
	{
		const double v = number();
		if (!(v > 0))
			fail("must be positive");
		return v;
	}

	long long integer() const { return as<long long>("an integer"); }

	int int_in(long long lo, long long hi) const
	{
		const long long v = integer();
		if (v < lo || v > hi)
			fail(fmt::format("must be in [{}, {}], got {}", lo, hi, v));
		return static_cast<int>(v);
	}

	std::uint64_t seed() const { return as<std::uint64_t>("a non-negative integer"); }

	size_t sequence_size() const
	{
		if (!node_.IsSequence())
			fail("expected a list");
		return node_.size();
	}

  private:
	std::string child_path(const std::string &key) const
	{
		return path_.empty() ? key : path_ + "." + key;
	}

	YAML::Node node_;
	std::string path_;
};

std::vector<double> number_list(const Reader &r)
{
	std::vector<double> out;
	for (size_t i = 0; i < r.sequence_size(); ++i)
		out.push_back(r.item(i).number());
	return out;
}

void parse_kernel(const Reader &r, ScenarioConfig &cfg)
{
	r.require_map({"family", "seed", "width", "amplitude", "terms", "bandwidth",
	               "support_radius", "at"});
	auto &k = cfg.kernel;
	const auto fam = r.at("family");
	const auto name = fam.as<std::string>("a family name");
	if (name == "gaussian")
		k.family = KernelSpec::Family::Gaussian;
	else if (name == "band-limited-random")
		k.family = KernelSpec::Family::BandLimitedRandom;
	else if (name == "delta")
		k.family = KernelSpec::Family::Delta;
	else
		fam.fail(fmt::format("unknown family '{}' (gaussian | band-limited-random | delta)", name));
	k.seed = r.has("seed") ? r.at("seed").seed() : cfg.seed;
	if (r.has("width"))
		k.width = r.at("width").positive();
	if (r.has("amplitude"))
		k.amplitude = r.at("amplitude").number();
	if (r.has("terms"))
		k.band.terms = r.at("terms").int_in(1, 1000);
	if (r.has("bandwidth"))
		k.band.bandwidth = r.at("bandwidth").positive();
	if (r.has("support_radius"))
		k.band.support_radius = r.at("support_radius").positive();
	if (r.has("at"))
		k.at = number_list(r.at("at"));
}

void parse_tolerances(const Reader &r, Tolerances &t)
{
	r.require_map({"exact", "homomorphism", "reconstruction", "refine_gain", "intertwine",
	               "lambda_rho", "paren_agreement", "power_rel_tol"});
	const std::pair<const char *, double *> fields[] = {
	    {"exact", &t.exact},
	    {"homomorphism", &t.homomorphism},
	    {"reconstruction", &t.reconstruction},
	    {"refine_gain", &t.refine_gain},
	    {"intertwine", &t.intertwine},
	    {"lambda_rho", &t.lambda_rho},
	    {"paren_agreement", &t.paren_agreement},
	    {"power_rel_tol", &t.power_rel_tol},
	};
	for (const auto &[key, dst] : fields)
		if (r.has(key))
			*dst = r.at(key).positive();
}

bool needs_rep(Suite s)
{
	return s != Suite::Algebra && s != Suite::Ccp;
}

ScenarioConfig parse_root(const Reader &root, const std::string &source)
{
	root.require_map({"name", "seed", "algebra", "chart", "representation", "x_grid", "kernel",
	                  "suites", "samples", "sweep", "refine", "tolerances"});
	ScenarioConfig cfg;
	cfg.source = source;
	cfg.name = root.at("name").as<std::string>("a string");
	if (root.has("seed"))
		cfg.seed = root.at("seed").seed();
	cfg.kernel.seed = cfg.seed;

	const auto alg = root.at("algebra");
	alg.require_map({"dim", "step", "brackets"});
	cfg.dim = alg.at("dim").int_in(1, 64);
	cfg.step = alg.at("step").int_in(1, 64);
	if (alg.has("brackets"))
	{
		const auto list = alg.at("brackets");
		for (size_t i = 0; i < list.sequence_size(); ++i)
		{
			const auto t = list.item(i);
			if (t.sequence_size() != 4)
				t.fail("expected [i, j, k, value]");
			BracketTerm term;
			term.i = t.item(0).int_in(1, cfg.dim) - 1;
			term.j = t.item(1).int_in(1, cfg.dim) - 1;
			term.k = t.item(2).int_in(1, cfg.dim) - 1;
			term.value = t.item(3).number();
			cfg.brackets.push_back(term);
		}
	}

	const auto chart = root.at("chart");
	chart.require_map({"h_indices", "lambda"});
	{
		const auto idx = chart.at("h_indices");
		std::set<int> seen;
		for (size_t i = 0; i < idx.sequence_size(); ++i)
		{
			const int h = idx.item(i).int_in(1, cfg.dim) - 1;
			if (!seen.insert(h).second)
				idx.item(i).fail("duplicate index");
			cfg.h_indices.push_back(h);
		}
	}
	if (chart.has("lambda"))
	{
		const auto lam = chart.at("lambda");
		cfg.chart_lambda = number_list(lam);
		if (cfg.chart_lambda.size() != cfg.h_indices.size())
			lam.fail(fmt::format("has {} entries, h_indices has {}", cfg.chart_lambda.size(),
			                     cfg.h_indices.size()));
	}

	if (root.has("representation"))
	{
		const auto rep = root.at("representation");
		rep.require_map({"lambda", "grid"});
		const auto lam = rep.at("lambda");
		cfg.rep_lambda = lam.number();
		if (*cfg.rep_lambda == 0.0)
			lam.fail("must be nonzero");
		if (rep.has("grid"))
		{
			const auto g = rep.at("grid");
			g.require_map({"t_min", "t_max", "n_points"});
			RepGrid def = cfg.rep_grid;
			const double lo = g.has("t_min") ? g.at("t_min").number() : def.t_min;
			const double hi = g.has("t_max") ? g.at("t_max").number() : def.t_max;
			const int n = g.has("n_points") ? g.at("n_points").int_in(8, 1 << 16) : def.n_points;
			if (!(hi > lo))
				g.fail("t_max must exceed t_min");
			cfg.rep_grid = RepGrid(lo, hi, n);
		}
	}

	if (root.has("x_grid"))
	{
		const auto x = root.at("x_grid");
		x.require_map({"half_width", "points"});
		if (x.has("half_width"))
			cfg.x_half_width = x.at("half_width").positive();
		if (x.has("points"))
			cfg.x_points = x.at("points").int_in(2, 4097);
	}

	if (root.has("kernel"))
		parse_kernel(root.at("kernel"), cfg);
	const size_t x_dim = cfg.dim - cfg.h_indices.size();
	if (cfg.kernel.family == KernelSpec::Family::Delta)
	{
		if (cfg.kernel.at.empty())
			cfg.kernel.at.assign(x_dim, 0.0);
		else if (cfg.kernel.at.size() != x_dim)
			root.at("kernel").at("at").fail(fmt::format("needs {} coordinates", x_dim));
	}
	else if (!cfg.kernel.at.empty())
		root.at("kernel").at("at").fail("only the delta family takes a position");

	{
		const auto s = root.at("suites");
		for (size_t i = 0; i < s.sequence_size(); ++i)
		{
			const auto name = s.item(i).as<std::string>("a suite name");
			const auto suite = parse_suite(name);
			if (!suite)
				s.item(i).fail(fmt::format(
				    "unknown suite '{}' (algebra | ccp | reconstruction | intertwine | "
				    "lemma-bound | prop-bound | sweep)",
				    name));
			if (std::find(cfg.suites.begin(), cfg.suites.end(), *suite) == cfg.suites.end())
				cfg.suites.push_back(*suite);
		}
		for (Suite suite : cfg.suites)
			if (needs_rep(suite) && !cfg.rep_lambda)
				s.fail(fmt::format("suite '{}' needs a representation section", suite_name(suite)));
		if (!cfg.suites.empty() && cfg.chart_lambda.empty() &&
		    std::any_of(cfg.suites.begin(), cfg.suites.end(),
		                [](Suite x) { return x == Suite::PropBound || x == Suite::Sweep; }))
			s.fail("prop-bound and sweep need chart.lambda");
	}

	if (root.has("samples"))
	{
		const auto s = root.at("samples");
		s.require_map({"ccp", "hermite", "intertwine_pairs"});
		if (s.has("ccp"))
			cfg.sample_count = s.at("ccp").int_in(1, 10'000'000);
		if (s.has("hermite"))
			cfg.hermite_count = s.at("hermite").int_in(1, 200);
		if (s.has("intertwine_pairs"))
			cfg.intertwine_pairs = s.at("intertwine_pairs").int_in(1, 100'000);
	}
	if (root.has("sweep"))
	{
		const auto s = root.at("sweep");
		s.require_map({"family_size"});
		if (s.has("family_size"))
			cfg.family_size = s.at("family_size").int_in(0, 100'000);
	}
	if (root.has("refine"))
		cfg.refine = root.at("refine").as<bool>("true or false");
	if (root.has("tolerances"))
		parse_tolerances(root.at("tolerances"), cfg.tol);
	return cfg;
}

std::string num(double v)
{
	return fmt::format("{}", v);
}

} // namespace

std::string_view suite_name(Suite s)
{
	switch (s)
	{
	case Suite::Algebra:
		return "algebra";
	case Suite::Ccp:
		return "ccp";
	case Suite::Reconstruction:
		return "reconstruction";
	case Suite::Intertwine:
		return "intertwine";
	case Suite::LemmaBound:
		return "lemma-bound";
	case Suite::PropBound:
		return "prop-bound";
	case Suite::Sweep:
		return "sweep";
	}
	return "?";
}

std::optional<Suite> parse_suite(std::string_view name)
{
	for (Suite s : kAllSuites)
		if (suite_name(s) == name)
			return s;
	return std::nullopt;
}

int suite_exit_code(Suite s)
{
	return 10 + static_cast<int>(s);
}

std::string_view family_name(KernelSpec::Family f)
{
	switch (f)
	{
	case KernelSpec::Family::Gaussian:
		return "gaussian";
	case KernelSpec::Family::BandLimitedRandom:
		return "band-limited-random";
	case KernelSpec::Family::Delta:
		return "delta";
	}
	return "?";
}

NilpotentAlgebra ScenarioConfig::algebra() const
{
	return NilpotentAlgebra::from_terms(dim, step, brackets);
}

HomogeneousChart ScenarioConfig::chart() const
{
	return HomogeneousChart(algebra(), h_indices);
}

BoxGrid ScenarioConfig::x_grid() const
{
	return BoxGrid::cube(dim - static_cast<int>(h_indices.size()), x_half_width, x_points);
}

ScenarioConfig parse_config(const std::string &text, const std::string &source)
{
	YAML::Node root;
	try
	{
		root = YAML::Load(text);
	}
	catch (const YAML::ParserException &e)
	{
		throw ConfigError("(syntax)", e.mark.line + 1, e.msg);
	}
	if (!root.IsMap())
		throw ConfigError("(root)", line_of(root), "expected a mapping of scenario fields");
	return parse_root(Reader(root, ""), source);
}

ScenarioConfig load_config_file(const std::string &path)
{
	std::ifstream in(path);
	if (!in)
		throw ConfigError("(file)", 0, fmt::format("cannot read '{}'", path));
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_config(ss.str(), path);
}

std::vector<std::string> builtin_config_names()
{
	std::vector<std::string> out;
	for (const auto &kv : builtins())
		out.push_back(kv.first);
	return out;
}

std::optional<std::string> builtin_config_text(std::string_view name)
{
	auto it = builtins().find(name);
	if (it == builtins().end())
		return std::nullopt;
	return std::string(it->second);
}

ScenarioConfig resolve_config(const std::string &name_or_path)
{
	namespace fs = std::filesystem;
	std::error_code ec;
	if (fs::is_regular_file(name_or_path, ec))
		return load_config_file(name_or_path);
	if (const char *dir = std::getenv(kConfigDirEnv); dir && *dir)
	{
		for (const char *ext : {".yaml", ".yml"})
		{
			const fs::path p = fs::path(dir) / (name_or_path + ext);
			if (fs::is_regular_file(p, ec))
				return load_config_file(p.string());
		}
	}
	if (auto text = builtin_config_text(name_or_path))
		return parse_config(*text, "built-in:" + name_or_path);
	std::string known;
	for (const auto &n : builtin_config_names())
		known += (known.empty() ? "" : ", ") + n;
	throw ConfigError("(config)", 0,
	                  fmt::format("'{}' is not a file, not in ${}, and not a built-in ({})",
	                              name_or_path, kConfigDirEnv, known));
}

std::string echo_config(const ScenarioConfig &cfg)
{
	std::string o;
	auto line = [&](const std::string &s) { o += s + "\n"; };
	auto list = [](const auto &xs, auto fmt1) {
		std::string s = "[";
		for (size_t i = 0; i < xs.size(); ++i)
			s += (i ? ", " : "") + fmt1(xs[i]);
		return s + "]";
	};
	line(fmt::format("name: {}", cfg.name));
	line(fmt::format("seed: {}", cfg.seed));
	line("algebra:");
	line(fmt::format("  dim: {}", cfg.dim));
	line(fmt::format("  step: {}", cfg.step));
	line("  brackets:");
	for (const auto &t : cfg.brackets)
		line(fmt::format("    - [{}, {}, {}, {}]", t.i + 1, t.j + 1, t.k + 1, num(t.value)));
	line("chart:");
	line("  h_indices: " + list(cfg.h_indices, [](int h) { return std::to_string(h + 1); }));
	if (!cfg.chart_lambda.empty())
		line("  lambda: " + list(cfg.chart_lambda, num));
	if (cfg.rep_lambda)
	{
		line("representation:");
		line(fmt::format("  lambda: {}", num(*cfg.rep_lambda)));
		line(fmt::format("  grid: {{t_min: {}, t_max: {}, n_points: {}}}", num(cfg.rep_grid.t_min),
		                 num(cfg.rep_grid.t_max), cfg.rep_grid.n_points));
	}
	line(fmt::format("x_grid: {{half_width: {}, points: {}}}", num(cfg.x_half_width), cfg.x_points));
	line("kernel:");
	line(fmt::format("  family: {}", family_name(cfg.kernel.family)));
	line(fmt::format("  seed: {}", cfg.kernel.seed));
	line(fmt::format("  width: {}", num(cfg.kernel.width)));
	line(fmt::format("  amplitude: {}", num(cfg.kernel.amplitude)));
	line(fmt::format("  terms: {}", cfg.kernel.band.terms));
	line(fmt::format("  bandwidth: {}", num(cfg.kernel.band.bandwidth)));
	line(fmt::format("  support_radius: {}", num(cfg.kernel.band.support_radius)));
	if (!cfg.kernel.at.empty())
		line("  at: " + list(cfg.kernel.at, num));
	line("suites: " + list(cfg.suites, [](Suite s) { return std::string(suite_name(s)); }));
	line(fmt::format("samples: {{ccp: {}, hermite: {}, intertwine_pairs: {}}}", cfg.sample_count,
	                 cfg.hermite_count, cfg.intertwine_pairs));
	line(fmt::format("sweep: {{family_size: {}}}", cfg.family_size));
	line(fmt::format("refine: {}", cfg.refine));
	const auto &t = cfg.tol;
	line("tolerances:");
	line(fmt::format("  exact: {}", num(t.exact)));
	line(fmt::format("  homomorphism: {}", num(t.homomorphism)));
	line(fmt::format("  reconstruction: {}", num(t.reconstruction)));
	line(fmt::format("  refine_gain: {}", num(t.refine_gain)));
	line(fmt::format("  intertwine: {}", num(t.intertwine)));
	line(fmt::format("  lambda_rho: {}", num(t.lambda_rho)));
	line(fmt::format("  paren_agreement: {}", num(t.paren_agreement)));
	line(fmt::format("  power_rel_tol: {}", num(t.power_rel_tol)));
	return o;
}

} // namespace relconv
