#include "relconv/errors.hpp"
#include "relconv/verdict.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace relconv {

UnsupportedStep::UnsupportedStep(int s)
    : Error(fmt::format("nilpotency step {} is not supported (maximum 3)", s)),
      step(s)
{}

CcpViolation::CcpViolation(const std::string &what, double r)
    : Error(what), residual(r)
{}

NonlinearSymbol::NonlinearSymbol(const std::string &what, double r)
    : Error(what), residual(r)
{}

NonConvergence::NonConvergence(const std::string &what, double last, double r,
                               int iters)
    : Error(what), last_estimate(last), residual(r), iterations(iters)
{}

ConfigError::ConfigError(const std::string &f, int l, const std::string &msg)
    : Error(l > 0 ? fmt::format("config line {}: {}: {}", l, f, msg)
                  : fmt::format("config: {}: {}", f, msg)),
      field(f), line(l)
{}

bool ValidationVerdict::pass() const
{
	return std::all_of(checks.begin(), checks.end(),
	                   [](const Check &c) { return c.pass; });
}

double ValidationVerdict::max_residual() const
{
	double m = 0.0;
	for (const auto &c : checks)
		m = std::max(m, c.residual);
	return m;
}

Check &ValidationVerdict::add(std::string name, double residual,
                              double tolerance)
{
	Check c;
	c.name = std::move(name);
	c.residual = residual;
	c.tolerance = tolerance;
	c.pass = !std::isnan(residual) && residual <= tolerance;
	checks.push_back(std::move(c));
	return checks.back();
}

const Check *ValidationVerdict::find(const std::string &name) const
{
	for (const auto &c : checks)
		if (c.name == name)
			return &c;
	return nullptr;
}

} // namespace relconv
