#pragma once

#include <string>
#include <vector>

namespace relconv {

/// One named residual compared against a tolerance.
struct Check
{
	std::string name;
	double residual = 0.0;
	double tolerance = 0.0;
	bool pass = false;
	std::string note;
};

struct ValidationVerdict
{
	std::vector<Check> checks;

	bool pass() const;
	double max_residual() const;

	/// Appends a check that passes iff residual <= tolerance (NaN fails).
	Check &add(std::string name, double residual, double tolerance);
	const Check *find(const std::string &name) const;
};

} // namespace relconv
