#pragma once

#include <stdexcept>
#include <string>

namespace relconv {

class Error : public std::runtime_error
{
  public:
	using std::runtime_error::runtime_error;
};

/// Malformed input: wrong tensor shape, vector length mismatch, bad index sets.
class StructuralError : public Error
{
  public:
	using Error::Error;
};

/// The truncated BCH series is exact only up to nilpotency step 3.
class UnsupportedStep : public Error
{
  public:
	explicit UnsupportedStep(int step);
	int step;
};

/// [g,g] does not span a trailing block of basis vectors.
class NonAdaptedBasis : public Error
{
  public:
	using Error::Error;
};

/// g^{-1} s(x)^{-1} g s(x) left the subgroup H.
class CcpViolation : public Error
{
  public:
	CcpViolation(const std::string &what, double residual);
	double residual;
};

class DegenerateWavelet : public Error
{
  public:
	using Error::Error;
};

/// h(x, g) is not linear in x, so the paren transform is not a Fourier
/// transform and the FFT path does not apply.
class NonlinearSymbol : public Error
{
  public:
	NonlinearSymbol(const std::string &what, double residual);
	double residual;
};

class NonConvergence : public Error
{
  public:
	NonConvergence(const std::string &what, double last_estimate,
	               double residual, int iterations);
	double last_estimate;
	double residual;
	int iterations;
};

/// Scenario config problems. `line` is 1-based, 0 when unknown.
class ConfigError : public Error
{
  public:
	ConfigError(const std::string &field, int line, const std::string &msg);
	std::string field;
	int line;
};

} // namespace relconv
