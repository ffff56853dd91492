#pragma once

// Norm estimates for relative convolutions: Φ = W_φφ, the paren transform
//
//     k̂(g) = ∫_X k(x) χ(g^{-1} s(x)^{-1} g s(x)) dx,
//
// operator norms by power iteration, and the two inequalities
// ‖π(f)‖ <= ‖(Λ⊗R)(fΦ^{-1})‖ and ‖π_χ(f)‖ <= sup |(fΦ^{-1})^|.

#include "relconv/repkit.hpp"

#include <cstdint>
#include <string>

namespace relconv {

/// Samples below this modulus make Φ^{-1} meaningless.
inline constexpr double kDegenerateModulus = 1e-300;

/// Throws DegenerateWavelet if any sample has modulus below kDegenerateModulus.
void require_nonvanishing(const CoefficientFunction &Phi);

/// Φ(g) = W_φ φ(g) at the given points. φ must be normalised.
CoefficientFunction compute_Phi(const SchrodingerRep &rep, const StateVector &phi,
                                std::span<const GroupPoint> points,
                                std::string label = {});
/// Φ at s(x) for every node of an X-grid.
CoefficientFunction compute_Phi(const SchrodingerRep &rep, const StateVector &phi,
                                const BoxGrid &xgrid);

/// Direct trapezoid quadrature of the paren transform at one point.
Complex paren_transform(const HomogeneousChart &chart, const Character &chi,
                        const KernelOnX &k, const GroupPoint &g);

/// Paren transform on the FFT frequency lattice of the kernel grid, for
/// step-2 charts where h(x, g) is bilinear. The output points are s(x') with
/// λ·h(·, s(x')) running over the zero-padded DFT frequencies. Throws
/// NonlinearSymbol if h is not bilinear, StructuralError if the X-block of
/// λ·h is singular.
CoefficientFunction paren_transform_fast(const HomogeneousChart &chart,
                                         const Character &chi, const KernelOnX &k,
                                         int padding = 4);

struct PowerIterationOptions
{
	double rel_tol = 1e-10;
	int max_iterations = 10000;
	/// Vectors iterated together; the top Ritz value is the estimate.
	int block_size = 8;
	std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// Largest singular value by block power iteration on A^H A from a seeded
/// random start. Throws NonConvergence at the iteration cap.
double operator_norm(const Eigen::MatrixXcd &m, const PowerIterationOptions &opts = {});
double operator_norm(const OperatorMatrix &m, const PowerIterationOptions &opts = {});

struct BoundVerdict
{
	double lhs = 0.0;
	double rhs = 0.0;
	double margin = 0.0;
	double discretization_estimate = 0.0;
	bool pass = false;
	std::string note;
};

/// pass = lhs <= rhs + discretization_estimate.
BoundVerdict make_verdict(double lhs, double rhs, double eps, std::string note);

/// Two-resolution estimate: ε = |Δlhs| + |Δrhs|, reported with the larger lhs
/// and the smaller rhs, so a pass implies the inequality at both resolutions.
BoundVerdict combine_resolutions(const BoundVerdict &coarse, const BoundVerdict &fine);

struct BoundOptions
{
	/// X-grid whose section points carry the multiplication realisation in
	/// the lemma check.
	BoxGrid symbol_grid = BoxGrid::cube(2, 6.0, 33);
	int fft_padding = 4;
	PowerIterationOptions power;
};

/// f Φ^{-1} on supp f, zero elsewhere. Φ is evaluated only on supp f.
KernelOnX divide_by_Phi(const SchrodingerRep &rep, const KernelOnX &f,
                        const StateVector &phi);

/// lhs = ‖π(f)‖, rhs = sup |(Λ⊗R)(fΦ^{-1})| as a multiplication operator on
/// the χ-covariant class, evaluated through lambda_rho_action.
BoundVerdict verify_lemma_bound(const SchrodingerRep &rep, const HomogeneousChart &chart,
                                const KernelOnX &f, const StateVector &phi,
                                const BoundOptions &opts = {});

/// lhs = ‖π(f)‖, rhs = max |paren_transform_fast(fΦ^{-1})|.
BoundVerdict verify_prop_bound(const SchrodingerRep &rep, const HomogeneousChart &chart,
                               const Character &chi, const KernelOnX &f,
                               const StateVector &phi, const BoundOptions &opts = {});

} // namespace relconv
