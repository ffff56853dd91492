#pragma once

// Schrödinger representation of the Heisenberg group on a sampled line, the
// covariant (wavelet) and contravariant transforms, and operator assembly for
// integrated representations and relative convolutions.
//
// Convention, with g = (u, v, s) in exponential coordinates and [e1,e2] = e3:
//
//     [π(u,v,s) f](t) = exp(iλ(s - u t - u v / 2)) f(t + v)
//
// Translations use band-limited (FFT) interpolation on the periodised grid,
// so every π(g) is exactly unitary on the sampled space.

#include "relconv/grid.hpp"
#include "relconv/homogeneous.hpp"

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace relconv {

using Complex = std::complex<double>;

class StateVector
{
  public:
	StateVector() = default;
	/// Throws StructuralError on length mismatch or non-finite samples.
	StateVector(RepGrid grid, Eigen::VectorXcd samples);

	const RepGrid &grid() const { return grid_; }
	const Eigen::VectorXcd &samples() const { return samples_; }

  private:
	RepGrid grid_;
	Eigen::VectorXcd samples_;
};

/// spacing * sum conj(a_i) b_i
Complex inner(const StateVector &a, const StateVector &b);
double norm(const StateVector &a);

/// Normalised Gaussian pi^{-1/4} exp(-t^2/2), the default mother wavelet.
StateVector gaussian_state(const RepGrid &grid);
/// n-th Hermite function, normalised in L2(R).
StateVector hermite_state(const RepGrid &grid, int n);

class SchrodingerRep
{
  public:
	/// The chart's algebra must be the Heisenberg algebra with [e1,e2] = e3.
	/// Throws StructuralError otherwise, or if lambda is zero.
	SchrodingerRep(HomogeneousChart chart, double lambda, RepGrid grid);

	const HomogeneousChart &chart() const { return chart_; }
	double lambda() const { return lambda_; }
	const RepGrid &grid() const { return grid_; }

	/// The character χ(h) = exp(-iλh) of the centre, for which the wavelet
	/// image satisfies F(gh) = χ(h) F(g). Requires H = centre.
	Character covariance_character() const;

	/// f(t + shift) on the periodised grid.
	Eigen::VectorXcd translate(const Eigen::VectorXcd &f, double shift) const;
	/// First column of the circulant matrix of translate(·, shift).
	Eigen::VectorXcd translation_column(double shift) const;

  private:
	HomogeneousChart chart_;
	double lambda_;
	RepGrid grid_;
};

struct RepApplied
{
	StateVector state;
	/// Fraction of |v|^2 carried across the grid boundary by the translation.
	double wrapped_mass = 0.0;
	bool truncated = false;
};

/// Wrapped mass above this fraction raises the truncation flag.
inline constexpr double kWrapTolerance = 1e-20;

RepApplied rep_apply(const SchrodingerRep &rep, const GroupPoint &g,
                     const StateVector &v);

/// [W_φ v](g) = <v, π(g)φ>, linear in v.
Complex wavelet_transform(const SchrodingerRep &rep, const StateVector &v,
                          const StateVector &phi, const GroupPoint &g);

/// wavelet_transform at many points; translations are shared between points
/// with equal v-coordinate.
std::vector<Complex> wavelet_samples(const SchrodingerRep &rep,
                                     const StateVector &v, const StateVector &phi,
                                     std::span<const GroupPoint> points);

/// Samples on a function on X = G/H; zero outside the grid box.
struct KernelOnX
{
	BoxGrid grid;
	Eigen::VectorXcd samples;
};

/// Samples of a function on G over a box in exponential coordinates.
struct KernelOnG
{
	BoxGrid grid;
	Eigen::VectorXcd samples;
};

using PointFunction = std::function<Complex(const Eigen::VectorXd &)>;

KernelOnX sample_on_x(const BoxGrid &grid, const PointFunction &f);
KernelOnG sample_on_g(const BoxGrid &grid, const PointFunction &f);

/// The group elements s(x) for the nodes of an X-grid, in flat order.
std::vector<GroupPoint> section_nodes(const HomogeneousChart &chart,
                                      const BoxGrid &xgrid);

struct OperatorMatrix
{
	Eigen::MatrixXcd entries;
	RepGrid grid;
	/// Some translation exceeded half the representation grid length.
	bool truncated = false;
};

/// Sum of coeffs[m] π(points[m]); the weights are already in `coeffs`.
OperatorMatrix assemble_operator(const SchrodingerRep &rep,
                                 std::span<const GroupPoint> points,
                                 std::span<const Complex> coeffs);

/// π(k) = ∫_X k(x) π(s(x)) dx by the trapezoid rule.
OperatorMatrix relative_convolution(const SchrodingerRep &rep, const KernelOnX &k);
/// π(k) = ∫_G k(g) π(g) dg by the trapezoid rule.
OperatorMatrix integrated_rep(const SchrodingerRep &rep, const KernelOnG &k);

/// Left translation of an X-kernel on the χ-covariant class, so that
/// π(left_translate(k, g)) = π(g) π(k). With g = (a, b, c):
///     k'(x, y) = k(x - a, y - b) exp(iλ(c - (b x - a y)/2)).
/// p(g) must be a whole number of grid steps; nodes shifted in from outside
/// the box are zero. Requires H = centre.
KernelOnX left_translate(const SchrodingerRep &rep, const KernelOnX &k,
                         const GroupPoint &g);

/// M_ψ(k) = π(k) ψ.
StateVector contravariant_transform(const SchrodingerRep &rep,
                                    const KernelOnX &k, const StateVector &psi);
StateVector contravariant_transform(const SchrodingerRep &rep,
                                    const KernelOnG &k, const StateVector &psi);

/// Complex samples of a function on G at scattered points.
struct CoefficientFunction
{
	std::vector<GroupPoint> points;
	std::vector<Complex> values;
	std::string grid;

	double sup_abs() const;
};

/// (Λ⊗R)(s(x)) on the χ-covariant class, realised as multiplication by
/// χ(h(x, g)) with χ the rep's covariance character.
CoefficientFunction lambda_rho_action(const SchrodingerRep &rep,
                                      const HomogeneousChart &chart,
                                      const XPoint &x, const CoefficientFunction &F);

/// W_φ v sampled at s(x) for every node of the X-grid, as a kernel on X.
KernelOnX wavelet_kernel(const SchrodingerRep &rep, const StateVector &v,
                         const StateVector &phi, const BoxGrid &xgrid);

/// c = <φ, M_φ W_φ φ> / <φ,φ>^2, so that M_φ W_φ / c reproduces <φ,φ> I.
double calibrate_reconstruction(const SchrodingerRep &rep, const StateVector &phi,
                                const BoxGrid &xgrid);

/// M_ψ(W_φ v) / c over the X-grid.
StateVector reconstruct(const SchrodingerRep &rep, const StateVector &v,
                        const StateVector &phi, const StateVector &psi,
                        const BoxGrid &xgrid, double calibration);

} // namespace relconv
