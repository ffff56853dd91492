#include "relconv/bounds.hpp"
#include "relconv/errors.hpp"

#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <random>
#include <unsupported/Eigen/FFT>

namespace relconv {

namespace {

constexpr char kSupportNote[] =
    "Phi^-1 evaluated on supp f only (kernels are compactly supported)";

Eigen::VectorXd uniform_vector(std::mt19937_64 &rng, int n, double r)
{
	std::uniform_real_distribution<double> u(-r, r);
	Eigen::VectorXd v(n);
	for (int i = 0; i < n; ++i)
		v[i] = u(rng);
	return v;
}

double weighted_h(const HomogeneousChart &chart, const Character &chi,
                  const Eigen::VectorXd &x, const GroupPoint &g)
{
	return chi.weight().dot(h_of_xg(chart, XPoint{x}, g).coords);
}

/// In-place DFT along every axis of a row-major tensor.
void fft_all_axes(std::vector<Complex> &data, const std::vector<int> &shape)
{
	Eigen::FFT<double> fft;
	size_t total = data.size();
	size_t stride = total;
	for (int len : shape)
	{
		stride /= len;
		std::vector<Complex> line(len), out(len);
		// Lines along this axis: outer blocks of size len*stride, inner offset.
		for (size_t block = 0; block < total; block += static_cast<size_t>(len) * stride)
			for (size_t off = 0; off < stride; ++off)
			{
				for (int i = 0; i < len; ++i)
					line[i] = data[block + off + i * stride];
				fft.fwd(out.data(), line.data(), len);
				for (int i = 0; i < len; ++i)
					data[block + off + i * stride] = out[i];
			}
	}
}

} // namespace

void require_nonvanishing(const CoefficientFunction &Phi)
{
	for (size_t m = 0; m < Phi.values.size(); ++m)
		if (!(std::abs(Phi.values[m]) >= kDegenerateModulus))
			throw DegenerateWavelet(fmt::format(
			    "|Phi| = {:.3e} at sample {}; the reciprocal is unbounded",
			    std::abs(Phi.values[m]), m));
}

CoefficientFunction compute_Phi(const SchrodingerRep &rep, const StateVector &phi,
                                std::span<const GroupPoint> points, std::string label)
{
	const double n = norm(phi);
	if (std::abs(n - 1.0) > 1e-8)
		throw StructuralError(fmt::format("compute_Phi: mother wavelet has norm {}, expected 1", n));
	CoefficientFunction Phi;
	Phi.points.assign(points.begin(), points.end());
	Phi.values = wavelet_samples(rep, phi, phi, points);
	Phi.grid = std::move(label);
	require_nonvanishing(Phi);
	return Phi;
}

CoefficientFunction compute_Phi(const SchrodingerRep &rep, const StateVector &phi,
                                const BoxGrid &xgrid)
{
	const auto pts = section_nodes(rep.chart(), xgrid);
	return compute_Phi(rep, phi, pts, "X " + xgrid.describe());
}

Complex paren_transform(const HomogeneousChart &chart, const Character &chi,
                        const KernelOnX &k, const GroupPoint &g)
{
	if (k.grid.dims() != chart.x_dim())
		throw StructuralError("paren_transform: kernel grid does not match X");
	Complex acc = 0.0;
	for (size_t m = 0; m < k.grid.size(); ++m)
	{
		if (k.samples[m] == 0.0)
			continue;
		acc += k.grid.quadrature_weight(m) * k.samples[m] *
		       std::polar(1.0, weighted_h(chart, chi, k.grid.node(m), g));
	}
	return acc;
}

CoefficientFunction paren_transform_fast(const HomogeneousChart &chart,
                                         const Character &chi, const KernelOnX &k,
                                         int padding)
{
	const int d = chart.x_dim();
	const int n = chart.algebra().dim();
	if (k.grid.dims() != d || d == 0)
		throw StructuralError("paren_transform_fast: kernel grid does not match X");
	if (padding < 1)
		throw StructuralError("paren_transform_fast: padding must be at least 1");

	// h(x, g) must be linear in x, and linear in the section coordinates of g
	// for the lattice below to exist.
	std::mt19937_64 rng(0xfa57);
	double worst = 0.0;
	for (int s = 0; s < 32; ++s)
	{
		Eigen::VectorXd x1 = uniform_vector(rng, d, 2.0), x2 = uniform_vector(rng, d, 2.0);
		Eigen::VectorXd y1 = uniform_vector(rng, d, 2.0), y2 = uniform_vector(rng, d, 2.0);
		GroupPoint g(uniform_vector(rng, n, 2.0));
		const double a = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
		const auto h = [&](const Eigen::VectorXd &x, const GroupPoint &gg) {
			return h_of_xg(chart, XPoint{x}, gg).coords;
		};
		const auto sec = [&](const Eigen::VectorXd &y) {
			return section_s(chart, XPoint{y});
		};
		worst = std::max(worst, (h(x1 + x2, g) - h(x1, g) - h(x2, g)).cwiseAbs().maxCoeff());
		worst = std::max(worst, (h(a * x1, g) - a * h(x1, g)).cwiseAbs().maxCoeff());
		worst = std::max(worst, (h(x1, sec(y1 + y2)) - h(x1, sec(y1)) - h(x1, sec(y2)))
		                            .cwiseAbs()
		                            .maxCoeff());
	}
	if (worst > kExactTolerance)
		throw NonlinearSymbol(
		    fmt::format("h(x, g) is not bilinear (residual {:.3e}); use the direct "
		                "quadrature paren_transform",
		                worst),
		    worst);

	// ξ(s(x')) = M x' with ξ_j = λ·h(e_j, s(x')).
	Eigen::MatrixXd M(d, d);
	for (int j = 0; j < d; ++j)
		for (int i = 0; i < d; ++i)
			M(j, i) = weighted_h(chart, chi, Eigen::VectorXd::Unit(d, j),
			                     section_s(chart, XPoint{Eigen::VectorXd::Unit(d, i)}));
	Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
	lu.setThreshold(kExactTolerance);
	if (!lu.isInvertible())
		throw StructuralError(
		    "paren_transform_fast: the X-block of λ·h is singular, so the "
		    "section points do not cover the frequency lattice");
	const Eigen::MatrixXd Minv = lu.inverse();

	std::vector<int> shape(d);
	Eigen::VectorXd lo(d), step(d);
	for (int a = 0; a < d; ++a)
	{
		const auto &ax = k.grid.axes()[a];
		shape[a] = padding * ax.points;
		lo[a] = ax.lo;
		step[a] = ax.spacing();
	}
	size_t total = 1;
	for (int len : shape)
		total *= static_cast<size_t>(len);

	std::vector<Complex> data(total, 0.0);
	for (size_t m = 0; m < k.grid.size(); ++m)
	{
		size_t flat = m, padded = 0, mult = 1;
		for (int a = d - 1; a >= 0; --a)
		{
			const int pts = k.grid.axes()[a].points;
			padded += (flat % pts) * mult;
			flat /= pts;
			mult *= shape[a];
		}
		data[padded] = k.grid.quadrature_weight(m) * k.samples[m];
	}
	fft_all_axes(data, shape);

	// Σ_n c_n e^{-iω·x_n} = e^{-iω·lo} DFT[m], and k̂(g) = Σ_n c_n e^{iξ(g)·x_n},
	// so the bin ω sits at the point with ξ = -ω.
	CoefficientFunction out;
	out.grid = fmt::format("paren lattice of X {} padded x{}", k.grid.describe(), padding);
	out.points.reserve(total);
	out.values.reserve(total);
	for (size_t c = 0; c < total; ++c)
	{
		// Natural order -P/2 .. P/2-1 on every axis.
		size_t rem = c, fftpos = 0, mult = 1;
		Eigen::VectorXd omega(d);
		for (int a = d - 1; a >= 0; --a)
		{
			const int len = shape[a];
			const int natural = static_cast<int>(rem % len) - len / 2;
			rem /= len;
			omega[a] = 2.0 * std::numbers::pi * natural / (len * step[a]);
			fftpos += static_cast<size_t>((natural + len) % len) * mult;
			mult *= len;
		}
		const Eigen::VectorXd xprime = -Minv * omega;
		out.points.push_back(section_s(chart, XPoint{xprime}));
		out.values.push_back(std::polar(1.0, -omega.dot(lo)) * data[fftpos]);
	}
	return out;
}

double operator_norm(const Eigen::MatrixXcd &m, const PowerIterationOptions &opts)
{
	if (!m.allFinite())
		throw StructuralError("operator_norm: matrix has non-finite entries");
	if (m.size() == 0)
		return 0.0;
	if (opts.block_size < 1)
		throw StructuralError("operator_norm: block size must be at least 1");

	const Eigen::Index n = m.cols();
	const Eigen::Index b = std::min<Eigen::Index>(opts.block_size, n);
	std::mt19937_64 rng(opts.seed);
	std::normal_distribution<double> normal;
	Eigen::MatrixXcd X(n, b);
	for (Eigen::Index j = 0; j < b; ++j)
		for (Eigen::Index i = 0; i < n; ++i)
			X(i, j) = Complex(normal(rng), normal(rng));

	double theta = 0.0, prev = 0.0, prev_delta = INFINITY, residual = INFINITY;
	for (int it = 1; it <= opts.max_iterations; ++it)
	{
		// One power step on A^H A, then Rayleigh-Ritz on the block.
		const Eigen::MatrixXcd Z = m.adjoint() * (m * X);
		Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Z);
		const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, b);
		const Eigen::MatrixXcd B = m * Q;
		Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(B.adjoint() * B);
		theta = eig.eigenvalues()[b - 1];
		if (!(theta > 0.0))
			return 0.0;
		const Eigen::VectorXcd c = eig.eigenvectors().col(b - 1);
		const Eigen::VectorXcd x = Q * c;
		residual = (m.adjoint() * (B * c) - theta * x).norm() / theta;

		// Geometric convergence: the remaining error is about δρ/(1-ρ).
		const double delta = std::abs(theta - prev);
		const double rho = prev_delta > 0 ? delta / prev_delta : 0.0;
		const bool small_step = delta <= opts.rel_tol * theta;
		const bool tail_ok = rho < 1.0 && delta * rho / (1.0 - rho) <= opts.rel_tol * theta;
		if (it > 1 && ((small_step && tail_ok) || residual <= opts.rel_tol))
			return std::sqrt(theta);

		prev = theta;
		prev_delta = delta;
		X = Q * eig.eigenvectors();
	}
	throw NonConvergence(fmt::format("power iteration did not converge in {} iterations "
	                                 "(relative residual {:.3e})",
	                                 opts.max_iterations, residual),
	                     std::sqrt(theta), residual, opts.max_iterations);
}

double operator_norm(const OperatorMatrix &m, const PowerIterationOptions &opts)
{
	return operator_norm(m.entries, opts);
}

BoundVerdict make_verdict(double lhs, double rhs, double eps, std::string note)
{
	BoundVerdict v;
	v.lhs = lhs;
	v.rhs = rhs;
	v.margin = rhs - lhs;
	v.discretization_estimate = eps;
	v.pass = lhs <= rhs + eps;
	v.note = std::move(note);
	return v;
}

BoundVerdict combine_resolutions(const BoundVerdict &coarse, const BoundVerdict &fine)
{
	const double eps = std::abs(fine.lhs - coarse.lhs) + std::abs(fine.rhs - coarse.rhs);
	return make_verdict(std::max(coarse.lhs, fine.lhs), std::min(coarse.rhs, fine.rhs),
	                    eps, coarse.note);
}

KernelOnX divide_by_Phi(const SchrodingerRep &rep, const KernelOnX &f,
                        const StateVector &phi)
{
	const auto pts = section_nodes(rep.chart(), f.grid);
	std::vector<GroupPoint> support;
	std::vector<size_t> where;
	for (size_t m = 0; m < pts.size(); ++m)
		if (f.samples[m] != 0.0)
		{
			support.push_back(pts[m]);
			where.push_back(m);
		}
	const auto Phi = compute_Phi(rep, phi, support, "supp f");
	KernelOnX k{f.grid, Eigen::VectorXcd::Zero(f.samples.size())};
	for (size_t i = 0; i < where.size(); ++i)
		k.samples[where[i]] = f.samples[where[i]] / Phi.values[i];
	return k;
}

BoundVerdict verify_lemma_bound(const SchrodingerRep &rep, const HomogeneousChart &chart,
                                const KernelOnX &f, const StateVector &phi,
                                const BoundOptions &opts)
{
	const double lhs = operator_norm(relative_convolution(rep, f), opts.power);
	const KernelOnX k = divide_by_Phi(rep, f, phi);

	// (Λ⊗R)(k) = Σ_x w k(x) (Λ⊗R)(s(x)) is multiplication by its action on 1.
	CoefficientFunction one;
	one.points = section_nodes(chart, opts.symbol_grid);
	one.values.assign(one.points.size(), 1.0);
	one.grid = "G " + opts.symbol_grid.describe();
	std::vector<Complex> multiplier(one.points.size(), 0.0);
	for (size_t m = 0; m < k.grid.size(); ++m)
	{
		if (k.samples[m] == 0.0)
			continue;
		const Complex c = k.grid.quadrature_weight(m) * k.samples[m];
		const auto moved = lambda_rho_action(rep, chart, XPoint{k.grid.node(m)}, one);
		for (size_t i = 0; i < multiplier.size(); ++i)
			multiplier[i] += c * moved.values[i];
	}
	double rhs = 0.0;
	for (const auto &v : multiplier)
		rhs = std::max(rhs, std::abs(v));
	return make_verdict(lhs, rhs, 0.0, kSupportNote);
}

BoundVerdict verify_prop_bound(const SchrodingerRep &rep, const HomogeneousChart &chart,
                               const Character &chi, const KernelOnX &f,
                               const StateVector &phi, const BoundOptions &opts)
{
	const double lhs = operator_norm(relative_convolution(rep, f), opts.power);
	const KernelOnX k = divide_by_Phi(rep, f, phi);
	const double rhs = paren_transform_fast(chart, chi, k, opts.fft_padding).sup_abs();
	return make_verdict(lhs, rhs, 0.0, kSupportNote);
}

} // namespace relconv
