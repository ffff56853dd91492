#include "relconv/repkit.hpp"
#include "relconv/errors.hpp"

#include <cmath>
#include <fmt/format.h>
#include <map>
#include <numbers>
#include <unsupported/Eigen/FFT>

namespace relconv {

namespace {

Eigen::FFT<double> &thread_fft()
{
	thread_local Eigen::FFT<double> fft;
	return fft;
}

/// Angular frequencies of the DFT bins, in fftfreq order.
Eigen::VectorXd bin_frequencies(const RepGrid &grid)
{
	const int n = grid.n_points;
	const double scale = 2.0 * std::numbers::pi / (n * grid.spacing());
	Eigen::VectorXd w(n);
	for (int k = 0; k < n; ++k)
		w[k] = scale * (2 * k < n ? k : k - n);
	return w;
}

void require_grid(const SchrodingerRep &rep, const StateVector &v,
                  const char *what)
{
	if (!(v.grid() == rep.grid()))
		throw StructuralError(fmt::format("{}: state lives on grid {}, rep on {}",
		                                  what, v.grid().describe(),
		                                  rep.grid().describe()));
}

void require_heisenberg_point(const GroupPoint &g)
{
	if (g.dim() != 3)
		throw StructuralError("Heisenberg group points have 3 coordinates");
}

/// exp(iλ(s - u t - u v/2)) at every grid node.
Eigen::VectorXcd phase_vector(const SchrodingerRep &rep, const GroupPoint &g)
{
	const double u = g[0], v = g[1], s = g[2];
	const double lam = rep.lambda();
	const auto &grid = rep.grid();
	Eigen::VectorXcd p(grid.n_points);
	for (int i = 0; i < grid.n_points; ++i)
		p[i] = std::polar(1.0, lam * (s - u * grid.node(i) - 0.5 * u * v));
	return p;
}

bool centre_chart(const HomogeneousChart &chart)
{
	return chart.h_indices() == std::vector<int>{2};
}

} // namespace

StateVector::StateVector(RepGrid grid, Eigen::VectorXcd samples)
    : grid_(grid), samples_(std::move(samples))
{
	if (samples_.size() != grid_.n_points)
		throw StructuralError(fmt::format("state has {} samples, grid has {} points",
		                                  samples_.size(), grid_.n_points));
	if (!samples_.allFinite())
		throw StructuralError("state has non-finite samples");
}

Complex inner(const StateVector &a, const StateVector &b)
{
	if (!(a.grid() == b.grid()))
		throw StructuralError("inner: states live on different grids");
	return a.grid().spacing() * a.samples().dot(b.samples());
}

double norm(const StateVector &a)
{
	return std::sqrt(a.grid().spacing() * a.samples().squaredNorm());
}

StateVector gaussian_state(const RepGrid &grid)
{
	return hermite_state(grid, 0);
}

StateVector hermite_state(const RepGrid &grid, int n)
{
	if (n < 0)
		throw StructuralError("Hermite function order must be non-negative");
	Eigen::VectorXcd out(grid.n_points);
	const double c0 = std::pow(std::numbers::pi, -0.25);
	for (int i = 0; i < grid.n_points; ++i)
	{
		const double t = grid.node(i);
		double prev = 0.0;
		double cur = c0 * std::exp(-0.5 * t * t);
		for (int k = 0; k < n; ++k)
		{
			double next = std::sqrt(2.0 / (k + 1)) * t * cur -
			              std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
			prev = cur;
			cur = next;
		}
		out[i] = cur;
	}
	return StateVector(grid, std::move(out));
}

SchrodingerRep::SchrodingerRep(HomogeneousChart chart, double lambda, RepGrid grid)
    : chart_(std::move(chart)), lambda_(lambda), grid_(grid)
{
	if (lambda == 0.0 || !std::isfinite(lambda))
		throw StructuralError("Schrödinger representation needs a finite nonzero λ");
	const auto &a = chart_.algebra();
	if (a.dim() != 3 ||
	    a.constants() != NilpotentAlgebra::heisenberg().constants())
		throw StructuralError(
		    "the Schrödinger representation is only provided for the "
		    "Heisenberg algebra [e1,e2] = e3");
}

Character SchrodingerRep::covariance_character() const
{
	if (!centre_chart(chart_))
		throw StructuralError("the wavelet image is χ-covariant only for H = centre");
	return Character(chart_, Eigen::VectorXd::Constant(1, -lambda_));
}

Eigen::VectorXcd SchrodingerRep::translate(const Eigen::VectorXcd &f,
                                           double shift) const
{
	const int n = grid_.n_points;
	if (f.size() != n)
		throw StructuralError("translate: vector does not match the grid");
	if (shift == 0.0)
		return f;
	auto &fft = thread_fft();
	Eigen::VectorXcd spec(n), out(n);
	fft.fwd(spec.data(), f.data(), n);
	const Eigen::VectorXd w = bin_frequencies(grid_);
	for (int k = 0; k < n; ++k)
		spec[k] *= std::polar(1.0, w[k] * shift);
	fft.inv(out.data(), spec.data(), n);
	return out;
}

Eigen::VectorXcd SchrodingerRep::translation_column(double shift) const
{
	return translate(Eigen::VectorXcd::Unit(grid_.n_points, 0), shift);
}

RepApplied rep_apply(const SchrodingerRep &rep, const GroupPoint &g,
                     const StateVector &v)
{
	require_grid(rep, v, "rep_apply");
	require_heisenberg_point(g);
	const auto &grid = rep.grid();
	const double shift = g[1];

	// f(t + shift) reads past t_max (shift > 0) or before t_min (shift < 0);
	// those samples come around from the opposite end.
	double wrapped = 0.0, total = v.samples().squaredNorm();
	for (int i = 0; i < grid.n_points; ++i)
	{
		const double t = grid.node(i);
		if ((shift > 0 && t - grid.t_min < shift) ||
		    (shift < 0 && grid.t_max - t < -shift))
			wrapped += std::norm(v.samples()[i]);
	}

	RepApplied out;
	out.wrapped_mass = total > 0 ? wrapped / total : 0.0;
	out.truncated = out.wrapped_mass > kWrapTolerance;
	Eigen::VectorXcd moved = rep.translate(v.samples(), shift);
	out.state = StateVector(grid, phase_vector(rep, g).cwiseProduct(moved));
	return out;
}

Complex wavelet_transform(const SchrodingerRep &rep, const StateVector &v,
                          const StateVector &phi, const GroupPoint &g)
{
	const GroupPoint pts[] = {g};
	return wavelet_samples(rep, v, phi, pts).front();
}

std::vector<Complex> wavelet_samples(const SchrodingerRep &rep,
                                     const StateVector &v, const StateVector &phi,
                                     std::span<const GroupPoint> points)
{
	require_grid(rep, v, "wavelet_transform");
	require_grid(rep, phi, "wavelet_transform");
	const auto &grid = rep.grid();
	const double h = grid.spacing();
	const double lam = rep.lambda();
	const Eigen::VectorXd t = grid.nodes();

	std::map<double, Eigen::VectorXcd> shifted;
	std::vector<Complex> out;
	out.reserve(points.size());
	for (const auto &g : points)
	{
		require_heisenberg_point(g);
		const double u = g[0], sv = g[1], s = g[2];
		auto it = shifted.find(sv);
		if (it == shifted.end())
			it = shifted.emplace(sv, rep.translate(phi.samples(), sv)).first;
		const auto &moved = it->second;
		// <v, π(g)φ> = h Σ v_i conj(π(g)φ)_i
		Complex acc = 0.0;
		for (int i = 0; i < grid.n_points; ++i)
			acc += v.samples()[i] * std::conj(moved[i]) *
			       std::polar(1.0, -lam * (s - u * t[i] - 0.5 * u * sv));
		out.push_back(h * acc);
	}
	return out;
}

KernelOnX sample_on_x(const BoxGrid &grid, const PointFunction &f)
{
	KernelOnX k{grid, Eigen::VectorXcd(static_cast<Eigen::Index>(grid.size()))};
	for (size_t m = 0; m < grid.size(); ++m)
		k.samples[m] = f(grid.node(m));
	if (!k.samples.allFinite())
		throw StructuralError("kernel on X has non-finite samples");
	return k;
}

KernelOnG sample_on_g(const BoxGrid &grid, const PointFunction &f)
{
	KernelOnG k{grid, Eigen::VectorXcd(static_cast<Eigen::Index>(grid.size()))};
	for (size_t m = 0; m < grid.size(); ++m)
		k.samples[m] = f(grid.node(m));
	if (!k.samples.allFinite())
		throw StructuralError("kernel on G has non-finite samples");
	return k;
}

std::vector<GroupPoint> section_nodes(const HomogeneousChart &chart,
                                      const BoxGrid &xgrid)
{
	if (xgrid.dims() != chart.x_dim())
		throw StructuralError(fmt::format("X-grid has {} axes, X has dimension {}",
		                                  xgrid.dims(), chart.x_dim()));
	std::vector<GroupPoint> pts;
	pts.reserve(xgrid.size());
	for (size_t m = 0; m < xgrid.size(); ++m)
		pts.push_back(section_s(chart, XPoint{xgrid.node(m)}));
	return pts;
}

OperatorMatrix assemble_operator(const SchrodingerRep &rep,
                                 std::span<const GroupPoint> points,
                                 std::span<const Complex> coeffs)
{
	if (points.size() != coeffs.size())
		throw StructuralError("assemble_operator: points and coefficients differ in length");
	const auto &grid = rep.grid();
	const int n = grid.n_points;
	const double lam = rep.lambda();
	const double half_length = 0.5 * (grid.t_max - grid.t_min);

	// π(u,v,s) = exp(iλ(s - uv/2)) · diag(exp(-iλut)) · T(v). Collect the
	// scalar factor per (v, u), then one diagonal per v, then one circulant
	// per v. Map order fixes the summation order.
	std::map<std::pair<double, double>, Complex> buckets;
	for (size_t m = 0; m < points.size(); ++m)
	{
		if (coeffs[m] == 0.0)
			continue;
		const auto &g = points[m];
		require_heisenberg_point(g);
		const double u = g[0], v = g[1], s = g[2];
		buckets[{v, u}] += coeffs[m] * std::polar(1.0, lam * (s - 0.5 * u * v));
	}

	OperatorMatrix op{Eigen::MatrixXcd::Zero(n, n), grid, false};
	const Eigen::VectorXd t = grid.nodes();
	auto it = buckets.begin();
	while (it != buckets.end())
	{
		const double v = it->first.first;
		Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(n);
		for (; it != buckets.end() && it->first.first == v; ++it)
		{
			const double u = it->first.second;
			for (int a = 0; a < n; ++a)
				diag[a] += it->second * std::polar(1.0, -lam * u * t[a]);
		}
		if (std::abs(v) > half_length)
			op.truncated = true;
		const Eigen::VectorXcd col = rep.translation_column(v);
		for (int b = 0; b < n; ++b)
			for (int a = 0; a < n; ++a)
				op.entries(a, b) += diag[a] * col[(a - b + n) % n];
	}
	return op;
}

OperatorMatrix relative_convolution(const SchrodingerRep &rep, const KernelOnX &k)
{
	if (k.samples.size() != static_cast<Eigen::Index>(k.grid.size()))
		throw StructuralError("kernel samples do not match the grid");
	const auto pts = section_nodes(rep.chart(), k.grid);
	std::vector<Complex> coeffs(pts.size());
	for (size_t m = 0; m < pts.size(); ++m)
		coeffs[m] = k.grid.quadrature_weight(m) * k.samples[m];
	return assemble_operator(rep, pts, coeffs);
}

OperatorMatrix integrated_rep(const SchrodingerRep &rep, const KernelOnG &k)
{
	if (k.grid.dims() != 3)
		throw StructuralError("kernel on G needs a 3-axis grid for the Heisenberg group");
	if (k.samples.size() != static_cast<Eigen::Index>(k.grid.size()))
		throw StructuralError("kernel samples do not match the grid");
	std::vector<GroupPoint> pts;
	std::vector<Complex> coeffs;
	pts.reserve(k.grid.size());
	coeffs.reserve(k.grid.size());
	for (size_t m = 0; m < k.grid.size(); ++m)
	{
		pts.emplace_back(k.grid.node(m));
		coeffs.push_back(k.grid.quadrature_weight(m) * k.samples[m]);
	}
	return assemble_operator(rep, pts, coeffs);
}

KernelOnX left_translate(const SchrodingerRep &rep, const KernelOnX &k,
                         const GroupPoint &g)
{
	if (!centre_chart(rep.chart()))
		throw StructuralError("left_translate needs H = centre");
	require_heisenberg_point(g);
	if (k.grid.dims() != 2 || k.samples.size() != static_cast<Eigen::Index>(k.grid.size()))
		throw StructuralError("left_translate: kernel does not match a 2-D X-grid");
	const auto &ax = k.grid.axes();
	int step[2];
	for (int d = 0; d < 2; ++d)
	{
		const double h = ax[d].spacing();
		step[d] = static_cast<int>(std::lround(g[d] / h));
		if (std::abs(g[d] - step[d] * h) > 1e-9 * h)
			throw StructuralError(fmt::format(
			    "left_translate: shift {} is not a multiple of the grid step {}", g[d], h));
	}
	const int nx = ax[0].points, ny = ax[1].points;
	const double a = g[0], b = g[1], c = g[2], lam = rep.lambda();
	KernelOnX out{k.grid, Eigen::VectorXcd::Zero(k.samples.size())};
	for (int i = 0; i < nx; ++i)
		for (int j = 0; j < ny; ++j)
		{
			const int si = i - step[0], sj = j - step[1];
			if (si < 0 || si >= nx || sj < 0 || sj >= ny)
				continue;
			const double x = ax[0].node(i), y = ax[1].node(j);
			out.samples[i * ny + j] = k.samples[si * ny + sj] *
			                          std::polar(1.0, lam * (c - 0.5 * (b * x - a * y)));
		}
	return out;
}

StateVector contravariant_transform(const SchrodingerRep &rep,
                                    const KernelOnX &k, const StateVector &psi)
{
	require_grid(rep, psi, "contravariant_transform");
	return StateVector(rep.grid(), relative_convolution(rep, k).entries * psi.samples());
}

StateVector contravariant_transform(const SchrodingerRep &rep,
                                    const KernelOnG &k, const StateVector &psi)
{
	require_grid(rep, psi, "contravariant_transform");
	return StateVector(rep.grid(), integrated_rep(rep, k).entries * psi.samples());
}

double CoefficientFunction::sup_abs() const
{
	double m = 0.0;
	for (const auto &v : values)
		m = std::max(m, std::abs(v));
	return m;
}

CoefficientFunction lambda_rho_action(const SchrodingerRep &rep,
                                      const HomogeneousChart &chart,
                                      const XPoint &x, const CoefficientFunction &F)
{
	if (!centre_chart(chart))
		throw StructuralError("lambda_rho_action: the χ-covariant class needs H = centre");
	if (F.points.size() != F.values.size())
		throw StructuralError("coefficient function: points and values differ in length");
	const Character chi(chart, Eigen::VectorXd::Constant(1, -rep.lambda()));
	CoefficientFunction out{F.points, {}, F.grid};
	out.values.reserve(F.values.size());
	for (size_t m = 0; m < F.points.size(); ++m)
		out.values.push_back(character_eval(chi, h_of_xg(chart, x, F.points[m])) *
		                     F.values[m]);
	return out;
}

KernelOnX wavelet_kernel(const SchrodingerRep &rep, const StateVector &v,
                         const StateVector &phi, const BoxGrid &xgrid)
{
	const auto pts = section_nodes(rep.chart(), xgrid);
	const auto w = wavelet_samples(rep, v, phi, pts);
	return KernelOnX{xgrid, Eigen::Map<const Eigen::VectorXcd>(
	                            w.data(), static_cast<Eigen::Index>(w.size()))};
}

double calibrate_reconstruction(const SchrodingerRep &rep, const StateVector &phi,
                                const BoxGrid &xgrid)
{
	const auto back = contravariant_transform(rep, wavelet_kernel(rep, phi, phi, xgrid), phi);
	const double pp = inner(phi, phi).real();
	if (!(pp > 0))
		throw DegenerateWavelet("calibration wavelet has zero norm");
	return inner(phi, back).real() / (pp * pp);
}

StateVector reconstruct(const SchrodingerRep &rep, const StateVector &v,
                        const StateVector &phi, const StateVector &psi,
                        const BoxGrid &xgrid, double calibration)
{
	const auto back = contravariant_transform(rep, wavelet_kernel(rep, v, phi, xgrid), psi);
	return StateVector(rep.grid(), back.samples() / calibration);
}

} // namespace relconv
