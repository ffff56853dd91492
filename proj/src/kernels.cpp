#include "relconv/kernels.hpp"
#include "relconv/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace relconv {

PointFunction gaussian_kernel(double width, double amplitude)
{
	if (!(width > 0))
		throw StructuralError("gaussian kernel width must be positive");
	return [width, amplitude](const Eigen::VectorXd &x) -> Complex {
		return amplitude * std::exp(-x.squaredNorm() / (2 * width * width));
	};
}

PointFunction band_limited_random_kernel(std::uint64_t seed,
                                         const BandLimitedParams &p)
{
	if (p.terms < 1 || !(p.bandwidth >= 0) || !(p.support_radius > 0))
		throw StructuralError("band-limited kernel parameters are invalid");
	std::mt19937_64 rng(seed);
	std::uniform_real_distribution<double> unit(0.0, 1.0);
	std::normal_distribution<double> normal;
	std::vector<Eigen::Vector2d> freq;
	std::vector<Complex> coeff;
	for (int k = 0; k < p.terms; ++k)
	{
		const double angle = 2 * std::numbers::pi * unit(rng);
		const double radius = p.bandwidth * std::sqrt(unit(rng));
		freq.emplace_back(radius * std::cos(angle), radius * std::sin(angle));
		coeff.emplace_back(normal(rng) / std::sqrt(2.0 * p.terms),
		                   normal(rng) / std::sqrt(2.0 * p.terms));
	}
	const double R = p.support_radius;
	return [freq, coeff, R](const Eigen::VectorXd &x) -> Complex {
		if (x.size() != 2)
			throw StructuralError("band-limited kernel is defined on a 2-D X");
		const double rho2 = x.squaredNorm() / (R * R);
		if (rho2 >= 1.0)
			return 0.0;
		const double envelope =
		    std::exp(-0.5 * x.squaredNorm()) * std::exp(1.0 - 1.0 / (1.0 - rho2));
		Complex sum = 0.0;
		for (size_t k = 0; k < freq.size(); ++k)
			sum += coeff[k] * std::polar(1.0, freq[k].dot(x.head<2>()));
		return envelope * sum;
	};
}

Eigen::VectorXcd delta_samples(const BoxGrid &grid, const Eigen::VectorXd &at)
{
	const size_t node = grid.nearest(at);
	if (grid.quadrature_weight(node) != grid.cell_volume())
		throw StructuralError("delta kernel must sit on an interior grid node");
	Eigen::VectorXcd s = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.size()));
	s[static_cast<Eigen::Index>(node)] = 1.0 / grid.cell_volume();
	return s;
}

} // namespace relconv
