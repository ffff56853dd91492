#pragma once

// Test kernels on X. All are smooth; the random family is compactly
// supported in a disc.

#include "relconv/repkit.hpp"

#include <cstdint>

namespace relconv {

/// amplitude * exp(-|x|^2 / (2 width^2))
PointFunction gaussian_kernel(double width = 1.0, double amplitude = 1.0);

struct BandLimitedParams
{
	int terms = 6;
	/// Frequencies are drawn uniformly from the disc of this radius.
	double bandwidth = 2.0;
	/// Support radius of the C-infinity bump.
	double support_radius = 5.0;
};

/// exp(-|x|^2/2) * bump(|x|/R) * Σ_k c_k exp(i ω_k·x) with c_k complex normal
/// and ω_k uniform in the band, all drawn from `seed`.
PointFunction band_limited_random_kernel(std::uint64_t seed,
                                         const BandLimitedParams &params = {});

/// The normalised point mass at the grid node nearest `at`: 1/cell volume
/// there, zero elsewhere. The node must be interior (trapezoid weight 1).
Eigen::VectorXcd delta_samples(const BoxGrid &grid, const Eigen::VectorXd &at);

} // namespace relconv
