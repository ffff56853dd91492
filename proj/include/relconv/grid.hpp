#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace relconv {

/// Growth of the sampled extent under refinement; samples per axis double.
inline constexpr double kRefineExtent = 1.5;

/// Uniform nodes lo, lo + h, ..., hi with trapezoid weights.
struct Axis
{
	double lo = 0.0;
	double hi = 0.0;
	int points = 0;

	double spacing() const { return (hi - lo) / (points - 1); }
	double node(int i) const { return lo + i * spacing(); }
	double weight(int i) const
	{
		return (i == 0 || i == points - 1) ? 0.5 : 1.0;
	}
};

/// Tensor-product grid over a box, flattened row-major (last axis fastest).
class BoxGrid
{
  public:
	BoxGrid() = default;
	/// Every axis needs at least 2 points and hi > lo.
	explicit BoxGrid(std::vector<Axis> axes);

	/// [-half_width, half_width]^dims with `points` nodes per axis.
	static BoxGrid cube(int dims, double half_width, int points);

	int dims() const { return static_cast<int>(axes_.size()); }
	const std::vector<Axis> &axes() const { return axes_; }
	size_t size() const { return size_; }

	Eigen::VectorXd node(size_t flat) const;
	/// Trapezoid weight times cell volume.
	double quadrature_weight(size_t flat) const;
	double cell_volume() const;
	/// Flat index of the node nearest to `p`.
	size_t nearest(const Eigen::VectorXd &p) const;

	/// 2n-1 points per axis over kRefineExtent times the extent.
	BoxGrid refined() const;
	std::string describe() const;

  private:
	std::vector<Axis> axes_;
	size_t size_ = 0;
};

/// Sampling grid of the representation space L2(R).
struct RepGrid
{
	RepGrid() = default;
	/// Throws StructuralError unless n_points >= 8 and t_max > t_min.
	RepGrid(double t_min, double t_max, int n_points);

	double t_min = 0.0;
	double t_max = 0.0;
	int n_points = 0;

	double spacing() const { return (t_max - t_min) / (n_points - 1); }
	double node(int i) const { return t_min + i * spacing(); }
	Eigen::VectorXd nodes() const;

	/// Twice the points over kRefineExtent times the extent.
	RepGrid refined() const;
	std::string describe() const;

	bool operator==(const RepGrid &) const = default;
};

} // namespace relconv
