#include "relconv/grid.hpp"
#include "relconv/errors.hpp"

#include <cmath>
#include <fmt/format.h>

namespace relconv {

BoxGrid::BoxGrid(std::vector<Axis> axes) : axes_(std::move(axes)), size_(1)
{
	for (const auto &a : axes_)
	{
		if (a.points < 2 || !(a.hi > a.lo) || !std::isfinite(a.lo) ||
		    !std::isfinite(a.hi))
			throw StructuralError(fmt::format(
			    "grid axis [{}, {}] with {} points is invalid", a.lo, a.hi,
			    a.points));
		size_ *= static_cast<size_t>(a.points);
	}
}

BoxGrid BoxGrid::cube(int dims, double half_width, int points)
{
	return BoxGrid(std::vector<Axis>(dims, Axis{-half_width, half_width, points}));
}

Eigen::VectorXd BoxGrid::node(size_t flat) const
{
	Eigen::VectorXd p(dims());
	for (int d = dims() - 1; d >= 0; --d)
	{
		const auto &a = axes_[d];
		p[d] = a.node(static_cast<int>(flat % a.points));
		flat /= a.points;
	}
	return p;
}

double BoxGrid::quadrature_weight(size_t flat) const
{
	double w = 1.0;
	for (int d = dims() - 1; d >= 0; --d)
	{
		const auto &a = axes_[d];
		w *= a.weight(static_cast<int>(flat % a.points)) * a.spacing();
		flat /= a.points;
	}
	return w;
}

double BoxGrid::cell_volume() const
{
	double v = 1.0;
	for (const auto &a : axes_)
		v *= a.spacing();
	return v;
}

size_t BoxGrid::nearest(const Eigen::VectorXd &p) const
{
	if (p.size() != dims())
		throw StructuralError("BoxGrid::nearest: dimension mismatch");
	size_t flat = 0;
	for (int d = 0; d < dims(); ++d)
	{
		const auto &a = axes_[d];
		long i = std::lround((p[d] - a.lo) / a.spacing());
		i = std::clamp(i, 0L, static_cast<long>(a.points - 1));
		flat = flat * a.points + static_cast<size_t>(i);
	}
	return flat;
}

BoxGrid BoxGrid::refined() const
{
	std::vector<Axis> axes;
	for (const auto &a : axes_)
	{
		const double mid = 0.5 * (a.lo + a.hi);
		const double half = 0.5 * (a.hi - a.lo) * kRefineExtent;
		axes.push_back({mid - half, mid + half, 2 * a.points - 1});
	}
	return BoxGrid(std::move(axes));
}

std::string BoxGrid::describe() const
{
	std::string s;
	for (const auto &a : axes_)
	{
		if (!s.empty())
			s += "x";
		s += fmt::format("[{:g},{:g}]@{}", a.lo, a.hi, a.points);
	}
	return s;
}

RepGrid::RepGrid(double lo, double hi, int n) : t_min(lo), t_max(hi), n_points(n)
{
	if (n < 8)
		throw StructuralError(fmt::format("representation grid needs at least 8 points, got {}", n));
	if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
		throw StructuralError(fmt::format("representation grid [{}, {}] is empty", lo, hi));
}

Eigen::VectorXd RepGrid::nodes() const
{
	Eigen::VectorXd t(n_points);
	for (int i = 0; i < n_points; ++i)
		t[i] = node(i);
	return t;
}

RepGrid RepGrid::refined() const
{
	const double mid = 0.5 * (t_min + t_max);
	const double half = 0.5 * (t_max - t_min) * kRefineExtent;
	return RepGrid(mid - half, mid + half, 2 * n_points);
}

std::string RepGrid::describe() const
{
	return fmt::format("[{:g},{:g}]@{}", t_min, t_max, n_points);
}

} // namespace relconv
