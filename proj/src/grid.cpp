#include "sgpic/grid.hpp"

#include "sgpic/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sgpic {

SpatialGrid::SpatialGrid(Interval domain, int n_cells, FieldBoundary bc, Shape shape)
    : domain_(domain), n_cells_(0), dx_(0.0), bc_(bc), shape_(shape)
{
    if (n_cells < 1) {
        throw ConfigError("grid: cell count must be >= 1");
    }
    if (!(domain.hi > domain.lo)) {
        throw ConfigError("grid: domain must satisfy x_min < x_max");
    }
    n_cells_ = static_cast<std::size_t>(n_cells);
    dx_ = domain.length() / n_cells;
}

double SpatialGrid::wrap(double x) const
{
    if (inside(x)) {
        return x;
    }
    if (!std::isfinite(x)) {
        throw NumericalError("grid: non-finite position");
    }
    const double length = domain_.length();
    const double y = x - length * std::floor((x - domain_.lo) / length);
    // Rounding can land a hair outside either end.
    return std::clamp(y, domain_.lo, domain_.hi);
}

double SpatialGrid::fold(double x) const
{
    if (inside(x)) {
        return x;
    }
    if (!std::isfinite(x)) {
        throw NumericalError("grid: non-finite position");
    }
    const double period = 2.0 * domain_.length();
    double y = x - period * std::floor((x - domain_.lo) / period);
    if (y > domain_.hi) {
        y = 2.0 * domain_.hi - y;
    }
    return std::clamp(y, domain_.lo, domain_.hi);
}

std::size_t SpatialGrid::cell_of(double x) const
{
    if (!(x >= domain_.lo && x <= domain_.hi)) {
        throw LogicError("grid: position " + std::to_string(x) +
                         " outside domain; boundary conditions must run first");
    }
    const auto l = static_cast<std::size_t>((x - domain_.lo) / dx_);
    return l < n_cells_ ? l : n_cells_ - 1;
}

ShapeSplit SpatialGrid::split(double x) const
{
    const std::size_t l = cell_of(x);
    if (shape_ == Shape::TopHat) {
        return {l, l, 0.0};
    }
    const double s = (x - domain_.lo) / dx_ - 0.5;
    const double f = std::floor(s);
    const double share = s - f;
    const auto n = static_cast<long>(n_cells_);
    auto index = [&](long j) -> std::size_t {
        if (bc_ == FieldBoundary::Periodic) {
            return static_cast<std::size_t>(((j % n) + n) % n);
        }
        return static_cast<std::size_t>(std::clamp(j, 0L, n - 1));
    };
    const auto left = static_cast<long>(f);
    return {index(left), index(left + 1), share};
}

} // namespace sgpic
