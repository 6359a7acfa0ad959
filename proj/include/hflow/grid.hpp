#ifndef HFLOW_GRID_HPP_
#define HFLOW_GRID_HPP_

/**
 * @file
 * @brief Values of a field on a rectilinear 3-D lattice, evaluated by
 * trilinear interpolation inside the box and by a constant outside.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "hflow/hgroup.hpp"
#include "hflow/parallel.hpp"

namespace hflow {

/// Box [lo, hi] with dims[a] >= 2 nodes per axis.
struct GridSpec
{
  std::array<double, 3> lo{};
  std::array<double, 3> hi{};
  std::array<std::size_t, 3> dims{2, 2, 2};

  void validate() const
  {
    for (int a = 0; a < 3; ++a) {
      if (dims[a] < 2) { throw std::invalid_argument("grid needs at least 2 nodes per axis"); }
      if (!(hi[a] > lo[a])) { throw std::invalid_argument("grid bounds must satisfy lo < hi"); }
    }
  }

  std::size_t size() const { return dims[0] * dims[1] * dims[2]; }
  double spacing(int axis) const { return (hi[axis] - lo[axis]) / static_cast<double>(dims[axis] - 1); }
  double max_cell() const { return std::max({spacing(0), spacing(1), spacing(2)}); }

  /// Node coordinate; the last node is pinned to hi.
  double coord(int axis, std::size_t i) const
  {
    return i + 1 == dims[axis] ? hi[axis] : lo[axis] + static_cast<double>(i) * spacing(axis);
  }

  Point node(std::size_t i, std::size_t j, std::size_t k) const { return {coord(0, i), coord(1, j), coord(2, k)}; }

  /// x-fastest linear index.
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const { return i + dims[0] * (j + dims[1] * k); }

  Point node(std::size_t n) const
  {
    const std::size_t i = n % dims[0];
    const std::size_t j = (n / dims[0]) % dims[1];
    const std::size_t k = n / (dims[0] * dims[1]);
    return node(i, j, k);
  }

  bool contains(const Point &p) const
  {
    return p.x >= lo[0] && p.x <= hi[0] && p.y >= lo[1] && p.y <= hi[1] && p.z >= lo[2] && p.z <= hi[2];
  }

  /// Grid with node spacing close to h, covering [lo, hi].
  static GridSpec with_spacing(std::array<double, 3> lo, std::array<double, 3> hi, double h)
  {
    GridSpec s{lo, hi, {}};
    for (int a = 0; a < 3; ++a) {
      s.dims[a] = static_cast<std::size_t>(std::llround((hi[a] - lo[a]) / h)) + 1;
      s.dims[a] = std::max<std::size_t>(s.dims[a], 2);
    }
    return s;
  }

  friend bool operator==(const GridSpec &, const GridSpec &) = default;
};

/**
 * @brief Immutable sampled field with constant extension outside the box.
 *
 * Evaluation is a fixed sequence of nonnegative-weight combinations followed
 * by a clamp to the stencil range, so it is monotone in the node values and
 * never leaves [min, max] of the 8 stencil values, bit for bit.
 */
class GridSlice
{
public:
  GridSlice() = default;

  GridSlice(GridSpec spec, std::vector<double> values, double outside_value)
      : spec_(spec), values_(std::move(values)), outside_(outside_value)
  {
    spec_.validate();
    if (values_.size() != spec_.size()) { throw std::invalid_argument("grid value count does not match dims"); }
    for (int a = 0; a < 3; ++a) { inv_h_[a] = 1.0 / spec_.spacing(a); }
  }

  const GridSpec &spec() const { return spec_; }
  const std::vector<double> &values() const { return values_; }
  double outside_value() const { return outside_; }
  double at(std::size_t i, std::size_t j, std::size_t k) const { return values_[spec_.index(i, j, k)]; }

  double operator()(const Point &p) const { return eval(p); }

  double eval(const Point &p) const
  {
    if (!spec_.contains(p)) { return outside_; }
    std::size_t idx[3];
    double t[3];
    locate(0, p.x, idx[0], t[0]);
    locate(1, p.y, idx[1], t[1]);
    locate(2, p.z, idx[2], t[2]);

    const std::size_t sx = 1, sy = spec_.dims[0], sz = spec_.dims[0] * spec_.dims[1];
    const std::size_t base = idx[0] + sy * idx[1] + sz * idx[2];
    const double v000 = values_[base], v100 = values_[base + sx];
    const double v010 = values_[base + sy], v110 = values_[base + sx + sy];
    const double v001 = values_[base + sz], v101 = values_[base + sx + sz];
    const double v011 = values_[base + sy + sz], v111 = values_[base + sx + sy + sz];

    const double ux = 1.0 - t[0], uy = 1.0 - t[1], uz = 1.0 - t[2];
    const double c00 = ux * v000 + t[0] * v100;
    const double c10 = ux * v010 + t[0] * v110;
    const double c01 = ux * v001 + t[0] * v101;
    const double c11 = ux * v011 + t[0] * v111;
    const double c0 = uy * c00 + t[1] * c10;
    const double c1 = uy * c01 + t[1] * c11;
    const double v = uz * c0 + t[2] * c1;

    const double lo = std::min({v000, v100, v010, v110, v001, v101, v011, v111});
    const double hi = std::max({v000, v100, v010, v110, v001, v101, v011, v111});
    return std::min(std::max(v, lo), hi);
  }

  double min_value() const { return *std::min_element(values_.begin(), values_.end()); }
  double max_value() const { return *std::max_element(values_.begin(), values_.end()); }

private:
  void locate(int axis, double c, std::size_t &i, double &t) const
  {
    const std::size_t n = spec_.dims[axis];
    double u = (c - spec_.lo[axis]) * inv_h_[axis];
    // snap onto nodes so stored values are reproduced exactly
    const double r = std::nearbyint(u);
    if (std::abs(u - r) <= 1e-9) { u = r; }
    u = std::clamp(u, 0.0, static_cast<double>(n - 1));
    const double fl = std::floor(u);
    i = std::min(static_cast<std::size_t>(fl), n - 2);
    t = u - static_cast<double>(i);
  }

  GridSpec spec_{};
  std::vector<double> values_;
  double outside_{0.0};
  std::array<double, 3> inv_h_{};
};

/// Thrown when a sampled value is NaN or infinite.
class NonFiniteSample : public std::runtime_error
{
public:
  NonFiniteSample(std::size_t i, std::size_t j, std::size_t k, const Point &p)
      : std::runtime_error("non-finite sample at node (" + std::to_string(i) + ", " + std::to_string(j) + ", "
                           + std::to_string(k) + ") = (" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", "
                           + std::to_string(p.z) + ")"),
        node{i, j, k}
  {}

  std::array<std::size_t, 3> node;
};

/// Samples f at every node (x-fastest), in parallel over z-planes.
template<typename Field>
GridSlice grid_sample(const Field &f, const GridSpec &spec, double outside_value)
{
  spec.validate();
  std::vector<double> values(spec.size());
  parallel_for(spec.dims[2], [&](std::size_t k) {
    for (std::size_t j = 0; j < spec.dims[1]; ++j) {
      for (std::size_t i = 0; i < spec.dims[0]; ++i) {
        const Point p = spec.node(i, j, k);
        const double v = f(p);
        if (!std::isfinite(v)) { throw NonFiniteSample(i, j, k, p); }
        values[spec.index(i, j, k)] = v;
      }
    }
  });
  return GridSlice(spec, std::move(values), outside_value);
}

inline double grid_eval(const GridSlice &s, const Point &p) { return s.eval(p); }

/// Nodewise min{s, c}, keeping the outside value.
inline GridSlice clamp_above(const GridSlice &s, double c)
{
  std::vector<double> v = s.values();
  for (double &x : v) { x = std::min(x, c); }
  return GridSlice(s.spec(), std::move(v), std::min(s.outside_value(), c));
}

}  // namespace hflow

#endif  // HFLOW_GRID_HPP_
