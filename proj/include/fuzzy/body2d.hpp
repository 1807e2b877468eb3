#pragma once

// Planar fuzzy numbers held as support-function samples.
//
// Each level's cut is a compact convex set K, stored through its support
// function h_K(p) = max{<p, x> : x in K} on a uniform grid of directions
// p_k = (cos t_k, sin t_k), t_k = 2 pi k / N.

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "fuzzy/core.hpp"

namespace fuzzy {

using Point2 = std::array<double, 2>;

inline constexpr std::size_t kDefaultDirections = 360;

inline double direction_angle(std::size_t k, std::size_t count) {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
}

/// Support samples of one convex body on the uniform direction grid.
struct ConvexBody2D {
  std::vector<double> support;

  std::size_t directions() const noexcept { return support.size(); }

  static ConvexBody2D from_points(std::span<const Point2> points,
                                  std::size_t count = kDefaultDirections) {
    if (points.empty()) throw Error(ErrorKind::EmptyCut, "convex hull of no points");
    ConvexBody2D body;
    body.support.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double t = direction_angle(k, count);
      const double c = std::cos(t);
      const double s = std::sin(t);
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& p : points) best = std::max(best, c * p[0] + s * p[1]);
      body.support[k] = best;
    }
    return body;
  }

  static ConvexBody2D disk(Point2 center, double radius, std::size_t count = kDefaultDirections) {
    ConvexBody2D body;
    body.support.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double t = direction_angle(k, count);
      body.support[k] = std::cos(t) * center[0] + std::sin(t) * center[1] + radius;
    }
    return body;
  }

  /// Segment [lo, hi] x {0}. Direction 0 gives hi and direction pi gives -lo exactly.
  static ConvexBody2D segment_on_axis(Interval cut, std::size_t count = kDefaultDirections) {
    ConvexBody2D body;
    body.support.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      const double c = std::cos(direction_angle(k, count));
      body.support[k] = c >= 0.0 ? cut.hi * c : cut.lo * c;
    }
    if (count % 2 == 0) {
      body.support[0] = cut.hi;
      body.support[count / 2] = -cut.lo;
    }
    return body;
  }
};

/// Intersection of the halfplanes <p_k, x> <= h_k + slack, by successive clipping.
/// Empty result means the samples describe no nonempty body.
inline std::vector<Point2> reconstruct_polygon(std::span<const double> support, double slack = 1e-9) {
  const std::size_t count = support.size();
  if (count < 3) throw Error(ErrorKind::BadGrid, "need at least three directions");
  double scale = 1.0;
  for (double h : support) scale = std::max(scale, std::abs(h));
  const double box = 4.0 * scale;
  std::vector<Point2> poly{{-box, -box}, {box, -box}, {box, box}, {-box, box}};
  const double pad = slack * scale;

  std::vector<Point2> next;
  for (std::size_t k = 0; k < count && !poly.empty(); ++k) {
    const double t = direction_angle(k, count);
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double h = support[k] + pad;
    next.clear();
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point2& a = poly[i];
      const Point2& b = poly[(i + 1) % poly.size()];
      const double fa = c * a[0] + s * a[1] - h;
      const double fb = c * b[0] + s * b[1] - h;
      if (fa <= 0.0) next.push_back(a);
      if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
        const double r = fa / (fa - fb);
        next.push_back({a[0] + r * (b[0] - a[0]), a[1] + r * (b[1] - a[1])});
      }
    }
    poly.swap(next);
  }
  return poly;
}

/// Nested family of planar convex bodies indexed by an alpha grid.
class FuzzyBody2D {
 public:
  FuzzyBody2D(AlphaGrid grid, std::size_t directions, std::vector<std::vector<double>> support)
      : grid_(std::move(grid)), directions_(directions), support_(std::move(support)) {
    if (directions_ < 3) throw Error(ErrorKind::BadGrid, "need at least three directions");
    if (support_.size() != grid_.size()) {
      throw Error(ErrorKind::BadGrid, "one support row per level required");
    }
    for (const auto& row : support_) {
      if (row.size() != directions_) {
        throw Error(ErrorKind::GridMismatch, "support row length differs from direction count");
      }
    }
    for (std::size_t i = 1; i < support_.size(); ++i) {
      for (std::size_t k = 0; k < directions_; ++k) {
        if (support_[i][k] > support_[i - 1][k]) {
          throw Error(ErrorKind::NonNested,
                      "support grows between levels " + std::to_string(grid_[i - 1]) + " and " +
                          std::to_string(grid_[i]));
        }
      }
    }
    for (std::size_t i = 0; i < support_.size(); ++i) {
      if (reconstruct_polygon(support_[i]).empty()) {
        throw Error(ErrorKind::EmptyCut, "support samples describe an empty body at level " +
                                             std::to_string(grid_[i]));
      }
    }
  }

  const AlphaGrid& grid() const noexcept { return grid_; }
  std::size_t direction_count() const noexcept { return directions_; }
  std::span<const double> body(std::size_t level) const { return support_[level]; }
  const std::vector<std::vector<double>>& support() const noexcept { return support_; }

 private:
  AlphaGrid grid_;
  std::size_t directions_;
  std::vector<std::vector<double>> support_;
};

/// u*(alpha, p) with p = (cos theta, sin theta); bilinear in (alpha, theta) between samples.
inline double support_function_value(const FuzzyBody2D& u, double alpha, double theta) {
  check_level(alpha);
  if (!std::isfinite(theta)) throw Error(ErrorKind::OutOfRange, "direction angle must be finite");
  const std::size_t n = u.direction_count();
  const double turn = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(theta, turn);
  if (wrapped < 0.0) wrapped += turn;
  const double pos = wrapped / turn * static_cast<double>(n);
  const auto k0 = static_cast<std::size_t>(std::floor(pos)) % n;
  const std::size_t k1 = (k0 + 1) % n;
  const double w = pos - std::floor(pos);

  auto at_level = [&](std::size_t i) {
    const auto row = u.body(i);
    return w == 0.0 ? row[k0] : row[k0] + w * (row[k1] - row[k0]);
  };
  const auto& grid = u.grid();
  if (auto node = grid.find(alpha)) return at_level(*node);
  const std::size_t i = grid.bracket(alpha);
  const double t = (alpha - grid[i]) / (grid[i + 1] - grid[i]);
  const double a = at_level(i);
  const double b = at_level(i + 1);
  return a + t * (b - a);
}

/// Embeds a sampled 1-D number as segments on the x-axis.
inline FuzzyBody2D lift(const SampledFuzzy1D& u, std::size_t directions = kDefaultDirections) {
  std::vector<std::vector<double>> rows;
  rows.reserve(u.grid().size());
  for (std::size_t i = 0; i < u.grid().size(); ++i) {
    rows.push_back(ConvexBody2D::segment_on_axis(u.node_cut(i), directions).support);
  }
  return FuzzyBody2D(u.grid(), directions, std::move(rows));
}

}  // namespace fuzzy
