#pragma once

// Hausdorff distance between cuts, the supremum metric and level convergence.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <optional>
#include <queue>
#include <ranges>
#include <span>
#include <vector>

#include "fuzzy/body2d.hpp"
#include "fuzzy/core.hpp"

namespace fuzzy {

/// H([x1,x2],[y1,y2]) = max{|x1-y1|, |x2-y2|}.
inline double hausdorff_interval(const Interval& a, const Interval& b) noexcept {
  return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

/// Max over the shared direction grid of |h_A - h_B|. Exact for bodies whose
/// normal fan is resolved by the grid, a lower bound otherwise.
inline double hausdorff_support_2d(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::GridMismatch, "bodies sampled on different direction grids");
  }
  double best = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) best = std::max(best, std::abs(a[k] - b[k]));
  return best;
}

inline double hausdorff_support_2d(const ConvexBody2D& a, const ConvexBody2D& b) {
  return hausdorff_support_2d(a.support, b.support);
}

/// d_inf for planar bodies on a shared level and direction grid. Support
/// values are linear in alpha between levels, so the max sits on a level.
inline double d_infty_body2d(const FuzzyBody2D& u, const FuzzyBody2D& v) {
  if (!(u.grid() == v.grid()) || u.direction_count() != v.direction_count()) {
    throw Error(ErrorKind::GridMismatch, "bodies sampled on different grids");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < u.grid().size(); ++i) {
    best = std::max(best, hausdorff_support_2d(u.body(i), v.body(i)));
  }
  return best;
}

struct ProfilePoint {
  double alpha = 0.0;
  double h = 0.0;
};

template <CutSource U, CutSource V>
std::vector<ProfilePoint> level_distance_profile(const U& u, const V& v, const AlphaGrid& grid) {
  std::vector<ProfilePoint> out;
  out.reserve(grid.size());
  for (double a : grid.levels()) {
    out.push_back({a, hausdorff_interval(alpha_cut(u, a), alpha_cut(v, a))});
  }
  return out;
}

struct SampledDistance {
  double value = 0.0;
  double alpha = 0.0;  // first level attaining the maximum
};

/// Exact d_inf for piecewise-linear cuts: endpoint differences are linear
/// between nodes of the union grid, so the supremum sits on a node.
inline SampledDistance d_infty_sampled_at(const SampledFuzzy1D& u, const SampledFuzzy1D& v) {
  auto node_max = [](const SampledFuzzy1D& a, const SampledFuzzy1D& b) {
    SampledDistance best{-1.0, 0.0};
    for (std::size_t i = 0; i < a.grid().size(); ++i) {
      const double h = hausdorff_interval(a.node_cut(i), b.node_cut(i));
      if (h > best.value) best = {h, a.grid()[i]};
    }
    return best;
  };
  if (u.grid() == v.grid()) return node_max(u, v);
  const AlphaGrid joint = u.grid().merged(v.grid());
  return node_max(sample(u, joint), sample(v, joint));
}

inline double d_infty_sampled(const SampledFuzzy1D& u, const SampledFuzzy1D& v) {
  return d_infty_sampled_at(u, v).value;
}

/// Certified bracket for a supremum.
struct Enclosure {
  double lower = 0.0;
  double upper = 0.0;
  bool attained = true;  // false when the best value is a one-sided limit

  double width() const noexcept { return upper - lower; }
  bool contains(double x) const noexcept { return lower <= x && x <= upper; }
};

struct ParametricSup {
  Enclosure enclosure;
  double alpha = 0.0;           // where the lower bound was found (or approached)
  bool depth_exceeded = false;  // bracket wider than tol when max_depth stopped refinement
  std::size_t evaluations = 0;
};

namespace detail {

struct SupNode {
  double a;
  double b;
  Interval u_a, v_a;  // cut at a, or its right limit when a is a declared jump
  Interval u_b, v_b;
  int depth;
  double bound;

  friend bool operator<(const SupNode& x, const SupNode& y) { return x.bound < y.bound; }
};

// Upper bound of max(|lu - lv|, |uu - uv|) over (a, b] from monotonicity:
// lower endpoints are nondecreasing, upper endpoints nonincreasing.
inline double monotone_bound(const Interval& u_a, const Interval& v_a, const Interval& u_b,
                             const Interval& v_b) {
  const double lower_gap = std::max(std::abs(u_b.lo - v_a.lo), std::abs(v_b.lo - u_a.lo));
  const double upper_gap = std::max(std::abs(u_a.hi - v_b.hi), std::abs(v_a.hi - u_b.hi));
  return std::max(lower_gap, upper_gap);
}

}  // namespace detail

/// Branch-and-bound enclosure of sup_a H([u]_a, [v]_a).
///
/// Declared jumps of either curve are forced split points. Each piece is
/// treated as half-open at a jump, bounded with the declared right limit, and
/// the right-limit value enters the lower bound as a non-attained candidate.
/// Refinement stops once upper - lower <= tol; a piece reaching `max_depth`
/// keeps its bound and the result is flagged depth_exceeded, as is a run
/// stopped by `max_evaluations`. When both curves declare linear knots the
/// knots become split points and each piece is bounded exactly by its ends.
inline ParametricSup d_infty_parametric(const CutCurve1D& u, const CutCurve1D& v, double tol = 1e-9,
                                        int max_depth = 60,
                                        std::size_t max_evaluations = std::size_t{1} << 20) {
  if (!(tol > 0.0)) throw Error(ErrorKind::OutOfRange, "tolerance must be positive");
  if (!u.monotone() || !v.monotone()) {
    throw Error(ErrorKind::NotMonotone, "supremum bounds need monotone endpoint declarations");
  }

  ParametricSup result;
  double best_point = -1.0;
  double best_point_alpha = 0.0;
  double best_limit = -1.0;
  double best_limit_alpha = 0.0;

  auto evaluate = [&](double a, Interval& cu, Interval& cv) {
    cu = alpha_cut(u, a);
    cv = alpha_cut(v, a);
    ++result.evaluations;
    const double h = hausdorff_interval(cu, cv);
    if (h > best_point) {
      best_point = h;
      best_point_alpha = a;
    }
  };

  const bool linear = u.piecewise_linear() && v.piecewise_linear();
  std::vector<double> splits{0.0, 1.0};
  if (linear) {
    for (const auto* curve : {&u, &v}) {
      for (double k : curve->linear_knots()) splits.push_back(k);
    }
  }
  for (const auto* curve : {&u, &v}) {
    for (const auto& j : curve->jumps()) {
      if (j.alpha < 1.0) splits.push_back(j.alpha);
    }
  }
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());

  std::vector<Interval> cuts_u(splits.size());
  std::vector<Interval> cuts_v(splits.size());
  for (std::size_t i = 0; i < splits.size(); ++i) evaluate(splits[i], cuts_u[i], cuts_v[i]);

  std::priority_queue<detail::SupNode> queue;
  for (std::size_t i = 0; i + 1 < splits.size(); ++i) {
    const double a = splits[i];
    Interval ua = u.right_limit_at(a).value_or(cuts_u[i]);
    Interval va = v.right_limit_at(a).value_or(cuts_v[i]);
    if (ua != cuts_u[i] || va != cuts_v[i]) {
      const double h = hausdorff_interval(ua, va);
      if (h > best_limit) {
        best_limit = h;
        best_limit_alpha = a;
      }
    }
    detail::SupNode node{a, splits[i + 1], ua, va, cuts_u[i + 1], cuts_v[i + 1], 0, 0.0};
    // Affine endpoint gaps peak at an end of the piece.
    node.bound = linear ? std::max(hausdorff_interval(ua, va), hausdorff_interval(node.u_b, node.v_b))
                        : detail::monotone_bound(node.u_a, node.v_a, node.u_b, node.v_b);
    queue.push(node);
  }

  auto lower = [&] { return std::max(best_point, best_limit); };
  double exhausted = -1.0;
  while (!queue.empty()) {
    const detail::SupNode top = queue.top();
    if (top.bound - lower() <= tol) break;
    queue.pop();
    const double m = top.a + 0.5 * (top.b - top.a);
    if (top.depth >= max_depth || !(m > top.a && m < top.b) ||
        result.evaluations >= max_evaluations) {
      exhausted = std::max(exhausted, top.bound);
      continue;
    }
    Interval um, vm;
    evaluate(m, um, vm);
    detail::SupNode left{top.a, m, top.u_a, top.v_a, um, vm, top.depth + 1, 0.0};
    detail::SupNode right{m, top.b, um, vm, top.u_b, top.v_b, top.depth + 1, 0.0};
    left.bound = detail::monotone_bound(left.u_a, left.v_a, left.u_b, left.v_b);
    right.bound = detail::monotone_bound(right.u_a, right.v_a, right.u_b, right.v_b);
    queue.push(left);
    queue.push(right);
  }

  const double lo = lower();
  double hi = std::max(lo, exhausted);
  if (!queue.empty()) hi = std::max(hi, queue.top().bound);
  result.enclosure.lower = lo;
  result.enclosure.upper = hi;
  result.enclosure.attained = best_point >= best_limit;
  result.alpha = result.enclosure.attained ? best_point_alpha : best_limit_alpha;
  result.depth_exceeded = hi - lo > tol;
  return result;
}

inline ParametricSup d_infty_parametric(const FuzzyNumber& u, const FuzzyNumber& v,
                                        double tol = 1e-9, int max_depth = 60,
                                        std::size_t max_evaluations = std::size_t{1} << 20) {
  return d_infty_parametric(as_curve(u), as_curve(v), tol, max_depth, max_evaluations);
}

/// Default report levels: uniform nodes, optionally with nodes clustered at
/// 1/3 (1/3 and 1/3 +- 10^-k, k = 2..6) for the counterexample sequence.
inline AlphaGrid report_grid(std::size_t uniform_levels = 101, bool cluster_at_third = false) {
  AlphaGrid grid = AlphaGrid::uniform(uniform_levels);
  if (!cluster_at_third) return grid;
  std::vector<double> extra{1.0 / 3.0};
  for (int k = 2; k <= 6; ++k) {
    const double off = std::pow(10.0, -k);
    extra.push_back(1.0 / 3.0 + off);
    extra.push_back(1.0 / 3.0 - off);
  }
  return grid.with_nodes(extra);
}

struct ConvergenceEntry {
  double alpha = 0.0;
  std::vector<double> h_values;            // first `history` values, index n-1
  std::optional<std::size_t> first_index;  // N with H_n <= eps for all N <= n <= n_max
  double last_h = 0.0;                     // H at n = n_max
};

struct ConvergenceReport {
  double eps = 0.0;
  std::size_t n_max = 0;
  std::vector<ConvergenceEntry> entries;
  bool converged = true;
  std::vector<double> failing_alphas;
};

/// Scans H([u_n]_a, [u]_a), n = 1..n_max, at each grid level. `seq(n, a)`
/// returns the cut of the n-th member (n starts at 1).
template <class SeqCut, CutSource L>
  requires std::invocable<const SeqCut&, std::size_t, double>
ConvergenceReport level_convergence_report(const SeqCut& seq, const L& limit, const AlphaGrid& grid,
                                           double eps, std::size_t n_max,
                                           std::size_t history = 32) {
  if (!(eps > 0.0)) throw Error(ErrorKind::OutOfRange, "eps must be positive");
  if (n_max < 1) throw Error(ErrorKind::OutOfRange, "n_max must be at least 1");
  ConvergenceReport report;
  report.eps = eps;
  report.n_max = n_max;
  report.entries.reserve(grid.size());
  for (double a : grid.levels()) {
    ConvergenceEntry entry;
    entry.alpha = a;
    const Interval target = alpha_cut(limit, a);
    std::size_t last_bad = 0;
    double h = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
      h = hausdorff_interval(seq(n, a), target);
      if (n <= history) entry.h_values.push_back(h);
      if (!(h <= eps)) last_bad = n;
    }
    entry.last_h = h;
    if (last_bad < n_max) {
      entry.first_index = last_bad + 1;
    } else {
      report.converged = false;
      report.failing_alphas.push_back(a);
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

template <std::ranges::random_access_range R, CutSource L>
  requires CutSource<std::ranges::range_value_t<R>>
ConvergenceReport level_convergence_report(const R& seq, const L& limit, const AlphaGrid& grid,
                                           double eps, std::size_t n_max,
                                           std::size_t history = 32) {
  const auto size = static_cast<std::size_t>(std::ranges::size(seq));
  if (size == 0) throw Error(ErrorKind::EmptyFamily, "empty sequence");
  auto cut = [&seq](std::size_t n, double a) { return alpha_cut(seq[n - 1], a); };
  return level_convergence_report(cut, limit, grid, eps, std::min(n_max, size), history);
}

}  // namespace fuzzy
