#pragma once

// Cut-based representations of one-dimensional fuzzy numbers.
//
// A fuzzy number on the real line is fully described by its family of
// alpha-cuts [u]_a = [lower(a), upper(a)], a in [0,1]. Two carriers are
// provided: SampledFuzzy1D (endpoint samples on an alpha grid, linear in
// alpha between nodes) and CutCurve1D (closed-form endpoint callables).

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fuzzy/error.hpp"

namespace fuzzy {

/// Closed bounded interval [lo, hi]; singletons have lo == hi.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  static Interval make(double lo, double hi) {
    if (!(lo <= hi)) {
      throw Error(ErrorKind::EmptyCut, "interval with lo > hi");
    }
    return Interval{lo, hi};
  }

  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const noexcept {
    return lo <= other.lo && other.hi <= hi;
  }
  double width() const noexcept { return hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Strictly increasing levels in [0,1] starting at 0 and ending at 1.
class AlphaGrid {
 public:
  explicit AlphaGrid(std::vector<double> levels) : levels_(std::move(levels)) {
    if (levels_.size() < 2) {
      throw Error(ErrorKind::BadGrid, "alpha grid needs at least two levels");
    }
    if (levels_.front() != 0.0 || levels_.back() != 1.0) {
      throw Error(ErrorKind::BadGrid, "alpha grid must start at 0 and end at 1");
    }
    for (std::size_t i = 1; i < levels_.size(); ++i) {
      if (!(levels_[i - 1] < levels_[i])) {
        throw Error(ErrorKind::BadGrid, "alpha grid must be strictly increasing");
      }
    }
  }

  /// `count` equally spaced levels, endpoints included.
  static AlphaGrid uniform(std::size_t count) {
    if (count < 2) {
      throw Error(ErrorKind::BadGrid, "uniform grid needs at least two levels");
    }
    std::vector<double> levels(count);
    const double last = static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
      levels[i] = static_cast<double>(i) / last;
    }
    levels.back() = 1.0;
    return AlphaGrid(std::move(levels));
  }

  std::span<const double> levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }
  double operator[](std::size_t i) const { return levels_[i]; }

  friend bool operator==(const AlphaGrid&, const AlphaGrid&) = default;

  /// Index i such that levels[i] <= alpha <= levels[i+1], for alpha in [0,1].
  std::size_t bracket(double alpha) const {
    auto it = std::upper_bound(levels_.begin(), levels_.end(), alpha);
    if (it == levels_.begin()) return 0;
    auto i = static_cast<std::size_t>(std::distance(levels_.begin(), it)) - 1;
    return std::min(i, levels_.size() - 2);
  }

  /// Exact index of a node, if `alpha` is one.
  std::optional<std::size_t> find(double alpha) const {
    auto it = std::lower_bound(levels_.begin(), levels_.end(), alpha);
    if (it != levels_.end() && *it == alpha) {
      return static_cast<std::size_t>(std::distance(levels_.begin(), it));
    }
    return std::nullopt;
  }

  /// Union of both node sets.
  AlphaGrid merged(const AlphaGrid& other) const {
    std::vector<double> out;
    out.reserve(levels_.size() + other.levels_.size());
    std::set_union(levels_.begin(), levels_.end(), other.levels_.begin(), other.levels_.end(),
                   std::back_inserter(out));
    return AlphaGrid(std::move(out));
  }

  /// Adds the given levels; values outside [0,1] are ignored.
  AlphaGrid with_nodes(std::span<const double> extra) const {
    std::vector<double> out(levels_);
    for (double a : extra) {
      if (a >= 0.0 && a <= 1.0) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return AlphaGrid(std::move(out));
  }

 private:
  std::vector<double> levels_;
};

inline void check_level(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "alpha must lie in [0,1]");
  }
}

/// Endpoint samples u-(a), u+(a) on an alpha grid, linear in alpha between nodes.
class SampledFuzzy1D {
 public:
  SampledFuzzy1D(AlphaGrid grid, std::vector<double> lower, std::vector<double> upper)
      : grid_(std::move(grid)), lower_(std::move(lower)), upper_(std::move(upper)) {
    const std::size_t n = grid_.size();
    if (lower_.size() != n || upper_.size() != n) {
      throw Error(ErrorKind::BadGrid, "endpoint sequences must have one value per level");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
        throw Error(ErrorKind::EmptyCut, "non-finite endpoint at level " + std::to_string(grid_[i]));
      }
    }
    for (std::size_t i = 1; i < n; ++i) {
      if (lower_[i] < lower_[i - 1] || upper_[i] > upper_[i - 1]) {
        throw Error(ErrorKind::NonNested,
                    "cuts not nested between levels " + std::to_string(grid_[i - 1]) + " and " +
                        std::to_string(grid_[i]));
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (lower_[i] > upper_[i]) {
        throw Error(ErrorKind::EmptyCut, "empty cut at level " + std::to_string(grid_[i]));
      }
    }
  }

  const AlphaGrid& grid() const noexcept { return grid_; }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  Interval node_cut(std::size_t i) const { return Interval{lower_[i], upper_[i]}; }

 private:
  AlphaGrid grid_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

inline SampledFuzzy1D make_sampled_1d(AlphaGrid grid, std::vector<double> lower,
                                      std::vector<double> upper) {
  return SampledFuzzy1D(std::move(grid), std::move(lower), std::move(upper));
}

inline SampledFuzzy1D make_sampled_1d(std::vector<double> levels, std::vector<double> lower,
                                      std::vector<double> upper) {
  return SampledFuzzy1D(AlphaGrid(std::move(levels)), std::move(lower), std::move(upper));
}

inline Interval alpha_cut(const SampledFuzzy1D& u, double alpha) {
  check_level(alpha);
  const auto& grid = u.grid();
  if (auto node = grid.find(alpha)) return u.node_cut(*node);
  const std::size_t i = grid.bracket(alpha);
  const double t = (alpha - grid[i]) / (grid[i + 1] - grid[i]);
  const auto lo = u.lower();
  const auto hi = u.upper();
  return Interval{lo[i] + t * (lo[i + 1] - lo[i]), hi[i] + t * (hi[i + 1] - hi[i])};
}

/// u(x) = sup{a : x in [u]_a}, exact on the piecewise-linear representation.
inline double membership_at(const SampledFuzzy1D& u, double x) {
  const auto& grid = u.grid();
  const auto lo = u.lower();
  const auto hi = u.upper();
  const std::size_t n = grid.size();
  if (!(lo[0] <= x && x <= hi[0])) return 0.0;

  // lower is nondecreasing, so {a : lower(a) <= x} is a prefix [0, a_lo].
  auto level_limit = [&](auto satisfied, std::span<const double> ends) {
    std::size_t last = 0;
    while (last + 1 < n && satisfied(ends[last + 1])) ++last;
    if (last + 1 == n) return 1.0;
    const double span = ends[last + 1] - ends[last];
    const double t = (x - ends[last]) / span;
    const double a = grid[last] + t * (grid[last + 1] - grid[last]);
    // t < 1 here, so the level lies strictly below the next node.
    return std::min(a, std::nextafter(grid[last + 1], 0.0));
  };
  const double a_lo = level_limit([x](double v) { return v <= x; }, lo);
  const double a_hi = level_limit([x](double v) { return v >= x; }, hi);
  return std::clamp(std::min(a_lo, a_hi), 0.0, 1.0);
}

/// A declared jump of the cut map: the cut at `alpha` differs from its limit
/// as the level decreases to `alpha` from above.
struct DeclaredJump {
  double alpha = 0.0;
  Interval right_limit;
};

/// Identifies a curve built by a known constructor, for serialization.
struct CurveTag {
  std::string type;
  long n = 0;
};

/// Parametric fuzzy number: closed-form endpoint maps plus discontinuity metadata.
class CutCurve1D {
 public:
  using EndpointFn = std::function<double(double)>;

  CutCurve1D(EndpointFn lower, EndpointFn upper, std::vector<DeclaredJump> jumps = {},
             CurveTag tag = {}, bool lower_nondecreasing = true, bool upper_nonincreasing = true)
      : lower_(std::move(lower)),
        upper_(std::move(upper)),
        jumps_(std::move(jumps)),
        tag_(std::move(tag)),
        lower_nondecreasing_(lower_nondecreasing),
        upper_nonincreasing_(upper_nonincreasing) {
    std::sort(jumps_.begin(), jumps_.end(),
              [](const DeclaredJump& a, const DeclaredJump& b) { return a.alpha < b.alpha; });
    for (const auto& j : jumps_) check_level(j.alpha);
  }

  double lower(double alpha) const { return lower_(alpha); }
  double upper(double alpha) const { return upper_(alpha); }
  std::span<const DeclaredJump> jumps() const noexcept { return jumps_; }
  const CurveTag& tag() const noexcept { return tag_; }
  bool lower_nondecreasing() const noexcept { return lower_nondecreasing_; }
  bool upper_nonincreasing() const noexcept { return upper_nonincreasing_; }
  bool monotone() const noexcept { return lower_nondecreasing_ && upper_nonincreasing_; }

  /// Copy declaring both endpoint maps affine between consecutive knots.
  CutCurve1D with_linear_knots(std::vector<double> knots) const {
    CutCurve1D out = *this;
    std::sort(knots.begin(), knots.end());
    for (double k : knots) check_level(k);
    out.knots_ = std::move(knots);
    return out;
  }
  std::span<const double> linear_knots() const noexcept { return knots_; }
  bool piecewise_linear() const noexcept { return !knots_.empty(); }

  std::optional<Interval> right_limit_at(double alpha) const {
    for (const auto& j : jumps_) {
      if (j.alpha == alpha) return j.right_limit;
    }
    return std::nullopt;
  }

 private:
  EndpointFn lower_;
  EndpointFn upper_;
  std::vector<DeclaredJump> jumps_;
  CurveTag tag_;
  bool lower_nondecreasing_;
  bool upper_nonincreasing_;
  std::vector<double> knots_;
};

inline Interval alpha_cut(const CutCurve1D& u, double alpha) {
  check_level(alpha);
  return Interval{u.lower(alpha), u.upper(alpha)};
}

/// Either carrier; families and files mix both.
using FuzzyNumber = std::variant<SampledFuzzy1D, CutCurve1D>;

inline Interval alpha_cut(const FuzzyNumber& u, double alpha) {
  return std::visit([alpha](const auto& v) { return alpha_cut(v, alpha); }, u);
}

template <class T>
concept CutSource = requires(const T& u, double a) {
  { alpha_cut(u, a) } -> std::same_as<Interval>;
};

/// Levels at which the representation changes character; used as extra probes.
inline std::vector<double> breakpoints(const SampledFuzzy1D& u) {
  const auto levels = u.grid().levels();
  return {levels.begin(), levels.end()};
}

inline std::vector<double> breakpoints(const CutCurve1D& u) {
  std::vector<double> out(u.linear_knots().begin(), u.linear_knots().end());
  for (const auto& j : u.jumps()) out.push_back(j.alpha);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<double> breakpoints(const FuzzyNumber& u) {
  return std::visit([](const auto& v) { return breakpoints(v); }, u);
}

inline std::span<const DeclaredJump> declared_jumps(const SampledFuzzy1D&) { return {}; }
inline std::span<const DeclaredJump> declared_jumps(const CutCurve1D& u) { return u.jumps(); }
inline std::span<const DeclaredJump> declared_jumps(const FuzzyNumber& u) {
  return std::visit([](const auto& v) { return declared_jumps(v); }, u);
}

/// Cuts of `u` at the nodes of `grid`, as a sampled number (validated).
template <CutSource T>
SampledFuzzy1D sample(const T& u, const AlphaGrid& grid) {
  std::vector<double> lo(grid.size());
  std::vector<double> hi(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Interval c = alpha_cut(u, grid[i]);
    lo[i] = c.lo;
    hi[i] = c.hi;
  }
  return SampledFuzzy1D(grid, std::move(lo), std::move(hi));
}

/// Wraps a sampled number as a parametric curve (continuous, monotone).
inline CutCurve1D as_curve(const SampledFuzzy1D& u) {
  auto shared = std::make_shared<const SampledFuzzy1D>(u);
  const auto levels = u.grid().levels();
  return CutCurve1D([shared](double a) { return alpha_cut(*shared, a).lo; },
                    [shared](double a) { return alpha_cut(*shared, a).hi; })
      .with_linear_knots({levels.begin(), levels.end()});
}

inline CutCurve1D as_curve(const FuzzyNumber& u) {
  if (const auto* s = std::get_if<SampledFuzzy1D>(&u)) return as_curve(*s);
  return std::get<CutCurve1D>(u);
}

// ---------------------------------------------------------------------------
// Representation validator

struct ValidationOptions {
  double tol = 1e-9;
  std::size_t probe_levels = 101;
  int k_min = 4;  // one-sided probes at offsets 2^-k, k = k_min..k_max
  int k_max = 30;
};

struct ValidationCheck {
  std::string name;
  bool passed = true;
  double worst = 0.0;     // largest violation / residual gap seen
  double at_alpha = 0.0;  // level where `worst` occurred
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }

  const ValidationCheck* find(std::string_view name) const {
    for (const auto& c : checks) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

namespace detail {

inline double cut_distance(const Interval& a, const Interval& b) {
  return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

// Residual of a one-sided limit from probes H(d_k) at shrinking offsets.
// A jump keeps H flat; a continuous map drives the extrapolated value
// 2 H(d) - H(2d) to zero even when H(d) itself is still above tol.
struct LimitEstimate {
  double smallest = 0.0;
  double extrapolated = 0.0;
  bool any = false;

  double residual() const { return std::min(smallest, extrapolated); }
};

inline LimitEstimate estimate_limit(std::span<const double> shrinking) {
  LimitEstimate e;
  if (shrinking.empty()) return e;
  e.any = true;
  e.smallest = shrinking.back();
  e.extrapolated = e.smallest;
  if (shrinking.size() >= 2) {
    const double prev = shrinking[shrinking.size() - 2];
    e.extrapolated = std::max(0.0, 2.0 * e.smallest - prev);
  }
  return e;
}

}  // namespace detail

/// Checks the representation conditions: nonempty compact convex cuts,
/// nestedness, left-continuity on (0,1], and closure of the support at 0.
template <CutSource T>
ValidationReport validate_representation(const T& u, const ValidationOptions& opts = {}) {
  if (!(opts.tol > 0.0)) throw Error(ErrorKind::OutOfRange, "tolerance must be positive");

  std::vector<double> probes;
  const AlphaGrid uniform = AlphaGrid::uniform(std::max<std::size_t>(opts.probe_levels, 2));
  probes.assign(uniform.levels().begin(), uniform.levels().end());
  for (double b : breakpoints(u)) probes.push_back(b);
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

  const auto jumps = declared_jumps(u);
  ValidationCheck nonempty{"compact_convex_nonempty", true, 0.0, 0.0, {}};
  ValidationCheck nested{"nested", true, 0.0, 0.0, {}};
  ValidationCheck left{"left_continuous", true, 0.0, 0.0, {}};
  ValidationCheck closure{"closure_at_zero", true, 0.0, 0.0, {}};

  auto note = [](ValidationCheck& c, double value, double alpha) {
    if (value > c.worst) {
      c.worst = value;
      c.at_alpha = alpha;
    }
  };

  std::vector<Interval> cuts;
  cuts.reserve(probes.size());
  for (double a : probes) {
    const Interval c = alpha_cut(u, a);
    cuts.push_back(c);
    if (!std::isfinite(c.lo) || !std::isfinite(c.hi)) {
      nonempty.passed = false;
      nonempty.worst = std::numeric_limits<double>::infinity();
      nonempty.at_alpha = a;
      continue;
    }
    note(nonempty, c.lo - c.hi, a);
  }
  for (const auto& j : jumps) note(nonempty, j.right_limit.lo - j.right_limit.hi, j.alpha);
  if (nonempty.worst > opts.tol) nonempty.passed = false;

  for (std::size_t i = 1; i < cuts.size(); ++i) {
    note(nested, cuts[i - 1].lo - cuts[i].lo, probes[i]);
    note(nested, cuts[i].hi - cuts[i - 1].hi, probes[i]);
  }
  for (const auto& j : jumps) {
    const Interval at = alpha_cut(u, j.alpha);
    note(nested, at.lo - j.right_limit.lo, j.alpha);
    note(nested, j.right_limit.hi - at.hi, j.alpha);
  }
  if (nested.worst > opts.tol) nested.passed = false;

  auto offsets = [&](double alpha, bool from_below) {
    std::vector<double> out;
    for (int k = opts.k_min; k <= opts.k_max; ++k) {
      const double d = std::ldexp(1.0, -k);
      if (from_below) {
        if (alpha - d < 0.0) continue;
        // Never straddle a declared jump lying in [alpha - d, alpha).
        const bool straddles = std::any_of(jumps.begin(), jumps.end(), [&](const auto& j) {
          return j.alpha >= alpha - d && j.alpha < alpha;
        });
        if (straddles) continue;
      } else if (alpha + d > 1.0) {
        continue;
      }
      out.push_back(d);
    }
    return out;
  };

  std::size_t left_checked = 0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double a = probes[i];
    if (a <= 0.0) continue;
    std::vector<double> h;
    for (double d : offsets(a, true)) h.push_back(detail::cut_distance(cuts[i], alpha_cut(u, a - d)));
    const auto est = detail::estimate_limit(h);
    if (!est.any) continue;
    ++left_checked;
    const double r = est.residual();
    note(left, r, a);
    if (r > opts.tol) left.passed = false;
  }
  left.detail = std::to_string(left_checked) + " levels probed";

  const Interval zero_cut = cuts.front();
  std::vector<double> h0;
  for (double d : offsets(0.0, false)) h0.push_back(detail::cut_distance(zero_cut, alpha_cut(u, d)));
  const auto est0 = detail::estimate_limit(h0);
  closure.worst = est0.residual();
  closure.at_alpha = 0.0;
  const bool jump_at_zero =
      std::any_of(jumps.begin(), jumps.end(), [](const auto& j) { return j.alpha == 0.0; });
  if (closure.worst <= opts.tol) {
    closure.detail = "support is the closure of the positive-level cuts";
  } else if (jump_at_zero) {
    closure.detail = "declared jump at 0";
  } else {
    closure.passed = false;
    closure.detail = "gap between [u]_0 and the limit of [u]_d as d -> 0";
  }

  ValidationReport report;
  report.checks = {nonempty, nested, left, closure};
  return report;
}

}  // namespace fuzzy
