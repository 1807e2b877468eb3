#pragma once

// Family-level diagnostics: uniform support bounds, equi-continuity moduli
// of the cut maps, and the compactness condition verdicts built on them.
//
// Everything here is a finite certificate. A family passes equi-left-
// continuity at tolerance eps when every tested level has a witness offset
// delta from the tested grid; the topological property itself is never
// claimed.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <ranges>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fuzzy/core.hpp"
#include "fuzzy/metrics.hpp"

namespace fuzzy {

template <class R>
concept Family = std::ranges::random_access_range<R> && CutSource<std::ranges::range_value_t<R>>;

/// Callable sequence: seq(n, alpha) is the cut of the n-th member, n >= 1.
template <class S>
concept CutSequence = std::invocable<const S&, std::size_t, double>;

namespace detail {

template <Family R>
void require_nonempty(const R& family) {
  if (std::ranges::empty(family)) throw Error(ErrorKind::EmptyFamily, "family has no members");
}

template <Family R>
auto as_sequence(const R& family) {
  return [&family](std::size_t n, double a) { return alpha_cut(family[n - 1], a); };
}

}  // namespace detail

struct SupportBound {
  double radius = 0.0;
  bool bounded = true;
};

/// Smallest R with every 0-cut inside [-R, R]. Finite families are always bounded.
template <Family R>
SupportBound support_bound(const R& family) {
  detail::require_nonempty(family);
  SupportBound out;
  for (const auto& u : family) {
    const Interval c = alpha_cut(u, 0.0);
    out.radius = std::max({out.radius, std::abs(c.lo), std::abs(c.hi)});
    if (!std::isfinite(c.lo) || !std::isfinite(c.hi)) out.bounded = false;
  }
  return out;
}

/// max over members of H([u]_a, [u]_{a-d}); by nestedness this is the sup over [a-d, a].
template <Family R>
double left_modulus(const R& family, double alpha, double delta) {
  check_level(alpha);
  if (!(delta > 0.0) || alpha - delta < 0.0) {
    throw Error(ErrorKind::OutOfRange, "left modulus needs 0 < delta <= alpha");
  }
  double best = 0.0;
  for (const auto& u : family) {
    best = std::max(best, hausdorff_interval(alpha_cut(u, alpha), alpha_cut(u, alpha - delta)));
  }
  return best;
}

/// max over members of H([u]_0, [u]_d).
template <Family R>
double right_modulus_at_zero(const R& family, double delta) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw Error(ErrorKind::OutOfRange, "right modulus needs 0 < delta <= 1");
  }
  double best = 0.0;
  for (const auto& u : family) {
    best = std::max(best, hausdorff_interval(alpha_cut(u, 0.0), alpha_cut(u, delta)));
  }
  return best;
}

/// Geometric offsets 2^-k, k = k_lo..k_hi, largest first.
inline std::vector<double> default_delta_grid(int k_lo = 2, int k_hi = 20) {
  std::vector<double> out;
  for (int k = k_lo; k <= k_hi; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

/// Report levels: the nodes of report_grid(count, cluster_at_third) above 0,
/// so family and convergence reports probe the same levels.
inline std::vector<double> default_family_alphas(std::size_t count = 101,
                                                 bool cluster_at_third = false) {
  const AlphaGrid grid = report_grid(count, cluster_at_third);
  std::vector<double> out;
  for (double a : grid.levels()) {
    if (a > 0.0) out.push_back(a);
  }
  return out;
}

struct ModulusSample {
  double delta = 0.0;
  double omega = 0.0;
};

struct LevelWitness {
  double alpha = 0.0;
  std::optional<double> delta;  // largest tested delta with modulus < eps
  std::vector<ModulusSample> moduli;
};

struct EquiContinuityReport {
  double eps = 0.0;
  std::vector<LevelWitness> left;  // levels in (0,1]
  LevelWitness right_at_zero;
  bool left_ok = true;
  bool right_ok = true;

  bool ok() const noexcept { return left_ok && right_ok; }

  std::vector<double> failing_alphas() const {
    std::vector<double> out;
    for (const auto& w : left) {
      if (!w.delta) out.push_back(w.alpha);
    }
    return out;
  }
};

template <Family R>
EquiContinuityReport equi_continuity_report(const R& family, std::span<const double> alphas,
                                            std::span<const double> deltas, double eps) {
  detail::require_nonempty(family);
  if (!(eps > 0.0)) throw Error(ErrorKind::OutOfRange, "eps must be positive");
  if (alphas.empty() || deltas.empty()) throw Error(ErrorKind::OutOfRange, "empty probe grid");

  std::vector<double> sorted(deltas.begin(), deltas.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());

  EquiContinuityReport report;
  report.eps = eps;
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 1.0)) continue;
    LevelWitness w;
    w.alpha = a;
    for (double d : sorted) {
      if (a - d < 0.0) continue;
      const double omega = left_modulus(family, a, d);
      w.moduli.push_back({d, omega});
      if (!w.delta && omega < eps) w.delta = d;
    }
    if (!w.delta) report.left_ok = false;
    report.left.push_back(std::move(w));
  }
  report.right_at_zero.alpha = 0.0;
  for (double d : sorted) {
    if (d > 1.0) continue;
    const double omega = right_modulus_at_zero(family, d);
    report.right_at_zero.moduli.push_back({d, omega});
    if (!report.right_at_zero.delta && omega < eps) report.right_at_zero.delta = d;
  }
  report.right_ok = report.right_at_zero.delta.has_value();
  return report;
}

/// Smallest k0 <= n_max with H([u_k]_{a-d}, [u_k]_a) < eps for all k0 <= k <= n_max.
template <CutSequence S>
std::optional<std::size_t> eventual_index(const S& seq, double alpha, double eps, std::size_t n_max,
                                          double delta) {
  std::size_t last_bad = 0;
  for (std::size_t k = 1; k <= n_max; ++k) {
    const double h = hausdorff_interval(seq(k, alpha - delta), seq(k, alpha));
    if (!(h < eps)) last_bad = k;
  }
  if (last_bad >= n_max) return std::nullopt;
  return last_bad + 1;
}

struct EventualWitness {
  std::size_t k0 = 1;
  double delta = 0.0;
};

/// Eventual equi-left-continuity at alpha within the scanned window: the
/// smallest k0 over the tested offsets and, for it, the largest offset.
template <CutSequence S>
std::optional<EventualWitness> eventually_equi_left(const S& seq, double alpha, double eps,
                                                    std::size_t n_max,
                                                    std::span<const double> deltas) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::OutOfRange, "alpha must lie in (0,1]");
  if (!(eps > 0.0)) throw Error(ErrorKind::OutOfRange, "eps must be positive");
  std::vector<double> sorted(deltas.begin(), deltas.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::optional<EventualWitness> best;
  for (double d : sorted) {
    if (!(d > 0.0) || alpha - d < 0.0) continue;
    auto k0 = eventual_index(seq, alpha, eps, n_max, d);
    if (k0 && (!best || *k0 < best->k0)) best = EventualWitness{*k0, d};
  }
  return best;
}

template <Family R>
std::optional<EventualWitness> eventually_equi_left(const R& seq, double alpha, double eps,
                                                    std::size_t n_max,
                                                    std::span<const double> deltas) {
  detail::require_nonempty(seq);
  const auto size = static_cast<std::size_t>(std::ranges::size(seq));
  return eventually_equi_left(detail::as_sequence(seq), alpha, eps, std::min(n_max, size), deltas);
}

// ---------------------------------------------------------------------------
// Condition verdicts

enum class Verdict { pass, fail, not_evaluated };

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_evaluated: return "not evaluated";
  }
  return "unknown";
}

struct SubVerdict {
  std::string name;
  Verdict verdict = Verdict::not_evaluated;
  std::string note;
};

using SubVerdictPtr = std::shared_ptr<const SubVerdict>;

/// One numbered condition of a criterion; parts may be shared across criteria.
struct ConditionVerdict {
  int number = 0;
  std::string name;
  std::vector<SubVerdictPtr> parts;

  Verdict verdict() const {
    bool pending = false;
    for (const auto& p : parts) {
      if (p->verdict == Verdict::fail) return Verdict::fail;
      if (p->verdict == Verdict::not_evaluated) pending = true;
    }
    return pending ? Verdict::not_evaluated : Verdict::pass;
  }
};

struct CriterionVerdicts {
  std::string criterion;
  std::string statement;
  std::vector<ConditionVerdict> conditions;

  const ConditionVerdict& condition(int number) const {
    for (const auto& c : conditions) {
      if (c.number == number) return c;
    }
    throw Error(ErrorKind::OutOfRange, "no condition " + std::to_string(number));
  }
};

inline constexpr std::string_view kLevelCompactness = "level_topology_compactness";
inline constexpr std::string_view kSupremumCriterion = "supremum_metric_criterion_1d";
inline constexpr std::string_view kSupportCriterion = "support_function_criterion";

struct FamilyDiagnostics {
  double support_radius = 0.0;
  bool bounded = true;
  EquiContinuityReport equi;
  std::vector<CriterionVerdicts> condition_verdicts;

  const CriterionVerdicts& criterion(std::string_view name) const {
    for (const auto& c : condition_verdicts) {
      if (c.criterion == name) return c;
    }
    throw Error(ErrorKind::OutOfRange, "no criterion " + std::string(name));
  }
};

struct FamilyReportOptions {
  std::vector<double> alphas = default_family_alphas();
  std::vector<double> deltas = default_delta_grid();
  double eps = 0.1;
};

/// One evaluation of the checkable conditions, emitted for three criteria:
/// compactness in the level topology (closed, support-bounded, equi-left on
/// (0,1] and equi-right at 0), the one-dimensional supremum-metric criterion
/// (support-bounded, closed, endpoint maps equi-left on (0,1]) and its
/// support-function form. Shared conditions point at the same sub-verdict.
template <Family R>
FamilyDiagnostics compactness_conditions_report(const R& family,
                                                const FamilyReportOptions& opts = {}) {
  detail::require_nonempty(family);
  FamilyDiagnostics diag;
  const SupportBound sb = support_bound(family);
  diag.support_radius = sb.radius;
  diag.bounded = sb.bounded;
  diag.equi = equi_continuity_report(family, opts.alphas, opts.deltas, opts.eps);

  auto closed = std::make_shared<const SubVerdict>(SubVerdict{
      "closed", Verdict::not_evaluated,
      "not evaluated: closedness cannot be decided from a finite sample; supplied by caller "
      "assertion"});
  auto bounded = std::make_shared<const SubVerdict>(SubVerdict{
      "uniformly_support_bounded", sb.bounded ? Verdict::pass : Verdict::fail,
      "radius " + std::to_string(sb.radius)});

  std::string left_note = "witness delta at every tested level";
  if (!diag.equi.left_ok) {
    left_note = std::to_string(diag.equi.failing_alphas().size()) + " tested levels without a witness";
  }
  auto equi_left = std::make_shared<const SubVerdict>(SubVerdict{
      "equi_left_continuous_on_(0,1]", diag.equi.left_ok ? Verdict::pass : Verdict::fail,
      left_note});
  auto equi_right = std::make_shared<const SubVerdict>(SubVerdict{
      "equi_right_continuous_at_0", diag.equi.right_ok ? Verdict::pass : Verdict::fail,
      diag.equi.right_ok ? "witness delta found" : "no tested delta works"});
  auto vacuous_zero = std::make_shared<const SubVerdict>(SubVerdict{
      "left_condition_at_0", Verdict::pass, "vacuous: no levels below 0"});

  diag.condition_verdicts.push_back(CriterionVerdicts{
      std::string(kLevelCompactness),
      "compact (equivalently sequentially compact) in the level topology iff (1)-(3)",
      {{1, "closed", {closed}},
       {2, "uniformly_support_bounded", {bounded}},
       {3, "equi_left_on_(0,1]_and_equi_right_at_0", {equi_left, equi_right}}}});
  diag.condition_verdicts.push_back(CriterionVerdicts{
      std::string(kSupremumCriterion),
      "claimed: compact in the supremum metric iff (1)-(3); false in general",
      {{1, "uniformly_support_bounded", {bounded}},
       {2, "closed", {closed}},
       {3, "endpoint_maps_equi_left_on_(0,1]", {equi_left}}}});
  diag.condition_verdicts.push_back(CriterionVerdicts{
      std::string(kSupportCriterion),
      "claimed: a closed set is compact in the supremum metric iff (1)-(2); false in general",
      {{1, "uniformly_support_bounded", {bounded}},
       {2, "support_functions_equi_left_on_[0,1]_uniformly_in_p", {equi_left, vacuous_zero}}}});
  return diag;
}

/// Uniform samples f(a + (b-a) i/(count-1)), i = 0..count-1.
template <class F>
  requires std::invocable<const F&, double>
auto path_family(const F& f, double a, double b, std::size_t sample_count) {
  if (sample_count < 2) throw Error(ErrorKind::OutOfRange, "need at least two samples");
  using T = std::decay_t<std::invoke_result_t<const F&, double>>;
  std::vector<T> out;
  out.reserve(sample_count);
  const double last = static_cast<double>(sample_count - 1);
  for (std::size_t i = 0; i < sample_count; ++i) {
    const double t = i + 1 == sample_count ? b : a + (b - a) * static_cast<double>(i) / last;
    out.push_back(f(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random families for property tests

struct RandomFamilyShape {
  std::size_t levels = 11;
  bool random_grid = false;     // interior levels drawn at random per member
  double center_spread = 5.0;   // core centers uniform in [-spread, spread]
  double max_step = 1.0;        // endpoint increment per level step, uniform in [0, max_step]
  std::optional<double> jump_level;  // inject a steep ramp ending at this level
  double jump_size = 1.0;
  double jump_width = 1e-9;     // below every default probe offset
};

inline std::vector<SampledFuzzy1D> random_family(std::uint64_t seed, std::size_t count,
                                                 const RandomFamilyShape& shape = {}) {
  if (count < 1) throw Error(ErrorKind::OutOfRange, "count must be at least 1");
  if (shape.levels < 2) throw Error(ErrorKind::BadGrid, "need at least two levels");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> center(-shape.center_spread, shape.center_spread);

  std::vector<SampledFuzzy1D> out;
  out.reserve(count);
  for (std::size_t m = 0; m < count; ++m) {
    std::vector<double> levels{0.0, 1.0};
    if (shape.random_grid) {
      while (levels.size() < shape.levels) {
        const double a = unit(rng);
        if (a > 0.0 && a < 1.0) levels.push_back(a);
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
      }
    } else {
      const AlphaGrid g = AlphaGrid::uniform(shape.levels);
      levels.assign(g.levels().begin(), g.levels().end());
    }
    std::optional<double> jump_below;
    if (shape.jump_level) {
      const double top = *shape.jump_level;
      const double bottom = std::max(0.0, top - shape.jump_width);
      levels.push_back(top);
      levels.push_back(bottom);
      jump_below = bottom;
    }
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    const std::size_t n = levels.size();
    std::vector<double> lo(n);
    std::vector<double> hi(n);
    const double c = center(rng);
    const double half = 0.5 * shape.max_step * unit(rng);
    lo[n - 1] = c - half;
    hi[n - 1] = c + half;
    for (std::size_t i = n - 1; i-- > 0;) {
      lo[i] = lo[i + 1] - shape.max_step * unit(rng);
      hi[i] = hi[i + 1] + shape.max_step * unit(rng);
      if (jump_below && levels[i] == *jump_below && levels[i + 1] == *shape.jump_level) {
        hi[i] += shape.jump_size;
      }
    }
    out.emplace_back(AlphaGrid(std::move(levels)), std::move(lo), std::move(hi));
  }
  return out;
}

}  // namespace fuzzy
