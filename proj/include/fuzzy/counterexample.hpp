#pragma once

// The counterexample sequence u_n on the real line and its level limit u.
//
//   [u_n]_a = [0, 1 - (3a/2 - 1/2)^(1/n)]  for 1/3 < a <= 1
//   [u_n]_a = [0, 1]                       for 0 <= a <= 1/3
//   [u]_a   = {0} for a > 1/3,  [0, 1] for a <= 1/3
//
// u_n -> u level-wise at every a, yet d_inf(u_n, u) = 1 for every n (a
// supremum approached as a -> 1/3 from above, never attained). The set
// {u_n} is uniformly support-bounded, its cut maps are equi-left-continuous
// on (0,1], and it is closed in the supremum metric, yet it is not compact
// there. This refutes the published supremum-metric compactness criterion.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fuzzy/core.hpp"
#include "fuzzy/family.hpp"
#include "fuzzy/metrics.hpp"

namespace fuzzy::counterexample {

inline constexpr double kThird = 1.0 / 3.0;

/// (3a/2 - 1/2)^(1/n) as exp(ln(.)/n); the a <= 1/3 branch never reaches the log.
inline double root_term(double alpha, long n) {
  if (alpha <= kThird) return 0.0;
  const double t = 0.5 * (3.0 * alpha - 1.0);
  if (t <= 0.0) return 0.0;
  if (n == 1) return t;
  return std::exp(std::log(t) / static_cast<double>(n));
}

inline CutCurve1D make_un(long n) {
  if (n < 1) throw Error(ErrorKind::BadIndex, "sequence index must be at least 1");
  return CutCurve1D([](double) { return 0.0; },
                    [n](double a) { return a <= kThird ? 1.0 : 1.0 - root_term(a, n); }, {},
                    CurveTag{"counterexample-un", n});
}

inline CutCurve1D make_limit() {
  return CutCurve1D([](double) { return 0.0; }, [](double a) { return a <= kThird ? 1.0 : 0.0; },
                    {DeclaredJump{kThird, Interval{0.0, 0.0}}}, CurveTag{"counterexample-limit", 0});
}

/// H([u]_a, [u_n]_a) in closed form.
inline double exact_H_profile(long n, double alpha) {
  if (n < 1) throw Error(ErrorKind::BadIndex, "sequence index must be at least 1");
  check_level(alpha);
  if (alpha <= kThird) return 0.0;
  return 1.0 - root_term(alpha, n);
}

struct SupremumValue {
  double value = 0.0;
  bool attained = false;
};

/// d_inf(u_n, u) = 1: H = 0 on [0, 1/3] and H < 1 on (1/3, 1], tending to 1 as a -> 1/3+.
inline SupremumValue exact_dinf_to_limit(long n) {
  if (n < 1) throw Error(ErrorKind::BadIndex, "sequence index must be at least 1");
  return {1.0, false};
}

/// Published uniform-in-n bound on H([u_n]_a, [u_n]_b) for b in [a - d, a]:
/// (3(a-d)/2 - 1/2)^-1 (a - b).
///
/// As printed it lacks the factor 3/2 of d/da (3a/2 - 1/2); at n = 1 the
/// left side is exactly 1.5 (a - b), so it fails once a - d > 7/9.
/// dgn_bound_corrected carries the factor.
inline double dgn_bound(double alpha, double delta, double beta) {
  check_level(alpha);
  if (!(alpha - delta > kThird)) throw Error(ErrorKind::OutOfRange, "bound needs alpha - delta > 1/3");
  if (beta < alpha - delta || beta > alpha) {
    throw Error(ErrorKind::OutOfRange, "beta must lie in [alpha - delta, alpha]");
  }
  return (alpha - beta) / (1.5 * (alpha - delta) - 0.5);
}

inline double dgn_bound_corrected(double alpha, double delta, double beta) {
  return 1.5 * dgn_bound(alpha, delta, beta);
}

struct ModulusOracle {
  double value = 0.0;
  long argmax = 1;
  long scanned = 0;
};

/// sup_n [(3a/2 - 1/2)^(1/n) - (3b/2 - 1/2)^(1/n)] by brute force over n.
/// The scan runs to max(n_max, 10 * argmax) so the reported max is stable.
inline ModulusOracle family_modulus_oracle(double alpha, double beta, long n_max) {
  if (!(kThird < beta && beta <= alpha && alpha <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "oracle needs 1/3 < beta <= alpha <= 1");
  }
  if (n_max < 1) throw Error(ErrorKind::BadIndex, "n_max must be at least 1");
  const double ta = 1.5 * alpha - 0.5;
  const double tb = 1.5 * beta - 0.5;
  ModulusOracle out{0.0, 1, 0};
  for (long n = 1; n <= std::max(n_max, 10 * out.argmax); ++n) {
    const double e = 1.0 / static_cast<double>(n);
    const double term = std::pow(ta, e) - std::pow(tb, e);
    if (term > out.value) {
      out.value = term;
      out.argmax = n;
    }
    out.scanned = n;
  }
  return out;
}

struct PairwiseOracle {
  double value = 0.0;
  double alpha = 0.0;  // where the grid maximum sits (may round to 1/3 for tiny offsets)
  double log_offset = 0.0;  // s = -ln(3a/2 - 1/2) at the maximum
};

/// Dense grid lower bound on d_inf(u_n, u_m) = sup_a |t^(1/n) - t^(1/m)|,
/// t = 3a/2 - 1/2. The grid is uniform in s = -ln t on [0, 50 max(n, m)] so
/// the tiny offsets above 1/3 where large-index maxima live stay resolvable.
inline PairwiseOracle pairwise_dinf_oracle(long n, long m, std::size_t grid_size = 20000) {
  if (n < 1 || m < 1) throw Error(ErrorKind::BadIndex, "sequence index must be at least 1");
  if (n == m) throw Error(ErrorKind::BadIndex, "pairwise oracle needs distinct indices");
  if (grid_size < 2) throw Error(ErrorKind::OutOfRange, "grid needs at least two points");
  const double s_max = 50.0 * static_cast<double>(std::max(n, m));
  PairwiseOracle out;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double s = s_max * static_cast<double>(i) / static_cast<double>(grid_size - 1);
    const double v = std::abs(std::exp(-s / static_cast<double>(n)) - std::exp(-s / static_cast<double>(m)));
    if (v > out.value) {
      out.value = v;
      out.log_offset = s;
    }
  }
  out.alpha = (2.0 * std::exp(-out.log_offset) + 1.0) / 3.0;
  return out;
}

// ---------------------------------------------------------------------------
// Refutation report

struct RefutationOptions {
  double family_eps = 0.1;             // equi-continuity tolerance for the finite family
  double convergence_eps = 1e-3;       // level-convergence tolerance
  std::size_t convergence_window = 100000;  // closed-form scan length per level
  double tol = 1e-9;                   // d_inf enclosure width
  int max_depth = 60;
  std::size_t pairwise_grid = 20000;
  double non_cauchy_threshold = 0.5;
};

struct BoundCheck {
  double alpha = 0.0;
  double delta = 0.0;
  double oracle = 0.0;
  long argmax = 1;
  double literal_bound = 0.0;
  double corrected_bound = 0.0;
};

struct ProfileCrossCheck {
  long n = 0;
  double generic = 0.0;
  double closed_form = 0.0;
};

struct DistanceRow {
  long n = 0;
  double exact = 0.0;
  bool exact_attained = false;
  Enclosure enclosure;
};

struct NonCauchyWitness {
  long n = 0;
  long m = 0;
  double value = 0.0;
};

struct RefutationReport {
  std::size_t n_max = 0;
  RefutationOptions options;

  // (a) support-boundedness and equi-left-continuity
  FamilyDiagnostics family;
  std::vector<BoundCheck> bound_checks;
  bool constant_branch_zero = true;  // H = 0 on [0, 1/3]
  bool corrected_bound_holds = true;
  std::size_t literal_bound_violations = 0;
  bool conditions_verified = false;

  // (b) level convergence
  ConvergenceReport convergence;
  std::vector<ProfileCrossCheck> cross_check;  // at a = 2/3
  double cross_check_alpha = 2.0 / 3.0;
  bool cross_check_agrees = false;
  bool level_convergence_verified = false;

  // (c) distance to the level limit and closedness
  std::vector<DistanceRow> distances;
  bool distance_verified = false;
  std::vector<NonCauchyWitness> non_cauchy;
  bool non_cauchy_verified = false;
  std::string closedness_argument;

  // (d)
  bool contradiction = false;
  std::string conclusion;

  bool all_green() const {
    return conditions_verified && level_convergence_verified && cross_check_agrees &&
           distance_verified && non_cauchy_verified && contradiction;
  }
};

inline std::vector<CutCurve1D> make_sequence(std::size_t n_max) {
  std::vector<CutCurve1D> out;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out.push_back(make_un(static_cast<long>(n)));
  return out;
}

inline RefutationReport refutation_report(std::size_t n_max, const RefutationOptions& opts = {}) {
  if (n_max < 2) throw Error(ErrorKind::OutOfRange, "n_max must be at least 2");
  RefutationReport r;
  r.n_max = n_max;
  r.options = opts;
  const long nm = static_cast<long>(n_max);
  const auto members = make_sequence(n_max);
  const CutCurve1D limit = make_limit();

  // (a)
  FamilyReportOptions fopts;
  fopts.alphas = default_family_alphas(101, true);
  fopts.eps = opts.family_eps;
  r.family = compactness_conditions_report(members, fopts);
  const auto& claimed = r.family.criterion(kSupremumCriterion);
  const bool finite_ok = claimed.condition(1).verdict() == Verdict::pass &&
                         claimed.condition(3).verdict() == Verdict::pass &&
                         r.family.support_radius == 1.0;

  for (double a : fopts.alphas) {
    if (a <= kThird) {
      for (double d : fopts.deltas) {
        if (a - d < 0.0) continue;
        for (long n = 1; n <= nm; ++n) {
          if (exact_H_profile(n, a) != 0.0 ||
              hausdorff_interval(alpha_cut(members[n - 1], a), alpha_cut(members[n - 1], a - d)) != 0.0) {
            r.constant_branch_zero = false;
          }
        }
      }
      continue;
    }
    for (double d : fopts.deltas) {
      if (!(a - d > kThird)) continue;
      BoundCheck b;
      b.alpha = a;
      b.delta = d;
      const auto o = family_modulus_oracle(a, a - d, nm);
      b.oracle = o.value;
      b.argmax = o.argmax;
      b.literal_bound = dgn_bound(a, d, a - d);
      b.corrected_bound = dgn_bound_corrected(a, d, a - d);
      if (b.oracle > b.corrected_bound + 1e-12) r.corrected_bound_holds = false;
      if (b.oracle > b.literal_bound + 1e-12) ++r.literal_bound_violations;
      r.bound_checks.push_back(b);
    }
  }
  r.conditions_verified = finite_ok && r.constant_branch_zero && r.corrected_bound_holds;

  // (b)
  const AlphaGrid grid = report_grid(101, true);
  auto closed_form_cut = [](std::size_t n, double a) {
    return Interval{0.0, a <= kThird ? 1.0 : 1.0 - root_term(a, static_cast<long>(n))};
  };
  r.convergence = level_convergence_report(closed_form_cut, limit, grid, opts.convergence_eps,
                                           opts.convergence_window, 16);
  r.level_convergence_verified = r.convergence.converged;

  r.cross_check_agrees = true;
  for (long n = 1; n <= nm; ++n) {
    const auto profile = level_distance_profile(
        members[n - 1], limit, AlphaGrid({0.0, r.cross_check_alpha, 1.0}));
    ProfileCrossCheck row{n, profile[1].h, exact_H_profile(n, r.cross_check_alpha)};
    if (row.generic != row.closed_form) r.cross_check_agrees = false;
    r.cross_check.push_back(row);
  }

  // (c)
  r.distance_verified = true;
  for (long n = 1; n <= nm; ++n) {
    const auto exact = exact_dinf_to_limit(n);
    const auto sup = d_infty_parametric(members[n - 1], limit, opts.tol, opts.max_depth);
    DistanceRow row{n, exact.value, exact.attained, sup.enclosure};
    if (exact.value != 1.0 || exact.attained || !sup.enclosure.contains(exact.value) ||
        sup.enclosure.width() > opts.tol || sup.enclosure.attained) {
      r.distance_verified = false;
    }
    r.distances.push_back(row);
  }

  r.non_cauchy_verified = true;
  for (long n = 1; n <= nm; ++n) {
    NonCauchyWitness best{n, 0, 0.0};
    for (long m = 2 * n; m <= 100 * n; m *= 2) {
      const auto o = pairwise_dinf_oracle(n, m, opts.pairwise_grid);
      if (o.value > best.value) best = {n, m, o.value};
      if (o.value > opts.non_cauchy_threshold) break;
    }
    if (!(best.value > opts.non_cauchy_threshold)) r.non_cauchy_verified = false;
    r.non_cauchy.push_back(best);
  }
  r.closedness_argument =
      "Analytic, corroborated numerically. Supremum convergence implies level convergence, so "
      "a subsequence converging in d_inf would have to converge to the level limit u. But "
      "d_inf(u_n, u) = 1 for every n, so no subsequence converges in d_inf, and no point other "
      "than the members themselves is a limit point: the set is closed in (E^1, d_inf). The "
      "pairwise table shows every u_n lies at distance > 0.5 from some later member, so the "
      "sequence is not Cauchy either.";

  // (d)
  r.contradiction = r.conditions_verified && r.level_convergence_verified && r.distance_verified &&
                    r.non_cauchy_verified;
  r.conclusion = r.contradiction
                     ? "{u_n} is uniformly support-bounded, closed in d_inf, and its endpoint maps "
                       "are equi-left-continuous on (0,1]; all conditions of the supremum-metric "
                       "compactness criterion hold. Yet the sequence has no d_inf-convergent "
                       "subsequence, so the set is not compact in (E^1, d_inf). The criterion is "
                       "false."
                     : "evidence incomplete: see failing sections";
  return r;
}

}  // namespace fuzzy::counterexample
