#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fuzzy/counterexample.hpp"
#include "fuzzy/family.hpp"
#include "oracles.hpp"

using namespace fuzzy;
namespace cx = fuzzy::counterexample;

namespace {

// v_n: cuts [0,1] up to 1 - 1/n and {0} above. Each member is a valid
// number; together they are not equi-left-continuous at 1.
CutCurve1D jump_member(long n) {
  const double j = 1.0 - 1.0 / static_cast<double>(n);
  return CutCurve1D([](double) { return 0.0; }, [j](double a) { return a <= j ? 1.0 : 0.0; },
                    {DeclaredJump{j, Interval{0, 0}}});
}

std::vector<CutCurve1D> jump_family(long from, long to) {
  std::vector<CutCurve1D> out;
  for (long n = from; n <= to; ++n) out.push_back(jump_member(n));
  return out;
}

SampledFuzzy1D triangular(double a, double b, double c) { return make_sampled_1d({0, 1}, {a, b}, {c, b}); }

// sup over n of the counterexample left modulus, straight from std::pow.
double brute_modulus(double alpha, double beta, long n_max) {
  double best = 0.0;
  for (long n = 1; n <= n_max; ++n) {
    best = std::max(best, (1.0 - oracle::un_upper(n, alpha)) - (1.0 - oracle::un_upper(n, beta)));
  }
  return best;
}

}  // namespace

TEST(SupportBound, Examples) {
  EXPECT_EQ(support_bound(std::vector{triangular(0, 0, 0)}).radius, 0.0);
  EXPECT_EQ(support_bound(cx::make_sequence(50)).radius, 1.0);
  EXPECT_EQ(support_bound(std::vector{triangular(-3, 0, 2)}).radius, 3.0);
  EXPECT_TRUE(support_bound(std::vector{triangular(-3, 0, 2)}).bounded);
  EXPECT_THROW(support_bound(std::vector<SampledFuzzy1D>{}), Error);
}

TEST(LeftModulus, CounterexampleValue) {
  const auto fam = cx::make_sequence(10000);
  const double m = left_modulus(fam, 0.8, 0.05);
  const double brute = brute_modulus(0.8, 0.75, 10000);
  EXPECT_NEAR(brute, 0.7 - 0.625, 1e-15);
  EXPECT_NEAR(m, brute, 1e-15);
  EXPECT_NEAR(m, 0.075, 1e-15);
  // The published bound at this point is 0.05 / (3 * 0.75 / 2 - 1/2) = 0.08.
  EXPECT_NEAR(cx::dgn_bound(0.8, 0.05, 0.75), 0.08, 1e-15);
  EXPECT_LE(m, cx::dgn_bound(0.8, 0.05, 0.75));
}

TEST(LeftModulus, TendsToZeroAtContinuityPoints) {
  const auto fam = random_family(3, 20);
  double prev = INFINITY;
  for (int k = 2; k <= 30; ++k) {
    const double m = left_modulus(fam, 0.55, std::ldexp(1.0, -k));
    EXPECT_LE(m, prev);
    prev = m;
  }
  EXPECT_LT(prev, 1e-7);
  EXPECT_THROW(left_modulus(fam, 0.1, 0.2), Error);
  EXPECT_THROW(left_modulus(fam, 0.1, 0.0), Error);
}

TEST(RightModulus, Examples) {
  EXPECT_EQ(right_modulus_at_zero(cx::make_sequence(100), 0.25), 0.0);
  EXPECT_EQ(right_modulus_at_zero(std::vector{triangular(2, 2, 2)}, 0.5), 0.0);
  const std::vector<CutCurve1D> v{jump_member(1)};
  for (int k = 1; k <= 20; ++k) EXPECT_EQ(right_modulus_at_zero(v, std::ldexp(1.0, -k)), 1.0);
  EXPECT_THROW(right_modulus_at_zero(v, 1.5), Error);
}

TEST(EquiReport, ContinuousSingleton) {
  const std::vector fam{triangular(-1, 0, 1)};
  const auto alphas = default_family_alphas();
  const auto deltas = default_delta_grid();
  const auto r = equi_continuity_report(fam, alphas, deltas, 0.1);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.failing_alphas().empty());
  for (const auto& w : r.left) {
    ASSERT_TRUE(w.delta.has_value());
    EXPECT_LT(left_modulus(fam, w.alpha, *w.delta), 0.1);
  }
}

TEST(EquiReport, CounterexampleAtPointEight) {
  const auto fam = cx::make_sequence(100);
  const std::vector<double> alphas{0.8};
  const auto deltas = default_delta_grid();
  const auto r = equi_continuity_report(fam, alphas, deltas, 0.1);
  ASSERT_EQ(r.left.size(), 1u);
  ASSERT_TRUE(r.left[0].delta.has_value());
  const double d = *r.left[0].delta;
  // n = 1 dominates: 1.5 d < 0.1 first holds at d = 1/16 on the dyadic grid.
  EXPECT_EQ(d, 0.0625);
  EXPECT_LE(brute_modulus(0.8, 0.8 - d, 100), cx::dgn_bound(0.8, d, 0.8 - d));
  EXPECT_TRUE(r.ok());
}

TEST(EquiReport, JumpFamilyHasNoWitnessNearOne) {
  const auto fam = jump_family(2, 1100);
  const std::vector<double> alphas{1.0};
  const auto deltas = default_delta_grid(2, 10);
  const auto r = equi_continuity_report(fam, alphas, deltas, 0.5);
  ASSERT_EQ(r.left.size(), 1u);
  EXPECT_FALSE(r.left[0].delta.has_value());
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.failing_alphas(), std::vector<double>{1.0});
  for (const auto& s : r.left[0].moduli) EXPECT_EQ(s.omega, 1.0);
}

TEST(Eventual, ConstantSequence) {
  const std::vector<SampledFuzzy1D> seq(10, triangular(0, 1, 2));
  const auto deltas = default_delta_grid();
  const auto w = eventually_equi_left(seq, 0.5, 1e-3, 10, deltas);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->k0, 1u);
  // Modulus is exactly delta here, so the largest delta below 1e-3 wins.
  EXPECT_EQ(w->delta, std::ldexp(1.0, -10));
}

TEST(Eventual, CounterexampleAtPointEight) {
  const std::vector<double> deltas{0.05};
  long expected = 0;
  for (long k = 1; k <= 10000; ++k) {
    const double h = oracle::un_upper(k, 0.75) - oracle::un_upper(k, 0.8);
    if (!(h < 0.01)) expected = k;
  }
  ++expected;
  EXPECT_LE(expected, 100);
  auto seq = [](std::size_t n, double a) { return alpha_cut(cx::make_un(static_cast<long>(n)), a); };
  const auto w = eventually_equi_left(seq, 0.8, 0.01, 10000, deltas);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->k0, static_cast<std::size_t>(expected));
  EXPECT_EQ(w->delta, 0.05);
}

TEST(Eventual, JumpFamilyNotFound) {
  const auto fam = jump_family(1, 2048);
  const auto deltas = default_delta_grid(2, 10);
  EXPECT_FALSE(eventually_equi_left(fam, 1.0, 0.5, 2048, deltas).has_value());
  EXPECT_THROW(eventually_equi_left(fam, 0.0, 0.5, 10, deltas), Error);
}

TEST(Conditions, CounterexampleFamily) {
  const auto diag = compactness_conditions_report(cx::make_sequence(100));
  EXPECT_EQ(diag.support_radius, 1.0);
  EXPECT_TRUE(diag.bounded);
  EXPECT_TRUE(diag.equi.left_ok);
  EXPECT_TRUE(diag.equi.right_ok);
  const auto& sup = diag.criterion(kSupremumCriterion);
  EXPECT_EQ(sup.condition(1).verdict(), Verdict::pass);
  EXPECT_EQ(sup.condition(2).verdict(), Verdict::not_evaluated);
  EXPECT_EQ(sup.condition(3).verdict(), Verdict::pass);
  EXPECT_EQ(diag.criterion(kSupportCriterion).condition(2).verdict(), Verdict::pass);
  EXPECT_NE(sup.condition(2).parts[0]->note.find("not evaluated"), std::string::npos);
}

TEST(Conditions, JumpFamilyFailsAtOne) {
  FamilyReportOptions opts;
  opts.deltas = default_delta_grid(2, 10);
  opts.eps = 0.5;
  const auto diag = compactness_conditions_report(jump_family(2, 1100), opts);
  EXPECT_FALSE(diag.equi.left_ok);
  const auto failing = diag.equi.failing_alphas();
  EXPECT_NE(std::find(failing.begin(), failing.end(), 1.0), failing.end());
  EXPECT_EQ(diag.criterion(kLevelCompactness).condition(3).verdict(), Verdict::fail);
  EXPECT_EQ(diag.criterion(kSupremumCriterion).condition(3).verdict(), Verdict::fail);
}

TEST(Conditions, SingletonAllPass) {
  const auto diag = compactness_conditions_report(std::vector{triangular(0, 1, 2)});
  for (const auto& crit : diag.condition_verdicts) {
    for (const auto& c : crit.conditions) {
      EXPECT_NE(c.verdict(), Verdict::fail) << crit.criterion << " " << c.number;
    }
  }
  EXPECT_THROW(compactness_conditions_report(std::vector<SampledFuzzy1D>{}), Error);
}

TEST(Conditions, SharedSubVerdictsAreOneObject) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomFamilyShape shape;
    if (seed % 2) shape.jump_level = 0.5;
    const auto diag = compactness_conditions_report(random_family(seed, 8, shape));
    const auto& lvl = diag.criterion(kLevelCompactness);
    const auto& sup = diag.criterion(kSupremumCriterion);
    EXPECT_EQ(lvl.condition(2).parts[0].get(), sup.condition(1).parts[0].get());
    EXPECT_EQ(lvl.condition(1).parts[0].get(), sup.condition(2).parts[0].get());
    EXPECT_EQ(lvl.condition(3).parts[0].get(), sup.condition(3).parts[0].get());
  }
}

TEST(PathFamily, Constant) {
  const auto u = triangular(0, 0.5, 1);
  const auto fam = path_family([&](double) { return u; }, 0.0, 1.0, 10);
  ASSERT_EQ(fam.size(), 10u);
  for (const auto& v : fam) EXPECT_EQ(d_infty_sampled(u, v), 0.0);
  EXPECT_TRUE(compactness_conditions_report(fam).equi.ok());
  EXPECT_THROW(path_family([&](double) { return u; }, 0.0, 1.0, 1), Error);
}

TEST(PathFamily, MovingPeak) {
  const auto fam = path_family([](double t) { return triangular(0, t, 1); }, 0.2, 0.8, 50);
  EXPECT_EQ(alpha_cut(fam.front(), 1.0).lo, 0.2);
  EXPECT_EQ(alpha_cut(fam.back(), 1.0).lo, 0.8);
  // Brute force: each member's modulus is max(t, 1 - t) * delta.
  for (double d : {0.25, 0.01, 1e-4}) {
    double brute = 0.0;
    for (const auto& u : fam) {
      const double t = alpha_cut(u, 1.0).lo;
      brute = std::max(brute, std::max(t, 1.0 - t) * d);
    }
    EXPECT_NEAR(left_modulus(fam, 0.6, d), brute, 1e-15);
  }
  EXPECT_TRUE(compactness_conditions_report(fam).equi.ok());
}

TEST(PathFamily, CounterexampleIndexPath) {
  // t -> u_ceil(1/t) jumps in d_inf but its samples pass the level-wise checks.
  const auto fam = path_family(
      [](double t) { return cx::make_un(static_cast<long>(std::ceil(1.0 / t))); }, 0.01, 1.0, 100);
  EXPECT_TRUE(compactness_conditions_report(fam).equi.ok());
  EXPECT_TRUE(d_infty_parametric(fam.back(), fam[fam.size() - 2]).enclosure.lower > 0.2);
}

TEST(RandomFamily, ValidAndDeterministic) {
  EXPECT_TRUE(validate_representation(random_family(42, 1)[0]).ok());
  const auto a = random_family(42, 25);
  const auto b = random_family(42, 25);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].grid(), b[i].grid());
    EXPECT_EQ(d_infty_sampled(a[i], b[i]), 0.0);
  }
  EXPECT_GT(d_infty_sampled(random_family(43, 1)[0], a[0]), 0.0);
}

TEST(RandomFamily, JumpInjection) {
  RandomFamilyShape shape;
  shape.jump_level = 0.5;
  const auto fam = random_family(9, 100, shape);
  const auto alphas = default_family_alphas();
  const auto deltas = default_delta_grid();
  const auto r = equi_continuity_report(fam, alphas, deltas, 0.1);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.failing_alphas(), std::vector<double>{0.5});
}

TEST(Properties, ModulusMonotoneInDelta) {
  const auto fam = random_family(17, 30);
  const auto r = equi_continuity_report(fam, default_family_alphas(), default_delta_grid(), 0.05);
  for (const auto& w : r.left) {
    for (std::size_t i = 1; i < w.moduli.size(); ++i) {
      EXPECT_LT(w.moduli[i].delta, w.moduli[i - 1].delta);
      EXPECT_LE(w.moduli[i].omega, w.moduli[i - 1].omega);
    }
  }
}

TEST(Properties, SubfamilyMonotone) {
  const auto a = random_family(5, 12);
  const auto b = random_family(6, 12);
  auto both = a;
  both.insert(both.end(), b.begin(), b.end());
  EXPECT_GE(support_bound(both).radius, support_bound(a).radius);
  EXPECT_GE(support_bound(both).radius, support_bound(b).radius);
  for (double alpha : {0.1, 0.5, 0.93, 1.0}) {
    for (double d : {0.1, 0.01, 0.001}) {
      EXPECT_GE(left_modulus(both, alpha, d), left_modulus(a, alpha, d));
      EXPECT_GE(left_modulus(both, alpha, d), left_modulus(b, alpha, d));
    }
  }
  EXPECT_GE(right_modulus_at_zero(both, 0.1), right_modulus_at_zero(a, 0.1));
}

TEST(Properties, EventualFollowsUniform) {
  const auto deltas = default_delta_grid();
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto fam = random_family(seed, 15);
    const auto r = equi_continuity_report(fam, default_family_alphas(21), deltas, 0.2);
    for (const auto& w : r.left) {
      if (!w.delta) continue;
      const auto e = eventually_equi_left(fam, w.alpha, 0.2, fam.size(), deltas);
      ASSERT_TRUE(e.has_value());
      EXPECT_EQ(e->k0, 1u);
      EXPECT_EQ(e->delta, *w.delta);
    }
  }
}

TEST(Properties, PublishedBoundOnCounterexample) {
  // Literal bound holds while alpha - delta <= 7/9; the corrected one (x 3/2) always does.
  for (double a : {0.5, 0.7, 0.77, 0.9, 1.0}) {
    for (int k = 2; k <= 20; ++k) {
      const double d = std::ldexp(1.0, -k);
      if (!(a - d > 1.0 / 3.0)) continue;
      const double m = brute_modulus(a, a - d, 2000);
      EXPECT_LE(m, cx::dgn_bound_corrected(a, d, a - d) + 1e-12);
      if (a - d <= 7.0 / 9.0) {
        EXPECT_LE(m, cx::dgn_bound(a, d, a - d) + 1e-12) << a << " " << d;
      }
    }
  }
  EXPECT_GT(brute_modulus(0.9, 0.85, 10), cx::dgn_bound(0.9, 0.05, 0.85));
}
