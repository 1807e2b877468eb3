// Acceptance gate: one PASS/FAIL line per criterion, extra detail indented
// beneath it. Exit status is the number of failed criteria.
//
// usage: acceptance [path-to-fuzzycut-binary]

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzy/fuzzy.hpp"
#include "oracles.hpp"

using namespace fuzzy;
namespace cx = fuzzy::counterexample;

namespace {

struct Outcome {
  bool pass = false;
  std::vector<std::string> notes;
};

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void report(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o = body();
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (budget_s > 0 && secs > budget_s) {
    o.pass = false;
    o.notes.push_back(fmt("runtime %.3f s exceeds budget %.0f s", secs, budget_s));
  }
  if (!o.pass) ++failures;
  std::printf("[%s] criterion %d: %s (%.3f s)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs);
  for (const auto& n : o.notes) std::printf("        %s\n", n.c_str());
  std::fflush(stdout);
}

Outcome criterion1() {
  Outcome o{true, {}};
  const auto limit = cx::make_limit();
  double widest = 0.0;
  std::size_t evals = 0;
  for (long n = 1; n <= 100; ++n) {
    const auto exact = cx::exact_dinf_to_limit(n);
    const auto sup = d_infty_parametric(cx::make_un(n), limit, 1e-9);
    widest = std::max(widest, sup.enclosure.width());
    evals += sup.evaluations;
    const bool ok = exact.value == 1.0 && !exact.attained && sup.enclosure.contains(1.0) &&
                    sup.enclosure.width() <= 1e-9 && !sup.enclosure.attained;
    if (!ok) {
      o.pass = false;
      o.notes.push_back(fmt("n=%ld: exact=%.17g attained=%d enclosure=[%.17g, %.17g] attained=%d", n,
                            exact.value, exact.attained, sup.enclosure.lower, sup.enclosure.upper,
                            sup.enclosure.attained));
    }
  }
  o.notes.push_back(fmt("n=1..100: exact value 1 (not attained); widest enclosure %.3g; %zu evaluations", widest,
                        evals));
  return o;
}

Outcome criterion2() {
  Outcome o{true, {}};
  const AlphaGrid grid = report_grid(101, true);
  auto seq = [](std::size_t n, double a) {
    return Interval{0.0, a <= cx::kThird ? 1.0 : 1.0 - cx::root_term(a, static_cast<long>(n))};
  };
  const auto rep = level_convergence_report(seq, cx::make_limit(), grid, 1e-3, 100000, 1);
  if (!rep.converged) {
    o.pass = false;
    o.notes.push_back(fmt("%zu levels without a finite N", rep.failing_alphas.size()));
  }
  // N must grow as the level approaches 1/3 from above.
  std::size_t prev = 0;
  for (int k = 2; k <= 6; ++k) {
    const double a = cx::kThird + std::pow(10.0, -k);
    const auto idx = grid.find(a);
    const auto& e = rep.entries[*idx];
    if (!e.first_index || *e.first_index <= prev) o.pass = false;
    prev = e.first_index.value_or(0);
    o.notes.push_back(fmt("a = 1/3 + 1e-%d: N = %zu", k, prev));
  }
  const auto spot = level_convergence_report(seq, cx::make_limit(), AlphaGrid({0.0, 2.0 / 3.0, 1.0}), 0.1, 1000);
  const auto n7 = spot.entries[1].first_index;
  if (n7 != 7u) o.pass = false;
  o.notes.push_back(fmt("a = 2/3, eps = 0.1: N = %zu (expected 7; H_6 = %.6f, H_7 = %.6f)", n7.value_or(0),
                        cx::exact_H_profile(6, 2.0 / 3.0), cx::exact_H_profile(7, 2.0 / 3.0)));
  o.notes.push_back(fmt("%zu levels, window 1e5 closed-form evaluations per level", grid.size()));
  return o;
}

Outcome criterion3() {
  Outcome o{true, {}};
  std::size_t nodes = 0;
  std::size_t violations = 0;
  std::size_t corrected_violations = 0;
  double worst = -INFINITY;
  double worst_a = 0.0;
  double worst_d = 0.0;
  double min_violating_base = INFINITY;
  double max_clean_base = -INFINITY;
  for (int i = 1; i <= 50; ++i) {
    const double a = cx::kThird + (1.0 - cx::kThird) * i / 50.0;
    for (int k = 2; k <= 20; ++k) {
      const double d = std::ldexp(1.0, -k);
      if (!(a - d > cx::kThird)) continue;
      ++nodes;
      const double m = cx::family_modulus_oracle(a, a - d, 1000).value;
      const double bound = cx::dgn_bound(a, d, a - d);
      const double excess = m - bound;
      if (excess > worst) {
        worst = excess;
        worst_a = a;
        worst_d = d;
      }
      if (excess > 1e-12) {
        ++violations;
        min_violating_base = std::min(min_violating_base, a - d);
      } else {
        max_clean_base = std::max(max_clean_base, a - d);
      }
      if (m > cx::dgn_bound_corrected(a, d, a - d) + 1e-12) ++corrected_violations;
    }
  }
  o.pass = violations == 0;
  o.notes.push_back(fmt("%zu admissible lattice nodes (50 levels x 19 offsets, a - d > 1/3); %zu violate the bound",
                        nodes, violations));
  o.notes.push_back(fmt("worst excess %.6g at a=%.6f, d=%.3g (oracle at n=1 is exactly 1.5 d)", worst, worst_a,
                        worst_d));
  if (violations) {
    o.notes.push_back(fmt("violations need a - d > 7/9 = %.6f; smallest violating a - d = %.6f", 7.0 / 9.0,
                          min_violating_base));
    o.notes.push_back(
        "the printed bound omits the factor 3/2 from d/da (3a/2 - 1/2); with it restored the bound holds at");
    o.notes.push_back(fmt("every node (%zu corrected-bound violations). Equi-left-continuity is unaffected.",
                          corrected_violations));
  }
  return o;
}

Outcome criterion4() {
  Outcome o{true, {}};
  const auto limit = cx::make_limit();
  const AlphaGrid probes = AlphaGrid::uniform(10000);
  double worst = 0.0;
  for (long n = 1; n <= 100; ++n) {
    for (const auto& p : level_distance_profile(cx::make_un(n), limit, probes)) {
      worst = std::max(worst, std::abs(p.h - cx::exact_H_profile(n, p.alpha)));
    }
  }
  o.pass = worst <= 1e-12;
  o.notes.push_back(fmt("10^4 probes x n=1..100: max |closed form - generic| = %.3g", worst));
  return o;
}

Outcome criterion5(const std::string& binary) {
  Outcome o{true, {}};
  if (binary.empty() || !std::filesystem::exists(binary)) {
    o.pass = false;
    o.notes.push_back("fuzzycut binary not found; pass its path as the first argument");
    return o;
  }
  const auto out = std::filesystem::temp_directory_path() / "fuzzycut_acceptance_report.json";
  const std::string cmd = "'" + binary + "' counterexample --n-max 100 --strict --out '" + out.string() + "'";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.notes.push_back(fmt("`fuzzycut counterexample --n-max 100 --strict` exit status %d", code));
  if (code != 0) {
    o.pass = false;
    return o;
  }
  std::ifstream f(out);
  const auto doc = io::Json::parse(f);
  std::filesystem::remove(out);
  const auto& r = doc.at("result");
  const bool a = r.at("a").at("verified") == true && r.at("a").at("condition_1_support_bounded") == "pass" &&
                 r.at("a").at("condition_3_equi_left") == "pass";
  const bool b = r.at("b").at("verified") == true;
  const bool c = r.at("c").at("verified") == true && r.at("c").at("d_inf_to_limit") == 1.0 &&
                 r.at("c").at("attained") == false;
  const bool d = r.at("d").at("contradiction") == true && r.at("d").at("compact_in_d_inf") == false;
  o.pass = a && b && c && d && r.at("all_checks_pass") == true;
  o.notes.push_back(fmt("(a) conditions 1,3 verified: %d  (b) level convergence: %d  (c) d_inf = 1: %d  (d) not compact: %d",
                        a, b, c, d));
  return o;
}

Outcome criterion6() {
  Outcome o{true, {}};
  RandomFamilyShape shape;
  shape.random_grid = true;
  const auto fam = random_family(2024, 1000, shape);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> pick(0, fam.size() - 1);
  std::size_t asym = 0;
  std::size_t tri = 0;
  double worst = -INFINITY;
  for (int k = 0; k < 10000; ++k) {
    const auto& u = fam[pick(rng)];
    const auto& v = fam[pick(rng)];
    const auto& w = fam[pick(rng)];
    const double uv = d_infty_sampled(u, v);
    if (uv != d_infty_sampled(v, u)) ++asym;
    const double gap = uv - (d_infty_sampled(u, w) + d_infty_sampled(w, v));
    worst = std::max(worst, gap);
    if (gap > 1e-12) ++tri;
  }
  o.pass = asym == 0 && tri == 0;
  o.notes.push_back(fmt("10^4 triples (random grids): %zu asymmetric, %zu triangle violations; max d(u,v) - d(u,w) - d(w,v) = %.3g",
                        asym, tri, worst));
  return o;
}

Outcome criterion7() {
  Outcome o{true, {}};
  const AlphaGrid grid = AlphaGrid::uniform(101);
  const auto u5 = sample(cx::make_un(5), grid);
  const auto lim = sample(cx::make_limit(), grid);
  const auto naive = d_infty_sampled_at(u5, lim);
  const auto sup = d_infty_parametric(cx::make_un(5), cx::make_limit(), 1e-9);
  const bool grid_low = naive.value <= 0.6;
  const bool certified = sup.enclosure.contains(1.0) && sup.enclosure.width() <= 1e-9 && !sup.enclosure.attained;
  o.pass = grid_low && certified;
  o.notes.push_back(fmt("0.01-step grid: %.10f at a = %.2f (required <= 0.6)", naive.value, naive.alpha));
  o.notes.push_back(fmt("parametric enclosure [%.12f, %.12f], attained=%d", sup.enclosure.lower, sup.enclosure.upper,
                        sup.enclosure.attained));
  if (!grid_low) {
    o.notes.push_back(fmt("the node nearest 1/3 is a = 0.34, where 3a/2 - 1/2 = 0.01 and H = 1 - 0.01^0.2 = %.10f;",
                          1.0 - std::pow(0.01, 0.2)));
    o.notes.push_back("the stated 0.568 = 1 - 0.015^0.2 corresponds to a = 0.34333.., not a grid node. The");
    o.notes.push_back(fmt("underestimation itself stands: grid %.4f vs certified 1 (gap %.4f).", naive.value,
                          1.0 - naive.value));
  }
  return o;
}

Outcome criterion8() {
  Outcome o{true, {}};
  std::size_t mismatches = 0;
  std::size_t failing_families = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomFamilyShape shape;
    shape.random_grid = seed % 3 == 0;
    if (seed % 2) shape.jump_level = 0.05 + 0.9 * static_cast<double>(seed % 17) / 16.0;
    const auto fam = random_family(1000 + seed, 4 + seed % 7, shape);
    const auto diag = compactness_conditions_report(fam);
    const auto& lvl = diag.criterion(kLevelCompactness);
    const auto& sup = diag.criterion(kSupremumCriterion);
    const auto& spt = diag.criterion(kSupportCriterion);
    const bool same = lvl.condition(2).parts.at(0) == sup.condition(1).parts.at(0) &&
                      lvl.condition(2).parts.at(0) == spt.condition(1).parts.at(0) &&
                      lvl.condition(1).parts.at(0) == sup.condition(2).parts.at(0) &&
                      lvl.condition(3).parts.at(0) == sup.condition(3).parts.at(0) &&
                      lvl.condition(3).parts.at(0) == spt.condition(2).parts.at(0);
    if (!same) ++mismatches;
    if (lvl.condition(3).verdict() == Verdict::fail) ++failing_families;
  }
  o.pass = mismatches == 0;
  o.notes.push_back(fmt("100 families (%zu with failing equi-continuity): %zu with distinct shared sub-verdict objects",
                        failing_families, mismatches));
  return o;
}

Outcome criterion9() {
  Outcome o{true, {}};
  const auto fam = random_family(77, 100);
  std::size_t compared = 0;
  std::size_t mismatches = 0;
  double full_gap = 0.0;
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& u = fam[i];
    const auto& v = fam[(i + 1) % fam.size()];
    const auto bu = lift(u);
    const auto bv = lift(v);
    const std::size_t half = bu.direction_count() / 2;
    for (std::size_t l = 0; l < u.grid().size(); ++l) {
      const auto a = bu.body(l);
      const auto b = bv.body(l);
      const std::vector<double> sa{a[0], a[half]};
      const std::vector<double> sb{b[0], b[half]};
      const double h = hausdorff_interval(u.node_cut(l), v.node_cut(l));
      if (hausdorff_support_2d(sa, sb) != h) ++mismatches;
      full_gap = std::max(full_gap, std::abs(hausdorff_support_2d(a, b) - h));
      ++compared;
    }
  }
  o.pass = mismatches == 0;
  o.notes.push_back(fmt("100 lifted numbers, %zu level pairs: %zu mismatches at directions {0, pi}", compared,
                        mismatches));
  o.notes.push_back(fmt("over all 360 directions: max |H_support - H_interval| = %.3g", full_gap));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";
  std::printf("fuzzycut acceptance suite\n");
  report(1, "d_inf(u_n, u) = 1 for n = 1..100, enclosure width <= 1e-9, not attained", 5, criterion1);
  report(2, "level convergence at every probed level, eps = 1e-3; N = 7 at a = 2/3, eps = 0.1", 5, criterion2);
  report(3, "published modulus bound dominates the family modulus on the 50x19 lattice (tol 1e-12)", 10, criterion3);
  report(4, "closed-form profile equals generic profile within 1e-12 (10^4 probes x 100 members)", 10, criterion4);
  report(5, "CLI refutation report with --strict exits 0 and asserts every section", 0,
         [&] { return criterion5(binary); });
  report(6, "d_inf on sampled numbers: symmetry exact, triangle inequality within 1e-12", 0, criterion6);
  report(7, "0.01-step grid reports <= 0.6 for d_inf(u_5, u) while the enclosure certifies 1", 0, criterion7);
  report(8, "shared condition sub-verdicts are identical objects across criteria (100 families)", 0, criterion8);
  report(9, "lifted 1-D numbers: support-function distance at {0, pi} equals the interval distance", 0,
         criterion9);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures;
}
