#pragma once

// JSON and CSV encodings. Object keys are emitted in a fixed order and
// numbers use the shortest decimal that round-trips, so identical inputs
// give byte-identical output.

#include <charconv>
#include <cstddef>
#include <string>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "fuzzy/body2d.hpp"
#include "fuzzy/core.hpp"
#include "fuzzy/counterexample.hpp"
#include "fuzzy/family.hpp"
#include "fuzzy/metrics.hpp"

namespace fuzzy::io {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal (at most 17 significant digits).
inline std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Fuzzy numbers

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

inline std::vector<double> numbers(const Json& j, const char* key) {
  const Json& arr = field(j, key);
  if (!arr.is_array()) throw Error(ErrorKind::ParseError, std::string("'") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) throw Error(ErrorKind::ParseError, std::string("'") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

inline std::string type_of(const Json& j) {
  const Json& t = field(j, "type");
  if (!t.is_string()) throw Error(ErrorKind::ParseError, "'type' must be a string");
  return t.get<std::string>();
}

// Invariant violations surface as ParseError naming the violated invariant.
template <class F>
auto rethrow_as_parse(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace detail

inline FuzzyNumber number_from_json(const Json& j) {
  return detail::rethrow_as_parse([&]() -> FuzzyNumber {
    const std::string type = detail::type_of(j);
    if (type == "sampled1d") {
      return make_sampled_1d(detail::numbers(j, "alphas"), detail::numbers(j, "lower"),
                             detail::numbers(j, "upper"));
    }
    if (type == "counterexample-un") {
      const Json& n = detail::field(j, "n");
      if (!n.is_number_integer()) throw Error(ErrorKind::ParseError, "'n' must be an integer");
      return counterexample::make_un(n.get<long>());
    }
    if (type == "counterexample-limit") return counterexample::make_limit();
    throw Error(ErrorKind::ParseError, "unknown fuzzy number type '" + type + "'");
  });
}

inline Json to_json(const SampledFuzzy1D& u) {
  Json j;
  j["type"] = "sampled1d";
  j["alphas"] = std::vector<double>(u.grid().levels().begin(), u.grid().levels().end());
  j["lower"] = std::vector<double>(u.lower().begin(), u.lower().end());
  j["upper"] = std::vector<double>(u.upper().begin(), u.upper().end());
  return j;
}

inline Json to_json(const CutCurve1D& u) {
  Json j;
  const auto& tag = u.tag();
  if (tag.type == "counterexample-un") {
    j["type"] = tag.type;
    j["n"] = tag.n;
  } else if (tag.type == "counterexample-limit") {
    j["type"] = tag.type;
  } else {
    throw Error(ErrorKind::ParseError, "curve has no JSON constructor");
  }
  return j;
}

inline Json to_json(const FuzzyNumber& u) {
  return std::visit([](const auto& v) { return to_json(v); }, u);
}

inline bool is_counterexample(const FuzzyNumber& u) {
  const auto* c = std::get_if<CutCurve1D>(&u);
  return c && c->tag().type.rfind("counterexample", 0) == 0;
}

/// A single object is a family of one; an array lists members.
inline std::vector<FuzzyNumber> family_from_json(const Json& j) {
  std::vector<FuzzyNumber> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(number_from_json(item));
  } else {
    out.push_back(number_from_json(j));
  }
  if (out.empty()) throw Error(ErrorKind::EmptyFamily, "family has no members");
  return out;
}

inline FuzzyBody2D body_from_json(const Json& j) {
  return detail::rethrow_as_parse([&] {
    if (detail::type_of(j) != "body2d") throw Error(ErrorKind::ParseError, "expected type 'body2d'");
    const Json& dirs = detail::field(j, "directions");
    if (!dirs.is_number_integer() || dirs.get<long>() < 3) {
      throw Error(ErrorKind::ParseError, "'directions' must be an integer >= 3");
    }
    const Json& rows = detail::field(j, "support");
    if (!rows.is_array()) throw Error(ErrorKind::ParseError, "'support' must be an array of arrays");
    std::vector<std::vector<double>> support;
    for (const auto& row : rows) support.push_back(row.get<std::vector<double>>());
    return FuzzyBody2D(AlphaGrid(detail::numbers(j, "alphas")), dirs.get<std::size_t>(),
                       std::move(support));
  });
}

inline Json to_json(const FuzzyBody2D& u) {
  Json j;
  j["type"] = "body2d";
  j["alphas"] = std::vector<double>(u.grid().levels().begin(), u.grid().levels().end());
  j["directions"] = u.direction_count();
  j["support"] = u.support();
  return j;
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const ValidationReport& r) {
  Json j;
  j["ok"] = r.ok();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json e;
    e["name"] = c.name;
    e["passed"] = c.passed;
    e["worst"] = c.worst;
    e["at_alpha"] = c.at_alpha;
    e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

inline Json to_json(const Enclosure& e) {
  Json j;
  j["lower"] = e.lower;
  j["upper"] = e.upper;
  j["attained"] = e.attained;
  return j;
}

inline Json to_json(const ParametricSup& s) {
  Json j = to_json(s.enclosure);
  j["alpha"] = s.alpha;
  j["depth_exceeded"] = s.depth_exceeded;
  return j;
}

inline Json to_json(const ConvergenceReport& r) {
  Json j;
  j["eps"] = r.eps;
  j["n_max"] = r.n_max;
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json x;
    x["alpha"] = e.alpha;
    x["h_values"] = e.h_values;
    x["first_index"] = e.first_index ? Json(*e.first_index) : Json("not reached");
    x["last_h"] = e.last_h;
    entries.push_back(std::move(x));
  }
  j["entries"] = std::move(entries);
  j["verdict"] = r.converged ? Json("level-convergent at all checked alpha") : Json(r.failing_alphas);
  return j;
}

inline Json to_json(const LevelWitness& w) {
  Json j;
  j["alpha"] = w.alpha;
  j["delta"] = w.delta ? Json(*w.delta) : Json("no delta found");
  Json moduli = Json::array();
  for (const auto& m : w.moduli) moduli.push_back(Json::array({m.delta, m.omega}));
  j["moduli"] = std::move(moduli);
  return j;
}

inline Json to_json(const SubVerdict& v) {
  Json j;
  j["name"] = v.name;
  j["verdict"] = std::string(to_string(v.verdict));
  j["note"] = v.note;
  return j;
}

inline Json to_json(const CriterionVerdicts& c) {
  Json j;
  j["criterion"] = c.criterion;
  j["statement"] = c.statement;
  Json conds = Json::array();
  for (const auto& cond : c.conditions) {
    Json x;
    x["number"] = cond.number;
    x["name"] = cond.name;
    x["verdict"] = std::string(to_string(cond.verdict()));
    Json parts = Json::array();
    for (const auto& p : cond.parts) parts.push_back(to_json(*p));
    x["parts"] = std::move(parts);
    conds.push_back(std::move(x));
  }
  j["conditions"] = std::move(conds);
  return j;
}

inline Json to_json(const FamilyDiagnostics& d) {
  Json j;
  j["support_radius"] = d.support_radius;
  j["bounded"] = d.bounded;
  j["eps"] = d.equi.eps;
  Json left = Json::array();
  for (const auto& w : d.equi.left) left.push_back(to_json(w));
  j["left_moduli"] = std::move(left);
  j["right_modulus_at_zero"] = to_json(d.equi.right_at_zero);
  Json verdicts = Json::array();
  for (const auto& c : d.condition_verdicts) verdicts.push_back(to_json(c));
  j["condition_verdicts"] = std::move(verdicts);
  return j;
}

// CSV tables embedded in the refutation report.
inline std::string csv_table(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

inline Json to_json(const counterexample::RefutationReport& r) {
  Json j;
  j["report"] = "counterexample refutation of the supremum-metric compactness criterion";
  j["n_max"] = r.n_max;
  Json settings;
  settings["family_eps"] = r.options.family_eps;
  settings["convergence_eps"] = r.options.convergence_eps;
  settings["convergence_window"] = r.options.convergence_window;
  settings["tol"] = r.options.tol;
  settings["max_depth"] = r.options.max_depth;
  settings["pairwise_grid"] = r.options.pairwise_grid;
  settings["non_cauchy_threshold"] = r.options.non_cauchy_threshold;
  j["settings"] = std::move(settings);

  Json a;
  a["title"] = "(a) uniform support bound and equi-left-continuity";
  a["verified"] = r.conditions_verified;
  a["support_radius"] = r.family.support_radius;
  const auto& claimed = r.family.criterion(kSupremumCriterion);
  a["condition_1_support_bounded"] = std::string(to_string(claimed.condition(1).verdict()));
  a["condition_3_equi_left"] = std::string(to_string(claimed.condition(3).verdict()));
  a["finite_family"] = to_json(r.family);
  a["constant_branch_zero"] = r.constant_branch_zero;
  a["infinite_family_bound"] = r.corrected_bound_holds;
  a["infinite_family_bound_note"] =
      "sup over all n of H([u_n]_a, [u_n]_b) <= 1.5 (a - b) / (3(a-d)/2 - 1/2), checked against a "
      "brute-force scan over n";
  a["literal_bound_violations"] = r.literal_bound_violations;
  a["literal_bound_note"] =
      "the published bound (a - b) / (3(a-d)/2 - 1/2) omits the factor 3/2 and fails where "
      "a - d > 7/9; equi-left-continuity itself is unaffected";
  std::vector<std::vector<double>> bound_rows;
  for (const auto& b : r.bound_checks) {
    bound_rows.push_back({b.alpha, b.delta, b.oracle, static_cast<double>(b.argmax), b.literal_bound,
                          b.corrected_bound});
  }
  a["bound_table_csv"] =
      csv_table({"alpha", "delta", "oracle", "argmax_n", "literal_bound", "corrected_bound"}, bound_rows);
  j["a"] = std::move(a);

  Json b;
  b["title"] = "(b) level convergence u_n -> u";
  b["verified"] = r.level_convergence_verified;
  b["eps"] = r.convergence.eps;
  b["window"] = r.convergence.n_max;
  std::vector<std::vector<double>> conv_rows;
  for (const auto& e : r.convergence.entries) {
    conv_rows.push_back({e.alpha, e.first_index ? static_cast<double>(*e.first_index) : -1.0, e.last_h});
  }
  b["first_index_table_csv"] = csv_table({"alpha", "N", "H_at_window_end"}, conv_rows);
  b["cross_check_alpha"] = r.cross_check_alpha;
  b["cross_check_agrees"] = r.cross_check_agrees;
  std::vector<std::vector<double>> cross_rows;
  for (const auto& c : r.cross_check) {
    cross_rows.push_back({static_cast<double>(c.n), c.generic, c.closed_form});
  }
  b["cross_check_table_csv"] = csv_table({"n", "H_generic", "H_closed_form"}, cross_rows);
  j["b"] = std::move(b);

  Json c;
  c["title"] = "(c) distance to the level limit, no limit point, closedness";
  c["verified"] = r.distance_verified && r.non_cauchy_verified;
  bool all_one = !r.distances.empty();
  bool any_attained = false;
  for (const auto& d : r.distances) {
    all_one = all_one && d.exact == 1.0 && d.enclosure.contains(1.0);
    any_attained = any_attained || d.exact_attained || d.enclosure.attained;
  }
  c["d_inf_to_limit"] = all_one ? Json(1.0) : Json("see distance table");
  c["attained"] = any_attained;
  std::vector<std::vector<double>> dist_rows;
  for (const auto& d : r.distances) {
    dist_rows.push_back({static_cast<double>(d.n), d.exact, d.enclosure.lower, d.enclosure.upper,
                         d.enclosure.attained ? 1.0 : 0.0});
  }
  c["distance_table_csv"] =
      csv_table({"n", "exact", "enclosure_lower", "enclosure_upper", "attained"}, dist_rows);
  c["non_cauchy_verified"] = r.non_cauchy_verified;
  std::vector<std::vector<double>> pair_rows;
  for (const auto& p : r.non_cauchy) {
    pair_rows.push_back({static_cast<double>(p.n), static_cast<double>(p.m), p.value});
  }
  c["pairwise_table_csv"] = csv_table({"n", "m", "d_inf_lower_bound"}, pair_rows);
  c["closedness"] = "analytic";
  c["closedness_argument"] = r.closedness_argument;
  j["c"] = std::move(c);

  Json d;
  d["title"] = "(d) conclusion";
  d["contradiction"] = r.contradiction;
  d["compact_in_d_inf"] = r.contradiction ? Json(false) : Json("undetermined");
  d["conclusion"] = r.conclusion;
  j["d"] = std::move(d);
  j["all_checks_pass"] = r.all_green();
  return j;
}

// ---------------------------------------------------------------------------
// CSV profiles

inline std::string profile_csv(const std::vector<ProfilePoint>& profile) {
  std::string out = "alpha,H\n";
  for (const auto& p : profile) out += format_number(p.alpha) + ',' + format_number(p.h) + '\n';
  return out;
}

}  // namespace fuzzy::io
