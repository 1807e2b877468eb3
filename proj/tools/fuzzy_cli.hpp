#pragma once

// Batch front end: parse fuzzy-number files, run one diagnostic, emit JSON or CSV.
//
// Exit status: 0 success, 1 input error, 2 failed verdict under --strict.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fuzzy/fuzzy.hpp"

namespace fuzzy::cli {

using io::Json;

inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kVerdictFailure = 2;

struct Settings {
  std::string grid;
  double tol = 1e-9;
  std::optional<double> eps;
  std::optional<long> n_max;
  std::string delta_grid = "2..20";
  std::string format;
  std::string out;
  bool strict = false;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// An argument is inline JSON when it starts with '{' or '[', else a file path.
inline Json load_json(const std::string& arg) {
  const std::string text = (!arg.empty() && (arg.front() == '{' || arg.front() == '['))
                               ? arg
                               : read_file(arg);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "malformed JSON in '" + arg + "': " + e.what());
  }
}

inline bool parse_count(const std::string& s, long& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

/// `--grid <n|file>`: a level count for a uniform grid, or a JSON file of levels.
inline AlphaGrid parse_grid(const std::string& spec, bool cluster_at_third) {
  if (spec.empty()) return report_grid(101, cluster_at_third);
  long n = 0;
  if (parse_count(spec, n)) {
    if (n < 2) throw Error(ErrorKind::ParseError, "--grid needs at least 2 levels");
    return report_grid(static_cast<std::size_t>(n), cluster_at_third);
  }
  const Json j = load_json(spec);
  const Json& levels = j.is_object() ? j.at("alphas") : j;
  try {
    return AlphaGrid(levels.get<std::vector<double>>());
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad grid file: ") + e.what());
  }
}

/// `--delta-grid`: "k0..k1" for 2^-k, k = k0..k1, or a comma list of offsets.
inline std::vector<double> parse_delta_grid(const std::string& spec) {
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    long k0 = 0;
    long k1 = 0;
    if (!parse_count(spec.substr(0, dots), k0) || !parse_count(spec.substr(dots + 2), k1) || k0 > k1 ||
        k0 < 0 || k1 > 1000) {
      throw Error(ErrorKind::ParseError, "bad --delta-grid range '" + spec + "'");
    }
    return default_delta_grid(static_cast<int>(k0), static_cast<int>(k1));
  }
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double d = 0.0;
    auto res = std::from_chars(item.data(), item.data() + item.size(), d);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size() || !(d > 0.0) || d > 1.0) {
      throw Error(ErrorKind::ParseError, "bad --delta-grid entry '" + item + "'");
    }
    out.push_back(d);
  }
  if (out.empty()) throw Error(ErrorKind::ParseError, "empty --delta-grid");
  return out;
}

inline bool any_counterexample(const std::vector<FuzzyNumber>& family) {
  return std::any_of(family.begin(), family.end(), io::is_counterexample);
}

inline Json header(const std::string& verb, const Settings& s) {
  Json h;
  h["command"] = verb;
  Json opts;
  opts["grid"] = s.grid.empty() ? "default" : s.grid;
  opts["tol"] = s.tol;
  if (s.eps) opts["eps"] = *s.eps;
  if (s.n_max) opts["n_max"] = *s.n_max;
  opts["delta_grid"] = s.delta_grid;
  opts["strict"] = s.strict;
  h["settings"] = std::move(opts);
  return h;
}

inline void emit(const std::string& text, const Settings& s, std::ostream& out) {
  if (s.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(s.out, std::ios::binary);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write '" + s.out + "'");
  f << text;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Verbs

inline int run_validate(const std::string& input, const Settings& s, std::ostream& out) {
  const Json j = detail::load_json(input);
  Json doc = detail::header("validate", s);
  bool ok = true;
  if (j.is_object() && j.value("type", "") == "body2d") {
    const FuzzyBody2D body = io::body_from_json(j);
    Json r;
    r["ok"] = true;
    r["levels"] = body.grid().size();
    r["directions"] = body.direction_count();
    doc["result"] = std::move(r);
  } else {
    const auto family = io::family_from_json(j);
    ValidationOptions vopts;
    vopts.tol = s.tol;
    Json results = Json::array();
    for (const auto& u : family) {
      const auto report = std::visit([&](const auto& v) { return validate_representation(v, vopts); }, u);
      ok = ok && report.ok();
      results.push_back(io::to_json(report));
    }
    doc["result"] = results.size() == 1 ? results[0] : results;
  }
  detail::emit(detail::dump(doc), s, out);
  return s.strict && !ok ? kVerdictFailure : kOk;
}

inline int run_dist(const std::string& a, const std::string& b, const Settings& s, std::ostream& out) {
  const Json ja = detail::load_json(a);
  const Json jb = detail::load_json(b);
  Json result;
  bool ok = true;
  double value = 0.0;
  if (ja.value("type", "") == "body2d" || jb.value("type", "") == "body2d") {
    value = d_infty_body2d(io::body_from_json(ja), io::body_from_json(jb));
    result["method"] = "support-2d";
    result["value"] = value;
  } else {
    const FuzzyNumber u = io::number_from_json(ja);
    const FuzzyNumber v = io::number_from_json(jb);
    const auto* su = std::get_if<SampledFuzzy1D>(&u);
    const auto* sv = std::get_if<SampledFuzzy1D>(&v);
    if (su && sv) {
      const auto d = d_infty_sampled_at(*su, *sv);
      value = d.value;
      result["method"] = "sampled";
      result["value"] = d.value;
      result["alpha"] = d.alpha;
    } else {
      const auto sup = d_infty_parametric(u, v, s.tol);
      value = sup.enclosure.upper;
      ok = !sup.depth_exceeded;
      result["method"] = "parametric";
      result["value"] = sup.enclosure.attained ? sup.enclosure.lower : sup.enclosure.upper;
      result["enclosure"] = io::to_json(sup.enclosure);
      result["alpha"] = sup.alpha;
      result["depth_exceeded"] = sup.depth_exceeded;
    }
  }
  if (s.format == "csv") {
    detail::emit("value\n" + io::format_number(value) + "\n", s, out);
  } else {
    Json doc = detail::header("dist", s);
    doc["result"] = std::move(result);
    detail::emit(detail::dump(doc), s, out);
  }
  return s.strict && !ok ? kVerdictFailure : kOk;
}

inline int run_profile(const std::string& a, const std::string& b, const Settings& s,
                       std::ostream& out) {
  const Json ja = detail::load_json(a);
  const Json jb = detail::load_json(b);
  const auto seq = io::family_from_json(ja);
  const FuzzyNumber target = io::family_from_json(jb).front();
  const bool cluster = detail::any_counterexample(seq) || io::is_counterexample(target);
  const AlphaGrid grid = detail::parse_grid(s.grid, cluster);
  const bool per_sequence = ja.is_array();

  if (s.format == "json") {
    Json doc = detail::header("profile", s);
    Json rows = Json::array();
    for (std::size_t n = 0; n < seq.size(); ++n) {
      for (const auto& p : level_distance_profile(seq[n], target, grid)) {
        Json r;
        r["alpha"] = p.alpha;
        if (per_sequence) r["n"] = n + 1;
        r["H"] = p.h;
        rows.push_back(std::move(r));
      }
    }
    doc["result"] = std::move(rows);
    detail::emit(detail::dump(doc), s, out);
    return kOk;
  }
  std::string csv;
  if (!per_sequence) {
    csv = io::profile_csv(level_distance_profile(seq.front(), target, grid));
  } else {
    csv = "alpha,n,H\n";
    for (std::size_t n = 0; n < seq.size(); ++n) {
      for (const auto& p : level_distance_profile(seq[n], target, grid)) {
        csv += io::format_number(p.alpha) + ',' + std::to_string(n + 1) + ',' + io::format_number(p.h) + '\n';
      }
    }
  }
  detail::emit(csv, s, out);
  return kOk;
}

inline int run_converge(const std::string& a, const std::string& b, const Settings& s,
                        std::ostream& out) {
  const auto seq = io::family_from_json(detail::load_json(a));
  const FuzzyNumber target = io::family_from_json(detail::load_json(b)).front();
  const bool cluster = detail::any_counterexample(seq) || io::is_counterexample(target);
  const AlphaGrid grid = detail::parse_grid(s.grid, cluster);
  const double eps = s.eps.value_or(1e-3);
  const std::size_t n_max = s.n_max ? static_cast<std::size_t>(*s.n_max) : seq.size();
  const auto report = level_convergence_report(seq, target, grid, eps, n_max);
  Json doc = detail::header("converge", s);
  doc["result"] = io::to_json(report);
  detail::emit(detail::dump(doc), s, out);
  return s.strict && !report.converged ? kVerdictFailure : kOk;
}

inline int run_family_report(const std::string& a, const Settings& s, std::ostream& out) {
  const auto family = io::family_from_json(detail::load_json(a));
  FamilyReportOptions fopts;
  const bool cluster = detail::any_counterexample(family);
  if (!s.grid.empty()) {
    const AlphaGrid grid = detail::parse_grid(s.grid, cluster);
    fopts.alphas.clear();
    for (double x : grid.levels()) {
      if (x > 0.0) fopts.alphas.push_back(x);
    }
  } else {
    fopts.alphas = default_family_alphas(101, cluster);
  }
  fopts.deltas = detail::parse_delta_grid(s.delta_grid);
  fopts.eps = s.eps.value_or(0.1);
  const auto diag = compactness_conditions_report(family, fopts);
  Json doc = detail::header("family-report", s);
  doc["result"] = io::to_json(diag);
  detail::emit(detail::dump(doc), s, out);
  const bool failed = diag.criterion(kLevelCompactness).condition(2).verdict() == Verdict::fail ||
                      diag.criterion(kLevelCompactness).condition(3).verdict() == Verdict::fail;
  return s.strict && failed ? kVerdictFailure : kOk;
}

inline int run_counterexample(const Settings& s, std::ostream& out) {
  const long n_max = s.n_max.value_or(100);
  if (n_max < 2) throw Error(ErrorKind::ParseError, "--n-max must be at least 2");
  counterexample::RefutationOptions opts;
  opts.tol = s.tol;
  if (s.eps) opts.convergence_eps = *s.eps;
  const auto report = counterexample::refutation_report(static_cast<std::size_t>(n_max), opts);
  Json doc = detail::header("counterexample", s);
  doc["result"] = io::to_json(report);
  detail::emit(detail::dump(doc), s, out);
  return s.strict && !report.all_green() ? kVerdictFailure : kOk;
}

/// Parses `args` (program name first) and runs one verb.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Metrics and compactness diagnostics for fuzzy numbers given by alpha-cuts",
               "fuzzycut"};
  app.require_subcommand(1);
  Settings s;

  auto add_common = [&s](CLI::App* sub) {
    sub->add_option("--grid", s.grid, "alpha grid: level count or JSON file of levels");
    sub->add_option("--tol", s.tol, "numeric tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--eps", s.eps, "convergence / equi-continuity tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--n-max", s.n_max, "sequence length / scan window")->check(CLI::PositiveNumber);
    sub->add_option("--delta-grid", s.delta_grid, "offsets: k0..k1 (2^-k) or comma list");
    sub->add_option("--format", s.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", s.out, "output path (default stdout)");
    sub->add_flag("--strict", s.strict, "exit 2 when a verdict fails");
  };

  std::string in_a;
  std::string in_b;
  auto* validate = app.add_subcommand("validate", "check the representation conditions");
  validate->add_option("input", in_a, "fuzzy number (file or inline JSON)")->required();
  auto* dist = app.add_subcommand("dist", "supremum distance between two numbers");
  dist->add_option("a", in_a, "first number")->required();
  dist->add_option("b", in_b, "second number")->required();
  auto* profile = app.add_subcommand("profile", "level distances as CSV");
  profile->add_option("a", in_a, "number or sequence")->required();
  profile->add_option("b", in_b, "reference number")->required();
  auto* converge = app.add_subcommand("converge", "level-convergence report");
  converge->add_option("sequence", in_a, "JSON array of numbers, index 1 first")->required();
  converge->add_option("limit", in_b, "limit number")->required();
  auto* family = app.add_subcommand("family-report", "compactness condition diagnostics");
  family->add_option("family", in_a, "JSON array of numbers")->required();
  auto* counter = app.add_subcommand("counterexample", "refutation report for the counterexample sequence");
  for (auto* sub : {validate, dist, profile, converge, family, counter}) add_common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*validate) return run_validate(in_a, s, out);
    if (*dist) return run_dist(in_a, in_b, s, out);
    if (*profile) {
      if (s.format.empty()) s.format = "csv";
      return run_profile(in_a, in_b, s, out);
    }
    if (*converge) return run_converge(in_a, in_b, s, out);
    if (*family) return run_family_report(in_a, s, out);
    if (*counter) return run_counterexample(s, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: ParseError: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace fuzzy::cli
