#ifndef HFLOW_CLI_HPP_
#define HFLOW_CLI_HPP_

/**
 * @file
 * @brief Scenario-driven runs behind the `hflow` command: operator tables,
 * convexity checks, initial-data construction, flows, and the acceptance report.
 *
 * A scenario is one JSON document; see scenarios/ for the named examples.
 */

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hflow/acceptance.hpp"
#include "hflow/fields.hpp"
#include "hflow/gameflow.hpp"
#include "hflow/grid.hpp"
#include "hflow/hcalc.hpp"
#include "hflow/hull_init.hpp"
#include "hflow/io.hpp"
#include "hflow/qcheck.hpp"

namespace hflow::cli {

/// Invalid scenario content (exit code 2).
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class ExitCode : int { ok = 0, check_failed = 1, config_error = 2 };

inline const std::vector<std::string> &scenario_kinds()
{
  static const std::vector<std::string> kinds{"ops-eval", "qc-check", "minkowski", "flow", "full-report"};
  return kinds;
}

struct Scenario
{
  std::string name;
  std::string kind;
  json doc;
  std::filesystem::path base_dir;  ///< relative file references resolve here

  Provenance provenance() const { return {scenario_hash(doc), doc}; }
};

inline Scenario parse_scenario(const json &doc, std::filesystem::path base_dir = {})
{
  if (!doc.is_object()) { throw ConfigError("scenario must be a JSON object"); }
  Scenario s;
  s.doc = doc;
  s.base_dir = std::move(base_dir);
  s.name = doc.value("name", std::string{});
  if (!doc.contains("kind") || !doc["kind"].is_string()) { throw ConfigError("scenario needs a string 'kind'"); }
  s.kind = doc["kind"].get<std::string>();
  const auto &k = scenario_kinds();
  if (std::find(k.begin(), k.end(), s.kind) == k.end()) { throw ConfigError("unknown scenario kind '" + s.kind + "'"); }
  return s;
}

inline Scenario load_scenario(const std::filesystem::path &path)
{
  try {
    return parse_scenario(read_json(path), path.parent_path());
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  } catch (const std::runtime_error &e) {
    throw ConfigError(e.what());
  }
}

// ---------------------------------------------------------------------------
// Named builders

/// A resolved field or set description.
struct Subject
{
  std::string name;
  ScalarField field;
  Membership domain;                  ///< where uniform checks apply (empty: everywhere)
  std::optional<StarShapedSet> set;   ///< for set-based runs
  Membership closure;                 ///< closure of the set, when known
};

inline Subject resolve_subject(const json &spec, const std::filesystem::path &base_dir)
{
  if (!spec.is_object()) { throw ConfigError("field / set spec must be an object"); }
  Subject s;
  if (spec.contains("grid_file")) {
    const auto path = base_dir / spec["grid_file"].get<std::string>();
    auto slice = std::make_shared<GridSlice>(load_slice(path));
    s.name = "grid:" + path.filename().string();
    s.field = ScalarField{[slice](const Point &p) { return slice->eval(p); }, {}, {}};
    return s;
  }
  if (!spec.contains("name")) { throw ConfigError("field / set spec needs 'name' or 'grid_file'"); }
  s.name = spec["name"].get<std::string>();
  auto with_profile = [&](const ProfileFunction &g) {
    s.field = field_rot_profile(g);
    s.set = profile_set(g);
    s.closure = profile_closure(g);
  };
  if (s.name == "neg-z4") {
    s.field = field_neg_z4();
  } else if (s.name == "positive-example") {
    s.field = field_positive_example();
  } else if (s.name == "linear-profile") {
    s.field = field_rot_profile(linear_profile(spec.value("slope", 1.0), spec.value("offset", 0.0)));
  } else if (s.name == "semiconcave-profile") {
    const double c1 = spec.value("c1", 2.0), c2 = spec.value("c2", 2.0);
    s.field = field_rot_profile(semiconcave_profile(c1, spec.value("slope", 0.0)));
    s.domain = [c2](const Point &p) { return p.x * p.x + p.y * p.y < c2; };
  } else if (s.name == "gauge-ball") {
    s.field = ScalarField{[](const Point &p) { return gauge(p) * gauge(p); }, {}, {}};
    s.set = gauge_ball_set();
    s.closure = [](const Point &p) { return gauge(p) <= 1.0; };
  } else if (s.name == "gauge-ball-gj") {
    const int j = spec.value("j", 16);
    if (j < 5) { throw ConfigError("gauge-ball-gj needs j >= 5"); }
    with_profile(gauge_ball_gj(j));
  } else if (s.name == "quartic-profile") {
    with_profile(quartic_profile());
  } else if (s.name == "two-well") {
    s.field = acceptance::two_well_field();
  } else {
    throw ConfigError("unknown named example '" + s.name + "'");
  }
  return s;
}

// ---------------------------------------------------------------------------
// Config blocks

inline std::array<double, 3> arr3(const json &j, const char *key)
{
  if (!j.contains(key)) { throw ConfigError(std::string("missing '") + key + "'"); }
  return j[key].get<std::array<double, 3>>();
}

/// {"lattice": {"lo", "hi", "n"}} and / or {"list": [[x, y, z], ...]}.
inline std::vector<Point> resolve_points(const json &spec)
{
  std::vector<Point> pts;
  if (spec.contains("lattice")) {
    const json &l = spec["lattice"];
    pts = lattice_points(arr3(l, "lo"), arr3(l, "hi"), l.at("n").get<std::array<std::size_t, 3>>());
  }
  if (spec.contains("list")) {
    for (const auto &p : spec["list"]) { pts.push_back(point_from_json(p)); }
  }
  if (pts.empty()) { throw ConfigError("point set is empty"); }
  return pts;
}

inline SamplingPlan resolve_plan(const json &spec)
{
  SamplingPlan plan;
  plan.base_points = resolve_points(spec);
  plan.directions = spec.value("directions", plan.directions);
  if (spec.contains("radii")) { plan.radii = spec["radii"].get<std::vector<double>>(); }
  plan.segment_samples = spec.value("segment_samples", plan.segment_samples);
  try {
    plan.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
  return plan;
}

inline json plan_to_json(const SamplingPlan &p)
{
  return {{"base_points", p.base_points.size()}, {"directions", p.directions}, {"radii", p.radii},
          {"segment_samples", p.segment_samples}};
}

inline OperatorConfig resolve_operator_config(const json &spec)
{
  OperatorConfig cfg;
  cfg.fd_step = spec.value("fd_step", cfg.fd_step);
  cfg.fd_step2 = spec.value("fd_step2", cfg.fd_step2);
  cfg.grad_tol = spec.value("grad_tol", cfg.grad_tol);
  cfg.analytic_grad_tol = spec.value("analytic_grad_tol", cfg.analytic_grad_tol);
  if (spec.contains("limsup_radii")) { cfg.limsup_radii = spec["limsup_radii"].get<std::vector<double>>(); }
  cfg.limsup_samples = spec.value("limsup_samples", cfg.limsup_samples);
  try {
    cfg.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Reports and checks

/// Named scalar results of a run plus the outcome of the scenario's checks.
struct Report
{
  std::map<std::string, double> metrics;
  json details = json::object();
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Applies "checks": [{"metric": name, "le" | "ge" | "lt" | "gt" | "eq": value}, ...].
inline void apply_checks(const json &doc, Report &rep)
{
  if (!doc.contains("checks")) { return; }
  for (const auto &c : doc["checks"]) {
    const std::string m = c.at("metric").get<std::string>();
    const auto it = rep.metrics.find(m);
    if (it == rep.metrics.end()) { throw ConfigError("check refers to unknown metric '" + m + "'"); }
    const double v = it->second;
    static const std::map<std::string, std::function<bool(double, double)>> ops{
      {"le", [](double a, double b) { return a <= b; }}, {"ge", [](double a, double b) { return a >= b; }},
      {"lt", [](double a, double b) { return a < b; }},  {"gt", [](double a, double b) { return a > b; }},
      {"eq", [](double a, double b) { return a == b; }},
    };
    bool any = false;
    for (const auto &[op, fn] : ops) {
      if (!c.contains(op)) { continue; }
      any = true;
      const double bound = c[op].get<double>();
      if (!fn(v, bound)) { rep.failures.push_back(m + " = " + format_double(v) + " violates " + op + " " + format_double(bound)); }
    }
    if (!any) { throw ConfigError("check on '" + m + "' has no comparison"); }
  }
}

inline void write_summary(const std::filesystem::path &out, const Scenario &scn, const Report &rep)
{
  json j;
  j["scenario"] = scn.name;
  j["kind"] = scn.kind;
  j["scenario_hash"] = scenario_hash(scn.doc);
  j["params"] = scn.doc;
  j["metrics"] = rep.metrics;
  j["details"] = rep.details;
  j["failures"] = rep.failures;
  j["passed"] = rep.passed();
  write_json(out / "summary.json", j);
}

// ---------------------------------------------------------------------------
// Runs

inline Report run_ops_eval(const Scenario &scn, const std::filesystem::path &out)
{
  const Subject subj = resolve_subject(scn.doc.at("field"), scn.base_dir);
  const json pspec = scn.doc.at("points");
  std::vector<Point> pts = resolve_points(pspec);
  if (pspec.value("inside_set", false)) {
    if (!subj.set) { throw ConfigError("inside_set needs a field with an associated set"); }
    pts = filter_points(pts, subj.set->member);
  }
  const json ospec = scn.doc.value("operators", json::object());
  const OperatorConfig cfg = resolve_operator_config(ospec);
  const ScalarField f = ospec.value("numeric", false) ? subj.field.numeric_only() : subj.field;
  const bool limsup = ospec.value("limsup", true);

  std::vector<std::vector<double>> rows(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const auto v = evaluate_operators(f, pts[i], cfg);
    const double lbar = limsup ? op_L_bar(f, pts[i], cfg).value : std::numeric_limits<double>::quiet_NaN();
    rows[i] = {pts[i].x, pts[i].y, pts[i].z, v.grad.norm(), v.L, v.L_star, lbar, v.characteristic ? 1.0 : 0.0};
  });
  write_csv(out / "ops.csv", {"x", "y", "z", "grad_norm", "L", "L_star", "L_bar", "characteristic"}, rows,
            scn.provenance());

  Report rep;
  const char *names[] = {"grad_norm", "L", "L_star", "L_bar"};
  for (int c = 0; c < (limsup ? 4 : 3); ++c) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, amax = 0.0;
    for (const auto &r : rows) {
      lo = std::min(lo, r[3 + c]);
      hi = std::max(hi, r[3 + c]);
      amax = std::max(amax, std::abs(r[3 + c]));
    }
    rep.metrics[std::string("min_") + names[c]] = lo;
    rep.metrics[std::string("max_") + names[c]] = hi;
    rep.metrics[std::string("max_abs_") + names[c]] = amax;
  }
  double chars = 0;
  for (const auto &r : rows) { chars += r[7]; }
  rep.metrics["count"] = static_cast<double>(rows.size());
  rep.metrics["characteristic_count"] = chars;
  return rep;
}

inline Report run_qc_check(const Scenario &scn, const std::filesystem::path &out)
{
  const Subject subj = resolve_subject(scn.doc.at("field"), scn.base_dir);
  const SamplingPlan plan = resolve_plan(scn.doc.at("plan"));
  const Provenance prov = scn.provenance();
  Report rep;
  rep.details["plan"] = plan_to_json(plan);

  const double tol = scn.doc.value("tolerance", 1e-9);
  const auto w = search_violation(subj.field, plan, -std::numeric_limits<double>::infinity());
  json wj = {{"scenario_hash", prov.hash}, {"found", w && w->gap > tol}};
  if (w) { wj["best"] = to_json(*w); }
  write_json(out / "witness.json", wj);
  rep.metrics["witness_found"] = w && w->gap > tol ? 1.0 : 0.0;
  rep.metrics["worst_gap"] = w ? w->gap : -std::numeric_limits<double>::infinity();

  if (scn.doc.contains("triples")) {
    std::vector<std::vector<double>> rows;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto &t : scn.doc["triples"]) {
      const Point p = point_from_json(t.at("p")), q = point_from_json(t.at("q"));
      double g;
      try {
        g = check_triple(subj.field, p, q, plan);
      } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
      }
      worst = std::max(worst, g);
      rows.push_back({p.x, p.y, p.z, q.x, q.y, q.z, g});
    }
    write_csv(out / "triples.csv", {"px", "py", "pz", "qx", "qy", "qz", "gap"}, rows, prov);
    rep.metrics["triple_gap_max"] = worst;
  }

  if (scn.doc.contains("uniform")) {
    const json &u = scn.doc["uniform"];
    const double r0 = u.value("r0", 1.0);
    std::vector<std::vector<double>> rows;
    double worst = std::numeric_limits<double>::infinity();
    for (double lam : u.at("lambdas").get<std::vector<double>>()) {
      double m;
      try {
        m = check_uniform(subj.field, {lam, r0}, plan, subj.domain);
      } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
      }
      rows.push_back({lam, m});
      worst = std::min(worst, m);
    }
    write_csv(out / "uniform.csv", {"lambda", "worst_margin"}, rows, prov);
    rep.metrics["uniform_margin_min"] = worst;
    rep.metrics["measured_lambda"] = measure_uniform_lambda(subj.field, plan, subj.domain);
  }
  return rep;
}

inline MinkowskiConfig resolve_minkowski(const json &doc)
{
  MinkowskiConfig mc;
  mc.tol = doc.value("tol", mc.tol);
  return mc;
}

inline Report run_minkowski(const Scenario &scn, const std::filesystem::path &out)
{
  const Subject subj = resolve_subject(scn.doc.at("set"), scn.base_dir);
  if (!subj.set) { throw ConfigError("'" + subj.name + "' does not define a set"); }
  const StarShapedSet &E = *subj.set;
  const MinkowskiConfig mc = resolve_minkowski(scn.doc);
  const Provenance prov = scn.provenance();
  Report rep;
  rep.metrics["inner_radius"] = E.r;
  rep.metrics["outer_radius"] = E.R;

  const auto s1 = check_S1(E);
  json s1j = {{"scenario_hash", prov.hash}, {"violation", s1.has_value()}};
  if (s1) {
    s1j["ray_point"] = to_json(s1->point);
    s1j["mu"] = s1->mu;
    s1j["message"] = s1->what();
  }
  write_json(out / "s1.json", s1j);
  rep.metrics["s1_violation"] = s1 ? 1.0 : 0.0;
  if (s1) {
    rep.failures.push_back(std::string("S1 violation: ") + s1->what());
    return rep;
  }

  const GridSpec grid = grid_spec_from_json(scn.doc.at("grid"));
  save_slice(out, "u0_minkowski", grid_sample(minkowski_field(E, mc), grid, std::numeric_limits<double>::infinity()), prov);

  const json s2spec = scn.doc.value("s2", json::object());
  S2Sampling s2plan;
  if (s2spec.contains("radii")) { s2plan.radii = s2spec["radii"].get<std::vector<double>>(); }
  s2plan.directions = s2spec.value("directions", s2plan.directions);
  const double sigma = s2spec.value("sigma", 1e-3);
  const S2Report s2 = check_S2(E, s2spec.value("r0", 1.0), sigma, s2plan, mc);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < s2plan.radii.size(); ++i) { rows.push_back({s2plan.radii[i], s2.margins[i]}); }
  write_csv(out / "s2.csv", {"radius", "worst_margin"}, rows, prov);
  rep.metrics["s2_margin"] = s2.worst_margin;

  const json ispec = scn.doc.value("initial", json::object());
  InitialConfig icfg;
  icfg.minkowski = mc;
  const InitialData init = build_initial(E, ispec.value("C", std::numeric_limits<double>::quiet_NaN()), icfg);
  const GridSlice uh = grid_sample(init.u_hat, grid, init.C);
  save_slice(out, "u_hat", uh, prov);
  std::size_t match = 0;
  for (std::size_t n = 0; n < grid.size(); ++n) { match += (uh.values()[n] < 0.0) == E.member(grid.node(n)); }

  SamplingPlan lplan;
  if (scn.doc.contains("lambda_plan")) {
    lplan = resolve_plan(scn.doc["lambda_plan"]);
  } else {
    lplan.base_points = lattice_points(grid.lo, grid.hi, {11, 11, 11});
    lplan.radii = {0.02, 0.05, 0.1};
  }
  const double lambda = measure_uniform_lambda(init.u_hat, lplan);
  rep.metrics["rho"] = init.rho;
  rep.metrics["c"] = init.c;
  rep.metrics["C"] = init.C;
  rep.metrics["measured_lambda"] = lambda;
  rep.metrics["membership_match"] = static_cast<double>(match) / static_cast<double>(grid.size());
  write_json(out / "initial.json", {{"scenario_hash", prov.hash},
                                    {"params", prov.params},
                                    {"rho", init.rho},
                                    {"c", init.c},
                                    {"C", init.C},
                                    {"measured_lambda", lambda},
                                    {"s2_margin", s2.worst_margin},
                                    {"s2_sigma", sigma},
                                    {"membership_match", rep.metrics["membership_match"]},
                                    {"slice", "u_hat.json"}});
  return rep;
}

inline Report run_flow(const Scenario &scn, const std::filesystem::path &out)
{
  const json &g = scn.doc.at("game");
  GameParams gp;
  gp.epsilon = g.value("epsilon", gp.epsilon);
  gp.directions = g.value("directions", gp.directions);
  gp.grid = grid_spec_from_json(g.at("grid"));
  if (g.contains("steps")) {
    gp.horizon = g["steps"].get<int>() * gp.epsilon * gp.epsilon;
  } else {
    gp.horizon = g.at("horizon").get<double>();
  }
  ScalarField u0;
  if (scn.doc.contains("set")) {
    const Subject subj = resolve_subject(scn.doc["set"], scn.base_dir);
    if (!subj.set) { throw ConfigError("'" + subj.name + "' does not define a set"); }
    const InitialData init = build_initial(*subj.set, g.value("C", std::numeric_limits<double>::quiet_NaN()));
    gp.C = init.C;
    u0 = init.u0;
  } else {
    u0 = resolve_subject(scn.doc.at("field"), scn.base_dir).field;
    if (!g.contains("C")) { throw ConfigError("flow from a field needs game.C"); }
    gp.C = g["C"].get<double>();
  }
  try {
    gp.validate();
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }

  const FlowResult res = solve(initial_slice(u0, gp), gp);
  const Provenance prov = scn.provenance();
  const bool zero = scn.doc.value("zero_level_set", true);
  json manifest;
  manifest["scenario_hash"] = prov.hash;
  manifest["params"] = prov.params;
  manifest["game"] = {{"epsilon", gp.epsilon}, {"directions", gp.directions}, {"horizon", gp.horizon},
                      {"steps", gp.steps()},   {"C", gp.C},                   {"grid", to_json(gp.grid)},
                      {"move_to_cell_ratio", gp.move_to_cell_ratio()}};
  json slices = json::array();
  for (std::size_t k = 0; k < res.slices.size(); ++k) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "slice_%03zu", k);
    save_slice(out, stem, res.slices[k], prov);
    json e = {{"step", k}, {"time", k * gp.epsilon * gp.epsilon}, {"file", std::string(stem) + ".json"},
              {"min", res.diagnostics[k].min}, {"max", res.diagnostics[k].max}};
    if (zero) {
      std::snprintf(stem, sizeof stem, "zero_%03zu.csv", k);
      std::vector<std::vector<double>> rows;
      for (const Point &p : zero_level_points(res.slices[k])) { rows.push_back({p.x, p.y, p.z}); }
      write_csv(out / stem, {"x", "y", "z"}, rows, prov);
      e["zero_level_set"] = stem;
    }
    slices.push_back(e);
  }
  manifest["slices"] = slices;

  Report rep;
  rep.metrics["steps"] = static_cast<double>(gp.steps());
  rep.metrics["final_min"] = res.diagnostics.back().min;
  rep.metrics["final_max"] = res.diagnostics.back().max;
  rep.metrics["nested"] = sublevel_sets_nested(res) ? 1.0 : 0.0;
  if (scn.doc.contains("monotonicity")) {
    const json &m = scn.doc["monotonicity"];
    const auto mr = check_time_monotonicity(res, m.at("lambda").get<double>(), m.value("allowance_per_step", -1.0));
    manifest["monotonicity"] = {{"raw_margin", mr.raw_margin}, {"margin", mr.margin},
                                {"allowance_per_step", mr.allowance_per_step}, {"k", mr.k}, {"l", mr.l},
                                {"node", mr.node}};
    rep.metrics["monotonicity_margin"] = mr.margin;
    rep.metrics["monotonicity_raw_margin"] = mr.raw_margin;
  }
  if (scn.doc.contains("hqc_plan")) {
    const auto gaps = check_slice_hqc(res, resolve_plan(scn.doc["hqc_plan"]));
    manifest["slice_gaps"] = gaps;
    rep.metrics["max_slice_gap"] = *std::max_element(gaps.begin(), gaps.end());
    rep.metrics["initial_slice_gap"] = gaps.front();
  }
  write_json(out / "manifest.json", manifest);
  return rep;
}

inline Report run_full_report(const Scenario &scn, const std::filesystem::path &out,
                              const std::function<void(const std::string &)> &log = {})
{
  const auto ids = scn.doc.value("criteria", std::vector<int>{});
  Report rep;
  const auto results = acceptance::run_all(ids, [&](const acceptance::CriterionResult &r) {
    if (log) { log(acceptance::format_row(r)); }
  });
  std::string csv = scn.provenance().comment_lines();
  csv += "id,status,seconds,title,detail\n";
  int failed = 0;
  for (const auto &r : results) {
    csv += std::to_string(r.id) + "," + (r.pass ? "PASS" : "FAIL") + "," + format_double(r.seconds) + ",\"" + r.title
           + "\",\"" + r.detail + "\"\n";
    if (!r.pass) {
      ++failed;
      rep.failures.push_back("criterion " + std::to_string(r.id) + " failed");
    }
  }
  write_text(out / "report.csv", csv);
  rep.metrics["criteria_run"] = static_cast<double>(results.size());
  rep.metrics["criteria_failed"] = failed;
  return rep;
}

/// Runs a scenario of the given kind, writes outputs and summary.json.
inline Report run(const Scenario &scn, const std::filesystem::path &out,
                  const std::function<void(const std::string &)> &log = {})
{
  std::filesystem::create_directories(out);
  Report rep;
  try {
    if (scn.kind == "ops-eval") {
      rep = run_ops_eval(scn, out);
    } else if (scn.kind == "qc-check") {
      rep = run_qc_check(scn, out);
    } else if (scn.kind == "minkowski") {
      rep = run_minkowski(scn, out);
    } else if (scn.kind == "flow") {
      rep = run_flow(scn, out);
    } else {
      rep = run_full_report(scn, out, log);
    }
  } catch (const json::exception &e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  apply_checks(scn.doc, rep);
  write_summary(out, scn, rep);
  return rep;
}

}  // namespace hflow::cli

#endif  // HFLOW_CLI_HPP_
