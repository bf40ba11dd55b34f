#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "comlim/design.hpp"
#include "comlim/families.hpp"
#include "comlim/report.hpp"
#include "comlim/svg.hpp"

namespace comlim::cli {

namespace {

struct CommonOptions {
  std::string family = "duopoly";
  double r = 0.8;
  double d = 0.0;
  double a = 0.0;
  std::string file;  // payoff table for family=tabulated
  int grid_n = 0;    // 0 = library default
  std::string out;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--family", o.family, "duopoly | coordination | tabulated")
      ->default_val("duopoly");
  cmd->add_option("--r", o.r, "duopoly returns to scale (r < 2)");
  cmd->add_option("--d", o.d, "duopoly differentiation (0 <= d <= 1)");
  cmd->add_option("--a", o.a, "coordination mismatch penalty (a >= 0)");
  cmd->add_option("--file", o.file, "CSV payoff matrix for family=tabulated");
  cmd->add_option("--grid-n", o.grid_n, "grid resolution override");
  cmd->add_option("--out", o.out, "output path (stdout when omitted)");
}

GameSpec build_spec(const CommonOptions& o) {
  GameSpec spec;
  if (o.family == "duopoly") {
    spec = make_duopoly({o.r, o.d});
  } else if (o.family == "coordination") {
    spec = make_coordination({o.a});
  } else if (o.family == "tabulated") {
    if (o.file.empty()) throw BadParamsError("family=tabulated needs --file");
    spec = make_tabulated_file(o.file);
  } else {
    throw BadParamsError("unknown family: " + o.family);
  }
  if (o.grid_n > 0) {
    spec.tol.grid_n = o.grid_n;
    validate(spec.tol);
  }
  return spec;
}

JsonValue config_json(const CommonOptions& o) {
  JsonValue c = JsonValue::object();
  c.set("family", JsonValue::of(o.family));
  if (o.family == "duopoly") {
    c.set("r", JsonValue::of(o.r));
    c.set("d", JsonValue::of(o.d));
  } else if (o.family == "coordination") {
    c.set("a", JsonValue::of(o.a));
  } else {
    c.set("file", JsonValue::of(o.file));
  }
  if (o.grid_n > 0) c.set("grid_n", JsonValue::of(o.grid_n));
  return c;
}

void emit(const JsonValue& doc, const CommonOptions& o, std::ostream& out) {
  const std::string text = doc.dump();
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw BadParamsError("cannot open output file: " + o.out);
  f << text;
}

JsonValue report_header(const char* command, const CommonOptions& o) {
  JsonValue doc = JsonValue::object();
  doc.set("schema_version", JsonValue::of(kReportSchemaVersion));
  doc.set("command", JsonValue::of(command));
  doc.set("config", config_json(o));
  return doc;
}

std::vector<double> landmark_hints(const GameSpec& spec) {
  std::vector<double> hints = representative_points(cournot_set(spec));
  for (double p : representative_points(stackelberg_set(spec))) hints.push_back(p);
  return hints;
}

int cmd_analyze(const CommonOptions& o, std::ostream& out) {
  if (o.family == "tabulated") {
    throw UnsupportedClassError(
        "tabulated games support oracle analysis only; use the oracle command");
  }
  const GameSpec spec = build_spec(o);
  JsonValue doc = report_header("analyze", o);
  doc.set("equilibria", to_json(equilibrium_report(spec)));
  const PlausibilityReport pl = plausibility_report(spec);
  doc.set("rc", to_json(pl.rc));
  doc.set("plausibility", to_json(pl));
  doc.set("diagnostics", to_json(lower_bound_diagnostics(spec)));
  emit(doc, o, out);
  return pl.rc.holds() ? 0 : 2;
}

int cmd_plot(const CommonOptions& o, std::ostream& out) {
  if (o.family == "tabulated") {
    throw UnsupportedClassError("plotting expects an analytic family");
  }
  if (o.out.empty()) throw BadParamsError("plot needs --out <prefix>");
  const GameSpec spec = build_spec(o);
  const ActionSpace& xs = spec.leader_space;
  const int n = 512;

  const IntervalUnion cournot = cournot_set(spec);
  const IntervalUnion stack = stackelberg_set(spec);
  const IntervalUnion simple = simply_plausible_set(spec);
  const RcReport rc = check_rc(spec);
  std::optional<PPlausibility> pp;
  if (rc.holds()) pp = p_plausible_set(spec);

  std::vector<double> grid(n);
  std::vector<double> u_vals(n), phi_vals(n), gamma_vals(n);
  for (int i = 0; i < n; ++i) {
    const double x = xs.lo + xs.width() * i / (n - 1);
    grid[i] = x;
    const double rf = best_response_follower(spec, x);
    u_vals[i] = spec.payoff_leader(x, rf);
    phi_vals[i] = best_response_leader(spec, rf);
    gamma_vals[i] = rc.holds() ? gamma_action(spec, x, rc.x_cournot)
                               : std::numeric_limits<double>::quiet_NaN();
  }

  std::vector<std::string> files;

  {  // leader value with the plausibility bands
    double umin = u_vals[0], umax = u_vals[0];
    for (double v : u_vals) {
      umin = std::min(umin, v);
      umax = std::max(umax, v);
    }
    SvgCanvas canvas(xs.lo, xs.hi, umin, umax, spec.label + ": leader value");
    canvas.axis_labels("leader action", "U(x)");
    for (const auto& p : simple.pieces()) {
      if (!p.is_point()) canvas.band(p.lo, p.hi, "#2b8a3e");
    }
    std::vector<std::pair<double, double>> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = {grid[i], u_vals[i]};
    canvas.polyline(pts, "#1c4e80", 2.0);
    for (double c : representative_points(cournot)) {
      canvas.marker(c, leader_value(spec, c), "#b23a48", "cournot");
    }
    for (double s : representative_points(stack)) {
      canvas.marker(s, leader_value(spec, s), "#2b8a3e", "stackelberg");
    }
    if (pp) canvas.hline(pp->underline_u, "#b23a48");
    const std::string path = o.out + "_value.svg";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw BadParamsError("cannot open output file: " + path);
    f << canvas.render();
    files.push_back(path);
  }

  {  // phi against the diagonal
    SvgCanvas canvas(xs.lo, xs.hi, xs.lo, xs.hi, spec.label + ": phi");
    canvas.axis_labels("leader action", "phi(x)");
    std::vector<std::pair<double, double>> pts(n), diag = {{xs.lo, xs.lo},
                                                           {xs.hi, xs.hi}};
    for (int i = 0; i < n; ++i) pts[i] = {grid[i], phi_vals[i]};
    canvas.polyline(diag, "#888888", 1.0, true);
    canvas.polyline(pts, "#1c4e80", 2.0);
    for (double c : representative_points(cournot)) {
      canvas.marker(c, c, "#b23a48", "fixed point");
    }
    const std::string path = o.out + "_phi.svg";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw BadParamsError("cannot open output file: " + path);
    f << canvas.render();
    files.push_back(path);
  }

  if (pp) {  // gamma over the indifference region
    SvgCanvas canvas(xs.lo, xs.hi, xs.lo, xs.hi, spec.label + ": gamma");
    canvas.axis_labels("leader action", "gamma(x)");
    std::vector<std::pair<double, double>> pts(n), diag = {{xs.lo, xs.lo},
                                                           {xs.hi, xs.hi}};
    for (int i = 0; i < n; ++i) pts[i] = {grid[i], gamma_vals[i]};
    canvas.polyline(diag, "#888888", 1.0, true);
    canvas.polyline(pts, "#6d597a", 2.0);
    for (const auto& p : pp->s_set.pieces()) {
      if (!p.is_point()) canvas.band(p.lo, p.hi, "#6d597a");
    }
    const auto low = argmin_over(
        [&](double t) { return leader_value(spec, gamma_action(spec, t, rc.x_cournot)); },
        pp->s_set, spec.tol.x_tol, 257);
    canvas.marker(low.first, gamma_action(spec, low.first, rc.x_cournot), "#b23a48",
                  "min U(gamma)");
    const std::string path = o.out + "_gamma.svg";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw BadParamsError("cannot open output file: " + path);
    f << canvas.render();
    files.push_back(path);
  }

  {  // sampled curves, one row per grid point
    const std::string path = o.out + "_curves.csv";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw BadParamsError("cannot open output file: " + path);
    f << "x,U,phi,gamma\n";
    for (int i = 0; i < n; ++i) {
      f << format_number(grid[i]) << ',' << format_number(u_vals[i]) << ','
        << format_number(phi_vals[i]) << ',';
      if (rc.holds()) f << format_number(gamma_vals[i]);
      f << '\n';
    }
    files.push_back(path);
  }

  JsonValue doc = report_header("plot", o);
  JsonValue arr = JsonValue::array();
  for (const auto& f : files) arr.push(JsonValue::of(f));
  doc.set("files", std::move(arr));
  out << doc.dump();
  return 0;
}

int cmd_oracle(const CommonOptions& o, const std::string& cst_literal,
               const std::string& klass, int oracle_grid, std::ostream& out) {
  const GameSpec spec = build_spec(o);
  const int n = oracle_grid > 0 ? oracle_grid : 201;
  JsonValue doc = report_header("oracle", o);

  if (!cst_literal.empty()) {
    const FiniteCst cst = parse_cst_literal(cst_literal, spec.leader_space);
    std::vector<double> hints = landmark_hints(spec);
    for (const auto& e : cst.elements) {
      for (const auto& p : e.pieces()) {
        hints.push_back(p.lo);
        hints.push_back(p.hi);
      }
    }
    const Grid grid = Grid::build(spec.leader_space, n, hints);
    const OracleContext ctx = OracleContext::build(spec, grid);
    check_cover(ctx, cst);
    doc.set("cst", JsonValue::of(to_literal(cst)));
    doc.set("cst_elements", to_json(cst, ctx));
    doc.set("grid_points", JsonValue::of(grid.size()));
    doc.set("spe", to_json(spe_outcomes(ctx, cst)));
    doc.set("spe_leader_preferred", to_json(spe_outcomes_leader_preferred(ctx, cst)));
    emit(doc, o, out);
    return 0;
  }

  bool any_discrepancy = false;
  JsonValue campaigns = JsonValue::array();
  const bool run_simple = klass.empty() || klass == "simple";
  const bool run_interval = klass.empty() || klass == "i" || klass == "I";
  if (run_simple) {
    const EquivalenceReport rep = simple_equivalence(spec, n);
    any_discrepancy |= !rep.clean();
    JsonValue one = JsonValue::object();
    one.set("class", JsonValue::of("simple"));
    one.set("report", to_json(rep));
    campaigns.push(std::move(one));
  }
  if (run_interval) {
    const EquivalenceReport rep = interval_equivalence(spec, n);
    any_discrepancy |= !rep.clean();
    JsonValue one = JsonValue::object();
    one.set("class", JsonValue::of("I"));
    one.set("report", to_json(rep));
    campaigns.push(std::move(one));
  }
  doc.set("campaigns", std::move(campaigns));
  doc.set("clean", JsonValue::of(!any_discrepancy));
  emit(doc, o, out);
  return any_discrepancy ? 1 : 0;
}

int cmd_design(const CommonOptions& o, const std::string& objective,
               const std::string& klass, std::ostream& out) {
  if (o.family != "duopoly") {
    throw UnsupportedClassError("the design command covers the duopoly family");
  }
  const DuopolyParams params{o.r, o.d};
  const Objective obj{objective_from_name(objective), {}};
  const CstClass cls = cst_class_from_name(klass);
  const DesignSolution sol = solve_cdp(params, obj, cls);
  const auto [x_min, x_max] = extreme_plausible_actions(params, cls);

  JsonValue doc = report_header("design", o);
  doc.set("objective", JsonValue::of(objective));
  doc.set("class", JsonValue::of(klass));
  JsonValue s = JsonValue::object();
  s.set("optimal_actions", to_json(sol.optimal_actions));
  s.set("objective_value", JsonValue::of(sol.objective_value));
  s.set("witness_cst", JsonValue::of(sol.witness_cst));
  s.set("regime", JsonValue::of(sol.regime));
  s.set("closed_form_action", sol.closed_form_action
                                  ? JsonValue::of(*sol.closed_form_action)
                                  : JsonValue());
  s.set("closed_form_action2", sol.closed_form_action2
                                   ? JsonValue::of(*sol.closed_form_action2)
                                   : JsonValue());
  s.set("closed_form_agrees", JsonValue::of(sol.closed_form_agrees));
  doc.set("solution", std::move(s));
  JsonValue ex = JsonValue::object();
  ex.set("x_min", JsonValue::of(x_min));
  ex.set("x_max", JsonValue::of(x_max));
  doc.set("extreme_plausible_actions", std::move(ex));
  emit(doc, o, out);
  return sol.closed_form_agrees ? 0 : 1;
}

int cmd_refine_check(const CommonOptions& o, const std::string& cst_literal,
                     std::ostream& out) {
  if (cst_literal.empty()) throw BadParamsError("refine-check needs --cst");
  const GameSpec spec = build_spec(o);
  const FiniteCst cst = parse_cst_literal(cst_literal, spec.leader_space);
  const WorseRefinement w = worse_refinement_search(spec, cst);

  JsonValue doc = report_header("refine-check", o);
  doc.set("cst", JsonValue::of(to_literal(cst)));
  doc.set("worse_refinement", to_json(w));
  emit(doc, o, out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium analysis of leader-follower games under partial commitment"};
  app.require_subcommand(1);

  CommonOptions analyze_opts, plot_opts, oracle_opts, design_opts, refine_opts;
  std::string oracle_cst, oracle_class;
  int oracle_grid = 0;
  std::string design_objective = "leader", design_class = "all";
  std::string refine_cst;

  CLI::App* analyze = app.add_subcommand("analyze", "equilibria and plausible sets");
  add_common(analyze, analyze_opts);

  CLI::App* plot = app.add_subcommand("plot", "SVG figures and sampled curves");
  add_common(plot, plot_opts);

  CLI::App* oracle = app.add_subcommand(
      "oracle", "brute-force SPE of a CST, or an oracle-vs-theorem campaign");
  add_common(oracle, oracle_opts);
  oracle->add_option("--cst", oracle_cst, "CST literal, e.g. \"[0,1.5)|[1.5,1.667]\"");
  oracle->add_option("--class", oracle_class, "campaign class: simple | i");
  oracle->add_option("--oracle-grid", oracle_grid, "grid size for the oracle");

  CLI::App* design = app.add_subcommand("design", "commitment design problem");
  add_common(design, design_opts);
  design->add_option("--objective", design_objective,
                     "leader | follower | cs | ps | welfare");
  design->add_option("--class", design_class, "simple | i | p | all");

  CLI::App* refine = app.add_subcommand("refine-check",
                                        "worse-refinement test for a simple CST");
  add_common(refine, refine_opts);
  refine->add_option("--cst", refine_cst, "simple CST literal");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(analyze_opts, out);
    if (plot->parsed()) return cmd_plot(plot_opts, out);
    if (oracle->parsed()) {
      return cmd_oracle(oracle_opts, oracle_cst, oracle_class, oracle_grid, out);
    }
    if (design->parsed()) {
      return cmd_design(design_opts, design_objective, design_class, out);
    }
    if (refine->parsed()) return cmd_refine_check(refine_opts, refine_cst, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no subcommand\n";
  return 1;
}

}  // namespace comlim::cli
