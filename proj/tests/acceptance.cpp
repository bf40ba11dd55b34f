// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "comlim/design.hpp"
#include "comlim/families.hpp"
#include "comlim/oracle.hpp"
#include "comlim/plausibility.hpp"
#include "comlim/refinement.hpp"

using namespace comlim;

namespace {

struct Harness {
  int failures = 0;

  void criterion(int id, const std::string& what,
                 const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool pass = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      pass = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %2d (%5.1fs): %s\n", pass ? "PASS" : "FAIL", id,
                secs, what.c_str());
    if (!pass) {
      ++failures;
      std::printf("       %s\n", detail.empty() ? "(no detail)" : detail.c_str());
    }
    std::fflush(stdout);
  }
};

bool expect_pieces(const IntervalUnion& got,
                   const std::vector<std::pair<double, double>>& want, double tol,
                   std::string& detail) {
  if (got.pieces().size() != want.size()) {
    detail = "piece count " + std::to_string(got.pieces().size()) + " != " +
             std::to_string(want.size()) + ": " + got.to_string();
    return false;
  }
  for (std::size_t i = 0; i < want.size(); ++i) {
    const auto& p = got.pieces()[i];
    if (std::abs(p.lo - want[i].first) > tol ||
        std::abs(p.hi - want[i].second) > tol) {
      detail = "piece " + std::to_string(i) + " = [" + std::to_string(p.lo) + "," +
               std::to_string(p.hi) + "] vs expected [" +
               std::to_string(want[i].first) + "," + std::to_string(want[i].second) +
               "]";
      return false;
    }
  }
  return true;
}

OracleContext make_ctx(const GameSpec& spec, int n, std::vector<double> extra) {
  std::vector<double> hints = representative_points(cournot_set(spec));
  for (double p : representative_points(stackelberg_set(spec))) hints.push_back(p);
  for (double p : extra) hints.push_back(p);
  return OracleContext::build(spec, Grid::build(spec.leader_space, n, hints));
}

// Shared sweep cells for criteria 7 and 9; knife edge r = d+1 excluded.
std::vector<DuopolyParams> sweep_cells() {
  std::vector<DuopolyParams> cells;
  const double rs[] = {0.3, 0.6, 0.9, 1.2, 1.5, 1.7, 1.95};
  const double ds[] = {0.0, 0.12, 0.24, 0.36, 0.48, 0.62, 0.85};
  for (double r : rs) {
    for (double d : ds) {
      if (std::abs(r - (d + 1.0)) < 0.04) continue;
      cells.push_back({r, d});
    }
  }
  return cells;
}

bool check_c1(std::string& detail) {
  GameSpec spec = make_duopoly({1.2, 0.0});
  return expect_pieces(simply_plausible_set(spec),
                       {{0.0, 0.0}, {5.0 / 17, 5.0 / 9}, {1.25, 2.5}}, 1e-6, detail);
}

bool check_c2(std::string& detail) {
  GameSpec spec = make_duopoly({1.2, 0.0});
  return expect_pieces(i_plausible_set(spec), {{0.0, 0.0}, {5.0 / 17, 2.5}}, 1e-6,
                       detail);
}

bool check_c3(std::string& detail) {
  GameSpec spec = make_duopoly({0.8, 0.0});
  if (!expect_pieces(cournot_set(spec), {{5.0 / 11, 5.0 / 11}}, 1e-6, detail)) {
    return false;
  }
  if (!expect_pieces(stackelberg_set(spec), {{1.0, 1.0}}, 1e-6, detail)) {
    return false;
  }
  const PPlausibility pp = p_plausible_set(spec);
  if (std::abs(pp.set.min_value() - 5.0 / 18) > 1e-6) {
    detail = "p-plausible lower endpoint " + std::to_string(pp.set.min_value());
    return false;
  }
  const double u_ref = leader_value(spec, 5.0 / 18);
  if (std::abs(pp.underline_u - u_ref) > 1e-9) {
    detail = "underline_u " + std::to_string(pp.underline_u) + " vs U(5/18) " +
             std::to_string(u_ref);
    return false;
  }
  if (!pp.set.contains(1.0 / 3)) {
    detail = "1/3 missing from the partitional set";
    return false;
  }
  if (simply_plausible_set(spec).contains(1.0 / 3)) {
    detail = "1/3 wrongly simply plausible";
    return false;
  }
  return true;
}

bool check_c4(std::string& detail) {
  GameSpec spec = make_coordination({0.0});
  const std::vector<std::pair<double, double>> landmarks = {
      {0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}};
  if (!expect_pieces(cournot_set(spec), landmarks, 1e-6, detail)) return false;
  if (!expect_pieces(stackelberg_set(spec), landmarks, 1e-6, detail)) return false;
  if (!expect_pieces(simply_plausible_set(spec), landmarks, 1e-6, detail)) {
    return false;
  }
  for (double x_star : {0.6, 0.75, 0.9}) {
    OracleContext ctx = make_ctx(spec, 201, {x_star, 1.0 - x_star});
    FiniteCst cst;
    cst.elements.push_back(IntervalUnion::interval(0.0, x_star));
    cst.elements.push_back(IntervalUnion::interval(1.0 - x_star, 1.0));
    check_cover(ctx, cst);
    const SpeResult res = spe_outcomes(ctx, cst);
    const int idx = ctx.grid.index_of(x_star, 1e-12);
    if (idx < 0 || !res.contains_index(idx)) {
      detail = "x* = " + std::to_string(x_star) + " not certified by the two-sided CST";
      return false;
    }
  }
  return true;
}

bool check_c5(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    GameSpec spec;
    const char* name;
  };
  std::vector<Case> cases;
  cases.push_back({make_duopoly({0.8, 0.0}), "duopoly(4/5,0)"});
  cases.push_back({make_duopoly({1.2, 0.0}), "duopoly(6/5,0)"});
  cases.push_back({make_coordination({0.0}), "coordination(0)"});
  for (auto& c : cases) {
    const EquivalenceReport simple = simple_equivalence(c.spec, 201);
    if (!simple.clean()) {
      detail = std::string(c.name) + ": " +
               std::to_string(simple.discrepancies.size()) +
               " simple-class discrepancies, first at " +
               std::to_string(simple.discrepancies.front());
      return false;
    }
    const EquivalenceReport cover = interval_equivalence(c.spec, 201);
    if (!cover.clean()) {
      detail = std::string(c.name) + ": " +
               std::to_string(cover.discrepancies.size()) +
               " interval-class discrepancies, first at " +
               std::to_string(cover.discrepancies.front());
      return false;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > 300.0) {
    detail = "runtime " + std::to_string(secs) + "s exceeds the five-minute budget";
    return false;
  }
  return true;
}

bool check_c6(std::string& detail) {
  {  // upper-interval commitment: unique equilibrium at 3/2
    GameSpec spec = make_duopoly({0.8, 0.0});
    OracleContext ctx = make_ctx(spec, 201, {1.5, 5.0 / 3, 0.125, 1.0 / 3});
    const FiniteCst cst =
        parse_cst_literal("[0,1.5)|[1.5,1.6666666666666667]", spec.leader_space);
    const SpeResult res = spe_outcomes(ctx, cst);
    if (res.outcomes.size() != 1 ||
        std::abs(res.outcomes[0].leader_action - 1.5) > ctx.grid.h) {
      detail = "upper-interval CST outcomes are off";
      return false;
    }
    const FiniteCst split = parse_cst_literal(
        "(0.125,0.33333333333333331]|"
        "[0,0.125]u(0.33333333333333331,1.6666666666666667]",
        spec.leader_space);
    const SpeResult res2 = spe_outcomes(ctx, split);
    if (res2.outcomes.size() != 2 ||
        std::abs(res2.outcomes[0].leader_action - 1.0 / 3) > ctx.grid.h ||
        std::abs(res2.outcomes[1].leader_action - 5.0 / 11) > ctx.grid.h) {
      detail = "non-interval CST must yield exactly {1/3, 5/11}";
      return false;
    }
  }
  {  // coordination CST with an equilibrium below every no-commitment payoff
    GameSpec spec = make_coordination({0.0});
    OracleContext ctx = make_ctx(spec, 201, {1.0 / 9, 4.0 / 9});
    const FiniteCst cst = parse_cst_literal(
        "[0.1111111111111111,0.4444444444444444)|"
        "[0,0.1111111111111111)u[0.4444444444444444,1]",
        spec.leader_space);
    const SpeResult res = spe_outcomes(ctx, cst);
    const double floor_payoff =
        std::min({leader_value(spec, 0.0), leader_value(spec, 0.5),
                  leader_value(spec, 1.0)});
    bool found = false;
    for (const auto& o : res.outcomes) {
      if (std::abs(o.leader_action - 4.0 / 9) <= ctx.grid.h) {
        found = o.leader_payoff < floor_payoff;
      }
    }
    if (!found) {
      detail = "4/9 outcome with sub-Cournot payoff not found";
      return false;
    }
    const SpeResult pref = spe_outcomes_leader_preferred(ctx, cst);
    for (const auto& o : pref.outcomes) {
      if (std::abs(o.leader_action - 4.0 / 9) <= ctx.grid.h) {
        detail = "leader-preferred selection failed to remove 4/9";
        return false;
      }
    }
  }
  return true;
}

bool check_c7(std::string& detail) {
  for (const DuopolyParams& p : sweep_cells()) {
    GameSpec spec = make_duopoly(p);
    spec.tol.grid_n = 1001;
    const DuopolyClosedForms cf = duopoly_closed_forms(p);
    const double two_h = 2 * spec.leader_space.width() / 1000.0;
    const std::string cell =
        "(r=" + std::to_string(p.r) + ", d=" + std::to_string(p.d) + ")";

    const IntervalUnion cournot = cournot_set(spec);
    if (!cournot.set_equal(cf.cournot, 1e-5)) {
      detail = cell + " cournot " + cournot.to_string() + " vs " +
               cf.cournot.to_string();
      return false;
    }
    const IntervalUnion stack = stackelberg_set(spec);
    if (std::abs(stack.min_value() - cf.x_stackelberg) > 1e-5) {
      detail = cell + " stackelberg " + std::to_string(stack.min_value()) + " vs " +
               std::to_string(cf.x_stackelberg);
      return false;
    }
    if (!simply_plausible_set(spec).set_equal(cf.simply_plausible, two_h)) {
      detail = cell + " simply-plausible " + simply_plausible_set(spec).to_string() +
               " vs " + cf.simply_plausible.to_string();
      return false;
    }
    if (!i_plausible_set(spec).set_equal(cf.i_plausible, two_h)) {
      detail = cell + " I-plausible mismatch";
      return false;
    }
    const IntervalUnion plausible =
        p.r < p.d + 1.0 ? p_plausible_set(spec).set : i_plausible_set(spec);
    if (!plausible.set_equal(cf.plausible, two_h)) {
      detail = cell + " plausible " + plausible.to_string() + " vs " +
               cf.plausible.to_string();
      return false;
    }
  }
  for (double d : {0.0, 0.2, 0.4, 0.6, 0.8}) {
    const ThresholdRow t = thresholds(d);
    const bool ordered = 2 * d < t.r_2dag && t.r_2dag < t.r_3dag &&
                         t.r_3dag < t.r_dag && t.r_dag < t.r_star &&
                         t.r_star < d + 1.0;
    if (!ordered) {
      detail = "threshold ordering fails at d = " + std::to_string(d);
      return false;
    }
  }
  return true;
}

bool check_c8(std::string& detail) {
  const std::vector<DuopolyParams> cells = {
      {0.4, 0.0}, {0.8, 0.0}, {1.3, 0.0}, {0.8, 0.3}};
  for (const DuopolyParams& p : cells) {
    const DuopolyClosedForms cf = duopoly_closed_forms(p);
    const std::string cell =
        "(r=" + std::to_string(p.r) + ", d=" + std::to_string(p.d) + ")";

    const DesignSolution leader =
        solve_cdp(p, {ObjectiveKind::Leader, {}}, CstClass::All);
    if (!leader.closed_form_agrees ||
        leader.optimal_actions.distance_to(cf.x_stackelberg) > 1e-5) {
      detail = cell + " leader objective missed x^S";
      return false;
    }
    for (ObjectiveKind kind :
         {ObjectiveKind::ConsumerSurplus, ObjectiveKind::Welfare}) {
      const DesignSolution sol = solve_cdp(p, {kind, {}}, CstClass::All);
      if (!sol.closed_form_agrees ||
          sol.optimal_actions.distance_to(cf.x_max) > 1e-5) {
        detail = cell + " surplus objective missed the largest plausible action";
        return false;
      }
    }
  }

  const DesignSolution ps_low =
      solve_cdp({0.4, 0.0}, {ObjectiveKind::ProducerSurplus, {}}, CstClass::All);
  if (ps_low.optimal_actions.distance_to(5.0 / 13) > 1e-5) {
    detail = "producer surplus at r=0.4 is not the Cournot quantity";
    return false;
  }
  const DesignSolution ps_high =
      solve_cdp({1.3, 0.0}, {ObjectiveKind::ProducerSurplus, {}}, CstClass::All);
  if (ps_high.optimal_actions.pieces().size() != 2 ||
      ps_high.optimal_actions.distance_to(0.0) > 1e-5 ||
      ps_high.optimal_actions.distance_to(1.0 / 0.7) > 1e-5) {
    detail = "producer surplus at r=1.3 must tie {x3^C, 0}: " +
             ps_high.optimal_actions.to_string();
    return false;
  }
  return true;
}

bool check_c9(std::string& detail) {
  int tested = 0;
  for (const DuopolyParams& p : sweep_cells()) {
    if (p.r >= p.d + 1.0) continue;
    GameSpec spec = make_duopoly(p);
    spec.tol.grid_n = 1001;
    const LowerBoundDiagnostics diag = lower_bound_diagnostics(spec);
    if (!diag.rc_holds) continue;
    ++tested;
    if (*diag.slope_product > 0.5 + 1e-4 &&
        !(*diag.underline_u < *diag.u_at_cournot - 1e-9)) {
      detail = "slope product " + std::to_string(*diag.slope_product) +
               " but no strict payoff gap at r=" + std::to_string(p.r) +
               ", d=" + std::to_string(p.d);
      return false;
    }
  }
  if (tested < 10) {
    detail = "too few regular cells exercised";
    return false;
  }
  return true;
}

bool check_c10(std::string& detail) {
  GameSpec spec = make_coordination({0.01});
  const double nu = 0.05;
  Grid grid = Grid::build(spec.leader_space, 201, std::vector<double>{nu, 1 - nu, 0.5});
  OracleContext ctx = OracleContext::build(spec, grid);

  FiniteCst base;
  base.elements.push_back(IntervalUnion::point(0.0));
  base.elements.push_back(IntervalUnion::interval(0.0, 1.0, false, false));
  base.elements.push_back(IntervalUnion::point(1.0));

  FiniteCst refined;
  refined.elements.push_back(IntervalUnion::interval(nu, 1 - nu));
  for (double x : grid.points) {
    if (x < nu || x > 1 - nu) refined.elements.push_back(IntervalUnion::point(x));
  }

  if (!is_finer_on_grid(refined, base, grid)) {
    detail = "refinement is not finer on the grid";
    return false;
  }
  const auto worse = is_worse(ctx, refined, base);
  if (!worse.has_value() || !*worse) {
    detail = "refinement is not detected as worse";
    return false;
  }
  const WorseRefinement w = worse_refinement_search(spec, base);
  if (!w.exists || !std::isfinite(w.u_bar)) {
    detail = "worse refinement witness threshold missing";
    return false;
  }
  return true;
}

bool check_c11(std::string& detail) {
  std::mt19937_64 rng(0x5eed2026);
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };

  struct FamilyCase {
    GameSpec spec;
    const char* name;
  };
  std::vector<FamilyCase> specs;
  specs.push_back({make_duopoly({0.8, 0.0}), "duopoly(0.8,0)"});
  specs.push_back({make_duopoly({1.2, 0.0}), "duopoly(1.2,0)"});
  specs.push_back({make_coordination({0.0}), "coordination(0)"});
  specs.push_back({make_coordination({0.01}), "coordination(0.01)"});

  for (auto& fc : specs) {
    const GameSpec& spec = fc.spec;
    const IntervalUnion stack = stackelberg_set(spec);
    const IntervalUnion simple = simply_plausible_set(spec);
    const IntervalUnion iset = i_plausible_set(spec);
    const RcReport rc = check_rc(spec);
    IntervalUnion pset;
    if (rc.holds()) pset = p_plausible_set(spec).set;

    if (!simple.superset_of(stack, 1e-6) || !iset.superset_of(simple, 1e-6) ||
        (rc.holds() && !pset.superset_of(simple, 1e-6))) {
      detail = std::string(fc.name) + ": sandwich inclusion fails";
      return false;
    }

    for (double c : representative_points(cournot_set(spec))) {
      if (std::abs(phi(spec, c) - c) > 10 * spec.tol.x_tol) {
        detail = std::string(fc.name) + ": fixed-point residual too large";
        return false;
      }
    }

    GameSpec numeric = spec;
    numeric.analytic_partials = nullptr;

    double prev_level = -1e300;
    IntervalUnion prev_contour;
    for (int probe = 0; probe < 200; ++probe) {
      const double x = uniform(spec.leader_space.lo, spec.leader_space.hi);

      // Sandwich on the probe itself.
      if (stack.distance_to(x) == 0 && simple.distance_to(x) > 1e-6) {
        detail = std::string(fc.name) + ": probe breaks stack within simple";
        return false;
      }
      if (simple.distance_to(x) == 0 && iset.distance_to(x) > 1e-6) {
        detail = std::string(fc.name) + ": probe breaks simple within I";
        return false;
      }

      // Finite differences against analytic partials (relative 1e-5).
      const double mx = spec.leader_space.width() * 0.02;
      const double my = spec.follower_space.width() * 0.02;
      const double px = spec.leader_space.clamp(x) * (1 - 2e-2) +
                        (spec.leader_space.lo + mx) * 2e-2;
      const double py = uniform(spec.follower_space.lo + my,
                                spec.follower_space.hi - my);
      const PartialDerivatives a = partials_at(spec, px, py);
      const PartialDerivatives n = partials_at(numeric, px, py);
      const double scale = 1.0 + std::abs(a.u1) + std::abs(a.u2) + std::abs(a.v1);
      if (std::abs(a.u1 - n.u1) / scale > 1e-5 ||
          std::abs(a.u2 - n.u2) / scale > 1e-5 ||
          std::abs(a.v1 - n.v1) / scale > 1e-5 ||
          std::abs(a.v2 - n.v2) / scale > 1e-5) {
        detail = std::string(fc.name) + ": finite differences disagree";
        return false;
      }

      // Contour nesting on a ladder of levels.
      if (probe % 40 == 17) {
        const double level = leader_value(spec, x);
        const IntervalUnion contour = contour_set(spec, level, Direction::Geq);
        if (prev_level > -1e299 && level >= prev_level &&
            !prev_contour.superset_of(contour, 1e-6)) {
          detail = std::string(fc.name) + ": contour nesting fails";
          return false;
        }
        prev_level = level;
        prev_contour = contour;
      }
    }
  }

  // Richer never worse and never lowers the best payoff, via the oracle.
  {
    GameSpec spec = make_duopoly({0.8, 0.0});
    OracleContext ctx = make_ctx(spec, 101, {});
    const auto& pts = ctx.grid.points;
    const int n = ctx.grid.size();
    for (int iter = 0; iter < 50; ++iter) {
      const int cut = 1 + static_cast<int>(uniform(0, n - 2));
      FiniteCst base;
      base.elements.push_back(IntervalUnion::interval(pts[0], pts[cut - 1]));
      base.elements.push_back(IntervalUnion::interval(pts[cut], pts[n - 1]));
      FiniteCst richer = base;
      double a = pts[static_cast<int>(uniform(0, n - 1))];
      double b = pts[static_cast<int>(uniform(0, n - 1))];
      if (a > b) std::swap(a, b);
      richer.elements.push_back(IntervalUnion::interval(a, b));

      const SpeResult r0 = spe_outcomes(ctx, base);
      const SpeResult r1 = spe_outcomes(ctx, richer);
      if (r0.no_equilibrium || r1.no_equilibrium) continue;
      if (r1.max_payoff() < r0.max_payoff() - 1e-9) {
        detail = "enrichment lowered the best equilibrium payoff";
        return false;
      }
      const auto worse = is_worse(ctx, richer, base);
      if (worse.has_value() && *worse) {
        detail = "a richer CST tested as worse";
        return false;
      }
    }
  }
  return true;
}

}  // namespace

int main() {
  Harness h;
  h.criterion(1, "duopoly r=6/5: simply plausible set", check_c1);
  h.criterion(2, "duopoly r=6/5: I-plausible set", check_c2);
  h.criterion(3, "duopoly r=4/5: equilibria and partitional set", check_c3);
  h.criterion(4, "coordination a=0: landmark sets and two-sided certificates",
              check_c4);
  h.criterion(5, "oracle-theorem equivalence on 201-point grids", check_c5);
  h.criterion(6, "worked equilibrium examples", check_c6);
  h.criterion(7, "closed-form sweep and threshold ordering", check_c7);
  h.criterion(8, "commitment design regimes", check_c8);
  h.criterion(9, "slope product implies a strict payoff gap", check_c9);
  h.criterion(10, "finer-but-worse refinement detected", check_c10);
  h.criterion(11, "randomized property suite", check_c11);

  if (h.failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria failed\n", h.failures);
  }
  return h.failures;
}
