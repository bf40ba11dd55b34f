#include "comlim/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "comlim/equilibria.hpp"
#include "comlim/plausibility.hpp"

namespace comlim {

ObjectiveKind objective_from_name(const std::string& name) {
  if (name == "leader") return ObjectiveKind::Leader;
  if (name == "follower") return ObjectiveKind::Follower;
  if (name == "cs") return ObjectiveKind::ConsumerSurplus;
  if (name == "ps") return ObjectiveKind::ProducerSurplus;
  if (name == "welfare") return ObjectiveKind::Welfare;
  throw BadParamsError("unknown objective: " + name);
}

CstClass cst_class_from_name(const std::string& name) {
  if (name == "simple") return CstClass::Simple;
  if (name == "i" || name == "I") return CstClass::I;
  if (name == "p" || name == "P") return CstClass::P;
  if (name == "all") return CstClass::All;
  throw BadParamsError("unknown CST class: " + name);
}

double consumer_surplus(double x, double y, double d) {
  return 0.5 * (x + y) * (x + y) - d * x * y;
}

double producer_surplus(const GameSpec& spec, double x, double y) {
  return spec.payoff_leader(x, y) + spec.payoff_follower(y, x);
}

double welfare(const GameSpec& spec, double x, double y, double d) {
  return consumer_surplus(x, y, d) + producer_surplus(spec, x, y);
}

namespace {

constexpr double kKnifeEdgeTol = 1e-12;

std::function<double(double, double)> objective_fn(const GameSpec& spec,
                                                   const Objective& obj,
                                                   double d) {
  switch (obj.kind) {
    case ObjectiveKind::Leader:
      return [&spec](double x, double y) { return spec.payoff_leader(x, y); };
    case ObjectiveKind::Follower:
      return [&spec](double x, double y) { return spec.payoff_follower(y, x); };
    case ObjectiveKind::ConsumerSurplus:
      return [d](double x, double y) { return consumer_surplus(x, y, d); };
    case ObjectiveKind::ProducerSurplus:
      return [&spec](double x, double y) { return producer_surplus(spec, x, y); };
    case ObjectiveKind::Welfare:
      return [&spec, d](double x, double y) { return welfare(spec, x, y, d); };
    case ObjectiveKind::Custom:
      if (!obj.custom) throw BadParamsError("custom objective function missing");
      return obj.custom;
  }
  throw BadParamsError("unknown objective kind");
}

// Maximizes t -> W(t, R_F(t)) over the region, keeping every maximizer whose
// value ties the best within tie_tol.
std::pair<IntervalUnion, double> maximize_with_ties(
    const GameSpec& spec, const std::function<double(double, double)>& w,
    const IntervalUnion& region, double tie_tol) {
  auto g = [&](double t) { return w(t, best_response_follower(spec, t)); };
  std::vector<std::pair<double, double>> local;  // per-piece maxima
  for (const auto& piece : region.pieces()) {
    IntervalUnion one = IntervalUnion::from_pieces({piece}, 0);
    local.push_back(argmax_over(g, one, spec.tol.x_tol, 512));
  }
  double best = -1e300;
  for (const auto& [t, v] : local) best = std::max(best, v);
  std::vector<IntervalPiece> winners;
  for (const auto& [t, v] : local) {
    if (v >= best - tie_tol) winners.push_back({t, t, true, true});
  }
  return {IntervalUnion::from_pieces(std::move(winners), spec.tol.merge_tol()), best};
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

IntervalUnion plausible_set_for_class(const GameSpec& spec, CstClass cst_class,
                                      const DuopolyParams* duopoly_params) {
  switch (cst_class) {
    case CstClass::Simple:
      return simply_plausible_set(spec);
    case CstClass::I:
      return i_plausible_set(spec);
    case CstClass::P:
    case CstClass::All:
      break;
  }
  if (duopoly_params) {
    const double excess = duopoly_params->r - (duopoly_params->d + 1.0);
    if (excess < -kKnifeEdgeTol) {
      return p_plausible_set(spec).set;  // RC1-RC3 hold in this regime
    }
    // Outside the regularity conditions the duopoly closed forms settle the
    // partitional and unrestricted classes (they coincide there).
    return duopoly_closed_forms(*duopoly_params).plausible;
  }
  const RcReport rc = check_rc(spec);
  if (!rc.holds()) {
    if (cst_class == CstClass::P) {
      throw RcViolatedError("class P outside RC1-RC3 is only supported for duopoly");
    }
    throw UnsupportedClassError(
        "class 'all' outside RC1-RC3 is only supported for duopoly");
  }
  return p_plausible_set(spec).set;
}

DesignSolution solve_cdp(const GameSpec& spec,
                         const std::function<double(double, double)>& objective,
                         CstClass cst_class) {
  const IntervalUnion region = plausible_set_for_class(spec, cst_class);
  DesignSolution sol;
  auto [winners, best] = maximize_with_ties(spec, objective, region, 1e-9);
  sol.optimal_actions = std::move(winners);
  sol.objective_value = best;
  sol.regime = "numeric";
  return sol;
}

DesignSolution solve_cdp(const DuopolyParams& params, const Objective& objective,
                         CstClass cst_class) {
  const GameSpec spec = make_duopoly(params);
  const IntervalUnion region = plausible_set_for_class(spec, cst_class, &params);
  const auto w = objective_fn(spec, objective, params.d);

  DesignSolution sol;
  auto [winners, best] = maximize_with_ties(spec, w, region, 1e-9);
  sol.optimal_actions = std::move(winners);
  sol.objective_value = best;

  if (cst_class != CstClass::All && cst_class != CstClass::P) {
    sol.regime = cst_class == CstClass::Simple ? "simple" : "interval";
    return sol;
  }

  const DuopolyClosedForms cf = duopoly_closed_forms(params);
  const ThresholdRow th = thresholds(params.d);
  const double r = params.r, d = params.d;
  const double excess = r - (d + 1.0);
  const double cap = 2.0 / (2.0 - r);
  const bool unique_cournot = excess < -kKnifeEdgeTol;

  const std::string g0 = fmt_g(cf.gamma_at_zero);
  const std::string xmax = fmt_g(cf.x_max);
  const std::string xcap = fmt_g(cap);
  const std::string gamma0_cst = "(0," + g0 + "] | {0} u (" + g0 + "," + xcap + "]";
  const std::string upper_binary = "[0," + xmax + ") | [" + xmax + "," + xcap + "]";
  const std::string upper_three = "(0," + g0 + "] | {0} u (" + g0 + "," + xmax +
                                  ") | [" + xmax + "," + xcap + "]";

  switch (objective.kind) {
    case ObjectiveKind::Leader:
      sol.closed_form_action = cf.x_stackelberg;
      sol.witness_cst = "stackelberg (all singletons)";
      sol.regime = "leader->x^S";
      break;
    case ObjectiveKind::Follower:
      sol.closed_form_action = cf.x_min;
      if (unique_cournot && r > th.r_star + kKnifeEdgeTol) {
        sol.witness_cst = gamma0_cst;
        sol.regime = "follower->x_min (interval-or-outside commitment)";
      } else {
        sol.witness_cst = "cournot (whole space)";
        sol.regime = "follower->x_min (cournot CST)";
      }
      break;
    case ObjectiveKind::ConsumerSurplus:
    case ObjectiveKind::Welfare:
      sol.closed_form_action = cf.x_max;
      if (!unique_cournot || cf.gamma_at_zero >= cf.x_cournot_interior) {
        sol.witness_cst = upper_binary;
      } else {
        sol.witness_cst = upper_three;
      }
      sol.regime = objective.kind == ObjectiveKind::ConsumerSurplus
                       ? "cs->x_max"
                       : "welfare->x_max";
      break;
    case ObjectiveKind::ProducerSurplus: {
      if (excess > kKnifeEdgeTol) {
        sol.closed_form_action = cf.x_monopoly;
        sol.closed_form_action2 = 0.0;
        sol.witness_cst = "stackelberg (all singletons); cournot (whole space)";
        sol.regime = "ps->{x3^C, 0}";
      } else if (std::abs(excess) <= kKnifeEdgeTol) {
        sol.closed_form_action = cf.x_monopoly;
        sol.closed_form_action2 = 0.0;
        sol.witness_cst = "stackelberg (all singletons); cournot (whole space)";
        sol.regime = "ps->{x^M, 0} (r=d+1)";
      } else if (std::abs(r - th.r_dag) <= 1e-9) {
        // Boundary between the Cournot- and Stackelberg-optimal regimes:
        // both candidates are reported.
        sol.closed_form_action = cf.x_cournot_interior;
        sol.closed_form_action2 = cf.x_stackelberg;
        sol.witness_cst = "cournot (whole space); stackelberg (all singletons)";
        sol.regime = "ps->tie at r=r_dag";
      } else if (r < th.r_dag) {
        sol.closed_form_action = cf.x_cournot_interior;
        sol.witness_cst = "cournot (whole space)";
        sol.regime = "ps->x^C";
      } else {
        sol.closed_form_action = cf.x_stackelberg;
        sol.witness_cst = "stackelberg (all singletons)";
        sol.regime = "ps->x^S";
      }
      break;
    }
    case ObjectiveKind::Custom:
      sol.regime = "numeric";
      return sol;
  }

  if (sol.closed_form_action) {
    double dist = 1e300;
    for (const auto& p : sol.optimal_actions.pieces()) {
      dist = std::min(dist, std::abs(p.lo - *sol.closed_form_action));
      if (sol.closed_form_action2) {
        dist = std::min(dist, std::abs(p.lo - *sol.closed_form_action2));
      }
    }
    sol.closed_form_agrees = dist <= 1e-5;
  }
  return sol;
}

std::pair<double, double> extreme_plausible_actions(const DuopolyParams& params,
                                                    CstClass cst_class) {
  const DuopolyClosedForms cf = duopoly_closed_forms(params);
  switch (cst_class) {
    case CstClass::Simple:
      return {cf.simply_plausible.min_value(), cf.simply_plausible.max_value()};
    case CstClass::I:
      return {cf.i_plausible.min_value(), cf.i_plausible.max_value()};
    case CstClass::P:
    case CstClass::All:
      return {cf.x_min, cf.x_max};
  }
  throw BadParamsError("unknown CST class");
}

std::pair<double, double> extreme_plausible_actions(const GameSpec& spec,
                                                    CstClass cst_class) {
  const IntervalUnion set = plausible_set_for_class(spec, cst_class);
  return {set.min_value(), set.max_value()};
}

}  // namespace comlim
