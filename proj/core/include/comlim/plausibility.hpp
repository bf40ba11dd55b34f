#pragma once

#include <optional>

#include "comlim/equilibria.hpp"
#include "comlim/game.hpp"
#include "comlim/interval_union.hpp"

namespace comlim {

/// Sampled verdicts on the three regularity conditions: a unique interior
/// Cournot outcome, payoff externalities of constant sign (u2 v2 > 0), and
/// strategic interaction of constant sign (u12 v12 > 0).
struct RcReport {
  bool rc1 = false;
  bool rc2 = false;
  bool rc3 = false;
  int sign_u2_u12 = 0;  // +1 or -1 when rc2 and rc3 hold
  double x_cournot = 0;
  double y_cournot = 0;

  bool holds() const { return rc1 && rc2 && rc3; }
};

RcReport check_rc(const GameSpec& spec, int probe_n = 41);

/// Actions attainable in equilibrium under interval-partition commitment
/// structures: x* qualifies iff some Cournot action lies in the lower
/// contour set of x* on the same side as phi(x*) - x*.
IntervalUnion simply_plausible_set(const GameSpec& spec);

/// Actions attainable under interval (not necessarily disjoint) commitment
/// structures: the lower contour set of x* must contain x' <= x'' with
/// phi(x') <= x' and x'' <= phi(x'').
IntervalUnion i_plausible_set(const GameSpec& spec);

struct PPlausibility {
  IntervalUnion set;      // upper level set of underline_u
  double underline_u = 0; // min of U(gamma(x)) over the compact set s_set
  IntervalUnion s_set;
};

/// Actions attainable under partitional commitment structures; requires the
/// regularity conditions and throws RcViolatedError otherwise.
PPlausibility p_plausible_set(const GameSpec& spec);

struct LowerBoundDiagnostics {
  bool u_quasiconvex = false;
  bool u_quasiconcave = false;
  bool rc_holds = false;
  std::optional<double> slope_product;  // R_L'(yC) * R_F'(xC), central differences
  std::optional<bool> slope_predicate;  // slope_product > 1/2
  std::optional<double> underline_u;
  std::optional<double> u_at_cournot;
  std::optional<bool> predicate_consistent;
};

LowerBoundDiagnostics lower_bound_diagnostics(const GameSpec& spec);

struct PlausibilityReport {
  IntervalUnion simple;
  IntervalUnion i_plausible;
  std::optional<IntervalUnion> p_plausible;
  std::optional<IntervalUnion> s_set;
  std::optional<double> underline_u;
  RcReport rc;
};

PlausibilityReport plausibility_report(const GameSpec& spec);

}  // namespace comlim
