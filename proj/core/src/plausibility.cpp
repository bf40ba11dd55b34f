#include "comlim/plausibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace comlim {

RcReport check_rc(const GameSpec& spec, int probe_n) {
  RcReport rc;

  const IntervalUnion cournot = cournot_set(spec);
  if (cournot.pieces().size() == 1 && cournot.pieces().front().is_point()) {
    const double xc = cournot.pieces().front().lo;
    const double yc = best_response_follower(spec, xc);
    const double mx = std::max(100 * spec.tol.x_tol,
                               1e-9 * spec.leader_space.width());
    const double my = std::max(100 * spec.tol.x_tol,
                               1e-9 * spec.follower_space.width());
    rc.rc1 = xc > spec.leader_space.lo + mx && xc < spec.leader_space.hi - mx &&
             yc > spec.follower_space.lo + my && yc < spec.follower_space.hi - my;
    rc.x_cournot = xc;
    rc.y_cournot = yc;
  }

  // Interior probe grid: the conditions are strict-sign requirements, so the
  // closed boundary (where u2 may vanish, e.g. at zero quantity) is skipped.
  double min_u2v2 = std::numeric_limits<double>::infinity();
  double min_u12v12 = std::numeric_limits<double>::infinity();
  int sign_seen = 0;
  bool sign_mixed = false;
  for (int i = 0; i < probe_n; ++i) {
    for (int j = 0; j < probe_n; ++j) {
      const double x = spec.leader_space.lo +
                       spec.leader_space.width() * (i + 0.5) / probe_n;
      const double y = spec.follower_space.lo +
                       spec.follower_space.width() * (j + 0.5) / probe_n;
      const PartialDerivatives p = partials_at(spec, x, y);
      min_u2v2 = std::min(min_u2v2, p.u2 * p.v2);
      min_u12v12 = std::min(min_u12v12, p.u12 * p.v12);
      const int s = p.u2 * p.u12 > 0 ? 1 : (p.u2 * p.u12 < 0 ? -1 : 0);
      if (s != 0) {
        if (sign_seen == 0) sign_seen = s;
        if (sign_seen != s) sign_mixed = true;
      }
    }
  }
  rc.rc2 = min_u2v2 > 0;
  rc.rc3 = min_u12v12 > 0;
  if (rc.rc2 && rc.rc3 && !sign_mixed) rc.sign_u2_u12 = sign_seen;
  if (sign_mixed) rc.rc2 = rc.rc3 = false;
  return rc;
}

IntervalUnion simply_plausible_set(const GameSpec& spec) {
  const Tolerances& tol = spec.tol;
  const IntervalUnion cournot = cournot_set(spec);
  const IntervalUnion stack = stackelberg_set(spec);

  std::vector<double> hints = representative_points(cournot);
  for (double p : representative_points(stack)) hints.push_back(p);

  const double band = 10 * tol.x_tol;
  // The contour comparison carries only rounding slack: a payoff-scale band
  // would thicken isolated solutions quadratically (1e-10 of payoff slack
  // around a payoff peak is several 1e-6 of action width).
  const double u_slack = 1e-14;
  auto value = [&spec](double t) { return leader_value(spec, t); };
  auto pred = [&](double x_star) {
    const double rf = best_response_follower(spec, x_star);
    const double ph = best_response_leader(spec, rf);
    const double s = ph - x_star;
    if (std::abs(s) <= band) return true;  // x_star is itself a Cournot action
    const double u_star = spec.payoff_leader(x_star, rf);

    const ActionSpace& xs = spec.leader_space;
    const IntervalUnion halfline =
        s > 0 ? IntervalUnion::interval(std::max(xs.lo, x_star - band), xs.hi)
              : IntervalUnion::interval(xs.lo, std::min(xs.hi, x_star + band));
    const IntervalUnion allowed = cournot.intersect(halfline);
    if (allowed.is_empty()) return false;
    for (const auto& piece : allowed.pieces()) {
      if (piece.is_point()) {
        if (value(piece.lo) <= u_star + u_slack) return true;
      } else {
        const auto [xm, vm] = argmin_over(value, IntervalUnion::interval(piece.lo, piece.hi),
                                          tol.x_tol, 65);
        (void)xm;
        if (vm <= u_star + u_slack) return true;
      }
    }
    return false;
  };
  return from_predicate(pred, spec.leader_space, tol.grid_n, hints, tol.x_tol);
}

namespace {

// The I-plausibility threshold: the lowest level L such that {U <= L}
// contains a pair x' <= x'' with phi(x') <= x' and phi(x'') >= x''. Because
// membership only depends on U(x*), the I-plausible set is the upper contour
// set of this threshold.
double i_plausible_threshold(const GameSpec& spec, const SampledCurves& c,
                             const IntervalUnion& cournot) {
  const double band = 10 * spec.tol.x_tol;
  double lambda = std::numeric_limits<double>::infinity();
  double run_min_a = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < c.x.size(); ++i) {
    const double resid = c.image[i] - c.x[i];
    if (resid <= band) run_min_a = std::min(run_min_a, c.value[i]);
    if (resid >= -band) {
      lambda = std::min(lambda, std::max(c.value[i], run_min_a));
    }
  }
  for (double p : representative_points(cournot)) {
    lambda = std::min(lambda, leader_value(spec, p));
  }
  return lambda;
}

}  // namespace

IntervalUnion i_plausible_set(const GameSpec& spec) {
  const IntervalUnion cournot = cournot_set(spec);
  const IntervalUnion stack = stackelberg_set(spec);
  std::vector<double> hints = representative_points(cournot);
  for (double p : representative_points(stack)) hints.push_back(p);

  const SampledCurves c = SampledCurves::build(spec, spec.tol.grid_n, hints);
  const double lambda = i_plausible_threshold(spec, c, cournot);
  return contour_set(spec, lambda, Direction::Geq, hints);
}

PPlausibility p_plausible_set(const GameSpec& spec) {
  const RcReport rc = check_rc(spec);
  if (!rc.holds()) {
    throw RcViolatedError("p_plausible_set requires RC1-RC3");
  }
  const Tolerances& tol = spec.tol;
  const double xc = rc.x_cournot;
  const double band = 10 * tol.x_tol;

  auto gamma_of = [&](double x) { return gamma_action(spec, x, xc); };
  auto pred_s = [&](double x) {
    const double g = gamma_of(x);
    if (rc.sign_u2_u12 > 0) return x <= g + band && g <= xc + band;
    return xc <= g + band && g <= x + band;
  };
  std::vector<double> s_hints{xc};
  PPlausibility out;
  out.s_set = from_predicate(pred_s, spec.leader_space, tol.grid_n, s_hints, tol.x_tol);
  if (out.s_set.is_empty()) {
    throw InternalError("the indifference set S must contain the Cournot action");
  }

  auto value_of_gamma = [&](double x) { return leader_value(spec, gamma_of(x)); };
  const auto [arg, low] = argmin_over(value_of_gamma, out.s_set, tol.x_tol, 1001);
  (void)arg;
  out.underline_u = low;

  const IntervalUnion stack = stackelberg_set(spec);
  std::vector<double> hints{xc};
  for (double p : representative_points(stack)) hints.push_back(p);
  out.set = contour_set(spec, out.underline_u, Direction::Geq, hints);
  return out;
}

LowerBoundDiagnostics lower_bound_diagnostics(const GameSpec& spec) {
  LowerBoundDiagnostics d;
  const SampledCurves c = SampledCurves::build(spec, spec.tol.grid_n);
  bool strict_local_max = false, strict_local_min = false;
  for (std::size_t i = 1; i + 1 < c.x.size(); ++i) {
    if (c.value[i] > c.value[i - 1] + spec.tol.f_tol &&
        c.value[i] > c.value[i + 1] + spec.tol.f_tol) {
      strict_local_max = true;
    }
    if (c.value[i] < c.value[i - 1] - spec.tol.f_tol &&
        c.value[i] < c.value[i + 1] - spec.tol.f_tol) {
      strict_local_min = true;
    }
  }
  d.u_quasiconvex = !strict_local_max;
  d.u_quasiconcave = !strict_local_min;

  const RcReport rc = check_rc(spec);
  d.rc_holds = rc.holds();
  if (!d.rc_holds) return d;

  const double fd = spec.tol.fd_step;
  const double xc = rc.x_cournot, yc = rc.y_cournot;
  const double rfp = (best_response_follower(spec, xc + fd) -
                      best_response_follower(spec, xc - fd)) /
                     (2 * fd);
  const double rlp = (best_response_leader(spec, yc + fd) -
                      best_response_leader(spec, yc - fd)) /
                     (2 * fd);
  d.slope_product = rlp * rfp;
  d.slope_predicate = *d.slope_product > 0.5;
  const PPlausibility pp = p_plausible_set(spec);
  d.underline_u = pp.underline_u;
  d.u_at_cournot = leader_value(spec, xc);
  d.predicate_consistent =
      !*d.slope_predicate || (*d.underline_u < *d.u_at_cournot - 1e-12);
  return d;
}

PlausibilityReport plausibility_report(const GameSpec& spec) {
  PlausibilityReport r;
  r.rc = check_rc(spec);
  r.simple = simply_plausible_set(spec);
  r.i_plausible = i_plausible_set(spec);
  if (r.rc.holds()) {
    PPlausibility pp = p_plausible_set(spec);
    r.p_plausible = std::move(pp.set);
    r.s_set = std::move(pp.s_set);
    r.underline_u = pp.underline_u;
  }
  return r;
}

}  // namespace comlim
