#include "comlim/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "comlim/plausibility.hpp"

namespace comlim {

bool is_richer(const FiniteCst& k_prime, const FiniteCst& k, double tol) {
  for (const auto& e : k.elements) {
    bool found = false;
    for (const auto& ep : k_prime.elements) {
      if (e.set_equal(ep, tol)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace {

bool subset_condition(const FiniteCst& k_prime, const FiniteCst& k, double tol,
                      std::vector<std::vector<int>>& who_contains) {
  who_contains.assign(k.elements.size(), {});
  for (std::size_t i = 0; i < k_prime.elements.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < k.elements.size(); ++j) {
      if (k.elements[j].superset_of(k_prime.elements[i], tol)) {
        who_contains[j].push_back(static_cast<int>(i));
        found = true;
      }
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool is_finer(const FiniteCst& k_prime, const FiniteCst& k, double tol) {
  std::vector<std::vector<int>> who;
  if (!subset_condition(k_prime, k, tol, who)) return false;
  for (std::size_t j = 0; j < k.elements.size(); ++j) {
    IntervalUnion u;
    for (int i : who[j]) u = u.unite(k_prime.elements[i], tol);
    if (!u.set_equal(k.elements[j], tol)) return false;
  }
  return true;
}

bool is_finer_on_grid(const FiniteCst& k_prime, const FiniteCst& k,
                      const Grid& grid, double tol) {
  std::vector<std::vector<int>> who;
  if (!subset_condition(k_prime, k, tol, who)) return false;
  for (std::size_t j = 0; j < k.elements.size(); ++j) {
    for (double x : grid.points) {
      if (!k.elements[j].contains(x)) continue;
      bool covered = false;
      for (int i : who[j]) {
        if (k_prime.elements[i].contains(x)) {
          covered = true;
          break;
        }
      }
      if (!covered) return false;
    }
  }
  return true;
}

std::optional<bool> is_worse(const OracleContext& ctx, const FiniteCst& k_prime,
                             const FiniteCst& k) {
  const SpeResult base = spe_outcomes(ctx, k);
  if (base.no_equilibrium || base.outcomes.empty()) return std::nullopt;
  const SpeResult refined = spe_outcomes(ctx, k_prime);
  if (refined.no_equilibrium || refined.outcomes.empty()) return false;
  return refined.min_payoff() < base.min_payoff() - 10 * ctx.spec->tol.f_tol;
}

namespace {

struct WrtContext {
  const GameSpec* spec;
  IntervalUnion cournot;
  double probe_step;  // accumulation offsets scale with this
};

WrtContext make_wrt_context(const GameSpec& spec) {
  WrtContext w;
  w.spec = &spec;
  w.cournot = cournot_set(spec);
  w.probe_step = spec.leader_space.width() / (spec.tol.grid_n - 1);
  return w;
}

IntervalUnion piece_as_set(const IntervalPiece& p) {
  return IntervalUnion::from_pieces({p}, 0);
}

// Tests that pred holds on a trailing neighborhood of the endpoint e inside
// the interval: either exactly at an attained endpoint (a constant sequence)
// or on a ladder of offsets halving from 5 steps down to the resolution
// floor, standing in for a sequence converging to e.
bool accumulates_at(const std::function<bool(double)>& pred, double e,
                    bool e_attained, double inward_sign, double step,
                    double floor_delta, const IntervalPiece& box) {
  if (e_attained && pred(e)) return true;
  int tested = 0;
  for (double delta = 5.0 * step; delta >= floor_delta; delta *= 0.5) {
    const double t = e + inward_sign * delta;
    if (t < box.lo || t > box.hi) continue;
    ++tested;
    if (!pred(t)) return false;
  }
  return tested > 0;
}

WrtVerdict simply_wrt_impl(const WrtContext& w, double x_star,
                           const IntervalPiece& interval) {
  const GameSpec& spec = *w.spec;
  const Tolerances& tol = spec.tol;
  const double band = 10 * tol.x_tol;
  WrtVerdict out;

  const IntervalUnion box = piece_as_set(interval);
  if (!box.contains(x_star)) {
    throw BadParamsError("x_star must lie in the interval");
  }
  const double rf = best_response_follower(spec, x_star);
  const double s = best_response_leader(spec, rf) - x_star;
  const double u_star = spec.payoff_leader(x_star, rf);
  if (std::abs(s) <= band) {
    out.plausible = true;  // x_star is a Cournot action of the subgame
    return out;
  }

  // Condition (a): a Cournot action inside the interval, weakly worse for
  // the leader, on the same side as the deviation direction.
  const ActionSpace& xs = spec.leader_space;
  const IntervalUnion halfline =
      s > 0 ? IntervalUnion::interval(std::max(xs.lo, x_star - band), xs.hi)
            : IntervalUnion::interval(xs.lo, std::min(xs.hi, x_star + band));
  const IntervalUnion allowed = w.cournot.intersect(box).intersect(halfline);
  auto value = [&spec](double t) { return leader_value(spec, t); };
  for (const auto& piece : allowed.pieces()) {
    if (piece.is_point()) {
      if (value(piece.lo) <= u_star + tol.f_tol) {
        out.plausible = true;
        return out;
      }
    } else if (argmin_over(value, piece_as_set(piece), tol.x_tol, 65).second <=
               u_star + tol.f_tol) {
      out.plausible = true;
      return out;
    }
  }

  // Condition (b): the same-direction deviation region accumulates at the
  // interval's endpoint on the phi side.
  auto pred_banded = [&](double t) {
    const double yt = best_response_follower(spec, t);
    const double st = best_response_leader(spec, yt) - t;
    return spec.payoff_leader(t, yt) <= u_star + tol.f_tol && st * s > -band;
  };
  auto pred_strict = [&](double t) {
    const double yt = best_response_follower(spec, t);
    const double st = best_response_leader(spec, yt) - t;
    return spec.payoff_leader(t, yt) <= u_star - tol.f_tol && st * s > band;
  };
  const double e = s > 0 ? interval.hi : interval.lo;
  const bool attained = s > 0 ? interval.hi_closed : interval.lo_closed;
  const double inward = s > 0 ? -1.0 : 1.0;
  const double floor_delta = 100 * tol.x_tol;
  const bool banded = accumulates_at(pred_banded, e, attained, inward,
                                     w.probe_step, floor_delta, interval);
  const bool strict = accumulates_at(pred_strict, e, attained, inward,
                                     w.probe_step, floor_delta, interval);
  out.plausible = banded;
  out.boundary_ambiguous = banded != strict;
  return out;
}

WrtVerdict i_wrt_impl(const WrtContext& w, double x_star,
                      const IntervalPiece& interval) {
  const GameSpec& spec = *w.spec;
  const Tolerances& tol = spec.tol;
  const double band = 10 * tol.x_tol;
  WrtVerdict out;

  const IntervalUnion box = piece_as_set(interval);
  if (!box.contains(x_star)) {
    throw BadParamsError("x_star must lie in the interval");
  }
  const double u_star = leader_value(spec, x_star);

  auto contour_ok = [&](double u, double slack) { return u <= u_star + slack; };

  // (iii): a pair x' <= x'' inside the interval with phi(x') <= x',
  // phi(x'') >= x'', both in the lower contour set of x_star. Candidates are
  // uniform samples plus the target, the Cournot actions and the polished
  // local minima of U: when x_star attains the minimum of U, the contour set
  // has measure zero and only exact minima can form the pair.
  struct Cand {
    double t, u, resid;
  };
  std::vector<Cand> cands;
  auto probe = [&](double t) {
    const double yt = best_response_follower(spec, t);
    const double resid = best_response_leader(spec, yt) - t;
    cands.push_back({t, spec.payoff_leader(t, yt), resid});
  };
  const int n = std::max(129, static_cast<int>(interval.length() / w.probe_step) + 2);
  for (int k = 0; k < n; ++k) {
    double t = interval.is_point()
                   ? interval.lo
                   : std::min(interval.hi,
                              interval.lo + interval.length() * k / (n - 1));
    if ((t == interval.lo && !interval.lo_closed) ||
        (t == interval.hi && !interval.hi_closed)) {
      continue;
    }
    probe(t);
    if (interval.is_point()) break;
  }
  {
    auto value_at = [&spec](double t) { return leader_value(spec, t); };
    const std::size_t uniform_count = cands.size();
    for (std::size_t k = 1; k + 1 < uniform_count; ++k) {
      if (cands[k].u <= cands[k - 1].u && cands[k].u <= cands[k + 1].u) {
        const double t = maximize_concave([&](double s) { return -value_at(s); },
                                          nullptr, nullptr, cands[k - 1].t,
                                          cands[k + 1].t, tol.x_tol, tol.f_tol);
        probe(t);
      }
    }
  }
  probe(x_star);
  const IntervalUnion cournot_inside = w.cournot.intersect(box);
  for (const auto& piece : cournot_inside.pieces()) probe(piece.lo);
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.t < b.t; });

  bool have_a_banded = false, have_a_strict = false;
  bool pair_banded = false, pair_strict = false;
  for (const Cand& c : cands) {
    if (contour_ok(c.u, tol.f_tol) && c.resid <= band) have_a_banded = true;
    if (contour_ok(c.u, -tol.f_tol) && c.resid < -band) have_a_strict = true;
    if (contour_ok(c.u, tol.f_tol) && c.resid >= -band && have_a_banded) {
      pair_banded = true;
      break;
    }
    if (contour_ok(c.u, -tol.f_tol) && c.resid > band && have_a_strict) {
      pair_strict = true;
    }
  }

  // (i) and (ii): one-sided accumulation at the endpoints.
  auto pred_geq = [&](double slack_sign) {
    return [&, slack_sign](double t) {
      const double yt = best_response_follower(spec, t);
      const double resid = best_response_leader(spec, yt) - t;
      return contour_ok(spec.payoff_leader(t, yt), slack_sign * tol.f_tol) &&
             resid >= (slack_sign > 0 ? -band : band);
    };
  };
  auto pred_leq = [&](double slack_sign) {
    return [&, slack_sign](double t) {
      const double yt = best_response_follower(spec, t);
      const double resid = best_response_leader(spec, yt) - t;
      return contour_ok(spec.payoff_leader(t, yt), slack_sign * tol.f_tol) &&
             resid <= (slack_sign > 0 ? band : -band);
    };
  };
  const double floor_delta = 100 * tol.x_tol;
  const bool acc_sup_banded =
      accumulates_at(pred_geq(+1), interval.hi, interval.hi_closed, -1.0,
                     w.probe_step, floor_delta, interval);
  const bool acc_sup_strict =
      accumulates_at(pred_geq(-1), interval.hi, interval.hi_closed, -1.0,
                     w.probe_step, floor_delta, interval);
  const bool acc_inf_banded =
      accumulates_at(pred_leq(+1), interval.lo, interval.lo_closed, 1.0,
                     w.probe_step, floor_delta, interval);
  const bool acc_inf_strict =
      accumulates_at(pred_leq(-1), interval.lo, interval.lo_closed, 1.0,
                     w.probe_step, floor_delta, interval);

  const bool banded = pair_banded || acc_sup_banded || acc_inf_banded;
  const bool strict = pair_strict || acc_sup_strict || acc_inf_strict;
  out.plausible = banded;
  out.boundary_ambiguous = banded != strict;
  return out;
}

}  // namespace

WrtVerdict simply_plausible_wrt(const GameSpec& spec, double x_star,
                                const IntervalPiece& interval) {
  return simply_wrt_impl(make_wrt_context(spec), x_star, interval);
}

WrtVerdict i_plausible_wrt(const GameSpec& spec, double x_star,
                           const IntervalPiece& interval) {
  return i_wrt_impl(make_wrt_context(spec), x_star, interval);
}

WorseRefinement worse_refinement_search(const GameSpec& spec, const FiniteCst& k,
                                        int grid_n) {
  if (grid_n <= 0) grid_n = std::max(201, spec.tol.grid_n / 4);
  const double tol = spec.tol.merge_tol();

  // Simple = interval partition: single-piece elements, pairwise disjoint,
  // jointly covering the leader space. A CST made of singletons only is
  // accepted as the partition of its own finite action menu.
  IntervalUnion covered;
  std::vector<IntervalPiece> elems;
  bool all_points = true;
  for (const auto& e : k.elements) {
    if (e.pieces().size() != 1) throw NotSimpleError("element is not an interval");
    const IntervalPiece p = e.pieces().front();
    all_points = all_points && p.is_point();
    for (const auto& q : elems) {
      const bool disjoint = p.hi < q.lo || q.hi < p.lo ||
                            (p.hi == q.lo && !(p.hi_closed && q.lo_closed)) ||
                            (q.hi == p.lo && !(q.hi_closed && p.lo_closed));
      if (!disjoint) throw NotSimpleError("elements overlap");
    }
    elems.push_back(p);
    covered = covered.unite(e, tol);
  }
  if (!all_points &&
      !covered.set_equal(IntervalUnion::whole(spec.leader_space), tol)) {
    throw NotSimpleError("elements do not cover the action space");
  }

  const WrtContext w = make_wrt_context(spec);
  auto value = [&spec](double t) { return leader_value(spec, t); };

  WorseRefinement out;
  double u_bar = -std::numeric_limits<double>::infinity();
  for (const auto& p : elems) {
    IntervalUnion wrt;
    if (p.is_point()) {
      if (simply_wrt_impl(w, p.lo, p).plausible) wrt = IntervalUnion::point(p.lo);
    } else {
      ActionSpace sub{p.lo, p.hi};
      auto pred = [&](double t) {
        if (!piece_as_set(p).contains(t)) return false;
        return simply_wrt_impl(w, t, p).plausible;
      };
      std::vector<double> hints = representative_points(w.cournot);
      const int sub_n = std::max(
          65, static_cast<int>(grid_n * p.length() / spec.leader_space.width()) + 2);
      wrt = from_predicate(pred, sub, sub_n, hints, spec.tol.x_tol);
    }
    out.wrt_sets.push_back(wrt);
    if (wrt.is_empty()) {
      out.witnesses.emplace_back(std::numeric_limits<double>::quiet_NaN(),
                                 std::numeric_limits<double>::infinity());
      u_bar = std::numeric_limits<double>::infinity();
      continue;
    }
    const auto [arg, low] = argmin_over(value, wrt, spec.tol.x_tol, 257);
    out.witnesses.emplace_back(arg, low);
    u_bar = std::max(u_bar, low);
  }
  out.u_bar = u_bar;

  std::vector<double> hints = representative_points(w.cournot);
  for (const auto& p : elems) {
    hints.push_back(p.lo);
    hints.push_back(p.hi);
  }
  // An all-singleton CST is a game on exactly those actions.
  const Grid grid = all_points
                        ? Grid::build(spec.leader_space, 2, hints)
                        : Grid::build(spec.leader_space, grid_n, hints);
  const OracleContext ctx = OracleContext::build(spec, grid);
  const SpeResult spe = spe_outcomes(ctx, k);
  if (spe.no_equilibrium || spe.outcomes.empty()) {
    out.no_equilibrium = true;
    return out;
  }
  out.spe_min_payoff = spe.min_payoff();
  // The strictness margin must dominate the boundary noise of the relative
  // plausible sets (a few hundred x_tol of action resolution): gaps below it
  // are knife edges, not refinement opportunities.
  out.exists = std::isfinite(u_bar) && out.spe_min_payoff > u_bar + 1e-6;

  // u_bar is a minimum of a continuous function over a numerically closed
  // set; flag it as unattained only when an argmin hugs an open endpoint.
  for (std::size_t i = 0; i < elems.size() && out.exists; ++i) {
    const auto& p = elems[i];
    const double a = out.witnesses[i].first;
    if (!p.lo_closed && std::abs(a - p.lo) <= 2 * spec.tol.x_tol) out.attained = false;
    if (!p.hi_closed && std::abs(a - p.hi) <= 2 * spec.tol.x_tol) out.attained = false;
  }
  return out;
}

}  // namespace comlim
