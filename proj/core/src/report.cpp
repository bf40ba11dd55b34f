#include "comlim/report.hpp"

#include <cmath>

namespace comlim {

JsonValue to_json(const IntervalUnion& set) {
  JsonValue arr = JsonValue::array();
  for (const auto& p : set.pieces()) {
    JsonValue piece = JsonValue::object();
    piece.set("lo", JsonValue::of(p.lo));
    piece.set("hi", JsonValue::of(p.hi));
    piece.set("lo_closed", JsonValue::of(p.lo_closed));
    piece.set("hi_closed", JsonValue::of(p.hi_closed));
    arr.push(std::move(piece));
  }
  return arr;
}

JsonValue to_json(const FiniteCst& cst, const OracleContext& ctx) {
  JsonValue o = JsonValue::object();
  o.set("literal", JsonValue::of(to_literal(cst)));
  JsonValue elems = JsonValue::array();
  for (const auto& e : cst.elements) {
    JsonValue ids = JsonValue::array();
    for (int i = 0; i < ctx.grid.size(); ++i) {
      if (e.contains(ctx.grid.points[i])) ids.push(JsonValue::of(i));
    }
    elems.push(std::move(ids));
  }
  o.set("element_indices", std::move(elems));
  return o;
}

JsonValue to_json(const RcReport& rc) {
  JsonValue o = JsonValue::object();
  o.set("rc1", JsonValue::of(rc.rc1));
  o.set("rc2", JsonValue::of(rc.rc2));
  o.set("rc3", JsonValue::of(rc.rc3));
  if (rc.rc2 && rc.rc3) {
    o.set("sign_u2_u12", JsonValue::of(rc.sign_u2_u12 > 0 ? "+" : "-"));
  } else {
    o.set("sign_u2_u12", JsonValue());
  }
  if (rc.rc1) {
    o.set("x_cournot", JsonValue::of(rc.x_cournot));
    o.set("y_cournot", JsonValue::of(rc.y_cournot));
  }
  return o;
}

JsonValue to_json(const EquilibriumReport& eq) {
  JsonValue o = JsonValue::object();
  o.set("cournot", to_json(eq.cournot));
  o.set("stackelberg", to_json(eq.stackelberg));
  JsonValue u = JsonValue::array();
  for (double v : eq.u_at_cournot) u.push(JsonValue::of(v));
  o.set("u_at_cournot", std::move(u));
  o.set("u_max", JsonValue::of(eq.u_max));
  return o;
}

JsonValue to_json(const PlausibilityReport& pl) {
  JsonValue o = JsonValue::object();
  o.set("simple", to_json(pl.simple));
  o.set("i_plausible", to_json(pl.i_plausible));
  o.set("p_plausible", pl.p_plausible ? to_json(*pl.p_plausible) : JsonValue());
  o.set("s_set", pl.s_set ? to_json(*pl.s_set) : JsonValue());
  o.set("underline_u",
        pl.underline_u ? JsonValue::of(*pl.underline_u) : JsonValue());
  o.set("rc", to_json(pl.rc));
  // Endpoint openness of the characterized sets is reported closed by
  // convention; knife-edge membership is not numerically decidable.
  o.set("boundary_convention", JsonValue::of("closed"));
  return o;
}

JsonValue to_json(const LowerBoundDiagnostics& d) {
  JsonValue o = JsonValue::object();
  o.set("u_quasiconvex", JsonValue::of(d.u_quasiconvex));
  o.set("u_quasiconcave", JsonValue::of(d.u_quasiconcave));
  o.set("rc_holds", JsonValue::of(d.rc_holds));
  o.set("slope_product",
        d.slope_product ? JsonValue::of(*d.slope_product) : JsonValue());
  o.set("slope_predicate",
        d.slope_predicate ? JsonValue::of(*d.slope_predicate) : JsonValue());
  o.set("underline_u", d.underline_u ? JsonValue::of(*d.underline_u) : JsonValue());
  o.set("u_at_cournot",
        d.u_at_cournot ? JsonValue::of(*d.u_at_cournot) : JsonValue());
  o.set("predicate_consistent", d.predicate_consistent
                                    ? JsonValue::of(*d.predicate_consistent)
                                    : JsonValue());
  return o;
}

JsonValue to_json(const SpeResult& spe) {
  JsonValue o = JsonValue::object();
  o.set("no_equilibrium", JsonValue::of(spe.no_equilibrium));
  JsonValue arr = JsonValue::array();
  for (const auto& oc : spe.outcomes) {
    JsonValue one = JsonValue::object();
    one.set("leader_action", JsonValue::of(oc.leader_action));
    one.set("follower_action", JsonValue::of(oc.follower_action));
    one.set("leader_payoff", JsonValue::of(oc.leader_payoff));
    one.set("element", JsonValue::of(oc.element));
    arr.push(std::move(one));
  }
  o.set("outcomes", std::move(arr));
  JsonValue adm = JsonValue::array();
  for (const auto& ids : spe.admissible) {
    JsonValue a = JsonValue::array();
    for (int i : ids) a.push(JsonValue::of(i));
    adm.push(std::move(a));
  }
  o.set("admissible_indices", std::move(adm));
  return o;
}

JsonValue to_json(const EquivalenceReport& eq) {
  JsonValue o = JsonValue::object();
  o.set("grid_points", JsonValue::of(static_cast<int>(eq.points.size())));
  o.set("h", JsonValue::of(eq.h));
  o.set("agreements", JsonValue::of(eq.agreements));
  JsonValue d = JsonValue::array();
  for (double x : eq.discrepancies) d.push(JsonValue::of(x));
  o.set("discrepancies", std::move(d));
  int oracle_count = 0, theorem_count = 0;
  for (char c : eq.oracle_member) oracle_count += c;
  for (char c : eq.theorem_member) theorem_count += c;
  o.set("oracle_members", JsonValue::of(oracle_count));
  o.set("theorem_members", JsonValue::of(theorem_count));
  return o;
}

JsonValue to_json(const WorseRefinement& w) {
  JsonValue o = JsonValue::object();
  o.set("exists", JsonValue::of(w.exists));
  o.set("no_equilibrium", JsonValue::of(w.no_equilibrium));
  if (w.exists) {
    o.set("u_bar", JsonValue::of(w.u_bar));
    o.set("attained", JsonValue::of(w.attained));
  } else {
    o.set("u_bar", JsonValue());
    o.set("attained", JsonValue());
  }
  o.set("spe_min_payoff", JsonValue::of(w.spe_min_payoff));
  JsonValue wit = JsonValue::array();
  for (std::size_t i = 0; i < w.witnesses.size(); ++i) {
    JsonValue one = JsonValue::object();
    one.set("element", JsonValue::of(static_cast<int>(i)));
    if (std::isfinite(w.witnesses[i].first)) {
      one.set("action", JsonValue::of(w.witnesses[i].first));
      one.set("value", JsonValue::of(w.witnesses[i].second));
    } else {
      one.set("action", JsonValue());
      one.set("value", JsonValue());
    }
    one.set("wrt_set", to_json(w.wrt_sets[i]));
    wit.push(std::move(one));
  }
  o.set("witnesses", std::move(wit));
  return o;
}

}  // namespace comlim
