#pragma once

#include <functional>
#include <optional>
#include <string>

#include "comlim/errors.hpp"
#include "comlim/interval_union.hpp"

namespace comlim {

struct Tolerances {
  double x_tol = 1e-9;    // action resolution of 1-D searches
  double f_tol = 1e-10;   // payoff resolution for ties and sign bands
  double fd_step = 1e-6;  // central-difference step for numeric partials
  int grid_n = 2001;      // default sweep resolution

  double merge_tol() const { return 10 * x_tol; }
};

void validate(const Tolerances& t);

/// Partial derivatives of both payoffs at an outcome (x, y). The follower's
/// derivatives are taken with respect to her own action y first.
struct PartialDerivatives {
  double u1 = 0, u2 = 0, u11 = 0, u12 = 0;
  double v1 = 0, v2 = 0, v11 = 0, v12 = 0;
};

/// A two-player leader-follower game on compact rectangular action spaces.
/// payoff_leader is u(x, y); payoff_follower is v(y, x) with the follower's
/// own action first. Both payoffs must be strictly concave in the own action.
struct GameSpec {
  ActionSpace leader_space;
  ActionSpace follower_space;
  std::function<double(double, double)> payoff_leader;
  std::function<double(double, double)> payoff_follower;
  std::function<PartialDerivatives(double, double)> analytic_partials;  // may be empty
  Tolerances tol;
  std::string label;

  bool has_partials() const { return static_cast<bool>(analytic_partials); }
};

/// Checks finiteness and strict own-action concavity of both payoffs on a
/// probe grid; throws NonConcaveError or BadParamsError on violation.
void validate_game(const GameSpec& spec, int probe_n = 17);

/// Partials at (x, y): analytic when supplied, central differences otherwise.
PartialDerivatives partials_at(const GameSpec& spec, double x, double y);

/// The follower's unique best response to the leader action x.
double best_response_follower(const GameSpec& spec, double x);

/// The leader's unique best response to the follower action y.
double best_response_leader(const GameSpec& spec, double y);

/// phi(x) = R_L(R_F(x)); its fixed points are the leader's Cournot actions.
double phi(const GameSpec& spec, double x);

/// U(x) = u(x, R_F(x)), the leader's value of x under follower best response.
double leader_value(const GameSpec& spec, double x);

/// eta(x_tilde, x) = u(x_tilde, R_F(x)) - u(x, R_F(x)): the leader's gain
/// from deviating to x_tilde while the follower best-responds to x.
double eta(const GameSpec& spec, double x_tilde, double x);

/// Same with the follower response y = R_F(x) supplied by the caller.
double eta_given_response(const GameSpec& spec, double x_tilde, double x, double y);

/// The action distinct from x at which the leader is indifferent under the
/// follower's best response to x. When eta(., x) has no second root in the
/// leader space, falls back to the boundary away from the Cournot action
/// `cournot` (or to `cournot` itself when x is the Cournot action).
double gamma_action(const GameSpec& spec, double x, double cournot);

/// Strictly concave 1-D maximization on [lo, hi]: derivative-sign bisection
/// when df is given, golden section otherwise; either way to x_tol.
double maximize_concave(const std::function<double(double)>& f,
                        const std::function<double(double)>& df,
                        const std::function<double(double)>& d2f, double lo,
                        double hi, double x_tol, double f_tol);

}  // namespace comlim
