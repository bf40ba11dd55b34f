#pragma once

#include <iosfwd>
#include <string>

#include "comlim/game.hpp"
#include "comlim/interval_union.hpp"

namespace comlim {

/// Symmetric quantity-setting duopoly. A firm producing q incurs cost
/// 3q - r q^2/2 and sells at price 4 - (1-d)Q - d q, which normalizes to
/// u(x, y) = x - (1-d) x y - (1 - r/2) x^2 on [0, 2/(2-r)]^2.
struct DuopolyParams {
  double r = 0.8;  // returns to scale, r < 2
  double d = 0.0;  // product differentiation, in [0, 1]
};

/// Symmetric coordination game on [0, 1]^2 with payoff
/// u(x, y) = x y + (1-x)(1-y) - (x-1/2)^2/2 - 3(1+a)(y-1/2)^2/2.
struct CoordinationParams {
  double a = 0.0;  // a >= 0
};

GameSpec make_duopoly(const DuopolyParams& p);
GameSpec make_coordination(const CoordinationParams& p);

/// Loads a symmetric game from a CSV payoff matrix (leader rows, follower
/// columns; first row and column carry the grid coordinates) and evaluates
/// it by bilinear interpolation. Suitable for oracle analysis only.
GameSpec make_tabulated(std::istream& csv, const std::string& label = "tabulated");
GameSpec make_tabulated_file(const std::string& path);

/// Regime thresholds of the duopoly family as functions of d.
struct ThresholdRow {
  double r_star = 0;    // 2 - sqrt(2)(1-d)
  double r_2star = 0;   // simply-plausible upper-endpoint regime switch
  double r_3star = 0;   // Stackelberg regime switch
  double r_dag = 0;     // producer-surplus regime switch
  double r_2dag = 0;    // 2 - sqrt(3)(1-d)
  double r_3dag = 0;    // consumer-surplus comparison switch
};

ThresholdRow thresholds(double d);

/// Closed-form reference quantities for a duopoly parameterization; every
/// branch is selected by exact comparisons with a 1e-12 knife-edge band.
struct DuopolyClosedForms {
  double x_cournot_interior = 0;  // 1/(3-r-d)
  double x_monopoly = 0;          // 1/(2-r)
  double x_stackelberg = 0;
  double gamma_at_zero = 0;  // 2(d+1-r)/(2-r)^2
  IntervalUnion cournot;
  IntervalUnion simply_plausible;
  IntervalUnion i_plausible;
  IntervalUnion plausible;
  double x_min = 0;  // smallest plausible action over all CSTs
  double x_max = 0;  // largest plausible action over all CSTs
  std::string regime;
};

DuopolyClosedForms duopoly_closed_forms(const DuopolyParams& p);

/// Closed-form follower response and leader value, used as cross-checks
/// against the numeric path.
double duopoly_response(const DuopolyParams& p, double x);
double duopoly_value(const DuopolyParams& p, double x);
double duopoly_phi(const DuopolyParams& p, double x);

}  // namespace comlim
