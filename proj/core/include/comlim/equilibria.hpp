#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "comlim/game.hpp"
#include "comlim/interval_union.hpp"

namespace comlim {

/// Follower response, leader value and phi sampled on a shared grid.
/// The grid always contains both space endpoints plus any hint points.
struct SampledCurves {
  std::vector<double> x;
  std::vector<double> response;  // R_F(x)
  std::vector<double> value;     // U(x)
  std::vector<double> image;     // phi(x)

  static SampledCurves build(const GameSpec& spec, int n,
                             std::span<const double> hints = {});
};

enum class Direction { Geq, Gt, Leq, Lt };

/// All fixed points of phi. Isolated fixed points are returned as point
/// pieces; a continuum of fixed points is returned as interval pieces.
IntervalUnion cournot_set(const GameSpec& spec);

/// The global argmax set of U, with exact payoff ties reported as a set.
IntervalUnion stackelberg_set(const GameSpec& spec);

/// The contour set {x : U(x) dir level}. Weak directions yield closed
/// boundaries, strict ones open boundaries.
IntervalUnion contour_set(const GameSpec& spec, double level, Direction dir);
IntervalUnion contour_set(const GameSpec& spec, double level, Direction dir,
                          std::span<const double> hints);

struct EquilibriumReport {
  IntervalUnion cournot;
  IntervalUnion stackelberg;
  std::vector<double> u_at_cournot;
  double u_max = 0;
};

EquilibriumReport equilibrium_report(const GameSpec& spec);

/// Piece endpoints (and isolated points) of a set, used as hint points and
/// as candidate equilibrium actions.
std::vector<double> representative_points(const IntervalUnion& set);

/// Grid-first minimization of a continuous function over an interval union;
/// returns (argmin, min). Not restricted to unimodal functions: every piece
/// is scanned before the local polish.
std::pair<double, double> argmin_over(const std::function<double(double)>& f,
                                      const IntervalUnion& region, double x_tol,
                                      int per_piece_grid = 129);
std::pair<double, double> argmax_over(const std::function<double(double)>& f,
                                      const IntervalUnion& region, double x_tol,
                                      int per_piece_grid = 129);

}  // namespace comlim
