#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "comlim/errors.hpp"

namespace comlim {

/// Compact interval of actions available to one player.
struct ActionSpace {
  double lo = 0.0;
  double hi = 1.0;

  double width() const { return hi - lo; }
  double clamp(double x) const { return x < lo ? lo : (x > hi ? hi : x); }
  bool contains(double x, double tol = 0.0) const {
    return x >= lo - tol && x <= hi + tol;
  }
};

void validate(const ActionSpace& s);

/// One maximal interval of an IntervalUnion. lo == hi is allowed only as a
/// doubly-closed isolated point.
struct IntervalPiece {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool is_point() const { return lo == hi; }
  double length() const { return hi - lo; }
};

inline constexpr double kDefaultMergeTol = 1e-8;

/// Finite union of disjoint intervals of one action space, ordered by lo.
/// Values are immutable after construction; every operation returns a new set.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  static IntervalUnion empty() { return IntervalUnion(); }
  static IntervalUnion interval(double lo, double hi, bool lo_closed = true,
                                bool hi_closed = true);
  static IntervalUnion point(double x) { return interval(x, x, true, true); }
  static IntervalUnion whole(const ActionSpace& s) { return interval(s.lo, s.hi); }
  static IntervalUnion from_pieces(std::vector<IntervalPiece> pieces,
                                   double merge_tol = kDefaultMergeTol);

  bool is_empty() const { return pieces_.empty(); }
  const std::vector<IntervalPiece>& pieces() const { return pieces_; }

  /// Exact membership with respect to the stored openness flags.
  bool contains(double x) const;

  /// 0 when x lies in the closure of the set.
  double distance_to(double x) const;

  double min_value() const;  // inf of the set; throws EmptySetError
  double max_value() const;  // sup of the set; throws EmptySetError
  double measure() const;

  IntervalUnion unite(const IntervalUnion& other,
                      double merge_tol = kDefaultMergeTol) const;
  IntervalUnion intersect(const IntervalUnion& other) const;
  IntervalUnion complement(const ActionSpace& ambient) const;

  /// other is contained in this set dilated by tol.
  bool superset_of(const IntervalUnion& other, double tol) const;
  bool set_equal(const IntervalUnion& other, double tol) const;
  double symmetric_difference_measure(const IntervalUnion& other) const;

  /// Mathematical notation, e.g. "{0} u [0.294,2.5)".
  std::string to_string() const;

 private:
  std::vector<IntervalPiece> pieces_;
};

/// Recovers {x : pred(x)} as an IntervalUnion. pred is sampled on a uniform
/// grid of grid_n points plus the hint points, and every boundary between
/// samples of opposite truth value is refined by bisection to x_tol. True
/// regions narrower than the grid spacing are found only if a hint point
/// lands inside them; callers pass equilibrium actions and space endpoints.
IntervalUnion from_predicate(const std::function<bool(double)>& pred,
                             const ActionSpace& space, int grid_n,
                             std::span<const double> hints, double x_tol,
                             bool closed_boundaries = true);

}  // namespace comlim
