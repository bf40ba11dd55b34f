#include "comlim/equilibria.hpp"

#include <algorithm>
#include <cmath>

#include "comlim/parallel.hpp"

namespace comlim {

SampledCurves SampledCurves::build(const GameSpec& spec, int n,
                                   std::span<const double> hints) {
  const ActionSpace& xs = spec.leader_space;
  SampledCurves c;
  c.x.reserve(static_cast<std::size_t>(n) + hints.size());
  for (int i = 0; i < n; ++i) {
    c.x.push_back(i + 1 == n ? xs.hi : xs.clamp(xs.lo + xs.width() * i / (n - 1)));
  }
  for (double h : hints) {
    if (xs.contains(h)) c.x.push_back(h);
  }
  std::sort(c.x.begin(), c.x.end());
  c.x.erase(std::unique(c.x.begin(), c.x.end()), c.x.end());

  const std::size_t m = c.x.size();
  c.response.resize(m);
  c.value.resize(m);
  c.image.resize(m);
  parallel_for(m, [&](std::size_t i) {
    const double rf = best_response_follower(spec, c.x[i]);
    c.response[i] = rf;
    c.value[i] = spec.payoff_leader(c.x[i], rf);
    c.image[i] = best_response_leader(spec, rf);
  });
  return c;
}

namespace {

double fixed_point_residual(const GameSpec& spec, double x) {
  return phi(spec, x) - x;
}

// Bisects a sign change of the fixed-point residual to x_tol.
double refine_crossing(const GameSpec& spec, double a, double ra, double b,
                       double x_tol) {
  while (std::abs(b - a) > x_tol) {
    const double m = 0.5 * (a + b);
    const double rm = fixed_point_residual(spec, m);
    if ((rm >= 0) == (ra >= 0)) {
      a = m;
      ra = rm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Minimizes |residual| by golden section; used for tangential fixed points
// and boundary fixed points that produce no sign change.
double polish_tangency(const GameSpec& spec, double lo, double hi, double x_tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  auto f = [&](double t) { return std::abs(fixed_point_residual(spec, t)); };
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

}  // namespace

IntervalUnion cournot_set(const GameSpec& spec) {
  const Tolerances& tol = spec.tol;
  const SampledCurves c = SampledCurves::build(spec, tol.grid_n);
  const std::size_t m = c.x.size();
  std::vector<double> res(m);
  for (std::size_t i = 0; i < m; ++i) res[i] = c.image[i] - c.x[i];

  const double run_tol = 100 * tol.x_tol;
  std::vector<char> in_run(m, 0);
  std::vector<IntervalPiece> pieces;

  // Continuum of fixed points: at least three consecutive samples within
  // run_tol, edges refined by bisection on the run predicate.
  std::size_t i = 0;
  while (i < m) {
    if (std::abs(res[i]) > run_tol) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < m && std::abs(res[j + 1]) <= run_tol) ++j;
    if (j - i + 1 >= 3) {
      double lo = c.x[i];
      double hi = c.x[j];
      auto inside = [&](double t) {
        return std::abs(fixed_point_residual(spec, t)) <= run_tol;
      };
      if (i > 0) {
        double a = c.x[i - 1], b = c.x[i];
        while (b - a > tol.x_tol) {
          const double mm = 0.5 * (a + b);
          (inside(mm) ? b : a) = mm;
        }
        lo = b;
      }
      if (j + 1 < m) {
        double a = c.x[j], b = c.x[j + 1];
        while (b - a > tol.x_tol) {
          const double mm = 0.5 * (a + b);
          (inside(mm) ? a : b) = mm;
        }
        hi = a;
      }
      pieces.push_back({lo, hi, true, true});
      for (std::size_t k = i; k <= j; ++k) in_run[k] = 1;
    }
    i = j + 1;
  }

  for (std::size_t k = 0; k + 1 < m; ++k) {
    if (in_run[k] || in_run[k + 1]) continue;
    if ((res[k] >= 0) != (res[k + 1] >= 0)) {
      double r = refine_crossing(spec, c.x[k], res[k], c.x[k + 1], tol.x_tol);
      // Snap to an adjacent grid point that is an exact fixed point; hint
      // points are exact equilibrium actions whenever the caller knows them.
      for (std::size_t g : {k, k + 1}) {
        if (std::abs(c.x[g] - r) <= 20 * tol.x_tol &&
            std::abs(res[g]) <= std::abs(fixed_point_residual(spec, r))) {
          r = c.x[g];
        }
      }
      pieces.push_back({r, r, true, true});
    }
  }

  // Isolated near-zeros without a sign change (tangencies, boundary roots).
  for (std::size_t k = 0; k < m; ++k) {
    if (in_run[k] || std::abs(res[k]) > run_tol) continue;
    const bool left_cross = k > 0 && (res[k - 1] >= 0) != (res[k] >= 0);
    const bool right_cross = k + 1 < m && (res[k] >= 0) != (res[k + 1] >= 0);
    if (left_cross || right_cross) continue;
    const double lo = k > 0 ? c.x[k - 1] : c.x[k];
    const double hi = k + 1 < m ? c.x[k + 1] : c.x[k];
    const double t = lo < hi ? polish_tangency(spec, lo, hi, tol.x_tol) : c.x[k];
    if (std::abs(fixed_point_residual(spec, t)) <= 10 * tol.x_tol ||
        std::abs(res[k]) <= 10 * tol.x_tol) {
      const double pt = std::abs(res[k]) <= 10 * tol.x_tol ? c.x[k] : t;
      pieces.push_back({pt, pt, true, true});
    }
  }

  IntervalUnion out = IntervalUnion::from_pieces(std::move(pieces), tol.merge_tol());
  if (out.is_empty()) {
    throw InternalError("no Cournot action found; phi must have a fixed point");
  }
  return out;
}

IntervalUnion stackelberg_set(const GameSpec& spec) {
  const Tolerances& tol = spec.tol;
  const SampledCurves c = SampledCurves::build(spec, tol.grid_n);
  const std::size_t m = c.x.size();

  auto value_at = [&](double t) { return leader_value(spec, t); };

  double grid_max = c.value[0];
  for (double v : c.value) grid_max = std::max(grid_max, v);

  // Runs at the top level become plateau pieces.
  std::vector<char> in_run(m, 0);
  std::vector<IntervalPiece> pieces;
  std::size_t i = 0;
  while (i < m) {
    if (grid_max - c.value[i] > tol.f_tol) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < m && grid_max - c.value[j + 1] <= tol.f_tol) ++j;
    if (j - i + 1 >= 3) {
      auto inside = [&](double t) { return grid_max - value_at(t) <= tol.f_tol; };
      double lo = c.x[i], hi = c.x[j];
      if (i > 0) {
        double a = c.x[i - 1], b = c.x[i];
        while (b - a > tol.x_tol) {
          const double mm = 0.5 * (a + b);
          (inside(mm) ? b : a) = mm;
        }
        lo = b;
      }
      if (j + 1 < m) {
        double a = c.x[j], b = c.x[j + 1];
        while (b - a > tol.x_tol) {
          const double mm = 0.5 * (a + b);
          (inside(mm) ? a : b) = mm;
        }
        hi = a;
      }
      pieces.push_back({lo, hi, true, true});
      for (std::size_t k = i; k <= j; ++k) in_run[k] = 1;
    }
    i = j + 1;
  }

  // Local maxima polished to x_tol; ties within f_tol of the best are kept.
  std::vector<std::pair<double, double>> candidates;  // (x, U(x))
  for (std::size_t k = 0; k < m; ++k) {
    if (in_run[k]) continue;
    const bool left_ok = k == 0 || c.value[k] >= c.value[k - 1];
    const bool right_ok = k + 1 == m || c.value[k] >= c.value[k + 1];
    if (!(left_ok && right_ok)) continue;
    if (grid_max - c.value[k] > 1e3 * tol.f_tol + 1e-3 * std::abs(grid_max)) continue;
    const double lo = k > 0 ? c.x[k - 1] : c.x[k];
    const double hi = k + 1 < m ? c.x[k + 1] : c.x[k];
    // The grid point itself stays in the running: boundary maxima and exact
    // payoff ties at sampled points must not be lost to polish error.
    double t = c.x[k];
    double vt = c.value[k];
    if (lo < hi) {
      const double tp =
          maximize_concave(value_at, nullptr, nullptr, lo, hi, tol.x_tol, tol.f_tol);
      const double vp = value_at(tp);
      if (vp > vt) {
        t = tp;
        vt = vp;
      }
    }
    candidates.emplace_back(t, vt);
  }

  double best = grid_max;
  for (const auto& [t, v] : candidates) best = std::max(best, v);
  for (const auto& [t, v] : candidates) {
    if (best - v <= tol.f_tol) pieces.push_back({t, t, true, true});
  }
  IntervalUnion out = IntervalUnion::from_pieces(std::move(pieces), tol.merge_tol());
  if (out.is_empty()) throw InternalError("argmax of U not found");
  return out;
}

IntervalUnion contour_set(const GameSpec& spec, double level, Direction dir) {
  std::vector<double> hints = representative_points(cournot_set(spec));
  for (double p : representative_points(stackelberg_set(spec))) hints.push_back(p);
  return contour_set(spec, level, dir, hints);
}

IntervalUnion contour_set(const GameSpec& spec, double level, Direction dir,
                          std::span<const double> hints) {
  auto pred = [&spec, level, dir](double x) {
    const double v = leader_value(spec, x);
    switch (dir) {
      case Direction::Geq: return v >= level;
      case Direction::Gt: return v > level;
      case Direction::Leq: return v <= level;
      case Direction::Lt: return v < level;
    }
    return false;
  };
  const bool closed = dir == Direction::Geq || dir == Direction::Leq;
  return from_predicate(pred, spec.leader_space, spec.tol.grid_n, hints,
                        spec.tol.x_tol, closed);
}

EquilibriumReport equilibrium_report(const GameSpec& spec) {
  EquilibriumReport r;
  r.cournot = cournot_set(spec);
  r.stackelberg = stackelberg_set(spec);
  for (double p : representative_points(r.cournot)) {
    r.u_at_cournot.push_back(leader_value(spec, p));
  }
  r.u_max = leader_value(spec, r.stackelberg.min_value());
  return r;
}

std::vector<double> representative_points(const IntervalUnion& set) {
  std::vector<double> pts;
  for (const auto& p : set.pieces()) {
    pts.push_back(p.lo);
    if (!p.is_point()) pts.push_back(p.hi);
  }
  return pts;
}

namespace {

std::pair<double, double> extremum_over(const std::function<double(double)>& f,
                                        const IntervalUnion& region, double x_tol,
                                        int per_piece_grid, bool minimize) {
  if (region.is_empty()) throw EmptySetError("extremum over empty region");
  const double sign = minimize ? 1.0 : -1.0;
  double best_x = region.min_value();
  double best_v = sign * f(best_x);
  for (const auto& p : region.pieces()) {
    if (p.is_point()) {
      const double v = sign * f(p.lo);
      if (v < best_v) {
        best_v = v;
        best_x = p.lo;
      }
      continue;
    }
    const int n = std::max(per_piece_grid, 3);
    double local_x = p.lo;
    double local_v = sign * f(p.lo);
    for (int k = 1; k < n; ++k) {
      const double t = p.lo + p.length() * k / (n - 1);
      const double v = sign * f(t);
      if (v < local_v) {
        local_v = v;
        local_x = t;
      }
    }
    // Golden polish inside the bracket around the best sample.
    const double h = p.length() / (n - 1);
    double a = std::max(p.lo, local_x - h);
    double b = std::min(p.hi, local_x + h);
    constexpr double kInvPhi = 0.6180339887498949;
    double c1 = b - kInvPhi * (b - a), c2 = a + kInvPhi * (b - a);
    double f1 = sign * f(c1), f2 = sign * f(c2);
    while (b - a > x_tol) {
      if (f1 < f2) {
        b = c2;
        c2 = c1;
        f2 = f1;
        c1 = b - kInvPhi * (b - a);
        f1 = sign * f(c1);
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + kInvPhi * (b - a);
        f2 = sign * f(c2);
      }
    }
    const double t = f1 < f2 ? c1 : c2;
    const double v = sign * f(t);
    if (v < local_v) {
      local_v = v;
      local_x = t;
    }
    if (local_v < best_v) {
      best_v = local_v;
      best_x = local_x;
    }
  }
  return {best_x, sign * best_v};
}

}  // namespace

std::pair<double, double> argmin_over(const std::function<double(double)>& f,
                                      const IntervalUnion& region, double x_tol,
                                      int per_piece_grid) {
  return extremum_over(f, region, x_tol, per_piece_grid, true);
}

std::pair<double, double> argmax_over(const std::function<double(double)>& f,
                                      const IntervalUnion& region, double x_tol,
                                      int per_piece_grid) {
  return extremum_over(f, region, x_tol, per_piece_grid, false);
}

}  // namespace comlim
