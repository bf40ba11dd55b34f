#include "comlim/game.hpp"

#include <algorithm>
#include <cmath>

namespace comlim {

void validate(const Tolerances& t) {
  if (!(t.x_tol > 0) || !(t.f_tol > 0) || !(t.fd_step > 0)) {
    throw BadParamsError("tolerances must be strictly positive");
  }
  if (t.grid_n < 3) throw BadParamsError("grid_n must be at least 3");
}

PartialDerivatives partials_at(const GameSpec& spec, double x, double y) {
  if (spec.has_partials()) return spec.analytic_partials(x, y);
  const double h = spec.tol.fd_step;
  // Second differences divide by h^2, so they need a wider step to stay
  // above the rounding floor of double precision.
  const double h2 = std::max(spec.tol.fd_step, 1e-4);
  PartialDerivatives p;
  const auto& u = spec.payoff_leader;
  const auto& v = spec.payoff_follower;
  p.u1 = (u(x + h, y) - u(x - h, y)) / (2 * h);
  p.u2 = (u(x, y + h) - u(x, y - h)) / (2 * h);
  p.u11 = (u(x + h2, y) - 2 * u(x, y) + u(x - h2, y)) / (h2 * h2);
  p.u12 = (u(x + h2, y + h2) - u(x + h2, y - h2) - u(x - h2, y + h2) +
           u(x - h2, y - h2)) /
          (4 * h2 * h2);
  p.v1 = (v(y + h, x) - v(y - h, x)) / (2 * h);
  p.v2 = (v(y, x + h) - v(y, x - h)) / (2 * h);
  p.v11 = (v(y + h2, x) - 2 * v(y, x) + v(y - h2, x)) / (h2 * h2);
  p.v12 = (v(y + h2, x + h2) - v(y + h2, x - h2) - v(y - h2, x + h2) +
           v(y - h2, x - h2)) /
          (4 * h2 * h2);
  return p;
}

void validate_game(const GameSpec& spec, int probe_n) {
  validate(spec.leader_space);
  validate(spec.follower_space);
  validate(spec.tol);
  if (!spec.payoff_leader || !spec.payoff_follower) {
    throw BadParamsError("both payoff functions are required");
  }

  // Second differences pick up the curvature of interpolated payoffs only if
  // the step spans the interpolation knots, hence the width-based floor.
  const double hx = std::max(spec.tol.fd_step, spec.leader_space.width() / 64);
  const double hy = std::max(spec.tol.fd_step, spec.follower_space.width() / 64);
  for (int i = 0; i < probe_n; ++i) {
    for (int j = 0; j < probe_n; ++j) {
      const double x = spec.leader_space.lo +
                       spec.leader_space.width() * (i + 0.5) / probe_n;
      const double y = spec.follower_space.lo +
                       spec.follower_space.width() * (j + 0.5) / probe_n;
      const double uxy = spec.payoff_leader(x, y);
      const double vyx = spec.payoff_follower(y, x);
      if (!std::isfinite(uxy) || !std::isfinite(vyx)) {
        throw BadParamsError("payoffs must be finite on the action space");
      }
      if (spec.has_partials()) {
        const PartialDerivatives p = spec.analytic_partials(x, y);
        if (!(p.u11 < 0) || !(p.v11 < 0)) {
          throw NonConcaveError("own-action second partial is not negative");
        }
      } else {
        const double xl = spec.leader_space.clamp(x - hx);
        const double xr = spec.leader_space.clamp(x + hx);
        const double d2u = spec.payoff_leader(xr, y) -
                           spec.payoff_leader(0.5 * (xl + xr), y) * 2 +
                           spec.payoff_leader(xl, y);
        const double yl = spec.follower_space.clamp(y - hy);
        const double yr = spec.follower_space.clamp(y + hy);
        const double d2v = spec.payoff_follower(yr, x) -
                           spec.payoff_follower(0.5 * (yl + yr), x) * 2 +
                           spec.payoff_follower(yl, x);
        if (d2u > spec.tol.f_tol || d2v > spec.tol.f_tol) {
          throw NonConcaveError("sampled second difference is positive");
        }
      }
    }
  }
}

double maximize_concave(const std::function<double(double)>& f,
                        const std::function<double(double)>& df,
                        const std::function<double(double)>& d2f, double lo,
                        double hi, double x_tol, double f_tol) {
  if (df) {
    if (df(lo) <= 0) return lo;
    if (df(hi) >= 0) return hi;
    double a = lo, b = hi;
    while (b - a > x_tol) {
      const double m = 0.5 * (a + b);
      if (df(m) > 0) {
        a = m;
      } else {
        b = m;
      }
    }
    double x = 0.5 * (a + b);
    if (d2f) {
      for (int k = 0; k < 2; ++k) {
        const double curv = d2f(x);
        if (!(curv < 0)) break;
        x = std::clamp(x - df(x) / curv, a - x_tol, b + x_tol);
      }
    }
    return std::clamp(x, lo, hi);
  }

  // Golden section; strict concavity makes f unimodal.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tol) {
    if (fc > fd) {
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
  double x = fc > fd ? c : d;

  const double h = std::max(100 * x_tol, (hi - lo) * 1e-9);
  if (x - h > lo && x + h < hi) {
    const double d2 = f(x + h) - 2 * f(x) + f(x - h);
    if (d2 > 100 * f_tol) {
      throw NonConcaveError("positive second difference at the maximizer");
    }
  }
  return x;
}

namespace {

double best_response_impl(const GameSpec& spec, const ActionSpace& own_space,
                          bool follower, double given) {
  std::function<double(double)> f, df, d2f;
  if (follower) {
    f = [&spec, given](double y) { return spec.payoff_follower(y, given); };
    if (spec.has_partials()) {
      df = [&spec, given](double y) { return spec.analytic_partials(given, y).v1; };
      d2f = [&spec, given](double y) { return spec.analytic_partials(given, y).v11; };
    }
  } else {
    f = [&spec, given](double x) { return spec.payoff_leader(x, given); };
    if (spec.has_partials()) {
      df = [&spec, given](double x) { return spec.analytic_partials(x, given).u1; };
      d2f = [&spec, given](double x) { return spec.analytic_partials(x, given).u11; };
    }
  }
  return maximize_concave(f, df, d2f, own_space.lo, own_space.hi, spec.tol.x_tol,
                          spec.tol.f_tol);
}

}  // namespace

double best_response_follower(const GameSpec& spec, double x) {
  return best_response_impl(spec, spec.follower_space, true, x);
}

double best_response_leader(const GameSpec& spec, double y) {
  return best_response_impl(spec, spec.leader_space, false, y);
}

double phi(const GameSpec& spec, double x) {
  return best_response_leader(spec, best_response_follower(spec, x));
}

double leader_value(const GameSpec& spec, double x) {
  return spec.payoff_leader(x, best_response_follower(spec, x));
}

double eta(const GameSpec& spec, double x_tilde, double x) {
  const double y = best_response_follower(spec, x);
  return eta_given_response(spec, x_tilde, x, y);
}

double eta_given_response(const GameSpec& spec, double x_tilde, double x,
                          double y) {
  return spec.payoff_leader(x_tilde, y) - spec.payoff_leader(x, y);
}

double gamma_action(const GameSpec& spec, double x, double cournot) {
  const ActionSpace& xs = spec.leader_space;
  const double y = best_response_follower(spec, x);
  const double peak = best_response_leader(spec, y);  // phi(x)
  if (std::abs(peak - x) <= 10 * spec.tol.x_tol) return cournot;

  auto dev_gain = [&](double t) { return eta_given_response(spec, t, x, y); };

  // eta(., x) is strictly concave with peak at phi(x) and a root at x; any
  // second root lies on the far side of the peak.
  double a, b;  // bracket with dev_gain(a) >= 0 >= dev_gain(b)
  if (peak > x) {
    if (dev_gain(xs.hi) > 0) return x < cournot ? xs.hi : xs.lo;
    a = peak;
    b = xs.hi;
  } else {
    if (dev_gain(xs.lo) > 0) return x > cournot ? xs.lo : xs.hi;
    a = peak;
    b = xs.lo;
  }
  while (std::abs(b - a) > spec.tol.x_tol) {
    const double m = 0.5 * (a + b);
    if (dev_gain(m) >= 0) {
      a = m;
    } else {
      b = m;
    }
  }
  double root = 0.5 * (a + b);
  if (spec.has_partials()) {
    for (int k = 0; k < 2; ++k) {
      const double slope = spec.analytic_partials(root, y).u1;
      if (slope == 0) break;
      const double next = root - dev_gain(root) / slope;
      if (next < xs.lo || next > xs.hi) break;
      root = next;
    }
  }
  return xs.clamp(root);
}

}  // namespace comlim
