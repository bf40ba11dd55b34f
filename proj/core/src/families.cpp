#include "comlim/families.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

namespace comlim {

namespace {

constexpr double kKnifeEdgeTol = 1e-12;

}  // namespace

GameSpec make_duopoly(const DuopolyParams& p) {
  if (!(p.r < 2.0) || !std::isfinite(p.r)) {
    throw BadParamsError("duopoly requires r < 2");
  }
  if (!(p.d >= 0.0 && p.d <= 1.0)) {
    throw BadParamsError("duopoly requires d in [0, 1]");
  }
  const double r = p.r, d = p.d;
  const double cap = 2.0 / (2.0 - r);
  GameSpec spec;
  spec.leader_space = {0.0, cap};
  spec.follower_space = {0.0, cap};
  spec.payoff_leader = [r, d](double x, double y) {
    return x - (1 - d) * x * y - (1 - r / 2) * x * x;
  };
  spec.payoff_follower = [r, d](double y, double x) {
    return y - (1 - d) * y * x - (1 - r / 2) * y * y;
  };
  spec.analytic_partials = [r, d](double x, double y) {
    PartialDerivatives q;
    q.u1 = 1 - (1 - d) * y - (2 - r) * x;
    q.u2 = -(1 - d) * x;
    q.u11 = -(2 - r);
    q.u12 = -(1 - d);
    q.v1 = 1 - (1 - d) * x - (2 - r) * y;
    q.v2 = -(1 - d) * y;
    q.v11 = -(2 - r);
    q.v12 = -(1 - d);
    return q;
  };
  spec.label = "duopoly";
  validate_game(spec);
  return spec;
}

GameSpec make_coordination(const CoordinationParams& p) {
  if (!(p.a >= 0.0) || !std::isfinite(p.a)) {
    throw BadParamsError("coordination requires a >= 0");
  }
  const double a = p.a;
  GameSpec spec;
  spec.leader_space = {0.0, 1.0};
  spec.follower_space = {0.0, 1.0};
  auto payoff = [a](double own, double other) {
    return own * other + (1 - own) * (1 - other) -
           0.5 * (own - 0.5) * (own - 0.5) -
           1.5 * (1 + a) * (other - 0.5) * (other - 0.5);
  };
  spec.payoff_leader = payoff;
  spec.payoff_follower = payoff;
  spec.analytic_partials = [a](double x, double y) {
    PartialDerivatives q;
    q.u1 = 2 * y - 0.5 - x;
    q.u2 = 2 * x - 1 - 3 * (1 + a) * (y - 0.5);
    q.u11 = -1;
    q.u12 = 2;
    q.v1 = 2 * x - 0.5 - y;
    q.v2 = 2 * y - 1 - 3 * (1 + a) * (x - 0.5);
    q.v11 = -1;
    q.v12 = 2;
    return q;
  };
  spec.label = "coordination";
  validate_game(spec);
  return spec;
}

namespace {

struct PayoffTable {
  std::vector<double> grid;               // shared by both players
  std::vector<std::vector<double>> vals;  // vals[i][j] = u(grid[i], grid[j])

  double interpolate(double x, double y) const {
    const auto cell = [&](double t) {
      auto it = std::upper_bound(grid.begin(), grid.end(), t);
      std::size_t k = it - grid.begin();
      if (k == 0) k = 1;
      if (k >= grid.size()) k = grid.size() - 1;
      return k - 1;
    };
    const std::size_t i = cell(x), j = cell(y);
    const double tx = (x - grid[i]) / (grid[i + 1] - grid[i]);
    const double ty = (y - grid[j]) / (grid[j + 1] - grid[j]);
    return (1 - tx) * (1 - ty) * vals[i][j] + tx * (1 - ty) * vals[i + 1][j] +
           (1 - tx) * ty * vals[i][j + 1] + tx * ty * vals[i + 1][j + 1];
  }
};

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  return cells;
}

}  // namespace

GameSpec make_tabulated(std::istream& csv, const std::string& label) {
  auto table = std::make_shared<PayoffTable>();
  std::string line;
  bool header_done = false;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (!header_done) {
      for (std::size_t k = 1; k < cells.size(); ++k) {
        table->grid.push_back(std::stod(cells[k]));
      }
      header_done = true;
      continue;
    }
    if (cells.size() != table->grid.size() + 1) {
      throw ParseError("tabulated payoff row has wrong width");
    }
    std::vector<double> row;
    for (std::size_t k = 1; k < cells.size(); ++k) row.push_back(std::stod(cells[k]));
    table->vals.push_back(std::move(row));
  }
  if (table->grid.size() < 2 || table->vals.size() != table->grid.size()) {
    throw ParseError("tabulated payoff matrix must be square with >= 2 knots");
  }
  for (std::size_t k = 0; k + 1 < table->grid.size(); ++k) {
    if (!(table->grid[k] < table->grid[k + 1])) {
      throw ParseError("tabulated grid coordinates must be increasing");
    }
  }

  GameSpec spec;
  spec.leader_space = {table->grid.front(), table->grid.back()};
  spec.follower_space = spec.leader_space;
  spec.payoff_leader = [table](double x, double y) { return table->interpolate(x, y); };
  spec.payoff_follower = [table](double y, double x) { return table->interpolate(y, x); };
  spec.label = label;
  validate_game(spec);
  return spec;
}

GameSpec make_tabulated_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadParamsError("cannot open payoff table: " + path);
  return make_tabulated(in, path);
}

ThresholdRow thresholds(double d) {
  if (!(d >= 0.0 && d <= 1.0)) throw BadParamsError("thresholds need d in [0, 1]");
  ThresholdRow t;
  const double one_d = 1.0 - d;
  t.r_star = 2.0 - std::sqrt(2.0) * one_d;

  const double c2 = std::cbrt(std::sqrt(57.0) / 9.0 + 1.0);
  t.r_2star = 2.0 - c2 * one_d - 2.0 * one_d / (3.0 * c2);

  t.r_3star = 0.5 * (3.0 - std::sqrt(5.0) + (1.0 + std::sqrt(5.0)) * d);

  const double cd = std::cbrt(3.0 * (9.0 - std::sqrt(78.0)));
  t.r_dag = 2.0 - (cd / 3.0 + 1.0 / cd) * one_d;

  t.r_2dag = 2.0 - std::sqrt(3.0) * one_d;

  const double c3 = std::cbrt(80.0 - 9.0 * std::sqrt(79.0));
  t.r_3dag = 2.0 + ((1.0 - c3) / 3.0 - 1.0 / (3.0 * c3)) * one_d;
  return t;
}

double duopoly_response(const DuopolyParams& p, double x) {
  if (p.d < 1.0 && x > 1.0 / (1.0 - p.d)) return 0.0;
  return std::max(0.0, (1.0 - (1.0 - p.d) * x) / (2.0 - p.r));
}

double duopoly_value(const DuopolyParams& p, double x) {
  const double y = duopoly_response(p, x);
  return x - (1 - p.d) * x * y - (1 - p.r / 2) * x * x;
}

double duopoly_phi(const DuopolyParams& p, double x) {
  const double r = p.r, d = p.d;
  const double kink = d < 1.0 ? 1.0 / (1.0 - d) : 1e300;
  if (x >= kink) return 1.0 / (2.0 - r);
  const double lower = (r - (d + 1)) / ((1 - d) * (1 - d));
  if (x <= lower) return 0.0;
  return (d + 1 - r + (1 - d) * (1 - d) * x) / ((2 - r) * (2 - r));
}

DuopolyClosedForms duopoly_closed_forms(const DuopolyParams& p) {
  const double r = p.r, d = p.d;
  if (!(r < 2.0) || !(d >= 0.0 && d <= 1.0)) {
    throw BadParamsError("duopoly closed forms need r < 2 and d in [0, 1]");
  }
  const ThresholdRow th = thresholds(d);
  const double cap = 2.0 / (2.0 - r);
  const double excess = r - (d + 1.0);  // sign selects the Cournot regime

  DuopolyClosedForms f;
  f.x_monopoly = 1.0 / (2.0 - r);
  f.x_cournot_interior = 1.0 / (3.0 - r - d);
  f.gamma_at_zero = 2.0 * (d + 1.0 - r) / ((2.0 - r) * (2.0 - r));

  if (excess < -kKnifeEdgeTol) {
    f.cournot = IntervalUnion::point(f.x_cournot_interior);
  } else if (excess > kKnifeEdgeTol) {
    f.cournot = IntervalUnion::point(0.0)
                    .unite(IntervalUnion::point(f.x_cournot_interior))
                    .unite(IntervalUnion::point(f.x_monopoly));
  } else {
    f.cournot = IntervalUnion::interval(0.0, f.x_monopoly);
  }

  if (r < th.r_3star) {
    f.x_stackelberg =
        (d + 1 - r) / ((2 - r) * (2 - r) - 2 * (1 - d) * (1 - d));
  } else if (excess <= kKnifeEdgeTol) {
    f.x_stackelberg = 1.0 / (1.0 - d);
  } else {
    f.x_stackelberg = f.x_monopoly;
  }

  const double xc = f.x_cournot_interior;
  if (excess < -kKnifeEdgeTol) {
    double upper;
    if (r < th.r_2star) {
      upper = (2 - r) * (2 - r) /
              ((3 - r - d) * ((2 - r) * (2 - r) - 2 * (1 - d) * (1 - d)));
      f.regime = "r<r**";
    } else {
      upper = (std::sqrt((1 - d) * (5 - 2 * r - d)) + 3 - r - d) /
              ((2 - r) * (3 - r - d));
      f.regime = "r**<=r<d+1";
    }
    f.simply_plausible = IntervalUnion::interval(xc, upper);
    f.i_plausible = f.simply_plausible;
  } else if (excess > kKnifeEdgeTol) {
    const double lower =
        2 * (r - d - 1) / (2 * (1 - d) * (1 - d) - (2 - r) * (2 - r));
    f.simply_plausible = IntervalUnion::point(0.0)
                             .unite(IntervalUnion::interval(lower, xc))
                             .unite(IntervalUnion::interval(f.x_monopoly, cap));
    f.i_plausible =
        IntervalUnion::point(0.0).unite(IntervalUnion::interval(lower, cap));
    f.regime = "r>d+1";
  } else {
    f.simply_plausible = IntervalUnion::interval(0.0, cap);
    f.i_plausible = f.simply_plausible;
    f.regime = "r=d+1";
  }

  if (r >= th.r_star - kKnifeEdgeTol && excess < -kKnifeEdgeTol) {
    const double c2 = (2 - r) * (2 - r);
    const double rad = c2 * c2 - 8 * (1 - d) * (1 - d) * (d + 1 - r) * (d + 1 - r);
    const double upper = (c2 + std::sqrt(rad)) / (c2 * (2 - r));
    f.plausible = IntervalUnion::interval(f.gamma_at_zero, upper);
  } else {
    f.plausible = f.i_plausible;
  }

  if (excess >= -kKnifeEdgeTol) {
    f.x_min = 0.0;
    f.x_max = cap;
  } else {
    f.x_min = f.plausible.min_value();
    f.x_max = f.plausible.max_value();
  }
  return f;
}

}  // namespace comlim
