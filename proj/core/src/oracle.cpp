#include "comlim/oracle.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "comlim/parallel.hpp"
#include "comlim/plausibility.hpp"

namespace comlim {

Grid Grid::build(const ActionSpace& space, int n, std::span<const double> hints) {
  validate(space);
  if (n < 2) throw BadParamsError("grid needs at least two points");
  Grid g;
  g.points.reserve(static_cast<std::size_t>(n) + hints.size());
  for (int i = 0; i < n; ++i) {
    g.points.push_back(
        i + 1 == n ? space.hi : space.clamp(space.lo + space.width() * i / (n - 1)));
  }
  for (double h : hints) {
    if (space.contains(h)) g.points.push_back(h);
  }
  std::sort(g.points.begin(), g.points.end());
  const double dedupe = 1e-13 * space.width();
  std::vector<double> unique_pts;
  for (double p : g.points) {
    if (unique_pts.empty() || p - unique_pts.back() > dedupe) {
      unique_pts.push_back(p);
    }
  }
  g.points = std::move(unique_pts);
  g.h = 0;
  for (std::size_t i = 0; i + 1 < g.points.size(); ++i) {
    g.h = std::max(g.h, g.points[i + 1] - g.points[i]);
  }
  return g;
}

int Grid::index_of(double x, double tol) const {
  auto it = std::lower_bound(points.begin(), points.end(), x);
  int best = -1;
  double best_d = tol;
  if (it != points.end() && std::abs(*it - x) <= best_d) {
    best = static_cast<int>(it - points.begin());
    best_d = std::abs(*it - x);
  }
  if (it != points.begin() && std::abs(*(it - 1) - x) <= best_d) {
    best = static_cast<int>(it - points.begin()) - 1;
  }
  return best;
}

OracleContext OracleContext::build(const GameSpec& spec, Grid grid) {
  OracleContext ctx;
  ctx.spec = &spec;
  ctx.grid = std::move(grid);
  const std::size_t m = ctx.grid.points.size();
  ctx.response.resize(m);
  ctx.value.resize(m);
  ctx.image.resize(m);
  parallel_for(m, [&](std::size_t i) {
    const double x = ctx.grid.points[i];
    const double rf = best_response_follower(spec, x);
    ctx.response[i] = rf;
    ctx.value[i] = spec.payoff_leader(x, rf);
    ctx.image[i] = best_response_leader(spec, rf);
  });
  double lip = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    const double dx = ctx.grid.points[i + 1] - ctx.grid.points[i];
    if (dx > 0) lip = std::max(lip, std::abs(ctx.value[i + 1] - ctx.value[i]) / dx);
  }
  ctx.lipschitz = lip;
  ctx.eta_tol = 10 * spec.tol.f_tol;
  ctx.tie_tol = 10 * spec.tol.f_tol;
  return ctx;
}

double OracleContext::sup_eta(int b, const IntervalUnion& element) const {
  const double yb = response[b];
  const double ub = value[b];
  const double peak = image[b];
  double sup = -std::numeric_limits<double>::infinity();
  for (const auto& p : element.pieces()) {
    const double t = p.lo > peak ? p.lo : (p.hi < peak ? p.hi : peak);
    sup = std::max(sup, spec->payoff_leader(t, yb) - ub);
  }
  return sup;
}

void check_cover(const OracleContext& ctx, const FiniteCst& cst) {
  if (cst.elements.empty()) throw CoverError("commitment structure has no elements");
  for (double x : ctx.grid.points) {
    bool covered = false;
    for (const auto& e : cst.elements) {
      if (e.contains(x)) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      throw CoverError("grid action " + std::to_string(x) +
                       " is not covered by any element");
    }
  }
}

std::vector<int> admissible_actions(const OracleContext& ctx,
                                    const IntervalUnion& element) {
  std::vector<int> out;
  const auto& pts = ctx.grid.points;
  for (const auto& piece : element.pieces()) {
    auto lo_it = std::lower_bound(pts.begin(), pts.end(), piece.lo);
    for (auto it = lo_it; it != pts.end() && *it <= piece.hi; ++it) {
      if (!element.contains(*it)) continue;
      const int b = static_cast<int>(it - pts.begin());
      if (ctx.sup_eta(b, element) <= ctx.eta_tol) out.push_back(b);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> admissible_actions(const OracleContext& ctx,
                                    std::span<const int> element_indices) {
  // Finite-subset semantics: the game lives on the listed grid actions only,
  // so the no-deviation slack absorbs one grid step of discretization error.
  const double tol = std::max(ctx.spec->tol.f_tol, ctx.lipschitz * ctx.grid.h);
  std::vector<int> out;
  for (int b : element_indices) {
    const double yb = ctx.response[b];
    const double ub = ctx.value[b];
    double sup = -std::numeric_limits<double>::infinity();
    for (int x : element_indices) {
      sup = std::max(sup, ctx.spec->payoff_leader(ctx.grid.points[x], yb) - ub);
    }
    if (sup <= tol) out.push_back(b);
  }
  return out;
}

bool is_admissible(const OracleContext& ctx, const AdmissiblePair& pair) {
  if (pair.beta.size() != pair.cst.elements.size()) return false;
  for (std::size_t i = 0; i < pair.beta.size(); ++i) {
    const IntervalUnion& e = pair.cst.elements[i];
    if (!e.contains(pair.beta[i])) return false;
    const int b = ctx.grid.index_of(pair.beta[i], 1e-12 + ctx.grid.h * 1e-9);
    if (b < 0) return false;
    if (ctx.sup_eta(b, e) > ctx.eta_tol) return false;
  }
  return true;
}

double SpeResult::min_payoff() const {
  if (outcomes.empty()) throw EmptySetError("no equilibrium outcomes");
  double m = outcomes.front().leader_payoff;
  for (const auto& o : outcomes) m = std::min(m, o.leader_payoff);
  return m;
}

double SpeResult::max_payoff() const {
  if (outcomes.empty()) throw EmptySetError("no equilibrium outcomes");
  double m = outcomes.front().leader_payoff;
  for (const auto& o : outcomes) m = std::max(m, o.leader_payoff);
  return m;
}

bool SpeResult::contains_index(int grid_index) const {
  for (const auto& o : outcomes) {
    if (o.grid_index == grid_index) return true;
  }
  return false;
}

namespace {

SpeResult spe_impl(const OracleContext& ctx, const FiniteCst& cst, bool preferred) {
  SpeResult res;
  res.admissible.reserve(cst.elements.size());
  for (const auto& e : cst.elements) {
    res.admissible.push_back(admissible_actions(ctx, e));
    if (res.admissible.back().empty()) res.no_equilibrium = true;
  }
  if (res.no_equilibrium) return res;

  // preferred: every subgame plays its leader-best continuation, so the
  // benchmark is the best over elements of the best admissible payoff.
  // Otherwise adversarial continuations are allowed and the benchmark is the
  // best over elements of the worst admissible payoff.
  double level = -std::numeric_limits<double>::infinity();
  for (const auto& bs : res.admissible) {
    double elem_level = preferred ? -std::numeric_limits<double>::infinity()
                                  : std::numeric_limits<double>::infinity();
    for (int b : bs) {
      elem_level = preferred ? std::max(elem_level, ctx.value[b])
                             : std::min(elem_level, ctx.value[b]);
    }
    level = std::max(level, elem_level);
  }

  std::vector<int> seen(ctx.grid.points.size(), 0);
  for (std::size_t i = 0; i < res.admissible.size(); ++i) {
    for (int b : res.admissible[i]) {
      if (seen[b]) continue;
      if (preferred) {
        double best_here = -std::numeric_limits<double>::infinity();
        for (int bb : res.admissible[i]) best_here = std::max(best_here, ctx.value[bb]);
        if (ctx.value[b] < best_here - ctx.tie_tol) continue;
      }
      if (ctx.value[b] >= level - ctx.tie_tol) {
        seen[b] = 1;
        res.outcomes.push_back({ctx.grid.points[b], ctx.response[b], ctx.value[b],
                                b, static_cast<int>(i)});
      }
    }
  }
  std::sort(res.outcomes.begin(), res.outcomes.end(),
            [](const SpeOutcome& a, const SpeOutcome& b) {
              return a.leader_action < b.leader_action;
            });
  return res;
}

}  // namespace

SpeResult spe_outcomes(const OracleContext& ctx, const FiniteCst& cst) {
  return spe_impl(ctx, cst, false);
}

SpeResult spe_outcomes_leader_preferred(const OracleContext& ctx,
                                        const FiniteCst& cst) {
  return spe_impl(ctx, cst, true);
}

namespace {

IntervalUnion whole_of(const OracleContext& ctx) {
  return IntervalUnion::interval(ctx.grid.points.front(), ctx.grid.points.back());
}

IntervalUnion remove_point(const IntervalUnion& set, double x,
                           const ActionSpace& space) {
  return set.intersect(IntervalUnion::point(x).complement(space));
}

void enumerate_cutoffs(const OracleContext& ctx, const FamilyOptions& opts,
                       const std::function<bool(const FiniteCst&)>& sink) {
  const auto& pts = ctx.grid.points;
  const int n = static_cast<int>(pts.size());
  FiniteCst cournot{{whole_of(ctx)}, "cournot"};
  if (!sink(cournot)) return;
  if (opts.max_cuts < 1) return;
  for (int s = 1; s < n; ++s) {
    FiniteCst cst;
    cst.elements.push_back(IntervalUnion::interval(pts[0], pts[s - 1]));
    cst.elements.push_back(IntervalUnion::interval(pts[s], pts[n - 1]));
    cst.label = "cutoff";
    if (!sink(cst)) return;
  }
  if (opts.max_cuts < 2) return;
  for (int s1 = 1; s1 + 1 < n; ++s1) {
    for (int s2 = s1 + 1; s2 < n; ++s2) {
      FiniteCst cst;
      cst.elements.push_back(IntervalUnion::interval(pts[0], pts[s1 - 1]));
      cst.elements.push_back(IntervalUnion::interval(pts[s1], pts[s2 - 1]));
      cst.elements.push_back(IntervalUnion::interval(pts[s2], pts[n - 1]));
      cst.label = "cutoff";
      if (!sink(cst)) return;
    }
  }
}

void enumerate_interval_covers(const OracleContext& ctx, const FamilyOptions& opts,
                               const std::function<bool(const FiniteCst&)>& sink) {
  const auto& pts = ctx.grid.points;
  const int n = static_cast<int>(pts.size());
  const IntervalUnion whole = whole_of(ctx);
  const double band = 10 * ctx.spec->tol.x_tol;

  if (opts.anchor) {
    const double a = *opts.anchor;
    {
      FiniteCst cst{{whole, IntervalUnion::interval(pts[0], a)}, "interval-cover"};
      if (!sink(cst)) return;
    }
    {
      FiniteCst cst{{whole, IntervalUnion::interval(a, pts[n - 1])}, "interval-cover"};
      if (!sink(cst)) return;
    }
    // Triple {{x*}, [lo, x''], [x', hi]} with x' <= x'' taken from the
    // lower contour set of the anchor.
    const int ai = ctx.grid.index_of(a, ctx.grid.h);
    const double ua = ai >= 0 ? ctx.value[ai] : leader_value(*ctx.spec, a);
    std::vector<double> prefix_min_a(n, std::numeric_limits<double>::infinity());
    std::vector<int> prefix_arg(n, -1);
    double run = std::numeric_limits<double>::infinity();
    int run_arg = -1;
    for (int i = 0; i < n; ++i) {
      if (ctx.image[i] <= pts[i] + band && ctx.value[i] < run) {
        run = ctx.value[i];
        run_arg = i;
      }
      prefix_min_a[i] = run;
      prefix_arg[i] = run_arg;
    }
    for (int i = 0; i < n; ++i) {
      if (ctx.image[i] < pts[i] - band) continue;     // needs phi(x'') >= x''
      if (ctx.value[i] > ua + ctx.tie_tol) continue;  // x'' in the contour set
      if (prefix_arg[i] < 0 || prefix_min_a[i] > ua + ctx.tie_tol) continue;
      FiniteCst cst;
      cst.elements.push_back(IntervalUnion::point(a));
      cst.elements.push_back(IntervalUnion::interval(pts[0], pts[i]));
      cst.elements.push_back(IntervalUnion::interval(pts[prefix_arg[i]], pts[n - 1]));
      cst.label = "interval-cover";
      if (!sink(cst)) return;
    }
    return;
  }

  for (int c = 1; c + 1 < n; c += opts.stride) {
    {
      FiniteCst cst{{whole, IntervalUnion::interval(pts[0], pts[c])}, "interval-cover"};
      if (!sink(cst)) return;
    }
    {
      FiniteCst cst{{whole, IntervalUnion::interval(pts[c], pts[n - 1])},
                    "interval-cover"};
      if (!sink(cst)) return;
    }
  }
  for (int i = 0; i < n; i += opts.stride) {
    for (int j = i; j < n; j += opts.stride) {
      FiniteCst cst{{IntervalUnion::interval(pts[0], pts[j]),
                     IntervalUnion::interval(pts[i], pts[n - 1])},
                    "interval-cover"};
      if (!sink(cst)) return;
    }
  }
}

void enumerate_three_piece(const OracleContext& ctx, const FamilyOptions& opts,
                           const std::function<bool(const FiniteCst&)>& sink) {
  const auto& pts = ctx.grid.points;
  const int n = static_cast<int>(pts.size());
  const double lo = pts[0], hi = pts[n - 1];
  auto make = [&](double a, double b) {
    FiniteCst cst;
    cst.elements.push_back(IntervalUnion::interval(lo, a, false, true));
    cst.elements.push_back(IntervalUnion::point(lo).unite(
        IntervalUnion::interval(a, b, false, false), 0));
    cst.elements.push_back(IntervalUnion::interval(b, hi));
    cst.label = "three-piece";
    return cst;
  };
  if (opts.anchor && opts.anchor2) {
    if (*opts.anchor < *opts.anchor2) sink(make(*opts.anchor, *opts.anchor2));
    return;
  }
  for (int i = 1; i + 1 < n; i += opts.stride) {
    for (int j = i + 1; j + 1 < n; j += opts.stride) {
      if (opts.anchor && std::abs(pts[i] - *opts.anchor) > ctx.grid.h) continue;
      if (!sink(make(pts[i], pts[j]))) return;
    }
  }
}

void enumerate_quasi_simple(const OracleContext& ctx, const FamilyOptions& opts,
                            const std::function<bool(const FiniteCst&)>& sink) {
  if (!opts.anchor) {
    throw BadParamsError("quasi_simple_witness enumeration needs an anchor action");
  }
  const auto& pts = ctx.grid.points;
  const int n = static_cast<int>(pts.size());
  const double lo = pts[0], hi = pts[n - 1];
  const double a = *opts.anchor;
  const ActionSpace space{lo, hi};
  const int ai = ctx.grid.index_of(a, ctx.grid.h);
  const double ph = ai >= 0 ? ctx.image[ai] : phi(*ctx.spec, a);
  const double band = 10 * ctx.spec->tol.x_tol;

  if (std::abs(ph - a) <= band) {
    FiniteCst cournot{{whole_of(ctx)}, "quasi-simple"};
    sink(cournot);
    return;
  }

  // One non-interval element X1 = {x_hat} u T; the rest of the space is
  // either a single complement block or all grid singletons (the singleton
  // form never forces a shared continuation on the complement).
  auto emit_block = [&](double hat, const IntervalUnion& tail) {
    FiniteCst cst;
    cst.elements.push_back(IntervalUnion::point(hat).unite(tail, 0));
    IntervalUnion rest = remove_point(tail.complement(space), hat, space);
    cst.elements.push_back(std::move(rest));
    cst.label = "quasi-simple";
    return sink(cst);
  };
  auto emit_singletons = [&](double hat, const IntervalUnion& tail) {
    FiniteCst cst;
    const IntervalUnion head = IntervalUnion::point(hat).unite(tail, 0);
    cst.elements.push_back(head);
    for (double p : pts) {
      if (!head.contains(p)) cst.elements.push_back(IntervalUnion::point(p));
    }
    cst.label = "quasi-simple";
    return sink(cst);
  };

  const IntervalUnion right_tail = IntervalUnion::interval(a, hi, false, true);
  const IntervalUnion left_tail = IntervalUnion::interval(lo, a, true, false);
  const bool rightward_first = ph > a;
  for (int k = 0; k < n; ++k) {
    for (bool rightward : {rightward_first, !rightward_first}) {
      const int idx = rightward ? k : n - 1 - k;
      const double hat = pts[idx];
      if (rightward ? hat >= a : hat <= a) continue;
      if (opts.strict_upper_contour && !opts.strict_upper_contour->is_empty()) {
        const IntervalUnion& tail = *opts.strict_upper_contour;
        if (!tail.contains(hat)) {
          if (!emit_block(hat, tail)) return;
          if (!emit_singletons(hat, tail)) return;
        }
      }
      if (!emit_block(hat, rightward ? right_tail : left_tail)) return;
    }
  }
}

}  // namespace

void enumerate_cst_family(const OracleContext& ctx, CstFamily family,
                          const FamilyOptions& opts,
                          const std::function<bool(const FiniteCst&)>& sink) {
  switch (family) {
    case CstFamily::CutoffPartitions:
      enumerate_cutoffs(ctx, opts, sink);
      return;
    case CstFamily::IntervalPlusComplement:
      enumerate_interval_covers(ctx, opts, sink);
      return;
    case CstFamily::ThreePieceDesign:
      enumerate_three_piece(ctx, opts, sink);
      return;
    case CstFamily::QuasiSimpleWitness:
      enumerate_quasi_simple(ctx, opts, sink);
      return;
  }
  throw UnknownFamilyError("unknown CST family");
}

std::optional<FiniteCst> certify(const OracleContext& ctx, double x_star,
                                 std::span<const CstFamily> families,
                                 FamilyOptions opts) {
  const int idx = ctx.grid.index_of(x_star, ctx.grid.h / 2 + 1e-12);
  if (idx < 0) throw BadParamsError("certify target must lie on the grid");
  opts.anchor = ctx.grid.points[idx];

  std::optional<FiniteCst> witness;
  for (CstFamily family : families) {
    enumerate_cst_family(ctx, family, opts, [&](const FiniteCst& cst) {
      const SpeResult res = spe_outcomes(ctx, cst);
      if (!res.no_equilibrium && res.contains_index(idx)) {
        witness = cst;
        return false;
      }
      return true;
    });
    if (witness) break;
  }
  return witness;
}

namespace {

struct LiteralParser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  double number() {
    skip_ws();
    std::size_t end = pos;
    while (end < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[end])) ||
            text[end] == '.' || text[end] == '-' || text[end] == '+' ||
            text[end] == 'e' || text[end] == 'E')) {
      ++end;
    }
    if (end == pos) throw ParseError("expected a number in CST literal");
    const double v = std::stod(text.substr(pos, end - pos));
    pos = end;
    return v;
  }

  IntervalPiece piece() {
    skip_ws();
    if (eat('{')) {
      const double v = number();
      if (!eat('}')) throw ParseError("expected '}' in CST literal");
      return {v, v, true, true};
    }
    bool lo_closed;
    if (eat('[')) {
      lo_closed = true;
    } else if (eat('(')) {
      lo_closed = false;
    } else {
      throw ParseError("expected '[', '(' or '{' in CST literal");
    }
    const double lo = number();
    if (!eat(',')) throw ParseError("expected ',' in CST literal");
    const double hi = number();
    bool hi_closed;
    if (eat(']')) {
      hi_closed = true;
    } else if (eat(')')) {
      hi_closed = false;
    } else {
      throw ParseError("expected ']' or ')' in CST literal");
    }
    if (!(lo <= hi)) throw ParseError("interval endpoints out of order");
    return {lo, hi, lo_closed, hi_closed};
  }
};

}  // namespace

FiniteCst parse_cst_literal(const std::string& text, const ActionSpace& space) {
  LiteralParser p{text};
  FiniteCst cst;
  cst.label = "literal";
  for (;;) {
    std::vector<IntervalPiece> pieces;
    pieces.push_back(p.piece());
    while (p.peek() == 'u' || p.peek() == 'U') {
      ++p.pos;
      pieces.push_back(p.piece());
    }
    for (const auto& pc : pieces) {
      if (pc.lo < space.lo - 1e-9 || pc.hi > space.hi + 1e-9) {
        throw ParseError("CST element extends beyond the leader action space");
      }
    }
    cst.elements.push_back(IntervalUnion::from_pieces(std::move(pieces), 0));
    if (p.peek() == '|') {
      ++p.pos;
      continue;
    }
    p.skip_ws();
    if (p.pos != text.size()) throw ParseError("trailing characters in CST literal");
    break;
  }
  return cst;
}

std::string to_literal(const FiniteCst& cst) {
  std::string s;
  for (std::size_t i = 0; i < cst.elements.size(); ++i) {
    if (i) s += " | ";
    s += cst.elements[i].to_string();
  }
  return s;
}

FiniteCst stackelberg_cst(const Grid& grid) {
  FiniteCst cst;
  cst.label = "stackelberg";
  cst.elements.reserve(grid.points.size());
  for (double p : grid.points) cst.elements.push_back(IntervalUnion::point(p));
  return cst;
}

FiniteCst cournot_cst(const ActionSpace& space) {
  return FiniteCst{{IntervalUnion::whole(space)}, "cournot"};
}

namespace {

double boundary_distance(const IntervalUnion& set, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : set.pieces()) {
    best = std::min(best, std::abs(x - p.lo));
    best = std::min(best, std::abs(x - p.hi));
  }
  return best;
}

std::vector<double> equivalence_hints(const GameSpec& spec,
                                      std::span<const double> extra) {
  std::vector<double> hints = representative_points(cournot_set(spec));
  for (double p : representative_points(stackelberg_set(spec))) hints.push_back(p);
  hints.insert(hints.end(), extra.begin(), extra.end());
  return hints;
}

EquivalenceReport compare_sets(const OracleContext& ctx, std::vector<char> oracle,
                               const IntervalUnion& theorem) {
  EquivalenceReport rep;
  rep.points = ctx.grid.points;
  rep.h = ctx.grid.h;
  rep.oracle_member = std::move(oracle);
  rep.theorem_member.resize(rep.points.size());
  const double member_tol = 100 * ctx.spec->tol.x_tol;
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    rep.theorem_member[i] = theorem.distance_to(rep.points[i]) <= member_tol ? 1 : 0;
    if (rep.oracle_member[i] == rep.theorem_member[i]) {
      ++rep.agreements;
    } else if (boundary_distance(theorem, rep.points[i]) > rep.h + 1e-6) {
      rep.discrepancies.push_back(rep.points[i]);
    }
  }
  return rep;
}

}  // namespace

EquivalenceReport simple_equivalence(const GameSpec& spec, int grid_n,
                                     std::span<const double> extra_hints) {
  const std::vector<double> hints = equivalence_hints(spec, extra_hints);
  const Grid grid = Grid::build(spec.leader_space, grid_n, hints);
  const OracleContext ctx = OracleContext::build(spec, grid);

  std::vector<FiniteCst> batch;
  enumerate_cst_family(ctx, CstFamily::CutoffPartitions, {}, [&](const FiniteCst& c) {
    batch.push_back(c);
    return true;
  });

  std::vector<std::vector<int>> certified(batch.size());
  parallel_for(batch.size(), [&](std::size_t k) {
    const SpeResult res = spe_outcomes(ctx, batch[k]);
    if (!res.no_equilibrium) {
      for (const auto& o : res.outcomes) certified[k].push_back(o.grid_index);
    }
  });
  std::vector<char> oracle(ctx.grid.points.size(), 0);
  for (const auto& ids : certified) {
    for (int i : ids) oracle[i] = 1;
  }
  return compare_sets(ctx, std::move(oracle), simply_plausible_set(spec));
}

EquivalenceReport interval_equivalence(const GameSpec& spec, int grid_n,
                                       std::span<const double> extra_hints) {
  const std::vector<double> hints = equivalence_hints(spec, extra_hints);
  const Grid grid = Grid::build(spec.leader_space, grid_n, hints);
  const OracleContext ctx = OracleContext::build(spec, grid);

  const CstFamily fams[] = {CstFamily::IntervalPlusComplement};
  std::vector<char> oracle(ctx.grid.points.size(), 0);
  parallel_for(oracle.size(), [&](std::size_t i) {
    oracle[i] = certify(ctx, ctx.grid.points[i], fams).has_value() ? 1 : 0;
  });

  const IntervalUnion theorem = i_plausible_set(spec);
  EquivalenceReport rep = compare_sets(ctx, std::move(oracle), theorem);

  // For this class the criterion is one-sided containment plus coverage.
  rep.discrepancies.clear();
  rep.agreements = 0;
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    const double x = rep.points[i];
    bool ok = true;
    if (rep.oracle_member[i] && theorem.distance_to(x) > rep.h + 1e-9) ok = false;
    if (rep.theorem_member[i] && !rep.oracle_member[i]) {
      bool near = false;
      for (std::size_t j = 0; j < rep.points.size(); ++j) {
        if (rep.oracle_member[j] && std::abs(rep.points[j] - x) <= rep.h + 1e-12) {
          near = true;
          break;
        }
      }
      if (!near) ok = false;
    }
    if (ok) {
      ++rep.agreements;
    } else {
      rep.discrepancies.push_back(x);
    }
  }
  return rep;
}

}  // namespace comlim
