#include "comlim/interval_union.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace comlim {

void validate(const ActionSpace& s) {
  if (!(s.lo < s.hi) || !std::isfinite(s.lo) || !std::isfinite(s.hi)) {
    throw BadParamsError("action space must be a nondegenerate finite interval");
  }
}

namespace {

bool piece_valid(const IntervalPiece& p) {
  if (!std::isfinite(p.lo) || !std::isfinite(p.hi)) return false;
  if (p.lo > p.hi) return false;
  if (p.lo == p.hi && !(p.lo_closed && p.hi_closed)) return false;
  return true;
}

// Pieces p (left) and q (right) can be fused into one interval. An exact
// zero-width gap between two open endpoints is a deliberate puncture and is
// kept; anything tighter than merge_tol otherwise is numeric noise.
bool should_merge(const IntervalPiece& p, const IntervalPiece& q, double merge_tol) {
  const double gap = q.lo - p.hi;
  if (gap < 0) return true;
  if (gap == 0) return p.hi_closed || q.lo_closed;
  return gap <= merge_tol;
}

IntervalPiece fuse(const IntervalPiece& p, const IntervalPiece& q) {
  IntervalPiece out;
  if (p.lo < q.lo) {
    out.lo = p.lo;
    out.lo_closed = p.lo_closed;
  } else if (q.lo < p.lo) {
    out.lo = q.lo;
    out.lo_closed = q.lo_closed;
  } else {
    out.lo = p.lo;
    out.lo_closed = p.lo_closed || q.lo_closed;
  }
  if (p.hi > q.hi) {
    out.hi = p.hi;
    out.hi_closed = p.hi_closed;
  } else if (q.hi > p.hi) {
    out.hi = q.hi;
    out.hi_closed = q.hi_closed;
  } else {
    out.hi = p.hi;
    out.hi_closed = p.hi_closed || q.hi_closed;
  }
  return out;
}

std::vector<IntervalPiece> normalize(std::vector<IntervalPiece> pieces,
                                     double merge_tol) {
  for (const auto& p : pieces) {
    if (!piece_valid(p)) throw BadParamsError("invalid interval piece");
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const IntervalPiece& a, const IntervalPiece& b) {
              if (a.lo != b.lo) return a.lo < b.lo;
              return a.hi < b.hi;
            });
  std::vector<IntervalPiece> out;
  for (const auto& p : pieces) {
    if (!out.empty() && should_merge(out.back(), p, merge_tol)) {
      out.back() = fuse(out.back(), p);
    } else {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace

IntervalUnion IntervalUnion::interval(double lo, double hi, bool lo_closed,
                                      bool hi_closed) {
  IntervalUnion u;
  IntervalPiece p{lo, hi, lo_closed, hi_closed};
  if (!piece_valid(p)) throw BadParamsError("invalid interval");
  u.pieces_.push_back(p);
  return u;
}

IntervalUnion IntervalUnion::from_pieces(std::vector<IntervalPiece> pieces,
                                         double merge_tol) {
  IntervalUnion u;
  u.pieces_ = normalize(std::move(pieces), merge_tol);
  return u;
}

bool IntervalUnion::contains(double x) const {
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const IntervalPiece& p) { return v < p.lo; });
  if (it == pieces_.begin()) return false;
  const IntervalPiece& p = *(it - 1);
  const bool above_lo = x > p.lo || (x == p.lo && p.lo_closed);
  const bool below_hi = x < p.hi || (x == p.hi && p.hi_closed);
  return above_lo && below_hi;
}

double IntervalUnion::distance_to(double x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces_) {
    if (x < p.lo) {
      best = std::min(best, p.lo - x);
    } else if (x > p.hi) {
      best = std::min(best, x - p.hi);
    } else {
      return 0.0;
    }
  }
  return best;
}

double IntervalUnion::min_value() const {
  if (pieces_.empty()) throw EmptySetError("min of empty interval union");
  return pieces_.front().lo;
}

double IntervalUnion::max_value() const {
  if (pieces_.empty()) throw EmptySetError("max of empty interval union");
  return pieces_.back().hi;
}

double IntervalUnion::measure() const {
  double m = 0;
  for (const auto& p : pieces_) m += p.length();
  return m;
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other,
                                   double merge_tol) const {
  std::vector<IntervalPiece> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return from_pieces(std::move(all), merge_tol);
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  std::vector<IntervalPiece> out;
  std::size_t i = 0, j = 0;
  while (i < pieces_.size() && j < other.pieces_.size()) {
    const IntervalPiece& a = pieces_[i];
    const IntervalPiece& b = other.pieces_[j];
    IntervalPiece c;
    if (a.lo > b.lo) {
      c.lo = a.lo;
      c.lo_closed = a.lo_closed;
    } else if (b.lo > a.lo) {
      c.lo = b.lo;
      c.lo_closed = b.lo_closed;
    } else {
      c.lo = a.lo;
      c.lo_closed = a.lo_closed && b.lo_closed;
    }
    if (a.hi < b.hi) {
      c.hi = a.hi;
      c.hi_closed = a.hi_closed;
    } else if (b.hi < a.hi) {
      c.hi = b.hi;
      c.hi_closed = b.hi_closed;
    } else {
      c.hi = a.hi;
      c.hi_closed = a.hi_closed && b.hi_closed;
    }
    if (c.lo < c.hi || (c.lo == c.hi && c.lo_closed && c.hi_closed)) {
      out.push_back(c);
    }
    if (a.hi < b.hi || (a.hi == b.hi && !a.hi_closed)) {
      ++i;
    } else {
      ++j;
    }
  }
  // Pieces never need fusing here, so keep exact boundaries.
  IntervalUnion u;
  u.pieces_ = std::move(out);
  return u;
}

IntervalUnion IntervalUnion::complement(const ActionSpace& ambient) const {
  std::vector<IntervalPiece> out;
  double cursor = ambient.lo;
  bool cursor_closed = true;
  for (const auto& p : pieces_) {
    if (p.hi < ambient.lo || p.lo > ambient.hi) continue;
    const double gap_hi = std::min(p.lo, ambient.hi);
    if (cursor < gap_hi || (cursor == gap_hi && cursor_closed && !p.lo_closed)) {
      out.push_back({cursor, gap_hi, cursor_closed, !p.lo_closed});
    }
    if (p.hi > cursor || (p.hi == cursor && p.hi_closed)) {
      cursor = p.hi;
      cursor_closed = !p.hi_closed;
    }
    if (cursor > ambient.hi) break;
  }
  if (cursor < ambient.hi || (cursor == ambient.hi && cursor_closed)) {
    out.push_back({cursor, ambient.hi, cursor_closed, true});
  }
  IntervalUnion u;
  u.pieces_ = std::move(out);
  return u;
}

bool IntervalUnion::superset_of(const IntervalUnion& other, double tol) const {
  for (const auto& q : other.pieces_) {
    double pos = q.lo;
    bool covered = false;
    for (const auto& p : pieces_) {
      if (p.lo - tol > pos) break;
      if (p.hi + tol < pos) continue;
      pos = std::max(pos, p.hi);
      if (pos + tol >= q.hi) {
        covered = true;
        break;
      }
    }
    if (!covered && !(pos + tol >= q.hi)) return false;
  }
  return true;
}

bool IntervalUnion::set_equal(const IntervalUnion& other, double tol) const {
  return superset_of(other, tol) && other.superset_of(*this, tol);
}

double IntervalUnion::symmetric_difference_measure(const IntervalUnion& other) const {
  const double lo = std::min(pieces_.empty() ? 0.0 : min_value(),
                             other.pieces_.empty() ? 0.0 : other.min_value());
  const double hi = std::max(pieces_.empty() ? 0.0 : max_value(),
                             other.pieces_.empty() ? 0.0 : other.max_value());
  ActionSpace box{lo - 1.0, hi + 1.0};
  const IntervalUnion a_not_b = intersect(other.complement(box));
  const IntervalUnion b_not_a = other.intersect(complement(box));
  return a_not_b.measure() + b_not_a.measure();
}

std::string IntervalUnion::to_string() const {
  if (pieces_.empty()) return "{}";
  std::string s;
  char buf[64];
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& p = pieces_[i];
    if (i) s += " u ";
    if (p.is_point()) {
      std::snprintf(buf, sizeof(buf), "{%.12g}", p.lo);
      s += buf;
    } else {
      std::snprintf(buf, sizeof(buf), "%c%.12g,%.12g%c", p.lo_closed ? '[' : '(',
                    p.lo, p.hi, p.hi_closed ? ']' : ')');
      s += buf;
    }
  }
  return s;
}

namespace {

// Bisects the truth boundary between a and b (pred differs) and returns the
// endpoint on the true side of the final bracket.
double refine_boundary(const std::function<bool(double)>& pred, double a,
                       bool pa, double b, double x_tol) {
  double true_side = pa ? a : b;
  while (std::abs(b - a) > x_tol) {
    const double m = 0.5 * (a + b);
    if (pred(m) == pa) {
      a = m;
    } else {
      b = m;
    }
    true_side = pa ? a : b;
  }
  return true_side;
}

}  // namespace

IntervalUnion from_predicate(const std::function<bool(double)>& pred,
                             const ActionSpace& space, int grid_n,
                             std::span<const double> hints, double x_tol,
                             bool closed_boundaries) {
  validate(space);
  if (grid_n < 3) throw BadParamsError("from_predicate needs grid_n >= 3");

  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(grid_n) + hints.size());
  for (int i = 0; i < grid_n; ++i) {
    xs.push_back(i + 1 == grid_n
                     ? space.hi
                     : space.clamp(space.lo + space.width() * i / (grid_n - 1)));
  }
  for (double h : hints) {
    if (space.contains(h)) xs.push_back(h);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<char> truth(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) truth[i] = pred(xs[i]) ? 1 : 0;

  std::vector<IntervalPiece> pieces;
  std::size_t i = 0;
  while (i < xs.size()) {
    if (!truth[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < xs.size() && truth[j + 1]) ++j;

    double lo = xs[i];
    double hi = xs[j];
    if (i > 0) lo = refine_boundary(pred, xs[i - 1], false, xs[i], x_tol);
    if (j + 1 < xs.size()) hi = refine_boundary(pred, xs[j + 1], false, xs[j], x_tol);

    IntervalPiece p{lo, hi, true, true};
    const double collapse = i == j ? 200 * x_tol : 3 * x_tol;
    if (hi - lo <= collapse) {
      // Collapse to the sampled point: this is an isolated solution, usually
      // a caller-supplied hint such as an equilibrium action.
      p = {xs[i], xs[i], true, true};
    } else if (!closed_boundaries) {
      if (i > 0) p.lo_closed = false;
      if (j + 1 < xs.size()) p.hi_closed = false;
    }
    pieces.push_back(p);
    i = j + 1;
  }
  return IntervalUnion::from_pieces(std::move(pieces), 10 * x_tol);
}

}  // namespace comlim
