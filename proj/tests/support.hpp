#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "comlim/interval_union.hpp"

namespace comlim::testing {

struct ExpectedPiece {
  double lo;
  double hi;
};

/// Piece-by-piece endpoint comparison against expected values.
inline bool matches_pieces(const IntervalUnion& got,
                           const std::vector<ExpectedPiece>& want, double tol,
                           std::string* why = nullptr) {
  if (got.pieces().size() != want.size()) {
    if (why) {
      *why = "expected " + std::to_string(want.size()) + " pieces, got " +
             std::to_string(got.pieces().size()) + ": " + got.to_string();
    }
    return false;
  }
  for (std::size_t i = 0; i < want.size(); ++i) {
    const auto& p = got.pieces()[i];
    if (std::abs(p.lo - want[i].lo) > tol || std::abs(p.hi - want[i].hi) > tol) {
      if (why) {
        *why = "piece " + std::to_string(i) + " is [" + std::to_string(p.lo) +
               "," + std::to_string(p.hi) + "], expected [" +
               std::to_string(want[i].lo) + "," + std::to_string(want[i].hi) + "]";
      }
      return false;
    }
  }
  return true;
}

inline std::mt19937_64 seeded_rng(unsigned seed) { return std::mt19937_64{seed}; }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace comlim::testing
