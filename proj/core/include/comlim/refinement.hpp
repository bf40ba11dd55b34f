#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "comlim/oracle.hpp"

namespace comlim {

/// K' is richer than K when K' contains every element of K.
bool is_richer(const FiniteCst& k_prime, const FiniteCst& k, double tol = 1e-9);

/// K' is finer than K when every element of K' sits inside some element of
/// K and every element of K is the union of the K' elements it contains.
bool is_finer(const FiniteCst& k_prime, const FiniteCst& k, double tol = 1e-9);

/// Same, with the union condition checked on the grid projection. Needed
/// when K' carries grid singletons standing in for a continuum of them.
bool is_finer_on_grid(const FiniteCst& k_prime, const FiniteCst& k,
                      const Grid& grid, double tol = 1e-9);

/// K' is worse than K when some equilibrium of G(K') pays the leader
/// strictly less than every equilibrium of G(K). Empty equilibrium set for
/// the base CST yields nullopt (the comparison is undefined there).
std::optional<bool> is_worse(const OracleContext& ctx, const FiniteCst& k_prime,
                             const FiniteCst& k);

struct WrtVerdict {
  bool plausible = false;
  bool boundary_ambiguous = false;  // the strict and banded readings differ
};

/// Equilibrium attainability of x_star when the leader's first-period menu
/// is restricted to subsets of the interval, under interval-partition CSTs.
WrtVerdict simply_plausible_wrt(const GameSpec& spec, double x_star,
                                const IntervalPiece& interval);

/// Same under interval (Property I) CSTs.
WrtVerdict i_plausible_wrt(const GameSpec& spec, double x_star,
                           const IntervalPiece& interval);

struct WorseRefinement {
  bool exists = false;
  bool no_equilibrium = false;  // the base game had no pure equilibrium
  double u_bar = 0;             // witness utility level (an infimum)
  bool attained = true;
  double spe_min_payoff = 0;
  std::vector<IntervalUnion> wrt_sets;               // per element
  std::vector<std::pair<double, double>> witnesses;  // per element (action, U)
};

/// Two-step test for the existence of a worse refinement of a simple CST:
/// per-element interval-relative plausible sets first, then a search for a
/// utility level below every equilibrium payoff of G(K) that every element
/// can reach. Throws NotSimpleError when K is not an interval partition.
WorseRefinement worse_refinement_search(const GameSpec& spec, const FiniteCst& k,
                                        int grid_n = 0);

}  // namespace comlim
