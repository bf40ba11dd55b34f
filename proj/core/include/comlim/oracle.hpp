#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "comlim/equilibria.hpp"
#include "comlim/game.hpp"
#include "comlim/interval_union.hpp"

namespace comlim {

/// Discretized leader actions. Always contains both space endpoints; callers
/// add equilibrium actions and other landmark points as hints so that the
/// worked examples sit on the grid exactly.
struct Grid {
  std::vector<double> points;
  double h = 0;  // largest adjacent spacing

  static Grid build(const ActionSpace& space, int n,
                    std::span<const double> hints = {});
  int size() const { return static_cast<int>(points.size()); }
  int index_of(double x, double tol) const;  // -1 when no point is that close
};

/// Follower response, leader value and phi cached on the grid, plus the
/// tolerances used by every subgame-perfection test.
struct OracleContext {
  const GameSpec* spec = nullptr;
  Grid grid;
  std::vector<double> response;  // R_F at grid points
  std::vector<double> value;    // U at grid points
  std::vector<double> image;    // phi at grid points
  double eta_tol = 0;            // slack on the no-deviation inequality
  double tie_tol = 0;            // slack on first-period payoff comparisons
  double lipschitz = 0;          // sampled bound on |U'|

  static OracleContext build(const GameSpec& spec, Grid grid);

  /// Exact supremum of eta(., b) over the closure of the element, using the
  /// strict concavity of the deviation gain: per piece the supremum sits at
  /// phi(b) clamped into the piece.
  double sup_eta(int b, const IntervalUnion& element) const;
};

/// A commitment structure over the grid. Elements are finite unions of
/// intervals (openness respected), so that open-interval subgames from the
/// continuum model are represented faithfully.
struct FiniteCst {
  std::vector<IntervalUnion> elements;
  std::string label;
};

/// A commitment structure with one continuation action per element.
struct AdmissiblePair {
  FiniteCst cst;
  std::vector<double> beta;
};

/// Throws CoverError unless every grid point belongs to some element.
void check_cover(const OracleContext& ctx, const FiniteCst& cst);

/// Grid actions b in the element with eta(x, b) <= eta_tol for every x in
/// the element (quantified over the continuum closure).
std::vector<int> admissible_actions(const OracleContext& ctx,
                                    const IntervalUnion& element);

/// Same with the no-deviation quantifier restricted to the given finite set
/// of grid indices.
std::vector<int> admissible_actions(const OracleContext& ctx,
                                    std::span<const int> element_indices);

bool is_admissible(const OracleContext& ctx, const AdmissiblePair& pair);

struct SpeOutcome {
  double leader_action = 0;
  double follower_action = 0;
  double leader_payoff = 0;
  int grid_index = -1;
  int element = -1;
};

struct SpeResult {
  std::vector<SpeOutcome> outcomes;  // sorted by leader action
  bool no_equilibrium = false;       // some subgame has no pure equilibrium
  std::vector<std::vector<int>> admissible;  // per element

  double min_payoff() const;
  double max_payoff() const;
  bool contains_index(int grid_index) const;
};

/// All pure subgame perfect equilibrium outcomes of the two-period game:
/// x* qualifies iff it is admissible in some element and every element
/// admits a continuation with payoff at most U(x*).
SpeResult spe_outcomes(const OracleContext& ctx, const FiniteCst& cst);

/// Restricts every subgame to its leader-best continuation first.
SpeResult spe_outcomes_leader_preferred(const OracleContext& ctx,
                                        const FiniteCst& cst);

enum class CstFamily {
  CutoffPartitions,        // interval partitions with up to max_cuts cuts
  IntervalPlusComplement,  // interval covers, Property P relaxed
  ThreePieceDesign,        // {(lo,a], {lo} u (a,b), [b,hi]}
  QuasiSimpleWitness,      // partition with one non-interval element
};

struct FamilyOptions {
  int max_cuts = 2;
  std::optional<double> anchor;   // target action for witness constructions
  std::optional<double> anchor2;  // second cut for the design family
  std::optional<IntervalUnion> strict_upper_contour;  // Q_>(anchor)
  int stride = 1;
};

/// Streams the family lazily; enumeration stops when sink returns false.
void enumerate_cst_family(const OracleContext& ctx, CstFamily family,
                          const FamilyOptions& opts,
                          const std::function<bool(const FiniteCst&)>& sink);

/// First CST among the enumerated families whose equilibrium outcomes
/// contain x_star (which must lie on the grid).
std::optional<FiniteCst> certify(const OracleContext& ctx, double x_star,
                                 std::span<const CstFamily> families,
                                 FamilyOptions opts = {});

/// Bracket mini-language, e.g. "[0,1.5)|[1.5,1.6667]" or
/// "[0,0.125]u(0.3333,1.6667]|{0.5}". '|' separates elements, 'u' joins the
/// pieces of one element, braces denote singletons.
FiniteCst parse_cst_literal(const std::string& text, const ActionSpace& space);
std::string to_literal(const FiniteCst& cst);

FiniteCst stackelberg_cst(const Grid& grid);
FiniteCst cournot_cst(const ActionSpace& space);

/// Oracle-vs-theorem comparison of a plausibility class over one grid.
struct EquivalenceReport {
  std::vector<double> points;
  std::vector<char> oracle_member;
  std::vector<char> theorem_member;
  std::vector<double> discrepancies;  // disagreements beyond one grid spacing
  double h = 0;
  int agreements = 0;

  bool clean() const { return discrepancies.empty(); }
};

/// Certified set of cutoff partitions (<= 3 pieces) against the
/// simply-plausible characterization.
EquivalenceReport simple_equivalence(const GameSpec& spec, int grid_n,
                                     std::span<const double> extra_hints = {});

/// Per-point interval-cover certificates against the I-plausible
/// characterization: certificates must lie inside the theorem set and every
/// theorem point must be within one spacing of a certificate.
EquivalenceReport interval_equivalence(const GameSpec& spec, int grid_n,
                                       std::span<const double> extra_hints = {});

}  // namespace comlim
