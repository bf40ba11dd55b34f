#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "comlim/families.hpp"
#include "comlim/plausibility.hpp"
#include "comlim/refinement.hpp"
#include "support.hpp"

using namespace comlim;
using comlim::testing::seeded_rng;
using comlim::testing::uniform;

namespace {

FiniteCst coordination_base() {
  FiniteCst k;
  k.elements.push_back(IntervalUnion::point(0.0));
  k.elements.push_back(IntervalUnion::interval(0.0, 1.0, false, false));
  k.elements.push_back(IntervalUnion::point(1.0));
  return k;
}

// The refinement of the open middle interval into [nu, 1-nu] plus grid
// singletons on both sides.
FiniteCst coordination_refined(const Grid& grid, double nu) {
  FiniteCst k;
  k.elements.push_back(IntervalUnion::interval(nu, 1.0 - nu));
  for (double p : grid.points) {
    if (p < nu || p > 1.0 - nu) k.elements.push_back(IntervalUnion::point(p));
  }
  return k;
}

FiniteCst random_partition(std::mt19937_64& rng, const Grid& grid, int pieces) {
  std::vector<int> cuts;
  for (int i = 0; i + 1 < pieces; ++i) {
    cuts.push_back(1 + static_cast<int>(uniform(rng, 0, grid.size() - 2)));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  FiniteCst k;
  int start = 0;
  for (int c : cuts) {
    k.elements.push_back(
        IntervalUnion::interval(grid.points[start], grid.points[c], true, false));
    start = c;
  }
  k.elements.push_back(IntervalUnion::interval(grid.points[start], grid.points.back()));
  return k;
}

}  // namespace

TEST_CASE("richer means containing every element") {
  FiniteCst k = coordination_base();
  FiniteCst k_plus = k;
  k_plus.elements.push_back(IntervalUnion::interval(0.25, 0.75));
  CHECK(is_richer(k_plus, k));
  CHECK(!is_richer(k, k_plus));
  CHECK(is_richer(k, k));

  // A fine partition does not contain the whole-space element.
  FiniteCst cournot;
  cournot.elements.push_back(IntervalUnion::interval(0.0, 1.0));
  FiniteCst split;
  split.elements.push_back(IntervalUnion::interval(0.0, 0.5, true, false));
  split.elements.push_back(IntervalUnion::interval(0.5, 1.0));
  CHECK(!is_richer(split, cournot));
}

TEST_CASE("every CST is finer than the whole-space CST") {
  FiniteCst cournot;
  cournot.elements.push_back(IntervalUnion::interval(0.0, 1.0));
  FiniteCst split;
  split.elements.push_back(IntervalUnion::interval(0.0, 0.3, true, false));
  split.elements.push_back(IntervalUnion::interval(0.3, 1.0));
  CHECK(is_finer(split, cournot));
  CHECK(!is_finer(cournot, split));

  // Singletons cannot absorb the whole space.
  FiniteCst singles;
  singles.elements.push_back(IntervalUnion::point(0.0));
  singles.elements.push_back(IntervalUnion::point(1.0));
  CHECK(!is_finer(cournot, singles));
}

TEST_CASE("finer is reflexive and transitive on random partitions") {
  GameSpec spec = make_coordination({0.0});
  Grid grid = Grid::build(spec.leader_space, 17);
  auto rng = seeded_rng(61);
  for (int iter = 0; iter < 40; ++iter) {
    FiniteCst a = random_partition(rng, grid, 4);
    CHECK(is_finer(a, a));
    // Split one element of a to get a finer b, then one of b for c.
    auto split_once = [&](const FiniteCst& base) {
      FiniteCst out;
      bool done = false;
      for (const auto& e : base.elements) {
        const auto& p = e.pieces().front();
        if (!done && !p.is_point() && p.length() > 0.2) {
          const double mid = 0.5 * (p.lo + p.hi);
          out.elements.push_back(
              IntervalUnion::from_pieces({{p.lo, mid, p.lo_closed, false}}, 0));
          out.elements.push_back(
              IntervalUnion::from_pieces({{mid, p.hi, true, p.hi_closed}}, 0));
          done = true;
        } else {
          out.elements.push_back(e);
        }
      }
      return out;
    };
    FiniteCst b = split_once(a);
    FiniteCst c = split_once(b);
    CHECK(is_finer(b, a));
    CHECK(is_finer(c, b));
    CHECK(is_finer(c, a));
  }
}

TEST_CASE("the refined coordination CST is finer and worse") {
  GameSpec spec = make_coordination({0.01});
  std::vector<double> hints{0.05, 0.95, 0.5};
  Grid grid = Grid::build(spec.leader_space, 201, hints);
  OracleContext ctx = OracleContext::build(spec, grid);

  const FiniteCst k = coordination_base();
  const FiniteCst k_prime = coordination_refined(grid, 0.05);

  CHECK(is_finer_on_grid(k_prime, k, grid));

  const SpeResult base = spe_outcomes(ctx, k);
  REQUIRE(!base.no_equilibrium);
  REQUIRE(base.outcomes.size() == 1);
  CHECK(base.outcomes[0].leader_action == doctest::Approx(0.5));

  const SpeResult refined = spe_outcomes(ctx, k_prime);
  CHECK(refined.outcomes.size() >= 3);

  const auto worse = is_worse(ctx, k_prime, k);
  REQUIRE(worse.has_value());
  CHECK(*worse);

  CHECK(is_worse(ctx, k, k) == false);
}

TEST_CASE("a richer CST is never worse") {
  GameSpec spec = make_duopoly({0.8, 0.0});
  std::vector<double> hints = representative_points(cournot_set(spec));
  Grid grid = Grid::build(spec.leader_space, 101, hints);
  OracleContext ctx = OracleContext::build(spec, grid);
  auto rng = seeded_rng(62);
  for (int iter = 0; iter < 30; ++iter) {
    FiniteCst k = random_partition(rng, grid, 3);
    FiniteCst richer = k;
    double a = grid.points[static_cast<int>(uniform(rng, 0, grid.size() - 1))];
    double b = grid.points[static_cast<int>(uniform(rng, 0, grid.size() - 1))];
    if (a > b) std::swap(a, b);
    richer.elements.push_back(IntervalUnion::interval(a, b));
    const auto verdict = is_worse(ctx, richer, k);
    if (verdict.has_value()) CHECK(!*verdict);
  }
}

TEST_CASE("interval-relative plausibility agrees with the global sets") {
  for (const GameSpec& spec : {make_duopoly({0.8, 0.0}), make_duopoly({1.2, 0.0}),
                               make_coordination({0.0})}) {
    const IntervalPiece whole{spec.leader_space.lo, spec.leader_space.hi, true, true};
    const IntervalUnion simple = simply_plausible_set(spec);
    const IntervalUnion iset = i_plausible_set(spec);
    const double guard = spec.leader_space.width() / 100;
    for (int k = 0; k <= 100; ++k) {
      const double x = std::min(
          spec.leader_space.hi,
          spec.leader_space.lo + spec.leader_space.width() * k / 100);
      // Skip probes hugging a boundary of either characterized set.
      bool near_boundary = false;
      for (const IntervalUnion* s : {&simple, &iset}) {
        for (const auto& p : s->pieces()) {
          near_boundary = near_boundary || std::abs(x - p.lo) < guard ||
                          std::abs(x - p.hi) < guard;
        }
      }
      if (near_boundary) continue;
      CAPTURE(spec.label);
      CAPTURE(x);
      CHECK(simply_plausible_wrt(spec, x, whole).plausible == simple.contains(x));
      CHECK(i_plausible_wrt(spec, x, whole).plausible == iset.contains(x));
    }
  }
}

TEST_CASE("relative plausibility worked cases") {
  GameSpec d12 = make_duopoly({1.2, 0.0});
  const IntervalPiece whole{0.0, 2.5, true, true};
  CHECK(!simply_plausible_wrt(d12, 0.7, whole).plausible);
  CHECK(i_plausible_wrt(d12, 0.7, whole).plausible);
  CHECK(!i_plausible_wrt(d12, 0.2, whole).plausible);

  GameSpec d08 = make_duopoly({0.8, 0.0});
  const IntervalPiece whole08{0.0, 5.0 / 3, true, true};
  CHECK(simply_plausible_wrt(d08, 0.5, whole08).plausible);
  CHECK(simply_plausible_wrt(d08, 5.0 / 11, whole08).plausible);
  CHECK(i_plausible_wrt(d08, 5.0 / 11, whole08).plausible);
}

TEST_CASE("x_star must lie in the interval") {
  GameSpec spec = make_duopoly({0.8, 0.0});
  CHECK_THROWS_AS(simply_plausible_wrt(spec, 0.9, {0.0, 0.5, true, true}),
                  BadParamsError);
}

TEST_CASE("no worse refinement of the whole-space CST under a unique equilibrium") {
  GameSpec spec = make_duopoly({0.8, 0.0});
  FiniteCst cournot;
  cournot.elements.push_back(IntervalUnion::whole(spec.leader_space));
  const WorseRefinement w = worse_refinement_search(spec, cournot);
  CHECK(!w.exists);
  // The binding level is the Cournot payoff itself.
  CHECK(w.u_bar == doctest::Approx(leader_value(spec, 5.0 / 11)).epsilon(1e-6));
}

TEST_CASE("worse refinement of the coordination partition exists") {
  GameSpec spec = make_coordination({0.01});
  const WorseRefinement w = worse_refinement_search(spec, coordination_base());
  CHECK(w.exists);
  CHECK(w.u_bar == doctest::Approx(0.49625).epsilon(1e-6));
  CHECK(w.spe_min_payoff == doctest::Approx(0.5).epsilon(1e-9));
  REQUIRE(w.witnesses.size() == 3);
  CHECK(w.witnesses[0].second == doctest::Approx(0.49625).epsilon(1e-6));
}

TEST_CASE("no worse refinement of a singleton menu") {
  GameSpec spec = make_coordination({0.0});
  FiniteCst singles;
  for (int i = 0; i <= 20; ++i) {
    singles.elements.push_back(IntervalUnion::point(i / 20.0));
  }
  const WorseRefinement w = worse_refinement_search(spec, singles);
  CHECK(!w.exists);
}

TEST_CASE("non-simple structures are rejected") {
  GameSpec spec = make_coordination({0.0});
  FiniteCst overlapping;
  overlapping.elements.push_back(IntervalUnion::interval(0.0, 0.7));
  overlapping.elements.push_back(IntervalUnion::interval(0.3, 1.0));
  CHECK_THROWS_AS(worse_refinement_search(spec, overlapping), NotSimpleError);

  FiniteCst gappy;
  gappy.elements.push_back(IntervalUnion::interval(0.0, 0.3));
  gappy.elements.push_back(IntervalUnion::interval(0.7, 1.0));
  CHECK_THROWS_AS(worse_refinement_search(spec, gappy), NotSimpleError);

  FiniteCst nonconvex;
  nonconvex.elements.push_back(
      IntervalUnion::interval(0.0, 0.2).unite(IntervalUnion::interval(0.8, 1.0), 0));
  nonconvex.elements.push_back(IntervalUnion::interval(0.2, 0.8, false, false));
  CHECK_THROWS_AS(worse_refinement_search(spec, nonconvex), NotSimpleError);
}
