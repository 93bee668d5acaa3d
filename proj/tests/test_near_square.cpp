#include <doctest.h>

#include <set>

#include "gaplab/gap_engine.hpp"
#include "gaplab/near_square.hpp"

using namespace gaplab;

TEST_CASE("delta chain certifies at level 1") {
  PairConstruction c = unbounded_family(1);
  LinearForm d = delta_form(c, 1);
  // delta_1 = ||11 b|| - ||26 a||
  CHECK(d == theta_form(c.beta, 3, Role::beta) - theta_form(c.alpha, 4, Role::alpha));
  CHECK(certified_sign(d, c.alpha, c.beta) == SignResult::positive);
  CHECK(delta_chain(c, 1).all_pass());
}

TEST_CASE("delta chain certifies at level 2") {
  PairConstruction c = unbounded_family(2);
  CHECK(delta_chain(c, 2).all_pass());
}

TEST_CASE("twelve-case table partitions and telescopes at level 1") {
  PairConstruction c = unbounded_family(1);
  CaseTable t = near_square_table(c, 1);
  CHECK(t.check_partition().all_pass());
  CHECK(t.weighted_gap_sum() == LinearForm::one());
  CHECK(t.check_gaps(c.alpha, c.beta).all_pass());
  CheckReport counts = near_square_counts(c, 1, t);
  CHECK(counts.all_pass());

  // count (a): (q_5 - q_4) q'_4 = 241 * 257 points of gap delta
  LinearForm d = delta_form(c, 1);
  CHECK(t.multiplicity_of(GapTriple{d.u, d.v, d.w}) == 241 * 257);
  CHECK(Int(241 * 257) == 61937);
}

TEST_CASE("twelve-case table equals oracle and induction map on all 71556 points") {
  PairConstruction c = unbounded_family(1);
  CaseTable t = near_square_table(c, 1);
  GapScan oracle = gap_set(Int(267), Int(268), c.alpha, c.beta);
  CHECK(oracle.set.total_multiplicity() == 71556);
  CHECK(t.check_against(oracle.neighbors).all_pass());

  NeighborTable tilde = phi_induction_map(c, 1);
  CHECK(tilde.succ == oracle.neighbors.succ);
  CHECK(tilde.single_cycle());

  NeighborTable from_table = t.to_neighbor_table();
  CHECK(from_table.succ == tilde.succ);
}

TEST_CASE("cases (4) and (6) carry the same gap on disjoint regions") {
  PairConstruction c = unbounded_family(1);
  CaseTable t = near_square_table(c, 1);
  const TableCase *c4 = nullptr, *c6 = nullptr;
  for (const TableCase& tc : t.cases) {
    if (tc.label == "(4)") c4 = &tc;
    if (tc.label == "(6)") c6 = &tc;
  }
  REQUIRE(c4 != nullptr);
  REQUIRE(c6 != nullptr);
  CHECK(c4->gap == c6->gap);
  CHECK_FALSE(c4->rects[0].overlaps(c6->rects[0]));
}

TEST_CASE("witnesses at level 1: ten distinct present lengths") {
  PairConstruction c = unbounded_family(1);
  std::vector<GapTriple> w = unbounded_witnesses(c, 1);
  REQUIRE(w.size() == 10);
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j) CHECK_FALSE(w[i] == w[j]);
  for (const GapTriple& g : w)
    CHECK(certified_sign(g.form(), c.alpha, c.beta) == SignResult::positive);

  GapScan sq = gap_set(Int(267), Int(267), c.alpha, c.beta, false);
  for (const GapTriple& g : w) CHECK(sq.set.contains(g));
  CHECK(sq.set.entries.size() >= 10);
}

TEST_CASE("witnesses at level 2: 19541 symbolically distinct positive lengths") {
  PairConstruction c = unbounded_family(2);
  CHECK(c.a_at(9) == 2 * c.Q_at(2) + c.R_at(2) - 1);
  CHECK(c.a_at(9) == 19541);
  std::vector<GapTriple> w = unbounded_witnesses(c, 2);
  REQUIRE(w.size() == 19541);
  // the delta coefficient is strictly monotone in c, so adjacent distinctness
  // plus monotone v components give pairwise distinctness
  std::set<std::string> seen;
  for (const GapTriple& g : w) CHECK(seen.insert(g.dm.get_str()).second);
  CHECK(certified_sign(w.front().form(), c.alpha, c.beta) == SignResult::positive);
  CHECK(certified_sign(w.back().form(), c.alpha, c.beta) == SignResult::positive);
}

TEST_CASE("phi induction walk is bounded and rejects oversized levels") {
  PairConstruction c = unbounded_family(2);
  CHECK_THROWS_AS(phi_induction_map(c, 2, 1000), resource_error);
}
