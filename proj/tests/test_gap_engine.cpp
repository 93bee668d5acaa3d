#include <doctest.h>

#include <algorithm>
#include <random>

#include "gaplab/families.hpp"
#include "gaplab/gap_engine.hpp"
#include "helpers.hpp"

using namespace gaplab;

TEST_CASE("1d sort of golden multiples matches the direct rational sort") {
  CFReal a = testing::golden();
  CFReal b = testing::from_list({2, 1, 4, 1});  // irrelevant second coordinate
  SortedPoints sp = enumerate_and_sort(Int(5), Int(1), a, b);
  // direct sort by deep convergent approximation, as an independent route
  a.extend_to(41);
  Rat ah(a.table().p(40), a.table().q(40));
  std::vector<std::pair<Rat, long>> direct;
  for (long n = 0; n < 5; ++n) {
    Rat v = Rat(n) * ah;
    direct.push_back({v - floor_rat(v), n});
  }
  std::sort(direct.begin(), direct.end());
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(sp.order[i] == static_cast<std::uint32_t>(direct[i].second));
  CHECK(sp.order[0] == 0);
}

TEST_CASE("golden 1d sets obey the three-distance theorem") {
  CFReal a = testing::golden();
  CFReal b = testing::from_list({2, 1, 4, 1});
  // q = 5 is a Fibonacci denominator, the degenerate two-length case
  GapScan five = gap_set(Int(5), Int(1), a, b);
  CHECK(five.set.entries.size() == 2);
  CHECK(five.set.weighted_sum() == LinearForm::one());
  // q = 6 realizes all three lengths, the longest being the sum of the others
  GapScan six = gap_set(Int(6), Int(1), a, b);
  REQUIRE(six.set.entries.size() == 3);
  CHECK(six.set.weighted_sum() == LinearForm::one());
  CHECK(six.set.entries[2].triple.form() ==
        six.set.entries[0].triple.form() + six.set.entries[1].triple.form());
  for (long q = 2; q <= 12; ++q)
    CHECK(gap_set(Int(q), Int(1), a, b, false).set.entries.size() <= 3);
}

TEST_CASE("E_{3,28} of the bounded family: 4 triples, multiplicities 38/19/18/9") {
  PairConstruction c = bounded_family(2);
  GapScan s = gap_set(Int(3), Int(28), c.alpha, c.beta);
  CHECK(s.set.total_multiplicity() == 84);
  REQUIRE(s.set.entries.size() == 4);
  std::vector<long> mults;
  for (const GapEntry& e : s.set.entries) mults.push_back(to_long(e.mult));
  std::sort(mults.begin(), mults.end());
  CHECK(mults == std::vector<long>{9, 18, 19, 38});
  CHECK(s.neighbors.single_cycle());
}

TEST_CASE("distinct_count on degenerate and small cases") {
  PairConstruction c = bounded_family(2);
  CHECK(distinct_count(Int(1), c.alpha, c.beta) == 1);
  GapScan single = gap_set(Int(1), Int(1), c.alpha, c.beta);
  REQUIRE(single.set.entries.size() == 1);
  CHECK(single.set.entries[0].triple == GapTriple{Int(0), Int(0), Int(1)});
  CHECK(distinct_count(Int(10), c.alpha, c.beta) <= 7);
}

TEST_CASE("subset consistency: dropping rows then resorting agrees") {
  PairConstruction c = bounded_family(2);
  SortedPoints full = enumerate_and_sort(Int(3), Int(28), c.alpha, c.beta);
  SortedPoints part = enumerate_and_sort(Int(3), Int(10), c.alpha, c.beta);
  // filter the full order down to m < 10 and re-map flat indices
  std::vector<std::uint32_t> filtered;
  for (std::uint32_t idx : full.order) {
    std::int64_t n = idx / 28, m = idx % 28;
    if (m < 10) filtered.push_back(static_cast<std::uint32_t>(n * 10 + m));
  }
  CHECK(filtered == part.order);
}

TEST_CASE("conservation and cyclicity over random small boxes, both families") {
  PairConstruction b = bounded_family(2);
  PairConstruction u = unbounded_family(1);
  std::mt19937 rng(7);
  for (int it = 0; it < 30; ++it) {
    long q = 1 + static_cast<long>(rng() % 40);
    long qp = 1 + static_cast<long>(rng() % 40);
    PairConstruction& c = (it % 2 == 0) ? b : u;
    GapScan s = gap_set(Int(q), Int(qp), c.alpha, c.beta);
    CHECK(s.set.weighted_sum() == LinearForm::one());
    CHECK(s.set.total_multiplicity() == Int(q) * Int(qp));
    CHECK(s.neighbors.single_cycle());
  }
}

TEST_CASE("primitive gaps: singleton set is its own primitive") {
  PairConstruction c = bounded_family(2);
  GapScan s = gap_set(Int(1), Int(1), c.alpha, c.beta);
  std::vector<GapTriple> prim = primitive_gaps(s.set, c.alpha, c.beta);
  REQUIRE(prim.size() == 1);
  CHECK(prim[0] == GapTriple{Int(0), Int(0), Int(1)});
}

TEST_CASE("primitive gaps: all four lengths of E_{3,28} are primitive") {
  PairConstruction c = bounded_family(2);
  GapScan s = gap_set(Int(3), Int(28), c.alpha, c.beta);
  std::vector<bool> flags = primitive_flags(s.set, c.alpha, c.beta);
  for (bool f : flags) CHECK(f);
}

TEST_CASE("primitive gaps: at most 4 out of the seven-length sets") {
  PairConstruction c = bounded_family(2);
  for (long N : {10L, 21L, 24L, 27L}) {
    GapScan s = gap_set(Int(N), Int(N), c.alpha, c.beta);
    std::vector<bool> flags = primitive_flags(s.set, c.alpha, c.beta);
    int prim = 0;
    for (std::size_t i = 0; i < flags.size(); ++i)
      if (flags[i]) ++prim;
    CHECK(prim <= 4);
    // any entry equal to a sum of two smaller entries must come back flagged
    for (std::size_t i = 0; i < s.set.entries.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        for (std::size_t k = 0; k < s.set.entries.size(); ++k)
          if (s.set.entries[k].triple.form() ==
              s.set.entries[i].triple.form() + s.set.entries[j].triple.form())
            CHECK_FALSE(flags[k]);
  }
}

TEST_CASE("gap entries are in certified ascending length order") {
  PairConstruction c = bounded_family(2);
  GapScan s = gap_set(Int(12), Int(12), c.alpha, c.beta);
  for (std::size_t i = 0; i + 1 < s.set.entries.size(); ++i)
    CHECK(value_less(s.set.entries[i].triple.form(), s.set.entries[i + 1].triple.form(),
                     c.alpha, c.beta));
}

TEST_CASE("point cap is enforced") {
  PairConstruction c = bounded_family(2);
  CHECK_THROWS_AS(enumerate_and_sort(Int(100000), Int(100000), c.alpha, c.beta),
                  resource_error);
}

TEST_CASE("frozen oracle counts for the documented square sets") {
  // independently reproduced with an exact-fraction sort: E_10 has 4 lengths
  // and N = 21 realizes the full seven
  PairConstruction c = bounded_family(2);
  CHECK(distinct_count(Int(10), c.alpha, c.beta) == 4);
  CHECK(distinct_count(Int(21), c.alpha, c.beta) == 7);
  PairConstruction u = unbounded_family(1);
  CHECK(distinct_count(Int(267), u.alpha, u.beta) == 16);
}

TEST_CASE("near ties and seam positions fall back to certified comparison") {
  // beta is within 2^-62 of alpha = 1/2, so 64-bit keys alone cannot order
  // the points; alpha + beta sits within error of the 0/1 seam.
  CFReal a = testing::from_list({2});
  CFReal b = testing::from_list({2, 1000000000000000000});
  GapScan s = gap_set(Int(2), Int(2), a, b);
  CHECK(s.set.total_multiplicity() == 4);
  CHECK(s.set.weighted_sum() == LinearForm::one());
  // order must be 0 < beta < alpha < alpha + beta
  SortedPoints sp = enumerate_and_sort(Int(2), Int(2), a, b);
  CHECK(sp.order == std::vector<std::uint32_t>{0, 1, 2, 3});

  // coincident positions (rationally dependent inputs) abort with the
  // offending pair rather than claiming an order
  CFReal a2 = testing::from_list({2});
  CFReal b2 = testing::from_list({2});
  CHECK_THROWS_AS(enumerate_and_sort(Int(2), Int(2), a2, b2), undecided_error);
}
