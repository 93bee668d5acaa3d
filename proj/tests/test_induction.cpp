#include <doctest.h>

#include <iostream>
#include "gaplab/gap_engine.hpp"
#include "gaplab/induction.hpp"

using namespace gaplab;

namespace {

void check_full(PairConstruction& c, const CaseTable& t, const Int& q, const Int& qp) {
  CHECK(t.check_partition().all_pass());
  CHECK(t.check_gaps(c.alpha, c.beta).all_pass());
  GapScan oracle = gap_set(q, qp, c.alpha, c.beta);
  CheckReport vs = t.check_against(oracle.neighbors);
  if (!vs.all_pass()) {
    vs.print(std::cerr);
  }
  CHECK(vs.all_pass());
}

}  // namespace

TEST_CASE("induced table equals the oracle on E_{3,N} for every window") {
  PairConstruction c = bounded_family(2);
  for (long N = 4; N <= 28; ++N) {
    CaseTable t = induced_table_qkN(c, 1, Int(N));
    CHECK(t.cases.size() <= 6);
    check_full(c, t, Int(3), Int(N));
  }
}

TEST_CASE("induced table at the full window reduces to the exchange") {
  PairConstruction c = bounded_family(2);
  CaseTable t = induced_table_qkN(c, 1, Int(28));
  CHECK(t.cases.size() == 4);
}

TEST_CASE("induced table gaps are pairwise distinct certified") {
  PairConstruction c = bounded_family(2);
  CaseTable t = induced_table_qkN(c, 1, Int(10));
  std::vector<GapTriple> gaps = t.distinct_gaps();
  for (std::size_t i = 0; i < gaps.size(); ++i)
    for (std::size_t j = i + 1; j < gaps.size(); ++j) {
      CHECK(gaps[i].form() != gaps[j].form());
      SignResult s = certified_sign(gaps[i].form() - gaps[j].form(), c.alpha, c.beta);
      CHECK((s == SignResult::positive || s == SignResult::negative));
    }
}

TEST_CASE("induced table window preconditions") {
  PairConstruction c = bounded_family(2);
  CHECK_THROWS_AS(induced_table_qkN(c, 1, Int(3)), std::invalid_argument);
  CHECK_THROWS_AS(induced_table_qkN(c, 1, Int(29)), std::invalid_argument);
}

TEST_CASE("seven table equals the oracle across the first window") {
  PairConstruction c = bounded_family(2);
  for (long N = 4; N <= 28; ++N) {
    CaseTable t = seven_table(c, 1, Int(N));
    CHECK(t.distinct_gaps().size() <= 7);
    check_full(c, t, Int(N), Int(N));
  }
}

TEST_CASE("seven table equals the oracle in the swapped window") {
  PairConstruction c = bounded_family(2);
  for (long N : {29L, 50L, 100L, 300L}) {
    Regime r = locate_regime(c, Int(N));
    CHECK(r.k == 1);
    CHECK(r.swapped);
    CaseTable t = seven_table(c, 1, Int(N));
    CHECK(t.distinct_gaps().size() <= 7);
    check_full(c, t, Int(N), Int(N));
  }
}

TEST_CASE("chain case: every point far from the window edge steps by ||q_k a||") {
  PairConstruction c = bounded_family(2);
  CaseTable t = seven_table(c, 1, Int(10));
  LinearForm th1 = theta_form(c.alpha, 1, Role::alpha);
  const TableCase* chain = nullptr;
  for (const TableCase& tc : t.cases)
    if (tc.label == "chain") chain = &tc;
  REQUIRE(chain != nullptr);
  CHECK(chain->gap.form() == th1);
  CHECK(chain->area() == Int(10 - 3) * Int(10));
}

TEST_CASE("min gap of the window set exceeds a * ||q_k a|| (insertion margin)") {
  PairConstruction c = bounded_family(2);
  for (long N : {4L, 10L, 22L, 28L}) {
    auto [a, R] = floor_divmod(Int(N), Int(3));
    if (R == 0) {
      a -= 1;
      R = 3;
    }
    GapScan window = gap_set(Int(3), Int(N), c.alpha, c.beta, false);
    LinearForm margin =
        window.set.entries[0].triple.form() - a * theta_form(c.alpha, 1, Role::alpha);
    CHECK(certified_sign(margin, c.alpha, c.beta) == SignResult::positive);
  }
}

TEST_CASE("base-gap chain of the level-1 window certified") {
  // D > ((q^5 q' - q' + 1)||q a|| + q ||q2 a||) / (q q') > 0, cleared of
  // denominators to stay in integer forms.
  PairConstruction c = bounded_family(2);
  Frame f = direct_frame(c, 1, 1, c.bp_at(1));
  LinearForm D = f.base_gap();
  const Int q = c.q_at(1), qp = c.qp_at(1);
  LinearForm lhs = (q * qp) * D - (ipow(q, 6) * qp - qp + 1) * theta_form(c.alpha, 1, Role::alpha) -
                   q * theta_form(c.alpha, 2, Role::alpha);
  CHECK(certified_sign(lhs, c.alpha, c.beta) == SignResult::positive);
  CHECK(certified_sign(D, c.alpha, c.beta) == SignResult::positive);
}
