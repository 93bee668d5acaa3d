#include <doctest.h>

#include "gaplab/families.hpp"

using namespace gaplab;

TEST_CASE("bounded family reproduces the seed and level-2 values") {
  PairConstruction c = bounded_family(3);
  CHECK(c.q_at(1) == 3);
  CHECK(c.qp_at(1) == 28);
  CHECK(c.bp_at(1) == 9);
  CHECK(c.a_at(1) == 3);
  CHECK(c.ap_at(1) == 28);

  CHECK(c.a_at(2) == 6804);  // 3^8 + 3^5
  CHECK(c.q_at(2) == 20413); // 3^9 + 3^6 + 1
  CHECK(c.b_at(2) == 729);   // 3^6
  CHECK(c.bp_at(2) == ipow(Int(28), 6));
  CHECK(c.qp_at(2) == c.bp_at(2) * c.q_at(2) + 1);
}

TEST_CASE("bounded family levels are validated") {
  CHECK_THROWS_AS(bounded_family(0), std::invalid_argument);
}

TEST_CASE("bounded family invariants verify through level 3") {
  PairConstruction c = bounded_family(3);
  CheckReport r = verify_family_invariants(c);
  CHECK(r.all_pass());
}

TEST_CASE("tampered bounded construction fails naming level and identity") {
  PairConstruction c = bounded_family(2);
  c.bp[0] = 8;  // b'_1
  CheckReport r = verify_family_invariants(c);
  CHECK_FALSE(r.all_pass());
  const CheckLine* f = r.first_failure();
  REQUIRE(f != nullptr);
  CHECK(f->name.find("level 1") != std::string::npos);
  CHECK(f->name.find("qp = bp*q + 1") != std::string::npos);
}

TEST_CASE("unbounded family level-1 table") {
  PairConstruction c = unbounded_family(2);
  CHECK(c.q_at(0) == 1);
  CHECK(c.q_at(1) == 2);
  CHECK(c.q_at(2) == 5);
  CHECK(c.qp_at(0) == 1);
  CHECK(c.qp_at(1) == 3);
  CHECK(c.qp_at(2) == 4);

  CHECK(c.a_at(3) == 1);
  CHECK(c.a_at(4) == 3);
  CHECK(c.a_at(5) == 10);
  CHECK(c.a_at(6) == 36);
  CHECK(c.ap_at(3) == 2);
  CHECK(c.ap_at(4) == 23);
  CHECK(c.ap_at(5) == 1);
  CHECK(c.ap_at(6) == 35);

  CHECK(c.q_at(3) == 7);
  CHECK(c.qp_at(3) == 11);
  CHECK(c.q_at(4) == 26);
  CHECK(c.qp_at(4) == 257);
  CHECK(c.q_at(5) == 267);
  CHECK(c.qp_at(5) == 268);
  CHECK(c.q_at(6) == 9638);
  CHECK(c.qp_at(6) == 9637);
  CHECK(c.R_at(2) == 268);
  CHECK(c.Q_at(2) == 9637);

  // closed form for the next R, evaluated at (Q,R) = (4,3)
  Int R = 8 * 16 + (10 * 3 - 1) * 4 + 3 * 9 - 3;
  CHECK(R == 268);
}

TEST_CASE("unbounded invariants verify and surface the next-Q divergence") {
  PairConstruction c = unbounded_family(2);
  CheckReport r = verify_family_invariants(c);
  CHECK(r.all_pass());
  bool saw_divergence = false;
  for (const CheckLine& l : r.lines)
    if (l.name.find("diverges from recurrence") != std::string::npos && l.pass &&
        l.detail.find("closed=9349") != std::string::npos &&
        l.detail.find("recurrence=9637") != std::string::npos)
      saw_divergence = true;
  CHECK(saw_divergence);
}

TEST_CASE("unbounded structural alignment at both built levels") {
  PairConstruction c = unbounded_family(2);
  for (long k = 1; k <= 2; ++k) {
    CHECK(c.q_at(4 * k - 3) + 1 == c.qp_at(4 * k - 3));
    CHECK(c.q_at(4 * k - 2) - 1 == c.qp_at(4 * k - 2));
    CHECK(c.ap_at(4 * k + 1) == 1);
  }
}

TEST_CASE("badly approximable witness certifies at k = 1 and 2") {
  PairConstruction c = bounded_family(3);
  CHECK(badly_approx_witness(c, 1).all_pass());
  CHECK(badly_approx_witness(c, 2).all_pass());
  // identity sanity: (q^-5) * (q^-2) = q^-7
  Rat lhs = Rat(1, ipow(c.q_at(1), 5)) * Rat(1, ipow(c.q_at(1), 2));
  CHECK(lhs == Rat(1, ipow(c.q_at(1), 7)));
}

TEST_CASE("family streams replay deterministically") {
  PairConstruction c1 = bounded_family(2);
  PairConstruction c2 = bounded_family(2);
  c1.alpha.extend_to(4);
  c2.alpha.extend_to(4);
  for (long k = 1; k <= 4; ++k) CHECK(c1.alpha.table().a(k) == c2.alpha.table().a(k));
}
