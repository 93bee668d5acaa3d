#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "gaplab/three_gap.hpp"

using namespace gaplab;

namespace {

// Test-only oracle: literal per-element first-return walk, kept independent
// of the band detection inside three_gap_return.
std::vector<long> brute_returns(long r, long mod, long N) {
  std::vector<long> tau(static_cast<std::size_t>(N));
  for (long m = 0; m < N; ++m) {
    long cur = m, t = 0;
    do {
      cur = (cur + r) % mod;
      ++t;
    } while (cur >= N);
    tau[static_cast<std::size_t>(m)] = t;
  }
  return tau;
}

std::multiset<long> shifted_window(long lo, long hi, Int shift) {
  std::multiset<long> s;
  for (long m = lo; m < hi; ++m) s.insert(m + static_cast<long>(shift.get_si()));
  return s;
}

// The three translation identities, as exact integer-set equalities.
void check_identities(const ReturnTimeProfile& p) {
  long N = to_long(p.N), N1 = to_long(p.N1), N2 = to_long(p.N2);
  long r = to_long(p.r), mod = to_long(p.modulus);
  long t1 = to_long(p.tau1), t2 = to_long(p.tau2);
  long d1 = to_long(p.d1), d2 = to_long(p.d2);
  if (N1 > 0)
    CHECK(shifted_window(0, N1, Int(t1) * r) == shifted_window(N - N1, N, Int(d1) * mod));
  if (N1 < N2)
    CHECK(shifted_window(N1, N2, Int(t1 + t2) * r) ==
          shifted_window(N - N2, N - N1, Int(d1 + d2) * mod));
  if (N2 < N)
    CHECK(shifted_window(N2, N, Int(t2) * r) == shifted_window(0, N - N2, Int(d2) * mod));
}

}  // namespace

TEST_CASE("documented example r=1 mod=5 N=2") {
  ReturnTimeProfile p = three_gap_return(Int(1), Int(5), Int(2));
  CHECK(p.tau_at(0) == 1);
  CHECK(p.tau_at(1) == 4);
  CHECK(p.N1 == 1);
  CHECK(p.N2 == 2);
  check_identities(p);
}

TEST_CASE("full window N = modulus returns tau = 1 everywhere") {
  ReturnTimeProfile p = three_gap_return(Int(3), Int(7), Int(7));
  for (long m = 0; m < 7; ++m) CHECK(p.tau_at(m) == 1);
  CHECK(p.tau1 == 1);
  CHECK(p.tau2 == 1);
  check_identities(p);
}

TEST_CASE("single-point window") {
  ReturnTimeProfile p = three_gap_return(Int(2), Int(5), Int(1));
  CHECK(p.tau_at(0) == 5);
  check_identities(p);
}

TEST_CASE("gcd violation rejected") {
  CHECK_THROWS_AS(three_gap_return(Int(2), Int(6), Int(3)), std::invalid_argument);
  CHECK_THROWS_AS(three_gap_return(Int(0), Int(4), Int(2)), std::invalid_argument);
}

TEST_CASE("profile matches the brute-force walk on random instances") {
  std::mt19937 rng(20240811);
  int done = 0;
  while (done < 200) {
    long mod = 2 + static_cast<long>(rng() % 499);
    long r = 1 + static_cast<long>(rng() % (mod - 1));
    if (gcd(Int(r), Int(mod)) != 1) continue;
    long N = 1 + static_cast<long>(rng() % mod);
    ReturnTimeProfile p = three_gap_return(Int(r), Int(mod), Int(N));
    std::vector<long> tau = brute_returns(r, mod, N);
    for (long m = 0; m < N; ++m) CHECK(p.tau_at(m) == tau[static_cast<std::size_t>(m)]);
    // band structure: tau1 / tau1+tau2 / tau2 on [0,N1) / [N1,N2) / [N2,N)
    for (long m = 0; m < N; ++m) {
      Int want = m < p.N1 ? p.tau1 : (m < p.N2 ? p.tau1 + p.tau2 : p.tau2);
      CHECK(Int(tau[static_cast<std::size_t>(m)]) == want);
    }
    check_identities(p);
    ++done;
  }
}
