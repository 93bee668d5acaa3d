#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gaplab/ints.hpp"

namespace gaplab {

// One maximal run of constant first-return behaviour: every m in [lo, hi)
// first re-enters the window after `tau` steps, landing at m + disp.
struct ReturnBand {
  std::int64_t lo = 0, hi = 0;
  std::int64_t tau = 0;
  std::int64_t disp = 0;
};

// First-return structure of the rotation m -> (m + r) mod modulus restricted
// to the window [0, N): three return times tau1, tau1+tau2, tau2 on the bands
// [0,N1), [N1,N2), [N2,N), with carry counts d1, d2 making the translation
// identities
//   [0,N1)   + tau1 r         = [N-N1, N)    + d1 modulus
//   [N1,N2)  + (tau1+tau2) r  = [N-N2, N-N1) + (d1+d2) modulus
//   [N2,N)   + tau2 r         = [0, N-N2)    + d2 modulus
// exact as integer sets (empty bands vacuous).
struct ReturnTimeProfile {
  Int r, modulus, N;
  Int tau1, tau2, N1, N2, d1, d2;
  std::vector<ReturnBand> bands;  // the nonempty bands, in window order

  std::int64_t tau_at(std::int64_t m) const {
    for (const ReturnBand& b : bands)
      if (b.lo <= m && m < b.hi) return b.tau;
    throw std::invalid_argument("tau_at: m outside window");
  }
};

// Computes the profile by direct orbit simulation, O(modulus) total work, and
// asserts the banded structure rather than assuming it.
inline ReturnTimeProfile three_gap_return(const Int& r_in, const Int& modulus_in,
                                          const Int& N_in,
                                          std::int64_t step_cap = std::int64_t(1) << 28) {
  if (modulus_in < 1 || N_in < 1 || N_in > modulus_in)
    throw std::invalid_argument("three_gap_return: need 1 <= N <= modulus");
  if (r_in < 0 || r_in >= modulus_in)
    throw std::invalid_argument("three_gap_return: need 0 <= r < modulus");
  if (gcd(r_in, modulus_in) != 1)
    throw std::invalid_argument("three_gap_return: gcd(r, modulus) must be 1");
  if (!fits_long(modulus_in) || to_long(modulus_in) > step_cap)
    throw resource_error("three_gap_return: modulus " + modulus_in.get_str() +
                         " beyond simulation cap");

  const std::int64_t mod = to_long(modulus_in);
  const std::int64_t N = to_long(N_in);
  const std::int64_t r = to_long(r_in);

  ReturnTimeProfile p;
  p.r = r_in;
  p.modulus = modulus_in;
  p.N = N_in;

  std::int64_t total_steps = 0;
  for (std::int64_t m = 0; m < N; ++m) {
    std::int64_t cur = m, tau = 0;
    do {
      cur += r;
      if (cur >= mod) cur -= mod;
      ++tau;
    } while (cur >= N);
    total_steps += tau;
    std::int64_t disp = cur - m;
    if (!p.bands.empty() && p.bands.back().tau == tau && p.bands.back().disp == disp)
      p.bands.back().hi = m + 1;
    else
      p.bands.push_back({m, m + 1, tau, disp});
  }
  if (total_steps != mod)
    throw structural_error("three_gap_return: return times sum to " +
                           std::to_string(total_steps) + ", expected the modulus");
  if (p.bands.size() > 3)
    throw structural_error("three_gap_return: more than three return bands");

  // Identify (tau1, tau2, N1, N2) from the runs.  With two runs the
  // decomposition is not unique; prefer reading the larger run value as
  // tau1 + tau2 (its band then being the middle one), which keeps tau1 and
  // tau2 the two genuinely occurring return times.
  std::int64_t n1, n2, t1, t2;
  if (p.bands.size() == 3) {
    t1 = p.bands[0].tau;
    t2 = p.bands[2].tau;
    n1 = p.bands[0].hi;
    n2 = p.bands[1].hi;
    if (p.bands[1].tau != t1 + t2)
      throw structural_error("three_gap_return: middle return time is not tau1 + tau2");
  } else if (p.bands.size() == 2) {
    std::int64_t ta = p.bands[0].tau, tb = p.bands[1].tau, B = p.bands[0].hi;
    if (tb > ta) {        // second run is the middle band
      t1 = ta;
      t2 = tb - ta;
      n1 = B;
      n2 = N;
    } else if (ta > tb) {  // first run is the middle band
      t1 = ta - tb;
      t2 = tb;
      n1 = 0;
      n2 = B;
    } else {               // equal times: first + last with empty middle
      t1 = ta;
      t2 = tb;
      n1 = n2 = B;
    }
  } else {
    if (p.bands[0].disp != 0)
      throw structural_error("three_gap_return: single band with nonzero displacement");
    t1 = t2 = p.bands[0].tau;
    n1 = n2 = N;
  }

  // Displacements per band are pinned by (N1, N2); carries follow from them.
  auto expect_disp = [&](const ReturnBand& b, std::int64_t want) {
    if (b.disp != want)
      throw structural_error("three_gap_return: band displacement " + std::to_string(b.disp) +
                             " != " + std::to_string(want));
  };
  for (const ReturnBand& b : p.bands) {
    if (b.hi <= n1)
      expect_disp(b, N - n1);
    else if (b.hi <= n2)
      expect_disp(b, N - n1 - n2);
    else
      expect_disp(b, -n2);
  }

  p.tau1 = t1;
  p.tau2 = t2;
  p.N1 = n1;
  p.N2 = n2;

  auto carry = [&](const Int& tau, const Int& shift_to) {
    auto [d, rem] = floor_divmod(tau * p.r - shift_to, p.modulus);
    if (rem != 0 || d < 0)
      throw structural_error("three_gap_return: non-integral or negative carry");
    return d;
  };
  p.d1 = (n1 > 0) ? carry(p.tau1, p.N - p.N1) : Int(0);
  p.d2 = (n2 < N) ? carry(p.tau2, -p.N2) : Int(0);
  if (n1 < n2) {
    Int dmid = carry(p.tau1 + p.tau2, p.N - p.N1 - p.N2);
    if (n1 == 0)
      p.d1 = dmid - p.d2;
    else if (n2 == N)
      p.d2 = dmid - p.d1;
    else if (dmid != p.d1 + p.d2)
      throw structural_error("three_gap_return: carries fail d1 + d2 consistency");
  }
  if (p.d1 < 0 || p.d2 < 0) throw structural_error("three_gap_return: negative carry");
  return p;
}

}  // namespace gaplab
