#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gaplab/exchange.hpp"
#include "gaplab/three_gap.hpp"

namespace gaplab {

namespace detail {

struct BandData {
  Int lo, hi;    // v-window band
  Int tau;       // first return time
  Int disp;      // exact v translation on the band
  Int h, rho;    // tau * q^x_{i-1} = h * U + rho
  Int dtilde;    // carry of the v translation against theta_y(j)
  LinearForm base;  // gap of the induced map before the u wrap split
};

// Shared band analysis for the induced (first-return) tables: the v window
// [0, N) of the exchange on E_{U,V} splits into at most three return bands,
// and on each band the induced map is a translation whose gap is
//   tau * D + h * ||Ux|| - dtilde * ||Vy||   (plus ||Ux|| on the u wrap part).
inline std::vector<BandData> induced_bands(Frame& f, const Int& N) {
  Int U = f.U(), V = f.V();
  if (V != f.b * U + 1) throw std::invalid_argument("induced table: V = b*U + 1 fails");
  if (!(U < N && N <= V)) throw std::invalid_argument("induced table: need U < N <= V");
  if (assumption_sign(f) != SignResult::positive)
    throw structural_error("induced table: exchange assumption not certified positive");

  const Int sv = f.b * f.qy(f.j - 1);
  const bool jodd = f.j % 2 != 0;
  Int step = jodd ? V - sv : sv;  // rotation shift of the v coordinate, in [0, V)
  ReturnTimeProfile prof = three_gap_return(step, V, N);

  LinearForm D = f.base_gap();
  LinearForm thU = f.theta_x(f.i), thV = f.theta_y(f.j);
  std::vector<BandData> out;
  for (const ReturnBand& b : prof.bands) {
    BandData d;
    d.lo = b.lo;
    d.hi = b.hi;
    d.tau = b.tau;
    d.disp = b.disp;
    auto [h, rho] = floor_divmod(d.tau * f.qx(f.i - 1), U);
    d.h = h;
    d.rho = rho;
    Int num = d.tau * sv - (jodd ? -d.disp : d.disp);
    auto [dt, rem] = floor_divmod(num, V);
    if (rem != 0) throw structural_error("induced table: non-integral v carry");
    d.dtilde = dt;
    d.base = d.tau * D + d.h * thU - d.dtilde * thV;
    if (f.coeff_v(d.base) != d.disp)
      throw structural_error("induced table: band gap v-coefficient mismatch");
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace detail

// Neighbor map of E_{U,N} for U < N <= V, obtained by inducing the exchange
// of E_{U,V} on the first N rows of the v coordinate: at most six cases,
// two per return band.
inline CaseTable induced_table_frame(Frame f, const Int& N) {
  std::vector<detail::BandData> bands = detail::induced_bands(f, N);
  Int U = f.U();
  LinearForm thU = f.theta_x(f.i);
  const bool iodd = f.i % 2 != 0;

  CaseTable t;
  t.kind = "induced";
  t.q = f.swapped ? N : U;
  t.qp = f.swapped ? U : N;

  int idx = 0;
  for (const detail::BandData& b : bands) {
    ++idx;
    std::string tag = "band" + std::to_string(idx);
    if (iodd) {
      detail::push_case(t, tag, {f.rect(Int(0), U - b.rho, b.lo, b.hi)}, b.base);
      detail::push_case(t, tag + "+thU", {f.rect(U - b.rho, U, b.lo, b.hi)}, b.base + thU);
    } else {
      detail::push_case(t, tag + "+thU", {f.rect(Int(0), b.rho, b.lo, b.hi)}, b.base + thU);
      detail::push_case(t, tag, {f.rect(b.rho, U, b.lo, b.hi)}, b.base);
    }
  }
  return t;
}

// Neighbor map of the square set E_N itself, for U < N <= V: the u coordinate
// is re-extended from U columns to N by inserting copies spaced ||Ux|| apart,
// which contributes the seventh length and re-partitions each band by the
// leftover r-bar of N - tau * q^x_{i-1} modulo U.
inline CaseTable extended_table_frame(Frame f, const Int& N) {
  std::vector<detail::BandData> bands = detail::induced_bands(f, N);
  Int U = f.U();
  LinearForm thU = f.theta_x(f.i);
  const bool iodd = f.i % 2 != 0;

  auto [a, R] = floor_divmod(N, U);
  if (R == 0) {
    a -= 1;
    R = U;
  }

  CaseTable t;
  t.kind = "extended";
  t.q = N;
  t.qp = N;

  // Pure insertion gaps ||Ux||: every chain step except the last copy.
  if (N - U > 0) {
    if (iodd)
      detail::push_case(t, "chain", {f.rect(U, N, Int(0), N)}, thU);
    else
      detail::push_case(t, "chain", {f.rect(Int(0), N - U, Int(0), N)}, thU);
  }

  int idx = 0;
  for (const detail::BandData& b : bands) {
    ++idx;
    std::string tag = "band" + std::to_string(idx);
    auto [hbar, rbar] = floor_divmod(N - b.tau * f.qx(f.i - 1), U);
    LinearForm dbar = b.tau * f.base_gap() - b.dtilde * f.theta_y(f.j) - hbar * thU;
    if (f.coeff_v(dbar) != b.disp)
      throw structural_error("extended table: band gap v-coefficient mismatch");
    if (iodd) {
      detail::push_case(t, tag, {f.rect(Int(0), rbar, b.lo, b.hi)}, dbar);
      detail::push_case(t, tag + "+thU", {f.rect(rbar, U, b.lo, b.hi)}, dbar + thU);
    } else {
      detail::push_case(t, tag + "+thU", {f.rect(N - U, N - rbar, b.lo, b.hi)}, dbar + thU);
      detail::push_case(t, tag, {f.rect(N - rbar, N, b.lo, b.hi)}, dbar);
    }
  }
  return t;
}

// Which construction window contains N: regime 1 is q_k < N <= q'_k (direct
// orientation), regime 2 is q'_k < N <= q_{k+1} (roles swapped).
struct Regime {
  long k = 0;
  bool swapped = false;
};

inline Regime locate_regime(const PairConstruction& c, const Int& N) {
  if (c.family != Family::bounded)
    throw std::invalid_argument("locate_regime: bounded family only");
  for (long k = 1; k < c.levels; ++k) {
    if (c.q_at(k) < N && N <= c.qp_at(k)) return {k, false};
    if (c.qp_at(k) < N && N <= c.q_at(k + 1)) return {k, true};
  }
  if (c.levels >= 1 && c.q_at(c.levels) < N && N <= c.qp_at(c.levels))
    return {c.levels, false};
  throw std::invalid_argument("locate_regime: N=" + N.get_str() +
                              " outside the built construction windows");
}

// Spec-facing wrappers on the bounded family.
inline CaseTable induced_table_qkN(PairConstruction& c, long k, const Int& N) {
  if (c.family != Family::bounded)
    throw std::invalid_argument("induced_table_qkN: bounded family only");
  if (!(c.q_at(k) < N && N <= c.qp_at(k)))
    throw std::invalid_argument("induced_table_qkN: need q_k < N <= q'_k");
  CaseTable t = induced_table_frame(direct_frame(c, k, k, c.bp_at(k)), N);
  t.family_tag = to_string(c.family);
  t.level = k;
  return t;
}

inline CaseTable seven_table(PairConstruction& c, long k, const Int& N) {
  if (c.family != Family::bounded)
    throw std::invalid_argument("seven_table: bounded family only");
  CaseTable t;
  if (c.q_at(k) < N && N <= c.qp_at(k))
    t = extended_table_frame(direct_frame(c, k, k, c.bp_at(k)), N);
  else if (k < c.max_index && c.qp_at(k) < N && N <= c.q_at(k + 1))
    t = extended_table_frame(swapped_frame(c, k, k + 1, c.b_at(k + 1)), N);
  else
    throw std::invalid_argument("seven_table: N outside both windows of level " +
                                std::to_string(k));
  t.family_tag = to_string(c.family);
  t.level = k;
  return t;
}

inline CaseTable seven_table_auto(PairConstruction& c, const Int& N) {
  Regime r = locate_regime(c, N);
  return seven_table(c, r.k, N);
}

}  // namespace gaplab
