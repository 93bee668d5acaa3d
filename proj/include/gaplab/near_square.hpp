#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gaplab/exchange.hpp"

namespace gaplab {

// ---------------------------------------------------------------------------
// Unbounded family, first level E_{q,q'} with q' = q + 1 at indices 4k+1.
// The exchange assumption fails here by exactly delta = ||q'_{4k-1} b|| -
// ||q_{4k} a|| > 0, and the neighbor map needs twelve translation cases
// expressed in delta, ||q_{4k+1} a|| and ||q'_{4k+1} b||.
// ---------------------------------------------------------------------------

// delta = ||q'_{4k-1} beta|| - ||q_{4k} alpha||, the small positive excess.
inline LinearForm delta_form(PairConstruction& c, long k) {
  if (c.family != Family::unbounded)
    throw std::invalid_argument("delta_form: unbounded family only");
  if (k < 1 || k > c.levels) throw std::invalid_argument("delta_form: level unavailable");
  return theta_form(c.beta, 4 * k - 1, Role::beta) - theta_form(c.alpha, 4 * k, Role::alpha);
}

// Certifies 0 < 2 delta a_{4k+1} < ||q_{4k+1} alpha|| < ||q'_{4k+1} beta||.
inline CheckReport delta_chain(PairConstruction& c, long k,
                               long max_depth = default_certified_depth()) {
  CheckReport r;
  LinearForm d = delta_form(c, k);
  LinearForm tha = theta_form(c.alpha, 4 * k + 1, Role::alpha);
  LinearForm thb = theta_form(c.beta, 4 * k + 1, Role::beta);
  const Int& A = c.a_at(4 * k + 1);
  auto pos = [&](const LinearForm& f) {
    return certified_sign(f, c.alpha, c.beta, max_depth) == SignResult::positive;
  };
  std::string lvl = "level " + std::to_string(k);
  r.add(lvl + ": delta > 0 certified", pos(d));
  r.add(lvl + ": 2*a*delta < ||q alpha|| certified", pos(tha - (2 * A) * d));
  r.add(lvl + ": ||q alpha|| < ||q' beta|| certified", pos(thb - tha));
  return r;
}

// The twelve-case neighbor table on E_{q_{4k+1}, q'_{4k+1}}.  Case numbering
// follows the region layout: (1) the bulk delta block, (2)-(8) the top bands,
// (9)-(12) the bottom bands; (8) and (11) are families indexed by
// c = 1..A-1.  The raw regions of case (10) overlap case (8) at c = A-1 and
// case (11) at c = 1 with identical translation and gap; the table keeps the
// shrunk core of (10) so the cases partition the box exactly.
inline CaseTable near_square_table(PairConstruction& c, long k) {
  if (c.family != Family::unbounded)
    throw std::invalid_argument("near_square_table: unbounded family only");
  if (k < 1 || k > c.levels) throw std::invalid_argument("near_square_table: level unavailable");

  const Int q1 = c.q_at(4 * k - 1), q2 = c.q_at(4 * k), q3 = c.q_at(4 * k + 1);
  const Int p1 = c.qp_at(4 * k - 1), p2 = c.qp_at(4 * k), p3 = c.qp_at(4 * k + 1);
  const Int A = c.a_at(4 * k + 1);
  if (p3 != q3 + 1) throw structural_error("near_square_table: q' = q + 1 fails");
  if (A < 2) throw structural_error("near_square_table: a_{4k+1} too small");
  if (!(q2 - 2 * q1 > 0) || !(p3 - (2 * A + 1) * p1 > 0))
    throw structural_error("near_square_table: region bounds are not positive");

  LinearForm d = delta_form(c, k);
  LinearForm tha = theta_form(c.alpha, 4 * k + 1, Role::alpha);
  LinearForm thb = theta_form(c.beta, 4 * k + 1, Role::beta);

  CaseTable t;
  t.kind = "near-square";
  t.family_tag = to_string(c.family);
  t.level = k;
  t.q = q3;
  t.qp = p3;

  auto rc = [](Int n0, Int n1, Int m0, Int m1) {
    return Rect{std::move(n0), std::move(n1), std::move(m0), std::move(m1)};
  };

  detail::push_case(t, "(1)", {rc(q2, q3, p1, p3)}, d);
  detail::push_case(t, "(2)", {rc(Int(0), q1, p3 - A * p1, p3)}, thb - A * d);
  detail::push_case(t, "(3)", {rc(q1, q2, p3 - (A - 1) * p1, p3)}, thb - (A - 1) * d);
  detail::push_case(t, "(4)", {rc(q1, 2 * q1, p3 - A * p1, p3 - (A - 1) * p1)},
                    tha + thb - (2 * A) * d);
  detail::push_case(t, "(5)", {rc(2 * q1, q2, p3 - A * p1, p3 - (A - 1) * p1)},
                    tha + thb - (2 * A - 1) * d);
  detail::push_case(t, "(6)", {rc(Int(0), q1, p3 - (A + 1) * p1, p3 - A * p1)},
                    tha + thb - (2 * A) * d);
  detail::push_case(t, "(7)", {rc(q1, q2, p3 - (A + 1) * p1, p3 - A * p1)}, tha - A * d);
  for (Int cc(1); cc < A; ++cc)
    detail::push_case(t, "(8) c=" + cc.get_str(),
                      {rc(Int(0), q2, p3 - (A + cc + 1) * p1, p3 - (A + cc) * p1)},
                      tha - (A + cc) * d);
  detail::push_case(t, "(9)", {rc(Int(0), 2 * q1, Int(0), p3 - 2 * A * p1)},
                    tha - (2 * A) * d);
  detail::push_case(t, "(10)", {rc(2 * q1, q2, p1, p3 - 2 * A * p1)}, tha - (2 * A - 1) * d);
  for (Int cc(1); cc < A; ++cc)
    detail::push_case(t, "(11) c=" + cc.get_str(),
                      {rc((cc - 1) * q2 + 2 * q1, cc * q2 + 2 * q1, Int(0), p1)},
                      tha - (2 * A - cc) * d);
  detail::push_case(t, "(12)", {rc((A - 1) * q2 + 2 * q1, q3, Int(0), p1)}, tha - A * d);
  return t;
}

// Region accounting against the closed-form tallies, including the overlap
// correction absorbed into the shrunk case (10).
inline CheckReport near_square_counts(PairConstruction& c, long k, const CaseTable& t) {
  const Int q1 = c.q_at(4 * k - 1), q2 = c.q_at(4 * k), q3 = c.q_at(4 * k + 1);
  const Int p1 = c.qp_at(4 * k - 1), p2 = c.qp_at(4 * k), p3 = c.qp_at(4 * k + 1);
  const Int A = c.a_at(4 * k + 1);

  auto area_of = [&](const std::string& label) {
    for (const TableCase& tc : t.cases)
      if (tc.label == label) return tc.area();
    return Int(0);
  };

  CheckReport r;
  r.add("count (a): bulk delta block", area_of("(1)") == (q3 - q2) * p2);
  r.add("count (b): top-left block", area_of("(2)") == q1 * A * p1);
  r.add("count (c): top block", area_of("(3)") == (q2 - q1) * (A - 1) * p1);
  r.add("count (d): paired middle blocks",
        area_of("(4)") + area_of("(6)") == 2 * q1 * p1);
  r.add("count (e): middle block", area_of("(5)") == (q2 - 2 * q1) * p1);
  r.add("count (f): paired side blocks",
        area_of("(7)") + area_of("(12)") == 2 * (q2 - q1) * p1);
  bool g_ok = true;
  for (Int cc(1); cc < A; ++cc)
    if (area_of("(8) c=" + cc.get_str()) + area_of("(11) c=" + Int(A - cc).get_str()) !=
        2 * q2 * p1)
      g_ok = false;
  r.add("count (g): c-families pair to 2*q*p per value", g_ok);
  r.add("count (h): shrunk core of (10) carries the overlap correction",
        area_of("(10)") == (q2 - 2 * q1) * (p3 - (2 * A + 1) * p1));
  r.add("count (i): bottom-left block", area_of("(9)") == 2 * q1 * (p3 - 2 * A * p1));
  r.add("counts cover the whole box", t.total_area() == q3 * p3);

  // The value shared by (10), (8) at c=A-1 and (11) at c=1 picks up both the
  // paired 2*q*p family count and the corrected core.
  LinearForm shared = theta_form(c.alpha, 4 * k + 1, Role::alpha) -
                      (2 * A - 1) * delta_form(c, k);
  GapTriple g{shared.u, shared.v, shared.w};
  r.add("overlap value multiplicity = 2*q*p + corrected core",
        t.multiplicity_of(g) == 2 * q2 * p1 + (q2 - 2 * q1) * (p3 - (2 * A + 1) * p1));
  return r;
}

// ---------------------------------------------------------------------------
// Induction construction of the same neighbor map from the cyclic exchange
// phi: on the set G where phi jumps clockwise by delta, the neighbor map is
// phi's inverse off phi(G) and the second entering time into G on phi(G).
// Built by explicit orbit walking, independently of the twelve-case table.
// ---------------------------------------------------------------------------
inline NeighborTable phi_induction_map(PairConstruction& c, long k,
                                       std::int64_t point_cap = default_point_cap()) {
  if (c.family != Family::unbounded)
    throw std::invalid_argument("phi_induction_map: unbounded family only");
  const Int q2b = c.q_at(4 * k), q3b = c.q_at(4 * k + 1);
  const Int p1b = c.qp_at(4 * k - 1), p2b = c.qp_at(4 * k), p3b = c.qp_at(4 * k + 1);
  Int total = q3b * p3b;
  if (!fits_long(total) || to_long(total) > point_cap)
    throw resource_error("phi_induction_map: level too large to materialize");

  const std::int64_t q3 = to_long(q3b), p3 = to_long(p3b);
  const std::int64_t q2 = to_long(q2b), p2 = to_long(p2b), p1 = to_long(p1b);
  const std::int64_t P = q3 * p3;

  auto phi = [&](std::int64_t idx) {
    std::int64_t n = idx / p3 + q2;
    if (n >= q3) n -= q3;
    std::int64_t m = idx % p3 + p1;
    if (m >= p3) m -= p3;
    return n * p3 + m;
  };
  auto phi_inv = [&](std::int64_t idx) {
    std::int64_t n = idx / p3 - q2;
    if (n < 0) n += q3;
    std::int64_t m = idx % p3 - p1;
    if (m < 0) m += p3;
    return n * p3 + m;
  };
  auto in_G = [&](std::int64_t idx) {
    std::int64_t n = idx / p3, m = idx % p3;
    return n >= q3 - q2 || m >= p2;
  };

  NeighborTable nt;
  nt.q = q3;
  nt.qp = p3;
  nt.succ.resize(static_cast<std::size_t>(P));
  for (std::int64_t idx = 0; idx < P; ++idx) {
    std::int64_t img;
    if (!in_G(phi_inv(idx))) {
      img = phi_inv(idx);  // not in phi(G): the neighbor sits one phi step back
    } else {
      // second entering time into G along the forward phi orbit
      std::int64_t cur = idx, steps = 0;
      int entries = in_G(cur) ? 1 : 0;
      while (entries < 2) {
        cur = phi(cur);
        if (++steps > P)
          throw structural_error("phi_induction_map: orbit failed to re-enter G");
        if (in_G(cur)) ++entries;
      }
      img = cur;
    }
    nt.succ[static_cast<std::size_t>(idx)] = static_cast<std::uint32_t>(img);
  }
  return nt;
}

// Witness lengths ||q_{4k+1} alpha|| - (2 a_{4k+1} - c - 1) delta for
// c = 0..a_{4k+1}-1: the gaps after the points (c q_{4k} + 2 q_{4k-1}) alpha
// on the bottom row, pairwise distinct by their delta coefficient.
inline std::vector<GapTriple> unbounded_witnesses(PairConstruction& c, long k) {
  if (c.family != Family::unbounded)
    throw std::invalid_argument("unbounded_witnesses: unbounded family only");
  const Int q1 = c.q_at(4 * k - 1), q2 = c.q_at(4 * k), q3 = c.q_at(4 * k + 1);
  const Int p1 = c.qp_at(4 * k - 1);
  const Int A = c.a_at(4 * k + 1);
  LinearForm d = delta_form(c, k);
  LinearForm tha = theta_form(c.alpha, 4 * k + 1, Role::alpha);

  std::vector<GapTriple> out;
  if (!fits_long(A)) throw resource_error("unbounded_witnesses: a_{4k+1} too large");
  const long An = to_long(A);
  out.reserve(static_cast<std::size_t>(An));
  for (long cc = 0; cc < An; ++cc) {
    LinearForm w = tha - (2 * A - cc - 1) * d;
    // cross-check: the alpha offset equals the jump between the adjacent pair
    // (c q2 + 2 q1, 0) -> (q3 - q2, (2A - c - 1) p1)
    if (w.u != (q3 - q2) - (cc * q2 + 2 * q1) || w.v != (2 * A - cc - 1) * p1)
      throw structural_error("unbounded_witnesses: endpoint offsets disagree with length");
    out.push_back(GapTriple{w.u, w.v, w.w});
  }
  return out;
}

}  // namespace gaplab
