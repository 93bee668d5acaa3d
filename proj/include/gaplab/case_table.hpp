#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "gaplab/gap_engine.hpp"
#include "gaplab/report.hpp"

namespace gaplab {

// Half-open lattice rectangle [n0,n1) x [m0,m1).
struct Rect {
  Int n0, n1, m0, m1;

  Int area() const {
    if (n1 <= n0 || m1 <= m0) return 0;
    return (n1 - n0) * (m1 - m0);
  }
  bool contains(const Int& n, const Int& m) const {
    return n0 <= n && n < n1 && m0 <= m && m < m1;
  }
  bool overlaps(const Rect& o) const {
    return std::max(n0, o.n0) < std::min(n1, o.n1) && std::max(m0, o.m0) < std::min(m1, o.m1);
  }
};

// One case of a neighbor-map predictor: on `rects` the clockwise successor of
// (n, m) is (n + dn, m + dm) and the gap is `gap`.  The offset always equals
// the (dn, dm) components of the gap triple; keeping both makes that identity
// checkable instead of assumed.
struct TableCase {
  std::string label;
  std::vector<Rect> rects;
  Int dn, dm;
  GapTriple gap;

  Int area() const {
    Int a = 0;
    for (const Rect& r : rects) a += r.area();
    return a;
  }
};

// A closed-form predictor for the neighbor map of E_{q,q'}: finitely many
// rectangular cases that partition the index box exactly.
struct CaseTable {
  std::string kind;  // "exchange", "induced", "extended", "near-square"
  std::string family_tag;  // context: which construction produced it
  long level = 0;          // context: construction level / index
  Int q, qp;
  std::vector<TableCase> cases;

  Int total_area() const {
    Int a = 0;
    for (const TableCase& c : cases) a += c.area();
    return a;
  }

  LinearForm weighted_gap_sum() const {
    LinearForm s;
    for (const TableCase& c : cases) s += c.area() * c.gap.form();
    return s;
  }

  const TableCase* locate(const Int& n, const Int& m) const {
    for (const TableCase& c : cases)
      for (const Rect& r : c.rects)
        if (r.contains(n, m)) return &c;
    return nullptr;
  }

  // Exact partition check: offsets match gaps, rects stay inside the box and
  // are pairwise disjoint (plane sweep), and areas add up to q*q'.
  CheckReport check_partition() const {
    CheckReport rep;
    bool offsets_ok = true, bounds_ok = true;
    std::vector<const Rect*> all;
    for (const TableCase& c : cases) {
      if (c.gap.dn != c.dn || c.gap.dm != c.dm) offsets_ok = false;
      for (const Rect& r : c.rects) {
        if (r.n1 <= r.n0 || r.m1 <= r.m0) continue;  // empty rects are dropped upstream
        if (r.n0 < 0 || r.m0 < 0 || r.n1 > q || r.m1 > qp) bounds_ok = false;
        all.push_back(&r);
      }
    }
    rep.add(kind + ": case offsets equal gap coefficients", offsets_ok);
    rep.add(kind + ": regions inside the index box", bounds_ok);

    std::sort(all.begin(), all.end(),
              [](const Rect* a, const Rect* b) { return a->m0 < b->m0; });
    bool disjoint = true;
    std::vector<const Rect*> active;
    for (const Rect* r : all) {
      active.erase(std::remove_if(active.begin(), active.end(),
                                  [&](const Rect* a) { return a->m1 <= r->m0; }),
                   active.end());
      for (const Rect* a : active)
        if (a->overlaps(*r)) {
          disjoint = false;
          break;
        }
      if (!disjoint) break;
      active.push_back(r);
    }
    rep.add(kind + ": regions pairwise disjoint", disjoint);
    rep.add(kind + ": region areas sum to q*q'", total_area() == q * qp,
            total_area().get_str() + " vs " + Int(q * qp).get_str());
    return rep;
  }

  // Certifies each case gap lies strictly inside (0,1) and that the weighted
  // sum telescopes to the full circle.
  CheckReport check_gaps(CFReal& x, CFReal& y, long max_depth = default_certified_depth()) const {
    CheckReport rep;
    bool pos = true, lt1 = true;
    for (const TableCase& c : cases) {
      if (certified_sign(c.gap.form(), x, y, max_depth) != SignResult::positive) pos = false;
      if (certified_sign(LinearForm::one() - c.gap.form(), x, y, max_depth) !=
          SignResult::positive)
        lt1 = false;
    }
    rep.add(kind + ": every case gap certified positive", pos);
    rep.add(kind + ": every case gap certified < 1", lt1);
    rep.add(kind + ": weighted gap sum equals (0,0,1)",
            weighted_gap_sum() == LinearForm::one());
    return rep;
  }

  // Point-for-point comparison against an oracle neighbor permutation.
  CheckReport check_against(const NeighborTable& oracle) const {
    CheckReport rep;
    if (!fits_long(q * qp)) throw resource_error("case table too large for point comparison");
    if (oracle.q != to_long(q) || oracle.qp != to_long(qp)) {
      rep.add(kind + ": oracle dimensions match", false);
      return rep;
    }
    std::int64_t mismatches = 0, covered = 0;
    for (const TableCase& c : cases) {
      const std::int64_t dn = to_long(c.dn), dm = to_long(c.dm);
      for (const Rect& r : c.rects) {
        const std::int64_t n0 = to_long(r.n0), n1 = to_long(r.n1);
        const std::int64_t m0 = to_long(r.m0), m1 = to_long(r.m1);
        for (std::int64_t n = n0; n < n1; ++n)
          for (std::int64_t m = m0; m < m1; ++m) {
            ++covered;
            PointId want{n + dn, m + dm};
            if (oracle.succ[static_cast<std::size_t>(n * oracle.qp + m)] !=
                static_cast<std::uint32_t>(want.n * oracle.qp + want.m))
              ++mismatches;
          }
      }
    }
    rep.add(kind + ": predictor covers every point",
            covered == oracle.q * oracle.qp,
            std::to_string(covered) + " of " + std::to_string(oracle.q * oracle.qp));
    rep.add(kind + ": predictor equals oracle neighbor map", mismatches == 0,
            std::to_string(mismatches) + " mismatching points");
    return rep;
  }

  // Permutation induced by the table (requires a verified partition).
  NeighborTable to_neighbor_table() const {
    if (!fits_long(q * qp)) throw resource_error("case table too large to materialize");
    NeighborTable nt;
    nt.q = to_long(q);
    nt.qp = to_long(qp);
    nt.succ.assign(static_cast<std::size_t>(nt.q * nt.qp), 0);
    for (const TableCase& c : cases) {
      const std::int64_t dn = to_long(c.dn), dm = to_long(c.dm);
      for (const Rect& r : c.rects)
        for (std::int64_t n = to_long(r.n0); n < to_long(r.n1); ++n)
          for (std::int64_t m = to_long(r.m0); m < to_long(r.m1); ++m)
            nt.succ[static_cast<std::size_t>(n * nt.qp + m)] =
                static_cast<std::uint32_t>((n + dn) * nt.qp + (m + dm));
    }
    return nt;
  }

  // Distinct gap triples of the table (by exact triple identity).
  std::vector<GapTriple> distinct_gaps() const {
    std::vector<GapTriple> out;
    for (const TableCase& c : cases) {
      bool seen = false;
      for (const GapTriple& g : out)
        if (g == c.gap) {
          seen = true;
          break;
        }
      if (!seen) out.push_back(c.gap);
    }
    return out;
  }

  // Multiplicity of one triple across all cases.
  Int multiplicity_of(const GapTriple& g) const {
    Int m = 0;
    for (const TableCase& c : cases)
      if (c.gap == g) m += c.area();
    return m;
  }
};

namespace detail {

// Helper used by the table builders: push a case unless its region is empty.
inline void push_case(CaseTable& t, std::string label, std::vector<Rect> rects, LinearForm gap) {
  std::vector<Rect> keep;
  for (Rect& r : rects)
    if (r.area() > 0) keep.push_back(std::move(r));
  if (keep.empty()) return;
  TableCase c;
  c.label = std::move(label);
  c.rects = std::move(keep);
  c.dn = gap.u;
  c.dm = gap.v;
  c.gap = GapTriple{gap.u, gap.v, gap.w};
  t.cases.push_back(std::move(c));
}

}  // namespace detail

}  // namespace gaplab
