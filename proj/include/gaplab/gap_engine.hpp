#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gaplab/cf_real.hpp"

namespace gaplab {

struct PointId {
  std::int64_t n = 0, m = 0;
  bool operator==(const PointId&) const = default;
};

// Exact gap length dn*alpha + dm*beta + dc between two neighbor points.
// dc is the unique integer placing the value in (0,1).
struct GapTriple {
  Int dn, dm, dc;

  LinearForm form() const { return {dn, dm, dc}; }
  bool operator==(const GapTriple& o) const { return dn == o.dn && dm == o.dm && dc == o.dc; }

  // Componentwise order; used for canonical keys, not for length order.
  bool lex_less(const GapTriple& o) const {
    if (dn != o.dn) return dn < o.dn;
    if (dm != o.dm) return dm < o.dm;
    return dc < o.dc;
  }
};

// Certified length order between two forms; a tie is impossible for distinct
// triples when 1, alpha, beta are rationally independent.
inline bool value_less(const LinearForm& a, const LinearForm& b, CFReal& x, CFReal& y,
                       long max_depth = default_certified_depth()) {
  SignResult s = certified_sign(b - a, x, y, max_depth);
  if (s == SignResult::positive) return true;
  if (s == SignResult::negative) return false;
  if (s == SignResult::zero_by_symbol) return false;
  throw undecided_error("value_less: could not order " + a.str() + " vs " + b.str());
}

struct GapEntry {
  GapTriple triple;
  Int mult;
};

// Multiset of gap triples of one point set E_{q,q'}; entries are kept in
// certified ascending length order.
struct GapSet {
  Int q, qp;
  std::vector<GapEntry> entries;

  Int total_multiplicity() const {
    Int t = 0;
    for (const GapEntry& e : entries) t += e.mult;
    return t;
  }

  // Sum over the multiset of mult * triple; a full circle is exactly (0,0,1).
  LinearForm weighted_sum() const {
    LinearForm s;
    for (const GapEntry& e : entries) s += e.mult * e.triple.form();
    return s;
  }

  bool contains(const GapTriple& t) const {
    for (const GapEntry& e : entries)
      if (e.triple == t) return true;
    return false;
  }
};

// Clockwise successor of every point, as a permutation on flat indices
// n * qp + m.
struct NeighborTable {
  std::int64_t q = 0, qp = 0;
  std::vector<std::uint32_t> succ;

  std::uint32_t flat(const PointId& p) const {
    return static_cast<std::uint32_t>(p.n * qp + p.m);
  }
  PointId point(std::uint32_t idx) const {
    return {static_cast<std::int64_t>(idx) / qp, static_cast<std::int64_t>(idx) % qp};
  }
  PointId successor(const PointId& p) const { return point(succ[flat(p)]); }

  // The neighbor map walks the whole circle once: a single q*qp cycle.
  bool single_cycle() const {
    std::uint32_t cur = 0;
    std::uint64_t steps = 0;
    const std::uint64_t total = succ.size();
    do {
      cur = succ[cur];
      ++steps;
    } while (cur != 0 && steps <= total);
    return steps == total && cur == 0;
  }
};

struct SortedPoints {
  std::int64_t q = 0, qp = 0;
  std::vector<std::uint32_t> order;  // order[i] = flat index of i-th point clockwise
};

namespace detail {

// Fixed-point screening state for one enumeration: 64-bit keys with a
// certified fallback for anything inside the error band.  Positions near the
// 0/1 seam get their floor certified so the key lands on the correct side.
class CircleSorter {
 public:
  CircleSorter(std::int64_t q, std::int64_t qp, CFReal& x, CFReal& y, long max_depth)
      : q_(q), qp_(qp), x_(x), y_(y), depth_(max_depth) {
    Fixed64 fa = fixed_point64(x, max_depth);
    Fixed64 fb = fixed_point64(y, max_depth);
    A_ = fa.value;
    B_ = fb.value;
    unsigned __int128 per_err =
        static_cast<unsigned __int128>(static_cast<std::uint64_t>(q)) * fa.err_ulps +
        static_cast<unsigned __int128>(static_cast<std::uint64_t>(qp)) * fb.err_ulps + 2;
    const unsigned __int128 cap = static_cast<unsigned __int128>(1) << 60;
    tie_ = 4 * static_cast<std::uint64_t>(per_err > cap ? cap : per_err);
  }

  std::uint64_t tie() const { return tie_; }

  std::uint64_t key(std::uint32_t idx) {
    unsigned __int128 full = full_at(idx);
    std::uint64_t k = static_cast<std::uint64_t>(full);
    if (idx != 0 && (k <= tie_ || k >= ~tie_)) return resolve_seam(idx, full);
    return k;
  }

  std::int64_t floor_at(std::uint32_t idx) {
    unsigned __int128 full = full_at(idx);
    std::uint64_t k = static_cast<std::uint64_t>(full);
    if (idx != 0 && (k <= tie_ || k >= ~tie_)) {
      resolve_seam(idx, full);
      return seam_floors_.at(idx);
    }
    return static_cast<std::int64_t>(full >> 64);
  }

  // Exact comparison of fractional positions, for pairs inside the band.
  bool exact_less(std::uint32_t ia, std::uint32_t ib) {
    PointId a = point(ia), b = point(ib);
    LinearForm diff(Int(b.n - a.n), Int(b.m - a.m), Int(floor_at(ia) - floor_at(ib)));
    SignResult s = certified_sign(diff, x_, y_, depth_);
    if (s == SignResult::positive) return true;
    if (s == SignResult::negative) return false;
    if (s == SignResult::zero_by_symbol)
      throw structural_error("coincident circle points " + describe(a, b));
    throw undecided_error("point order undecided at max depth for " + describe(a, b));
  }

  PointId point(std::uint32_t idx) const {
    return {static_cast<std::int64_t>(idx) / qp_, static_cast<std::int64_t>(idx) % qp_};
  }

 private:
  unsigned __int128 full_at(std::uint32_t idx) const {
    PointId p = point(idx);
    return static_cast<unsigned __int128>(static_cast<std::uint64_t>(p.n)) * A_ +
           static_cast<unsigned __int128>(static_cast<std::uint64_t>(p.m)) * B_;
  }

  std::uint64_t resolve_seam(std::uint32_t idx, unsigned __int128 full) {
    auto it = seam_keys_.find(idx);
    if (it != seam_keys_.end()) return it->second;
    PointId p = point(idx);
    Int fl = certified_floor(LinearForm(Int(p.n), Int(p.m), Int(0)), x_, y_, depth_);
    std::int64_t fl64 = to_long(fl);
    __int128 frac = static_cast<__int128>(full) - (static_cast<__int128>(fl64) << 64);
    std::uint64_t k;
    if (frac < 0)
      k = 0;
    else if (frac >= (static_cast<__int128>(1) << 64))
      k = ~std::uint64_t(0);
    else
      k = static_cast<std::uint64_t>(frac);
    seam_keys_[idx] = k;
    seam_floors_[idx] = fl64;
    return k;
  }

  static std::string describe(const PointId& a, const PointId& b) {
    return "(" + std::to_string(a.n) + "," + std::to_string(a.m) + ") vs (" +
           std::to_string(b.n) + "," + std::to_string(b.m) + ")";
  }

  std::int64_t q_, qp_;
  CFReal& x_;
  CFReal& y_;
  long depth_;
  std::uint64_t A_ = 0, B_ = 0, tie_ = 0;
  std::unordered_map<std::uint32_t, std::uint64_t> seam_keys_;
  std::unordered_map<std::uint32_t, std::int64_t> seam_floors_;
};

struct TripleKey {
  std::int64_t dn, dm, dc;
  bool operator==(const TripleKey&) const = default;
};

struct TripleKeyHash {
  std::size_t operator()(const TripleKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (std::uint64_t v : {static_cast<std::uint64_t>(k.dn), static_cast<std::uint64_t>(k.dm),
                            static_cast<std::uint64_t>(k.dc)}) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

inline void check_enumeration_size(const Int& q, const Int& qp, std::int64_t cap) {
  if (q < 1 || qp < 1) throw std::invalid_argument("point set needs q, q' >= 1");
  Int total = q * qp;
  if (!fits_long(total) || to_long(total) > cap || to_long(total) > (std::int64_t(1) << 31))
    throw resource_error("point set of " + total.get_str() + " points exceeds cap " +
                         std::to_string(cap));
}

inline std::vector<std::uint32_t> sorted_order(CircleSorter& sorter, std::int64_t points) {
  std::vector<std::uint32_t> order(static_cast<std::size_t>(points));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<std::uint32_t>(i);
  std::vector<std::uint64_t> keys(order.size());
  for (std::size_t i = 0; i < keys.size(); ++i)
    keys[i] = sorter.key(static_cast<std::uint32_t>(i));
  const std::uint64_t tie = sorter.tie();
  std::sort(order.begin(), order.end(), [&](std::uint32_t ia, std::uint32_t ib) {
    std::uint64_t ka = keys[ia], kb = keys[ib];
    std::uint64_t d = ka < kb ? kb - ka : ka - kb;
    if (d > tie) return ka < kb;
    return sorter.exact_less(ia, ib);
  });
  if (order.front() != 0)
    throw structural_error("enumerate_and_sort: origin is not the first point");
  return order;
}

}  // namespace detail

inline std::int64_t default_point_cap() { return std::int64_t(1) << 26; }

// All q*q' points n*alpha + m*beta ordered clockwise from 0.  Comparisons use
// the 64-bit screen first and certified signs for near ties, so the order is
// exact; an equal pair aborts (it would contradict rational independence).
inline SortedPoints enumerate_and_sort(const Int& q, const Int& qp, CFReal& x, CFReal& y,
                                       long max_depth = default_certified_depth(),
                                       std::int64_t point_cap = default_point_cap()) {
  detail::check_enumeration_size(q, qp, point_cap);
  const std::int64_t qn = to_long(q), qm = to_long(qp);
  detail::CircleSorter sorter(qn, qm, x, y, max_depth);
  return {qn, qm, detail::sorted_order(sorter, qn * qm)};
}

struct GapScan {
  GapSet set;
  NeighborTable neighbors;  // populated only when requested
};

// Gap multiset and neighbor permutation of E_{q,q'}.  dc values come from the
// certified floors of the two endpoints, and the conservation identity
// sum(mult * triple) == (0,0,1) is asserted before returning.
inline GapScan gap_set(const Int& q, const Int& qp, CFReal& x, CFReal& y,
                       bool with_neighbors = true,
                       long max_depth = default_certified_depth(),
                       std::int64_t point_cap = default_point_cap()) {
  detail::check_enumeration_size(q, qp, point_cap);
  const std::int64_t qn = to_long(q), qm = to_long(qp);
  detail::CircleSorter sorter(qn, qm, x, y, max_depth);
  std::vector<std::uint32_t> order = detail::sorted_order(sorter, qn * qm);

  std::unordered_map<detail::TripleKey, std::int64_t, detail::TripleKeyHash> tally;
  GapScan out;
  out.set.q = q;
  out.set.qp = qp;
  if (with_neighbors) {
    out.neighbors.q = qn;
    out.neighbors.qp = qm;
    out.neighbors.succ.resize(order.size());
  }

  const std::size_t total = order.size();
  std::int64_t prev_floor = sorter.floor_at(order[0]);
  for (std::size_t i = 0; i < total; ++i) {
    std::uint32_t cur = order[i];
    std::uint32_t nxt = order[(i + 1) % total];
    PointId pc = sorter.point(cur), pn = sorter.point(nxt);
    std::int64_t next_floor = (i + 1 < total) ? sorter.floor_at(nxt) : 0;
    std::int64_t dc = prev_floor - next_floor + (i + 1 == total ? 1 : 0);
    ++tally[{pn.n - pc.n, pn.m - pc.m, dc}];
    if (with_neighbors) out.neighbors.succ[cur] = nxt;
    prev_floor = next_floor;
  }

  out.set.entries.reserve(tally.size());
  for (const auto& [k, mult] : tally)
    out.set.entries.push_back({GapTriple{Int(k.dn), Int(k.dm), Int(k.dc)}, Int(mult)});
  std::sort(out.set.entries.begin(), out.set.entries.end(),
            [&](const GapEntry& a, const GapEntry& b) {
              if (a.triple == b.triple) return false;
              try {
                return value_less(a.triple.form(), b.triple.form(), x, y, max_depth);
              } catch (const undecided_error&) {
                // distinct triples of equal value only exist for rationally
                // dependent inputs; keep the order total and deterministic
                return a.triple.lex_less(b.triple);
              }
            });

  if (out.set.weighted_sum() != LinearForm::one())
    throw structural_error("gap_set: circle cover sum is not (0,0,1)");
  return out;
}

// Number of distinct gap lengths of the square set E_{N,N}.
inline Int distinct_count(const Int& N, CFReal& x, CFReal& y,
                          long max_depth = default_certified_depth(),
                          std::int64_t point_cap = default_point_cap()) {
  GapScan s = gap_set(N, N, x, y, /*with_neighbors=*/false, max_depth, point_cap);
  return Int(static_cast<long>(s.set.entries.size()));
}

// ---------------------------------------------------------------------------
// Primitive lengths: a gap length is primitive when it is not a sum of
// (possibly repeated) strictly smaller lengths of the same set.  Under
// rational independence, value equality is triple equality, so decomposition
// is an exact integer feasibility problem; interval values only bound the
// enumeration.
// ---------------------------------------------------------------------------
namespace detail {

class PrimitiveSearch {
 public:
  PrimitiveSearch(const std::vector<GapEntry>& entries, const RationalInterval& ia,
                  const RationalInterval& ib)
      : entries_(entries), ia_(ia), ib_(ib) {
    vals_.reserve(entries.size());
    for (const GapEntry& e : entries) vals_.push_back(evaluate(e.triple.form(), ia, ib));
  }

  // Can entries[target] be written as a nonnegative combination of the
  // strictly smaller entries [0, target)?
  bool decomposable(std::size_t target) {
    if (target == 0) return false;
    desc_.clear();
    for (std::size_t i = target; i-- > 0;) desc_.push_back(i);
    budget_ = 10'000'000;
    return dfs(0, entries_[target].triple.form());
  }

 private:
  bool dfs(std::size_t pos, LinearForm rho) {
    if (--budget_ < 0) throw resource_error("primitive search budget exhausted");
    if (rho.is_zero()) return true;
    std::size_t left = desc_.size() - pos;
    if (left == 0) return false;
    if (left == 1) return solve1(entries_[desc_[pos]].triple, rho);
    if (left == 2) return solve2(entries_[desc_[pos]].triple, entries_[desc_[pos + 1]].triple, rho);
    RationalInterval rv = evaluate(rho, ia_, ib_);
    if (rv.hi < 0) return false;
    const RationalInterval& tv = vals_[desc_[pos]];
    Int cmax = rv.hi <= 0 ? Int(0) : floor_to_int(rv.hi / tv.lo);
    LinearForm rem = rho;
    for (Int c = 0; c <= cmax; ++c) {
      if (dfs(pos + 1, rem)) return true;
      rem -= entries_[desc_[pos]].triple.form();
    }
    return false;
  }

  static bool solve1(const GapTriple& t, const LinearForm& rho) {
    const Int a[3] = {t.dn, t.dm, t.dc};
    const Int r[3] = {rho.u, rho.v, rho.w};
    int base = a[0] != 0 ? 0 : (a[1] != 0 ? 1 : 2);
    if (a[base] == 0 || r[base] % a[base] != 0) return false;
    Int c = r[base] / a[base];
    if (c < 0) return false;
    for (int k = 0; k < 3; ++k)
      if (c * a[k] != r[k]) return false;
    return true;
  }

  // x*ta + y*tb = rho over nonnegative integers.
  static bool solve2(const GapTriple& ta, const GapTriple& tb, const LinearForm& rho) {
    const Int a[3] = {ta.dn, ta.dm, ta.dc};
    const Int b[3] = {tb.dn, tb.dm, tb.dc};
    const Int r[3] = {rho.u, rho.v, rho.w};
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        Int det = a[i] * b[j] - a[j] * b[i];
        if (det == 0) continue;
        Int xn = r[i] * b[j] - r[j] * b[i];
        Int yn = a[i] * r[j] - a[j] * r[i];
        if (xn % det != 0 || yn % det != 0) return false;
        Int xx = xn / det, yy = yn / det;
        if (xx < 0 || yy < 0) return false;
        for (int k = 0; k < 3; ++k)
          if (a[k] * xx + b[k] * yy != r[k]) return false;
        return true;
      }
    // Collinear case: ta = s*e, tb = t*e for a primitive e; one Diophantine
    // equation x*s + y*t = mu remains.
    Int g = gcd(gcd(a[0], a[1]), a[2]);
    if (g == 0) return false;
    Int e[3] = {a[0] / g, a[1] / g, a[2] / g};
    int base = e[0] != 0 ? 0 : (e[1] != 0 ? 1 : 2);
    Int s = g;
    Int t = b[base] / e[base];
    Int mu = r[base] / e[base];
    for (int k = 0; k < 3; ++k)
      if (b[k] != t * e[k] || r[k] != mu * e[k]) return false;
    if (s <= 0 || t <= 0 || mu < 0) return false;
    Int g2, u, v;
    mpz_gcdext(g2.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t());
    if (mu % g2 != 0) return false;
    Int scale = mu / g2;
    Int x0 = u * scale, y0 = v * scale;
    Int sx = t / g2, sy = s / g2;  // x = x0 + k*sx, y = y0 - k*sy
    Int kmin = floor_divmod(-x0 + sx - 1, sx).first;
    Int kmax = floor_divmod(y0, sy).first;
    return kmin <= kmax;
  }

  const std::vector<GapEntry>& entries_;
  const RationalInterval& ia_;
  const RationalInterval& ib_;
  std::vector<RationalInterval> vals_;
  std::vector<std::size_t> desc_;
  long budget_ = 0;
};

}  // namespace detail

// Flags entries[i] of a certified-sorted GapSet as primitive or not.
inline std::vector<bool> primitive_flags(const GapSet& set, CFReal& x, CFReal& y,
                                         long max_depth = default_certified_depth()) {
  const std::size_t n = set.entries.size();
  std::vector<bool> prim(n, true);
  if (n <= 1) return prim;

  // One joint enclosure deep enough to certify every entry value positive.
  long depth = 2;
  CFReal::Enclosure ex = x.enclosure(depth), ey = y.enclosure(depth);
  for (;;) {
    bool all_pos = true;
    for (const GapEntry& e : set.entries)
      if (!(evaluate(e.triple.form(), ex.iv, ey.iv).lo > 0)) {
        all_pos = false;
        break;
      }
    if (all_pos) break;
    if ((ex.exact && ey.exact) || depth >= max_depth)
      throw undecided_error("primitive_flags: could not certify gap positivity");
    depth = std::min(depth * 2, max_depth);
    ex = x.enclosure(depth);
    ey = y.enclosure(depth);
  }

  detail::PrimitiveSearch search(set.entries, ex.iv, ey.iv);
  for (std::size_t t = 1; t < n; ++t) prim[t] = !search.decomposable(t);
  return prim;
}

inline std::vector<GapTriple> primitive_gaps(const GapSet& set, CFReal& x, CFReal& y,
                                             long max_depth = default_certified_depth()) {
  std::vector<bool> flags = primitive_flags(set, x, y, max_depth);
  std::vector<GapTriple> out;
  for (std::size_t i = 0; i < set.entries.size(); ++i)
    if (flags[i]) out.push_back(set.entries[i].triple);
  return out;
}

// CSV rows, one per distinct gap, schema: q,qp,dn,dm,dc,mult,approx,primitive
inline void write_gap_csv_header(std::ostream& os) {
  os << "q,qp,dn,dm,dc,mult,approx,primitive\n";
}

inline void write_gap_csv_rows(std::ostream& os, const GapSet& set,
                               const std::vector<bool>& primitive, CFReal& x, CFReal& y) {
  for (std::size_t i = 0; i < set.entries.size(); ++i) {
    const GapEntry& e = set.entries[i];
    Rat approx = certified_approx(e.triple.form(), x, y, 20);
    os << set.q.get_str() << ',' << set.qp.get_str() << ',' << e.triple.dn.get_str() << ','
       << e.triple.dm.get_str() << ',' << e.triple.dc.get_str() << ',' << e.mult.get_str() << ','
       << decimal_approx(approx, 20) << ',' << (primitive[i] ? 1 : 0) << '\n';
  }
}

}  // namespace gaplab
