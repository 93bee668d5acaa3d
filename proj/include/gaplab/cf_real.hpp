#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <memory>
#include <utility>

#include "gaplab/convergents.hpp"
#include "gaplab/interval.hpp"
#include "gaplab/linear_form.hpp"
#include "gaplab/quotient_stream.hpp"

namespace gaplab {

// Default refinement ceiling for certified queries, in continued-fraction
// levels.  Far beyond what either constructed family ever needs; the env var
// GAPLAB_DEPTH overrides it process-wide, and a runtime override (the CLI's
// --depth flag) wins over both.
inline long& certified_depth_override() {
  static long v = 0;
  return v;
}

inline long default_certified_depth() {
  if (certified_depth_override() >= 1) return certified_depth_override();
  static const long d = [] {
    if (const char* e = std::getenv("GAPLAB_DEPTH")) {
      long v = std::atol(e);
      if (v >= 1) return v;
    }
    return 64L;
  }();
  return d;
}

// Cap on the total bit size of a convergent table.  The bounded family grows
// its denominators by roughly a factor nine in digit count per level, so a
// runaway refinement would otherwise exhaust memory instead of reporting.
inline std::size_t default_bit_budget() { return std::size_t(1) << 27; }

enum class Role { alpha, beta };

enum class SignResult { negative, zero_by_symbol, positive, undecided };

inline const char* to_string(SignResult s) {
  switch (s) {
    case SignResult::negative: return "negative";
    case SignResult::zero_by_symbol: return "zero-by-symbol";
    case SignResult::positive: return "positive";
    case SignResult::undecided: return "undecided";
  }
  return "?";
}

// A real number in (0,1) defined by its stream of partial quotients, with a
// lazily grown convergent table.  The table only ever grows; concurrent
// readers are safe once the needed depth has been reached, extension must be
// serialized by the caller.
class CFReal {
 public:
  explicit CFReal(std::shared_ptr<PartialQuotientStream> stream,
                  std::size_t bit_budget = default_bit_budget())
      : stream_(std::move(stream)), bit_budget_(bit_budget) {
    if (extend_to(1) < 1)
      throw std::invalid_argument("CFReal: stream yields no partial quotients");
  }

  // Grows the table through index `depth` if possible.  Returns the reached
  // index, which is smaller when the stream is exhausted (the value is then
  // exactly the last convergent) or when the bit budget stops refinement.
  long extend_to(long depth) {
    while (table_.max_index() < depth && !exhausted_ && !budget_stopped_) {
      if (table_.bit_size() > bit_budget_) {
        budget_stopped_ = true;
        break;
      }
      std::optional<Int> a;
      try {
        a = stream_->partial_quotient(static_cast<std::size_t>(table_.max_index() + 1));
      } catch (const resource_error&) {
        budget_stopped_ = true;
        break;
      }
      if (!a) {
        exhausted_ = true;
        break;
      }
      table_.append(*a);
    }
    return table_.max_index();
  }

  const ConvergentTable& table() const { return table_; }
  bool exhausted() const { return exhausted_; }
  bool budget_stopped() const { return budget_stopped_; }

  // Exact value, defined only for exhausted (finite) expansions.
  Rat exact_value() const {
    if (!exhausted_) throw std::logic_error("CFReal::exact_value on infinite expansion");
    long m = table_.max_index();
    return Rat(table_.p(m), table_.q(m));
  }

  struct Enclosure {
    RationalInterval iv;
    long depth;  // index actually used; < requested when the source ran out
    bool exact;  // the interval is a single point equal to the value
  };

  // Interval containing the value, of width at most 1/(q_depth q_{depth+1}).
  // Deeper enclosures are nested inside shallower ones.
  Enclosure enclosure(long depth) {
    if (depth < 1) throw std::invalid_argument("enclosure: depth must be >= 1");
    long reached = extend_to(depth + 1);
    if (exhausted_ && reached <= depth) {
      Rat v(table_.p(reached), table_.q(reached));
      return {RationalInterval::point(v), reached, true};
    }
    long d = std::min(depth, reached - 1);
    if (d < 1) throw resource_error("enclosure: convergents unavailable even at depth 1");
    Rat a(table_.p(d), table_.q(d));
    Rat b(table_.p(d + 1), table_.q(d + 1));
    return {a <= b ? RationalInterval(a, b) : RationalInterval(b, a), d, false};
  }

 private:
  std::shared_ptr<PartialQuotientStream> stream_;
  ConvergentTable table_;
  std::size_t bit_budget_;
  bool exhausted_ = false;
  bool budget_stopped_ = false;
};

// The form whose value is ||q_k x||, namely (-1)^k (q_k x - p_k); the sign
// convention makes the value positive for every k >= 1 (and equals x itself
// at k = 0, which is ||x|| for the x < 1/2 reals used here).  The role picks
// which coefficient slot of the form the real occupies.
inline LinearForm theta_form(CFReal& x, long k, Role role) {
  if (k < 0) throw std::invalid_argument("theta_form: k must be >= 0");
  if (x.extend_to(k) < k)
    throw std::invalid_argument("theta_form: convergents available only to depth " +
                                std::to_string(x.table().max_index()));
  Int sq = x.table().q(k), sp = -x.table().p(k);
  if (k % 2 != 0) {
    sq = -sq;
    sp = -sp;
  }
  return role == Role::alpha ? LinearForm(std::move(sq), Int(0), std::move(sp))
                             : LinearForm(Int(0), std::move(sq), std::move(sp));
}

namespace detail {

// Shared refinement loop: calls `probe(interval) -> bool done` on successively
// deeper joint enclosures of (x, y) until done or no further progress.
template <typename Probe>
bool refine_until(CFReal& x, CFReal& y, long max_depth, Probe&& probe) {
  long want = 2;
  for (;;) {
    long dq = std::min(want, max_depth);
    CFReal::Enclosure ex = x.enclosure(dq);
    CFReal::Enclosure ey = y.enclosure(dq);
    if (probe(ex.iv, ey.iv)) return true;
    bool x_more = !ex.exact && ex.depth >= dq && dq < max_depth;
    bool y_more = !ey.exact && ey.depth >= dq && dq < max_depth;
    if (!x_more && !y_more) return false;
    want = dq * 2;
  }
}

inline std::uint64_t low_u64(const Int& v) {
  Int r;
  mpz_tdiv_r_2exp(r.get_mpz_t(), v.get_mpz_t(), 64);
  return mpz_get_ui(r.get_mpz_t());
}

}  // namespace detail

// Certified sign of f(alpha, beta).  Never reports zero for a nonzero form:
// the symbolic zero is recognized componentwise, everything else is decided
// by interval refinement or honestly left undecided at max_depth.
inline SignResult certified_sign(const LinearForm& f, CFReal& x, CFReal& y,
                                 long max_depth = default_certified_depth()) {
  if (f.is_zero()) return SignResult::zero_by_symbol;
  if (f.u == 0 && f.v == 0) return f.w > 0 ? SignResult::positive : SignResult::negative;
  SignResult out = SignResult::undecided;
  detail::refine_until(x, y, max_depth, [&](const RationalInterval& a, const RationalInterval& b) {
    RationalInterval iv = evaluate(f, a, b);
    if (iv.lo > 0) {
      out = SignResult::positive;
      return true;
    }
    if (iv.hi < 0) {
      out = SignResult::negative;
      return true;
    }
    return false;
  });
  return out;
}

// floor of f(alpha, beta), certified by refining until both interval ends
// agree.  Throws undecided_error if the value sits on an integer at every
// reachable depth (possible only for rationally dependent inputs).
inline Int certified_floor(const LinearForm& f, CFReal& x, CFReal& y,
                           long max_depth = default_certified_depth()) {
  Int result;
  bool ok = detail::refine_until(
      x, y, max_depth, [&](const RationalInterval& a, const RationalInterval& b) {
        RationalInterval iv = evaluate(f, a, b);
        Int flo = floor_to_int(iv.lo), fhi = floor_to_int(iv.hi);
        if (flo == fhi) {
          result = flo;
          return true;
        }
        return false;
      });
  if (!ok) throw undecided_error("certified_floor: undecided for " + f.str());
  return result;
}

// Rational midpoint approximation of f(alpha, beta), refined until the
// enclosure is tight to `sig` significant digits (best effort at max_depth).
inline Rat certified_approx(const LinearForm& f, CFReal& x, CFReal& y, int sig = 20,
                            long max_depth = default_certified_depth()) {
  if (f.u == 0 && f.v == 0) return Rat(f.w);
  Rat mid;
  Int scale = ipow(Int(10), static_cast<unsigned long>(sig) + 2);
  detail::refine_until(x, y, max_depth, [&](const RationalInterval& a, const RationalInterval& b) {
    RationalInterval iv = evaluate(f, a, b);
    mid = iv.mid();
    Rat absmid = mid >= 0 ? mid : Rat(-mid);
    return mid != 0 && iv.width() * scale <= absmid;
  });
  return mid;
}

// floor(x * 2^64) together with a bound on its error in last-place units.
// This is the screening key for large sorts; anything within the error band
// falls back to certified comparison.
struct Fixed64 {
  std::uint64_t value;
  std::uint64_t err_ulps;
};

inline Fixed64 fixed_point64(CFReal& x, long max_depth = default_certified_depth()) {
  const Int two64 = ipow(Int(2), 64);
  Fixed64 best{0, ~std::uint64_t(0)};
  long want = 2;
  for (;;) {
    long dq = std::min(want, max_depth);
    CFReal::Enclosure e = x.enclosure(dq);
    Rat mid = e.iv.mid();
    Int scaled = floor_to_int(mid * Rat(two64));
    if (scaled < 0) scaled = 0;
    // mid is within width/2 of the value; the floor adds less than one ulp
    Int err_i = floor_to_int(e.iv.width() * Rat(two64) / 2) + 2;
    std::uint64_t err_u = fits_long(err_i) && err_i < Int(std::int64_t(1) << 62)
                              ? static_cast<std::uint64_t>(err_i.get_ui())
                              : (std::uint64_t(1) << 62);
    best = {detail::low_u64(scaled), err_u};
    if (e.exact || err_u <= 2) return best;
    if (e.depth < dq || dq >= max_depth) return best;
    want = dq * 2;
  }
}

}  // namespace gaplab
