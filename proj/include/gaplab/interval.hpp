#pragma once

#include <stdexcept>
#include <utility>

#include "gaplab/ints.hpp"
#include "gaplab/linear_form.hpp"

namespace gaplab {

// Closed interval with exact rational endpoints.  The width is the
// certification radius: every claim derived from an interval holds for all
// reals inside it.
struct RationalInterval {
  Rat lo, hi;

  RationalInterval() : lo(0), hi(0) {}
  RationalInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("RationalInterval: lo > hi");
  }

  static RationalInterval point(const Rat& v) { return {v, v}; }

  Rat width() const { return hi - lo; }
  Rat mid() const { return (lo + hi) / 2; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  bool contains(const RationalInterval& inner) const {
    return lo <= inner.lo && inner.hi <= hi;
  }

  RationalInterval operator+(const RationalInterval& o) const { return {lo + o.lo, hi + o.hi}; }

  // Scaling by an exact integer; endpoints swap for negative scalars.
  friend RationalInterval operator*(const Int& c, const RationalInterval& iv) {
    Rat a = Rat(c) * iv.lo, b = Rat(c) * iv.hi;
    return c >= 0 ? RationalInterval{a, b} : RationalInterval{b, a};
  }
};

// Interval value of u*A + v*B + w given enclosures A of alpha and B of beta.
inline RationalInterval evaluate(const LinearForm& f, const RationalInterval& a,
                                 const RationalInterval& b) {
  RationalInterval r = (f.u * a) + (f.v * b);
  return {r.lo + Rat(f.w), r.hi + Rat(f.w)};
}

}  // namespace gaplab
