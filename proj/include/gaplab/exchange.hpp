#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gaplab/case_table.hpp"
#include "gaplab/families.hpp"

namespace gaplab {

// Orientation for the rectangle-exchange machinery.  The u axis enumerates
// multiples of x (bounded by U = q^x_i), the v axis multiples of y (bounded
// by V = q^y_j), tied by V = b*U + 1.  In the swapped orientation x is the
// beta real, which is how the regime q'_k < N <= q_{k+1} reuses the same
// code path with the two roles exchanged.
struct Frame {
  CFReal& x;
  CFReal& y;
  Role role_x, role_y;
  long i, j;
  Int b;
  bool swapped;

  const Int& qx(long k) {
    if (x.extend_to(k) < k) throw resource_error("frame: x convergents unavailable");
    return x.table().q(k);
  }
  const Int& qy(long k) {
    if (y.extend_to(k) < k) throw resource_error("frame: y convergents unavailable");
    return y.table().q(k);
  }
  LinearForm theta_x(long k) { return theta_form(x, k, role_x); }
  LinearForm theta_y(long k) { return theta_form(y, k, role_y); }

  Int U() { return qx(i); }
  Int V() { return qy(j); }

  // D = ||q^x_{i-1} x|| - b ||q^y_{j-1} y||, the base gap of the exchange.
  LinearForm base_gap() { return theta_x(i - 1) - b * theta_y(j - 1); }

  Rect rect(const Int& u0, const Int& u1, const Int& v0, const Int& v1) const {
    return swapped ? Rect{v0, v1, u0, u1} : Rect{u0, u1, v0, v1};
  }
  const Int& coeff_u(const LinearForm& f) const { return swapped ? f.v : f.u; }
  const Int& coeff_v(const LinearForm& f) const { return swapped ? f.u : f.v; }
};

inline Frame direct_frame(PairConstruction& c, long i, long j, Int b) {
  return Frame{c.alpha, c.beta, Role::alpha, Role::beta, i, j, std::move(b), false};
}
inline Frame swapped_frame(PairConstruction& c, long i, long j, Int b) {
  return Frame{c.beta, c.alpha, Role::beta, Role::alpha, i, j, std::move(b), true};
}

// Does ||q^y_j y|| < D hold, certified?  This is the condition under which
// the cyclic exchange map is the true clockwise neighbor map.
inline SignResult assumption_sign(Frame f, long max_depth = default_certified_depth()) {
  LinearForm margin = f.base_gap() - f.theta_y(f.j);
  return certified_sign(margin, f.x, f.y, max_depth);
}

inline SignResult check_assumption(PairConstruction& c, long i, long j, const Int& bprime,
                                   long max_depth = default_certified_depth()) {
  return assumption_sign(direct_frame(c, i, j, bprime), max_depth);
}

// The exchange of four rectangles realizing the neighbor map of
// E_{U,V} when V = b*U + 1 and the assumption above holds.  Gap values are
// D, D - ||Vy||, D + ||Ux||, D + ||Ux|| - ||Vy|| on the four blocks cut by
// the wrap lines of the two coordinates.
inline CaseTable exchange_table_frame(Frame f) {
  Int U = f.U(), V = f.V();
  if (V != f.b * U + 1)
    throw std::invalid_argument("exchange_table: q^y_j = b q^x_i + 1 fails for (" +
                                std::to_string(f.i) + "," + std::to_string(f.j) +
                                ", b=" + f.b.get_str() + ")");
  const Int su = f.qx(f.i - 1);      // u-step magnitude
  const Int sv = f.b * f.qy(f.j - 1);  // v-step magnitude
  if (sv >= V) throw structural_error("exchange_table: b q^y_{j-1} not reduced");

  LinearForm D = f.base_gap();
  LinearForm thU = f.theta_x(f.i), thV = f.theta_y(f.j);
  const bool iodd = f.i % 2 != 0, jodd = f.j % 2 != 0;

  // u axis: [nowrap interval, wrap interval]; same for v.
  struct Span {
    Int lo, hi;
    Int shift;
  };
  Span u_nowrap = iodd ? Span{Int(0), U - su, su} : Span{su, U, -su};
  Span u_wrap = iodd ? Span{U - su, U, su - U} : Span{Int(0), su, U - su};
  Span v_nowrap = jodd ? Span{sv, V, -sv} : Span{Int(0), V - sv, sv};
  Span v_wrap = jodd ? Span{Int(0), sv, V - sv} : Span{V - sv, V, sv - V};

  CaseTable t;
  t.kind = "exchange";
  t.q = f.swapped ? V : U;
  t.qp = f.swapped ? U : V;

  auto emit = [&](const char* label, const Span& us, const Span& vs, LinearForm gap) {
    if (f.coeff_u(gap) != us.shift || f.coeff_v(gap) != vs.shift)
      throw structural_error("exchange_table: gap coefficients disagree with translation");
    detail::push_case(t, label, {f.rect(us.lo, us.hi, vs.lo, vs.hi)}, std::move(gap));
  };
  emit("D", u_nowrap, v_nowrap, D);
  emit("D-thV", u_nowrap, v_wrap, D - thV);
  emit("D+thU", u_wrap, v_nowrap, D + thU);
  emit("D+thU-thV", u_wrap, v_wrap, D + thU - thV);
  return t;
}

// Spec-facing wrapper on the (alpha, beta) orientation.
inline CaseTable exchange_table(PairConstruction& c, long i, long j, const Int& bprime) {
  if (i < 1 || j < 1) throw std::invalid_argument("exchange_table: indices must be >= 1");
  CaseTable t = exchange_table_frame(direct_frame(c, i, j, bprime));
  t.family_tag = to_string(c.family);
  t.level = i;
  return t;
}

}  // namespace gaplab
