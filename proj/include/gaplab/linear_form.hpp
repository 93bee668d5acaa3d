#pragma once

#include <string>

#include "gaplab/ints.hpp"

namespace gaplab {

// Integer linear form u*alpha + v*beta + w.  This is the exact currency for
// every length in the library: gap lengths, ||q*alpha|| values and their
// combinations are all stored as triples, never as floating approximations.
// When 1, alpha, beta are rationally independent, component equality is the
// same as value equality, which is what makes symbolic bookkeeping sound.
struct LinearForm {
  Int u{0}, v{0}, w{0};

  LinearForm() = default;
  LinearForm(Int u_, Int v_, Int w_) : u(std::move(u_)), v(std::move(v_)), w(std::move(w_)) {}

  bool is_zero() const { return u == 0 && v == 0 && w == 0; }

  LinearForm operator+(const LinearForm& o) const { return {u + o.u, v + o.v, w + o.w}; }
  LinearForm operator-(const LinearForm& o) const { return {u - o.u, v - o.v, w - o.w}; }
  LinearForm operator-() const { return {-u, -v, -w}; }
  LinearForm& operator+=(const LinearForm& o) {
    u += o.u;
    v += o.v;
    w += o.w;
    return *this;
  }
  LinearForm& operator-=(const LinearForm& o) {
    u -= o.u;
    v -= o.v;
    w -= o.w;
    return *this;
  }

  friend LinearForm operator*(const Int& c, const LinearForm& f) {
    return {c * f.u, c * f.v, c * f.w};
  }

  bool operator==(const LinearForm& o) const { return u == o.u && v == o.v && w == o.w; }
  bool operator!=(const LinearForm& o) const { return !(*this == o); }

  static LinearForm one() { return {Int(0), Int(0), Int(1)}; }
  static LinearForm constant(Int c) { return {Int(0), Int(0), std::move(c)}; }

  std::string str() const {
    return "(" + u.get_str() + ")a + (" + v.get_str() + ")b + (" + w.get_str() + ")";
  }
};

}  // namespace gaplab
