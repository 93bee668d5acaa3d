#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace gaplab {

// Arbitrary-precision integers and rationals. Everything that carries a
// number-theoretic meaning in this library is an Int; machine integers only
// appear in loop counters and point enumeration after an explicit fits check.
using Int = mpz_class;
using Rat = mpq_class;

// A requested computation exceeds a configured size/step cap.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certified query could not be decided within the allowed depth.
class undecided_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal structural invariant failed (broken table, bad orbit, ...).
class structural_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Int ipow(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

// Floor division: a = q*b + r with 0 <= r < b.  Requires b > 0.
inline std::pair<Int, Int> floor_divmod(const Int& a, const Int& b) {
  if (b <= 0) throw std::invalid_argument("floor_divmod: modulus must be positive");
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return {q, r};
}

inline Int floor_mod(const Int& a, const Int& b) { return floor_divmod(a, b).second; }

inline Int gcd(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool fits_long(const Int& v) { return v.fits_slong_p(); }

inline long to_long(const Int& v) {
  if (!v.fits_slong_p()) throw resource_error("integer exceeds machine range: " + v.get_str());
  return v.get_si();
}

// Strict decimal parser (optional leading '-'); rejects anything else.
inline Int parse_int(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_int: empty string");
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("parse_int: lone sign");
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("parse_int: not a decimal integer: " + s);
  return Int(s, 10);
}

inline Rat floor_rat(const Rat& v) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return Rat(q);
}

inline Int floor_to_int(const Rat& v) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return q;
}

// Decimal approximation with `sig` significant digits, normalized scientific
// form like "1.2345e-7".  Deterministic; used for report/CSV columns only.
inline std::string decimal_approx(const Rat& v, int sig = 20) {
  if (v == 0) return "0";
  mpf_class f(0, 64 + static_cast<unsigned>(sig) * 4);
  f = v;
  mp_exp_t e10 = 0;
  std::string digits = f.get_str(e10, 10, static_cast<std::size_t>(sig));
  std::string sign;
  if (!digits.empty() && digits[0] == '-') {
    sign = "-";
    digits = digits.substr(1);
  }
  while (digits.size() < static_cast<std::size_t>(sig)) digits.push_back('0');
  std::string out = sign + digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(static_cast<long>(e10) - 1);
  return out;
}

}  // namespace gaplab
