#pragma once

#include <stdexcept>
#include <vector>

#include "gaplab/ints.hpp"

namespace gaplab {

// Table of continued-fraction convergents p_k/q_k for a real in (0,1),
// indexed from k = -1 with the standard seeds
//   p_{-1} = 1, q_{-1} = 0,   p_0 = 0, q_0 = 1,
// and the recurrences p_k = a_k p_{k-1} + p_{k-2}, q_k = a_k q_{k-1} + q_{k-2}.
class ConvergentTable {
 public:
  ConvergentTable() {
    rows_.push_back({Int(0), Int(1), Int(0)});  // k = -1
    rows_.push_back({Int(0), Int(0), Int(1)});  // k = 0
  }

  long max_index() const { return static_cast<long>(rows_.size()) - 2; }

  const Int& a(long k) const { return row(k, 1).a; }
  const Int& p(long k) const { return row(k, -1).p; }
  const Int& q(long k) const { return row(k, -1).q; }

  void append(const Int& a_next) {
    if (a_next < 1) throw std::invalid_argument("partial quotient must be >= 1");
    const Row& r1 = rows_[rows_.size() - 1];
    const Row& r2 = rows_[rows_.size() - 2];
    Row nr;
    nr.a = a_next;
    nr.p = a_next * r1.p + r2.p;
    nr.q = a_next * r1.q + r2.q;
    rows_.push_back(std::move(nr));
  }

  // Total size of the stored integers, in bits.  Used for growth budgets.
  std::size_t bit_size() const {
    std::size_t bits = 0;
    for (const Row& r : rows_)
      bits += mpz_sizeinbase(r.p.get_mpz_t(), 2) + mpz_sizeinbase(r.q.get_mpz_t(), 2);
    return bits;
  }

 private:
  struct Row {
    Int a, p, q;
  };

  const Row& row(long k, long min_k) const {
    if (k < min_k || k > max_index())
      throw std::invalid_argument("convergent index " + std::to_string(k) + " out of range");
    return rows_[static_cast<std::size_t>(k + 1)];
  }

  std::vector<Row> rows_;
};

// p_{k-1} q_k - p_k q_{k-1} == (-1)^k, the exact integer identity behind all
// the sign bookkeeping.
inline bool determinant_identity_holds(const ConvergentTable& t, long k) {
  Int det = t.p(k - 1) * t.q(k) - t.p(k) * t.q(k - 1);
  return det == ((k % 2 == 0) ? 1 : -1);
}

}  // namespace gaplab
