#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gaplab/ints.hpp"

namespace gaplab {

// Source of partial quotients a_1, a_2, ... of a continued fraction
// [0; a_1, a_2, ...] in (0,1).  Implementations must be deterministic:
// querying the same index twice yields the same value.
class PartialQuotientStream {
 public:
  virtual ~PartialQuotientStream() = default;

  // a_k for k >= 1, or nullopt once the source is exhausted (finite lists).
  // Every yielded value is >= 1.
  virtual std::optional<Int> partial_quotient(std::size_t k) = 0;
};

class ExplicitQuotients final : public PartialQuotientStream {
 public:
  explicit ExplicitQuotients(std::vector<Int> as) : as_(std::move(as)) {
    for (const Int& a : as_)
      if (a < 1) throw std::invalid_argument("partial quotient must be >= 1, got " + a.get_str());
  }

  std::optional<Int> partial_quotient(std::size_t k) override {
    if (k == 0 || k > as_.size()) return std::nullopt;
    return as_[k - 1];
  }

  std::size_t size() const { return as_.size(); }

 private:
  std::vector<Int> as_;
};

// Stream backed by a callable index -> a_k; handy for classic expansions in
// tests (all-ones, periodic patterns) without materializing a list.
class GeneratedQuotients final : public PartialQuotientStream {
 public:
  using Fn = Int (*)(std::size_t);
  explicit GeneratedQuotients(Fn fn) : fn_(fn) {}

  std::optional<Int> partial_quotient(std::size_t k) override {
    Int a = fn_(k);
    if (a < 1) throw std::invalid_argument("generated partial quotient must be >= 1");
    return a;
  }

 private:
  Fn fn_;
};

}  // namespace gaplab
