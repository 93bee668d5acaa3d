#pragma once

#include <memory>
#include <vector>

#include "gaplab/cf_real.hpp"
#include "gaplab/quotient_stream.hpp"

namespace gaplab::testing {

inline CFReal from_list(std::vector<long> as) {
  std::vector<Int> v;
  for (long a : as) v.emplace_back(a);
  return CFReal(std::make_shared<ExplicitQuotients>(std::move(v)));
}

// [0; 1, 1, 1, ...] = 1/phi, the classic all-ones expansion.
inline CFReal golden() {
  return CFReal(std::make_shared<GeneratedQuotients>(+[](std::size_t) { return Int(1); }));
}

}  // namespace gaplab::testing
