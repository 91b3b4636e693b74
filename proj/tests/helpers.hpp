#pragma once

#include <initializer_list>
#include <vector>

#include "multipeak/itemset.hpp"
#include "multipeak/rational.hpp"

namespace testutil {

inline multipeak::ItemSet set_of(std::size_t universe,
                                 std::initializer_list<std::size_t> indices) {
  std::vector<std::size_t> v(indices);
  return multipeak::ItemSet::from_indices(universe, v);
}

inline multipeak::Rational rat(long num, long den = 1) {
  return multipeak::Rational(num, den);
}

}  // namespace testutil
