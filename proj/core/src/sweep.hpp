#pragma once

// Exhaustive enumeration of (S, x) pairs, S in increasing mask order and x in
// for_each_assignment order.

#include <algorithm>

#include "hyperc/operators.hpp"
#include "hyperc/space.hpp"

namespace hyperc::detail {

/// Calls fn(S, x, f_{S->x}) for every S with min_size <= |S| <= max_size.
template <class Fn>
void for_each_restriction(const FunctionTable& f, int min_size, int max_size, Fn&& fn) {
  const Domain& d = f.domain();
  const std::uint32_t full = d.all().bits();
  for (std::uint32_t bits = 0;; ++bits) {
    const SubsetMask s(bits);
    const int size = s.size();
    if (size >= min_size && size <= max_size) {
      for_each_assignment(d.k(), size, [&](const Assignment& x) { fn(s, x, restrict(f, s, x)); });
    }
    if (bits == full) break;
  }
}

/// Calls fn(S, x, D_{S,x} f) for every S with min_size <= |S| <= max_size.
template <class Fn>
void for_each_derivative(const FunctionTable& f, int min_size, int max_size, Fn&& fn) {
  const Domain& d = f.domain();
  const std::uint32_t full = d.all().bits();
  for (std::uint32_t bits = 0;; ++bits) {
    const SubsetMask s(bits);
    const int size = s.size();
    if (size >= min_size && size <= max_size) {
      const FunctionTable lap = laplacian_L(f, s);
      for_each_assignment(d.k(), size, [&](const Assignment& x) { fn(s, x, restrict(lap, s, x)); });
    }
    if (bits == full) break;
  }
}

/// Strict lexicographic order on (mask, x).
inline bool witness_less(SubsetMask a, const Assignment& xa, SubsetMask b, const Assignment& xb) {
  if (a.bits() != b.bits()) return a.bits() < b.bits();
  return std::lexicographical_compare(xa.begin(), xa.end(), xb.begin(), xb.end());
}

}  // namespace hyperc::detail
