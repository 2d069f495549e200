#pragma once

// Private helpers for applying per-coordinate linear maps to mixed-radix tables.

#include <cstddef>
#include <span>
#include <vector>

#include "hyperc/space.hpp"

namespace hyperc::detail {

/// Row-major k x k matrix acting on one coordinate: out_a = sum_b m[a*k + b] in_b.
using CoordMatrix = std::vector<double>;

/// Applies m along the axis with the given stride. Every axis has extent k.
inline void apply_along_axis(std::span<const double> in, std::span<double> out, std::size_t k,
                             std::size_t stride, std::span<const double> m) {
  const std::size_t block = stride * k;
  std::vector<double> v(k);
  for (std::size_t base = 0; base < in.size(); base += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t off = base + inner;
      for (std::size_t b = 0; b < k; ++b) v[b] = in[off + b * stride];
      for (std::size_t a = 0; a < k; ++a) {
        double acc = 0.0;
        const double* row = m.data() + a * k;
        for (std::size_t b = 0; b < k; ++b) acc += row[b] * v[b];
        out[off + a * stride] = acc;
      }
    }
  }
}

/// Applies m to every coordinate in s, in increasing coordinate order.
inline std::vector<double> apply_on_set(std::vector<double> values, const Domain& d, SubsetMask s,
                                        std::span<const double> m) {
  std::vector<double> scratch(values.size());
  for (int i : s.coordinates()) {
    apply_along_axis(values, scratch, static_cast<std::size_t>(d.k()), d.stride(i), m);
    values.swap(scratch);
  }
  return values;
}

/// E on one coordinate: every output entry is the mu-average of the fibre.
inline CoordMatrix averaging_matrix(const ProductSpace& sp) {
  const auto k = static_cast<std::size_t>(sp.k());
  CoordMatrix m(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) m[a * k + b] = sp.weight(static_cast<int>(b));
  }
  return m;
}

/// alpha * I + beta * E on one coordinate.
inline CoordMatrix identity_plus_average(const ProductSpace& sp, double alpha, double beta) {
  const auto k = static_cast<std::size_t>(sp.k());
  CoordMatrix m = averaging_matrix(sp);
  for (double& x : m) x *= beta;
  for (std::size_t a = 0; a < k; ++a) m[a * k + a] += alpha;
  return m;
}

}  // namespace hyperc::detail
