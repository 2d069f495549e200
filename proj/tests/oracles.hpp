#pragma once

// Brute-force reference implementations used only by the tests. They work
// straight from definitions (conditional expectations, explicit kernels,
// character sums) and share no code with the library beyond the table type.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "hyperc/space.hpp"

namespace oracle {

using hyperc::Domain;
using hyperc::FunctionTable;

inline std::vector<int> decode(std::size_t idx, int k, int n) {
  std::vector<int> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    x[static_cast<std::size_t>(i)] = static_cast<int>(idx % static_cast<std::size_t>(k));
    idx /= static_cast<std::size_t>(k);
  }
  return x;
}

inline double weight(const Domain& d, const std::vector<int>& x, std::uint32_t mask) {
  double w = 1.0;
  for (int i = 0; i < d.n(); ++i) {
    if ((mask >> i) & 1U) w *= d.space().weight(x[static_cast<std::size_t>(i)]);
  }
  return w;
}

inline std::uint32_t full_mask(int n) { return n == 0 ? 0U : (n >= 32 ? ~0U : ((1U << n) - 1U)); }

inline double expect(const FunctionTable& f) {
  const Domain& d = f.domain();
  long double s = 0.0L;
  for (std::size_t i = 0; i < f.size(); ++i) s += weight(d, decode(i, d.k(), d.n()), full_mask(d.n())) * f[i];
  return static_cast<double>(s);
}

inline double lp_pow(const FunctionTable& f, double p) {
  const Domain& d = f.domain();
  long double s = 0.0L;
  for (std::size_t i = 0; i < f.size(); ++i) {
    s += weight(d, decode(i, d.k(), d.n()), full_mask(d.n())) * std::pow(std::abs(f[i]), p);
  }
  return static_cast<double>(s);
}

inline double lp(const FunctionTable& f, double p) { return std::pow(lp_pow(f, p), 1.0 / p); }

inline double inner(const FunctionTable& f, const FunctionTable& g) {
  const Domain& d = f.domain();
  long double s = 0.0L;
  for (std::size_t i = 0; i < f.size(); ++i) s += weight(d, decode(i, d.k(), d.n()), full_mask(d.n())) * f[i] * g[i];
  return static_cast<double>(s);
}

/// E[f | x_U]: average over every y agreeing with x on U.
inline FunctionTable cond_expect(const FunctionTable& f, std::uint32_t keep) {
  const Domain& d = f.domain();
  const std::uint32_t free = full_mask(d.n()) & ~keep;
  std::vector<double> out(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) {
    const auto x = decode(a, d.k(), d.n());
    long double s = 0.0L;
    for (std::size_t b = 0; b < f.size(); ++b) {
      const auto y = decode(b, d.k(), d.n());
      bool agree = true;
      for (int i = 0; i < d.n() && agree; ++i) {
        if ((keep >> i) & 1U) agree = x[static_cast<std::size_t>(i)] == y[static_cast<std::size_t>(i)];
      }
      if (agree) s += weight(d, y, free) * f[b];
    }
    out[a] = static_cast<double>(s);
  }
  return FunctionTable(d, out);
}

/// f^{=T} by inclusion-exclusion over conditional expectations.
inline FunctionTable es_part(const FunctionTable& f, std::uint32_t t) {
  std::vector<double> acc(f.size(), 0.0);
  for (std::uint32_t u = t;; u = (u - 1) & t) {
    const int sign = (std::popcount(t & ~u) % 2 == 0) ? 1 : -1;
    const FunctionTable c = cond_expect(f, u);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += sign * c[i];
    if (u == 0) break;
  }
  return FunctionTable(f.domain(), acc);
}

inline FunctionTable level(const FunctionTable& f, int deg) {
  std::vector<double> acc(f.size(), 0.0);
  for (std::uint32_t t = 0; t <= full_mask(f.domain().n()); ++t) {
    if (std::popcount(t) != deg) continue;
    const FunctionTable part = es_part(f, t);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
  }
  return FunctionTable(f.domain(), acc);
}

/// T_rho via the explicit Markov kernel prod_i (rho [x_i = y_i] + (1 - rho) mu(y_i)).
inline FunctionTable noise(const FunctionTable& f, double rho) {
  const Domain& d = f.domain();
  std::vector<double> out(f.size());
  for (std::size_t a = 0; a < f.size(); ++a) {
    const auto x = decode(a, d.k(), d.n());
    long double s = 0.0L;
    for (std::size_t b = 0; b < f.size(); ++b) {
      const auto y = decode(b, d.k(), d.n());
      double kern = 1.0;
      for (int i = 0; i < d.n(); ++i) {
        const int yi = y[static_cast<std::size_t>(i)];
        kern *= rho * (x[static_cast<std::size_t>(i)] == yi ? 1.0 : 0.0) + (1.0 - rho) * d.space().weight(yi);
      }
      s += kern * f[b];
    }
    out[a] = static_cast<double>(s);
  }
  return FunctionTable(d, out);
}

inline double chi(std::uint32_t s, const std::vector<int>& x, double p) {
  double v = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if ((s >> i) & 1U) v *= (x[i] - p) / std::sqrt(p * (1.0 - p));
  }
  return v;
}

inline double fourier(const FunctionTable& f, std::uint32_t s) {
  const Domain& d = f.domain();
  const double p = d.space().weight(1);
  long double acc = 0.0L;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = decode(i, 2, d.n());
    acc += weight(d, x, full_mask(d.n())) * f[i] * chi(s, x, p);
  }
  return static_cast<double>(acc);
}

/// f_{S->x} by filtering points; the survivors keep mixed-radix order.
inline FunctionTable restrict(const FunctionTable& f, std::uint32_t s, const std::vector<int>& xs) {
  const Domain& d = f.domain();
  std::vector<double> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = decode(i, d.k(), d.n());
    std::size_t j = 0;
    bool keep = true;
    for (int c = 0; c < d.n() && keep; ++c) {
      if ((s >> c) & 1U) keep = x[static_cast<std::size_t>(c)] == xs[j++];
    }
    if (keep) out.push_back(f[i]);
  }
  return FunctionTable(Domain(d.space(), d.n() - std::popcount(s)), out);
}

/// Every assignment of `size` symbols from [k], first entry fastest.
inline std::vector<std::vector<int>> assignments(int k, int size) {
  std::vector<std::vector<int>> out;
  std::size_t total = 1;
  for (int i = 0; i < size; ++i) total *= static_cast<std::size_t>(k);
  for (std::size_t i = 0; i < total; ++i) out.push_back(decode(i, k, size));
  return out;
}

/// Minimal r with ||f_{S->x}||_p <= r^{|S|} gamma over 1 <= |S| <= depth.
inline double restriction_r(const FunctionTable& f, double p, int depth, double gamma) {
  double r = 0.0;
  for (std::uint32_t s = 1; s <= full_mask(f.domain().n()); ++s) {
    const int size = std::popcount(s);
    if (size > depth) continue;
    for (const auto& x : assignments(f.domain().k(), size)) {
      r = std::max(r, std::pow(lp(restrict(f, s, x), p) / gamma, 1.0 / size));
    }
  }
  return r;
}

/// Explicit 2^n x 2^n pseudo-disjointness matrix applied to f.
inline FunctionTable friedgut(const FunctionTable& f) {
  const Domain& d = f.domain();
  const double p = d.space().weight(1);
  const double a1[2][2] = {{(1 - 2 * p) / (1 - p), p / (1 - p)}, {1.0, 0.0}};
  std::vector<double> out(f.size());
  for (std::size_t x = 0; x < f.size(); ++x) {
    long double s = 0.0L;
    for (std::size_t y = 0; y < f.size(); ++y) {
      double entry = 1.0;
      for (int i = 0; i < d.n(); ++i) entry *= a1[(x >> i) & 1U][(y >> i) & 1U];
      s += entry * f[y];
    }
    out[x] = static_cast<double>(s);
  }
  return FunctionTable(d, out);
}

/// Pairwise scan over members.
inline bool cross_intersecting(const FunctionTable& f, const FunctionTable& g) {
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (f[a] != 0.0 && g[b] != 0.0 && (a & b) == 0) return false;
    }
  }
  return true;
}

inline bool upward_closed(const FunctionTable& f) {
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (int i = 0; i < f.domain().n(); ++i) {
      if (f[a] != 0.0 && f[a | (std::size_t{1} << i)] == 0.0) return false;
    }
  }
  return true;
}

}  // namespace oracle
