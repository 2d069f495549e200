#include "hyperc/operators.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "hyperc/errors.hpp"
#include "hyperc/numeric.hpp"
#include "tensor_ops.hpp"

namespace hyperc {

namespace {

void require_mask(const Domain& d, SubsetMask s) {
  if (!s.fits(d.n())) {
    throw DomainError("subset mask " + std::to_string(s.bits()) + " has bits beyond n = " +
                      std::to_string(d.n()));
  }
}

std::vector<double> copy_values(const FunctionTable& f) {
  return {f.values().begin(), f.values().end()};
}

FunctionTable apply_map(const FunctionTable& f, SubsetMask s, const detail::CoordMatrix& m) {
  require_mask(f.domain(), s);
  return FunctionTable(f.domain(), detail::apply_on_set(copy_values(f), f.domain(), s, m));
}

void add_into(std::vector<double>& acc, std::span<const double> v, double w) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * v[i];
}

// Splits g on coordinate i into E_i g and L_i g = g - E_i g.
void split_coordinate(const Domain& d, int i, const detail::CoordMatrix& avg,
                      const std::vector<double>& g, std::vector<double>& e_part,
                      std::vector<double>& l_part) {
  e_part.resize(g.size());
  detail::apply_along_axis(g, e_part, static_cast<std::size_t>(d.k()), d.stride(i), avg);
  l_part.resize(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) l_part[j] = g[j] - e_part[j];
}

constexpr std::size_t kMaxDecompositionEntries = std::size_t{1} << 26;

void require_decomposable(const Domain& d, const char* what) {
  if (d.n() > 26 || (std::size_t{1} << d.n()) > kMaxDecompositionEntries / d.size()) {
    throw ResourceError(std::string(what) + ": 2^n * k^n exceeds the 2^26 entry cap");
  }
}

}  // namespace

FunctionTable average_E(const FunctionTable& f, SubsetMask s) {
  return apply_map(f, s, detail::averaging_matrix(f.domain().space()));
}

FunctionTable laplacian_L(const FunctionTable& f, SubsetMask s) {
  return apply_map(f, s, detail::identity_plus_average(f.domain().space(), 1.0, -1.0));
}

EfronSteinDecomposition::EfronSteinDecomposition(Domain domain, std::vector<FunctionTable> parts)
    : domain_(std::move(domain)), parts_(std::move(parts)) {
  if (parts_.size() != (std::size_t{1} << domain_.n())) {
    throw ShapeError("decomposition needs exactly 2^n parts");
  }
  for (const auto& p : parts_) {
    if (!(p.domain() == domain_)) throw ShapeError("decomposition part on a different domain");
  }
}

FunctionTable EfronSteinDecomposition::level(int d) const {
  if (d < 0 || d > domain_.n()) throw DomainError("level out of range");
  std::vector<double> acc(domain_.size(), 0.0);
  for (std::size_t m = 0; m < parts_.size(); ++m) {
    if (SubsetMask(static_cast<std::uint32_t>(m)).size() == d) add_into(acc, parts_[m].values(), 1.0);
  }
  return FunctionTable(domain_, std::move(acc));
}

FunctionTable EfronSteinDecomposition::sum() const {
  std::vector<double> acc(domain_.size(), 0.0);
  for (const auto& p : parts_) add_into(acc, p.values(), 1.0);
  return FunctionTable(domain_, std::move(acc));
}

EfronSteinDecomposition efron_stein(const FunctionTable& f) {
  const Domain& d = f.domain();
  require_decomposable(d, "efron_stein");
  const auto avg = detail::averaging_matrix(d.space());
  // After processing coordinates 0..i-1, parts[m] = E_{[i] \ m} L_m f.
  std::vector<std::vector<double>> parts;
  parts.push_back(copy_values(f));
  for (int i = 0; i < d.n(); ++i) {
    const std::size_t count = parts.size();
    parts.resize(2 * count);
    for (std::size_t m = 0; m < count; ++m) {
      std::vector<double> e_part;
      split_coordinate(d, i, avg, parts[m], e_part, parts[m + count]);
      parts[m].swap(e_part);
    }
  }
  std::vector<FunctionTable> tables;
  tables.reserve(parts.size());
  for (auto& p : parts) tables.emplace_back(d, std::move(p));
  return EfronSteinDecomposition(d, std::move(tables));
}

namespace {

// Depth-first walk over subsets in which coordinate i is either averaged
// (i not in T) or Laplaced (i in T); visit(T, g) receives each leaf f^{=T}.
// Branches that cannot reach an admissible |T| are pruned.
template <class Admit, class Visit>
void walk_parts(const Domain& d, const detail::CoordMatrix& avg, int i, std::uint32_t mask,
                const std::vector<double>& g, Admit&& admit, Visit&& visit) {
  const int taken = std::popcount(mask);
  if (!admit(taken, d.n() - i)) return;
  if (i == d.n()) {
    visit(mask, g);
    return;
  }
  std::vector<double> e_part;
  std::vector<double> l_part;
  split_coordinate(d, i, avg, g, e_part, l_part);
  walk_parts(d, avg, i + 1, mask, e_part, admit, visit);
  e_part = {};
  walk_parts(d, avg, i + 1, mask | (1U << i), l_part, admit, visit);
}

}  // namespace

FunctionTable level_part(const FunctionTable& f, int d) {
  const Domain& dom = f.domain();
  if (d < 0 || d > dom.n()) {
    throw DomainError("level " + std::to_string(d) + " outside [0, " + std::to_string(dom.n()) + "]");
  }
  std::vector<double> acc(dom.size(), 0.0);
  walk_parts(
      dom, detail::averaging_matrix(dom.space()), 0, 0U, copy_values(f),
      [d](int taken, int remaining) { return taken <= d && taken + remaining >= d; },
      [&](std::uint32_t, const std::vector<double>& g) { add_into(acc, g, 1.0); });
  return FunctionTable(dom, std::move(acc));
}

std::vector<double> level_weights(const FunctionTable& f) {
  const Domain& dom = f.domain();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(dom.n()) + 1);
  for (int d = 0; d <= dom.n(); ++d) out.push_back(lp_norm_pow(level_part(f, d), 2.0));
  return out;
}

FunctionTable noise_resample(const FunctionTable& f, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("noise rate must lie in [0, 1]");
  return apply_map(f, f.domain().all(),
                   detail::identity_plus_average(f.domain().space(), rho, 1.0 - rho));
}

FunctionTable noise_spectral(const FunctionTable& f, double rho) {
  if (!std::isfinite(rho)) throw DomainError("noise rate must be finite");
  const Domain& dom = f.domain();
  require_decomposable(dom, "noise_spectral");
  std::vector<double> acc(dom.size(), 0.0);
  walk_parts(
      dom, detail::averaging_matrix(dom.space()), 0, 0U, copy_values(f),
      [](int, int) { return true; },
      [&](std::uint32_t mask, const std::vector<double>& g) {
        add_into(acc, g, pow0(rho, std::popcount(mask)));
      });
  return FunctionTable(dom, std::move(acc));
}

FunctionTable derivative_D(const FunctionTable& f, SubsetMask s, std::span<const int> x) {
  return restrict(laplacian_L(f, s), s, x);
}

namespace {

double require_binary_bias(const Domain& d) {
  if (d.k() != 2) throw UnsupportedError("Fourier characters are only defined for k = 2");
  return d.space().bias();
}

}  // namespace

FunctionTable character(const Domain& domain, SubsetMask s) {
  const double p = require_binary_bias(domain);
  require_mask(domain, s);
  const double sd = std::sqrt(p * (1.0 - p));
  const double lo = -p / sd;
  const double hi = (1.0 - p) / sd;
  return FunctionTable::tabulate(domain, [&](const Point& x) {
    double v = 1.0;
    for (int i : s.coordinates()) v *= x[static_cast<std::size_t>(i)] == 1 ? hi : lo;
    return v;
  });
}

FourierSpectrum fourier_spectrum(const FunctionTable& f) {
  const Domain& d = f.domain();
  const double p = require_binary_bias(d);
  const double sd = std::sqrt(p * (1.0 - p));
  // Row a of the per-coordinate transform is mu(b) chi_a(b), chi_0 = 1.
  const detail::CoordMatrix m{1.0 - p, p, (1.0 - p) * (-p / sd), p * ((1.0 - p) / sd)};
  FourierSpectrum out;
  out.p = p;
  out.n = d.n();
  out.coeffs = detail::apply_on_set(copy_values(f), d, d.all(), m);
  return out;
}

FourierSpectrum fourier_spectrum(const FunctionTable& f, double p) {
  const double bias = require_binary_bias(f.domain());
  if (std::abs(bias - p) > 1e-12) {
    throw DomainError("table bias " + std::to_string(bias) + " does not match p = " + std::to_string(p));
  }
  return fourier_spectrum(f);
}

FunctionTable synthesize(const FourierSpectrum& spectrum, const Domain& domain) {
  const double p = require_binary_bias(domain);
  if (domain.n() != spectrum.n || std::abs(p - spectrum.p) > 1e-12) {
    throw ShapeError("spectrum does not match the target domain");
  }
  const double sd = std::sqrt(p * (1.0 - p));
  // Row b: value of (chi_0, chi_1) at point b.
  const detail::CoordMatrix m{1.0, -p / sd, 1.0, (1.0 - p) / sd};
  return FunctionTable(domain, detail::apply_on_set(spectrum.coeffs, domain, domain.all(), m));
}

}  // namespace hyperc
