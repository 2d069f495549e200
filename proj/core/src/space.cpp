#include "hyperc/space.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "hyperc/errors.hpp"
#include "hyperc/numeric.hpp"

namespace hyperc {

double pairwise_sum(std::span<const double> xs) noexcept {
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

ProductSpace::ProductSpace(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.size() < 2) throw DomainError("ProductSpace needs at least two elements");
  CompensatedSum total;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw DomainError("ProductSpace weights must be strictly positive and finite");
    }
    total += w;
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw DomainError("ProductSpace weights must sum to 1 (got " + std::to_string(total.value()) + ")");
  }
}

ProductSpace ProductSpace::uniform(int k) {
  if (k < 2) throw DomainError("uniform space needs k >= 2");
  return ProductSpace(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k));
}

ProductSpace ProductSpace::biased(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("bias p must lie in (0, 1)");
  return ProductSpace({1.0 - p, p});
}

bool ProductSpace::is_uniform(double tol) const noexcept {
  const double u = 1.0 / static_cast<double>(weights_.size());
  for (double w : weights_) {
    if (std::abs(w - u) > tol) return false;
  }
  return true;
}

double ProductSpace::bias() const {
  if (k() != 2) throw UnsupportedError("bias is only defined for k = 2");
  return weights_[1];
}

SubsetMask SubsetMask::full(int n) {
  if (n < 0 || n > 31) throw DomainError("subset mask supports 0 <= n <= 31");
  return SubsetMask{n == 0 ? 0U : (0xFFFFFFFFU >> (32 - n))};
}

SubsetMask SubsetMask::singleton(int i) {
  if (i < 0 || i > 31) throw DomainError("coordinate out of mask range");
  return SubsetMask{1U << i};
}

SubsetMask SubsetMask::of(std::initializer_list<int> coords) {
  SubsetMask m;
  for (int i : coords) m = m | singleton(i);
  return m;
}

int SubsetMask::size() const noexcept { return std::popcount(bits_); }

SubsetMask SubsetMask::complement(int n) const { return full(n).without(*this); }

std::vector<int> SubsetMask::coordinates() const {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

bool SubsetMask::fits(int n) const noexcept {
  return n >= 32 || (bits_ >> n) == 0;
}

Domain::Domain(ProductSpace space, int n) : space_(std::move(space)), n_(n), size_(1) {
  if (n < 0) throw DomainError("coordinate count must be non-negative");
  strides_.reserve(static_cast<std::size_t>(n));
  const auto k = static_cast<std::size_t>(space_.k());
  for (int i = 0; i < n; ++i) {
    strides_.push_back(size_);
    if (size_ > kMaxPoints / k) {
      throw ResourceError("k^n exceeds the 2^24 point cap (k=" + std::to_string(k) +
                          ", n=" + std::to_string(n) + ")");
    }
    size_ *= k;
  }
}

std::size_t point_index(const Domain& domain, std::span<const int> coords) {
  if (static_cast<int>(coords.size()) != domain.n()) {
    throw DomainError("point has " + std::to_string(coords.size()) + " coordinates, expected " +
                      std::to_string(domain.n()));
  }
  std::size_t idx = 0;
  for (int i = domain.n() - 1; i >= 0; --i) {
    const int c = coords[static_cast<std::size_t>(i)];
    if (c < 0 || c >= domain.k()) {
      throw DomainError("coordinate " + std::to_string(i) + " = " + std::to_string(c) +
                        " out of range [0, " + std::to_string(domain.k()) + ")");
    }
    idx = idx * static_cast<std::size_t>(domain.k()) + static_cast<std::size_t>(c);
  }
  return idx;
}

Point unindex(const Domain& domain, std::size_t index) {
  if (index >= domain.size()) throw DomainError("table index out of range");
  Point x(static_cast<std::size_t>(domain.n()));
  const auto k = static_cast<std::size_t>(domain.k());
  for (auto& c : x) {
    c = static_cast<int>(index % k);
    index /= k;
  }
  return x;
}

double assignment_weight(const ProductSpace& space, std::span<const int> x) {
  double w = 1.0;
  for (int c : x) w *= space.weight(c);
  return w;
}

FunctionTable::FunctionTable(Domain domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_.size()) {
    throw ShapeError("table has " + std::to_string(values_.size()) + " entries, expected k^n = " +
                     std::to_string(domain_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("table entries must be finite");
  }
}

FunctionTable FunctionTable::constant(const Domain& domain, double c) {
  return FunctionTable(domain, std::vector<double>(domain.size(), c));
}

bool FunctionTable::is_boolean() const noexcept {
  for (double v : values_) {
    if (v != 0.0 && v != 1.0) return false;
  }
  return true;
}

namespace {

void require_same_domain(const FunctionTable& f, const FunctionTable& g) {
  if (!(f.domain() == g.domain())) throw ShapeError("tables live on different domains");
}

// mu^n(x) for every index, built coordinate by coordinate.
std::vector<double> point_weights(const Domain& d) {
  std::vector<double> w(d.size(), 1.0);
  const auto k = static_cast<std::size_t>(d.k());
  for (int i = 0; i < d.n(); ++i) {
    const std::size_t stride = d.stride(i);
    for (std::size_t idx = 0; idx < w.size(); ++idx) {
      w[idx] *= d.space().weight(static_cast<int>((idx / stride) % k));
    }
  }
  return w;
}

template <class Fn>
double weighted_sum(const Domain& d, Fn&& term) {
  const std::vector<double> w = point_weights(d);
  CompensatedSum acc;
  for (std::size_t idx = 0; idx < w.size(); ++idx) acc += w[idx] * term(idx);
  return acc.value();
}

}  // namespace

FunctionTable FunctionTable::operator+(const FunctionTable& o) const {
  require_same_domain(*this, o);
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.values_[i];
  return FunctionTable(domain_, std::move(v));
}

FunctionTable FunctionTable::operator-(const FunctionTable& o) const {
  require_same_domain(*this, o);
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.values_[i];
  return FunctionTable(domain_, std::move(v));
}

FunctionTable FunctionTable::operator*(double s) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= s;
  return FunctionTable(domain_, std::move(v));
}

double expectation(const FunctionTable& f) {
  return weighted_sum(f.domain(), [&](std::size_t i) { return f[i]; });
}

double lp_norm_pow(const FunctionTable& f, double p) {
  return weighted_sum(f.domain(), [&](std::size_t i) { return abs_pow(f[i], p); });
}

double lp_norm(const FunctionTable& f, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm requires p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
  }
  const double s = lp_norm_pow(f, p);
  return p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p);
}

double inner_product(const FunctionTable& f, const FunctionTable& g) {
  require_same_domain(f, g);
  return weighted_sum(f.domain(), [&](std::size_t i) { return f[i] * g[i]; });
}

double max_abs_difference(const FunctionTable& f, const FunctionTable& g) {
  require_same_domain(f, g);
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

FunctionTable restrict(const FunctionTable& f, SubsetMask s, std::span<const int> x) {
  const Domain& d = f.domain();
  if (!s.fits(d.n())) throw DomainError("restriction set exceeds the coordinate range");
  const std::vector<int> fixed = s.coordinates();
  if (x.size() != fixed.size()) {
    throw DomainError("restriction assigns " + std::to_string(x.size()) + " of " +
                      std::to_string(fixed.size()) + " coordinates");
  }
  std::size_t base = 0;
  for (std::size_t j = 0; j < fixed.size(); ++j) {
    if (x[j] < 0 || x[j] >= d.k()) throw DomainError("restriction value out of range");
    base += static_cast<std::size_t>(x[j]) * d.stride(fixed[j]);
  }
  const Domain out_domain = d.with_n(d.n() - s.size());
  const std::vector<int> free = s.complement(d.n()).coordinates();
  std::vector<double> out(out_domain.size());
  const auto k = static_cast<std::size_t>(d.k());
  for (std::size_t j = 0; j < out.size(); ++j) {
    std::size_t src = base;
    std::size_t rem = j;
    for (int c : free) {
      src += (rem % k) * d.stride(c);
      rem /= k;
    }
    out[j] = f[src];
  }
  return FunctionTable(out_domain, std::move(out));
}

}  // namespace hyperc
