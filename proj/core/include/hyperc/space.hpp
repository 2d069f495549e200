#pragma once

// Finite product spaces (Omega^n, mu^n) and dense real-valued tables on them.
//
// Coordinates are 0-based throughout the API. Tables are stored in mixed-radix
// order with coordinate 0 varying fastest: point (x_0, ..., x_{n-1}) lives at
// index sum_i x_i * k^i. This order is part of the on-disk format and must not
// change.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace hyperc {

/// A finite probability space (Omega, mu) with Omega = {0, ..., k-1}.
class ProductSpace {
 public:
  /// Validates k >= 2, all weights > 0, and |sum - 1| <= 1e-12.
  explicit ProductSpace(std::vector<double> weights);

  static ProductSpace uniform(int k);
  /// The p-biased space on {0,1}: mu(0) = 1-p, mu(1) = p.
  static ProductSpace biased(double p);

  int k() const noexcept { return static_cast<int>(weights_.size()); }
  double weight(int omega) const { return weights_.at(static_cast<std::size_t>(omega)); }
  std::span<const double> weights() const noexcept { return weights_; }

  bool is_uniform(double tol = 1e-15) const noexcept;
  /// mu(1) for k == 2; throws UnsupportedError otherwise.
  double bias() const;

  friend bool operator==(const ProductSpace&, const ProductSpace&) = default;

 private:
  std::vector<double> weights_;
};

/// A subset S of the coordinate set [n], as a bitmask (bit i <=> i in S).
class SubsetMask {
 public:
  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint32_t bits) : bits_(bits) {}

  static constexpr SubsetMask empty_set() { return SubsetMask{}; }
  static SubsetMask full(int n);
  static SubsetMask singleton(int i);
  static SubsetMask of(std::initializer_list<int> coords);

  constexpr std::uint32_t bits() const noexcept { return bits_; }
  int size() const noexcept;
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr bool contains(int i) const noexcept { return (bits_ >> i) & 1U; }
  constexpr bool is_subset_of(SubsetMask other) const noexcept {
    return (bits_ & ~other.bits_) == 0;
  }
  SubsetMask complement(int n) const;
  constexpr SubsetMask operator|(SubsetMask o) const noexcept { return SubsetMask{bits_ | o.bits_}; }
  constexpr SubsetMask operator&(SubsetMask o) const noexcept { return SubsetMask{bits_ & o.bits_}; }
  constexpr SubsetMask without(SubsetMask o) const noexcept { return SubsetMask{bits_ & ~o.bits_}; }

  /// Members in increasing order.
  std::vector<int> coordinates() const;
  /// True when only the low n bits may be set.
  bool fits(int n) const noexcept;

  friend constexpr auto operator<=>(SubsetMask, SubsetMask) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Omega^n for one fixed Omega. n = 0 is the one-point space (restrictions to
/// the full coordinate set land there).
class Domain {
 public:
  static constexpr std::size_t kMaxPoints = std::size_t{1} << 24;

  Domain(ProductSpace space, int n);

  const ProductSpace& space() const noexcept { return space_; }
  int n() const noexcept { return n_; }
  int k() const noexcept { return space_.k(); }
  std::size_t size() const noexcept { return size_; }
  std::size_t stride(int i) const { return strides_.at(static_cast<std::size_t>(i)); }
  SubsetMask all() const { return SubsetMask::full(n_); }
  /// The same Omega with a different coordinate count.
  Domain with_n(int n) const { return Domain(space_, n); }

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.n_ == b.n_ && a.space_ == b.space_;
  }

 private:
  ProductSpace space_;
  int n_;
  std::size_t size_;
  std::vector<std::size_t> strides_;
};

/// A full point of Omega^n.
using Point = std::vector<int>;
/// Values for the coordinates of some S, listed in increasing coordinate order.
using Assignment = std::vector<int>;

/// Mixed-radix index of a point; throws DomainError on a bad coordinate.
std::size_t point_index(const Domain& domain, std::span<const int> coords);
Point unindex(const Domain& domain, std::size_t index);

/// mu^S(x) for an assignment x on |x| coordinates.
double assignment_weight(const ProductSpace& space, std::span<const int> x);

/// Calls fn(const Assignment&) for every x in Omega^S (|S| = size), first
/// entry varying fastest.
template <class Fn>
void for_each_assignment(int k, int size, Fn&& fn) {
  Assignment x(static_cast<std::size_t>(size), 0);
  while (true) {
    fn(static_cast<const Assignment&>(x));
    int i = 0;
    while (i < size && ++x[static_cast<std::size_t>(i)] == k) {
      x[static_cast<std::size_t>(i)] = 0;
      ++i;
    }
    if (i == size) break;
  }
}

/// A dense real-valued function on a Domain.
class FunctionTable {
 public:
  /// Throws ShapeError if values.size() != k^n and DomainError on non-finite entries.
  FunctionTable(Domain domain, std::vector<double> values);

  static FunctionTable constant(const Domain& domain, double c);
  static FunctionTable zeros(const Domain& domain) { return constant(domain, 0.0); }

  /// Tabulates fn(const Point&) over every point.
  template <class Fn>
  static FunctionTable tabulate(const Domain& domain, Fn&& fn) {
    std::vector<double> v(domain.size());
    Point x(static_cast<std::size_t>(domain.n()), 0);
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
      v[idx] = fn(static_cast<const Point&>(x));
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (++x[i] < domain.k()) break;
        x[i] = 0;
      }
    }
    return FunctionTable(domain, std::move(v));
  }

  const Domain& domain() const noexcept { return domain_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(std::span<const int> point) const { return values_[point_index(domain_, point)]; }

  /// True when every entry is 0 or 1.
  bool is_boolean() const noexcept;

  FunctionTable operator+(const FunctionTable& o) const;
  FunctionTable operator-(const FunctionTable& o) const;
  FunctionTable operator*(double s) const;

 private:
  Domain domain_;
  std::vector<double> values_;
};

double expectation(const FunctionTable& f);
/// E|f|^p.
double lp_norm_pow(const FunctionTable& f, double p);
/// (E|f|^p)^{1/p}; throws DomainError for p < 1.
double lp_norm(const FunctionTable& f, double p);
/// E[f g]; throws ShapeError on domain mismatch.
double inner_product(const FunctionTable& f, const FunctionTable& g);
/// max_x |f(x) - g(x)|.
double max_abs_difference(const FunctionTable& f, const FunctionTable& g);

/// f_{S -> x}: fixes the coordinates of S to x and returns a table on the
/// remaining n - |S| coordinates (in their original relative order).
FunctionTable restrict(const FunctionTable& f, SubsetMask s, std::span<const int> x);

}  // namespace hyperc
