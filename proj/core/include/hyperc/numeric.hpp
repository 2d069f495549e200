#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace hyperc {

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Pairwise (tree) summation in a fixed order; reproducible for a given input.
double pairwise_sum(std::span<const double> xs) noexcept;

/// |x|^p with the conventions 0^0 = 1 and p = 2 computed as x*x.
inline double abs_pow(double x, double p) {
  if (p == 2.0) return x * x;
  if (p == 1.0) return std::abs(x);
  return std::pow(std::abs(x), p);
}

/// base^exponent with (anything)^0 = 1, including 0^0 and inf^0.
inline double pow0(double base, double exponent) {
  if (exponent == 0.0) return 1.0;
  return std::pow(base, exponent);
}

}  // namespace hyperc
