#pragma once

// Gaussian encodings G_S: every coordinate of S is replaced by k-1 independent
// standard Gaussians, one per non-constant vector of an orthonormal basis of
// L^2(Omega, mu). The encoding preserves 2-norms but not q-norms, so the basis
// must be pinned for results to be reproducible; canonical_basis() is that pin.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hyperc/report.hpp"
#include "hyperc/space.hpp"

namespace hyperc {

/// {1, f_1, ..., f_{k-1}}, orthonormal in L^2(Omega, mu). Index 0 is the constant.
class OrthonormalBasis {
 public:
  /// vectors: k-1 rows of length k. Throws DomainError if not orthonormal to 1e-12.
  OrthonormalBasis(ProductSpace space, std::vector<std::vector<double>> vectors);

  const ProductSpace& space() const noexcept { return space_; }
  int k() const noexcept { return space_.k(); }
  /// f_j(omega), with f_0 = 1.
  double value(int j, int omega) const;
  const std::vector<std::vector<double>>& vectors() const noexcept { return vectors_; }

 private:
  ProductSpace space_;
  std::vector<std::vector<double>> vectors_;
};

/// Gram-Schmidt applied to 1_{omega=j} - mu(j), j = 0..k-2, in element order.
OrthonormalBasis canonical_basis(const ProductSpace& space);

/// G_S f: coefficients indexed like a table on Omega^n, except that on an
/// encoded coordinate the digit is a basis index (0 = constant) instead of a point.
class MixedGaussianFunction {
 public:
  MixedGaussianFunction(Domain domain, SubsetMask encoded, std::vector<double> coeffs);

  const Domain& domain() const noexcept { return domain_; }
  SubsetMask encoded_set() const noexcept { return encoded_; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }
  /// (k-1)|S|.
  int gaussian_count() const noexcept;

  /// Value at Gaussian variables z (grouped by encoded coordinate in increasing
  /// order, k-1 per coordinate) and discrete point y on S^c (increasing order).
  double evaluate(std::span<const double> z, std::span<const int> y) const;

  /// Plugs z_j := f_j(x_i) into every encoded coordinate; recovers f(x).
  double decode_at(std::span<const int> x, const OrthonormalBasis& basis) const;

 private:
  Domain domain_;
  SubsetMask encoded_;
  std::vector<double> coeffs_;
};

/// Throws ShapeError when the basis belongs to a different space.
MixedGaussianFunction encode_G(const FunctionTable& f, SubsetMask s, const OrthonormalBasis& basis);
MixedGaussianFunction encode_G(const FunctionTable& f, SubsetMask s);

enum class NormMethod { automatic, exact_quadrature, monte_carlo };

const char* to_string(NormMethod m) noexcept;

struct NormEstimate {
  /// ||g||_q.
  double value = 0.0;
  /// E|g|^q.
  double moment = 0.0;
  NormMethod method = NormMethod::exact_quadrature;
  /// 99% confidence half-width on value; 0 for exact quadrature.
  double ci_halfwidth = 0.0;
  /// 99% confidence half-width on moment.
  double moment_halfwidth = 0.0;
  std::uint64_t sample_count = 0;
};

struct MonteCarloOptions {
  std::uint64_t seed = 42;
  std::uint64_t samples = 2'000'000;
};

/// Quadrature is exact (up to rounding) for even integer q with at most
/// kMaxExactVariables Gaussians and kMaxNodes nodes per variable; outside that
/// range the automatic and exact methods fall back to Monte Carlo.
/// Throws UnsupportedError if exact is requested for a q that is not an even integer.
inline constexpr int kMaxExactVariables = 10;
inline constexpr int kMaxNodes = 6;

NormEstimate gaussian_qnorm(const MixedGaussianFunction& g, double q,
                            NormMethod method = NormMethod::automatic,
                            const MonteCarloOptions& mc = {});

/// Probabilists' Gauss-Hermite rule (weight e^{-z^2/2}/sqrt(2 pi)); weights sum to 1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(int count);

/// beta = rho (1 + 2(q-2)/log(1/rho)), with beta(0) = 0.
double beta_rate(double rho, double q);

/// ||T_rho f||_q^q <= sum_S beta^{q|S|} ||(L_S o G_{S^c}) f||_q^q for rho <= 1/3
/// and even q >= 2. Throws DomainError outside that range.
InequalityReport check_tensorization(const FunctionTable& f, double rho, double q,
                                     const CheckOptions& opts = {});

/// A finitely supported real random variable.
using DiscreteDistribution = std::vector<std::pair<double, double>>;  // (value, probability)

/// ||1 + rho d X||_q^q <= ||1 + d Z||_q^q + beta^q ||d X||_q^q for standardized X.
/// Throws DomainError unless X has mean 0 and variance 1 (1e-10), rho in [0, 1/3], q >= 2.
InequalityReport check_one_var_bound(const DiscreteDistribution& x, double d, double rho, double q,
                                     const CheckOptions& opts = {});

/// The standardized two-point variable of a p-biased bit.
DiscreteDistribution standardized_bit(double p);

/// E|1 + d Z|^q for Z standard normal: quadrature for even q, adaptive
/// Gauss-Kronrod split at the kink otherwise.
double gaussian_affine_moment(double d, double q);

}  // namespace hyperc
