#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "corpus.hpp"
#include "hyperc/errors.hpp"
#include "hyperc/gaussian.hpp"
#include "hyperc/generators.hpp"
#include "hyperc/operators.hpp"
#include "oracles.hpp"

using namespace hyperc;

namespace {

// E|1 + d Z|^q by composite Simpson on [-14, 14], split at the kink.
double simpson_affine_moment(double d, double q) {
  const auto integrand = [&](double z) {
    return std::pow(std::abs(1.0 + d * z), q) * std::exp(-z * z / 2.0) / std::sqrt(2.0 * std::numbers::pi);
  };
  const auto simpson = [&](double a, double b) {
    const int steps = 200000;
    const double h = (b - a) / steps;
    double s = integrand(a) + integrand(b);
    for (int i = 1; i < steps; ++i) s += integrand(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
  };
  if (d == 0.0) return 1.0;
  const double kink = -1.0 / d;
  if (kink <= -14.0 || kink >= 14.0) return simpson(-14.0, 14.0);
  return simpson(-14.0, kink) + simpson(kink, 14.0);
}

}  // namespace

TEST(CanonicalBasis, IsOrthonormal) {
  for (const ProductSpace& sp : {ProductSpace::uniform(2), ProductSpace::biased(0.1), ProductSpace::uniform(4),
                                 ProductSpace({0.2, 0.3, 0.5})}) {
    const OrthonormalBasis b = canonical_basis(sp);
    for (int i = 0; i < sp.k(); ++i) {
      for (int j = 0; j < sp.k(); ++j) {
        double s = 0.0;
        for (int w = 0; w < sp.k(); ++w) s += sp.weight(w) * b.value(i, w) * b.value(j, w);
        EXPECT_NEAR(s, i == j ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

TEST(CanonicalBasis, UniformBitIsPlusMinusOne) {
  const OrthonormalBasis b = canonical_basis(ProductSpace::uniform(2));
  EXPECT_NEAR(b.value(1, 0), 1.0, 1e-15);
  EXPECT_NEAR(b.value(1, 1), -1.0, 1e-15);
  EXPECT_THROW(OrthonormalBasis(ProductSpace::uniform(2), {{1.0, 1.0}}), DomainError);
}

TEST(EncodeG, PreservesTwoNormAndDecodes) {
  for (int k : {2, 3}) {
    for (const auto& f : corpus::random_tables(3, k, 3, 321)) {
      const OrthonormalBasis basis = canonical_basis(f.domain().space());
      for (std::uint32_t s = 0; s < 8; ++s) {
        const MixedGaussianFunction g = encode_G(f, SubsetMask(s), basis);
        EXPECT_EQ(g.gaussian_count(), (k - 1) * std::popcount(s));
        const NormEstimate two = gaussian_qnorm(g, 2.0, NormMethod::exact_quadrature);
        EXPECT_NEAR(two.value, lp_norm(f, 2.0), 1e-10);
        for (std::size_t i = 0; i < f.size(); ++i) {
          EXPECT_NEAR(g.decode_at(unindex(f.domain(), i), basis), f[i], 1e-10);
        }
      }
    }
  }
}

TEST(EncodeG, EmptySetKeepsTable) {
  const FunctionTable f = corpus::random_tables(2, 3, 1).front();
  const MixedGaussianFunction g = encode_G(f, SubsetMask{});
  ASSERT_EQ(g.coeffs().size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(g.coeffs()[i], f[i]);
  for (double q : {2.0, 4.0}) {
    EXPECT_NEAR(gaussian_qnorm(g, q).value, lp_norm(f, q), 1e-12);
  }
}

TEST(EncodeG, RejectsForeignBasis) {
  const FunctionTable f = corpus::random_tables(2, 2, 1).front();
  EXPECT_THROW(encode_G(f, SubsetMask::of({0}), canonical_basis(ProductSpace::biased(0.2))), ShapeError);
}

TEST(GaussianQNorm, OnePlusZ) {
  // f = 1 + chi on a uniform bit encodes to 1 + Z, and E(1 + Z)^4 = 10.
  const FunctionTable f(Domain(ProductSpace::uniform(2), 1), {2.0, 0.0});
  const MixedGaussianFunction g = encode_G(f, SubsetMask::of({0}));
  const NormEstimate est = gaussian_qnorm(g, 4.0);
  EXPECT_EQ(est.method, NormMethod::exact_quadrature);
  EXPECT_NEAR(est.moment, 10.0, 1e-12);
  EXPECT_NEAR(est.value, std::pow(10.0, 0.25), 1e-12);
  EXPECT_NEAR(gaussian_qnorm(g, 6.0).moment, 1.0 + 15.0 + 45.0 + 15.0, 1e-10);
  EXPECT_THROW(gaussian_qnorm(g, 3.0, NormMethod::exact_quadrature), UnsupportedError);
}

TEST(GaussHermite, IntegratesMomentsExactly) {
  for (int count = 1; count <= 6; ++count) {
    const GaussHermiteRule rule = gauss_hermite(count);
    double sum_w = 0.0;
    for (double w : rule.weights) sum_w += w;
    EXPECT_NEAR(sum_w, 1.0, 1e-13);
    // Exact for polynomials of degree <= 2 count - 1.
    double double_factorial = 1.0;
    for (int m = 0; m <= 2 * count - 1; ++m) {
      double moment = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) moment += rule.weights[i] * std::pow(rule.nodes[i], m);
      double want = 0.0;
      if (m % 2 == 0) {
        want = double_factorial;
        double_factorial *= m + 1;
      }
      EXPECT_NEAR(moment, want, 1e-10 * std::max(1.0, want)) << "count " << count << " m " << m;
    }
  }
}

TEST(GaussianQNorm, MonteCarloIntervalCoversExact) {
  const FunctionTable f = random_table(Domain(ProductSpace::uniform(3), 2), 17, RandomKind::uniform);
  const MixedGaussianFunction g = encode_G(f, SubsetMask::full(2));
  const double exact = gaussian_qnorm(g, 4.0, NormMethod::exact_quadrature).value;
  int covered = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const NormEstimate est = gaussian_qnorm(g, 4.0, NormMethod::monte_carlo, {seed, 20000});
    EXPECT_EQ(est.method, NormMethod::monte_carlo);
    EXPECT_GT(est.ci_halfwidth, 0.0);
    if (std::abs(est.value - exact) <= est.ci_halfwidth) ++covered;
  }
  EXPECT_GE(covered, 17);
}

TEST(GaussianQNorm, MonteCarloIsSeedDeterministic) {
  const FunctionTable f = corpus::random_tables(2, 2, 1).front();
  const MixedGaussianFunction g = encode_G(f, SubsetMask::of({1}));
  const auto a = gaussian_qnorm(g, 3.0, NormMethod::monte_carlo, {9, 5000});
  const auto b = gaussian_qnorm(g, 3.0, NormMethod::monte_carlo, {9, 5000});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.sample_count, 5000U);
}

TEST(BetaRate, Values) {
  EXPECT_EQ(beta_rate(0.0, 4.0), 0.0);
  EXPECT_NEAR(beta_rate(1.0 / 3.0, 2.0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(beta_rate(1.0 / 3.0, 4.0), (1.0 + 4.0 / std::log(3.0)) / 3.0, 1e-15);
}

TEST(GaussianAffineMoment, EvenAndOddExponents) {
  EXPECT_NEAR(gaussian_affine_moment(1.0, 4.0), 10.0, 1e-12);
  EXPECT_NEAR(gaussian_affine_moment(0.0, 3.0), 1.0, 1e-12);
  for (double d : {0.25, 1.0, 4.0}) {
    for (double q : {2.5, 3.0, 5.0}) {
      EXPECT_NEAR(gaussian_affine_moment(d, q), simpson_affine_moment(d, q),
                  1e-7 * simpson_affine_moment(d, q));
    }
  }
}

TEST(OneVarBound, RademacherExample) {
  const InequalityReport r = check_one_var_bound(standardized_bit(0.5), 1.0, 1.0 / 3.0, 4.0);
  EXPECT_NEAR(r.lhs, 1.0 + 6.0 / 9.0 + 1.0 / 81.0, 1e-13);
  const double beta = (1.0 + 4.0 / std::log(3.0)) / 3.0;
  EXPECT_NEAR(r.rhs, 10.0 + std::pow(beta, 4.0), 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(OneVarBound, SkewedBitExample) {
  const double p = 0.1;
  const double d = 2.0;
  const double rho = 0.25;
  const InequalityReport r = check_one_var_bound(standardized_bit(p), d, rho, 6.0);
  const double s = std::sqrt(p * (1 - p));
  const double want = (1 - p) * std::pow(1.0 - rho * d * p / s, 6.0) + p * std::pow(1.0 + rho * d * (1 - p) / s, 6.0);
  EXPECT_NEAR(r.lhs, want, 1e-10 * want);
  EXPECT_TRUE(r.pass);
  EXPECT_THROW(check_one_var_bound({{1.0, 1.0}}, 1.0, 0.1, 4.0), DomainError);
  EXPECT_THROW(check_one_var_bound(standardized_bit(p), 1.0, 0.5, 4.0), DomainError);
}

TEST(Tensorization, SmallExamplesPass) {
  for (double rho : {0.0, 0.1, 1.0 / 3.0}) {
    for (double q : {2.0, 4.0}) {
      const InequalityReport a = check_tensorization(and_t(2, 2, 0.5), rho, q);
      EXPECT_TRUE(a.pass) << rho << ' ' << q;
      const InequalityReport m = check_tensorization(majority(3, 1.0 / 3.0), rho, q);
      EXPECT_TRUE(m.pass) << rho << ' ' << q;
    }
  }
}

TEST(Tensorization, QTwoIsAnIdentityBound) {
  // At q = 2 every term is ||L_S f||_2^2 beta^{2|S|} with beta = rho, so the
  // right side equals sum_S rho^{2|S|} ||L_S f||^2 >= ||T_rho f||^2.
  const FunctionTable f = corpus::random_tables(3, 3, 1, 55).front();
  const InequalityReport r = check_tensorization(f, 0.2, 2.0);
  double want = 0.0;
  for (std::uint32_t s = 0; s < 8; ++s) {
    want += std::pow(0.2, 2 * std::popcount(s)) * lp_norm_pow(laplacian_L(f, SubsetMask(s)), 2.0);
  }
  EXPECT_NEAR(r.rhs, want, 1e-10);
  EXPECT_TRUE(r.pass);
  EXPECT_THROW(check_tensorization(f, 0.5, 4.0), DomainError);
}
