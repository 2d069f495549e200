#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "corpus.hpp"
#include "hyperc/errors.hpp"
#include "hyperc/generators.hpp"
#include "hyperc/operators.hpp"
#include "oracles.hpp"

using namespace hyperc;

namespace {

constexpr double kTol = 1e-10;

FunctionTable and2_uniform() { return and_t(2, 2, 0.5); }

}  // namespace

TEST(AverageE, Examples) {
  const FunctionTable f = and2_uniform();
  EXPECT_EQ(max_abs_difference(average_E(f, SubsetMask{}), f), 0.0);
  // E over coordinate 0 of x0 x1 is x1 / 2.
  const FunctionTable e0 = average_E(f, SubsetMask::of({0}));
  const FunctionTable want(f.domain(), {0.0, 0.0, 0.5, 0.5});
  EXPECT_LT(max_abs_difference(e0, want), 1e-15);
  const FunctionTable all = average_E(dictator(2, 0, 0.25), SubsetMask::full(2));
  for (double v : all.values()) EXPECT_NEAR(v, 0.25, 1e-15);
}

TEST(AverageE, MatchesConditionalExpectationAndIsIdempotent) {
  for (const auto& f : corpus::random_tables(3, 3, 5)) {
    for (std::uint32_t s = 0; s < 8; ++s) {
      const FunctionTable e = average_E(f, SubsetMask(s));
      EXPECT_LT(max_abs_difference(e, oracle::cond_expect(f, 7U & ~s)), kTol);
      EXPECT_LT(max_abs_difference(average_E(e, SubsetMask(s)), e), kTol);
    }
  }
}

TEST(LaplacianL, Examples) {
  const FunctionTable c = FunctionTable::constant(Domain(ProductSpace::uniform(2), 2), 3.0);
  const FunctionTable lc = laplacian_L(c, SubsetMask::of({0}));
  for (double v : lc.values()) EXPECT_NEAR(v, 0.0, 1e-15);
  const FunctionTable chi0 = character(Domain(ProductSpace::uniform(2), 2), SubsetMask::of({0}));
  EXPECT_LT(max_abs_difference(laplacian_L(chi0, SubsetMask::of({0})), chi0), 1e-15);
}

TEST(LaplacianL, EqualsSumOfPartsAbove) {
  for (const auto& f : corpus::random_tables(3, 2, 5)) {
    const auto es = efron_stein(f);
    for (std::uint32_t s = 0; s < 8; ++s) {
      FunctionTable above = FunctionTable::zeros(f.domain());
      for (std::uint32_t t = 0; t < 8; ++t) {
        if ((t & s) == s) above = above + es.part(SubsetMask(t));
      }
      EXPECT_LT(max_abs_difference(laplacian_L(f, SubsetMask(s)), above), kTol);
    }
  }
}

TEST(EfronStein, MatchesInclusionExclusionOracle) {
  for (int k : {2, 3}) {
    for (const auto& f : corpus::random_tables(3, k, 5, 77)) {
      const auto es = efron_stein(f);
      for (std::uint32_t t = 0; t < 8; ++t) {
        EXPECT_LT(max_abs_difference(es.part(SubsetMask(t)), oracle::es_part(f, t)), kTol);
      }
    }
  }
}

TEST(EfronStein, Examples) {
  const auto c = efron_stein(FunctionTable::constant(Domain(ProductSpace::uniform(3), 2), 2.5));
  for (double v : c.part(SubsetMask{}).values()) EXPECT_NEAR(v, 2.5, 1e-15);
  for (std::uint32_t t = 1; t < 4; ++t) EXPECT_LT(lp_norm(c.part(SubsetMask(t)), 2.0), 1e-15);

  const auto d = efron_stein(dictator(2, 0, 0.25));
  EXPECT_NEAR(lp_norm_pow(d.part(SubsetMask::of({0})), 2.0), 3.0 / 16.0, 1e-15);
  const auto a = efron_stein(and2_uniform());
  EXPECT_NEAR(lp_norm_pow(a.part(SubsetMask::of({0, 1})), 2.0), 1.0 / 16.0, 1e-15);
}

TEST(EfronStein, PartDependsOnlyOnItsCoordinates) {
  const FunctionTable f = corpus::random_tables(3, 3, 1).front();
  const auto es = efron_stein(f);
  for (std::uint32_t t = 0; t < 8; ++t) {
    const FunctionTable part = es.part(SubsetMask(t));
    // Averaging out the complement changes nothing.
    EXPECT_LT(max_abs_difference(average_E(part, SubsetMask(t).complement(3)), part), kTol);
  }
}

TEST(EfronStein, ResourceCap) {
  EXPECT_THROW(efron_stein(FunctionTable::zeros(Domain(ProductSpace::uniform(2), 14))), ResourceError);
}

TEST(LevelPart, ExamplesAndErrors) {
  const FunctionTable f = and2_uniform();
  const FunctionTable mean = level_part(f, 0);
  for (double v : mean.values()) EXPECT_NEAR(v, 0.25, 1e-15);
  EXPECT_NEAR(lp_norm_pow(level_part(f, 1), 2.0), 1.0 / 8.0, 1e-15);
  const FunctionTable chi = character(f.domain(), SubsetMask::full(2));
  EXPECT_LT(lp_norm(level_part(chi, 1), 2.0), 1e-15);
  EXPECT_THROW(level_part(f, 3), DomainError);
  EXPECT_THROW(level_part(f, -1), DomainError);
}

TEST(LevelPart, MatchesOracleAndWeightsSumToNorm) {
  for (const auto& f : corpus::random_tables(4, 2, 4, 5)) {
    double total = 0.0;
    const auto weights = level_weights(f);
    for (int d = 0; d <= 4; ++d) {
      EXPECT_LT(max_abs_difference(level_part(f, d), oracle::level(f, d)), kTol);
      total += weights[static_cast<std::size_t>(d)];
    }
    EXPECT_NEAR(total, lp_norm_pow(f, 2.0), kTol);
  }
}

TEST(Noise, ResampleMatchesKernelOracle) {
  for (const auto& f : corpus::random_tables(3, 3, 5)) {
    for (double rho : {0.0, 0.3, 1.0 / std::sqrt(3.0), 1.0}) {
      EXPECT_LT(max_abs_difference(noise_resample(f, rho), oracle::noise(f, rho)), kTol);
    }
  }
  const FunctionTable f = corpus::random_tables(2, 2, 1).front();
  EXPECT_THROW(noise_resample(f, 1.5), DomainError);
  EXPECT_THROW(noise_resample(f, -0.1), DomainError);
}

TEST(Noise, EndpointsAndCharacters) {
  const FunctionTable f = corpus::random_tables(3, 2, 1).front();
  EXPECT_LT(max_abs_difference(noise_resample(f, 1.0), f), 1e-15);
  const FunctionTable flat = noise_resample(f, 0.0);
  for (double v : flat.values()) EXPECT_NEAR(v, expectation(f), 1e-14);
  const Domain d(ProductSpace::biased(0.3), 3);
  for (std::uint32_t s = 0; s < 8; ++s) {
    const FunctionTable chi = character(d, SubsetMask(s));
    const double scale = std::pow(0.4, std::popcount(s));
    EXPECT_LT(max_abs_difference(noise_resample(chi, 0.4), chi * scale), kTol);
  }
}

TEST(Noise, SpectralAcceptsAmplification) {
  const FunctionTable f = sharpness_fnd(4, 2);
  for (double rho : {0.0, 0.5, 2.0, -1.5}) {
    EXPECT_LT(max_abs_difference(noise_spectral(f, rho), f * (rho * rho)), kTol);
  }
  EXPECT_THROW(noise_spectral(f, INFINITY), DomainError);
}

TEST(Noise, Composition) {
  for (const auto& f : corpus::random_tables(3, 3, 5, 900)) {
    EXPECT_LT(max_abs_difference(noise_resample(noise_resample(f, 0.5), 0.5), noise_resample(f, 0.25)), kTol);
    EXPECT_LT(max_abs_difference(noise_spectral(noise_spectral(f, 0.7), 0.3), noise_spectral(f, 0.21)), kTol);
  }
}

TEST(Derivative, SwapRulesAndExpectedNorm) {
  for (const auto& f : corpus::random_tables(3, 3, 4, 33)) {
    const double rho = 0.6;
    const FunctionTable tf = noise_resample(f, rho);
    for (std::uint32_t s = 0; s < 8; ++s) {
      const SubsetMask mask(s);
      EXPECT_LT(max_abs_difference(laplacian_L(tf, mask), noise_resample(laplacian_L(f, mask), rho)), kTol);
      double avg = 0.0;
      for (const auto& x : oracle::assignments(3, mask.size())) {
        const FunctionTable lhs = derivative_D(tf, mask, x);
        const FunctionTable rhs = noise_resample(derivative_D(f, mask, x), rho) * std::pow(rho, mask.size());
        EXPECT_LT(max_abs_difference(lhs, rhs), kTol);
        avg += oracle::weight(Domain(f.domain().space(), mask.size()), x, oracle::full_mask(mask.size())) *
               lp_norm_pow(derivative_D(f, mask, x), 2.0);
      }
      EXPECT_NEAR(avg, lp_norm_pow(laplacian_L(f, mask), 2.0), kTol);
    }
  }
}

TEST(Derivative, Examples) {
  const FunctionTable c = FunctionTable::constant(Domain(ProductSpace::uniform(2), 3), 1.0);
  EXPECT_LT(lp_norm(derivative_D(c, SubsetMask::of({1}), std::vector<int>{0}), 2.0), 1e-15);
  const FunctionTable f = corpus::random_tables(3, 2, 1).front();
  EXPECT_LT(max_abs_difference(derivative_D(f, SubsetMask{}, std::vector<int>{}), f), 1e-15);
  const FunctionTable linear = level_part(f, 1) + level_part(f, 0);
  for (const auto& x : oracle::assignments(2, 2)) {
    EXPECT_LT(lp_norm(derivative_D(linear, SubsetMask::of({0, 2}), x), 2.0), kTol);
  }
  EXPECT_THROW(derivative_D(f, SubsetMask::of({0, 1}), std::vector<int>{1}), DomainError);
}

TEST(Derivative, DictatorAgainstFourierFormula) {
  const double p = 0.3;
  const FunctionTable f = dictator(2, 0, p);
  for (int x : {0, 1}) {
    const FunctionTable d = derivative_D(f, SubsetMask::of({0}), std::vector<int>{x});
    // D_{0,x} f = f^({0}) chi(x) = sqrt(p(1-p)) (x - p) / sqrt(p(1-p)) = x - p.
    for (double v : d.values()) EXPECT_NEAR(v, x - p, 1e-15);
  }
}

TEST(Fourier, MatchesCharacterSumOracle) {
  for (double p : {0.5, 0.3}) {
    const Domain d(ProductSpace::biased(p), 4);
    for (int i = 0; i < 3; ++i) {
      const FunctionTable f = random_table(d, 50 + static_cast<std::uint64_t>(i));
      const FourierSpectrum spec = fourier_spectrum(f, p);
      double parseval = 0.0;
      for (std::uint32_t s = 0; s < 16; ++s) {
        EXPECT_NEAR(spec[SubsetMask(s)], oracle::fourier(f, s), kTol);
        parseval += spec[SubsetMask(s)] * spec[SubsetMask(s)];
      }
      EXPECT_NEAR(parseval, lp_norm_pow(f, 2.0), kTol);
      EXPECT_LT(max_abs_difference(synthesize(spec, d), f), kTol);
      const auto es = efron_stein(f);
      for (std::uint32_t s = 0; s < 16; ++s) {
        const FunctionTable want = character(d, SubsetMask(s)) * spec[SubsetMask(s)];
        EXPECT_LT(max_abs_difference(es.part(SubsetMask(s)), want), kTol);
      }
    }
  }
}

TEST(Fourier, Examples) {
  const double p = 0.2;
  const auto dict = fourier_spectrum(dictator(1, 0, p));
  EXPECT_NEAR(dict.coeffs[0], p, 1e-15);
  EXPECT_NEAR(dict.coeffs[1], std::sqrt(p * (1 - p)), 1e-15);
  for (double c : fourier_spectrum(and2_uniform()).coeffs) EXPECT_NEAR(c, 0.25, 1e-15);
  for (double c : fourier_spectrum(FunctionTable::zeros(Domain(ProductSpace::biased(0.4), 3))).coeffs) {
    EXPECT_EQ(c, 0.0);
  }
  EXPECT_THROW(fourier_spectrum(FunctionTable::zeros(Domain(ProductSpace::uniform(3), 2))), UnsupportedError);
  EXPECT_THROW(fourier_spectrum(dictator(2, 0, 0.3), 0.5), DomainError);
}

TEST(LemmaEfronSteinIdentity, SumOfNoisedLaplacians) {
  for (int k : {2, 3}) {
    for (const auto& f : corpus::random_tables(3, k, 5, 4242)) {
      const FunctionTable t = noise_resample(f, 1.0 / std::numbers::sqrt2);
      double total = 0.0;
      for (std::uint32_t s = 0; s < 8; ++s) total += lp_norm_pow(laplacian_L(t, SubsetMask(s)), 2.0);
      EXPECT_NEAR(total, lp_norm_pow(f, 2.0), kTol);
    }
  }
}
