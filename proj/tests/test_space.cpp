#include <gtest/gtest.h>

#include <cmath>

#include "corpus.hpp"
#include "hyperc/errors.hpp"
#include "hyperc/numeric.hpp"
#include "hyperc/space.hpp"
#include "oracles.hpp"

using namespace hyperc;

TEST(ProductSpace, RejectsBadWeights) {
  EXPECT_THROW(ProductSpace({0.5, 0.6}), DomainError);
  EXPECT_THROW(ProductSpace({1.0, 0.0}), DomainError);
  EXPECT_THROW(ProductSpace({1.0}), DomainError);
  EXPECT_THROW(ProductSpace::biased(0.0), DomainError);
  EXPECT_NO_THROW(ProductSpace({0.2, 0.3, 0.5}));
}

TEST(ProductSpace, BiasedLayout) {
  const auto sp = ProductSpace::biased(0.25);
  EXPECT_DOUBLE_EQ(sp.weight(0), 0.75);
  EXPECT_DOUBLE_EQ(sp.weight(1), 0.25);
  EXPECT_DOUBLE_EQ(sp.bias(), 0.25);
  EXPECT_THROW(ProductSpace::uniform(3).bias(), UnsupportedError);
}

TEST(Domain, MixedRadixFirstCoordinateFastest) {
  const Domain d(ProductSpace::uniform(3), 3);
  EXPECT_EQ(d.size(), 27U);
  const std::vector<int> x{2, 0, 1};
  EXPECT_EQ(point_index(d, x), 2U + 0U * 3U + 1U * 9U);
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(point_index(d, unindex(d, i)), i);
  EXPECT_THROW(point_index(d, std::vector<int>{3, 0, 0}), DomainError);
}

TEST(Domain, ZeroCoordinatesIsOnePoint) {
  const Domain d(ProductSpace::uniform(2), 0);
  EXPECT_EQ(d.size(), 1U);
  const FunctionTable f(d, {3.5});
  EXPECT_DOUBLE_EQ(expectation(f), 3.5);
}

TEST(Domain, SizeCapIsEnforced) {
  EXPECT_NO_THROW(Domain(ProductSpace::uniform(2), 24));
  EXPECT_THROW(Domain(ProductSpace::uniform(2), 25), ResourceError);
  EXPECT_THROW(Domain(ProductSpace::uniform(5), 11), ResourceError);
}

TEST(FunctionTable, ShapeAndFiniteness) {
  const Domain d(ProductSpace::uniform(2), 2);
  EXPECT_THROW(FunctionTable(d, {1.0, 2.0, 3.0}), ShapeError);
  EXPECT_THROW(FunctionTable(d, {1.0, 2.0, 3.0, NAN}), DomainError);
  const FunctionTable f(d, {0.0, 1.0, 1.0, 0.0});
  EXPECT_TRUE(f.is_boolean());
  EXPECT_FALSE((f * 2.0).is_boolean());
}

TEST(FunctionTable, ArithmeticRejectsMismatchedDomains) {
  const FunctionTable a = FunctionTable::constant(Domain(ProductSpace::uniform(2), 2), 1.0);
  const FunctionTable b = FunctionTable::constant(Domain(ProductSpace::biased(0.3), 2), 1.0);
  EXPECT_THROW(a + b, ShapeError);
  EXPECT_THROW(inner_product(a, b), ShapeError);
}

TEST(Norms, MatchOracleOnRandomTables) {
  for (const auto& f : corpus::random_tables(3, 3, 20)) {
    EXPECT_NEAR(expectation(f), oracle::expect(f), 1e-12);
    for (double p : {1.0, 2.0, 3.0, 4.5}) EXPECT_NEAR(lp_norm(f, p), oracle::lp(f, p), 1e-12);
    EXPECT_NEAR(inner_product(f, f), oracle::inner(f, f), 1e-12);
  }
  const FunctionTable f = corpus::random_tables(2, 2, 1).front();
  EXPECT_THROW(lp_norm(f, 0.5), DomainError);
}

TEST(Restrict, MatchesFilteringOracle) {
  for (const auto& f : corpus::random_tables(3, 3, 5)) {
    for (std::uint32_t s = 0; s < 8; ++s) {
      for (const auto& x : oracle::assignments(3, std::popcount(s))) {
        const FunctionTable got = restrict(f, SubsetMask(s), x);
        const FunctionTable want = oracle::restrict(f, s, x);
        ASSERT_EQ(got.domain(), want.domain());
        EXPECT_EQ(max_abs_difference(got, want), 0.0);
      }
    }
  }
}

TEST(Restrict, FullSetLandsOnOnePoint) {
  const FunctionTable f = corpus::random_tables(2, 2, 1).front();
  const std::vector<int> x{1, 0};
  const FunctionTable r = restrict(f, SubsetMask::full(2), x);
  EXPECT_EQ(r.domain().n(), 0);
  EXPECT_EQ(r[0], f.at(x));
  EXPECT_THROW(restrict(f, SubsetMask::of({0}), std::vector<int>{}), DomainError);
}

TEST(SubsetMask, Basics) {
  const auto s = SubsetMask::of({0, 2});
  EXPECT_EQ(s.bits(), 5U);
  EXPECT_EQ(s.size(), 2);
  EXPECT_EQ(s.complement(3).bits(), 2U);
  EXPECT_EQ(s.coordinates(), (std::vector<int>{0, 2}));
  EXPECT_TRUE(SubsetMask::singleton(2).is_subset_of(s));
  EXPECT_FALSE(s.fits(2));
}

TEST(Numeric, CompensatedSumKeepsSmallTerms) {
  CompensatedSum s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-17;
  s += -1.0;
  EXPECT_NEAR(s.value(), 1e-14, 1e-20);
  EXPECT_EQ(pow0(0.0, 0.0), 1.0);
}
