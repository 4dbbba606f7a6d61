#include <gtest/gtest.h>

#include <cmath>

#include "fll/laws.hpp"
#include "oracles.hpp"

using namespace fll;

TEST(Benford, FirstDigitIsLog2) {
  const auto p = benford_prediction(10);
  ASSERT_EQ(p.rank_count(), 9u);
  EXPECT_NEAR(p.ratios[0], std::log10(2.0), 1e-15);
  EXPECT_EQ(p.labels.front(), "1");
  EXPECT_EQ(p.labels.back(), "9");
  EXPECT_EQ(p.ordering, Ordering::by_label);
}

TEST(Benford, BinaryHasSingleDigit) {
  const auto p = benford_prediction(2);
  ASSERT_EQ(p.rank_count(), 1u);
  EXPECT_DOUBLE_EQ(p.ratios[0], 1.0);
}

TEST(Benford, MatchesOracleAndSumsToOneForBases2To64) {
  for (int base = 2; base <= 64; ++base) {
    const auto p = benford_prediction(base);
    const auto ref = oracle::benford(base);
    ASSERT_EQ(p.rank_count(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(p.ratios[i], ref[i], 1e-14) << base << ' ' << i;
    EXPECT_NEAR(p.sum(), 1.0, 1e-12) << base;
    for (std::size_t i = 1; i < p.rank_count(); ++i) EXPECT_LT(p.ratios[i], p.ratios[i - 1]);
    EXPECT_TRUE(satisfies_invariants(p));
  }
}

TEST(Benford, RejectsBaseBelowTwo) {
  EXPECT_THROW(benford_prediction(1), domain_error);
  EXPECT_THROW(benford_prediction(0), domain_error);
  EXPECT_THROW(benford_prediction(-3), domain_error);
}

TEST(FirstLetterLaw, ReferenceColumnWithin005pp) {
  const auto p = fll_prediction(26);
  ASSERT_EQ(p.rank_count(), 26u);
  EXPECT_FALSE(p.has_labels());
  for (std::size_t i = 0; i < 26; ++i) EXPECT_NEAR(100.0 * p.ratios[i], oracle::table_fll[i], 0.05) << "rank " << i + 1;
}

TEST(FirstLetterLaw, LeadingRatios) {
  EXPECT_NEAR(fll_prediction(26).ratios[0], 0.1663, 0.0005);
  EXPECT_NEAR(fll_prediction(30).ratios[0], 0.1487, 0.0005);
}

TEST(FirstLetterLaw, TwoLetters) {
  const auto p = fll_prediction(2);
  ASSERT_EQ(p.rank_count(), 2u);
  EXPECT_NEAR(p.ratios[0], 1.0, 1e-15);
  EXPECT_EQ(p.ratios[1], 0.0);
}

TEST(FirstLetterLaw, InvariantsForAlphabets2To200) {
  for (int x = 2; x <= 200; ++x) {
    const auto p = fll_prediction(x);
    const auto ref = oracle::fll(x);
    ASSERT_EQ(p.rank_count(), static_cast<std::size_t>(x));
    EXPECT_EQ(p.ratios.back(), 0.0) << x;
    EXPECT_NEAR(p.sum(), 1.0, 1e-12) << x;
    for (int i = 0; i < x; ++i) EXPECT_NEAR(p.ratios[i], ref[i], 1e-12) << x << ' ' << i;
    for (int i = 1; i < x; ++i) EXPECT_LT(p.ratios[i], p.ratios[i - 1]) << x << ' ' << i;
    EXPECT_TRUE(satisfies_invariants(p));
  }
}

TEST(FirstLetterLaw, RejectsAlphabetBelowTwo) {
  EXPECT_THROW(fll_prediction(1), domain_error);
  EXPECT_THROW(fll_prediction(0), domain_error);
}

TEST(RankLadder, SingleGroupIsMeanOfExponential) {
  for (double b : {0.1, 1.0, 3.5}) {
    const auto ladder = rank_ladder(1, b);
    ASSERT_EQ(ladder.step_sizes.size(), 1u);
    EXPECT_NEAR(ladder.step_sizes[0], 1.0 / b, 1e-12);
  }
}

TEST(RankLadder, LargestStepForUnitDecay) {
  EXPECT_NEAR(rank_ladder(26, 1.0).step(1), 1.0 + std::log(26.0), 1e-12);
}

TEST(RankLadder, CutoffCondition) {
  for (double b : {1e-3, 0.5, 2.0}) {
    const auto ladder = rank_ladder(26, b);
    for (std::size_t i = 1; i <= 26; ++i)
      EXPECT_NEAR(b * ladder.cutoffs[i - 1], -std::log(double(i) / 26.0), 1e-12) << i;
    for (std::size_t i = 1; i < 26; ++i) {
      EXPECT_LT(ladder.cutoffs[i], ladder.cutoffs[i - 1]);
      EXPECT_LE(ladder.step_sizes[i], ladder.step_sizes[i - 1]);
    }
  }
}

TEST(RankLadder, NormalizedStepsReproduceFirstLetterLaw) {
  for (std::size_t n : {2u, 5u, 26u, 30u}) {
    for (double b : {1e-3, 1.0, 7.0}) {
      const auto norm = normalized_ladder(rank_ladder(n, b));
      const auto law = fll_prediction(static_cast<int>(n));
      ASSERT_EQ(norm.rank_count(), n);
      for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(norm.ratios[i], law.ratios[i], 1e-12) << n << ' ' << i;
    }
  }
}

TEST(RankLadder, RejectsBadInputs) {
  EXPECT_THROW(rank_ladder(0, 1.0), domain_error);
  EXPECT_THROW(rank_ladder(5, 0.0), domain_error);
  EXPECT_THROW(rank_ladder(5, -1.0), domain_error);
}

TEST(StepRatio, EqualNumeratorRanksGiveZero) {
  EXPECT_EQ(step_ratio(rank_ladder(26, 0.3), 4, 4, 1, 2), 0.0);
}

TEST(StepRatio, IndependentOfDecay) {
  const double a = step_ratio(rank_ladder(26, 0.5), 1, 5, 2, 9);
  const double b = step_ratio(rank_ladder(26, 2.0), 1, 5, 2, 9);
  EXPECT_NEAR(a, b, 1e-12);
}

TEST(StepRatio, AgreesWithLawRatios) {
  const auto law = oracle::fll(26);
  const double expected = (law[0] - law[1]) / (law[1] - law[2]);
  EXPECT_NEAR(step_ratio(rank_ladder(26, 0.01), 1, 2, 2, 3), expected, 1e-10);
}

TEST(StepRatio, DegenerateDenominatorThrows) {
  const auto ladder = rank_ladder(26, 1.0);
  EXPECT_THROW(step_ratio(ladder, 1, 2, 3, 3), domain_error);
  EXPECT_THROW(step_ratio(ladder, 0, 2, 3, 4), domain_error);
  EXPECT_THROW(step_ratio(ladder, 1, 27, 3, 4), domain_error);
}
