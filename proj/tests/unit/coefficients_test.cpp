#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "linmax/coefficients.hpp"
#include "linmax/error.hpp"

using namespace linmax;

namespace {

CPlusMinus brute_force(const std::vector<double>& c) {
  CPlusMinus r;
  for (double v : c) {
    r.plus = std::max(r.plus, v);
    r.minus = std::max(r.minus, -v);
  }
  return r;
}

}  // namespace

TEST(SampleCoefficients, DeterministicPadsWithZeros) {
  const auto real = sample_coefficients(CoefficientModel::deterministic({1, -1, 1}), 5, 0);
  EXPECT_EQ(real.head, (std::vector<double>{1, -1, 1, 0, 0, 0}));
  EXPECT_EQ(real.tail_sup_bound, 0.0);
  EXPECT_EQ(real.tail_sum_bound, 0.0);
  EXPECT_EQ(real.order(), 5u);
}

TEST(SampleCoefficients, DeterministicShorterOrderKeepsTailBound) {
  const auto real = sample_coefficients(CoefficientModel::deterministic({1, -3, 2}), 0, 0);
  EXPECT_EQ(real.head, (std::vector<double>{1}));
  EXPECT_EQ(real.tail_sup_bound, 3.0);
  EXPECT_EQ(real.tail_sum_bound, 5.0);
  EXPECT_TRUE(real.tail_may_be_positive);
  EXPECT_TRUE(real.tail_may_be_negative);
}

TEST(SampleCoefficients, GeometricUnitAmplitude) {
  const auto model = CoefficientModel::geometric({1.0, 1.0}, 0.5);
  const auto real = sample_coefficients(model, 3, 42);
  ASSERT_EQ(real.head.size(), 4u);
  EXPECT_DOUBLE_EQ(real.head[0], 1.0);
  EXPECT_DOUBLE_EQ(real.head[1], 0.5);
  EXPECT_DOUBLE_EQ(real.head[2], 0.25);
  EXPECT_DOUBLE_EQ(real.head[3], 0.125);
  EXPECT_DOUBLE_EQ(real.tail_sum_bound, 0.125);
  EXPECT_DOUBLE_EQ(real.tail_sup_bound, 0.0625);
  EXPECT_TRUE(real.tail_may_be_positive);
  EXPECT_FALSE(real.tail_may_be_negative);
}

TEST(SampleCoefficients, SeededAndPrefixStable) {
  const auto model = CoefficientModel::power({-1.0, 2.0}, 1.7);
  const auto a = sample_coefficients(model, 50, 9);
  const auto b = sample_coefficients(model, 50, 9);
  EXPECT_EQ(a.head, b.head);
  const auto c = sample_coefficients(model, 10, 9);
  EXPECT_TRUE(std::equal(c.head.begin(), c.head.end(), a.head.begin()));
  EXPECT_NE(sample_coefficients(model, 50, 10).head, a.head);
}

TEST(SampleCoefficients, TailBoundsDominateExtendedRealizations) {
  const std::vector<CoefficientModel> models{
      CoefficientModel::geometric({-2.0, 1.5}, -0.7, SignPattern::Random),
      CoefficientModel::geometric({0.0, 1.0}, 0.9, SignPattern::Alternating),
      CoefficientModel::power({-1.0, 1.0}, 2.5),
      CoefficientModel::power({0.2, 3.0}, 1.2),
  };
  for (const auto& model : models) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const std::size_t J = 15;
      const auto real = sample_coefficients(model, J, seed);
      const auto ext = sample_coefficients(model, 4000, seed);
      double sup = 0.0, sum = 0.0;
      for (std::size_t j = J + 1; j < ext.head.size(); ++j) {
        sup = std::max(sup, std::abs(ext.head[j]));
        sum += std::abs(ext.head[j]);
        if (ext.head[j] > 0) EXPECT_TRUE(real.tail_may_be_positive);
        if (ext.head[j] < 0) EXPECT_TRUE(real.tail_may_be_negative);
      }
      EXPECT_LE(sup, real.tail_sup_bound * (1 + 1e-12)) << model.kind();
      EXPECT_LE(sum, real.tail_sum_bound * (1 + 1e-12)) << model.kind();
    }
  }
}

TEST(CPlusMinus, Examples) {
  auto r = c_plus_minus(sample_coefficients(CoefficientModel::deterministic({1, -1, 1}), 2, 0));
  EXPECT_EQ(r.plus, 1.0);
  EXPECT_EQ(r.minus, 1.0);
  EXPECT_TRUE(r.exact());

  r = c_plus_minus(sample_coefficients(CoefficientModel::deterministic({-2, -0.5}), 1, 0));
  EXPECT_EQ(r.plus, 0.0);
  EXPECT_EQ(r.minus, 2.0);
}

TEST(CPlusMinus, GeometricTailBelowHeadMax) {
  const auto model = CoefficientModel::geometric({1.0, 1.0}, 0.5);
  const auto r = c_plus_minus(sample_coefficients(model, 3, 1));
  EXPECT_EQ(r.plus, 1.0);
  EXPECT_EQ(r.minus, 0.0);
  EXPECT_TRUE(r.exact());
  const auto ext = brute_force(sample_coefficients(model, 60, 1).head);
  EXPECT_EQ(r.plus, ext.plus);
  EXPECT_EQ(r.minus, ext.minus);
}

TEST(CPlusMinus, TailAboveHeadIsFlagged) {
  CoefficientRealization real;
  real.head = {0.1, -0.2};
  real.tail_sup_bound = 0.5;
  real.tail_may_be_positive = true;
  const auto r = c_plus_minus(real);
  EXPECT_EQ(r.plus, 0.5);
  EXPECT_TRUE(r.plus_is_upper_bound);
  EXPECT_EQ(r.minus, 0.2);
  EXPECT_FALSE(r.minus_is_upper_bound);
}

TEST(CPlusMinus, DeterministicMatchesBruteForce) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> c(1 + rng() % 12);
    for (auto& v : c) v = u(rng);
    const auto model = CoefficientModel::deterministic(c);
    const auto r = c_plus_minus(sample_coefficients(model, c.size() - 1, 0));
    const auto b = brute_force(c);
    EXPECT_EQ(r.plus, b.plus);
    EXPECT_EQ(r.minus, b.minus);
    EXPECT_TRUE(r.exact());
  }
}

TEST(CPlusMinus, GeometricMatchesOrder200Extension) {
  const auto model = CoefficientModel::geometric({0.2, 1.0}, 0.6);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto ext = brute_force(sample_coefficients(model, 200, seed).head);
    const auto sampled = sample_c_plus_minus(model, seed);
    EXPECT_EQ(sampled.plus, ext.plus);
    EXPECT_EQ(sampled.minus, ext.minus);
    EXPECT_TRUE(sampled.exact());
    const auto short_head = c_plus_minus(sample_coefficients(model, 4, seed));
    EXPECT_EQ(short_head.plus, ext.plus);
  }
}

TEST(CPlusMinus, RandomSignsMatchLongExtension) {
  const auto model = CoefficientModel::power({-1.0, 1.0}, 3.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto ext = brute_force(sample_coefficients(model, 5000, seed).head);
    const auto sampled = sample_c_plus_minus(model, seed);
    if (sampled.exact()) {
      EXPECT_EQ(sampled.plus, ext.plus);
      EXPECT_EQ(sampled.minus, ext.minus);
    } else {
      EXPECT_GE(sampled.plus, ext.plus);
      EXPECT_GE(sampled.minus, ext.minus);
    }
  }
}

TEST(MomentConditions, DeterministicAlwaysPasses) {
  const auto model = CoefficientModel::deterministic({1.0, -7.0, 0.0, 2.5});
  for (double alpha : {0.3, 0.5, 1.0, 1.5, 3.0}) {
    const auto rep = check_moment_conditions(model, alpha);
    EXPECT_TRUE(rep.passes_delta_moment);
    EXPECT_TRUE(rep.passes_sum_abs);
    if (alpha < 1) EXPECT_TRUE(rep.passes_gamma_moment);
    EXPECT_TRUE(rep.ok());
    EXPECT_FALSE(rep.first_failure());
  }
}

TEST(MomentConditions, GeometricSmallAlpha) {
  const auto rep = check_moment_conditions(CoefficientModel::geometric({0.0, 1.0}, 0.5), 0.5);
  EXPECT_TRUE(rep.requires_delta_moment);
  EXPECT_TRUE(rep.requires_gamma_moment);
  EXPECT_TRUE(rep.passes_delta_moment);
  EXPECT_TRUE(rep.passes_gamma_moment);
  EXPECT_DOUBLE_EQ(rep.delta, 0.25);
  ASSERT_TRUE(rep.gamma);
  EXPECT_DOUBLE_EQ(*rep.gamma, 0.75);
  EXPECT_TRUE(rep.ok());
}

TEST(MomentConditions, PowerBelowOneFailsAbsoluteSum) {
  const auto rep = check_moment_conditions(CoefficientModel::power({1.0, 1.0}, 0.9), 1.5);
  EXPECT_TRUE(rep.requires_sum_abs);
  EXPECT_FALSE(rep.passes_sum_abs);
  EXPECT_FALSE(rep.ok());
  ASSERT_TRUE(rep.first_failure());
  EXPECT_EQ(*rep.first_failure(), MomentCondition::AbsoluteSum);
  EXPECT_FALSE(rep.gamma);
}

TEST(MomentConditions, WitnessExponents) {
  EXPECT_DOUBLE_EQ(check_moment_conditions(CoefficientModel::deterministic({1}), 1.5).delta, 0.75);
  EXPECT_DOUBLE_EQ(check_moment_conditions(CoefficientModel::deterministic({1}), 4.0).delta, 1.0);
  const auto rep = check_moment_conditions(CoefficientModel::deterministic({1}), 1.0);
  EXPECT_TRUE(rep.requires_delta_moment);
  EXPECT_FALSE(rep.requires_gamma_moment);
  EXPECT_FALSE(rep.requires_sum_abs);
}

TEST(MomentConditions, PowerPassesIffSeriesConverges) {
  // sum (j+1)^(-beta s) converges iff beta * s > 1.
  for (double alpha : {0.5, 1.0, 1.5}) {
    for (double beta : {0.5, 0.9, 1.1, 2.0, 2.5, 4.5}) {
      const auto rep = check_moment_conditions(CoefficientModel::power({0.5, 1.0}, beta), alpha);
      EXPECT_EQ(rep.passes_delta_moment, beta * rep.delta > 1.0);
      EXPECT_EQ(rep.passes_sum_abs, beta > 1.0);
      if (rep.gamma) EXPECT_EQ(rep.passes_gamma_moment, beta * *rep.gamma > 1.0);
    }
  }
}

TEST(MomentConditions, ZeroBasePowerPasses) {
  const auto rep = check_moment_conditions(CoefficientModel::power({0.0, 0.0}, 0.5), 1.5);
  EXPECT_TRUE(rep.ok());
}

TEST(MomentConditions, MonotoneInBeta) {
  for (double alpha : {0.4, 0.8, 1.0, 1.3, 2.0}) {
    bool delta = false, gamma = false, sum = false;
    for (double beta = 0.1; beta < 8.0; beta += 0.05) {
      const auto rep = check_moment_conditions(CoefficientModel::power({-1.0, 1.0}, beta), alpha);
      EXPECT_TRUE(!delta || rep.passes_delta_moment);
      EXPECT_TRUE(!gamma || rep.passes_gamma_moment);
      EXPECT_TRUE(!sum || rep.passes_sum_abs);
      delta = rep.passes_delta_moment;
      gamma = rep.passes_gamma_moment;
      sum = rep.passes_sum_abs;
    }
  }
}

TEST(MomentConditions, RejectsNonPositiveAlpha) {
  EXPECT_THROW(check_moment_conditions(CoefficientModel::deterministic({1}), 0.0), DomainError);
}

TEST(TruncationOrder, GeometricUnitAmplitude) {
  EXPECT_EQ(truncation_order(CoefficientModel::geometric({1.0, 1.0}, 0.5), 1e-6), 20u);
}

TEST(TruncationOrder, DeterministicIsExact) {
  const auto model = CoefficientModel::deterministic({1.0, 2.0, 3.0});
  for (double tol : {1e-15, 1e-3, 10.0}) EXPECT_EQ(truncation_order(model, tol), 2u);
}

TEST(TruncationOrder, PowerIntegralBound) {
  const auto model = CoefficientModel::power({1.0, 1.0}, 2.0);
  const std::size_t q = truncation_order(model, 0.1);
  EXPECT_EQ(q, 9u);
  // Direct partial summation: the realized tail beyond q is below tol.
  double tail = 0.0;
  for (std::size_t j = q + 1; j <= 1000000; ++j) tail += 1.0 / std::pow(j + 1.0, 2.0);
  EXPECT_LE(tail, 0.1);
}

TEST(TruncationOrder, GeometricBoundIsTight) {
  for (double rho : {0.3, 0.5, 0.9, -0.8}) {
    for (double tol : {1e-3, 1e-8, 1e-12}) {
      const auto model = CoefficientModel::geometric({-2.0, 1.0}, rho);
      const std::size_t q = truncation_order(model, tol);
      const auto real = sample_coefficients(model, q, 0);
      EXPECT_LE(real.tail_sum_bound, tol);
      // Tightness against the worst-case amplitude sup|A| = 2.
      const double r = std::abs(rho);
      if (q > 0) EXPECT_GT(2.0 * std::pow(r, static_cast<double>(q)) / (1.0 - r), tol);
    }
  }
}

TEST(TruncationOrder, NonSummableTailThrows) {
  try {
    truncation_order(CoefficientModel::power({1.0, 1.0}, 0.9), 1e-3);
    FAIL() << "expected ConditionError";
  } catch (const ConditionError& e) {
    EXPECT_EQ(e.condition(), condition_name(MomentCondition::AbsoluteSum));
  }
}

TEST(CoefficientModel, ValidatesParameters) {
  EXPECT_THROW(CoefficientModel::deterministic({}), DomainError);
  EXPECT_THROW(CoefficientModel::deterministic({1.0, NAN}), DomainError);
  EXPECT_THROW(CoefficientModel::geometric({0.0, 1.0}, 1.0), DomainError);
  EXPECT_THROW(CoefficientModel::geometric({1.0, 0.0}, 0.5), DomainError);
  EXPECT_THROW(CoefficientModel::power({0.0, 1.0}, 0.0), DomainError);
  EXPECT_EQ(CoefficientModel::power({0.0, 1.0}, 2.0).kind(), "power");
}
