#include <cmath>
#include <random>

#include <boost/math/distributions/students_t.hpp>
#include <gtest/gtest.h>

#include "kbtc/ttest.hpp"

namespace kbtc {
namespace {

double boost_p(double t, double df) {
  const boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

TEST(StudentT, MatchesReferenceCdf) {
  for (double df : {1.0, 2.0, 4.0, 9.0, 19.0, 99.0}) {
    for (double t : {0.0, 0.1, 0.5, 1.0, 2.0, 2.262, 3.0, 5.0, 12.0, 40.0}) {
      EXPECT_NEAR(student_t_two_tailed_p(t, df), boost_p(t, df), 1e-7) << "t=" << t << " df=" << df;
      EXPECT_EQ(student_t_two_tailed_p(-t, df), student_t_two_tailed_p(t, df));
    }
  }
}

TEST(StudentT, CriticalValueNineDf) { EXPECT_NEAR(student_t_two_tailed_p(2.262, 9), 0.05, 5e-4); }

TEST(StudentT, DensityIntegratesToOne) {
  EXPECT_NEAR(2 * adaptive_simpson([](double x) { return student_t_density(x, 5); }, 0, 1000, 1e-10), 1.0, 1e-6);
  EXPECT_NEAR(student_t_density(0, 1), 1.0 / 3.14159265358979, 1e-12);
}

TEST(StudentT, EdgeCases) {
  EXPECT_EQ(student_t_two_tailed_p(INFINITY, 3), 0.0);
  EXPECT_EQ(student_t_two_tailed_p(0, 3), 1.0);
  EXPECT_THROW(student_t_two_tailed_p(1, 0), Error);
}

TEST(PairedTTest, HandComputed) {
  const std::vector<double> a = {0.9, 0.8, 0.85, 0.95};
  const std::vector<double> b = {0.8, 0.8, 0.8, 0.8};
  // d = .1 0 .05 .15, mean .075, sd = sqrt(0.0125/3)
  const auto r = paired_t_test(a, b);
  EXPECT_EQ(r.df, 3u);
  EXPECT_FALSE(r.zero_variance);
  EXPECT_NEAR(r.t, 0.075 * 2.0 / std::sqrt(0.0125 / 3.0), 1e-9);
  EXPECT_NEAR(r.p, boost_p(r.t, 3), 1e-7);
}

TEST(PairedTTest, ZeroVariance) {
  const std::vector<double> a = {0.5, 0.6, 0.7};
  auto r = paired_t_test(a, a);
  EXPECT_TRUE(r.zero_variance);
  EXPECT_EQ(r.t, 0.0);
  EXPECT_EQ(r.p, 1.0);

  const std::vector<double> shifted = {0.51, 0.61, 0.71};
  r = paired_t_test(shifted, a);
  EXPECT_TRUE(r.zero_variance);
  EXPECT_TRUE(std::isinf(r.t) && r.t > 0);
  EXPECT_EQ(r.p, 0.0);
  EXPECT_TRUE(paired_t_test(a, shifted).t < 0);
}

TEST(PairedTTest, Errors) {
  const std::vector<double> a = {0.5, 0.6};
  const std::vector<double> b = {0.5};
  try {
    paired_t_test(a, b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLengthMismatch);
  }
  EXPECT_THROW(paired_t_test(b, b), Error);
}

TEST(PairedTTest, AntisymmetryAndRange) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + rng() % 15;
    std::vector<double> a(k), b(k);
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
    }
    const auto ab = paired_t_test(a, b);
    const auto ba = paired_t_test(b, a);
    EXPECT_EQ(ab.t, -ba.t);
    EXPECT_EQ(ab.p, ba.p);
    EXPECT_GE(ab.p, 0.0);
    EXPECT_LE(ab.p, 1.0);
    EXPECT_TRUE(std::isfinite(ab.t));
    EXPECT_NEAR(ab.p, boost_p(ab.t, k - 1), 1e-7);
  }
}

}  // namespace
}  // namespace kbtc
