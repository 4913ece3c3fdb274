#include "laplace_limits/numerics.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace laplace_limits::numerics;

TEST(Numerics, KahanSumRecoversSmallTerms)
{
  KahanSum s;
  s.add(1.0);
  for (int i = 0; i < 1000000; ++i)
    s.add(1e-16);
  EXPECT_NEAR(s.value(), 1.0 + 1e-10, 1e-15);
}

TEST(Numerics, AdaptiveSimpsonPolynomialAndTranscendental)
{
  auto r = adaptive_simpson([](double x) { return x * x * x; }, 0.0, 2.0, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 4.0, 1e-12);
  r = adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-11);
  EXPECT_NEAR(r.value, 2.0, 1e-10);
}

TEST(Numerics, GaussLegendreIsExactForHighDegree)
{
  const double v = gauss_legendre([](double x) { return std::pow(x, 20); }, -1.0, 1.0);
  EXPECT_NEAR(v, 2.0 / 21.0, 1e-14);
  const double p2 = gauss_legendre([](double x) { return std::exp(x); }, 0.0, 1.0, 2);
  EXPECT_NEAR(p2, std::exp(1.0) - 1.0, 1e-14);
}

TEST(Numerics, GaussLegendre2d)
{
  const double v = gauss_legendre_2d([](double x, double y) { return x * x * y; }, 0.0, 1.0, 0.0, 2.0);
  EXPECT_NEAR(v, 2.0 / 3.0, 1e-14);
}

TEST(Numerics, MedianMean)
{
  std::vector<double> odd{3, 1, 2};
  std::vector<double> even{4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(median(odd), 2.0);
  EXPECT_DOUBLE_EQ(median(even), 2.5);
  EXPECT_DOUBLE_EQ(mean(even), 2.5);
}

TEST(Numerics, LeastSquaresExactLine)
{
  std::vector<double> x{1, 2, 3, 4};
  std::vector<double> y{1, 3, 5, 7};
  const auto fit = least_squares(x, y);
  EXPECT_NEAR(fit.slope, 2.0, 1e-14);
  EXPECT_NEAR(fit.intercept, -1.0, 1e-14);
  EXPECT_NEAR(fit.r2, 1.0, 1e-14);
}

TEST(Numerics, UnitSphereArea)
{
  EXPECT_NEAR(unit_sphere_area(1), 2.0, 1e-14);
  EXPECT_NEAR(unit_sphere_area(2), 2.0 * std::numbers::pi, 1e-14);
  EXPECT_NEAR(unit_sphere_area(3), 4.0 * std::numbers::pi, 1e-13);
}
