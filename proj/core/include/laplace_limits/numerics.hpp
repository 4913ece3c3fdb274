#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace laplace_limits::numerics {

//! Compensated (Kahan) summation.
class KahanSum
{
public:
  void add(double x) noexcept
  {
    const double y = x - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const noexcept { return sum_; }

private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

struct QuadratureResult
{
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

//! Adaptive Simpson on [a, b] with absolute tolerance `tolerance`.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  double a,
                                  double b,
                                  double tolerance,
                                  int max_depth = 50);

//! 64-node Gauss-Legendre rule on [a, b], optionally split into `panels`
//! equal sub-intervals.
double gauss_legendre(const std::function<double(double)>& f,
                      double a,
                      double b,
                      int panels = 1);

//! Tensor-product 64x64 Gauss-Legendre rule on a rectangle.
double gauss_legendre_2d(const std::function<double(double, double)>& f,
                         double ax,
                         double bx,
                         double ay,
                         double by,
                         int panels = 1);

double median(std::span<const double> values);
double mean(std::span<const double> values);

struct LinearFit
{
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

//! Ordinary least squares y = slope * x + intercept.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

//! Surface area of the unit (m-1)-sphere in R^m.
double unit_sphere_area(int m);

} // namespace laplace_limits::numerics
