#include "laplace_limits/numerics.hpp"

#include "laplace_limits/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

namespace laplace_limits::numerics {

namespace {

struct SimpsonState
{
  const std::function<double(double)>& f;
  bool converged = true;
  double error = 0.0;
};

double simpson_recurse(SimpsonState& st,
                       double a,
                       double b,
                       double fa,
                       double fm,
                       double fb,
                       double whole,
                       double tol,
                       int depth)
{
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = st.f(lm);
  const double frm = st.f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) {
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    st.converged = false;
    st.error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_recurse(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

using Rule = boost::math::quadrature::gauss<double, 64>;

// Boost stores the non-negative half of the symmetric 64-point rule.
template<class F>
double gauss_panel(F&& f, double a, double b)
{
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    const double dx = half * abscissa[i];
    if (abscissa[i] == 0.0) {
      sum += weights[i] * f(mid);
    } else {
      sum += weights[i] * (f(mid - dx) + f(mid + dx));
    }
  }
  return half * sum;
}

} // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f,
                                  double a,
                                  double b,
                                  double tolerance,
                                  int max_depth)
{
  if (!(tolerance > 0.0))
    throw InvalidArgument("adaptive_simpson: tolerance must be positive");
  SimpsonState st{f};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  QuadratureResult r;
  r.value = simpson_recurse(st, a, b, fa, fm, fb, whole, tolerance, max_depth);
  r.error_estimate = st.error;
  r.converged = st.converged && std::isfinite(r.value);
  return r;
}

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels)
{
  if (panels < 1)
    throw InvalidArgument("gauss_legendre: panels must be >= 1");
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p)
    total += gauss_panel(f, a + p * width, a + (p + 1) * width);
  return total;
}

double gauss_legendre_2d(const std::function<double(double, double)>& f,
                         double ax,
                         double bx,
                         double ay,
                         double by,
                         int panels)
{
  return gauss_legendre(
    [&](double x) { return gauss_legendre([&](double y) { return f(x, y); }, ay, by, panels); },
    ax,
    bx,
    panels);
}

double median(std::span<const double> values)
{
  if (values.empty())
    return std::numeric_limits<double>::quiet_NaN();
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n % 2 == 1)
    return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double mean(std::span<const double> values)
{
  if (values.empty())
    return std::numeric_limits<double>::quiet_NaN();
  KahanSum s;
  for (double x : values)
    s.add(x);
  return s.value() / static_cast<double>(values.size());
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y)
{
  if (x.size() != y.size())
    throw InvalidArgument("least_squares: x and y differ in length");
  if (x.size() < 2)
    throw InvalidArgument("least_squares: need at least two points");
  const double mx = mean(x);
  const double my = mean(y);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0)
    throw InvalidArgument("least_squares: all x values coincide");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

double unit_sphere_area(int m)
{
  if (m < 1)
    throw InvalidArgument("unit_sphere_area: dimension must be >= 1");
  const double half = 0.5 * m;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

} // namespace laplace_limits::numerics
