#include "laplace_limits/oracle.hpp"

#include "laplace_limits/errors.hpp"
#include "laplace_limits/numerics.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>

namespace laplace_limits {

LimitSpec::LimitSpec(const ManifoldModel& model, KernelMoments moments, double lambda, double fd_step)
  : model_(&model)
  , moments_(moments)
  , lambda_(lambda)
  , fd_step_(fd_step)
{
  if (!std::isfinite(lambda))
    throw InvalidArgument("LimitSpec: lambda must be finite");
  if (moments.dimension != model.intrinsic_dim())
    throw InvalidArgument("LimitSpec: kernel moments were computed for m = " + std::to_string(moments.dimension) +
                          " but the model has intrinsic dimension " + std::to_string(model.intrinsic_dim()));
}

double weighted_laplacian(const ManifoldModel& model, const AmbientFunction& f, const Eigen::VectorXd& x, double s,
                          double step)
{
  return laplace_beltrami(model, f, x, step) + weighted_gradient_term(model, f, x, s, step);
}

double limit_rw(const LimitSpec& spec, const AmbientFunction& f, const Eigen::VectorXd& x)
{
  const auto& c = spec.moments();
  return -(c.c2 / (2.0 * c.c1)) * weighted_laplacian(spec.model(), f, x, spec.s(), spec.fd_step());
}

double limit_unnorm(const LimitSpec& spec, const AmbientFunction& f, const Eigen::VectorXd& x)
{
  const auto& c = spec.moments();
  const double lambda = spec.lambda();
  const double p = spec.model().density(x);
  return -(c.c2 / (2.0 * std::pow(c.c1, 2.0 * lambda))) * std::pow(p, 1.0 - 2.0 * lambda) *
         weighted_laplacian(spec.model(), f, x, spec.s(), spec.fd_step());
}

NormalizedLimit limit_norm_paths(const LimitSpec& spec, const AmbientFunction& f, const Eigen::VectorXd& x)
{
  const auto& model = spec.model();
  const auto& c = spec.moments();
  const double scale = -(c.c2 / (2.0 * c.c1));
  const double a = 0.5 - spec.lambda();
  const double p = model.density(x);
  if (!(p > 0.0))
    throw DataError("limit_norm: density must be positive at the evaluation point");

  NormalizedLimit out;
  const AmbientFunction conjugated = [&](const Eigen::VectorXd& y) { return f(y) / std::pow(model.density(y), a); };
  out.composed = scale * std::pow(p, a) * weighted_laplacian(model, conjugated, x, spec.s(), spec.fd_step());

  const double fx = f(x);
  const double lap_f = laplace_beltrami(model, f, x, spec.fd_step());
  const double drift = weighted_gradient_term(model, f, x, 1.0, spec.fd_step());
  const double grad_p2 = density_gradient_norm2(model, x);
  const double lap_p = model.density_laplacian(x);
  out.expanded = scale * (lap_f + drift - a * a * fx * grad_p2 / (p * p) - a * fx * lap_p / p);
  return out;
}

double limit_norm(const LimitSpec& spec, const AmbientFunction& f, const Eigen::VectorXd& x)
{
  return limit_norm_paths(spec, f, x).composed;
}

double limit(const LimitSpec& spec, LaplacianKind kind, const AmbientFunction& f, const Eigen::VectorXd& x)
{
  switch (kind) {
    case LaplacianKind::rw:
      return limit_rw(spec, f, x);
    case LaplacianKind::unnorm:
      return limit_unnorm(spec, f, x);
    case LaplacianKind::norm:
      return limit_norm(spec, f, x);
  }
  throw InvalidArgument("limit: unknown kind");
}

double curvature_term_sphere(double radius, int m)
{
  if (!(radius > 0.0))
    throw InvalidArgument("curvature_term_sphere: radius must be > 0");
  if (m < 1)
    throw InvalidArgument("curvature_term_sphere: dimension must be >= 1");
  if (std::isinf(radius))
    return 0.0;
  const double r2 = radius * radius;
  const double scalar_curvature = m * (m - 1) / r2;
  const double mean_curvature2 = static_cast<double>(m) * m / r2;
  return 0.5 * (-scalar_curvature + 0.5 * mean_curvature2);
}

ConvolutionExpansion convolution_expansion(const ManifoldModel& model,
                                           const KernelProfile& kernel,
                                           const AmbientFunction& f,
                                           const Eigen::VectorXd& x,
                                           double h)
{
  if (!(h > 0.0))
    throw InvalidArgument("convolution_expansion: h must be > 0");
  if (model.intrinsic_dim() != 2)
    throw InvalidArgument("convolution_expansion: only two-dimensional models are supported");
  const int m = model.intrinsic_dim();
  const double reach = h * kernel.support_radius;
  if (!model.interior(x, reach))
    throw ChartDomainError("convolution_expansion: kernel support around x reaches the boundary");

  const auto moments_m = moments(kernel, m);
  const double two_pi = 2.0 * std::numbers::pi;
  auto integrand_weight = [&](const Eigen::VectorXd& y, double sq_chord) {
    return scaled_eval(kernel, h, m, sq_chord) * f(y) * model.density(y);
  };

  std::function<double(double, double)> integrand;
  double radial_extent = 0.0;
  double curvature = 0.0;

  if (model.geometry() == Geometry::flat) {
    radial_extent = reach;
    integrand = [&](double r, double psi) {
      Eigen::VectorXd y = x;
      y[0] += r * std::cos(psi);
      y[1] += r * std::sin(psi);
      return integrand_weight(y, r * r) * r;
    };
  } else {
    const double rs = model.sphere_radius();
    if (reach >= 2.0 * rs)
      throw ChartDomainError("convolution_expansion: kernel support covers the whole sphere");
    curvature = curvature_term_sphere(rs, m);
    radial_extent = 2.0 * rs * std::asin(reach / (2.0 * rs));
    // Orthonormal tangent frame at x.
    const Eigen::Vector3d n = Eigen::Vector3d(x[0], x[1], x[2]).normalized();
    Eigen::Vector3d helper = std::abs(n[0]) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    const Eigen::Vector3d e1 = (helper - helper.dot(n) * n).normalized();
    const Eigen::Vector3d e2 = n.cross(e1);
    integrand = [&, rs, n, e1, e2](double rho, double psi) {
      const double angle = rho / rs;
      const Eigen::Vector3d y3 = rs * (std::cos(angle) * n + std::sin(angle) * (std::cos(psi) * e1 + std::sin(psi) * e2));
      const double half_chord = rs * std::sin(0.5 * angle);
      Eigen::VectorXd y(3);
      y << y3[0], y3[1], y3[2];
      return integrand_weight(y, 4.0 * half_chord * half_chord) * rs * std::sin(angle);
    };
  }

  ConvolutionExpansion out;
  out.quadrature = numerics::gauss_legendre_2d(integrand, 0.0, radial_extent, 0.0, two_pi, 1);
  out.quadrature_refined = numerics::gauss_legendre_2d(integrand, 0.0, radial_extent, 0.0, two_pi, 2);
  out.converged = std::abs(out.quadrature_refined - out.quadrature) <=
                  1e-10 * std::max(1.0, std::abs(out.quadrature_refined));

  const double p = model.density(x);
  const double fx = f(x);
  const double lap_pf =
    laplace_beltrami(model, [&](const Eigen::VectorXd& y) { return model.density(y) * f(y); }, x);
  out.expansion = moments_m.c1 * p * fx + 0.5 * h * h * moments_m.c2 * (p * fx * curvature + lap_pf);
  out.residual = out.quadrature_refined - out.expansion;
  return out;
}

} // namespace laplace_limits
