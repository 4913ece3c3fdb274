#pragma once

#include "laplace_limits/kernel.hpp"
#include "laplace_limits/laplacian_kind.hpp"
#include "laplace_limits/manifold.hpp"

namespace laplace_limits {

/// Parameters of a continuum limit. s = 2 (1 - lambda) is always derived.
class LimitSpec
{
public:
  LimitSpec(const ManifoldModel& model, KernelMoments moments, double lambda, double fd_step = default_fd_step);

  const ManifoldModel& model() const noexcept { return *model_; }
  const KernelMoments& moments() const noexcept { return moments_; }
  double lambda() const noexcept { return lambda_; }
  double s() const noexcept { return 2.0 * (1.0 - lambda_); }
  double fd_step() const noexcept { return fd_step_; }

private:
  const ManifoldModel* model_;
  KernelMoments moments_;
  double lambda_;
  double fd_step_;
};

/// Delta_s f = Delta_M f + (s/p) <grad p, grad f> at the ambient point x.
double weighted_laplacian(const ManifoldModel& model, const AmbientFunction& f, const Eigen::VectorXd& x, double s,
                          double step = default_fd_step);

//! -(C2 / 2 C1) Delta_s f
double limit_rw(const LimitSpec& spec, const AmbientFunction& f, const Eigen::VectorXd& x);
//! -(C2 / 2 C1^{2 lambda}) p^{1 - 2 lambda} Delta_s f
double limit_unnorm(const LimitSpec& spec, const AmbientFunction& f, const Eigen::VectorXd& x);

struct NormalizedLimit
{
  double composed = 0.0; // -(C2/2C1) p^a Delta_s (f / p^a),  a = 1/2 - lambda
  double expanded = 0.0; // -(C2/2C1) [Delta f + <grad p, grad f>/p - a^2 f |grad p|^2/p^2 - a f Delta p / p]
};

NormalizedLimit limit_norm_paths(const LimitSpec& spec, const AmbientFunction& f, const Eigen::VectorXd& x);
//! The composed form of the normalized limit.
double limit_norm(const LimitSpec& spec, const AmbientFunction& f, const Eigen::VectorXd& x);

double limit(const LimitSpec& spec, LaplacianKind kind, const AmbientFunction& f, const Eigen::VectorXd& x);

/// Curvature term S = (1/2)[-R + (1/2)|sum_a Pi(d_a, d_a)|^2] of the round
/// m-sphere of radius r: R = m(m-1)/r^2, |sum Pi|^2 = m^2/r^2.
double curvature_term_sphere(double radius, int m);

struct ConvolutionExpansion
{
  double quadrature = 0.0;         // 64x64 Gauss-Legendre over the support patch
  double quadrature_refined = 0.0; // same rule on 2x2 panels
  double expansion = 0.0;          // C1 p f + (h^2/2) C2 (p f S + Delta_M(p f))
  double residual = 0.0;           // quadrature_refined - expansion
  bool converged = true;
};

/// int_M k_h(|x - y|^2) f(y) p(y) dV(y) by quadrature in geodesic polar
/// coordinates about x, against its second-order small-h expansion.
/// Flat and round-sphere models only.
ConvolutionExpansion convolution_expansion(const ManifoldModel& model,
                                           const KernelProfile& kernel,
                                           const AmbientFunction& f,
                                           const Eigen::VectorXd& x,
                                           double h);

} // namespace laplace_limits
