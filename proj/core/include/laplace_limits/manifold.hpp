#pragma once

#include "laplace_limits/point_cloud.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace laplace_limits {

/// Coordinate chart u -> i(u) of an m-dimensional submanifold of R^d.
/// The metric is the one induced by the embedding, g = J^T J.
class Chart
{
public:
  virtual ~Chart() = default;

  virtual int dim() const = 0;
  virtual Eigen::VectorXd embed(const Eigen::VectorXd& u) const = 0;
  //! d x m matrix of partial derivatives of embed().
  virtual Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const = 0;
  virtual Eigen::VectorXd coordinates(const Eigen::VectorXd& x) const = 0;
  //! Distance (chart units) from u to the edge of the chart's valid domain.
  virtual double margin(const Eigen::VectorXd& u) const = 0;
};

Eigen::MatrixXd metric_tensor(const Chart& chart, const Eigen::VectorXd& u);

enum class Geometry
{
  flat,
  round_sphere
};

/// A probability measure on a submanifold: charts, density p with respect
/// to the natural volume element dV = sqrt(det g) du, and an i.i.d. sampler.
class ManifoldModel
{
public:
  virtual ~ManifoldModel() = default;

  virtual std::string name() const = 0;
  virtual int intrinsic_dim() const = 0;
  virtual int ambient_dim() const = 0;

  virtual std::size_t chart_count() const = 0;
  virtual const Chart& chart(std::size_t i) const = 0;
  //! Index of the chart in which x sits deepest.
  std::size_t select_chart(const Eigen::VectorXd& x) const;

  //! Distance of x from the manifold in ambient units.
  virtual double off_manifold_distance(const Eigen::VectorXd& x) const = 0;
  //! Density at a point of the manifold (no on-manifold check, see density_eval).
  virtual double density(const Eigen::VectorXd& x) const = 0;
  /// Ambient gradient of a smooth extension of p; only its tangential part is
  /// ever used (contracted with the chart Jacobian).
  virtual Eigen::VectorXd density_gradient(const Eigen::VectorXd& x) const = 0;
  //! Closed-form Laplace-Beltrami operator of the density.
  virtual double density_laplacian(const Eigen::VectorXd& x) const = 0;

  /// n i.i.d. draws; the same seed always yields the same point set.
  virtual PointCloud sample(std::size_t n, std::uint64_t seed) const = 0;

  //! Distance to the boundary; +infinity for manifolds without boundary.
  virtual double boundary_distance(const Eigen::VectorXd& x) const;
  bool interior(const Eigen::VectorXd& x, double margin) const { return boundary_distance(x) > margin; }

  virtual Geometry geometry() const = 0;
  //! Radius of the round sphere (only meaningful for Geometry::round_sphere).
  virtual double sphere_radius() const { return 0.0; }

  //! Fixed deterministic interior evaluation grid used by experiments.
  virtual std::vector<Eigen::VectorXd> evaluation_grid() const = 0;
};

/// Built-in models: box2_uniform, gauss2, sphere_cluster, sphere_uniform.
std::unique_ptr<ManifoldModel> make_model(std::string_view name);
std::vector<std::string> model_names();

//! Density at x after checking that x lies on the manifold (to 1e-9).
double density_eval(const ManifoldModel& model, const Eigen::VectorXd& x);

using ChartFunction = std::function<double(const Eigen::VectorXd&)>;
using AmbientFunction = std::function<double(const Eigen::VectorXd&)>;

inline constexpr double default_fd_step = 1e-4;

/// Laplace-Beltrami operator in divergence form,
///   (1/sqrt(det g)) d_j (sqrt(det g) g^{ij} d_i f),
/// by nested central differences of step `step`. Throws ChartDomainError if
/// the stencil (radius 2 * step) leaves the chart.
double laplace_beltrami_chart(const Chart& chart, const ChartFunction& f, const Eigen::VectorXd& u,
                              double step = default_fd_step);

//! Same, for an ambient function at an ambient point, in the model's best chart.
double laplace_beltrami(const ManifoldModel& model, const AmbientFunction& f, const Eigen::VectorXd& x,
                        double step = default_fd_step);

//! Central-difference chart gradient of f at u.
Eigen::VectorXd chart_gradient(const Chart& chart, const ChartFunction& f, const Eigen::VectorXd& u,
                               double step = default_fd_step);

//! Analytic chart gradient of the density: J^T grad p.
Eigen::VectorXd density_chart_gradient(const ManifoldModel& model, const Chart& chart, const Eigen::VectorXd& u);

//! (s / p) g^{ij} (d_i p)(d_j f) at the ambient point x.
double weighted_gradient_term(const ManifoldModel& model, const AmbientFunction& f, const Eigen::VectorXd& x,
                              double s, double step = default_fd_step);

//! g^{ij} (d_i p)(d_j p) at x.
double density_gradient_norm2(const ManifoldModel& model, const Eigen::VectorXd& x);

} // namespace laplace_limits
