#pragma once

#include "laplace_limits/graph_core.hpp"
#include "laplace_limits/kernel.hpp"
#include "laplace_limits/laplacian_kind.hpp"
#include "laplace_limits/point_cloud.hpp"
#include "laplace_limits/radius_index.hpp"

#include <memory>
#include <span>
#include <vector>

namespace laplace_limits {

/// Reweighted kernel weights seen from an arbitrary ambient point x.
struct LocalKernel
{
  std::vector<std::size_t> neighbors; // ascending, only j with k_h(|x - X_j|^2) > 0
  std::vector<double> weights;        // k~_{lambda,h}(x, X_j)
  double base_degree = 0.0;           // d_{h,n}(x)
  double degree = 0.0;                // d~_{lambda,h,n}(x)
};

/// Random neighborhood graph built from samples X_1..X_n with the
/// data-dependent weights
///
///   w_ij = k_h(|X_i - X_j|^2) / [d_{h,n}(X_i) d_{h,n}(X_j)]^lambda,
///   k_h(t) = h^{-m} k(t / h^2),  d_{h,n}(x) = (1/n) sum_j k_h(|x - X_j|^2).
///
/// The graph is immutable after build(); every query is const and may be
/// called concurrently. Degrees and averages are accumulated over neighbors
/// in ascending index order with compensated summation, so evaluating the
/// extension at x = X_i reproduces the graph-internal values bit for bit.
class NeighborhoodGraph
{
public:
  /// Throws InvalidArgument for n < 2, h <= 0, m < 1 or non-finite points,
  /// IsolatedVertexError when some X_i has no neighbor within h R_k.
  static NeighborhoodGraph build(PointCloud points, KernelProfile kernel, double h, double lambda, int dim);

  const PointCloud& points() const noexcept { return *points_; }
  const KernelProfile& kernel() const noexcept { return kernel_; }
  double bandwidth() const noexcept { return h_; }
  double lambda() const noexcept { return lambda_; }
  int intrinsic_dim() const noexcept { return m_; }
  std::size_t size() const noexcept { return points_->size(); }

  const WeightedGraph& base_graph() const noexcept { return base_; }
  const WeightedGraph& reweighted_graph() const noexcept { return reweighted_; }
  std::span<const double> base_degrees() const noexcept { return base_.degrees_out(); }
  std::span<const double> reweighted_degrees() const noexcept { return reweighted_.degrees_out(); }
  const RadiusIndex& index() const noexcept { return *index_; }

  /// Throws EmptyNeighborhoodError when no sample lies within h R_k of x.
  LocalKernel local_kernel(std::span<const double> x) const;

private:
  NeighborhoodGraph(std::shared_ptr<const PointCloud> points,
                    KernelProfile kernel,
                    double h,
                    double lambda,
                    int m,
                    std::shared_ptr<const RadiusIndex> index,
                    WeightedGraph base,
                    WeightedGraph reweighted);

  std::shared_ptr<const PointCloud> points_;
  KernelProfile kernel_;
  double h_;
  double lambda_;
  int m_;
  std::shared_ptr<const RadiusIndex> index_;
  WeightedGraph base_;
  WeightedGraph reweighted_;
};

//! Extended degree d~_{lambda,h,n}(x).
double degree_ext(const NeighborhoodGraph& g, std::span<const double> x);

//! (A~ f)(x) = (1/n) sum_j k~(x, X_j) f(X_j).
double average_op(const NeighborhoodGraph& g, std::span<const double> x, const VertexFunction& f_samples);

/// Extended graph Laplacian of the given kind at x, including the 1/h^2
/// factor. `f_at_x` is f(x); at x = X_i pass f_samples[i].
///   rw:     (f(x) - A~f(x) / d~(x)) / h^2
///   unnorm: (d~(x) f(x) - A~f(x)) / h^2
///   norm:   A~g'(x) / (h^2 sqrt(d~(x))),  g'(y) = f(x)/sqrt(d~(x)) - f(y)/sqrt(d~(y))
double apply_laplacian(const NeighborhoodGraph& g,
                       LaplacianKind kind,
                       std::span<const double> x,
                       const VertexFunction& f_samples,
                       double f_at_x);

//! Same as above with a precomputed LocalKernel for x.
double apply_laplacian(const NeighborhoodGraph& g,
                       LaplacianKind kind,
                       const LocalKernel& local,
                       const VertexFunction& f_samples,
                       double f_at_x);

/// <f, Delta^(u) f>_V on the reweighted graph (chi = 1, no 1/h^2 factor).
double dirichlet_energy(const NeighborhoodGraph& g, const VertexFunction& f_samples);

} // namespace laplace_limits
