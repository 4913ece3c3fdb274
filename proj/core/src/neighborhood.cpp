#include "laplace_limits/neighborhood.hpp"

#include "laplace_limits/errors.hpp"
#include "laplace_limits/numerics.hpp"

#include <cmath>
#include <sstream>

namespace laplace_limits {

namespace {

double reweight(double base_weight, double degree_a, double degree_b, double lambda)
{
  if (lambda == 0.0)
    return base_weight;
  return base_weight / std::pow(degree_a * degree_b, lambda);
}

} // namespace

NeighborhoodGraph::NeighborhoodGraph(std::shared_ptr<const PointCloud> points,
                                     KernelProfile kernel,
                                     double h,
                                     double lambda,
                                     int m,
                                     std::shared_ptr<const RadiusIndex> index,
                                     WeightedGraph base,
                                     WeightedGraph reweighted)
  : points_(std::move(points))
  , kernel_(std::move(kernel))
  , h_(h)
  , lambda_(lambda)
  , m_(m)
  , index_(std::move(index))
  , base_(std::move(base))
  , reweighted_(std::move(reweighted))
{}

NeighborhoodGraph NeighborhoodGraph::build(PointCloud points, KernelProfile kernel, double h, double lambda, int dim)
{
  if (points.size() < 2)
    throw InvalidArgument("build_graph: need at least 2 points, got " + std::to_string(points.size()));
  if (!(h > 0.0) || !std::isfinite(h))
    throw InvalidArgument("build_graph: bandwidth h must be positive and finite");
  if (!std::isfinite(lambda))
    throw InvalidArgument("build_graph: lambda must be finite");
  if (dim < 1)
    throw InvalidArgument("build_graph: intrinsic dimension must be >= 1");
  for (double c : points.coordinates()) {
    if (!std::isfinite(c))
      throw InvalidArgument("build_graph: point coordinates must be finite");
  }

  auto shared_points = std::make_shared<const PointCloud>(std::move(points));
  const PointCloud& pts = *shared_points;
  auto index = std::make_shared<const RadiusIndex>(pts, h * kernel.support_radius);

  const std::size_t n = pts.size();
  std::vector<WeightTriplet> triplets;
  std::vector<std::size_t> nbrs;
  for (std::size_t i = 0; i < n; ++i) {
    index->query(pts[i], nbrs);
    for (std::size_t j : nbrs) {
      if (j == i)
        continue;
      const double w = scaled_eval(kernel, h, dim, squared_distance(pts[i], pts[j]));
      if (w > 0.0)
        triplets.push_back({i, j, w});
    }
  }

  WeightedGraph base = WeightedGraph::from_triplets(n, triplets);
  WeightedGraph reweighted = base;
  if (lambda != 0.0) {
    const auto d = base.degrees_out();
    for (auto& t : triplets)
      t.w = reweight(t.w, d[t.i], d[t.j], lambda);
    reweighted = WeightedGraph::from_triplets(n, std::move(triplets));
  }
  return NeighborhoodGraph(std::move(shared_points),
                           std::move(kernel),
                           h,
                           lambda,
                           dim,
                           std::move(index),
                           std::move(base),
                           std::move(reweighted));
}

LocalKernel NeighborhoodGraph::local_kernel(std::span<const double> x) const
{
  if (x.size() != points_->dim())
    throw InvalidArgument("local_kernel: point dimension does not match the samples");
  LocalKernel out;
  std::vector<std::size_t> candidates;
  index_->query(x, candidates);

  std::vector<double> base_weights;
  numerics::KahanSum base_sum;
  for (std::size_t j : candidates) {
    const double w = scaled_eval(kernel_, h_, m_, squared_distance(x, (*points_)[j]));
    if (w > 0.0) {
      out.neighbors.push_back(j);
      base_weights.push_back(w);
      base_sum.add(w);
    }
  }
  const double n = static_cast<double>(points_->size());
  out.base_degree = base_sum.value() / n;
  if (!(out.base_degree > 0.0)) {
    std::ostringstream msg;
    msg << "empty neighborhood: no sample within h*R_k = " << h_ * kernel_.support_radius << " of (";
    for (std::size_t k = 0; k < x.size(); ++k)
      msg << (k ? ", " : "") << x[k];
    msg << ")";
    throw EmptyNeighborhoodError(msg.str());
  }

  const auto d = base_degrees();
  out.weights.resize(base_weights.size());
  numerics::KahanSum degree_sum;
  for (std::size_t k = 0; k < base_weights.size(); ++k) {
    out.weights[k] = reweight(base_weights[k], out.base_degree, d[out.neighbors[k]], lambda_);
    degree_sum.add(out.weights[k]);
  }
  out.degree = degree_sum.value() / n;
  return out;
}

double degree_ext(const NeighborhoodGraph& g, std::span<const double> x)
{
  return g.local_kernel(x).degree;
}

double average_op(const NeighborhoodGraph& g, std::span<const double> x, const VertexFunction& f_samples)
{
  if (static_cast<std::size_t>(f_samples.size()) != g.size())
    throw InvalidArgument("average_op: sample function length does not match the graph");
  const LocalKernel local = g.local_kernel(x);
  numerics::KahanSum s;
  for (std::size_t k = 0; k < local.neighbors.size(); ++k)
    s.add(local.weights[k] * f_samples[static_cast<Eigen::Index>(local.neighbors[k])]);
  return s.value() / static_cast<double>(g.size());
}

double apply_laplacian(const NeighborhoodGraph& g,
                       LaplacianKind kind,
                       std::span<const double> x,
                       const VertexFunction& f_samples,
                       double f_at_x)
{
  return apply_laplacian(g, kind, g.local_kernel(x), f_samples, f_at_x);
}

double apply_laplacian(const NeighborhoodGraph& g,
                       LaplacianKind kind,
                       const LocalKernel& local,
                       const VertexFunction& f_samples,
                       double f_at_x)
{
  if (static_cast<std::size_t>(f_samples.size()) != g.size())
    throw InvalidArgument("apply_laplacian: sample function length does not match the graph");
  const double n = static_cast<double>(g.size());
  const double h2 = g.bandwidth() * g.bandwidth();

  if (kind == LaplacianKind::norm) {
    const auto dn = g.reweighted_degrees();
    const double sqrt_dx = std::sqrt(local.degree);
    numerics::KahanSum s;
    for (std::size_t k = 0; k < local.neighbors.size(); ++k) {
      const std::size_t j = local.neighbors[k];
      if (!(dn[j] > 0.0))
        throw EmptyNeighborhoodError("apply_laplacian(norm): zero extended degree at sample " +
                                     std::to_string(j));
      s.add(local.weights[k] * (f_at_x / sqrt_dx - f_samples[static_cast<Eigen::Index>(j)] / std::sqrt(dn[j])));
    }
    return (s.value() / n) / (h2 * sqrt_dx);
  }

  numerics::KahanSum s;
  for (std::size_t k = 0; k < local.neighbors.size(); ++k)
    s.add(local.weights[k] * f_samples[static_cast<Eigen::Index>(local.neighbors[k])]);
  const double avg = s.value() / n;
  if (kind == LaplacianKind::rw)
    return (f_at_x - avg / local.degree) / h2;
  return (local.degree * f_at_x - avg) / h2;
}

double dirichlet_energy(const NeighborhoodGraph& g, const VertexFunction& f_samples)
{
  const auto& w = g.reweighted_graph();
  return vertex_inner(w, preset_structure(LaplacianKind::unnorm), f_samples, laplacian_unnorm(w, f_samples));
}

} // namespace laplace_limits
