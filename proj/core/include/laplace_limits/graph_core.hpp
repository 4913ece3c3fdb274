#pragma once

#include "laplace_limits/laplacian_kind.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace laplace_limits {

/// Vertex functions f in R^V.
using VertexFunction = Eigen::VectorXd;

struct WeightTriplet
{
  std::size_t i;
  std::size_t j;
  double w;
};

/// Weighted, possibly directed graph on n vertices.
///
/// Stored as compressed rows of the positive entries of W (the edge set E),
/// columns ascending. Degrees use the averaged convention
///   d_i^out = (1/n) sum_j w_ij,   d_i^in = (1/n) sum_j w_ji
/// throughout; every operator below keeps that 1/n.
class WeightedGraph
{
public:
  static constexpr std::size_t dense_limit = 2048;

  /// Entries with w = 0 are dropped, negative or non-finite entries rejected.
  /// Throws IsolatedVertexError if d_i^out + d_i^in = 0 for some i.
  static WeightedGraph from_dense(const Eigen::MatrixXd& w);
  /// Duplicate (i, j) pairs are rejected.
  static WeightedGraph from_triplets(std::size_t n, std::vector<WeightTriplet> triplets);

  std::size_t size() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return cols_.size(); }

  std::span<const std::size_t> row_offsets() const noexcept { return offsets_; }
  std::span<const std::size_t> columns() const noexcept { return cols_; }
  std::span<const double> values() const noexcept { return vals_; }
  //! Source vertex of edge e.
  std::size_t edge_source(std::size_t e) const noexcept { return rows_[e]; }

  std::span<const double> degrees_out() const noexcept { return deg_out_; }
  std::span<const double> degrees_in() const noexcept { return deg_in_; }

  //! w_ij, zero if (i, j) is not an edge.
  double weight(std::size_t i, std::size_t j) const;
  bool is_symmetric() const;

  Eigen::MatrixXd to_dense() const;
  std::vector<WeightTriplet> triplets() const;

private:
  WeightedGraph() = default;
  void finalize();

  std::size_t n_ = 0;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> cols_;
  std::vector<std::size_t> rows_;
  std::vector<double> vals_;
  std::vector<double> deg_out_;
  std::vector<double> deg_in_;
};

/// Real values on the edge set E, aligned with WeightedGraph::columns().
struct EdgeFunction
{
  std::vector<double> values;
};

/// The (chi_out, chi_in, gamma, phi) family fixing H(V, chi), H(E, phi) and d.
struct GraphStructure
{
  std::function<double(double)> chi_out;
  std::function<double(double)> chi_in;
  std::function<double(double)> gamma;
  std::function<double(double)> phi;
};

/// Canonical representatives: gamma(w) = sqrt(w), phi = 1 on w > 0,
/// chi(d) = d (rw) or 1 (unnorm). The undirected chi is split evenly,
/// chi_out = chi_in = chi / 2, so chi_l = chi(d_l) on symmetric graphs.
/// Only rw and unnorm have a (gamma, phi, chi) representative.
GraphStructure preset_structure(LaplacianKind kind);

/// Spot-checks chi(0) = phi(0) = 0 and positivity on a sample grid.
bool structure_is_valid(const GraphStructure& s);

//! chi_l = chi_out(d_l^out) + chi_in(d_l^in).
Eigen::VectorXd vertex_weights(const WeightedGraph& g, const GraphStructure& s);

double vertex_inner(const WeightedGraph& g,
                    const GraphStructure& s,
                    const VertexFunction& f,
                    const VertexFunction& h);
double edge_inner(const WeightedGraph& g,
                  const GraphStructure& s,
                  const EdgeFunction& f,
                  const EdgeFunction& h);

//! (df)(e_ij) = gamma(w_ij) (f(j) - f(i)).
EdgeFunction difference(const WeightedGraph& g, const GraphStructure& s, const VertexFunction& f);
//! (df)(e_ij) = gamma(w_ij) (f(j)/sqrt(d_j) - f(i)/sqrt(d_i)), d = out-degree.
EdgeFunction zhou_difference(const WeightedGraph& g, const GraphStructure& s, const VertexFunction& f);
//! The adjoint d* of difference() with respect to vertex_inner / edge_inner.
VertexFunction adjoint(const WeightedGraph& g, const GraphStructure& s, const EdgeFunction& u);

//! Explicit Delta = d* d for (possibly directed) graphs.
VertexFunction laplacian_general(const WeightedGraph& g, const GraphStructure& s, const VertexFunction& f);

// The named Laplacians require a symmetric W.
VertexFunction laplacian_rw(const WeightedGraph& g, const VertexFunction& f);
VertexFunction laplacian_unnorm(const WeightedGraph& g, const VertexFunction& f);
VertexFunction laplacian_norm(const WeightedGraph& g, const VertexFunction& f);
VertexFunction apply_laplacian(const WeightedGraph& g, LaplacianKind kind, const VertexFunction& f);

/// Dense matrix form of a named Laplacian (n <= WeightedGraph::dense_limit).
Eigen::MatrixXd laplacian_matrix(const WeightedGraph& g, LaplacianKind kind);

} // namespace laplace_limits
