#include "laplace_limits/graph_core.hpp"

#include "laplace_limits/errors.hpp"
#include "laplace_limits/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace laplace_limits {

namespace {

void check_length(const WeightedGraph& g, const Eigen::VectorXd& f, const char* what)
{
  if (static_cast<std::size_t>(f.size()) != g.size())
    throw InvalidArgument(std::string(what) + ": vertex function has length " + std::to_string(f.size()) +
                          ", graph has " + std::to_string(g.size()) + " vertices");
}

void check_edges(const WeightedGraph& g, const EdgeFunction& u, const char* what)
{
  if (u.values.size() != g.edge_count())
    throw InvalidArgument(std::string(what) + ": edge function has " + std::to_string(u.values.size()) +
                          " values, graph has " + std::to_string(g.edge_count()) + " edges");
}

void require_symmetric(const WeightedGraph& g, const char* what)
{
  if (!g.is_symmetric())
    throw InvalidArgument(std::string(what) + " requires a symmetric weight matrix");
}

void require_positive_degrees(const WeightedGraph& g, const char* what)
{
  const auto d = g.degrees_out();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(d[i] > 0.0))
      throw DataError(std::string(what) + ": zero degree at vertex " + std::to_string(i));
  }
}

// (1/n) sum_j w_ij f_j for every row i.
Eigen::VectorXd averaged_product(const WeightedGraph& g, const Eigen::VectorXd& f)
{
  const auto off = g.row_offsets();
  const auto cols = g.columns();
  const auto vals = g.values();
  const double n = static_cast<double>(g.size());
  Eigen::VectorXd out(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    numerics::KahanSum s;
    for (std::size_t e = off[i]; e < off[i + 1]; ++e)
      s.add(vals[e] * f[static_cast<Eigen::Index>(cols[e])]);
    out[static_cast<Eigen::Index>(i)] = s.value() / n;
  }
  return out;
}

} // namespace

WeightedGraph WeightedGraph::from_dense(const Eigen::MatrixXd& w)
{
  if (w.rows() != w.cols())
    throw InvalidArgument("WeightedGraph::from_dense: matrix must be square");
  std::vector<WeightTriplet> t;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (w(i, j) != 0.0)
        t.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), w(i, j)});
    }
  }
  return from_triplets(static_cast<std::size_t>(w.rows()), std::move(t));
}

WeightedGraph WeightedGraph::from_triplets(std::size_t n, std::vector<WeightTriplet> triplets)
{
  if (n == 0)
    throw InvalidArgument("WeightedGraph: graph needs at least one vertex");
  for (const auto& t : triplets) {
    if (t.i >= n || t.j >= n)
      throw InvalidArgument("WeightedGraph: edge index out of range");
    if (!std::isfinite(t.w) || t.w < 0.0)
      throw InvalidArgument("WeightedGraph: weights must be finite and non-negative");
  }
  std::erase_if(triplets, [](const WeightTriplet& t) { return t.w == 0.0; });
  std::sort(triplets.begin(), triplets.end(), [](const WeightTriplet& a, const WeightTriplet& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  for (std::size_t k = 1; k < triplets.size(); ++k) {
    if (triplets[k].i == triplets[k - 1].i && triplets[k].j == triplets[k - 1].j)
      throw InvalidArgument("WeightedGraph: duplicate edge (" + std::to_string(triplets[k].i) + ", " +
                            std::to_string(triplets[k].j) + ")");
  }

  WeightedGraph g;
  g.n_ = n;
  g.offsets_.assign(n + 1, 0);
  g.cols_.reserve(triplets.size());
  g.rows_.reserve(triplets.size());
  g.vals_.reserve(triplets.size());
  for (const auto& t : triplets) {
    ++g.offsets_[t.i + 1];
    g.cols_.push_back(t.j);
    g.rows_.push_back(t.i);
    g.vals_.push_back(t.w);
  }
  for (std::size_t i = 0; i < n; ++i)
    g.offsets_[i + 1] += g.offsets_[i];
  g.finalize();
  return g;
}

void WeightedGraph::finalize()
{
  const double n = static_cast<double>(n_);
  deg_out_.assign(n_, 0.0);
  deg_in_.assign(n_, 0.0);
  std::vector<numerics::KahanSum> in_sums(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    numerics::KahanSum s;
    for (std::size_t e = offsets_[i]; e < offsets_[i + 1]; ++e) {
      s.add(vals_[e]);
      in_sums[cols_[e]].add(vals_[e]);
    }
    deg_out_[i] = s.value() / n;
  }
  for (std::size_t i = 0; i < n_; ++i)
    deg_in_[i] = in_sums[i].value() / n;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!(deg_out_[i] + deg_in_[i] > 0.0))
      throw IsolatedVertexError(i);
  }
}

double WeightedGraph::weight(std::size_t i, std::size_t j) const
{
  if (i >= n_ || j >= n_)
    throw InvalidArgument("WeightedGraph::weight: index out of range");
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j)
    return 0.0;
  return vals_[static_cast<std::size_t>(it - cols_.begin())];
}

bool WeightedGraph::is_symmetric() const
{
  for (std::size_t e = 0; e < cols_.size(); ++e) {
    if (weight(cols_[e], rows_[e]) != vals_[e])
      return false;
  }
  return true;
}

Eigen::MatrixXd WeightedGraph::to_dense() const
{
  if (n_ > dense_limit)
    throw InvalidArgument("WeightedGraph::to_dense: graph exceeds the dense size limit");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
  for (std::size_t e = 0; e < cols_.size(); ++e)
    w(static_cast<Eigen::Index>(rows_[e]), static_cast<Eigen::Index>(cols_[e])) = vals_[e];
  return w;
}

std::vector<WeightTriplet> WeightedGraph::triplets() const
{
  std::vector<WeightTriplet> out;
  out.reserve(cols_.size());
  for (std::size_t e = 0; e < cols_.size(); ++e)
    out.push_back({rows_[e], cols_[e], vals_[e]});
  return out;
}

GraphStructure preset_structure(LaplacianKind kind)
{
  GraphStructure s;
  s.gamma = [](double w) { return std::sqrt(w); };
  s.phi = [](double w) { return w > 0.0 ? 1.0 : 0.0; };
  switch (kind) {
    case LaplacianKind::rw:
      s.chi_out = [](double d) { return 0.5 * d; };
      s.chi_in = [](double d) { return 0.5 * d; };
      break;
    case LaplacianKind::unnorm:
      s.chi_out = [](double d) { return d > 0.0 ? 0.5 : 0.0; };
      s.chi_in = [](double d) { return d > 0.0 ? 0.5 : 0.0; };
      break;
    case LaplacianKind::norm:
      throw InvalidArgument("preset_structure: the normalized Laplacian uses the degree-scaled difference "
                            "operator and has no (gamma, phi, chi) preset");
  }
  return s;
}

bool structure_is_valid(const GraphStructure& s)
{
  if (!s.chi_out || !s.chi_in || !s.gamma || !s.phi)
    return false;
  if (s.chi_out(0.0) != 0.0 || s.chi_in(0.0) != 0.0 || s.phi(0.0) != 0.0)
    return false;
  for (double x = 1e-6; x < 1e6; x *= 3.7) {
    if (!(s.chi_out(x) > 0.0) || !(s.chi_in(x) > 0.0) || !(s.gamma(x) > 0.0) || !(s.phi(x) > 0.0))
      return false;
  }
  return true;
}

Eigen::VectorXd vertex_weights(const WeightedGraph& g, const GraphStructure& s)
{
  const auto dout = g.degrees_out();
  const auto din = g.degrees_in();
  Eigen::VectorXd chi(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    chi[static_cast<Eigen::Index>(i)] = s.chi_out(dout[i]) + s.chi_in(din[i]);
  return chi;
}

double vertex_inner(const WeightedGraph& g, const GraphStructure& s, const VertexFunction& f, const VertexFunction& h)
{
  check_length(g, f, "vertex_inner");
  check_length(g, h, "vertex_inner");
  const Eigen::VectorXd chi = vertex_weights(g, s);
  numerics::KahanSum sum;
  for (Eigen::Index i = 0; i < f.size(); ++i)
    sum.add(f[i] * h[i] * chi[i]);
  return sum.value() / static_cast<double>(g.size());
}

double edge_inner(const WeightedGraph& g, const GraphStructure& s, const EdgeFunction& f, const EdgeFunction& h)
{
  check_edges(g, f, "edge_inner");
  check_edges(g, h, "edge_inner");
  const auto w = g.values();
  numerics::KahanSum sum;
  for (std::size_t e = 0; e < w.size(); ++e)
    sum.add(f.values[e] * h.values[e] * s.phi(w[e]));
  const double n = static_cast<double>(g.size());
  return sum.value() / (2.0 * n * n);
}

EdgeFunction difference(const WeightedGraph& g, const GraphStructure& s, const VertexFunction& f)
{
  check_length(g, f, "difference");
  const auto cols = g.columns();
  const auto w = g.values();
  EdgeFunction out{std::vector<double>(w.size())};
  for (std::size_t e = 0; e < w.size(); ++e) {
    const auto i = static_cast<Eigen::Index>(g.edge_source(e));
    const auto j = static_cast<Eigen::Index>(cols[e]);
    out.values[e] = s.gamma(w[e]) * (f[j] - f[i]);
  }
  return out;
}

EdgeFunction zhou_difference(const WeightedGraph& g, const GraphStructure& s, const VertexFunction& f)
{
  check_length(g, f, "zhou_difference");
  require_positive_degrees(g, "zhou_difference");
  const auto d = g.degrees_out();
  const auto cols = g.columns();
  const auto w = g.values();
  EdgeFunction out{std::vector<double>(w.size())};
  for (std::size_t e = 0; e < w.size(); ++e) {
    const std::size_t i = g.edge_source(e);
    const std::size_t j = cols[e];
    out.values[e] = s.gamma(w[e]) * (f[static_cast<Eigen::Index>(j)] / std::sqrt(d[j]) -
                                     f[static_cast<Eigen::Index>(i)] / std::sqrt(d[i]));
  }
  return out;
}

VertexFunction adjoint(const WeightedGraph& g, const GraphStructure& s, const EdgeFunction& u)
{
  check_edges(g, u, "adjoint");
  const Eigen::VectorXd chi = vertex_weights(g, s);
  const auto cols = g.columns();
  const auto w = g.values();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.size()));
  for (std::size_t e = 0; e < w.size(); ++e) {
    const double t = s.gamma(w[e]) * u.values[e] * s.phi(w[e]);
    acc[static_cast<Eigen::Index>(cols[e])] += t;
    acc[static_cast<Eigen::Index>(g.edge_source(e))] -= t;
  }
  const double n = static_cast<double>(g.size());
  for (Eigen::Index l = 0; l < acc.size(); ++l) {
    if (!(chi[l] > 0.0))
      throw DataError("adjoint: vertex weight chi vanishes at vertex " + std::to_string(l));
    acc[l] /= 2.0 * chi[l] * n;
  }
  return acc;
}

VertexFunction laplacian_general(const WeightedGraph& g, const GraphStructure& s, const VertexFunction& f)
{
  check_length(g, f, "laplacian_general");
  const Eigen::VectorXd chi = vertex_weights(g, s);
  const auto cols = g.columns();
  const auto w = g.values();
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.size()));
  for (std::size_t e = 0; e < w.size(); ++e) {
    const double gm = s.gamma(w[e]);
    const double c = gm * gm * s.phi(w[e]);
    const auto i = static_cast<Eigen::Index>(g.edge_source(e));
    const auto j = static_cast<Eigen::Index>(cols[e]);
    acc[j] += c * (f[j] - f[i]);
    acc[i] += c * (f[i] - f[j]);
  }
  const double n = static_cast<double>(g.size());
  for (Eigen::Index l = 0; l < acc.size(); ++l) {
    if (!(chi[l] > 0.0))
      throw DataError("laplacian_general: vertex weight chi vanishes at vertex " + std::to_string(l));
    acc[l] /= 2.0 * chi[l] * n;
  }
  return acc;
}

VertexFunction laplacian_rw(const WeightedGraph& g, const VertexFunction& f)
{
  check_length(g, f, "laplacian_rw");
  require_symmetric(g, "laplacian_rw");
  require_positive_degrees(g, "laplacian_rw");
  const auto d = g.degrees_out();
  const Eigen::VectorXd avg = averaged_product(g, f);
  Eigen::VectorXd out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i)
    out[i] = f[i] - avg[i] / d[static_cast<std::size_t>(i)];
  return out;
}

VertexFunction laplacian_unnorm(const WeightedGraph& g, const VertexFunction& f)
{
  check_length(g, f, "laplacian_unnorm");
  require_symmetric(g, "laplacian_unnorm");
  const auto d = g.degrees_out();
  const Eigen::VectorXd avg = averaged_product(g, f);
  Eigen::VectorXd out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i)
    out[i] = d[static_cast<std::size_t>(i)] * f[i] - avg[i];
  return out;
}

VertexFunction laplacian_norm(const WeightedGraph& g, const VertexFunction& f)
{
  check_length(g, f, "laplacian_norm");
  require_symmetric(g, "laplacian_norm");
  require_positive_degrees(g, "laplacian_norm");
  const auto d = g.degrees_out();
  Eigen::VectorXd scaled(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i)
    scaled[i] = f[i] / std::sqrt(d[static_cast<std::size_t>(i)]);
  const Eigen::VectorXd avg = averaged_product(g, scaled);
  Eigen::VectorXd out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i)
    out[i] = f[i] - avg[i] / std::sqrt(d[static_cast<std::size_t>(i)]);
  return out;
}

VertexFunction apply_laplacian(const WeightedGraph& g, LaplacianKind kind, const VertexFunction& f)
{
  switch (kind) {
    case LaplacianKind::rw:
      return laplacian_rw(g, f);
    case LaplacianKind::unnorm:
      return laplacian_unnorm(g, f);
    case LaplacianKind::norm:
      return laplacian_norm(g, f);
  }
  throw InvalidArgument("apply_laplacian: unknown kind");
}

Eigen::MatrixXd laplacian_matrix(const WeightedGraph& g, LaplacianKind kind)
{
  require_symmetric(g, "laplacian_matrix");
  const Eigen::MatrixXd w = g.to_dense() / static_cast<double>(g.size());
  const Eigen::Map<const Eigen::VectorXd> d(g.degrees_out().data(), static_cast<Eigen::Index>(g.size()));
  const auto n = static_cast<Eigen::Index>(g.size());
  switch (kind) {
    case LaplacianKind::rw:
      require_positive_degrees(g, "laplacian_matrix");
      return Eigen::MatrixXd::Identity(n, n) - d.cwiseInverse().asDiagonal() * w;
    case LaplacianKind::unnorm:
      return Eigen::MatrixXd(d.asDiagonal()) - w;
    case LaplacianKind::norm: {
      require_positive_degrees(g, "laplacian_matrix");
      const Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();
      return Eigen::MatrixXd::Identity(n, n) - s.asDiagonal() * w * s.asDiagonal();
    }
  }
  throw InvalidArgument("laplacian_matrix: unknown kind");
}

} // namespace laplace_limits
