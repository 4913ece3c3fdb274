#include "laplace_limits/errors.hpp"
#include "laplace_limits/manifold.hpp"
#include "laplace_limits/neighborhood.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace laplace_limits;

namespace {

PointCloud three_points(double third = 0.9)
{
  return PointCloud(1, {0.0, 0.5, third});
}

std::span<const double> at(const NeighborhoodGraph& g, std::size_t i)
{
  return g.points()[i];
}

PointCloud random_cloud(std::mt19937_64& rng, std::size_t n, std::size_t dim, double spread)
{
  std::uniform_real_distribution<double> u(-spread, spread);
  PointCloud pts(dim);
  std::vector<double> p(dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& c : p)
      c = u(rng);
    pts.push_back(p);
  }
  return pts;
}

double max_abs(const Eigen::VectorXd& v)
{
  return v.cwiseAbs().maxCoeff();
}

} // namespace

TEST(Neighborhood, ThreePointExample)
{
  const auto g = NeighborhoodGraph::build(three_points(), cubic_taper(), 1.0, 0.0, 1);
  const auto& w = g.base_graph();
  EXPECT_NEAR(w.weight(0, 1), 0.421875, 1e-15);
  EXPECT_NEAR(w.weight(0, 2), 0.006859, 1e-15);
  EXPECT_NEAR(w.weight(1, 2), 0.592704, 1e-15);
  EXPECT_NEAR(g.base_degrees()[0], (0.421875 + 0.006859) / 3.0, 1e-15);
  EXPECT_NEAR(g.base_degrees()[0], 0.142911, 1e-6);
  EXPECT_TRUE(w.is_symmetric());
  EXPECT_EQ(w.weight(0, 0), 0.0);
}

TEST(Neighborhood, IsolatedVertexError)
{
  try {
    NeighborhoodGraph::build(three_points(2.0), cubic_taper(), 1.0, 0.0, 1);
    FAIL() << "expected IsolatedVertexError";
  } catch (const IsolatedVertexError& e) {
    EXPECT_EQ(e.index(), 2u);
  }
}

TEST(Neighborhood, RejectsBadParameters)
{
  EXPECT_THROW(NeighborhoodGraph::build(three_points(), cubic_taper(), 0.0, 0.0, 1), InvalidArgument);
  EXPECT_THROW(NeighborhoodGraph::build(three_points(), cubic_taper(), -1.0, 0.0, 1), InvalidArgument);
  EXPECT_THROW(NeighborhoodGraph::build(three_points(), cubic_taper(), 1.0, 0.0, 0), InvalidArgument);
  EXPECT_THROW(NeighborhoodGraph::build(PointCloud(1, {0.0}), cubic_taper(), 1.0, 0.0, 1), InvalidArgument);
}

TEST(Neighborhood, LambdaZeroReweightedIsBaseBitForBit)
{
  std::mt19937_64 rng(31);
  const auto g = NeighborhoodGraph::build(random_cloud(rng, 200, 2, 1.0), cubic_taper(), 0.5, 0.0, 2);
  const auto a = g.base_graph().values();
  const auto b = g.reweighted_graph().values();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t e = 0; e < a.size(); ++e)
    EXPECT_EQ(a[e], b[e]);
}

TEST(Neighborhood, ReweightedSymmetricAndSparsityWithinSupport)
{
  std::mt19937_64 rng(32);
  for (double lambda : {0.5, 1.0, 2.0}) {
    const auto g = NeighborhoodGraph::build(random_cloud(rng, 150, 2, 1.0), cubic_taper(), 0.6, lambda, 2);
    const auto& rw = g.reweighted_graph();
    EXPECT_TRUE(rw.is_symmetric());
    for (const auto& t : rw.triplets()) {
      EXPECT_EQ(t.w, rw.weight(t.j, t.i));
      EXPECT_LE(squared_distance(g.points()[t.i], g.points()[t.j]), 0.36);
      EXPECT_NE(t.i, t.j);
      const double expected = g.base_graph().weight(t.i, t.j) /
                              std::pow(g.base_degrees()[t.i] * g.base_degrees()[t.j], lambda);
      EXPECT_NEAR(t.w, expected, 1e-14 * expected);
    }
  }
}

TEST(Neighborhood, SparsityMatchesBruteForce)
{
  std::mt19937_64 rng(33);
  const auto pts = random_cloud(rng, 250, 3, 1.0);
  const double h = 0.6;
  const auto g = NeighborhoodGraph::build(pts, cubic_taper(), h, 0.0, 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      const double w = i == j ? 0.0 : scaled_eval(cubic_taper(), h, 2, squared_distance(pts[i], pts[j]));
      EXPECT_EQ(g.base_graph().weight(i, j), w);
    }
  }
}

TEST(Neighborhood, EnlargingBandwidthKeepsEdges)
{
  std::mt19937_64 rng(34);
  const auto pts = random_cloud(rng, 200, 2, 1.0);
  const auto small = NeighborhoodGraph::build(pts, cubic_taper(), 0.35, 0.0, 2);
  const auto large = NeighborhoodGraph::build(pts, cubic_taper(), 0.5, 0.0, 2);
  for (const auto& t : small.base_graph().triplets())
    EXPECT_GT(large.base_graph().weight(t.i, t.j), 0.0);
}

TEST(Neighborhood, ExtendedDegreeAtSamplesIsBitwiseInternal)
{
  std::mt19937_64 rng(35);
  for (double lambda : {0.0, 0.7, 1.0}) {
    const auto g = NeighborhoodGraph::build(random_cloud(rng, 300, 2, 1.0), cubic_taper(), 0.4, lambda, 2);
    for (std::size_t i = 0; i < g.size(); ++i)
      EXPECT_EQ(degree_ext(g, at(g, i)), g.reweighted_degrees()[i]);
  }
}

TEST(Neighborhood, DegreeAndAverageExamples)
{
  const auto g = NeighborhoodGraph::build(three_points(), cubic_taper(), 1.0, 0.0, 1);
  EXPECT_NEAR(degree_ext(g, at(g, 0)), 0.142911, 1e-6);
  const Eigen::Vector3d f(1, 2, 3);
  EXPECT_NEAR(average_op(g, at(g, 0), f), (0.421875 * 2 + 0.006859 * 3) / 3.0, 1e-15);
  EXPECT_NEAR(average_op(g, at(g, 0), f), 0.288110, 1e-6);
  EXPECT_EQ(average_op(g, at(g, 0), Eigen::Vector3d::Zero()), 0.0);
  const std::vector<double> far{10.0};
  EXPECT_THROW(degree_ext(g, far), EmptyNeighborhoodError);
}

TEST(Neighborhood, AverageOfOnesIsDegree)
{
  std::mt19937_64 rng(36);
  const auto g = NeighborhoodGraph::build(random_cloud(rng, 300, 2, 1.0), cubic_taper(), 0.4, 0.5, 2);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(300);
  const std::vector<double> x{0.1, -0.2};
  EXPECT_NEAR(average_op(g, x, ones), degree_ext(g, x), 1e-15 * degree_ext(g, x));
}

TEST(Neighborhood, LambdaZeroExtendedDegreeIsBaseDegree)
{
  std::mt19937_64 rng(37);
  const auto g = NeighborhoodGraph::build(random_cloud(rng, 300, 2, 1.0), cubic_taper(), 0.4, 0.0, 2);
  const std::vector<double> x{0.3, 0.1};
  const auto local = g.local_kernel(x);
  EXPECT_EQ(local.degree, local.base_degree);
}

TEST(Neighborhood, TwoPointRandomWalk)
{
  const PointCloud pts(1, {0.0, 0.5});
  const double h = 0.8;
  const auto g = NeighborhoodGraph::build(pts, cubic_taper(), h, 0.0, 1);
  const Eigen::Vector2d f(1.5, -0.5);
  EXPECT_NEAR(apply_laplacian(g, LaplacianKind::rw, at(g, 0), f, f[0]), (f[0] - f[1]) / (h * h), 1e-14);
}

TEST(Neighborhood, ConstantsAreAnnihilated)
{
  std::mt19937_64 rng(38);
  const auto g = NeighborhoodGraph::build(random_cloud(rng, 300, 2, 1.0), cubic_taper(), 0.4, 1.0, 2);
  const Eigen::VectorXd c = Eigen::VectorXd::Constant(300, 2.0);
  const std::vector<double> x{0.05, 0.1};
  EXPECT_NEAR(apply_laplacian(g, LaplacianKind::rw, x, c, 2.0), 0.0, 1e-12);
  EXPECT_NEAR(apply_laplacian(g, LaplacianKind::unnorm, x, c, 2.0), 0.0, 1e-9);
}

TEST(Neighborhood, AtSamplesReproducesGraphLaplacians)
{
  std::mt19937_64 rng(39);
  for (double lambda : {0.0, 1.0}) {
    const double h = 0.4;
    const auto g = NeighborhoodGraph::build(random_cloud(rng, 250, 2, 1.0), cubic_taper(), h, lambda, 2);
    const auto f = laplace_limits::testing::random_vector(rng, 250);
    for (auto kind : all_laplacian_kinds) {
      const Eigen::VectorXd graph = apply_laplacian(g.reweighted_graph(), kind, f) / (h * h);
      Eigen::VectorXd ext(250);
      for (std::size_t i = 0; i < 250; ++i)
        ext[static_cast<Eigen::Index>(i)] = apply_laplacian(g, kind, at(g, i), f, f[static_cast<Eigen::Index>(i)]);
      EXPECT_LE(max_abs(graph - ext), 1e-12 * (1 + max_abs(graph))) << to_string(kind);
    }
  }
}

TEST(Neighborhood, ShiftInvarianceOfRwAndUnnorm)
{
  std::mt19937_64 rng(40);
  const auto g = NeighborhoodGraph::build(random_cloud(rng, 300, 2, 1.0), cubic_taper(), 0.4, 0.5, 2);
  const auto f = laplace_limits::testing::random_vector(rng, 300);
  const Eigen::VectorXd shifted = f.array() + 3.0;
  const std::vector<double> x{0.0, 0.0};
  const double fx = 0.25;
  for (auto kind : {LaplacianKind::rw, LaplacianKind::unnorm}) {
    const double a = apply_laplacian(g, kind, x, f, fx);
    const double b = apply_laplacian(g, kind, x, shifted, fx + 3.0);
    EXPECT_NEAR(a, b, 1e-12 * (1 + std::abs(a)) / (0.4 * 0.4));
  }
}

TEST(Neighborhood, UnnormEqualsDegreeTimesRw)
{
  std::mt19937_64 rng(41);
  const auto g = NeighborhoodGraph::build(random_cloud(rng, 300, 2, 1.0), cubic_taper(), 0.4, 0.3, 2);
  const auto f = laplace_limits::testing::random_vector(rng, 300);
  const std::vector<double> x{0.2, -0.1};
  const auto local = g.local_kernel(x);
  const double rw = apply_laplacian(g, LaplacianKind::rw, local, f, 0.7);
  const double un = apply_laplacian(g, LaplacianKind::unnorm, local, f, 0.7);
  EXPECT_NEAR(un, local.degree * rw, 1e-9 * (1 + std::abs(un)));
}

TEST(Neighborhood, DirichletEnergy)
{
  const PointCloud pts(1, {0.0, 0.5});
  const auto g = NeighborhoodGraph::build(pts, cubic_taper(), 1.0, 0.0, 1);
  const Eigen::Vector2d f(0, 1);
  const auto s = preset_structure(LaplacianKind::unnorm);
  const auto df = difference(g.reweighted_graph(), s, f);
  EXPECT_NEAR(dirichlet_energy(g, f), edge_inner(g.reweighted_graph(), s, df, df), 1e-15);
  // w = 0.421875 on both directed edges, 1/(2 n^2) = 1/8
  EXPECT_NEAR(dirichlet_energy(g, f), 0.421875 / 4.0, 1e-15);
  EXPECT_NEAR(dirichlet_energy(g, Eigen::Vector2d(3, 3)), 0.0, 1e-15);

  std::mt19937_64 rng(42);
  const auto big = NeighborhoodGraph::build(random_cloud(rng, 200, 2, 1.0), cubic_taper(), 0.4, 0.5, 2);
  for (int trial = 0; trial < 10; ++trial)
    EXPECT_GE(dirichlet_energy(big, laplace_limits::testing::random_vector(rng, 200)), 0.0);
}

TEST(Neighborhood, MeanDegreeApproachesC1TimesDensity)
{
  const auto model = make_model("box2_uniform");
  const auto pts = model->sample(20000, 7);
  const double h = 0.5;
  const auto g = NeighborhoodGraph::build(pts, cubic_taper(), h, 0.0, 2);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto p = g.points()[i];
    if (std::abs(p[0]) < 2.4 && std::abs(p[1]) < 2.4) {
      sum += g.base_degrees()[i];
      ++count;
    }
  }
  const double expected = std::numbers::pi / 4.0 / 36.0;
  EXPECT_NEAR(sum / static_cast<double>(count), expected, 0.03 * expected);
}
