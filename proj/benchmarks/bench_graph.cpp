#include "laplace_limits/graph_core.hpp"
#include "laplace_limits/kernel.hpp"
#include "laplace_limits/manifold.hpp"
#include "laplace_limits/neighborhood.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

using namespace laplace_limits;

namespace {

PointCloud box_sample(std::size_t n)
{
  return make_model("box2_uniform")->sample(n, 7);
}

void BM_BuildGraph(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto points = box_sample(n);
  for (auto _ : state) {
    auto g = NeighborhoodGraph::build(points, cubic_taper(), 1.0, 0.5, 2);
    benchmark::DoNotOptimize(g.reweighted_graph().edge_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildGraph)->Arg(500)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_ApplyLaplacian(benchmark::State& state)
{
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto kind = static_cast<LaplacianKind>(state.range(1));
  const auto g = NeighborhoodGraph::build(box_sample(n), cubic_taper(), 1.0, 0.0, 2);
  Eigen::VectorXd f(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    f[static_cast<Eigen::Index>(i)] = std::sin(g.points()[i][0]);
  for (auto _ : state)
    benchmark::DoNotOptimize(apply_laplacian(g.reweighted_graph(), kind, f));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.reweighted_graph().edge_count()));
}
BENCHMARK(BM_ApplyLaplacian)
    ->ArgsProduct({{2000, 8000},
                   {static_cast<long>(LaplacianKind::rw), static_cast<long>(LaplacianKind::unnorm),
                    static_cast<long>(LaplacianKind::norm)}})
    ->Unit(benchmark::kMicrosecond);

void BM_ExtendedAtGrid(benchmark::State& state)
{
  const auto model = make_model("box2_uniform");
  const auto g = NeighborhoodGraph::build(model->sample(2500, 3), cubic_taper(), 1.4, 0.0, 2);
  Eigen::VectorXd f(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i)
    f[static_cast<Eigen::Index>(i)] = g.points()[i][0];
  const auto grid = model->evaluation_grid();
  for (auto _ : state)
    for (const auto& x : grid)
      benchmark::DoNotOptimize(apply_laplacian(g, LaplacianKind::rw, as_span(x), f, x[0]));
}
BENCHMARK(BM_ExtendedAtGrid)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
