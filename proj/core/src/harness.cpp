#include "laplace_limits/harness.hpp"

#include "laplace_limits/csv_io.hpp"
#include "laplace_limits/errors.hpp"
#include "laplace_limits/kernel.hpp"
#include "laplace_limits/neighborhood.hpp"
#include "laplace_limits/oracle.hpp"
#include "laplace_limits/test_functions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <thread>
#include <tuple>

namespace laplace_limits {

double bandwidth_schedule(std::size_t n, int m, double c)
{
  if (n < 2)
    throw InvalidArgument("bandwidth_schedule: n must be >= 2");
  if (!(c > 0.0) || !std::isfinite(c))
    throw InvalidArgument("bandwidth_schedule: c must be positive");
  if (m < 1)
    throw InvalidArgument("bandwidth_schedule: m must be >= 1");
  const double nd = static_cast<double>(n);
  return c * std::pow(std::log(nd) / nd, 1.0 / (m + 4));
}

void validate_config(const ExperimentConfig& config)
{
  auto model = make_model(config.model);
  if (!model)
    throw InvalidArgument("unknown model '" + config.model + "'");
  const auto registry = KernelRegistry::with_builtins();
  if (!registry.find(config.kernel))
    throw InvalidArgument("unknown kernel '" + config.kernel + "'");
  const auto f = find_test_function(config.function);
  if (!f)
    throw InvalidArgument("unknown function '" + config.function + "'");
  if (f->ambient_dim && *f->ambient_dim != model->ambient_dim())
    throw InvalidArgument("function '" + config.function + "' needs ambient dimension " +
                          std::to_string(*f->ambient_dim));
  if (config.lambdas.empty() || config.kinds.empty() || config.ns.empty() || config.seeds.empty())
    throw InvalidArgument("lambda, kinds, n and seeds must be non-empty");
  for (double l : config.lambdas) {
    if (!std::isfinite(l))
      throw InvalidArgument("lambda must be finite");
  }
  for (auto n : config.ns) {
    if (n < 10)
      throw InvalidArgument("every n must be >= 10");
  }
  if (const auto* e = std::get_if<ExplicitBandwidth>(&config.bandwidth)) {
    if (e->h.empty())
      throw InvalidArgument("bandwidth h list must be non-empty");
    for (double h : e->h) {
      if (!(h > 0.0) || !std::isfinite(h))
        throw InvalidArgument("every h must be positive");
    }
  } else {
    const double c = std::get<ScheduleBandwidth>(config.bandwidth).c;
    if (!(c > 0.0) || !std::isfinite(c))
      throw InvalidArgument("schedule_c must be positive");
  }
  if (const auto* s = std::get_if<SubsamplePlacement>(&config.placement)) {
    const auto min_n = *std::min_element(config.ns.begin(), config.ns.end());
    if (s->count == 0 || s->count > min_n)
      throw InvalidArgument("subsample count must lie in [1, min n]");
  }
  if (!(config.boundary_margin_factor >= 0.0) || !std::isfinite(config.boundary_margin_factor))
    throw InvalidArgument("boundary_margin_factor must be >= 0");
}

std::vector<bool> boundary_mask(const ManifoldModel& model,
                                double h,
                                double beta,
                                double support_radius,
                                const std::vector<Eigen::VectorXd>& points)
{
  const double margin = beta * h * support_radius;
  std::vector<bool> keep(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double dist = model.boundary_distance(points[i]);
    keep[i] = dist > margin;
  }
  return keep;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::size_t n)
{
  return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(n));
}

unsigned worker_count(unsigned requested, std::size_t jobs)
{
  unsigned w = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LAPLACE_LIMITS_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap > 0)
      w = std::min<unsigned>(w, static_cast<unsigned>(cap));
  }
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(w, jobs)));
}

template <typename Job>
void parallel_for(std::size_t count, unsigned workers, Job job)
{
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++)
        job(i);
    });
  }
  for (auto& t : pool)
    t.join();
}

double relative_error(double abs_err, double limit)
{
  if (limit != 0.0)
    return abs_err / std::abs(limit);
  return abs_err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

struct Cell
{
  std::size_t seed_index;
  std::size_t n_index;
  double h;
  std::size_t lambda_index;
};

struct CellResult
{
  std::vector<ReportRow> rows;
  std::optional<std::string> failure;
};

} // namespace

PointCloud experiment_sample(const ManifoldModel& model, std::uint64_t seed, std::size_t n)
{
  return model.sample(n, sample_seed(seed, n));
}

ConvergenceReport run_convergence(const ExperimentConfig& config)
{
  validate_config(config);
  const auto model = make_model(config.model);
  const auto kernel = *KernelRegistry::with_builtins().find(config.kernel);
  const auto f = *find_test_function(config.function);
  const int m = model->intrinsic_dim();
  const KernelMoments mom = moments(kernel, m);

  ConvergenceReport report;
  report.config = config;
  if (const auto* s = std::get_if<ScheduleBandwidth>(&config.bandwidth))
    report.schedule_c = s->c;

  auto bandwidths_for = [&](std::size_t n) {
    if (const auto* e = std::get_if<ExplicitBandwidth>(&config.bandwidth))
      return e->h;
    return std::vector<double>{bandwidth_schedule(n, m, report.schedule_c.value())};
  };

  const bool on_grid = std::holds_alternative<GridPlacement>(config.placement);
  const auto grid = on_grid ? model->evaluation_grid() : std::vector<Eigen::VectorXd>{};

  // Oracle limits on the fixed grid depend only on (lambda, kind, point).
  std::vector<LimitSpec> specs;
  specs.reserve(config.lambdas.size());
  for (double l : config.lambdas)
    specs.emplace_back(*model, mom, l);
  std::vector<std::vector<std::vector<double>>> grid_limits(config.lambdas.size());
  if (on_grid) {
    const auto nk = config.kinds.size();
    for (std::size_t li = 0; li < specs.size(); ++li)
      grid_limits[li].assign(nk, std::vector<double>(grid.size()));
    const unsigned workers = worker_count(config.threads, specs.size() * nk * grid.size());
    parallel_for(specs.size() * nk * grid.size(), workers, [&](std::size_t job) {
      const std::size_t p = job % grid.size();
      const std::size_t k = (job / grid.size()) % nk;
      const std::size_t li = job / (grid.size() * nk);
      grid_limits[li][k][p] = limit(specs[li], config.kinds[k], f.value, grid[p]);
    });
  }

  // Samples per (seed, n).
  const std::size_t ns = config.ns.size();
  std::vector<PointCloud> samples(config.seeds.size() * ns, PointCloud(model->ambient_dim()));
  std::vector<VertexFunction> f_samples(samples.size());
  parallel_for(samples.size(), worker_count(config.threads, samples.size()), [&](std::size_t j) {
    const auto seed = config.seeds[j / ns];
    const auto n = config.ns[j % ns];
    samples[j] = experiment_sample(*model, seed, n);
    VertexFunction fv(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      fv[static_cast<Eigen::Index>(i)] = f.value(samples[j].point(i));
    f_samples[j] = std::move(fv);
  });

  std::vector<Cell> cells;
  for (std::size_t si = 0; si < config.seeds.size(); ++si)
    for (std::size_t ni = 0; ni < ns; ++ni)
      for (double h : bandwidths_for(config.ns[ni]))
        for (std::size_t li = 0; li < config.lambdas.size(); ++li)
          cells.push_back({si, ni, h, li});

  std::vector<CellResult> results(cells.size());
  parallel_for(cells.size(), worker_count(config.threads, cells.size()), [&](std::size_t c) {
    const Cell& cell = cells[c];
    const std::size_t j = cell.seed_index * ns + cell.n_index;
    const auto& X = samples[j];
    const auto& fx = f_samples[j];
    const double lambda = config.lambdas[cell.lambda_index];
    CellResult& out = results[c];
    try {
      const auto g = NeighborhoodGraph::build(X, kernel, cell.h, lambda, m);
      std::vector<Eigen::VectorXd> eval_points;
      std::vector<double> f_at;
      if (on_grid) {
        eval_points = grid;
        for (const auto& x : grid)
          f_at.push_back(f.value(x));
      } else {
        const auto count = std::get<SubsamplePlacement>(config.placement).count;
        for (std::size_t i = 0; i < count; ++i) {
          eval_points.push_back(X.point(i));
          f_at.push_back(fx[static_cast<Eigen::Index>(i)]);
        }
      }
      const auto keep =
          boundary_mask(*model, cell.h, config.boundary_margin_factor, kernel.support_radius, eval_points);
      for (std::size_t p = 0; p < eval_points.size(); ++p) {
        if (!keep[p])
          continue;
        const Eigen::VectorXd& x = eval_points[p];
        const auto local = g.local_kernel(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
        for (std::size_t k = 0; k < config.kinds.size(); ++k) {
          const auto kind = config.kinds[k];
          ReportRow row;
          row.seed = config.seeds[cell.seed_index];
          row.n = config.ns[cell.n_index];
          row.h = cell.h;
          row.lambda = lambda;
          row.kind = kind;
          row.point_id = p;
          row.estimate = apply_laplacian(g, kind, local, fx, f_at[p]);
          row.limit = on_grid ? grid_limits[cell.lambda_index][k][p] : limit(specs[cell.lambda_index], kind, f.value, x);
          row.abs_err = std::abs(row.estimate - row.limit);
          row.rel_err = relative_error(row.abs_err, row.limit);
          out.rows.push_back(row);
        }
      }
    } catch (const IsolatedVertexError& e) {
      out.rows.clear();
      out.failure = e.what();
    } catch (const EmptyNeighborhoodError& e) {
      out.rows.clear();
      out.failure = e.what();
    }
  });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    if (results[c].failure) {
      report.failures.push_back({config.seeds[cell.seed_index], config.ns[cell.n_index], cell.h,
                                 config.lambdas[cell.lambda_index], *results[c].failure});
    }
    for (auto& r : results[c].rows)
      report.rows.push_back(r);
  }
  const auto row_key = [](const ReportRow& r) { return std::tuple(r.seed, r.n, r.h, r.lambda, r.kind, r.point_id); };
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [&](const ReportRow& a, const ReportRow& b) { return row_key(a) < row_key(b); });
  std::stable_sort(report.failures.begin(), report.failures.end(), [](const CellFailure& a, const CellFailure& b) {
    return std::tuple(a.seed, a.n, a.h, a.lambda) < std::tuple(b.seed, b.n, b.h, b.lambda);
  });

  // Aggregates per (n, h, lambda, kind), pooled over seeds.
  using AggKey = std::tuple<std::size_t, double, double, LaplacianKind>;
  std::map<AggKey, std::vector<double>> errs;
  std::map<AggKey, std::size_t> failed;
  for (const auto& cell : cells) {
    for (auto kind : config.kinds) {
      errs[{config.ns[cell.n_index], cell.h, config.lambdas[cell.lambda_index], kind}];
    }
  }
  for (const auto& r : report.rows)
    errs[{r.n, r.h, r.lambda, r.kind}].push_back(r.abs_err);
  for (const auto& fl : report.failures)
    for (auto kind : config.kinds)
      ++failed[{fl.n, fl.h, fl.lambda, kind}];
  for (const auto& [key, v] : errs) {
    AggregateRow a;
    std::tie(a.n, a.h, a.lambda, a.kind) = key;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    a.median_abs_err = v.empty() ? nan : numerics::median(v);
    a.mean_abs_err = v.empty() ? nan : numerics::mean(v);
    a.cells_failed = failed.count(key) ? failed.at(key) : 0;
    report.aggregates.push_back(a);
  }

  std::set<std::pair<double, LaplacianKind>> groups;
  for (double l : config.lambdas)
    for (auto k : config.kinds)
      groups.insert({l, k});
  for (const auto& [l, k] : groups) {
    try {
      const auto fit = estimate_rate(report, l, k);
      report.rates.push_back({l, k, fit.slope, fit.intercept, fit.r2});
    } catch (const InvalidArgument&) {
      // fewer than 3 usable n values
    }
  }
  return report;
}

numerics::LinearFit fit_rate(std::span<const double> ns, std::span<const double> errors)
{
  if (ns.size() != errors.size())
    throw InvalidArgument("fit_rate: size mismatch");
  if (ns.size() < 3)
    throw InvalidArgument("fit_rate: need at least 3 points");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(ns[i] > 0.0) || !(errors[i] > 0.0))
      throw InvalidArgument("fit_rate: n and errors must be positive");
    x.push_back(std::log(ns[i]));
    y.push_back(std::log(errors[i]));
  }
  return numerics::least_squares(x, y);
}

numerics::LinearFit estimate_rate(const ConvergenceReport& report,
                        double lambda,
                        LaplacianKind kind,
                        std::optional<std::uint64_t> seed)
{
  std::map<std::size_t, std::vector<double>> by_n;
  for (const auto& r : report.rows) {
    if (r.lambda != lambda || r.kind != kind || (seed && r.seed != *seed))
      continue;
    by_n[r.n].push_back(r.abs_err);
  }
  std::vector<double> ns, errs;
  for (const auto& [n, v] : by_n) {
    const double med = numerics::median(v);
    if (med > 0.0) {
      ns.push_back(static_cast<double>(n));
      errs.push_back(med);
    }
  }
  if (ns.size() < 3)
    throw InvalidArgument("estimate_rate: fewer than 3 distinct n with successful cells");
  return fit_rate(ns, errs);
}

void write_rows_csv(std::ostream& out, const ConvergenceReport& report)
{
  using io::format_double;
  out << "seed,n,h,lambda,kind,point_id,estimate,limit,abs_err,rel_err\n";
  for (const auto& r : report.rows) {
    out << r.seed << ',' << r.n << ',' << format_double(r.h) << ',' << format_double(r.lambda) << ','
        << to_string(r.kind) << ',' << r.point_id << ',' << format_double(r.estimate) << ','
        << format_double(r.limit) << ',' << format_double(r.abs_err) << ',' << format_double(r.rel_err) << '\n';
  }
}

void write_aggregates_csv(std::ostream& out, const ConvergenceReport& report)
{
  using io::format_double;
  out << "n,h,lambda,kind,median_abs_err,mean_abs_err,cells_failed\n";
  for (const auto& a : report.aggregates) {
    out << a.n << ',' << format_double(a.h) << ',' << format_double(a.lambda) << ',' << to_string(a.kind) << ','
        << format_double(a.median_abs_err) << ',' << format_double(a.mean_abs_err) << ',' << a.cells_failed << '\n';
  }
}

void write_rates_csv(std::ostream& out, const ConvergenceReport& report)
{
  using io::format_double;
  out << "lambda,kind,slope,intercept,r2\n";
  for (const auto& r : report.rates) {
    out << format_double(r.lambda) << ',' << to_string(r.kind) << ',' << format_double(r.slope) << ','
        << format_double(r.intercept) << ',' << format_double(r.r2) << '\n';
  }
}

} // namespace laplace_limits
