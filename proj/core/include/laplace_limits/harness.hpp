#pragma once

#include "laplace_limits/laplacian_kind.hpp"
#include "laplace_limits/manifold.hpp"
#include "laplace_limits/numerics.hpp"
#include "laplace_limits/point_cloud.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace laplace_limits {

//! h(n) = c (ln n / n)^{1/(m+4)}. Throws InvalidArgument for n < 2, c <= 0, m < 1.
double bandwidth_schedule(std::size_t n, int m, double c);

inline constexpr double default_schedule_c = 1.5;

struct ExplicitBandwidth
{
  std::vector<double> h;
};

struct ScheduleBandwidth
{
  double c = default_schedule_c;
};

//! Evaluate at the model's fixed interior grid.
struct GridPlacement
{
};

//! Evaluate at the first `count` samples X_0..X_{count-1}.
struct SubsamplePlacement
{
  std::size_t count = 25;
};

struct ExperimentConfig
{
  std::string model = "box2_uniform";
  std::string kernel = "cubic_taper";
  std::string function = "paper_sine";
  std::vector<double> lambdas{0.0};
  std::vector<LaplacianKind> kinds{LaplacianKind::rw};
  std::vector<std::size_t> ns{2500};
  std::variant<ExplicitBandwidth, ScheduleBandwidth> bandwidth = ExplicitBandwidth{{1.4}};
  std::variant<GridPlacement, SubsamplePlacement> placement = GridPlacement{};
  double boundary_margin_factor = 2.0;
  std::vector<std::uint64_t> seeds{0};
  //! Worker threads, 0 = auto. LAPLACE_LIMITS_THREADS caps this further.
  unsigned threads = 0;
};

//! Throws InvalidArgument describing the first violated constraint.
void validate_config(const ExperimentConfig& config);

struct ReportRow
{
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double h = 0.0;
  double lambda = 0.0;
  LaplacianKind kind = LaplacianKind::rw;
  std::size_t point_id = 0;
  double estimate = 0.0;
  double limit = 0.0;
  double abs_err = 0.0;
  double rel_err = 0.0; // abs_err / |limit|; 0 when both vanish, inf when only the limit does
};

struct AggregateRow
{
  std::size_t n = 0;
  double h = 0.0;
  double lambda = 0.0;
  LaplacianKind kind = LaplacianKind::rw;
  double median_abs_err = 0.0; // over all seeds' rows of the cell; nan if every seed failed
  double mean_abs_err = 0.0;
  std::size_t cells_failed = 0;
};

struct RateRow
{
  double lambda = 0.0;
  LaplacianKind kind = LaplacianKind::rw;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

struct CellFailure
{
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double h = 0.0;
  double lambda = 0.0;
  std::string message;
};

struct ConvergenceReport
{
  ExperimentConfig config;
  std::optional<double> schedule_c;
  std::vector<ReportRow> rows; // sorted by (seed, n, h, lambda, kind, point_id)
  std::vector<AggregateRow> aggregates;
  std::vector<RateRow> rates; // present for (lambda, kind) with >= 3 distinct successful n
  std::vector<CellFailure> failures;
};

/// true iff the point is farther than beta * h * R_k from the model boundary.
std::vector<bool> boundary_mask(const ManifoldModel& model,
                                double h,
                                double beta,
                                double support_radius,
                                const std::vector<Eigen::VectorXd>& points);

/// The sample drawn for a (seed, n) pair of an experiment. The model's
/// sampler is seeded from a mix of both, so different n get independent draws.
PointCloud experiment_sample(const ManifoldModel& model, std::uint64_t seed, std::size_t n);

/// Runs every (seed, n, h, lambda) cell. Cells that hit an isolated vertex or
/// an empty neighborhood are recorded in `failures` and skipped. The report
/// does not depend on the number of worker threads.
ConvergenceReport run_convergence(const ExperimentConfig& config);

/// OLS of ln(median abs_err) on ln n, one point per n. The median is taken
/// over the rows of (lambda, kind), restricted to `seed` if given.
/// Throws InvalidArgument with fewer than 3 usable n values.
numerics::LinearFit estimate_rate(const ConvergenceReport& report,
                        double lambda,
                        LaplacianKind kind,
                        std::optional<std::uint64_t> seed = std::nullopt);

//! Fit on explicit (n, err) pairs, same rules as above.
numerics::LinearFit fit_rate(std::span<const double> ns, std::span<const double> errors);

void write_rows_csv(std::ostream& out, const ConvergenceReport& report);
void write_aggregates_csv(std::ostream& out, const ConvergenceReport& report);
void write_rates_csv(std::ostream& out, const ConvergenceReport& report);

} // namespace laplace_limits
