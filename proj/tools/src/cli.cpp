#include "cli.hpp"

#include "config_json.hpp"

#include "laplace_limits/csv_io.hpp"
#include "laplace_limits/errors.hpp"
#include "laplace_limits/harness.hpp"
#include "laplace_limits/kernel.hpp"
#include "laplace_limits/neighborhood.hpp"
#include "laplace_limits/oracle.hpp"
#include "laplace_limits/test_functions.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

namespace laplace_limits::cli {

namespace fs = std::filesystem;

namespace {

std::string join(const std::vector<std::string>& v)
{
  std::string s;
  for (const auto& x : v)
    s += (s.empty() ? "" : ", ") + x;
  return s;
}

KernelProfile resolve_kernel(const std::string& name)
{
  const auto registry = KernelRegistry::with_builtins();
  auto k = registry.find(name);
  if (!k)
    throw InvalidArgument("unknown kernel '" + name + "'; registered kernels: " + join(registry.names()));
  return *k;
}

std::unique_ptr<ManifoldModel> resolve_model(const std::string& name)
{
  auto m = make_model(name);
  if (!m)
    throw InvalidArgument("unknown model '" + name + "'; available: " + join(model_names()));
  return m;
}

TestFunction resolve_function(const std::string& name)
{
  auto f = find_test_function(name);
  if (!f)
    throw InvalidArgument("unknown function '" + name + "'; available: " + join(test_function_names()));
  return *f;
}

LaplacianKind resolve_kind(const std::string& name)
{
  auto k = parse_laplacian_kind(name);
  if (!k)
    throw InvalidArgument("unknown kind '" + name + "'; expected rw, unnorm or norm");
  return *k;
}

PointCloud read_points(const fs::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw InvalidArgument("cannot open points file '" + path.string() + "'");
  return io::read_points_csv(in);
}

std::ofstream open_output(const fs::path& path)
{
  if (path.has_parent_path())
    fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw InvalidArgument("cannot write '" + path.string() + "'");
  return out;
}

void write_report(const ConvergenceReport& report, const RunConfig& rc, std::ostream& out)
{
  fs::create_directories(rc.output_dir);
  {
    auto f = open_output(rc.output_dir / "rows.csv");
    write_rows_csv(f, report);
  }
  {
    auto f = open_output(rc.output_dir / "aggregates.csv");
    write_aggregates_csv(f, report);
  }
  {
    auto f = open_output(rc.output_dir / "rates.csv");
    write_rates_csv(f, report);
  }
  {
    auto cfg = to_json(rc);
    auto f = open_output(rc.output_dir / "config_used.json");
    f << cfg.dump(2) << '\n';
  }
  out << "rows=" << report.rows.size() << " cells_failed=" << report.failures.size()
      << " output_dir=" << rc.output_dir.string() << '\n';
}

RunConfig preset(const std::string& name)
{
  RunConfig rc;
  auto& ex = rc.experiment;
  ex.kinds = {LaplacianKind::rw, LaplacianKind::unnorm, LaplacianKind::norm};
  ex.lambdas = {0.0};
  ex.ns = {2500};
  ex.seeds = {0};
  if (name == "figure-uniform") {
    ex.model = "box2_uniform";
    ex.function = "paper_sine";
    ex.bandwidth = ExplicitBandwidth{{1.4}};
    // 2 h R_k exceeds the grid's 1.5 distance to the boundary at h = 1.4
    ex.boundary_margin_factor = 1.0;
  } else if (name == "figure-gaussian") {
    ex.model = "gauss2";
    ex.function = "paper_affine";
    ex.bandwidth = ExplicitBandwidth{{1.2}};
  } else {
    ex.model = "sphere_cluster";
    ex.function = "sphere_costheta";
    ex.bandwidth = ExplicitBandwidth{{0.6}};
    ex.lambdas = {0.0, 1.0, 2.0};
    ex.kinds = {LaplacianKind::rw};
  }
  rc.output_dir = name;
  return rc;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Graph Laplacians on random neighborhood graphs and their continuum limits", "laplace-limits"};
  app.require_subcommand(1);

  // moments
  std::string kernel_name = default_kernel_name;
  int dim = 0;
  auto* moments_cmd = app.add_subcommand("moments", "Print the kernel moments C1 and C2 in dimension m");
  moments_cmd->add_option("--kernel", kernel_name, "Kernel name")->capture_default_str();
  moments_cmd->add_option("--dim", dim, "Intrinsic dimension m")->required();

  // sample
  std::string model_name;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  fs::path out_path;
  auto* sample_cmd = app.add_subcommand("sample", "Draw n samples from a model and write a points CSV");
  sample_cmd->add_option("--model", model_name, "Model name")->required();
  sample_cmd->add_option("--n", n, "Number of samples")->required();
  sample_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  sample_cmd->add_option("--out", out_path, "Output points CSV")->required();

  // build
  fs::path points_path;
  double h = 0.0;
  double lambda = 0.0;
  auto* build_cmd = app.add_subcommand("build", "Build the reweighted neighborhood graph and write its edge list");
  build_cmd->add_option("--points", points_path, "Points CSV (header x0,..,x{d-1})")->required();
  build_cmd->add_option("--kernel", kernel_name, "Kernel name")->capture_default_str();
  build_cmd->add_option("--bandwidth", h, "Bandwidth h")->required();
  build_cmd->add_option("--lambda", lambda, "Reweighting exponent")->capture_default_str();
  build_cmd->add_option("--dim", dim, "Intrinsic dimension m")->required();
  build_cmd->add_option("--out", out_path, "Output edge list CSV (i,j,w with i<j)")->required();

  // apply
  std::string function_name;
  fs::path values_path;
  std::string kind_name = "rw";
  auto* apply_cmd = app.add_subcommand("apply", "Apply a graph Laplacian (with the 1/h^2 factor) at every sample");
  apply_cmd->add_option("--points", points_path, "Points CSV")->required();
  auto* fn_opt = apply_cmd->add_option("--function", function_name, "Named test function");
  auto* val_opt = apply_cmd->add_option("--values", values_path, "Vertex function CSV (i,value)");
  fn_opt->excludes(val_opt);
  apply_cmd->add_option("--kind", kind_name, "rw, unnorm or norm")->capture_default_str();
  apply_cmd->add_option("--kernel", kernel_name, "Kernel name")->capture_default_str();
  apply_cmd->add_option("--bandwidth", h, "Bandwidth h")->required();
  apply_cmd->add_option("--lambda", lambda, "Reweighting exponent")->capture_default_str();
  apply_cmd->add_option("--dim", dim, "Intrinsic dimension m")->required();
  apply_cmd->add_option("--out", out_path, "Output vertex function CSV")->required();

  // limits
  auto* limits_cmd = app.add_subcommand("limits", "Evaluate the continuum limit of a graph Laplacian");
  limits_cmd->add_option("--model", model_name, "Model name")->required();
  limits_cmd->add_option("--function", function_name, "Named test function")->required();
  limits_cmd->add_option("--kind", kind_name, "rw, unnorm or norm")->capture_default_str();
  limits_cmd->add_option("--kernel", kernel_name, "Kernel name")->capture_default_str();
  limits_cmd->add_option("--lambda", lambda, "Reweighting exponent")->capture_default_str();
  limits_cmd->add_option("--points", points_path, "Points CSV (defaults to the model's evaluation grid)");
  limits_cmd->add_option("--out", out_path, "Output CSV (point_id,x0..,limit); stdout if omitted");

  // converge
  fs::path config_path;
  std::string output_dir;
  auto* converge_cmd = app.add_subcommand("converge", "Run a convergence experiment from a JSON config");
  converge_cmd->add_option("config", config_path, "Config JSON")->required();
  converge_cmd->add_option("--output-dir", output_dir, "Overrides output_dir from the config");

  // preset
  std::string preset_name;
  auto* preset_cmd = app.add_subcommand("preset", "Run one of the built-in figure setups");
  preset_cmd->add_option("name", preset_name, "figure-uniform, figure-gaussian or figure-sphere")
      ->required()
      ->check(CLI::IsMember({"figure-uniform", "figure-gaussian", "figure-sphere"}));
  preset_cmd->add_option("--output-dir", output_dir, "Output directory (defaults to the preset name)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_usage;
  }

  try {
    if (*moments_cmd) {
      const auto k = resolve_kernel(kernel_name);
      if (dim < 1)
        throw InvalidArgument("--dim must be >= 1");
      const auto mom = moments(k, dim);
      char buf[128];
      std::snprintf(buf, sizeof(buf), "C1=%.6f C2=%.6f", mom.c1, mom.c2);
      out << buf << '\n';
    } else if (*sample_cmd) {
      const auto model = resolve_model(model_name);
      if (n < 1)
        throw InvalidArgument("--n must be >= 1");
      auto f = open_output(out_path);
      io::write_points_csv(f, model->sample(n, seed));
    } else if (*build_cmd) {
      const auto k = resolve_kernel(kernel_name);
      auto points = read_points(points_path);
      const auto g = NeighborhoodGraph::build(std::move(points), k, h, lambda, dim);
      auto f = open_output(out_path);
      io::write_edge_list_csv(f, g.reweighted_graph(), true);
    } else if (*apply_cmd) {
      const auto k = resolve_kernel(kernel_name);
      const auto kind = resolve_kind(kind_name);
      auto points = read_points(points_path);
      VertexFunction values;
      if (!values_path.empty()) {
        std::ifstream in(values_path);
        if (!in)
          throw InvalidArgument("cannot open values file '" + values_path.string() + "'");
        values = io::read_vertex_function_csv(in);
        if (static_cast<std::size_t>(values.size()) != points.size())
          throw InvalidArgument("values file has " + std::to_string(values.size()) + " entries for " +
                                std::to_string(points.size()) + " points");
      } else if (!function_name.empty()) {
        const auto fn = resolve_function(function_name);
        values.resize(static_cast<Eigen::Index>(points.size()));
        for (std::size_t i = 0; i < points.size(); ++i)
          values[static_cast<Eigen::Index>(i)] = fn.value(points.point(i));
      } else {
        throw InvalidArgument("apply needs --function or --values");
      }
      const auto g = NeighborhoodGraph::build(std::move(points), k, h, lambda, dim);
      VertexFunction result(values.size());
      for (std::size_t i = 0; i < g.size(); ++i) {
        const auto idx = static_cast<Eigen::Index>(i);
        result[idx] = apply_laplacian(g, kind, g.points()[i], values, values[idx]);
      }
      auto f = open_output(out_path);
      io::write_vertex_function_csv(f, result);
    } else if (*limits_cmd) {
      const auto model = resolve_model(model_name);
      const auto fn = resolve_function(function_name);
      const auto kind = resolve_kind(kind_name);
      const auto k = resolve_kernel(kernel_name);
      const LimitSpec spec(*model, moments(k, model->intrinsic_dim()), lambda);
      std::vector<Eigen::VectorXd> xs;
      if (!points_path.empty()) {
        const auto pts = read_points(points_path);
        for (std::size_t i = 0; i < pts.size(); ++i)
          xs.push_back(pts.point(i));
      } else {
        xs = model->evaluation_grid();
      }
      std::ofstream file;
      if (!out_path.empty())
        file = open_output(out_path);
      std::ostream& dst = out_path.empty() ? out : file;
      dst << "point_id";
      for (int c = 0; c < model->ambient_dim(); ++c)
        dst << ",x" << c;
      dst << ",limit\n";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        dst << i;
        for (Eigen::Index c = 0; c < xs[i].size(); ++c)
          dst << ',' << io::format_double(xs[i][c]);
        dst << ',' << io::format_double(limit(spec, kind, fn.value, xs[i])) << '\n';
      }
    } else if (*converge_cmd) {
      auto rc = load_run_config(config_path);
      if (!output_dir.empty())
        rc.output_dir = output_dir;
      write_report(run_convergence(rc.experiment), rc, out);
    } else if (*preset_cmd) {
      auto rc = preset(preset_name);
      if (!output_dir.empty())
        rc.output_dir = output_dir;
      write_report(run_convergence(rc.experiment), rc, out);
    }
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return exit_data;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  return exit_ok;
}

} // namespace laplace_limits::cli
