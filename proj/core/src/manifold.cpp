#include "laplace_limits/manifold.hpp"

#include "laplace_limits/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace laplace_limits {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double pi = std::numbers::pi;

class IdentityChart final : public Chart
{
public:
  IdentityChart(int dim, double half_width)
    : dim_(dim)
    , half_width_(half_width)
  {}

  int dim() const override { return dim_; }
  Eigen::VectorXd embed(const Eigen::VectorXd& u) const override { return u; }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd&) const override { return Eigen::MatrixXd::Identity(dim_, dim_); }
  Eigen::VectorXd coordinates(const Eigen::VectorXd& x) const override { return x; }
  double margin(const Eigen::VectorXd& u) const override
  {
    if (!std::isfinite(half_width_))
      return inf;
    return half_width_ - u.cwiseAbs().maxCoeff();
  }

private:
  int dim_;
  double half_width_;
};

/// Spherical coordinates (theta, phi) on the unit sphere about one of the
/// coordinate axes: x[perm[k]] = s[k] with s = (sin t cos p, sin t sin p, cos t).
class SphericalChart final : public Chart
{
public:
  explicit SphericalChart(std::array<int, 3> perm)
    : perm_(perm)
  {}

  int dim() const override { return 2; }

  Eigen::VectorXd embed(const Eigen::VectorXd& u) const override
  {
    const double st = std::sin(u[0]), ct = std::cos(u[0]);
    const double sp = std::sin(u[1]), cp = std::cos(u[1]);
    const std::array<double, 3> s{st * cp, st * sp, ct};
    Eigen::VectorXd x(3);
    for (int k = 0; k < 3; ++k)
      x[perm_[k]] = s[k];
    return x;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const override
  {
    const double st = std::sin(u[0]), ct = std::cos(u[0]);
    const double sp = std::sin(u[1]), cp = std::cos(u[1]);
    const double ds[3][2] = {{ct * cp, -st * sp}, {ct * sp, st * cp}, {-st, 0.0}};
    Eigen::MatrixXd j(3, 2);
    for (int k = 0; k < 3; ++k) {
      j(perm_[k], 0) = ds[k][0];
      j(perm_[k], 1) = ds[k][1];
    }
    return j;
  }

  Eigen::VectorXd coordinates(const Eigen::VectorXd& x) const override
  {
    const double r = x.norm();
    const double s0 = x[perm_[0]], s1 = x[perm_[1]], s2 = x[perm_[2]];
    Eigen::VectorXd u(2);
    u[0] = std::acos(std::clamp(s2 / r, -1.0, 1.0));
    u[1] = std::atan2(s1, s0);
    return u;
  }

  double margin(const Eigen::VectorXd& u) const override { return std::min(u[0], pi - u[0]); }

private:
  std::array<int, 3> perm_;
};

std::vector<Eigen::VectorXd> square_grid(double half_width, int per_axis)
{
  std::vector<Eigen::VectorXd> out;
  for (int i = 0; i < per_axis; ++i) {
    for (int j = 0; j < per_axis; ++j) {
      Eigen::VectorXd p(2);
      p[0] = -half_width + 2.0 * half_width * i / (per_axis - 1);
      p[1] = -half_width + 2.0 * half_width * j / (per_axis - 1);
      out.push_back(p);
    }
  }
  return out;
}

class Box2Uniform final : public ManifoldModel
{
public:
  static constexpr double half_width = 3.0;

  std::string name() const override { return "box2_uniform"; }
  int intrinsic_dim() const override { return 2; }
  int ambient_dim() const override { return 2; }
  std::size_t chart_count() const override { return 1; }
  const Chart& chart(std::size_t) const override { return chart_; }

  double off_manifold_distance(const Eigen::VectorXd& x) const override
  {
    return (x.cwiseAbs().array() - half_width).max(0.0).matrix().norm();
  }
  double density(const Eigen::VectorXd&) const override { return 1.0 / 36.0; }
  Eigen::VectorXd density_gradient(const Eigen::VectorXd&) const override { return Eigen::VectorXd::Zero(2); }
  double density_laplacian(const Eigen::VectorXd&) const override { return 0.0; }

  PointCloud sample(std::size_t n, std::uint64_t seed) const override
  {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-half_width, half_width);
    PointCloud out(2);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = u(rng);
      const double b = u(rng);
      out.push_back(std::array<double, 2>{a, b});
    }
    return out;
  }

  double boundary_distance(const Eigen::VectorXd& x) const override
  {
    return half_width - x.cwiseAbs().maxCoeff();
  }
  Geometry geometry() const override { return Geometry::flat; }
  std::vector<Eigen::VectorXd> evaluation_grid() const override { return square_grid(1.5, 5); }

private:
  IdentityChart chart_{2, half_width};
};

class Gauss2 final : public ManifoldModel
{
public:
  std::string name() const override { return "gauss2"; }
  int intrinsic_dim() const override { return 2; }
  int ambient_dim() const override { return 2; }
  std::size_t chart_count() const override { return 1; }
  const Chart& chart(std::size_t) const override { return chart_; }

  double off_manifold_distance(const Eigen::VectorXd&) const override { return 0.0; }
  double density(const Eigen::VectorXd& x) const override
  {
    return std::exp(-0.5 * x.squaredNorm()) / (2.0 * pi);
  }
  Eigen::VectorXd density_gradient(const Eigen::VectorXd& x) const override { return -density(x) * x; }
  double density_laplacian(const Eigen::VectorXd& x) const override { return (x.squaredNorm() - 2.0) * density(x); }

  PointCloud sample(std::size_t n, std::uint64_t seed) const override
  {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    PointCloud out(2);
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = z(rng);
      const double b = z(rng);
      out.push_back(std::array<double, 2>{a, b});
    }
    return out;
  }

  Geometry geometry() const override { return Geometry::flat; }
  std::vector<Eigen::VectorXd> evaluation_grid() const override { return square_grid(1.0, 5); }

private:
  IdentityChart chart_{2, inf};
};

/// Unit sphere in R^3 with a density depending on z = cos(theta) only.
class SphereModel : public ManifoldModel
{
public:
  int intrinsic_dim() const override { return 2; }
  int ambient_dim() const override { return 3; }
  std::size_t chart_count() const override { return 2; }
  const Chart& chart(std::size_t i) const override { return i == 0 ? polar_z_ : polar_x_; }

  double off_manifold_distance(const Eigen::VectorXd& x) const override { return std::abs(x.norm() - 1.0); }

  PointCloud sample(std::size_t n, std::uint64_t seed) const override
  {
    // Uniform proposals on the sphere, accepted with probability p / p_max.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    std::uniform_real_distribution<double> accept(0.0, 1.0);
    const double p_max = max_density();
    PointCloud out(3);
    out.reserve(n);
    while (out.size() < n) {
      Eigen::VectorXd v(3);
      v << z(rng), z(rng), z(rng);
      const double r = v.norm();
      if (r == 0.0)
        continue;
      v /= r;
      if (accept(rng) * p_max < density(v))
        out.push_back(v);
    }
    return out;
  }

  Geometry geometry() const override { return Geometry::round_sphere; }
  double sphere_radius() const override { return 1.0; }

  std::vector<Eigen::VectorXd> evaluation_grid() const override
  {
    std::vector<Eigen::VectorXd> out;
    for (double theta : {pi / 4.0, pi / 2.0, 3.0 * pi / 4.0}) {
      for (int k = 0; k < 8; ++k) {
        Eigen::VectorXd u(2);
        u << theta, 2.0 * pi * k / 8.0;
        out.push_back(polar_z_.embed(u));
      }
    }
    return out;
  }

protected:
  virtual double max_density() const = 0;

private:
  SphericalChart polar_z_{{0, 1, 2}};
  SphericalChart polar_x_{{1, 2, 0}};
};

class SphereCluster final : public SphereModel
{
public:
  std::string name() const override { return "sphere_cluster"; }
  double density(const Eigen::VectorXd& x) const override
  {
    const double z = x[2];
    return (1.0 + 3.0 * z * z) / (8.0 * pi);
  }
  Eigen::VectorXd density_gradient(const Eigen::VectorXd& x) const override
  {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(3);
    g[2] = 6.0 * x[2] / (8.0 * pi);
    return g;
  }
  // Laplace-Beltrami of z^2 on the unit sphere is 2 - 6 z^2.
  double density_laplacian(const Eigen::VectorXd& x) const override
  {
    const double z = x[2];
    return 3.0 * (2.0 - 6.0 * z * z) / (8.0 * pi);
  }

protected:
  double max_density() const override { return 1.0 / (2.0 * pi); }
};

class SphereUniform final : public SphereModel
{
public:
  std::string name() const override { return "sphere_uniform"; }
  double density(const Eigen::VectorXd&) const override { return 1.0 / (4.0 * pi); }
  Eigen::VectorXd density_gradient(const Eigen::VectorXd&) const override { return Eigen::VectorXd::Zero(3); }
  double density_laplacian(const Eigen::VectorXd&) const override { return 0.0; }

protected:
  double max_density() const override { return 1.0 / (4.0 * pi); }
};

void require_margin(const Chart& chart, const Eigen::VectorXd& u, double reach, const char* what)
{
  if (!(chart.margin(u) > reach)) {
    std::ostringstream msg;
    msg << what << ": stencil of radius " << reach << " leaves the chart domain at u = (" << u.transpose() << ")";
    throw ChartDomainError(msg.str());
  }
}

Eigen::VectorXd gradient_unchecked(const ChartFunction& f, const Eigen::VectorXd& u, double step)
{
  Eigen::VectorXd g(u.size());
  Eigen::VectorXd v = u;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    v[i] = u[i] + step;
    const double fp = f(v);
    v[i] = u[i] - step;
    const double fm = f(v);
    v[i] = u[i];
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

} // namespace

Eigen::MatrixXd metric_tensor(const Chart& chart, const Eigen::VectorXd& u)
{
  const Eigen::MatrixXd j = chart.jacobian(u);
  return j.transpose() * j;
}

std::size_t ManifoldModel::select_chart(const Eigen::VectorXd& x) const
{
  std::size_t best = 0;
  double best_margin = -inf;
  for (std::size_t c = 0; c < chart_count(); ++c) {
    const double m = chart(c).margin(chart(c).coordinates(x));
    if (m > best_margin) {
      best_margin = m;
      best = c;
    }
  }
  return best;
}

double ManifoldModel::boundary_distance(const Eigen::VectorXd&) const
{
  return inf;
}

std::unique_ptr<ManifoldModel> make_model(std::string_view name)
{
  if (name == "box2_uniform")
    return std::make_unique<Box2Uniform>();
  if (name == "gauss2")
    return std::make_unique<Gauss2>();
  if (name == "sphere_cluster")
    return std::make_unique<SphereCluster>();
  if (name == "sphere_uniform")
    return std::make_unique<SphereUniform>();
  return nullptr;
}

std::vector<std::string> model_names()
{
  return {"box2_uniform", "gauss2", "sphere_cluster", "sphere_uniform"};
}

double density_eval(const ManifoldModel& model, const Eigen::VectorXd& x)
{
  if (x.size() != model.ambient_dim())
    throw InvalidArgument("density_eval: point has the wrong ambient dimension");
  if (model.off_manifold_distance(x) > 1e-9) {
    std::ostringstream msg;
    msg << "density_eval: point (" << x.transpose() << ") is not on " << model.name();
    throw OffManifoldError(msg.str());
  }
  return model.density(x);
}

double laplace_beltrami_chart(const Chart& chart, const ChartFunction& f, const Eigen::VectorXd& u, double step)
{
  if (!(step > 0.0))
    throw InvalidArgument("laplace_beltrami_chart: step must be > 0");
  require_margin(chart, u, 2.0 * step, "laplace_beltrami_chart");

  auto flux = [&](const Eigen::VectorXd& v, Eigen::Index j) {
    const Eigen::MatrixXd g = metric_tensor(chart, v);
    const double vol = std::sqrt(g.determinant());
    const Eigen::VectorXd grad = gradient_unchecked(f, v, step);
    return vol * g.inverse().row(j).dot(grad);
  };

  double divergence = 0.0;
  Eigen::VectorXd v = u;
  for (Eigen::Index j = 0; j < u.size(); ++j) {
    v[j] = u[j] + step;
    const double fp = flux(v, j);
    v[j] = u[j] - step;
    const double fm = flux(v, j);
    v[j] = u[j];
    divergence += (fp - fm) / (2.0 * step);
  }
  return divergence / std::sqrt(metric_tensor(chart, u).determinant());
}

double laplace_beltrami(const ManifoldModel& model, const AmbientFunction& f, const Eigen::VectorXd& x, double step)
{
  const Chart& c = model.chart(model.select_chart(x));
  return laplace_beltrami_chart(
    c, [&](const Eigen::VectorXd& u) { return f(c.embed(u)); }, c.coordinates(x), step);
}

Eigen::VectorXd chart_gradient(const Chart& chart, const ChartFunction& f, const Eigen::VectorXd& u, double step)
{
  if (!(step > 0.0))
    throw InvalidArgument("chart_gradient: step must be > 0");
  require_margin(chart, u, step, "chart_gradient");
  return gradient_unchecked(f, u, step);
}

Eigen::VectorXd density_chart_gradient(const ManifoldModel& model, const Chart& chart, const Eigen::VectorXd& u)
{
  return chart.jacobian(u).transpose() * model.density_gradient(chart.embed(u));
}

double weighted_gradient_term(const ManifoldModel& model,
                              const AmbientFunction& f,
                              const Eigen::VectorXd& x,
                              double s,
                              double step)
{
  const double p = model.density(x);
  if (!(p > 0.0))
    throw DataError("weighted_gradient_term: density must be positive at the evaluation point");
  if (s == 0.0)
    return 0.0;
  const Chart& c = model.chart(model.select_chart(x));
  const Eigen::VectorXd u = c.coordinates(x);
  const Eigen::VectorXd df = chart_gradient(c, [&](const Eigen::VectorXd& v) { return f(c.embed(v)); }, u, step);
  const Eigen::VectorXd dp = density_chart_gradient(model, c, u);
  const Eigen::MatrixXd ginv = metric_tensor(c, u).inverse();
  return s / p * dp.dot(ginv * df);
}

double density_gradient_norm2(const ManifoldModel& model, const Eigen::VectorXd& x)
{
  const Chart& c = model.chart(model.select_chart(x));
  const Eigen::VectorXd u = c.coordinates(x);
  const Eigen::VectorXd dp = density_chart_gradient(model, c, u);
  return dp.dot(metric_tensor(c, u).inverse() * dp);
}

} // namespace laplace_limits
