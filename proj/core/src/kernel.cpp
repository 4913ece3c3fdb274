#include "laplace_limits/kernel.hpp"

#include "laplace_limits/errors.hpp"
#include "laplace_limits/numerics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace laplace_limits {

KernelProfile cubic_taper()
{
  return {"cubic_taper", 1.0, [](double t) {
            if (t <= 0.0 || t > 1.0)
              return 0.0;
            const double u = 1.0 - t;
            return u * u * u;
          }};
}

KernelProfile linear_taper()
{
  return {"linear_taper", 1.0, [](double t) {
            if (t <= 0.0 || t > 1.0)
              return 0.0;
            return 1.0 - t;
          }};
}

double eval_profile(const KernelProfile& k, double t)
{
  if (!(t >= 0.0))
    throw InvalidArgument("eval_profile: argument must be >= 0, got " + std::to_string(t));
  const double r2 = k.support_radius * k.support_radius;
  if (t == 0.0 || t > r2)
    return 0.0;
  return k.profile(t);
}

double scaled_eval(const KernelProfile& k, double h, int m, double sq_dist)
{
  if (!(h > 0.0))
    throw InvalidArgument("scaled_eval: bandwidth h must be > 0");
  if (m < 1)
    throw InvalidArgument("scaled_eval: dimension must be >= 1");
  const double v = eval_profile(k, sq_dist / (h * h));
  if (v == 0.0)
    return 0.0;
  return v / std::pow(h, m);
}

KernelMoments moments(const KernelProfile& k, int dim, double tolerance)
{
  if (dim < 1)
    throw InvalidArgument("moments: dimension must be >= 1");
  if (!(k.support_radius > 0.0))
    throw InvalidArgument("moments: support radius must be > 0");

  // The profile jumps to 0 at t = 0; the radial integrand uses its right limit
  // there, which changes nothing on a measure-zero set.
  const double tiny = std::numeric_limits<double>::denorm_min();
  auto k_radial = [&](double r) {
    const double t = r > 0.0 ? r * r : tiny;
    return eval_profile(k, t);
  };

  const double area = numerics::unit_sphere_area(dim);
  const auto zeroth = numerics::adaptive_simpson(
    [&](double r) { return k_radial(r) * std::pow(r, dim - 1); }, 0.0, k.support_radius, tolerance);
  const auto second = numerics::adaptive_simpson(
    [&](double r) { return k_radial(r) * std::pow(r, dim + 1); }, 0.0, k.support_radius, tolerance);
  if (!zeroth.converged || !second.converged)
    throw InvalidArgument("moments: quadrature did not converge for kernel " + k.name);

  KernelMoments out;
  out.c1 = area * zeroth.value;
  out.c2 = area / dim * second.value;
  out.dimension = dim;
  if (!(out.c1 > 0.0) || !(out.c2 > 0.0))
    throw InvalidArgument("moments: kernel " + k.name + " has non-positive moments");
  return out;
}

std::vector<KernelViolation> validate_kernel(const KernelProfile& k, std::size_t grid_points)
{
  std::vector<KernelViolation> out;
  if (!k.profile) {
    out.push_back({"value_at_zero", 0.0, "profile function is empty"});
    return out;
  }
  auto report = [&](const char* check, double t, double v) {
    for (const auto& existing : out) {
      if (existing.check == check)
        return;
    }
    std::ostringstream msg;
    msg << "k(" << t << ") = " << v;
    out.push_back({check, t, msg.str()});
  };

  const double r2 = k.support_radius * k.support_radius;
  const double v0 = k.profile(0.0);
  if (v0 != 0.0)
    report("value_at_zero", 0.0, v0);
  if (v0 < 0.0)
    report("non-negative", 0.0, v0);

  const std::size_t count = std::max<std::size_t>(grid_points, 2);
  const double step = 2.0 * r2 / static_cast<double>(count);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= count; ++i) {
    const double t = step * static_cast<double>(i);
    const double v = k.profile(t);
    if (v < 0.0)
      report("non-negative", t, v);
    if (v > previous)
      report("non-increasing", t, v);
    if (t > r2 && v != 0.0)
      report("compact_support", t, v);
    previous = v;
  }
  return out;
}

KernelRegistry KernelRegistry::with_builtins()
{
  KernelRegistry r;
  r.add(cubic_taper());
  r.add(linear_taper());
  return r;
}

void KernelRegistry::add(KernelProfile k)
{
  if (k.name.empty())
    throw InvalidArgument("KernelRegistry::add: kernel needs a name");
  auto name = k.name;
  profiles_.insert_or_assign(std::move(name), std::move(k));
}

std::optional<KernelProfile> KernelRegistry::find(const std::string& name) const
{
  auto it = profiles_.find(name);
  if (it == profiles_.end())
    return std::nullopt;
  return it->second;
}

std::vector<std::string> KernelRegistry::names() const
{
  std::vector<std::string> out;
  for (const auto& [name, _] : profiles_)
    out.push_back(name);
  return out;
}

} // namespace laplace_limits
