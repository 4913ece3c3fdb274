#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace laplace_limits {

/// Radial kernel profile k, evaluated on the squared distance t = |x - y|^2.
///
/// The profile vanishes at t = 0 (no loops in the neighborhood graph) and
/// outside [0, R_k^2]. `profile` is the raw function; eval_profile() enforces
/// the zero at the origin and the compact support, validate_kernel() checks
/// whether the raw function already honors them.
struct KernelProfile
{
  std::string name;
  double support_radius = 1.0;
  std::function<double(double)> profile;
};

//! k(t) = (1 - t)^3 on (0, 1], zero elsewhere.
KernelProfile cubic_taper();
//! k(t) = 1 - t on (0, 1], zero elsewhere.
KernelProfile linear_taper();

double eval_profile(const KernelProfile& k, double t);

//! h^{-m} k(sq_dist / h^2).
double scaled_eval(const KernelProfile& k, double h, int m, double sq_dist);

/// C1 = int_{R^m} k(|y|^2) dy and C2 = int_{R^m} k(|y|^2) y_1^2 dy.
struct KernelMoments
{
  double c1 = 0.0;
  double c2 = 0.0;
  int dimension = 0;
};

/// Radial reduction of C1, C2 integrated by adaptive Simpson.
/// `dim` is the intrinsic dimension m of the manifold.
KernelMoments moments(const KernelProfile& k, int dim, double tolerance = 1e-10);

struct KernelViolation
{
  std::string check; // value_at_zero | non-negative | non-increasing | compact_support
  double t = 0.0;
  std::string detail;
};

/// Samples the raw profile on [0, 2 R_k^2] and lists every assumption it breaks.
std::vector<KernelViolation> validate_kernel(const KernelProfile& k, std::size_t grid_points = 4096);

//! Name -> profile lookup used by configs and the CLI.
class KernelRegistry
{
public:
  static KernelRegistry with_builtins();

  void add(KernelProfile k);
  std::optional<KernelProfile> find(const std::string& name) const;
  std::vector<std::string> names() const;

private:
  std::map<std::string, KernelProfile> profiles_;
};

inline constexpr const char* default_kernel_name = "cubic_taper";

} // namespace laplace_limits
