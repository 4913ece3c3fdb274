#include "laplace_limits/test_functions.hpp"

#include <cmath>

namespace laplace_limits {

namespace {

double paper_sine(const Eigen::VectorXd& x)
{
  const double r2 = x.squaredNorm();
  if (r2 == 0.0)
    return 0.5;
  return std::sin(0.5 * r2) / r2;
}

double paper_affine(const Eigen::VectorXd& x)
{
  return x.sum() - 4.0;
}

double sphere_costheta(const Eigen::VectorXd& x)
{
  return x[2] / x.norm();
}

} // namespace

std::optional<TestFunction> find_test_function(const std::string& name)
{
  if (name == "paper_sine")
    return TestFunction{name, paper_sine, std::nullopt};
  if (name == "paper_affine")
    return TestFunction{name, paper_affine, std::nullopt};
  if (name == "sphere_costheta")
    return TestFunction{name, sphere_costheta, 3};
  if (name == "constant")
    return TestFunction{name, [](const Eigen::VectorXd&) { return 1.0; }, std::nullopt};
  return std::nullopt;
}

std::vector<std::string> test_function_names()
{
  return {"constant", "paper_affine", "paper_sine", "sphere_costheta"};
}

} // namespace laplace_limits
