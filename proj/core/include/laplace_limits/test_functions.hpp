#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace laplace_limits {

/// A named ambient function used in experiments.
struct TestFunction
{
  std::string name;
  std::function<double(const Eigen::VectorXd&)> value;
  //! Ambient dimension the function requires, if any.
  std::optional<int> ambient_dim;
};

/// paper_sine:      sin(|x|^2 / 2) / |x|^2, continued by 1/2 at the origin
/// paper_affine:    sum_i x_i - 4
/// sphere_costheta: z / |x| (cos theta on the sphere)
/// constant:        1
std::optional<TestFunction> find_test_function(const std::string& name);
std::vector<std::string> test_function_names();

} // namespace laplace_limits
