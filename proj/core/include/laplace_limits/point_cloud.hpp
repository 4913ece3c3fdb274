#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace laplace_limits {

//! A set of n points in R^d stored row-major.
class PointCloud
{
public:
  explicit PointCloud(std::size_t dim);
  PointCloud(std::size_t dim, std::vector<double> coordinates);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const
  {
    return {coords_.data() + i * dim_, dim_};
  }
  Eigen::VectorXd point(std::size_t i) const;

  void push_back(std::span<const double> p);
  void push_back(const Eigen::VectorXd& p);
  void reserve(std::size_t n) { coords_.reserve(n * dim_); }

  const std::vector<double>& coordinates() const noexcept { return coords_; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

private:
  std::size_t dim_;
  std::vector<double> coords_;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

inline std::span<const double> as_span(const Eigen::VectorXd& v)
{
  return {v.data(), static_cast<std::size_t>(v.size())};
}

} // namespace laplace_limits
