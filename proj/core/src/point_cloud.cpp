#include "laplace_limits/point_cloud.hpp"

#include "laplace_limits/errors.hpp"

namespace laplace_limits {

PointCloud::PointCloud(std::size_t dim)
  : dim_(dim)
{
  if (dim == 0)
    throw InvalidArgument("PointCloud: dimension must be positive");
}

PointCloud::PointCloud(std::size_t dim, std::vector<double> coordinates)
  : dim_(dim)
  , coords_(std::move(coordinates))
{
  if (dim == 0)
    throw InvalidArgument("PointCloud: dimension must be positive");
  if (coords_.size() % dim != 0)
    throw InvalidArgument("PointCloud: coordinate count is not a multiple of the dimension");
}

Eigen::VectorXd PointCloud::point(std::size_t i) const
{
  return Eigen::Map<const Eigen::VectorXd>(coords_.data() + i * dim_, static_cast<Eigen::Index>(dim_));
}

void PointCloud::push_back(std::span<const double> p)
{
  if (p.size() != dim_)
    throw InvalidArgument("PointCloud::push_back: dimension mismatch");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

void PointCloud::push_back(const Eigen::VectorXd& p)
{
  push_back(as_span(p));
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept
{
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

} // namespace laplace_limits
