#include "laplace_limits/radius_index.hpp"

#include "laplace_limits/errors.hpp"

#include <algorithm>
#include <cmath>

namespace laplace_limits {

std::size_t RadiusIndex::CellHash::operator()(const CellKey& k) const noexcept
{
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto c : k) {
    h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

RadiusIndex::RadiusIndex(const PointCloud& points, double radius)
  : points_(&points)
  , radius_(radius)
  , use_grid_(points.dim() <= max_grid_dim)
{
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidArgument("RadiusIndex: radius must be positive and finite");
  if (!use_grid_)
    return;
  for (std::size_t i = 0; i < points.size(); ++i)
    cells_[cell_of(points[i])].push_back(i);
}

RadiusIndex::CellKey RadiusIndex::cell_of(std::span<const double> x) const
{
  CellKey key(x.size());
  for (std::size_t k = 0; k < x.size(); ++k)
    key[k] = static_cast<std::int64_t>(std::floor(x[k] / radius_));
  return key;
}

std::vector<std::size_t> RadiusIndex::query(std::span<const double> x) const
{
  std::vector<std::size_t> out;
  query(x, out);
  return out;
}

void RadiusIndex::query(std::span<const double> x, std::vector<std::size_t>& out) const
{
  if (x.size() != points_->dim())
    throw InvalidArgument("RadiusIndex::query: dimension mismatch");
  out.clear();
  const double r2 = radius_ * radius_;
  if (!use_grid_) {
    for (std::size_t j = 0; j < points_->size(); ++j) {
      if (squared_distance(x, (*points_)[j]) <= r2)
        out.push_back(j);
    }
    return;
  }

  const CellKey centre = cell_of(x);
  const std::size_t dim = centre.size();
  CellKey probe(dim);
  std::vector<int> offset(dim, -1);
  // Enumerate the 3^d neighbouring cells.
  for (;;) {
    for (std::size_t k = 0; k < dim; ++k)
      probe[k] = centre[k] + offset[k];
    if (auto it = cells_.find(probe); it != cells_.end()) {
      for (std::size_t j : it->second) {
        if (squared_distance(x, (*points_)[j]) <= r2)
          out.push_back(j);
      }
    }
    std::size_t k = 0;
    while (k < dim && offset[k] == 1) {
      offset[k] = -1;
      ++k;
    }
    if (k == dim)
      break;
    ++offset[k];
  }
  std::sort(out.begin(), out.end());
}

} // namespace laplace_limits
