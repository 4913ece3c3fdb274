#pragma once

#include "laplace_limits/point_cloud.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace laplace_limits {

/// Uniform grid bucketing with cell edge equal to the query radius.
/// Queries are exact: they return every index j with |x - X_j| <= radius,
/// ascending. Ambient dimensions above `max_grid_dim` fall back to a scan.
class RadiusIndex
{
public:
  static constexpr std::size_t max_grid_dim = 6;

  RadiusIndex(const PointCloud& points, double radius);

  double radius() const noexcept { return radius_; }

  std::vector<std::size_t> query(std::span<const double> x) const;
  //! Appends to `out` after clearing it; avoids reallocations in hot loops.
  void query(std::span<const double> x, std::vector<std::size_t>& out) const;

private:
  using CellKey = std::vector<std::int64_t>;
  struct CellHash
  {
    std::size_t operator()(const CellKey& k) const noexcept;
  };

  CellKey cell_of(std::span<const double> x) const;

  const PointCloud* points_;
  double radius_;
  bool use_grid_;
  std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> cells_;
};

} // namespace laplace_limits
