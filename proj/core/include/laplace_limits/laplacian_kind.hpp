#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace laplace_limits {

//! The three graph Laplacians: random walk, unnormalized, normalized.
enum class LaplacianKind
{
  rw,
  unnorm,
  norm
};

inline constexpr std::array<LaplacianKind, 3> all_laplacian_kinds{
  LaplacianKind::rw, LaplacianKind::unnorm, LaplacianKind::norm};

constexpr std::string_view to_string(LaplacianKind kind)
{
  switch (kind) {
    case LaplacianKind::rw:
      return "rw";
    case LaplacianKind::unnorm:
      return "unnorm";
    case LaplacianKind::norm:
      return "norm";
  }
  return "?";
}

inline std::optional<LaplacianKind> parse_laplacian_kind(std::string_view s)
{
  for (auto k : all_laplacian_kinds) {
    if (to_string(k) == s)
      return k;
  }
  return std::nullopt;
}

} // namespace laplace_limits
