#pragma once

#include "laplace_limits/graph_core.hpp"
#include "laplace_limits/point_cloud.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace laplace_limits::io {

//! Shortest decimal that round-trips to the same double ("nan", "inf", "-inf" otherwise).
std::string format_double(double v);
//! Strict full-string parse; throws InvalidArgument on junk.
double parse_double(const std::string& s);

/// Points: header `x0,x1,...,x{d-1}`, one point per row.
PointCloud read_points_csv(std::istream& in);
void write_points_csv(std::ostream& out, const PointCloud& points);

/// Edge list: header `i,j,w`, 0-based indices. With `upper_only`, a symmetric
/// graph is written as its canonical i < j rows.
std::vector<WeightTriplet> read_edge_list_csv(std::istream& in);
void write_edge_list_csv(std::ostream& out, const WeightedGraph& g, bool upper_only);

/// Vertex function: header `i,value`; every index 0..n-1 exactly once.
VertexFunction read_vertex_function_csv(std::istream& in);
void write_vertex_function_csv(std::ostream& out, const VertexFunction& f);

} // namespace laplace_limits::io
