#include "laplace_limits/csv_io.hpp"

#include "laplace_limits/errors.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace laplace_limits::io {

namespace {

std::vector<std::string> split_line(const std::string& line)
{
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ','))
    out.push_back(field);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

bool next_line(std::istream& in, std::string& line, std::size_t& line_no)
{
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!line.empty())
      return true;
  }
  return false;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what)
{
  throw InvalidArgument("line " + std::to_string(line_no) + ": " + what);
}

std::size_t parse_index(const std::string& s, std::size_t line_no)
{
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty())
    fail(line_no, "expected a non-negative integer index, got '" + s + "'");
  return v;
}

double parse_field(const std::string& s, std::size_t line_no)
{
  try {
    return parse_double(s);
  } catch (const InvalidArgument&) {
    fail(line_no, "expected a number, got '" + s + "'");
  }
}

} // namespace

std::string format_double(double v)
{
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_double(const std::string& s)
{
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end)
    throw InvalidArgument("not a number: '" + s + "'");
  return v;
}

PointCloud read_points_csv(std::istream& in)
{
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no))
    throw InvalidArgument("points file is empty (expected header x0,x1,...)");
  const auto header = split_line(line);
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (header[k] != "x" + std::to_string(k))
      fail(line_no, "header must be x0,x1,...,x{d-1}, got '" + line + "'");
  }
  PointCloud points(header.size());
  std::vector<double> row(header.size());
  while (next_line(in, line, line_no)) {
    const auto fields = split_line(line);
    if (fields.size() != header.size())
      fail(line_no, "expected " + std::to_string(header.size()) + " columns, got " + std::to_string(fields.size()));
    for (std::size_t k = 0; k < fields.size(); ++k)
      row[k] = parse_field(fields[k], line_no);
    points.push_back(row);
  }
  return points;
}

void write_points_csv(std::ostream& out, const PointCloud& points)
{
  for (std::size_t k = 0; k < points.dim(); ++k)
    out << (k ? "," : "") << 'x' << k;
  out << '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points[i];
    for (std::size_t k = 0; k < p.size(); ++k)
      out << (k ? "," : "") << format_double(p[k]);
    out << '\n';
  }
}

std::vector<WeightTriplet> read_edge_list_csv(std::istream& in)
{
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no))
    throw InvalidArgument("edge list is empty (expected header i,j,w)");
  if (line != "i,j,w")
    fail(line_no, "header must be i,j,w");
  std::vector<WeightTriplet> out;
  while (next_line(in, line, line_no)) {
    const auto f = split_line(line);
    if (f.size() != 3)
      fail(line_no, "expected 3 columns");
    out.push_back({parse_index(f[0], line_no), parse_index(f[1], line_no), parse_field(f[2], line_no)});
  }
  return out;
}

void write_edge_list_csv(std::ostream& out, const WeightedGraph& g, bool upper_only)
{
  out << "i,j,w\n";
  const bool skip_lower = upper_only && g.is_symmetric();
  for (const auto& t : g.triplets()) {
    if (skip_lower && t.j <= t.i)
      continue;
    out << t.i << ',' << t.j << ',' << format_double(t.w) << '\n';
  }
}

VertexFunction read_vertex_function_csv(std::istream& in)
{
  std::string line;
  std::size_t line_no = 0;
  if (!next_line(in, line, line_no))
    throw InvalidArgument("vertex function file is empty (expected header i,value)");
  if (line != "i,value")
    fail(line_no, "header must be i,value");
  std::vector<std::pair<std::size_t, double>> entries;
  while (next_line(in, line, line_no)) {
    const auto f = split_line(line);
    if (f.size() != 2)
      fail(line_no, "expected 2 columns");
    entries.emplace_back(parse_index(f[0], line_no), parse_field(f[1], line_no));
  }
  VertexFunction out(static_cast<Eigen::Index>(entries.size()));
  std::vector<bool> seen(entries.size(), false);
  for (const auto& [i, v] : entries) {
    if (i >= entries.size() || seen[i])
      throw InvalidArgument("vertex function indices must cover 0..n-1 exactly once");
    seen[i] = true;
    out[static_cast<Eigen::Index>(i)] = v;
  }
  return out;
}

void write_vertex_function_csv(std::ostream& out, const VertexFunction& f)
{
  out << "i,value\n";
  for (Eigen::Index i = 0; i < f.size(); ++i)
    out << i << ',' << format_double(f[i]) << '\n';
}

} // namespace laplace_limits::io
