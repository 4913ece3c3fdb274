#include "config_json.hpp"

#include "laplace_limits/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace laplace_limits::cli {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& key, const std::string& what)
{
  throw InvalidArgument("config: '" + key + "' " + what);
}

const json& require(const json& doc, const std::string& key)
{
  auto it = doc.find(key);
  if (it == doc.end())
    bad(key, "is required");
  return *it;
}

std::string as_string(const json& v, const std::string& key)
{
  if (!v.is_string())
    bad(key, "must be a string");
  return v.get<std::string>();
}

double as_number(const json& v, const std::string& key)
{
  if (!v.is_number())
    bad(key, "must be a number");
  return v.get<double>();
}

const json& as_array(const json& v, const std::string& key)
{
  if (!v.is_array() || v.empty())
    bad(key, "must be a non-empty array");
  return v;
}

std::uint64_t as_unsigned(const json& v, const std::string& key)
{
  if (!v.is_number_unsigned())
    bad(key, "must contain non-negative integers");
  return v.get<std::uint64_t>();
}

} // namespace

RunConfig parse_run_config(const std::string& text)
{
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config: malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object())
    throw InvalidArgument("config: top level must be an object");

  static const std::set<std::string> known{"model",  "kernel", "function", "lambda",
                                           "kinds",  "n",      "bandwidth", "seeds",
                                           "boundary_margin_factor", "output_dir"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key))
      bad(key, "is not a recognised key");
  }

  RunConfig rc;
  auto& ex = rc.experiment;
  ex.model = as_string(require(doc, "model"), "model");
  if (doc.contains("kernel"))
    ex.kernel = as_string(doc["kernel"], "kernel");
  ex.function = as_string(require(doc, "function"), "function");

  ex.lambdas.clear();
  for (const auto& v : as_array(require(doc, "lambda"), "lambda"))
    ex.lambdas.push_back(as_number(v, "lambda"));

  ex.kinds.clear();
  for (const auto& v : as_array(require(doc, "kinds"), "kinds")) {
    const auto s = as_string(v, "kinds");
    const auto kind = parse_laplacian_kind(s);
    if (!kind)
      bad("kinds", "entries must be \"rw\", \"unnorm\" or \"norm\", got \"" + s + "\"");
    ex.kinds.push_back(*kind);
  }

  ex.ns.clear();
  for (const auto& v : as_array(require(doc, "n"), "n"))
    ex.ns.push_back(static_cast<std::size_t>(as_unsigned(v, "n")));

  const auto& bw = require(doc, "bandwidth");
  if (!bw.is_object() || bw.size() != 1 || !(bw.contains("h") || bw.contains("schedule_c")))
    bad("bandwidth", "must be {\"h\": [...]} or {\"schedule_c\": number}");
  if (bw.contains("h")) {
    ExplicitBandwidth e;
    for (const auto& v : as_array(bw["h"], "bandwidth.h"))
      e.h.push_back(as_number(v, "bandwidth.h"));
    ex.bandwidth = e;
  } else {
    ex.bandwidth = ScheduleBandwidth{as_number(bw["schedule_c"], "bandwidth.schedule_c")};
  }

  ex.seeds.clear();
  for (const auto& v : as_array(require(doc, "seeds"), "seeds"))
    ex.seeds.push_back(as_unsigned(v, "seeds"));

  if (doc.contains("boundary_margin_factor"))
    ex.boundary_margin_factor = as_number(doc["boundary_margin_factor"], "boundary_margin_factor");
  if (doc.contains("output_dir"))
    rc.output_dir = as_string(doc["output_dir"], "output_dir");

  validate_config(ex);
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InvalidArgument("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

nlohmann::ordered_json to_json(const RunConfig& config)
{
  const auto& ex = config.experiment;
  nlohmann::ordered_json j;
  j["model"] = ex.model;
  j["kernel"] = ex.kernel;
  j["function"] = ex.function;
  j["lambda"] = ex.lambdas;
  auto kinds = nlohmann::ordered_json::array();
  for (auto k : ex.kinds)
    kinds.push_back(std::string(to_string(k)));
  j["kinds"] = kinds;
  j["n"] = ex.ns;
  if (const auto* e = std::get_if<ExplicitBandwidth>(&ex.bandwidth))
    j["bandwidth"] = {{"h", e->h}};
  else
    j["bandwidth"] = {{"schedule_c", std::get<ScheduleBandwidth>(ex.bandwidth).c}};
  j["seeds"] = ex.seeds;
  j["boundary_margin_factor"] = ex.boundary_margin_factor;
  j["output_dir"] = config.output_dir.string();
  return j;
}

} // namespace laplace_limits::cli
