#pragma once

#include "laplace_limits/harness.hpp"

#include <filesystem>
#include <string>

#include "json.hpp"

namespace laplace_limits::cli {

struct RunConfig
{
  ExperimentConfig experiment;
  std::filesystem::path output_dir = ".";
};

/// Parses and validates a config document. Throws InvalidArgument on
/// malformed JSON (with the byte offset), unknown keys, wrong types or
/// values the harness would reject.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

//! The config as it will be executed, schedule constant included.
nlohmann::ordered_json to_json(const RunConfig& config);

} // namespace laplace_limits::cli
