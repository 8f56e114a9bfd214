#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracfront/serialize.hpp"

namespace fracfront::cli {

struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::string config_hash;
  std::uint64_t base_seed = 0;
  std::string version = FRACFRONT_VERSION;
  std::chrono::system_clock::time_point start;
  std::chrono::system_clock::time_point stop;
  std::vector<std::string> outputs;
  std::vector<std::string> warnings;
  // Hash of the inputs that determine the outputs (command, config text, seed,
  // overrides, version); thread count and output location are excluded.
  std::string manifest_hash;

  io::CsvHeader csv_header() const;
  nlohmann::json to_json() const;
};

// Deterministic input hash; `inputs` are "key=value" strings in a fixed order.
std::string input_hash(const std::string& command, const std::string& config_text,
                       const std::vector<std::string>& inputs);

void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fracfront::cli
