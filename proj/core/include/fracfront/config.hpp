#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fracfront/bounds.hpp"
#include "fracfront/simulate.hpp"

namespace fracfront {

// A parsed run configuration. The file is INI-style: [section] headers and key = value
// lines, addressed here as dotted keys (model.beta, sigma.lambda, grid.dx, ...).
struct RunConfig {
  SimConfig sim;
  BoundsOptions bounds;
  // Raw text the configuration was parsed from.
  std::string text;
  std::string origin;

  const ModelParams& params() const { return sim.params; }
};

// Throws ParseError (unknown key, malformed value) or ParameterError (invalid model).
RunConfig parse_config(std::string_view text, const std::string& origin = "<string>");
RunConfig load_config(const std::filesystem::path& path);

// Every recognized key with its default value, as an INI document that parse_config accepts.
std::string config_reference();

}  // namespace fracfront
