#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracfront/bounds.hpp"
#include "fracfront/fronts.hpp"
#include "fracfront/kernel.hpp"
#include "fracfront/simulate.hpp"

namespace fracfront::io {

inline constexpr int kSchemaVersion = 1;

// "# key: value" lines written above every CSV table.
using CsvHeader = std::vector<std::pair<std::string, std::string>>;

// Header row: index coordinates then value. Parameters go in the # lines.
void write_kernel_csv(std::ostream& os, const KernelTable& table, const CsvHeader& header);
// One row per (t, site): t, x1..xd, mean_sq, std_err.
void write_moment_csv(std::ostream& os, const MomentField& field, const CsvHeader& header);
// Throws ParseError naming the offending line and field.
MomentField read_moment_csv(std::istream& is, CsvHeader* header = nullptr);
// theta, l_hat, stderr, n_sites, n_times.
void write_front_csv(std::ostream& os, const FrontProfile& profile, const CsvHeader& header);

nlohmann::json to_json(const ModelParams& params);
nlohmann::json to_json(const SimConfig& config);
nlohmann::json to_json(const BoundsReport& report);
nlohmann::json to_json(const FrontBracket& bracket);
nlohmann::json to_json(const GrowthEstimate& estimate);

// Reads the params, options and constants written by to_json(BoundsReport).
BoundsReport bounds_from_json(const nlohmann::json& j);

// Full round-trip decimal text of a double.
std::string format_real(double v);

}  // namespace fracfront::io
