#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "fracfront/error.hpp"
#include "fracfront/hash.hpp"
#include "manifest.hpp"

namespace fracfront::cli {
namespace {

std::string iso_utc(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

io::CsvHeader RunManifest::csv_header() const {
  return {{"manifest_hash", manifest_hash},
          {"command", command},
          {"config_hash", config_hash},
          {"base_seed", std::to_string(base_seed)},
          {"version", version}};
}

nlohmann::json RunManifest::to_json() const {
  return {{"schema_version", io::kSchemaVersion},
          {"manifest_hash", manifest_hash},
          {"command", command},
          {"argv", argv},
          {"config_hash", config_hash},
          {"base_seed", base_seed},
          {"version", version},
          {"start", iso_utc(start)},
          {"stop", iso_utc(stop)},
          {"wall_seconds", std::chrono::duration<double>(stop - start).count()},
          {"outputs", outputs},
          {"warnings", warnings}};
}

std::string input_hash(const std::string& command, const std::string& config_text,
                       const std::vector<std::string>& inputs) {
  std::string s = "command=" + command + "\nversion=" FRACFRONT_VERSION "\n";
  for (const auto& i : inputs) s += i + "\n";
  s += "config=\n" + config_text;
  return hex64(fnv1a64(s));
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
  if (!f) throw Error("write failed for " + path.string());
}

}  // namespace fracfront::cli
