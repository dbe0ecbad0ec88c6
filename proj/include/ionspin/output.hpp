#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ionspin/config.hpp"
#include "ionspin/measurement.hpp"

namespace ionspin {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kArtifactVersion = "ionspin 1.0.0";

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
};

struct ProtocolResult {
  nlohmann::json scalars = nlohmann::json::object();
  Table series;
  std::optional<ShotTable> histogram;
  std::vector<std::uint64_t> derived_seeds;
};

// %.17g, so values survive a text round trip.
std::string format_double(double v);
std::string csv_text(const Table& t);
std::string histogram_csv_text(const ShotTable& h);

// Writes to a sibling temporary file, then renames over path.
void write_file_atomic(const std::string& path, const std::string& content);

// result.json, series.csv and (when sampled) histogram.csv under dir.
void write_run(const std::string& dir, const RunConfig& config, const ProtocolResult& result);

// One row per run directory directly under dir (sorted by name) with its numeric scalars.
// Writes dir/summary.csv and returns its text; an empty dir gives a header-only file.
std::string export_summary(const std::string& dir);

}  // namespace ionspin
