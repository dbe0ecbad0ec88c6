#include "ionspin/output.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "ionspin/errors.hpp"

namespace ionspin {

namespace fs = std::filesystem;
using json = nlohmann::json;

void Table::add(std::vector<double> row) {
  if (row.size() != header.size()) throw validation_error("table row width differs from header");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no negative zero
  return buf;
}

std::string csv_text(const Table& t) {
  std::string out;
  for (std::size_t k = 0; k < t.header.size(); ++k) out += (k ? "," : "") + t.header[k];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += format_double(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string histogram_csv_text(const ShotTable& h) {
  std::string out = "bitstring,basis,count,probability\n";
  for (const auto& [b, c] : h.counts) {
    out += bitstring(b, h.n_sites) + ',' + axis_name(h.basis) + ',' + std::to_string(c) + ',' +
           format_double(static_cast<double>(c) / static_cast<double>(h.shots)) + '\n';
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const fs::path p(path);
  const fs::path tmp = p.parent_path() / ("." + p.filename().string() + ".tmp");
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw error("cannot write " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, p, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw error("cannot rename onto " + p.string());
  }
}

void write_run(const std::string& dir, const RunConfig& config, const ProtocolResult& result) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw error("cannot create output directory " + dir);
  json files = {{"series", "series.csv"}};
  write_file_atomic((fs::path(dir) / "series.csv").string(), csv_text(result.series));
  if (result.histogram) {
    write_file_atomic((fs::path(dir) / "histogram.csv").string(), histogram_csv_text(*result.histogram));
    files["histogram"] = "histogram.csv";
  }
  json doc = {
      {"format_version", kFormatVersion},
      {"artifact_version", kArtifactVersion},
      {"experiment", config.experiment},
      {"seed", config.seed},
      {"derived_seeds", result.derived_seeds},
      {"config", serialize_config(config)},
      {"scalars", result.scalars},
      {"files", files},
  };
  write_file_atomic((fs::path(dir) / "result.json").string(), doc.dump(2) + "\n");
}

std::string export_summary(const std::string& dir) {
  if (!fs::is_directory(dir)) throw validation_error("not a directory: " + dir);
  std::vector<fs::path> runs;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_directory() && fs::exists(e.path() / "result.json")) runs.push_back(e.path());
  std::sort(runs.begin(), runs.end());
  std::vector<json> docs;
  std::set<std::string> keys;
  for (const auto& r : runs) {
    std::ifstream f(r / "result.json");
    json d;
    try {
      d = json::parse(f);
    } catch (const json::parse_error&) {
      throw validation_error("unreadable result.json in " + r.string());
    }
    for (auto it = d["scalars"].begin(); it != d["scalars"].end(); ++it)
      if (it->is_number() || it->is_boolean()) keys.insert(it.key());
    docs.push_back(std::move(d));
  }
  std::string out = "run,experiment,seed";
  for (const auto& k : keys) out += "," + k;
  out += '\n';
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const json& d = docs[i];
    out += runs[i].filename().string() + ',' + d.value("experiment", std::string()) + ',' +
           std::to_string(d.value("seed", std::uint64_t{0}));
    for (const auto& k : keys) {
      out += ',';
      if (!d["scalars"].contains(k)) continue;
      const json& v = d["scalars"][k];
      if (v.is_boolean()) out += v.get<bool>() ? "1" : "0";
      else if (v.is_number()) out += format_double(v.get<double>());
    }
    out += '\n';
  }
  write_file_atomic((fs::path(dir) / "summary.csv").string(), out);
  return out;
}

}  // namespace ionspin
