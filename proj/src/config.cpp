#include "ionspin/config.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "ionspin/errors.hpp"

namespace ionspin {

namespace {

using json = nlohmann::json;

enum class Kind { number, integer, string, boolean, number_list, pair_list, matrix };

struct Field {
  std::string name;
  Kind kind;
  json def;                          // null: required
  std::vector<std::string> choices;  // strings only; empty = any
};

using Schema = std::vector<Field>;

const json kRequired = nullptr;

const std::vector<std::string> kAxes = {"x", "y", "z"};

const Schema& trap_schema() {
  static const Schema s = {
      {"n_ions", Kind::integer, kRequired, {}},
      {"omega_z", Kind::number, kRequired, {}},  // kHz, axial COM
      {"omega_x", Kind::number, kRequired, {}},  // kHz, transverse COM
      {"quartic_coeff", Kind::number, 0.0, {}},
      {"mass_amu", Kind::number, 170.936323, {}},
      {"charge_e", Kind::number, 1.0, {}},
  };
  return s;
}

const Schema& beam_schema() {
  static const Schema s = {
      {"rabi", Kind::number, kRequired, {}},       // kHz
      {"detuning", Kind::number, kRequired, {}},   // kHz above the COM mode
      {"delta_k", Kind::number, 2.0 * 2.0 * std::numbers::pi / 355e-9, {}},  // rad/m
  };
  return s;
}

const Schema& couplings_schema() {
  static const Schema s = {
      {"kind", Kind::string, "power_law", {"power_law", "matrix", "trap"}},
      {"n", Kind::integer, 0, {}},
      {"j0", Kind::number, 0.0, {}},  // kHz
      {"alpha", Kind::number, 1.0, {}},
      {"matrix", Kind::matrix, json::array(), {}},  // kHz
  };
  return s;
}

const std::map<std::string, Schema>& param_schemas() {
  static const std::map<std::string, Schema> m = {
      {"crystal", {}},
      {"couplings",
       {
           {"sweep_detunings", Kind::number_list, json::array(), {}},  // kHz above COM
       }},
      {"design",
       {
           {"n_tones", Kind::integer, 2, {}},
           {"rabi_max", Kind::number, kRequired, {}},  // kHz
           {"target_j0", Kind::number, kRequired, {}},  // kHz
           {"target_alpha", Kind::number, kRequired, {}},
           {"restarts", Kind::integer, 8, {}},
           {"max_evals", Kind::integer, 20000, {}},
       }},
      {"evolve",
       {
           {"coupling_axis", Kind::string, "x", kAxes},
           {"field_axis", Kind::string, "z", kAxes},
           {"field", Kind::number, 0.0, {}},  // kHz
           {"initial_axis", Kind::string, "z", kAxes},
           {"initial", Kind::string, "down", {"down", "up", "neel"}},
           {"flip_center", Kind::boolean, false, {}},
           {"t_end", Kind::number, kRequired, {}},
           {"steps", Kind::integer, 100, {}},
           {"tol", Kind::number, 1e-10, {}},
           {"measure_axis", Kind::string, "z", kAxes},
       }},
      {"ramp",
       {
           {"kind", Kind::string, "local_adiabatic", {"linear", "exponential", "local_adiabatic"}},
           {"b0", Kind::number, 0.0, {}},  // kHz; 0 selects 5 max|J|
           {"t_f", Kind::number, 2.4, {}},
           {"gap_points", Kind::integer, 400, {}},
           {"record", Kind::integer, 25, {}},
           {"decoherence_time", Kind::number, 0.0, {}},
           {"coupling_axis", Kind::string, "x", kAxes},
           {"field_axis", Kind::string, "y", kAxes},
       }},
      {"spectroscopy",
       {
           {"b0", Kind::number, kRequired, {}},
           {"bp", Kind::number, kRequired, {}},
           {"omega_min", Kind::number, kRequired, {}},  // kHz (cycles)
           {"omega_max", Kind::number, kRequired, {}},
           {"omega_steps", Kind::integer, 101, {}},
           {"probe_time", Kind::number, 0.0, {}},
           {"coupling_axis", Kind::string, "x", kAxes},
           {"field_axis", Kind::string, "y", kAxes},
       }},
      {"quench",
       {
           {"kind", Kind::string, "local", {"local", "global"}},
           {"model", Kind::string, "xy", {"xy", "ising"}},
           {"field", Kind::number, 0.0, {}},  // kHz along z
           {"t_end", Kind::number, kRequired, {}},
           {"steps", Kind::integer, 200, {}},
           {"rule", Kind::string, "auto", {"auto", "threshold", "half_peak"}},
           {"threshold", Kind::number, 0.04, {}},
       }},
      {"mbl",
       {
           {"n", Kind::integer, 10, {}},
           {"j0", Kind::number, 0.5, {}},  // kHz
           {"alpha", Kind::number, 1.13, {}},
           {"b_over_j0", Kind::number, 4.0, {}},
           {"w_over_j0", Kind::number, 0.0, {}},
           {"seeds", Kind::integer, 30, {}},
           {"t_end_j0", Kind::number, 10.0, {}},
           {"steps", Kind::integer, 100, {}},
           {"disorder_axis", Kind::string, "z", kAxes},
       }},
      {"dtc",
       {
           {"n", Kind::integer, 10, {}},
           {"epsilon", Kind::number, 0.03, {}},
           {"g", Kind::number, 1.0, {}},   // kHz
           {"j0", Kind::number, 0.16, {}}, // kHz
           {"alpha", Kind::number, 1.5, {}},
           {"t_ising", Kind::number, 1.0, {}},
           {"w", Kind::number, 0.5, {}},   // kHz
           {"n_periods", Kind::integer, 100, {}},
           {"disorder_axis", Kind::string, "x", kAxes},
       }},
      {"dqpt",
       {
           {"n", Kind::integer, 10, {}},
           {"j0", Kind::number, 0.5, {}},  // kHz
           {"alpha", Kind::number, 3.0, {}},
           {"b_over_j0", Kind::number, 2.0, {}},
           {"initial", Kind::string, "x_ordered", {"x_ordered", "z_polarized"}},
           {"t_end_j0", Kind::number, 2.0, {}},
           {"steps", Kind::integer, 40, {}},
           {"sweep_fields_over_j0", Kind::number_list, json::array(), {}},
           {"sweep_t_lo_j0", Kind::number, 5.0, {}},
           {"sweep_t_hi_j0", Kind::number, 25.0, {}},
           {"sweep_samples", Kind::integer, 81, {}},
       }},
      {"otoc",
       {
           {"coupling_axis", Kind::string, "x", kAxes},
           {"field", Kind::number, 0.0, {}},  // kHz
           {"field_axis", Kind::string, "z", kAxes},
           {"w_site", Kind::integer, 0, {}},
           {"w_axis", Kind::string, "z", kAxes},
           {"v_site", Kind::integer, -1, {}},  // -1: last site
           {"v_axis", Kind::string, "z", kAxes},
           {"initial_axis", Kind::string, "z", kAxes},
           {"initial", Kind::string, "down", {"down", "up", "neel"}},
           {"tau_end", Kind::number, kRequired, {}},
           {"steps", Kind::integer, 50, {}},
       }},
      {"qaoa",
       {
           {"p", Kind::integer, 1, {}},
           {"optimizer", Kind::string, "gradient_descent", {"grid", "gradient_descent"}},
           {"field", Kind::number, 1.0, {}},
           {"grid_points", Kind::integer, 41, {}},
           {"fd_delta", Kind::number, 0.05, {}},
           {"step", Kind::number, 0.2, {}},
           {"max_iterations", Kind::integer, 50, {}},
           {"gamma_max", Kind::number, 0.25 * std::numbers::pi, {}},
           {"beta_max", Kind::number, 0.5 * std::numbers::pi, {}},
       }},
      {"bench",
       {
           {"mode", Kind::string, "pairs", {"pairs", "chain"}},
           {"pairs", Kind::pair_list, json::array(), {}},
           {"t_end", Kind::number, kRequired, {}},
           {"steps", Kind::integer, 400, {}},
       }},
  };
  return m;
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw validation_error(path + ": " + msg);
}

json check_value(const Field& f, const json& v, const std::string& path) {
  switch (f.kind) {
    case Kind::number:
      if (!v.is_number() || !std::isfinite(v.get<double>())) fail(path, "expected a finite number");
      return v.get<double>();
    case Kind::integer: {
      if (!v.is_number()) fail(path, "expected an integer");
      const double d = v.get<double>();
      if (d != std::floor(d) || std::abs(d) > 9.0e15) fail(path, "expected an integer");
      return static_cast<std::int64_t>(d);
    }
    case Kind::string:
      if (!v.is_string()) fail(path, "expected a string");
      if (!f.choices.empty()) {
        const auto s = v.get<std::string>();
        bool ok = false;
        for (const auto& c : f.choices) ok = ok || c == s;
        if (!ok) {
          std::string all;
          for (const auto& c : f.choices) all += (all.empty() ? "" : ", ") + c;
          fail(path, "'" + s + "' is not one of {" + all + "}");
        }
      }
      return v;
    case Kind::boolean:
      if (!v.is_boolean()) fail(path, "expected true or false");
      return v;
    case Kind::number_list: {
      if (!v.is_array()) fail(path, "expected an array of numbers");
      json out = json::array();
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_number() || !std::isfinite(v[k].get<double>()))
          fail(path + "[" + std::to_string(k) + "]", "expected a finite number");
        out.push_back(v[k].get<double>());
      }
      return out;
    }
    case Kind::pair_list: {
      if (!v.is_array()) fail(path, "expected an array of [i, j] pairs");
      json out = json::array();
      for (std::size_t k = 0; k < v.size(); ++k) {
        const auto& p = v[k];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
          fail(path + "[" + std::to_string(k) + "]", "expected [i, j] with integer entries");
        out.push_back(json::array({p[0].get<std::int64_t>(), p[1].get<std::int64_t>()}));
      }
      return out;
    }
    case Kind::matrix: {
      if (!v.is_array()) fail(path, "expected a square array of rows");
      json out = json::array();
      for (std::size_t r = 0; r < v.size(); ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        if (!v[r].is_array() || v[r].size() != v.size()) fail(rp, "expected a row of length " + std::to_string(v.size()));
        json row = json::array();
        for (std::size_t c = 0; c < v.size(); ++c) {
          if (!v[r][c].is_number() || !std::isfinite(v[r][c].get<double>()))
            fail(rp + "[" + std::to_string(c) + "]", "expected a finite number");
          row.push_back(v[r][c].get<double>());
        }
        out.push_back(row);
      }
      return out;
    }
  }
  return v;
}

json resolve(const Schema& schema, const json& in, const std::string& path) {
  if (!in.is_object()) fail(path, "expected an object");
  for (auto it = in.begin(); it != in.end(); ++it) {
    bool known = false;
    for (const auto& f : schema) known = known || f.name == it.key();
    if (!known) fail(path + "." + it.key(), "unknown key");
  }
  json out = json::object();
  for (const auto& f : schema) {
    const std::string p = path + "." + f.name;
    if (in.contains(f.name)) {
      out[f.name] = check_value(f, in.at(f.name), p);
    } else {
      if (f.def.is_null()) fail(p, "required key missing");
      out[f.name] = check_value(f, f.def, p);
    }
  }
  return out;
}

std::uint64_t parse_u64(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  fail(path, "expected a non-negative integer");
}

void require_positive(const json& block, const std::string& key, const std::string& path) {
  if (!(block.at(key).get<double>() > 0.0)) fail(path + "." + key, "must be > 0");
}

// Cross-field checks that the schema types alone do not catch.
void check_semantics(const RunConfig& c) {
  if (!c.trap.is_null()) {
    if (c.trap.at("n_ions").get<std::int64_t>() < 1) fail("trap.n_ions", "must be >= 1");
    require_positive(c.trap, "omega_z", "trap");
    require_positive(c.trap, "omega_x", "trap");
    require_positive(c.trap, "mass_amu", "trap");
  }
  if (!c.couplings.is_null()) {
    const auto kind = c.couplings.at("kind").get<std::string>();
    if (kind == "power_law" && c.couplings.at("n").get<std::int64_t>() < 2)
      fail("couplings.n", "power-law couplings need n >= 2");
    if (kind == "matrix" && c.couplings.at("matrix").size() < 2) fail("couplings.matrix", "need at least a 2x2 matrix");
    if (kind == "trap" && (c.trap.is_null() || c.beam.is_null()))
      fail("couplings.kind", "'trap' couplings need trap and beam sections");
  }
  const auto& p = c.params;
  for (const char* k : {"steps", "n", "seeds", "n_periods", "record", "gap_points", "omega_steps", "p", "grid_points",
                        "max_iterations", "n_tones", "restarts", "max_evals", "sweep_samples"})
    if (p.contains(k) && p.at(k).get<std::int64_t>() < 1) fail(std::string("params.") + k, "must be >= 1");
  for (const char* k : {"t_end", "tau_end", "t_f", "t_end_j0", "g", "rabi_max"})
    if (p.contains(k)) require_positive(p, k, "params");
}

bool needs(const std::string& experiment, const char* section) {
  static const std::map<std::string, std::vector<std::string>> req = {
      {"crystal", {"trap"}},        {"couplings", {"couplings"}}, {"design", {"trap"}},
      {"evolve", {"couplings"}},    {"ramp", {"couplings"}},      {"spectroscopy", {"couplings"}},
      {"quench", {"couplings"}},    {"mbl", {}},                  {"dtc", {}},
      {"dqpt", {}},                 {"otoc", {"couplings"}},      {"qaoa", {"couplings"}},
      {"bench", {"couplings"}},
  };
  for (const auto& s : req.at(experiment))
    if (s == section) return true;
  return false;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
  return experiment == o.experiment && seed == o.seed && output == o.output && threads == o.threads &&
         shots == o.shots && trap == o.trap && beam == o.beam && couplings == o.couplings && params == o.params;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"crystal", "couplings", "design", "evolve", "ramp",
                                                 "spectroscopy", "quench", "mbl", "dtc", "dqpt",
                                                 "otoc", "qaoa", "bench"};
  return names;
}

RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw validation_error(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("$", "config must be a JSON object");
  static const std::vector<std::string> top = {"experiment", "units", "seed", "output", "threads", "shots",
                                               "trap", "beam", "couplings", "params"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool known = false;
    for (const auto& k : top) known = known || k == it.key();
    if (!known) fail(it.key(), "unknown key");
  }
  if (!doc.contains("units")) fail("units", "unit declaration missing (expected {\"frequency\": \"kHz\", \"time\": \"ms\"})");
  const json& u = doc.at("units");
  if (!u.is_object()) fail("units", "expected an object");
  for (auto it = u.begin(); it != u.end(); ++it)
    if (it.key() != "frequency" && it.key() != "time") fail("units." + it.key(), "unknown key");
  if (!u.contains("frequency")) fail("units.frequency", "required key missing");
  if (!u.contains("time")) fail("units.time", "required key missing");
  if (u.at("frequency") != "kHz") fail("units.frequency", "only \"kHz\" is supported");
  if (u.at("time") != "ms") fail("units.time", "only \"ms\" is supported");

  RunConfig c;
  if (!doc.contains("experiment") || !doc.at("experiment").is_string()) fail("experiment", "required string missing");
  c.experiment = doc.at("experiment").get<std::string>();
  const auto& schemas = param_schemas();
  if (!schemas.count(c.experiment)) fail("experiment", "unknown experiment '" + c.experiment + "'");
  if (doc.contains("seed")) c.seed = parse_u64(doc.at("seed"), "seed");
  if (doc.contains("output")) {
    if (!doc.at("output").is_string() || doc.at("output").get<std::string>().empty())
      fail("output", "expected a non-empty string");
    c.output = doc.at("output").get<std::string>();
  }
  if (doc.contains("threads")) {
    const auto t = parse_u64(doc.at("threads"), "threads");
    if (t > 4096) fail("threads", "unreasonable thread count");
    c.threads = static_cast<int>(t);
  }
  if (doc.contains("shots")) c.shots = parse_u64(doc.at("shots"), "shots");
  if (doc.contains("trap")) c.trap = resolve(trap_schema(), doc.at("trap"), "trap");
  if (doc.contains("beam")) c.beam = resolve(beam_schema(), doc.at("beam"), "beam");
  if (doc.contains("couplings")) c.couplings = resolve(couplings_schema(), doc.at("couplings"), "couplings");
  c.params = resolve(schemas.at(c.experiment), doc.contains("params") ? doc.at("params") : json::object(), "params");
  for (const char* s : {"trap", "couplings"})
    if (needs(c.experiment, s) && (s == std::string("trap") ? c.trap : c.couplings).is_null())
      fail(s, "section required by experiment '" + c.experiment + "'");
  check_semantics(c);
  return c;
}

json serialize_config(const RunConfig& c) {
  json doc = json::object();
  doc["experiment"] = c.experiment;
  doc["units"] = {{"frequency", "kHz"}, {"time", "ms"}};
  doc["seed"] = c.seed;
  doc["output"] = c.output;
  doc["threads"] = c.threads;
  doc["shots"] = c.shots;
  if (!c.trap.is_null()) doc["trap"] = c.trap;
  if (!c.beam.is_null()) doc["beam"] = c.beam;
  if (!c.couplings.is_null()) doc["couplings"] = c.couplings;
  doc["params"] = c.params;
  return doc;
}

}  // namespace ionspin
