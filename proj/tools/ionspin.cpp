// Command-line front end: one experiment per invocation.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ionspin/config.hpp"
#include "ionspin/dispatch.hpp"
#include "ionspin/errors.hpp"
#include "ionspin/output.hpp"

namespace {

struct Flags {
  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
  bool exact = false;
  std::uint64_t shots = 0;
};

int run(const std::string& experiment, const Flags& f, const CLI::App& sub) {
  std::ifstream in(f.config);
  if (!in) {
    std::cerr << "validation error: cannot read config '" << f.config << "'\n";
    return 2;
  }
  std::stringstream text;
  text << in.rdbuf();
  ionspin::RunConfig c;
  try {
    auto doc = nlohmann::json::parse(text.str());
    if (doc.is_object() && !doc.contains("experiment")) doc["experiment"] = experiment;
    c = ionspin::parse_config(doc);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "validation error: config is not valid JSON: " << e.what() << '\n';
    return 2;
  } catch (const ionspin::validation_error& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 2;
  }
  if (c.experiment != experiment) {
    std::cerr << "validation error: experiment: config names '" << c.experiment << "' but subcommand is '"
              << experiment << "'\n";
    return 2;
  }
  if (sub.count("--seed")) c.seed = f.seed;
  if (sub.count("--out")) c.output = f.out;
  if (sub.count("--threads")) {
    c.threads = f.threads;
  } else if (const char* env = std::getenv("IONSPIN_THREADS"); env != nullptr && c.threads == 0) {
    try {
      c.threads = std::max(0, std::stoi(env));
    } catch (const std::exception&) {
      std::cerr << "validation error: IONSPIN_THREADS is not an integer\n";
      return 2;
    }
  }
  if (f.exact) c.shots = 0;
  if (sub.count("--shots")) c.shots = f.shots;
  return ionspin::dispatch(c, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trapped-ion spin-model laboratory"};
  app.require_subcommand(1);
  Flags flags;
  int code = 0;
  for (const auto& name : ionspin::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", flags.config, "JSON run configuration")->required();
    sub->add_option("--seed", flags.seed, "master seed (overrides the config)");
    sub->add_option("--out", flags.out, "output directory (overrides the config)");
    sub->add_option("--threads", flags.threads, "OpenMP threads; falls back to IONSPIN_THREADS")->check(CLI::NonNegativeNumber);
    auto* exact = sub->add_flag("--exact", flags.exact, "exact expectation values");
    sub->add_option("--shots", flags.shots, "sample K measurement shots")->excludes(exact);
    sub->callback([&, name, sub] { code = run(name, flags, *sub); });
  }
  std::string summary_dir;
  CLI::App* summary = app.add_subcommand("summary", "condense result.json scalars of run directories into summary.csv");
  summary->add_option("dir", summary_dir, "directory holding run directories")->required();
  summary->callback([&] {
    try {
      std::cout << ionspin::export_summary(summary_dir);
    } catch (const ionspin::validation_error& e) {
      std::cerr << "validation error: " << e.what() << '\n';
      code = 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      code = 1;
    }
  });
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return code;
}
