#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nhdtc/cli/config.hpp"
#include "nhdtc/cli/runner.hpp"
#include "nhdtc/errors.hpp"

using namespace nhdtc;
using namespace nhdtc::cli;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot read config file " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

ExperimentConfig assemble(ExperimentConfig base, const std::string& config_file, const std::vector<std::string>& overrides,
                          const std::string& out, int workers) {
  if (!config_file.empty()) base = ExperimentConfig::from_text(read_file(config_file), base);
  for (const auto& arg : overrides) {
    const auto [key, value] = split_override(arg);
    base.set(key, value);
  }
  if (!out.empty()) base.out_dir = out;
  if (workers > 0) base.workers = workers;
  return base;
}

void print_manifest(const RunManifest& m) {
  for (const auto& [key, value] : m.results) std::cout << key << ": " << value << "\n";
  std::cout << "wrote " << m.outputs.size() << " files to " << m.config.out_dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nhdtc: non-Hermitian discrete time crystal simulator"};
  app.require_subcommand(1);

  std::string config_file, out;
  int workers = 0;
  std::vector<std::string> overrides;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_file, "key = value config file");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("overrides", overrides, "key=value overrides");
  };

  std::string preset;
  auto* run = app.add_subcommand("run", "run a named preset");
  run->add_option("preset", preset, "one of fig1 fig2 fig3 fig4 fig5 figS2 ptcheck")->required();
  add_common(run);

  auto* sweep = app.add_subcommand("sweep", "run one pipeline with explicit parameters");
  add_common(sweep);

  auto* pt = app.add_subcommand("ptcheck", "print the symmetry report for one parameter set");
  add_common(pt);

  auto* validate = app.add_subcommand("validate", "run the fast invariant checks");
  validate->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      const ExperimentConfig config = assemble(ExperimentConfig::for_preset(preset), config_file, overrides, out, workers);
      print_manifest(run_preset(preset, config));
    } else if (sweep->parsed()) {
      print_manifest(run_sweep(assemble({}, config_file, overrides, out, workers)));
    } else if (pt->parsed()) {
      ExperimentConfig base;
      base.sites = 3;
      std::cout << run_ptcheck(assemble(base, config_file, overrides, out, workers)).to_text();
    } else if (validate->parsed()) {
      bool ok = true;
      for (const auto& r : validate_suite(std::max(workers, 1))) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
        ok = ok && r.pass;
      }
      return ok ? 0 : 1;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
