#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nhdtc/cli/config.hpp"
#include "nhdtc/csv.hpp"
#include "nhdtc/dynamics.hpp"
#include "nhdtc/spectral.hpp"
#include "nhdtc/symmetry.hpp"

namespace nhdtc::cli {

inline constexpr const char* kArtifactVersion = "1.0.0";

std::string sha256_hex(std::string_view data);

/// Writes `table` to `path`; returns the SHA-256 of the bytes written.
std::string emit_csv(const Table& table, const std::filesystem::path& path);

struct OutputFile {
  std::string name;
  std::string digest;
  std::size_t bytes = 0;
};

struct RunManifest {
  ExperimentConfig config;
  std::vector<std::pair<std::string, double>> stage_seconds;
  std::vector<OutputFile> outputs;
  std::vector<std::pair<std::string, std::string>> results;  // headline numbers

  std::string to_text() const;
  std::string result(const std::string& key) const;
};

/// Output directory plus the manifest being accumulated.
class RunContext {
 public:
  explicit RunContext(ExperimentConfig config);

  const ExperimentConfig& config() const { return manifest_.config; }
  void write_csv(const std::string& name, const Table& table);
  void write_text(const std::string& name, const std::string& text);
  void add_result(const std::string& key, const std::string& value);

  template <typename Fn>
  auto stage(const std::string& name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    struct Record {
      RunContext* ctx;
      std::string name;
      std::chrono::steady_clock::time_point start;
      ~Record() {
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
        ctx->manifest_.stage_seconds.emplace_back(name, dt.count());
      }
    } record{this, name, start};
    return fn();
  }

  /// Writes manifest.txt and returns the manifest.
  RunManifest finish();

 private:
  std::filesystem::path dir_;
  RunManifest manifest_;
};

// Table builders, shared by presets and tests.
Table trace_table(const ImbalanceTrace& trace);
Table normalized_trace_table(const ImbalanceTrace& trace);
Table spectrum_table(const BiorthogonalSpectrum& spec, const Eigen::VectorXcd& weights);

RunManifest run_preset(const std::string& preset, const ExperimentConfig& config);
RunManifest run_sweep(const ExperimentConfig& config);
SymmetryReport run_ptcheck(const ExperimentConfig& config);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Fast invariant suite used by `nhdtc validate`.
std::vector<CheckResult> validate_suite(int workers = 1);

/// Compact label for numbers in file names, e.g. 0.25 -> "0.25".
std::string label(double value);

}  // namespace nhdtc::cli
