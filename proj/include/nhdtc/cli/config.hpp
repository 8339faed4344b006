#pragma once

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "nhdtc/basis.hpp"
#include "nhdtc/dynamics.hpp"
#include "nhdtc/model.hpp"
#include "nhdtc/spectral.hpp"
#include "nhdtc/symmetry.hpp"

namespace nhdtc::cli {

/// Everything a run needs, serializable as flat `key = value` lines.
struct ExperimentConfig {
  std::string preset;
  std::string pipeline;  // sweep only: trace, spectrum, deltae, melt

  // drive
  int sites = 8;
  double eps_a = 0.0;
  double eps_b = 0.0;
  double jz = 1.0;
  double t1 = 0.5;
  double t2 = 0.5;
  std::optional<double> swap_phase_base = std::numbers::pi / 2;  // nullopt = literal convention

  // grids
  std::vector<double> eps_list;
  std::vector<int> sizes;
  std::vector<double> gamma_list;
  std::vector<double> theta_list;
  double eps_min = 0.0;
  double eps_max = 0.8;
  double eps_step = 0.01;

  int n_periods = 100;
  int samples = 100;
  int envelope_window = 100;
  std::string basis = "pair";  // pair or full
  std::string protocols = "H,NH";
  double gamma = 0.0;

  std::string out_dir = "out";
  int workers = 1;

  // conventions and tolerances
  NormPolicy norm_policy = NormPolicy::RenormalizeEachPeriod;
  ParityKind parity = ParityKind::ReflectionChainSwap;
  double dominance_floor = 0.5;
  double scaling_dominance_floor = 0.05;
  double gap_window = 0.5;
  double condition_limit = 1e8;
  Index dense_limit = kDefaultDenseLimit;
  Index state_limit = kDefaultStateLimit;

  DriveParams drive() const;
  DriveParams drive(int sites_override) const;
  std::vector<Protocol> protocol_list() const;
  BasisKind basis_kind() const;
  SpectralOptions spectral() const;
  PairingOptions pairing() const;

  /// Sets one key from its text value. Unknown keys throw InvalidConfig.
  void set(const std::string& key, const std::string& value);
  /// All keys in a fixed order.
  std::string to_text() const;
  static ExperimentConfig from_text(const std::string& text);
  static ExperimentConfig from_text(const std::string& text, ExperimentConfig base);

  /// Defaults for a named preset (fig1..fig5, figS2, ptcheck).
  static ExperimentConfig for_preset(const std::string& preset);

  bool operator==(const ExperimentConfig&) const = default;
};

std::vector<std::string> preset_names();

/// Splits "key=value"; throws UsageError otherwise.
std::pair<std::string, std::string> split_override(const std::string& arg);

}  // namespace nhdtc::cli
