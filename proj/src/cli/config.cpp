#include "nhdtc/cli/config.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "nhdtc/csv.hpp"
#include "nhdtc/diagnostics.hpp"
#include "nhdtc/errors.hpp"

namespace nhdtc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw InvalidConfig(key + ": expected an integer, got '" + value + "'");
  }
}

double parse_num(const std::string& key, const std::string& value) {
  // "pi/8" style fractions are accepted for angles.
  if (value.rfind("pi", 0) == 0) {
    if (value == "pi") return std::numbers::pi;
    if (value.size() > 3 && value[2] == '/') return std::numbers::pi / parse_num(key, value.substr(3));
  }
  try {
    return parse_double(value);
  } catch (const Error&) {
    throw InvalidConfig(key + ": expected a number, got '" + value + "'");
  }
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::vector<int> range_ints(int lo, int hi) {
  std::vector<int> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

}  // namespace

DriveParams ExperimentConfig::drive() const { return drive(sites); }

DriveParams ExperimentConfig::drive(int sites_override) const {
  DriveParams p;
  p.sites = sites_override;
  p.eps_a = eps_a;
  p.eps_b = eps_b;
  p.jz = jz;
  p.t1 = t1;
  p.t2 = t2;
  p.swap_phase_base = swap_phase_base ? *swap_phase_base : p.literal_swap_phase();
  p.validate();
  return p;
}

std::vector<Protocol> ExperimentConfig::protocol_list() const {
  std::vector<Protocol> out;
  for (const auto& name : split_list(protocols)) {
    if (name == "H")
      out.push_back(Protocol::hermitian());
    else if (name == "NH")
      out.push_back(Protocol::non_reciprocal(gamma));
    else
      throw InvalidConfig("protocols: unknown protocol '" + name + "' (H, NH)");
  }
  if (out.empty()) throw InvalidConfig("protocols: empty list");
  return out;
}

BasisKind ExperimentConfig::basis_kind() const {
  return basis == "full" ? BasisKind::Full : BasisKind::PairSector;
}

SpectralOptions ExperimentConfig::spectral() const { return {dense_limit, condition_limit, workers}; }

PairingOptions ExperimentConfig::pairing() const { return {dominance_floor, gap_window}; }

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  auto doubles = [&] {
    std::vector<double> out;
    for (const auto& item : split_list(value)) out.push_back(parse_num(key, item));
    return out;
  };
  if (key == "preset") preset = value;
  else if (key == "pipeline") pipeline = value;
  else if (key == "L") sites = static_cast<int>(parse_int(key, value));
  else if (key == "eps_a") eps_a = parse_num(key, value);
  else if (key == "eps_b") eps_b = parse_num(key, value);
  else if (key == "Jz") jz = parse_num(key, value);
  else if (key == "t1") t1 = parse_num(key, value);
  else if (key == "t2") t2 = parse_num(key, value);
  else if (key == "swap_phase_base") {
    if (value == "literal") swap_phase_base.reset();
    else swap_phase_base = parse_num(key, value);
  } else if (key == "eps_list") eps_list = doubles();
  else if (key == "L_list") {
    sizes.clear();
    for (const auto& item : split_list(value)) {
      const auto dash = item.find('-');
      if (dash != std::string::npos && dash > 0) {
        for (int l : range_ints(static_cast<int>(parse_int(key, item.substr(0, dash))),
                                static_cast<int>(parse_int(key, item.substr(dash + 1)))))
          sizes.push_back(l);
      } else {
        sizes.push_back(static_cast<int>(parse_int(key, item)));
      }
    }
  } else if (key == "gamma_list") gamma_list = doubles();
  else if (key == "theta_list") theta_list = doubles();
  else if (key == "eps_min") eps_min = parse_num(key, value);
  else if (key == "eps_max") eps_max = parse_num(key, value);
  else if (key == "eps_step") eps_step = parse_num(key, value);
  else if (key == "n_periods") n_periods = static_cast<int>(parse_int(key, value));
  else if (key == "samples") samples = static_cast<int>(parse_int(key, value));
  else if (key == "envelope_window") envelope_window = static_cast<int>(parse_int(key, value));
  else if (key == "basis") {
    if (value != "pair" && value != "full") throw InvalidConfig("basis: expected pair or full");
    basis = value;
  } else if (key == "protocols") {
    ExperimentConfig probe;
    probe.protocols = value;
    probe.protocol_list();
    protocols = value;
  } else if (key == "gamma") gamma = parse_num(key, value);
  else if (key == "out_dir") out_dir = value;
  else if (key == "workers") workers = static_cast<int>(parse_int(key, value));
  else if (key == "norm_policy") {
    if (value == "renormalize") norm_policy = NormPolicy::RenormalizeEachPeriod;
    else if (value == "raw") norm_policy = NormPolicy::Raw;
    else throw InvalidConfig("norm_policy: expected renormalize or raw");
  } else if (key == "parity") parity = parse_parity(value);
  else if (key == "dominance_floor") dominance_floor = parse_num(key, value);
  else if (key == "scaling_dominance_floor") scaling_dominance_floor = parse_num(key, value);
  else if (key == "gap_window") gap_window = parse_num(key, value);
  else if (key == "condition_limit") condition_limit = parse_num(key, value);
  else if (key == "dense_limit") dense_limit = static_cast<Index>(parse_int(key, value));
  else if (key == "state_limit") state_limit = static_cast<Index>(parse_int(key, value));
  else throw InvalidConfig("unknown key '" + key + "'");
}

std::string ExperimentConfig::to_text() const {
  std::ostringstream os;
  os << "preset = " << preset << "\n"
     << "pipeline = " << pipeline << "\n"
     << "L = " << sites << "\n"
     << "eps_a = " << format_double(eps_a) << "\n"
     << "eps_b = " << format_double(eps_b) << "\n"
     << "Jz = " << format_double(jz) << "\n"
     << "t1 = " << format_double(t1) << "\n"
     << "t2 = " << format_double(t2) << "\n"
     << "swap_phase_base = " << (swap_phase_base ? format_double(*swap_phase_base) : std::string("literal")) << "\n"
     << "eps_list = " << join_doubles(eps_list) << "\n"
     << "L_list = " << join_ints(sizes) << "\n"
     << "gamma_list = " << join_doubles(gamma_list) << "\n"
     << "theta_list = " << join_doubles(theta_list) << "\n"
     << "eps_min = " << format_double(eps_min) << "\n"
     << "eps_max = " << format_double(eps_max) << "\n"
     << "eps_step = " << format_double(eps_step) << "\n"
     << "n_periods = " << n_periods << "\n"
     << "samples = " << samples << "\n"
     << "envelope_window = " << envelope_window << "\n"
     << "basis = " << basis << "\n"
     << "protocols = " << protocols << "\n"
     << "gamma = " << format_double(gamma) << "\n"
     << "out_dir = " << out_dir << "\n"
     << "workers = " << workers << "\n"
     << "norm_policy = " << (norm_policy == NormPolicy::Raw ? "raw" : "renormalize") << "\n"
     << "parity = " << to_string(parity) << "\n"
     << "dominance_floor = " << format_double(dominance_floor) << "\n"
     << "scaling_dominance_floor = " << format_double(scaling_dominance_floor) << "\n"
     << "gap_window = " << format_double(gap_window) << "\n"
     << "condition_limit = " << format_double(condition_limit) << "\n"
     << "dense_limit = " << dense_limit << "\n"
     << "state_limit = " << state_limit << "\n";
  return os.str();
}

ExperimentConfig ExperimentConfig::from_text(const std::string& text) { return from_text(text, ExperimentConfig{}); }

ExperimentConfig ExperimentConfig::from_text(const std::string& text, ExperimentConfig base) {
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw InvalidConfig("line " + std::to_string(lineno) + ": expected key = value");
    base.set(trim(stripped.substr(0, eq)), stripped.substr(eq + 1));
  }
  return base;
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5", "figS2", "ptcheck"}; }

ExperimentConfig ExperimentConfig::for_preset(const std::string& name) {
  ExperimentConfig c;
  c.preset = name;
  if (name == "fig1") {
    c.sites = 8;
    c.eps_list = {0.0, 0.1, 0.2, 0.3};
    c.n_periods = 50;
  } else if (name == "fig2") {
    c.sites = 6;
    c.eps_list = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  } else if (name == "fig3") {
    c.sizes = range_ints(4, 8);
    c.eps_list = {0.25, 0.3, 0.35, 0.4, 0.45};
  } else if (name == "fig4") {
    c.sites = 8;
    c.sizes = {6, 7, 8};
    c.eps_min = 0.0;
    c.eps_max = 0.8;
    c.eps_step = 0.01;
    c.samples = 100;
  } else if (name == "fig5") {
    c.sizes = range_ints(4, 8);
    c.eps_list = {0.25, 0.3, 0.35, 0.4, 0.45};
    c.gamma_list = {0.0, 0.1, 0.2};
  } else if (name == "figS2") {
    c.sites = 8;
    c.basis = "full";
    c.eps_list = {0.0, 0.2, 0.3};
    c.theta_list = {0.0, std::numbers::pi / 16, std::numbers::pi / 8};
    c.n_periods = 30;
  } else if (name == "ptcheck") {
    c.sizes = {2, 3, 4};
    c.eps_list = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  } else {
    std::string names;
    for (const auto& n : preset_names()) names += " " + n;
    throw UsageError("unknown preset '" + name + "'; available:" + names);
  }
  return c;
}

std::pair<std::string, std::string> split_override(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + arg + "'");
  return {trim(arg.substr(0, eq)), arg.substr(eq + 1)};
}

}  // namespace nhdtc::cli
