#include "nhdtc/cli/runner.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nhdtc/diagnostics.hpp"
#include "nhdtc/errors.hpp"
#include "nhdtc/fitting.hpp"
#include "nhdtc/parallel.hpp"

namespace nhdtc::cli {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 computation failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

namespace {

std::string write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open " + path.string() + " for writing");
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  os.close();
  if (!os) throw IoError("write failed for " + path.string());
  return sha256_hex(bytes);
}

}  // namespace

std::string emit_csv(const Table& table, const fs::path& path) { return write_file(path, table.to_csv()); }

std::string RunManifest::to_text() const {
  std::ostringstream os;
  os << "artifact: nhdtc\n"
     << "version: " << kArtifactVersion << "\n"
     << "[config]\n"
     << config.to_text() << "[results]\n";
  for (const auto& [key, value] : results) os << key << ": " << value << "\n";
  os << "[stages]\n";
  for (const auto& [name, seconds] : stage_seconds) os << name << ": " << format_double(seconds) << " s\n";
  os << "[outputs]\n";
  for (const auto& out : outputs) os << out.name << ": sha256=" << out.digest << " bytes=" << out.bytes << "\n";
  return os.str();
}

std::string RunManifest::result(const std::string& key) const {
  for (const auto& [k, v] : results)
    if (k == key) return v;
  throw InvalidConfig("manifest has no result '" + key + "'");
}

RunContext::RunContext(ExperimentConfig config) : dir_(config.out_dir) {
  manifest_.config = std::move(config);
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void RunContext::write_csv(const std::string& name, const Table& table) { write_text(name, table.to_csv()); }

void RunContext::write_text(const std::string& name, const std::string& text) {
  const std::string digest = write_file(dir_ / name, text);
  manifest_.outputs.push_back({name, digest, text.size()});
}

void RunContext::add_result(const std::string& key, const std::string& value) { manifest_.results.emplace_back(key, value); }

RunManifest RunContext::finish() {
  std::sort(manifest_.outputs.begin(), manifest_.outputs.end(),
            [](const OutputFile& a, const OutputFile& b) { return a.name < b.name; });
  write_file(dir_ / "manifest.txt", manifest_.to_text());
  return manifest_;
}

std::string label(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value == 0.0 ? 0.0 : value);
  return buf;
}

Table trace_table(const ImbalanceTrace& trace) {
  std::vector<std::string> columns{"n", "I_total"};
  for (int j = 1; j <= trace.sites(); ++j) columns.push_back("I_" + std::to_string(j));
  Table table(std::move(columns));
  for (Eigen::Index n = 0; n < trace.total.size(); ++n) {
    std::vector<Cell> row{static_cast<long long>(n), trace.total[n]};
    for (int j = 0; j < trace.sites(); ++j) row.emplace_back(trace.per_site(n, j));
    table.add_row(std::move(row));
  }
  return table;
}

Table normalized_trace_table(const ImbalanceTrace& trace) {
  const Eigen::VectorXd norm = normalized_total(trace);
  Table table({"n", "I_normalized", "I_total"});
  for (Eigen::Index n = 0; n < trace.total.size(); ++n)
    table.add_row({static_cast<long long>(n), norm[n], trace.total[n]});
  return table;
}

Table spectrum_table(const BiorthogonalSpectrum& spec, const Eigen::VectorXcd& weights) {
  Table table({"k", "phase", "decay", "re_A", "im_A"});
  for (std::size_t k = 0; k < spec.energies.size(); ++k) {
    const Complex a = weights[static_cast<Eigen::Index>(k)];
    table.add_row({static_cast<long long>(k), spec.energies[k].phase, spec.energies[k].decay, a.real(), a.imag()});
  }
  return table;
}

namespace {

void guard_state(const ExperimentConfig& c, const BasisDescriptor& desc) {
  if (desc.dim() > c.state_limit)
    throw ResourceError("state evolution needs dim " + std::to_string(desc.dim()) + " (L=" +
                        std::to_string(desc.sites()) + "), limit is " + std::to_string(c.state_limit));
}

void guard_dense(const ExperimentConfig& c, int sites) {
  const Index dim = BasisDescriptor::pair_sector(sites).dim();
  if (dim > c.dense_limit)
    throw ResourceError("dense eigensolve needs dim " + std::to_string(dim) + " (pair sector, L=" +
                        std::to_string(sites) + "), limit is " + std::to_string(c.dense_limit));
}

std::vector<int> sizes_or_single(const ExperimentConfig& c) { return c.sizes.empty() ? std::vector<int>{c.sites} : c.sizes; }

ScalingOptions scaling_options(const ExperimentConfig& c) {
  ScalingOptions o;
  o.pairing = {c.scaling_dominance_floor, c.gap_window};
  o.spectral = c.spectral();
  o.spectral.workers = 1;
  o.workers = c.workers;
  return o;
}

void run_fig1(RunContext& ctx) {
  const auto& c = ctx.config();
  const BasisDescriptor desc(c.sites, c.basis_kind());
  guard_state(c, desc);
  struct Job {
    Protocol protocol;
    double eps;
  };
  std::vector<Job> jobs;
  for (const auto& p : c.protocol_list())
    for (double eps : c.eps_list) jobs.push_back({p, eps});
  const auto traces = ctx.stage("traces", [&] {
    return parallel_map(jobs.size(), c.workers, [&](std::size_t i) {
      return evolve_trace(jobs[i].protocol.at(c.drive(), jobs[i].eps), init_polarized(c.sites, desc.kind(), c.norm_policy),
                          c.n_periods, c.state_limit);
    });
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string tag = jobs[i].protocol.tag();
    ctx.write_csv("fig1_" + tag + "_eps" + label(jobs[i].eps) + ".csv", trace_table(traces[i]));
    ctx.add_result("alternates_" + tag + "_eps" + label(jobs[i].eps),
                   alternates(traces[i].total, c.n_periods) ? "yes" : "no");
  }
}

void run_fig2(RunContext& ctx) {
  const auto& c = ctx.config();
  guard_dense(c, c.sites);
  const BasisDescriptor desc = BasisDescriptor::pair_sector(c.sites);
  const std::vector<std::pair<std::string, StateVector>> refs{
      {"psi0", init_polarized(c.sites, BasisKind::PairSector)},
      {"psi_plus", cat_state(c.sites, BasisKind::PairSector, +1)},
      {"psi_minus", cat_state(c.sites, BasisKind::PairSector, -1)}};
  struct Job {
    Protocol protocol;
    double eps;
  };
  std::vector<Job> jobs;
  for (const auto& p : c.protocol_list())
    for (double eps : c.eps_list) jobs.push_back({p, eps});
  SpectralOptions spectral = c.spectral();
  spectral.workers = 1;
  const auto spectra = ctx.stage("eigendecompose", [&] {
    return parallel_map(jobs.size(), c.workers, [&](std::size_t i) {
      return eigendecompose(build_floquet(jobs[i].protocol.at(c.drive(), jobs[i].eps), desc, OperatorForm::DenseMatrix,
                                          c.dense_limit),
                            spectral);
    });
  });
  Table pairs({"protocol", "eps", "ref", "k_plus", "k_minus", "gap", "delta_e", "dominance"});
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string tag = jobs[i].protocol.tag();
    for (const auto& [name, ref] : refs) {
      const Eigen::VectorXcd weights = overlap_weights(spectra[i], ref);
      ctx.write_csv("fig2_" + tag + "_" + name + "_eps" + label(jobs[i].eps) + ".csv", spectrum_table(spectra[i], weights));
      if (name != "psi0") continue;
      try {
        const PiPair pair = find_pi_pair(spectra[i], weights, c.pairing());
        pairs.add_row({tag, jobs[i].eps, name, static_cast<long long>(pair.plus), static_cast<long long>(pair.minus),
                       pair.gap, pair.deviation, pair.dominance()});
      } catch (const WeakPairing&) {
        pairs.add_row({tag, jobs[i].eps, name, -1LL, -1LL, std::nan(""), std::nan(""), std::nan("")});
      }
    }
  }
  ctx.write_csv("fig2_pairs.csv", pairs);
}

void write_alpha_tables(RunContext& ctx, const std::string& prefix, const std::vector<AlphaPoint>& alphas) {
  Table table({"eps", "alpha", "alpha_stderr", "r2", "excluded"});
  for (const auto& a : alphas) {
    Table curve({"L", "delta_e"});
    for (const auto& p : a.fit.points) curve.add_row({static_cast<long long>(p.x), p.y});
    for (const auto& p : a.fit.excluded) curve.add_row({static_cast<long long>(p.x), p.y});
    ctx.write_csv(prefix + "_deltaE_eps" + label(a.eps) + ".csv", curve);
    table.add_row({a.eps, a.fit.exponent, a.fit.exponent_se, a.fit.r2, static_cast<long long>(a.fit.excluded.size())});
  }
  ctx.write_csv(prefix + "_alpha.csv", table);
}

void run_fig3(RunContext& ctx) {
  const auto& c = ctx.config();
  const auto sizes = sizes_or_single(c);
  for (int l : sizes) guard_dense(c, l);
  Table betas({"protocol", "beta", "beta_stderr", "intercept", "r2", "eps_window"});
  for (const auto& protocol : c.protocol_list()) {
    const auto alphas = ctx.stage("alpha_" + protocol.tag(),
                                  [&] { return alpha_scan(c.drive(), protocol, c.eps_list, sizes, scaling_options(c)); });
    write_alpha_tables(ctx, "fig3_" + protocol.tag(), alphas);
    const FitResult beta = beta_fit(alphas);
    const std::string window = label(c.eps_list.front()) + ".." + label(c.eps_list.back());
    betas.add_row({protocol.tag(), beta.exponent, beta.exponent_se, beta.intercept, beta.r2, window});
    ctx.add_result("beta_" + protocol.tag(), format_double(beta.exponent));
  }
  ctx.write_csv("fig3_beta.csv", betas);
}

void run_fig4(RunContext& ctx) {
  const auto& c = ctx.config();
  const auto sizes = sizes_or_single(c);
  const std::vector<double> grid = linear_grid(c.eps_min, c.eps_max, c.eps_step);
  const int kl_sites = *std::max_element(sizes.begin(), sizes.end());
  std::ostringstream summary;
  for (const auto& protocol : c.protocol_list()) {
    for (int l : sizes) {
      guard_state(c, BasisDescriptor::pair_sector(l));
      DriveParams base = c.drive(l);
      const MeltScan scan = ctx.stage("melt_" + protocol.tag() + "_L" + std::to_string(l),
                                      [&] { return melt_scan_data(base, protocol, grid, c.samples, c.workers); });
      Table var({"eps", "variance", "peak"});
      for (std::size_t i = 0; i < scan.eps.size(); ++i) var.add_row({scan.eps[i], scan.variance[i], scan.peak[i]});
      ctx.write_csv("fig4_var_" + protocol.tag() + "_L" + std::to_string(l) + ".csv", var);
      std::string eps_c = "none";
      try {
        eps_c = format_double(detect_transition(scan.eps, scan.variance));
      } catch (const NoTransitionDetected&) {
      }
      const std::string key = "eps_c_" + protocol.tag() + "_L" + std::to_string(l);
      summary << key << ": " << eps_c << "\n";
      ctx.add_result(key, eps_c);
      if (l != kl_sites) continue;
      Table kl({"omega", "eps", "kl"});
      for (std::size_t i = 0; i < scan.eps.size(); ++i)
        for (std::size_t k = 0; k < scan.omega.size(); ++k) kl.add_row({scan.omega[k], scan.eps[i], scan.kl[i][k]});
      ctx.write_csv("fig4_kl_" + protocol.tag() + ".csv", kl);
    }
  }
  ctx.write_text("fig4_summary.txt", summary.str());
}

void run_fig5(RunContext& ctx) {
  const auto& c = ctx.config();
  const auto sizes = sizes_or_single(c);
  for (int l : sizes) guard_dense(c, l);
  const auto rows =
      ctx.stage("gamma_sweep", [&] { return gamma_sweep(c.drive(), c.gamma_list, c.eps_list, sizes, scaling_options(c)); });
  Table betas({"gamma", "beta", "beta_stderr", "r2"});
  for (const auto& row : rows) {
    write_alpha_tables(ctx, "fig5_g" + label(row.gamma), row.alphas);
    betas.add_row({row.gamma, row.beta.exponent, row.beta.exponent_se, row.beta.r2});
    ctx.add_result("beta_g" + label(row.gamma), format_double(row.beta.exponent));
  }
  ctx.write_csv("fig5_beta.csv", betas);
}

void run_figS2(RunContext& ctx) {
  const auto& c = ctx.config();
  const BasisDescriptor desc = BasisDescriptor::full(c.sites);
  guard_state(c, desc);
  struct Job {
    Protocol protocol;
    double eps, theta;
  };
  std::vector<Job> jobs;
  for (const auto& p : c.protocol_list())
    for (double eps : c.eps_list)
      for (double theta : c.theta_list) jobs.push_back({p, eps, theta});
  const auto traces = ctx.stage("traces", [&] {
    return parallel_map(jobs.size(), c.workers, [&](std::size_t i) {
      return evolve_trace(jobs[i].protocol.at(c.drive(), jobs[i].eps), init_theta(c.sites, jobs[i].theta, c.norm_policy),
                          c.n_periods, c.state_limit);
    });
  });
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string name = "figS2_" + jobs[i].protocol.tag() + "_eps" + label(jobs[i].eps) + "_theta" + label(jobs[i].theta);
    ctx.write_csv(name + ".csv", normalized_trace_table(traces[i]));
    ctx.add_result("alternates_" + name.substr(6), alternates(normalized_total(traces[i]), c.n_periods) ? "yes" : "no");
  }
}

void run_ptcheck_grid(RunContext& ctx) {
  const auto& c = ctx.config();
  Table table({"L", "eps_a", "eps_b", "pt_ising", "pt_hopping", "pt_ising_reflection", "pt_hopping_reflection",
               "parity_commutator", "parity_square", "magnetization_commutator", "max_im_energy"});
  std::string text;
  double worst_pt = 0.0, worst_parity = 0.0, worst_square = 0.0, worst_im = 0.0;
  SymmetryOptions options;
  options.pt_parity = c.parity;
  for (int l : sizes_or_single(c)) {
    for (const auto& protocol : c.protocol_list()) {
      for (double eps : c.eps_list) {
        const SymmetryReport r = pt_report(protocol.at(c.drive(l), eps), options);
        table.add_row({static_cast<long long>(l), r.eps_a, r.eps_b, r.pt_ising, r.pt_hopping, r.pt_ising_reflection,
                       r.pt_hopping_reflection, r.parity_commutator, r.parity_square, r.magnetization_commutator,
                       r.max_im_energy});
        text += r.to_text() + "\n";
        worst_pt = std::max({worst_pt, r.pt_ising, r.pt_hopping});
        worst_parity = std::max(worst_parity, r.parity_commutator);
        worst_square = std::max(worst_square, r.parity_square);
        worst_im = std::max(worst_im, r.max_im_energy);
      }
    }
  }
  ctx.write_csv("ptcheck.csv", table);
  ctx.write_text("ptcheck.txt", text);
  ctx.add_result("max_pt_commutator", format_double(worst_pt));
  ctx.add_result("max_parity_commutator", format_double(worst_parity));
  ctx.add_result("max_parity_square", format_double(worst_square));
  ctx.add_result("max_im_energy", format_double(worst_im));
}

}  // namespace

RunManifest run_preset(const std::string& preset, const ExperimentConfig& config) {
  RunContext ctx(config);
  if (preset == "fig1") run_fig1(ctx);
  else if (preset == "fig2") run_fig2(ctx);
  else if (preset == "fig3") run_fig3(ctx);
  else if (preset == "fig4") run_fig4(ctx);
  else if (preset == "fig5") run_fig5(ctx);
  else if (preset == "figS2") run_figS2(ctx);
  else if (preset == "ptcheck") ctx.stage("ptcheck", [&] { run_ptcheck_grid(ctx); });
  else ExperimentConfig::for_preset(preset);  // throws UsageError listing presets
  return ctx.finish();
}

RunManifest run_sweep(const ExperimentConfig& config) {
  RunContext ctx(config);
  const auto& c = ctx.config();
  const std::string& pipeline = c.pipeline;
  if (pipeline == "trace") {
    const BasisDescriptor desc(c.sites, c.basis_kind());
    guard_state(c, desc);
    StateVector psi = c.theta_list.empty() ? init_polarized(c.sites, desc.kind(), c.norm_policy)
                                           : init_theta(c.sites, c.theta_list.front(), c.norm_policy);
    if (!c.theta_list.empty()) guard_state(c, BasisDescriptor::full(c.sites));
    const auto trace = ctx.stage("trace", [&] { return evolve_trace(c.drive(), psi, c.n_periods, c.state_limit); });
    ctx.write_csv("sweep_trace.csv", trace_table(trace));
    if (const auto zero = envelope_first_zero(trace.total, c.envelope_window))
      ctx.add_result("envelope_first_zero", format_double(*zero));
  } else if (pipeline == "spectrum") {
    guard_dense(c, c.sites);
    const BasisDescriptor desc(c.sites, c.basis_kind());
    if (desc.dim() > c.dense_limit) throw ResourceError("dense eigensolve needs dim " + std::to_string(desc.dim()));
    const auto spec = ctx.stage("eigendecompose", [&] {
      return eigendecompose(build_floquet(c.drive(), desc, OperatorForm::DenseMatrix, c.dense_limit, c.workers), c.spectral());
    });
    const StateVector ref = init_polarized(c.sites, desc.kind());
    const Eigen::VectorXcd weights = overlap_weights(spec, ref);
    ctx.write_csv("sweep_spectrum.csv", spectrum_table(spec, weights));
    ctx.add_result("max_decay", format_double(spec.max_decay()));
    ctx.add_result("condition", format_double(spec.condition));
    try {
      const PiPair pair = find_pi_pair(spec, weights, c.pairing());
      ctx.add_result("delta_e", format_double(pair.deviation));
      ctx.add_result("dominance", format_double(pair.dominance()));
      ctx.add_result("lifetime_periods", format_double(pair.deviation > 0 ? lifetime_periods(pair.deviation) : INFINITY));
    } catch (const WeakPairing& e) {
      ctx.add_result("pairing", e.what());
    }
  } else if (pipeline == "deltae") {
    const auto sizes = sizes_or_single(c);
    for (int l : sizes) guard_dense(c, l);
    Table table({"L", "delta_e"});
    const DriveParams drive = c.drive();
    const auto points = ctx.stage("deltae", [&] {
      return parallel_map(sizes.size(), c.workers, [&](std::size_t i) {
        DriveParams p = drive;
        p.sites = sizes[i];
        return Point{static_cast<double>(sizes[i]), dominant_pair(p, {c.scaling_dominance_floor, c.gap_window}).deviation};
      });
    });
    for (const auto& p : points) table.add_row({static_cast<long long>(p.x), p.y});
    ctx.write_csv("sweep_deltae.csv", table);
    const FitResult fit = fit_exponential_decay(points);
    ctx.add_result("alpha", format_double(fit.exponent));
    ctx.add_result("alpha_stderr", format_double(fit.exponent_se));
    ctx.add_result("r2", format_double(fit.r2));
  } else if (pipeline == "melt") {
    guard_state(c, BasisDescriptor::pair_sector(c.sites));
    const std::vector<double> grid = linear_grid(c.eps_min, c.eps_max, c.eps_step);
    for (const auto& protocol : c.protocol_list()) {
      const MeltScan scan = ctx.stage("melt_" + protocol.tag(),
                                      [&] { return melt_scan_data(c.drive(), protocol, grid, c.samples, c.workers); });
      Table var({"eps", "variance", "peak"});
      for (std::size_t i = 0; i < scan.eps.size(); ++i) var.add_row({scan.eps[i], scan.variance[i], scan.peak[i]});
      ctx.write_csv("sweep_melt_" + protocol.tag() + ".csv", var);
      try {
        ctx.add_result("eps_c_" + protocol.tag(), format_double(detect_transition(scan.eps, scan.variance)));
      } catch (const NoTransitionDetected&) {
        ctx.add_result("eps_c_" + protocol.tag(), "none");
      }
    }
  } else {
    throw UsageError("sweep needs pipeline=trace|spectrum|deltae|melt, got '" + pipeline + "'");
  }
  return ctx.finish();
}

SymmetryReport run_ptcheck(const ExperimentConfig& config) {
  SymmetryOptions options;
  options.pt_parity = config.parity;
  return pt_report(config.drive(), options);
}

std::vector<CheckResult> validate_suite(int workers) {
  std::vector<std::function<CheckResult()>> checks;
  auto fmt = [](double v) { return format_double(v); };

  checks.emplace_back([&] {
    DriveParams p;
    p.sites = 4;
    const auto trace = evolve_trace(p, init_polarized(4), 20);
    double worst = 0.0;
    for (int n = 0; n <= 20; ++n) worst = std::max(worst, std::abs(trace.total[n] - (n % 2 ? -1.0 : 1.0)));
    return CheckResult{"ideal alternation I(nT) = (-1)^n, L=4", worst < 1e-12, "max deviation " + fmt(worst)};
  });
  checks.emplace_back([&] {
    DriveParams p;
    p.sites = 3;
    p.eps_a = 0.2;
    p.eps_b = -0.2;
    const auto seq = build_floquet(p, BasisDescriptor::full(3), OperatorForm::GateSequence);
    const auto dense = build_floquet(p, BasisDescriptor::full(3), OperatorForm::DenseMatrix);
    Eigen::MatrixXcd cols(64, 64);
    for (int k = 0; k < 64; ++k) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Unit(64, k);
      seq.apply(e);
      cols.col(k) = e;
    }
    const double res = (cols - dense.dense().matrix).cwiseAbs().maxCoeff();
    return CheckResult{"gate sequence equals dense operator, L=3", res < 1e-12, "residual " + fmt(res)};
  });
  checks.emplace_back([&] {
    DriveParams p;
    p.sites = 4;
    p.eps_a = 0.3;
    p.eps_b = -0.3;
    const auto spec = eigendecompose(build_floquet(p, BasisDescriptor::pair_sector(4), OperatorForm::DenseMatrix));
    const double worst = std::max(spec.biorthogonality_residual(), spec.completeness_residual());
    return CheckResult{"biorthogonal spectrum, real quasienergies (0.3,-0.3), L=4",
                       worst < 1e-7 && spec.max_decay() < 1e-8,
                       "residual " + fmt(worst) + ", max decay " + fmt(spec.max_decay())};
  });
  checks.emplace_back([&] {
    DriveParams p;
    p.sites = 3;
    p.eps_a = 0.3;
    p.eps_b = -0.3;
    const SymmetryReport r = pt_report(p);
    const double worst = std::max({r.pt_ising, r.pt_hopping, r.parity_commutator, r.parity_square});
    return CheckResult{"PT and parity certificates (0.3,-0.3), L=3", worst < 1e-10, "max norm " + fmt(worst)};
  });
  checks.emplace_back([&] {
    DriveParams p;
    p.sites = 4;
    const auto spec = fourier(evolve_trace(p, init_polarized(4, BasisKind::PairSector), 99));
    const Eigen::VectorXd amp = spec.amplitude();
    double off = 0.0;
    for (int k = 0; k < spec.samples; ++k)
      if (k != spec.pi_index()) off = std::max(off, amp[k]);
    return CheckResult{"ideal trace has a single Fourier peak at pi", std::abs(amp[spec.pi_index()] - 1.0) < 1e-12 && off < 1e-12,
                       "F(pi) " + fmt(amp[spec.pi_index()]) + ", max off-peak " + fmt(off)};
  });
  checks.emplace_back([&] {
    std::vector<Point> pts;
    for (int l = 3; l <= 7; ++l) pts.push_back({static_cast<double>(l), std::exp(-0.7 * l)});
    const FitResult fit = fit_exponential_decay(pts);
    return CheckResult{"exponential fit recovers alpha = 0.7", std::abs(fit.exponent - 0.7) < 1e-10, "alpha " + fmt(fit.exponent)};
  });
  return parallel_map(checks.size(), workers, [&](std::size_t i) {
    try {
      return checks[i]();
    } catch (const std::exception& e) {
      return CheckResult{"check " + std::to_string(i), false, e.what()};
    }
  });
}

}  // namespace nhdtc::cli
