#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "nhdtc/basis.hpp"
#include "nhdtc/diagnostics.hpp"
#include "nhdtc/dynamics.hpp"
#include "nhdtc/errors.hpp"
#include "nhdtc/fitting.hpp"
#include "nhdtc/model.hpp"
#include "nhdtc/spectral.hpp"
#include "nhdtc/symmetry.hpp"

using namespace nhdtc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string num(double v, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

DriveParams drive(int sites, double ea, double eb) {
  DriveParams p;
  p.sites = sites;
  p.eps_a = ea;
  p.eps_b = eb;
  return p;
}

const std::vector<double> kEpsGrid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
const std::vector<double> kScalingWindow{0.25, 0.3, 0.35, 0.4, 0.45};
const std::vector<int> kScalingSizes{4, 5, 6, 7, 8};

Outcome ideal_alternation() {
  constexpr double kTol = 1e-14;
  double worst = 0.0;
  for (int l : {2, 4, 8}) {
    const auto t = evolve_trace(drive(l, 0, 0), init_polarized(l), 100);
    for (int n = 0; n <= 100; ++n) worst = std::max(worst, std::abs(t.total[n] - (n % 2 ? -1.0 : 1.0)));
  }
  return {worst < kTol, "max |I(nT) - (-1)^n| = " + num(worst) + " over L in {2,4,8}, 100 periods (tol " + num(kTol) + ")"};
}

Outcome spectrum_realness() {
  constexpr double kDecayTol = 1e-8, kResidualTol = 1e-7;
  double decay = 0, bio = 0, comp = 0, rec = 0;
  for (auto [l, kind] : {std::pair{6, BasisKind::PairSector}, {4, BasisKind::Full}})
    for (double eps : kEpsGrid)
      for (double sign : {1.0, -1.0}) {
        const auto op = build_floquet(drive(l, eps, sign * eps), BasisDescriptor(l, kind), OperatorForm::DenseMatrix);
        const auto spec = eigendecompose(op);
        decay = std::max(decay, spec.max_decay());
        bio = std::max(bio, spec.biorthogonality_residual());
        comp = std::max(comp, spec.completeness_residual());
        rec = std::max(rec, spec.reconstruction_residual(op.dense().matrix));
      }
  const bool ok = decay < kDecayTol && bio < kResidualTol && comp < kResidualTol && rec < kResidualTol;
  return {ok, "max|Im E| " + num(decay) + ", biorthogonality " + num(bio) + ", completeness " + num(comp) +
                  ", reconstruction " + num(rec) + " (tol " + num(kDecayTol) + " / " + num(kResidualTol) + ")"};
}

Outcome pi_pairing() {
  constexpr double kWeightFloor = 0.9, kDeltaE = 0.05;
  double min_weight = INFINITY, max_de = 0.0;
  const auto ref = init_polarized(6, BasisKind::PairSector);
  for (const auto& protocol : {Protocol::hermitian(), Protocol::non_reciprocal()})
    for (double eps : {0.0, 0.025, 0.05, 0.075, 0.1}) {
      const auto spec = eigendecompose(
          build_floquet(protocol.at(drive(6, 0, 0), eps), ref.desc, OperatorForm::DenseMatrix));
      const Eigen::VectorXd w = overlap_weights(spec, ref).cwiseAbs();
      std::vector<double> sorted(w.data(), w.data() + w.size());
      std::sort(sorted.rbegin(), sorted.rend());
      min_weight = std::min(min_weight, sorted[0] + sorted[1]);
      max_de = std::max(max_de, find_pi_pair(spec, ref).deviation);
    }
  return {min_weight > kWeightFloor && max_de < kDeltaE,
          "L=6, eps in [0,0.1], both protocols: min top-2 |A| sum " + num(min_weight) + " (> " + num(kWeightFloor) +
              "), max delta E " + num(max_de) + " (< " + num(kDeltaE) + ")"};
}

Outcome scaling_exponents() {
  constexpr double kBetaH = 1.033, kBetaHTol = 0.15, kBetaNH = 2.089, kBetaNHTol = 0.25;
  constexpr double kRatioLo = 1.6, kRatioHi = 2.4, kR2Floor = 0.9;
  const DriveParams base;
  const auto h = alpha_scan(base, Protocol::hermitian(), kScalingWindow, kScalingSizes);
  const auto nh = alpha_scan(base, Protocol::non_reciprocal(), kScalingWindow, kScalingSizes);
  const double beta_h = beta_fit(h).exponent, beta_nh = beta_fit(nh).exponent;
  double rmin = INFINITY, rmax = 0.0, min_r2 = 1.0, min_alpha = INFINITY;
  bool nh_above = true;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double r = nh[i].fit.exponent / h[i].fit.exponent;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    min_r2 = std::min({min_r2, h[i].fit.r2, nh[i].fit.r2});
    min_alpha = std::min({min_alpha, h[i].fit.exponent, nh[i].fit.exponent});
    nh_above = nh_above && nh[i].fit.exponent > h[i].fit.exponent;
  }
  const bool primary = std::abs(beta_h - kBetaH) <= kBetaHTol && std::abs(beta_nh - kBetaNH) <= kBetaNHTol &&
                       rmin >= kRatioLo && rmax <= kRatioHi;
  const bool fallback = min_alpha > 0.0 && nh_above && min_r2 > kR2Floor;
  std::string detail = "beta_H " + num(beta_h) + " (target " + num(kBetaH) + "+-" + num(kBetaHTol) + "), beta_NH " +
                       num(beta_nh) + " (target " + num(kBetaNH) + "+-" + num(kBetaNHTol) + "), alpha ratio in [" +
                       num(rmin) + ", " + num(rmax) + "] (target [1.6, 2.4]); primary " + (primary ? "PASS" : "FAIL") +
                       "; fallback (alpha > 0, alpha_NH > alpha_H, R2 > 0.9; min R2 " + num(min_r2, 6) + ") " +
                       (fallback ? "PASS" : "FAIL");
  return {primary || fallback, detail};
}

Outcome lifetime_law() {
  constexpr double kTolPeriods = 2.0;
  constexpr int kWindow = 100;
  std::string detail;
  bool ok = true;
  for (int l : {5, 6}) {
    const DriveParams p = drive(l, 0.2, 0.2);
    const double tau = lifetime_periods(dominant_pair(p).deviation);
    const int periods = static_cast<int>(std::ceil(tau)) + 2 * kWindow;
    const auto trace = evolve_trace(p, init_polarized(l, BasisKind::PairSector), periods);
    const auto zero = envelope_first_zero(trace.total, kWindow);
    const double miss = zero ? std::abs(*zero - tau) : INFINITY;
    ok = ok && miss <= kTolPeriods;
    detail += (detail.empty() ? "" : "; ") + std::string("L=") + std::to_string(l) + " tau " + num(tau, 6) +
              ", envelope zero " + (zero ? num(*zero, 6) : std::string("none")) + ", |diff| " + num(miss, 3);
  }
  return {ok, detail + " (tol " + num(kTolPeriods) + " periods)"};
}

Outcome melting_transition() {
  constexpr double kEcH = 0.33, kEcNH = 0.52, kTol = 0.05;
  const auto grid = linear_grid(0.0, 0.8, 0.01);
  const DriveParams base = drive(8, 0, 0);
  const double h = melt_scan(base, Protocol::hermitian(), grid, 100).eps_c;
  const double nh = melt_scan(base, Protocol::non_reciprocal(), grid, 100).eps_c;
  const bool ok_h = std::abs(h - kEcH) <= kTol, ok_nh = std::abs(nh - kEcNH) <= kTol;
  return {ok_h && ok_nh && nh > h, "L=8, N=100: eps_c^H " + num(h) + " (target " + num(kEcH) + "+-" + num(kTol) +
                                       (ok_h ? ", ok" : ", out of range") + "), eps_c^NH " + num(nh) + " (target " +
                                       num(kEcNH) + "+-" + num(kTol) + (ok_nh ? ", ok" : ", out of range") +
                                       "), NH > H " + (nh > h ? "yes" : "no")};
}

Outcome gamma_generalization() {
  constexpr double kBeta02 = 1.803, kTol = 0.25;
  const auto rows = gamma_sweep(DriveParams{}, {0.0, 0.1, 0.2}, kScalingWindow, kScalingSizes);
  bool monotone = true;
  std::string detail;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    detail += (i ? ", " : "") + std::string("beta(") + num(rows[i].gamma) + ") " + num(rows[i].beta.exponent) + "+-" +
              num(rows[i].beta.exponent_se, 2);
    if (i > 0) {
      const double slack = std::hypot(rows[i].beta.exponent_se, rows[i - 1].beta.exponent_se);
      monotone = monotone && rows[i].beta.exponent <= rows[i - 1].beta.exponent + slack;
    }
  }
  const bool ok_value = std::abs(rows[2].beta.exponent - kBeta02) <= kTol;
  return {ok_value && monotone, detail + "; target beta(0.2) " + num(kBeta02) + "+-" + num(kTol) +
                                    ", nonincreasing within combined standard error " + (monotone ? "yes" : "no")};
}

Outcome symmetry_certificates() {
  constexpr double kTol = 1e-10;
  double pt = 0, parity = 0, square = 0;
  for (int l = 2; l <= 4; ++l)
    for (double eps : kEpsGrid)
      for (double sign : {1.0, -1.0}) {
        const SymmetryReport r = pt_report(drive(l, eps, sign * eps));
        pt = std::max({pt, r.pt_ising, r.pt_hopping});
        parity = std::max(parity, r.parity_commutator);
        square = std::max(square, r.parity_square);
      }
  return {pt < kTol && parity < kTol && square == 0.0,
          "L=2..4 grid: max PT commutator " + num(pt) + ", max |[P,U_F]| " + num(parity) + ", max |P^2-1| " +
              num(square) + " (tol " + num(kTol) + ", exact 0)"};
}

Outcome oracle_equivalence() {
  constexpr double kTol = 1e-10;
  const std::vector<std::pair<double, double>> params{{0.0, 0.0}, {0.2, -0.2}, {0.3, 0.3}, {0.15, -0.4}};
  double gate_dense = 0, evolution = 0, spectra = 0, expm = 0;
  for (auto [ea, eb] : params) {
    for (int l = 1; l <= 3; ++l)
      for (auto kind : {BasisKind::Full, BasisKind::PairSector}) {
        const BasisDescriptor d(l, kind);
        const auto seq = build_floquet(drive(l, ea, eb), d, OperatorForm::GateSequence);
        const auto dense = build_floquet(drive(l, ea, eb), d, OperatorForm::DenseMatrix);
        const auto n = static_cast<Eigen::Index>(d.dim());
        for (Eigen::Index k = 0; k < n; ++k) {
          Eigen::VectorXcd e = Eigen::VectorXcd::Unit(n, k);
          seq.apply(e);
          gate_dense = std::max(gate_dense, (e - dense.dense().matrix.col(k)).cwiseAbs().maxCoeff());
        }
      }
    for (int l = 1; l <= 4; ++l) {
      const DriveParams p = drive(l, ea, eb);
      StateVector full = init_polarized(l), reduced = init_polarized(l, BasisKind::PairSector);
      const auto uf = build_floquet(p, full.desc, OperatorForm::GateSequence);
      const auto ur = build_floquet(p, reduced.desc, OperatorForm::GateSequence);
      for (int n = 0; n < 20; ++n) {
        step_period_inplace(full, uf);
        step_period_inplace(reduced, ur);
        for (Index r = 0; r < reduced.desc.dim(); ++r)
          evolution = std::max(evolution, std::abs(full.amps[pair_sector_embed(r, l)] - reduced.amps[r]));
      }
      // every pair-sector eigenvalue appears in the full spectrum
      const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ef(
          build_floquet(p, full.desc, OperatorForm::DenseMatrix).dense().matrix, false);
      const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> er(
          build_floquet(p, reduced.desc, OperatorForm::DenseMatrix).dense().matrix, false);
      for (Eigen::Index k = 0; k < er.eigenvalues().size(); ++k)
        spectra = std::max(spectra, (ef.eigenvalues().array() - er.eigenvalues()[k]).abs().minCoeff());
    }
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1 + ea, 1 + eb, 0;
    const DriveParams p = drive(2, ea, eb);
    expm = std::max(expm, (pair_gate(p).middle - expm_series(Complex(0, -p.swap_phase_base) * m)).cwiseAbs().maxCoeff());
  }
  const bool ok = gate_dense < kTol && evolution < kTol && spectra < kTol && expm < kTol;
  return {ok, "gate vs dense " + num(gate_dense) + ", full vs pair evolution " + num(evolution) + ", spectra " +
                  num(spectra) + ", closed-form vs series gate " + num(expm) + " (tol " + num(kTol) + ")"};
}

Outcome theta_robustness() {
  constexpr int kPeriods = 30;
  const std::vector<double> thetas{0.0, kPi / 16, kPi / 8};
  bool nh_all = true, h_none = true;
  std::string nh_s, h_s;
  for (double theta : thetas) {
    const auto nh = evolve_trace(drive(8, 0.2, -0.2), init_theta(8, theta), kPeriods);
    const auto h = evolve_trace(drive(8, 0.3, 0.3), init_theta(8, theta), kPeriods);
    const bool a = alternates(normalized_total(nh), kPeriods), b = alternates(normalized_total(h), kPeriods);
    nh_all = nh_all && a;
    h_none = h_none && !b;
    nh_s += std::string(nh_s.empty() ? "" : "/") + (a ? "yes" : "no");
    h_s += std::string(h_s.empty() ? "" : "/") + (b ? "yes" : "no");
  }
  return {nh_all && h_none, "L=8, 30 periods, theta 0/pi16/pi8: NH eps=0.2 alternates " + nh_s +
                                " (want all yes), H eps=0.3 alternates " + h_s + " (want all no)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "criterion number(s) to run (default all)");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "ideal period doubling", 1.0, ideal_alternation},
      {2, "spectrum realness and biorthogonality", 10.0, spectrum_realness},
      {3, "pi pairing at small eps", 10.0, pi_pairing},
      {4, "scaling exponents", 300.0, scaling_exponents},
      {5, "lifetime law", 30.0, lifetime_law},
      {6, "melting transition", 600.0, melting_transition},
      {7, "gamma generalization", 600.0, gamma_generalization},
      {8, "symmetry certificates", 10.0, symmetry_certificates},
      {9, "oracle equivalence", 10.0, oracle_equivalence},
      {10, "theta-state robustness", 30.0, theta_robustness},
  };

  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = out.pass && in_time;
    all = all && pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << out.detail
              << "; runtime " << num(seconds, 3) << " s (budget " << num(c.budget_seconds) << " s"
              << (in_time ? "" : ", exceeded") << ")" << std::endl;
  }
  return all ? 0 : 1;
}
