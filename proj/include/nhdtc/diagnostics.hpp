#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nhdtc/dynamics.hpp"
#include "nhdtc/model.hpp"

namespace nhdtc {

/// Plain DFT of a stroboscopic trace on the grid omega_k = 2 pi k / N.
/// F(omega_k) = |sum_n I(nT) e^{-i omega_k n}| / N.
struct FourierSpectrum {
  int samples = 0;
  std::vector<double> omega;
  Eigen::VectorXcd total_transform;  // N
  Eigen::MatrixXcd site_transform;   // N x L, empty for a bare series

  Eigen::VectorXd amplitude() const { return total_transform.cwiseAbs(); }
  Eigen::MatrixXd site_amplitude() const { return site_transform.cwiseAbs(); }
  /// Grid index of omega = pi.
  int pi_index() const { return samples / 2; }
};

/// Transform of the first `samples` points (0 = all). N must be even.
FourierSpectrum fourier(const ImbalanceTrace& trace, int samples = 0);
FourierSpectrum fourier(const Eigen::VectorXd& series);

inline constexpr double kKlFloor = 1e-12;

/// Per-frequency F ln(F / F_ref) on sum-normalized, floor-regularized amplitudes.
std::vector<double> kl_divergence(const FourierSpectrum& spec, const FourierSpectrum& ref);

/// Population variance over sites of the per-site peak heights F_j(pi).
double peak_variance(const FourierSpectrum& spec);
double peak_variance(const std::vector<double>& peaks);

struct MeltScan {
  Protocol protocol;
  int sites = 0;
  int samples = 0;
  std::vector<double> eps;
  std::vector<double> omega;
  std::vector<std::vector<double>> kl;  // one row per eps
  std::vector<double> variance;         // Var(F_j^max) per eps
  std::vector<double> peak;             // total F(pi) per eps
  double eps_c = 0.0;                   // set by melt_scan / detect_transition
};

/// Location of the variance maximum, refined by a three-point parabola.
/// Throws NoTransitionDetected when max/median < 2.
double detect_transition(const std::vector<double>& eps, const std::vector<double>& variance);

/// Runs the polarized-state trace and its Fourier analysis for each eps
/// (pair-sector evolution, `samples` stroboscopic points n = 0..samples-1),
/// without transition detection.
MeltScan melt_scan_data(const DriveParams& base, const Protocol& protocol, const std::vector<double>& eps_grid,
                        int samples = 100, int workers = 1);

/// melt_scan_data followed by detect_transition.
MeltScan melt_scan(const DriveParams& base, const Protocol& protocol, const std::vector<double>& eps_grid,
                   int samples = 100, int workers = 1);

/// Inclusive grid lo, lo+step, ..., hi built from integer steps.
std::vector<double> linear_grid(double lo, double hi, double step);

}  // namespace nhdtc
