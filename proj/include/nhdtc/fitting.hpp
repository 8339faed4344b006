#pragma once

#include <string>
#include <vector>

#include "nhdtc/model.hpp"
#include "nhdtc/spectral.hpp"

namespace nhdtc {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

/// Result of a log-linear least-squares fit.
///
/// exponential: ln y = intercept - exponent * x   (exponent = alpha, x = L)
/// log_exponent: y = intercept + exponent * ln(1/x)  (exponent = beta, x = eps)
struct FitResult {
  std::string model;
  std::vector<Point> points;    // points used, sorted by x
  std::vector<Point> excluded;  // points dropped at the numerical floor
  double intercept = 0.0;
  double intercept_se = 0.0;
  double exponent = 0.0;
  double exponent_se = 0.0;
  double r2 = 0.0;
  std::vector<double> residuals;  // observed - fitted, in the linearized variable
};

/// delta E values below this are treated as numerically unresolved.
inline constexpr double kDeltaEFloor = 1e-13;

/// Fit delta E ~ e^{-alpha L}. Needs >= 3 points above kDeltaEFloor.
FitResult fit_exponential_decay(std::vector<Point> points);

/// Fit alpha = c + beta ln(1/eps) for eps in (0, 1). Needs >= 3 points.
FitResult fit_log_exponent(std::vector<Point> points);

struct ScalingOptions {
  /// Scaling fits run deep into the weakly paired H-DTC regime.
  PairingOptions pairing{0.05, 0.5};
  SpectralOptions spectral{};
  int workers = 1;
};

/// (L, delta E) for the polarized state, pair-sector spectra.
std::vector<Point> delta_e_curve(const DriveParams& base, const Protocol& protocol, double eps,
                                 const std::vector<int>& sizes, const ScalingOptions& options = {});

struct AlphaPoint {
  double eps = 0.0;
  FitResult fit;  // exponent = alpha(eps)
};

/// alpha(eps) for each eps from delta E over `sizes`.
std::vector<AlphaPoint> alpha_scan(const DriveParams& base, const Protocol& protocol, const std::vector<double>& eps_grid,
                                   const std::vector<int>& sizes, const ScalingOptions& options = {});

/// beta from an alpha scan.
FitResult beta_fit(const std::vector<AlphaPoint>& alphas);

struct GammaRow {
  double gamma = 0.0;
  std::vector<AlphaPoint> alphas;
  FitResult beta;
};

/// beta(gamma) for (eps_a, eps_b) = (eps, -(1+gamma) eps). Requires
/// 0 <= gamma < min(eps grid).
std::vector<GammaRow> gamma_sweep(const DriveParams& base, const std::vector<double>& gammas,
                                  const std::vector<double>& eps_grid, const std::vector<int>& sizes,
                                  const ScalingOptions& options = {});

}  // namespace nhdtc
