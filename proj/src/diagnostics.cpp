#include "nhdtc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nhdtc/errors.hpp"
#include "nhdtc/parallel.hpp"

namespace nhdtc {

namespace {

// Twiddle factors e^{-2 pi i m / N} for m = 0..N-1.
Eigen::VectorXcd twiddles(int n) {
  Eigen::VectorXcd w(n);
  for (int m = 0; m < n; ++m) w[m] = std::polar(1.0, -2.0 * std::numbers::pi * m / n);
  return w;
}

Eigen::VectorXcd dft(const Eigen::Ref<const Eigen::VectorXd>& x, const Eigen::VectorXcd& w) {
  const auto n = static_cast<int>(x.size());
  Eigen::VectorXcd out(n);
  for (int k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (int t = 0; t < n; ++t) acc += x[t] * w[(static_cast<long>(k) * t) % n];
    out[k] = acc / static_cast<double>(n);
  }
  return out;
}

void check_samples(int n) {
  if (n < 2 || n % 2 != 0) throw InvalidParam("DFT length must be even so omega = pi is on the grid, got " + std::to_string(n));
}

std::vector<double> omega_grid(int n) {
  std::vector<double> omega(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) omega[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / n;
  return omega;
}

}  // namespace

FourierSpectrum fourier(const Eigen::VectorXd& series) {
  const auto n = static_cast<int>(series.size());
  check_samples(n);
  const Eigen::VectorXcd w = twiddles(n);
  return {n, omega_grid(n), dft(series, w), Eigen::MatrixXcd()};
}

FourierSpectrum fourier(const ImbalanceTrace& trace, int samples) {
  const int n = samples == 0 ? static_cast<int>(trace.samples()) : samples;
  if (n > static_cast<int>(trace.samples()))
    throw InvalidParam("requested " + std::to_string(n) + " samples from a trace of " + std::to_string(trace.samples()));
  check_samples(n);
  const Eigen::VectorXcd w = twiddles(n);
  FourierSpectrum spec{n, omega_grid(n), dft(trace.total.head(n), w), Eigen::MatrixXcd(n, trace.sites())};
  for (int j = 0; j < trace.sites(); ++j) spec.site_transform.col(j) = dft(trace.per_site.col(j).head(n), w);
  return spec;
}

std::vector<double> kl_divergence(const FourierSpectrum& spec, const FourierSpectrum& ref) {
  if (spec.samples != ref.samples) throw DimensionError("frequency grids differ");
  const Eigen::VectorXd f = spec.amplitude();
  const Eigen::VectorXd g = ref.amplitude();
  const double fs = f.sum();
  const double gs = g.sum();
  std::vector<double> kl(static_cast<std::size_t>(spec.samples));
  for (int k = 0; k < spec.samples; ++k) {
    const double p = std::max(fs > 0.0 ? f[k] / fs : 0.0, kKlFloor);
    const double q = std::max(gs > 0.0 ? g[k] / gs : 0.0, kKlFloor);
    kl[static_cast<std::size_t>(k)] = p * std::log(p / q);
  }
  return kl;
}

double peak_variance(const std::vector<double>& peaks) {
  if (peaks.empty()) return 0.0;
  double mean = 0.0;
  for (double p : peaks) mean += p;
  mean /= static_cast<double>(peaks.size());
  double var = 0.0;
  for (double p : peaks) var += (p - mean) * (p - mean);
  return var / static_cast<double>(peaks.size());
}

double peak_variance(const FourierSpectrum& spec) {
  if (spec.site_transform.size() == 0) throw InvalidParam("spectrum carries no per-site transforms");
  const Eigen::VectorXd row = spec.site_transform.row(spec.pi_index()).cwiseAbs();
  return peak_variance(std::vector<double>(row.data(), row.data() + row.size()));
}

double detect_transition(const std::vector<double>& eps, const std::vector<double>& variance) {
  if (eps.size() != variance.size() || eps.size() < 3) throw InvalidParam("need >= 3 matching scan points");
  const auto it = std::max_element(variance.begin(), variance.end());
  const auto i = static_cast<std::size_t>(it - variance.begin());
  std::vector<double> sorted = variance;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
  const double median = sorted[sorted.size() / 2];
  if (!(*it >= 2.0 * median) || *it <= 0.0)
    throw NoTransitionDetected("variance max/median below 2 (max " + std::to_string(*it) + ", median " +
                               std::to_string(median) + ")");
  if (i == 0 || i + 1 == eps.size()) return eps[i];
  // Vertex of the parabola through the three points around the maximum.
  const double x0 = eps[i - 1], x1 = eps[i], x2 = eps[i + 1];
  const double y0 = variance[i - 1], y1 = variance[i], y2 = variance[i + 1];
  const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
  const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
  if (den == 0.0) return x1;
  return std::clamp(x1 - 0.5 * num / den, x0, x2);
}

MeltScan melt_scan_data(const DriveParams& base, const Protocol& protocol, const std::vector<double>& eps_grid,
                        int samples, int workers) {
  check_samples(samples);
  if (eps_grid.empty() || !std::is_sorted(eps_grid.begin(), eps_grid.end()))
    throw InvalidParam("eps grid must be non-empty and sorted");
  const StateVector psi0 = init_polarized(base.sites, BasisKind::PairSector);
  auto spectrum_at = [&](double eps) {
    return fourier(evolve_trace(protocol.at(base, eps), psi0, samples - 1), samples);
  };
  const FourierSpectrum ref = spectrum_at(0.0);
  const std::vector<FourierSpectrum> spectra =
      parallel_map(eps_grid.size(), workers, [&](std::size_t i) { return spectrum_at(eps_grid[i]); });

  MeltScan scan;
  scan.protocol = protocol;
  scan.sites = base.sites;
  scan.samples = samples;
  scan.eps = eps_grid;
  scan.omega = ref.omega;
  for (const auto& spec : spectra) {
    scan.kl.push_back(kl_divergence(spec, ref));
    scan.variance.push_back(peak_variance(spec));
    scan.peak.push_back(std::abs(spec.total_transform[spec.pi_index()]));
  }
  return scan;
}

MeltScan melt_scan(const DriveParams& base, const Protocol& protocol, const std::vector<double>& eps_grid, int samples,
                   int workers) {
  MeltScan scan = melt_scan_data(base, protocol, eps_grid, samples, workers);
  scan.eps_c = detect_transition(scan.eps, scan.variance);
  return scan;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || hi < lo) throw InvalidParam("bad grid bounds");
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(count));
  // Rounded so that e.g. 0.1 + 2 * 0.1 prints as 0.3.
  for (long i = 0; i < count; ++i) grid.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
  return grid;
}

}  // namespace nhdtc
