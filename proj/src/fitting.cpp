#include "nhdtc/fitting.hpp"

#include <algorithm>
#include <cmath>

#include "nhdtc/errors.hpp"
#include "nhdtc/parallel.hpp"

namespace nhdtc {

namespace {

struct Line {
  double intercept, slope, intercept_se, slope_se, r2;
  std::vector<double> residuals;
};

// Ordinary least squares y = a + b x with standard errors.
Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw InsufficientData("all abscissae coincide");
  Line line;
  line.slope = sxy / sxx;
  line.intercept = my - line.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (line.intercept + line.slope * x[i]);
    line.residuals.push_back(r);
    ss_res += r * r;
  }
  const double sigma2 = x.size() > 2 ? ss_res / (n - 2.0) : 0.0;
  line.slope_se = std::sqrt(sigma2 / sxx);
  line.intercept_se = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));
  line.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return line;
}

void sort_by_x(std::vector<Point>& points) {
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
}

FitResult assemble(std::string model, std::vector<Point> used, std::vector<Point> excluded, const Line& line,
                   double exponent_sign) {
  FitResult fit;
  fit.model = std::move(model);
  fit.points = std::move(used);
  fit.excluded = std::move(excluded);
  fit.intercept = line.intercept;
  fit.intercept_se = line.intercept_se;
  fit.exponent = exponent_sign * line.slope;
  fit.exponent_se = line.slope_se;
  fit.r2 = line.r2;
  fit.residuals = line.residuals;
  return fit;
}

}  // namespace

FitResult fit_exponential_decay(std::vector<Point> points) {
  sort_by_x(points);
  std::vector<Point> used, excluded;
  for (const auto& p : points) (p.y >= kDeltaEFloor ? used : excluded).push_back(p);
  if (used.size() < 3)
    throw InsufficientData("exponential fit needs >= 3 points above " + std::to_string(kDeltaEFloor) + ", have " +
                           std::to_string(used.size()));
  std::vector<double> x, y;
  for (const auto& p : used) {
    x.push_back(p.x);
    y.push_back(std::log(p.y));
  }
  return assemble("exponential_decay", std::move(used), std::move(excluded), least_squares(x, y), -1.0);
}

FitResult fit_log_exponent(std::vector<Point> points) {
  sort_by_x(points);
  if (points.size() < 3) throw InsufficientData("log-exponent fit needs >= 3 points");
  std::vector<double> x, y;
  for (const auto& p : points) {
    if (!(p.x > 0.0 && p.x < 1.0)) throw InvalidParam("eps must lie in (0, 1), got " + std::to_string(p.x));
    x.push_back(std::log(1.0 / p.x));
    y.push_back(p.y);
  }
  return assemble("log_exponent", std::move(points), {}, least_squares(x, y), 1.0);
}

std::vector<Point> delta_e_curve(const DriveParams& base, const Protocol& protocol, double eps,
                                 const std::vector<int>& sizes, const ScalingOptions& options) {
  return parallel_map(sizes.size(), options.workers, [&](std::size_t i) {
    DriveParams params = protocol.at(base, eps);
    params.sites = sizes[i];
    const PiPair pair = dominant_pair(params, options.pairing, options.spectral);
    return Point{static_cast<double>(sizes[i]), pair.deviation};
  });
}

std::vector<AlphaPoint> alpha_scan(const DriveParams& base, const Protocol& protocol, const std::vector<double>& eps_grid,
                                   const std::vector<int>& sizes, const ScalingOptions& options) {
  // Flatten (eps, L) so the largest decompositions spread across workers.
  const std::size_t per_eps = sizes.size();
  const std::vector<double> delta = parallel_map(eps_grid.size() * per_eps, options.workers, [&](std::size_t job) {
    DriveParams params = protocol.at(base, eps_grid[job / per_eps]);
    params.sites = sizes[job % per_eps];
    return dominant_pair(params, options.pairing, options.spectral).deviation;
  });
  std::vector<AlphaPoint> out;
  for (std::size_t e = 0; e < eps_grid.size(); ++e) {
    std::vector<Point> curve;
    for (std::size_t l = 0; l < per_eps; ++l) curve.push_back({static_cast<double>(sizes[l]), delta[e * per_eps + l]});
    out.push_back({eps_grid[e], fit_exponential_decay(std::move(curve))});
  }
  return out;
}

FitResult beta_fit(const std::vector<AlphaPoint>& alphas) {
  std::vector<Point> points;
  for (const auto& a : alphas) points.push_back({a.eps, a.fit.exponent});
  return fit_log_exponent(std::move(points));
}

std::vector<GammaRow> gamma_sweep(const DriveParams& base, const std::vector<double>& gammas,
                                  const std::vector<double>& eps_grid, const std::vector<int>& sizes,
                                  const ScalingOptions& options) {
  if (eps_grid.empty()) throw InvalidParam("empty eps grid");
  const double eps_min = *std::min_element(eps_grid.begin(), eps_grid.end());
  std::vector<GammaRow> rows;
  for (double gamma : gammas) {
    if (!(gamma >= 0.0 && gamma < eps_min))
      throw InvalidParam("gamma must satisfy 0 <= gamma < min(eps), got " + std::to_string(gamma));
    GammaRow row;
    row.gamma = gamma;
    row.alphas = alpha_scan(base, Protocol::non_reciprocal(gamma), eps_grid, sizes, options);
    row.beta = beta_fit(row.alphas);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace nhdtc
