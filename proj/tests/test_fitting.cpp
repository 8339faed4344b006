#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "nhdtc/errors.hpp"
#include "nhdtc/fitting.hpp"

using namespace nhdtc;

namespace {

std::vector<Point> exp_points(double alpha, double c, int lo, int hi) {
  std::vector<Point> pts;
  for (int l = lo; l <= hi; ++l) pts.push_back({double(l), std::exp(c - alpha * l)});
  return pts;
}

// Independent closed-form slope/intercept from the normal equations
std::pair<double, double> normal_equations(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

}  // namespace

TEST_CASE("exact exponential data") {
  const FitResult fit = fit_exponential_decay(exp_points(0.7, 0.0, 1, 8));
  CHECK(std::abs(fit.exponent - 0.7) < 1e-10);
  CHECK(std::abs(fit.intercept) < 1e-10);
  CHECK(fit.r2 == doctest::Approx(1.0));
  CHECK(fit.exponent_se < 1e-10);
  CHECK(fit.residuals.size() == fit.points.size());
  CHECK(fit.model == "exponential_decay");
}

TEST_CASE("exact log data") {
  std::vector<Point> pts;
  for (double e : {0.1, 0.25, 0.3, 0.45, 0.7}) pts.push_back({e, 2.0 * std::log(1.0 / e)});
  const FitResult fit = fit_log_exponent(pts);
  CHECK(std::abs(fit.exponent - 2.0) < 1e-10);
  CHECK(std::abs(fit.intercept) < 1e-10);
  CHECK(fit.model == "log_exponent");
}

TEST_CASE("noisy data agrees with the normal equations") {
  std::vector<Point> pts;
  std::vector<double> x, y;
  const double wiggle[] = {0.03, -0.05, 0.02, 0.04, -0.01, -0.03};
  for (int i = 0; i < 6; ++i) {
    const double l = 3 + i;
    pts.push_back({l, std::exp(1.2 - 0.9 * l + wiggle[i])});
    x.push_back(l);
    y.push_back(std::log(pts.back().y));
  }
  const auto [slope, intercept] = normal_equations(x, y);
  const FitResult fit = fit_exponential_decay(pts);
  CHECK(fit.exponent == doctest::Approx(-slope).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(intercept).epsilon(1e-12));
  CHECK(fit.r2 > 0.99);
  CHECK(fit.r2 <= 1.0);
  CHECK(fit.exponent_se > 0.0);
  double rss = 0;
  for (double r : fit.residuals) rss += r * r;
  // slope standard error from its textbook formula
  double mx = 0, sxx = 0;
  for (double v : x) mx += v / 6;
  for (double v : x) sxx += (v - mx) * (v - mx);
  CHECK(fit.exponent_se == doctest::Approx(std::sqrt(rss / 4 / sxx)).epsilon(1e-10));
}

TEST_CASE("fits ignore point order") {
  auto pts = exp_points(0.5, 0.3, 2, 7);
  pts[2].y *= 1.1;
  const FitResult a = fit_exponential_decay(pts);
  std::reverse(pts.begin(), pts.end());
  std::swap(pts[0], pts[3]);
  const FitResult b = fit_exponential_decay(pts);
  CHECK(a.exponent == b.exponent);
  CHECK(a.intercept == b.intercept);
  CHECK(a.points == b.points);
}

TEST_CASE("numerical floor exclusion and insufficient data") {
  auto pts = exp_points(0.7, 0.0, 2, 6);
  pts.push_back({7.0, 1e-14});
  pts.push_back({8.0, 0.0});
  const FitResult fit = fit_exponential_decay(pts);
  CHECK(fit.points.size() == 5);
  CHECK(fit.excluded.size() == 2);
  CHECK(std::abs(fit.exponent - 0.7) < 1e-10);

  CHECK_THROWS_AS(fit_exponential_decay(exp_points(0.7, 0.0, 2, 3)), InsufficientData);
  CHECK_THROWS_AS(fit_exponential_decay({{1, 0.1}, {2, 0.01}, {3, 1e-15}}), InsufficientData);
  CHECK_THROWS_AS(fit_log_exponent({{0.2, 1.0}, {0.3, 0.8}}), InsufficientData);
  CHECK_THROWS_AS(fit_log_exponent({{0.2, 1.0}, {0.3, 0.8}, {1.2, 0.1}}), InvalidParam);
  CHECK_THROWS_AS(fit_exponential_decay({{3, 0.1}, {3, 0.01}, {3, 0.001}}), InsufficientData);
}

TEST_CASE("H-DTC alpha at eps = 0.3 is positive with a good fit") {
  DriveParams base;
  const auto curve = delta_e_curve(base, Protocol::hermitian(), 0.3, {4, 5, 6, 7, 8});
  REQUIRE(curve.size() == 5);
  const FitResult fit = fit_exponential_decay(curve);
  CHECK(fit.exponent > 0.0);
  CHECK(fit.r2 > 0.95);
}

TEST_CASE("dropping one size changes alpha by less than 15 percent") {
  DriveParams base;
  for (const auto& protocol : {Protocol::hermitian(), Protocol::non_reciprocal()}) {
    const auto curve = delta_e_curve(base, protocol, 0.3, {4, 5, 6, 7, 8});
    const double alpha = fit_exponential_decay(curve).exponent;
    for (std::size_t drop = 0; drop < curve.size(); ++drop) {
      auto sub = curve;
      sub.erase(sub.begin() + static_cast<long>(drop));
      CAPTURE(protocol.tag());
      CAPTURE(drop);
      CHECK(std::abs(fit_exponential_decay(sub).exponent - alpha) < 0.15 * alpha);
    }
  }
}

TEST_CASE("scan plumbing") {
  DriveParams base;
  ScalingOptions opt;
  opt.workers = 3;
  const std::vector<double> grid{0.3, 0.35, 0.4};
  const std::vector<int> sizes{4, 5, 6};
  const auto scan = alpha_scan(base, Protocol::non_reciprocal(), grid, sizes, opt);
  REQUIRE(scan.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(scan[i].eps == grid[i]);
    const FitResult direct = fit_exponential_decay(delta_e_curve(base, Protocol::non_reciprocal(), grid[i], sizes));
    CHECK(scan[i].fit.exponent == direct.exponent);
  }
  const FitResult beta = beta_fit(scan);
  CHECK(beta.points.size() == 3);
  CHECK(beta.points[0].x == 0.3);

  const auto rows = gamma_sweep(base, {0.0, 0.1}, grid, sizes, opt);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].beta.exponent == beta.exponent);
  CHECK(rows[1].gamma == 0.1);
  CHECK_THROWS_AS(gamma_sweep(base, {0.3}, grid, sizes), InvalidParam);
  CHECK_THROWS_AS(gamma_sweep(base, {-0.1}, grid, sizes), InvalidParam);
}
