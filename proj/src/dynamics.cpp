#include "nhdtc/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "nhdtc/errors.hpp"

namespace nhdtc {

StateVector init_polarized(int sites, BasisKind kind, NormPolicy policy) {
  const BasisDescriptor desc(sites, kind);
  StateVector state{desc, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(desc.dim())), policy};
  const Index reduced_all_up = (Index{1} << sites) - 1;
  const Index idx = kind == BasisKind::Full ? pair_sector_embed(reduced_all_up, sites) : reduced_all_up;
  state.amps[static_cast<Eigen::Index>(idx)] = 1.0;
  return state;
}

StateVector init_theta(int sites, double theta, NormPolicy policy) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi / 2))
    throw InvalidParam("theta must lie in [0, pi/2], got " + std::to_string(theta));
  const BasisDescriptor desc = BasisDescriptor::full(sites);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  StateVector state{desc, Eigen::VectorXcd(static_cast<Eigen::Index>(desc.dim())), policy};
  for (Index idx = 0; idx < desc.dim(); ++idx) {
    double amp = 1.0;
    for (int j = 0; j < sites; ++j) {
      amp *= spin_a(idx, j) > 0 ? c : s;
      amp *= spin_b(idx, j, desc) > 0 ? -s : c;
    }
    state.amps[static_cast<Eigen::Index>(idx)] = amp;
  }
  state.amps.normalize();
  return state;
}

StateVector inversion_partner(const StateVector& state) {
  StateVector out{state.desc, Eigen::VectorXcd(state.amps.size()), state.policy};
  for (Index idx = 0; idx < state.desc.dim(); ++idx)
    out.amps[static_cast<Eigen::Index>(spin_flip(idx, state.desc))] = state.amps[static_cast<Eigen::Index>(idx)];
  return out;
}

StateVector cat_state(int sites, BasisKind kind, int sign) {
  StateVector psi = init_polarized(sites, kind);
  const StateVector flipped = inversion_partner(psi);
  psi.amps = (psi.amps + static_cast<double>(sign) * flipped.amps) / std::numbers::sqrt2;
  return psi;
}

void step_period_inplace(StateVector& state, const FloquetOperator& op) {
  if (!(op.desc() == state.desc)) throw DimensionError("state and operator bases differ");
  op.apply(state.amps);
  const double norm = state.amps.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw DegenerateEvolution("state norm " + std::to_string(norm) + " after one period");
  if (state.policy == NormPolicy::RenormalizeEachPeriod) state.amps /= norm;
}

StateVector step_period(const StateVector& state, const FloquetOperator& op) {
  StateVector next = state;
  step_period_inplace(next, op);
  return next;
}

Imbalance imbalance(const StateVector& state) {
  const BasisDescriptor& desc = state.desc;
  const int sites = desc.sites();
  std::vector<double> sum(static_cast<std::size_t>(sites), 0.0);
  double weight = 0.0;
  for (Index idx = 0; idx < desc.dim(); ++idx) {
    const double p = std::norm(state.amps[static_cast<Eigen::Index>(idx)]);
    if (p == 0.0) continue;
    weight += p;
    for (int j = 0; j < sites; ++j)
      sum[static_cast<std::size_t>(j)] += p * 0.5 * (spin_a(idx, j) - spin_b(idx, j, desc));
  }
  Imbalance out;
  out.per_site.resize(sum.size());
  for (std::size_t j = 0; j < sum.size(); ++j) {
    out.per_site[j] = sum[j] / weight;
    out.total += out.per_site[j];
  }
  out.total /= sites;
  return out;
}

namespace {

void record(ImbalanceTrace& trace, int row, const StateVector& state) {
  const Imbalance im = imbalance(state);
  for (std::size_t j = 0; j < im.per_site.size(); ++j) trace.per_site(row, static_cast<Eigen::Index>(j)) = im.per_site[j];
  trace.total[row] = im.total;
}

}  // namespace

ImbalanceTrace evolve_trace(const FloquetOperator& op, const StateVector& state0, int n_periods) {
  if (n_periods < 1) throw InvalidParam("n_periods must be >= 1");
  ImbalanceTrace trace;
  trace.n_periods = n_periods;
  trace.per_site.resize(n_periods + 1, state0.desc.sites());
  trace.total.resize(n_periods + 1);
  StateVector state = state0;
  record(trace, 0, state);
  for (int n = 1; n <= n_periods; ++n) {
    step_period_inplace(state, op);
    record(trace, n, state);
  }
  return trace;
}

ImbalanceTrace evolve_trace(const DriveParams& params, const StateVector& state0, int n_periods, Index state_limit) {
  if (state0.desc.dim() > state_limit)
    throw ResourceError("state dimension " + std::to_string(state0.desc.dim()) + " exceeds limit " +
                        std::to_string(state_limit));
  const FloquetOperator op = build_floquet(params, state0.desc, OperatorForm::GateSequence);
  return evolve_trace(op, state0, n_periods);
}

Eigen::VectorXd normalized_total(const ImbalanceTrace& trace) {
  if (trace.total[0] == 0.0) throw InvalidParam("initial imbalance is zero; cannot normalize");
  return trace.total / trace.total[0];
}

bool alternates(const Eigen::VectorXd& total, int periods) {
  if (periods >= total.size()) throw InvalidParam("trace shorter than requested period count");
  const double ref = total[0];
  for (int n = 0; n <= periods; ++n) {
    const double expected = (n % 2 == 0 ? 1.0 : -1.0) * ref;
    if (!(total[n] * expected > 0.0)) return false;
  }
  return true;
}

std::vector<double> subharmonic_envelope(const Eigen::VectorXd& total, int window) {
  if (window < 1) throw InvalidParam("envelope window must be >= 1");
  const auto n = static_cast<int>(total.size());
  if (n < window) return {};
  std::vector<double> env(static_cast<std::size_t>(n - window + 1));
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += (i % 2 == 0 ? 1.0 : -1.0) * total[i];
    if (i >= window) acc -= ((i - window) % 2 == 0 ? 1.0 : -1.0) * total[i - window];
    if (i >= window - 1) env[static_cast<std::size_t>(i - window + 1)] = acc / window;
  }
  return env;
}

std::optional<double> envelope_first_zero(const Eigen::VectorXd& total, int window) {
  const std::vector<double> env = subharmonic_envelope(total, window);
  const double centre = 0.5 * (window - 1);
  for (std::size_t i = 1; i < env.size(); ++i) {
    if (env[i - 1] > 0.0 && env[i] <= 0.0) {
      const double frac = env[i - 1] / (env[i - 1] - env[i]);
      return static_cast<double>(i - 1) + frac + centre;
    }
  }
  return std::nullopt;
}

}  // namespace nhdtc
