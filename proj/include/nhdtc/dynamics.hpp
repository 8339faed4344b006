#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "nhdtc/basis.hpp"
#include "nhdtc/model.hpp"

namespace nhdtc {

enum class NormPolicy { RenormalizeEachPeriod, Raw };

/// Largest state-vector dimension evolution will allocate.
inline constexpr Index kDefaultStateLimit = Index{1} << 26;

struct StateVector {
  BasisDescriptor desc;
  Eigen::VectorXcd amps;
  NormPolicy policy = NormPolicy::RenormalizeEachPeriod;

  double norm() const { return amps.norm(); }
};

/// |up..up>_a |down..down>_b, in the Full basis or directly in the pair sector.
StateVector init_polarized(int sites, BasisKind kind = BasisKind::Full,
                           NormPolicy policy = NormPolicy::RenormalizeEachPeriod);

/// Product state prod_j (cos t|up> + sin t|down>)_a (-sin t|up> + cos t|down>)_b,
/// 0 <= theta <= pi/2. Full basis only.
StateVector init_theta(int sites, double theta, NormPolicy policy = NormPolicy::RenormalizeEachPeriod);

/// Global spin inversion of every amplitude (flips all spins of both chains).
StateVector inversion_partner(const StateVector& state);

/// Cat states (|psi0> + sign |psi0~>)/sqrt 2.
StateVector cat_state(int sites, BasisKind kind, int sign);

/// One drive period. Throws DegenerateEvolution if the result has zero norm.
StateVector step_period(const StateVector& state, const FloquetOperator& op);
void step_period_inplace(StateVector& state, const FloquetOperator& op);

struct Imbalance {
  std::vector<double> per_site;
  double total = 0.0;
};

/// I_j = (<s^a_j> - <s^b_j>)/2 in the normalized state, total = mean over j.
Imbalance imbalance(const StateVector& state);

/// Stroboscopic imbalance record. Row n holds the measurement after n periods,
/// n = 0..n_periods.
struct ImbalanceTrace {
  int n_periods = 0;
  Eigen::MatrixXd per_site;  // (n_periods + 1) x L
  Eigen::VectorXd total;     // n_periods + 1

  int sites() const { return static_cast<int>(per_site.cols()); }
  std::size_t samples() const { return static_cast<std::size_t>(total.size()); }
};

ImbalanceTrace evolve_trace(const FloquetOperator& op, const StateVector& state0, int n_periods);
/// Builds the gate-sequence operator in the state's basis and evolves.
ImbalanceTrace evolve_trace(const DriveParams& params, const StateVector& state0, int n_periods,
                            Index state_limit = kDefaultStateLimit);

/// Total imbalance divided by its initial value.
Eigen::VectorXd normalized_total(const ImbalanceTrace& trace);

/// True when sign(total[n]) == (-1)^n * sign(total[0]) for n = 0..periods.
bool alternates(const Eigen::VectorXd& total, int periods);

/// (-1)^n I(nT) smoothed by a centered moving average of `window` periods.
/// Entry i of the result is centred at period i + (window - 1)/2.
std::vector<double> subharmonic_envelope(const Eigen::VectorXd& total, int window);

/// Period at which the smoothed subharmonic envelope first crosses zero,
/// linearly interpolated. nullopt when it never does.
std::optional<double> envelope_first_zero(const Eigen::VectorXd& total, int window = 100);

}  // namespace nhdtc
