#pragma once

#include <vector>

#include <Eigen/Dense>

#include "nhdtc/basis.hpp"
#include "nhdtc/dynamics.hpp"
#include "nhdtc/model.hpp"

namespace nhdtc {

/// Quasienergy of one U_F eigenvalue lambda = |lambda| e^{-i phase}.
struct QuasiEnergy {
  double phase = 0.0;  // -arg(lambda), in (-pi, pi]
  double decay = 0.0;  // -ln|lambda|, zero for a real quasienergy
};

QuasiEnergy quasienergy(Complex eigenvalue);

/// Biorthonormal eigendecomposition U = sum_k lambda_k |R_k><L_k|.
struct BiorthogonalSpectrum {
  BasisDescriptor desc;
  Eigen::VectorXcd eigenvalues;
  std::vector<QuasiEnergy> energies;
  Eigen::MatrixXcd right;  // column k is |R_k>
  Eigen::MatrixXcd left;   // column k is |L_k>
  /// Largest eigenvalue condition number 1/|<l_k|r_k>| for unit-norm vectors.
  double condition = 1.0;

  Index dim() const { return desc.dim(); }
  double max_decay() const;

  /// max |<L_l|R_k> - delta_lk|
  double biorthogonality_residual() const;
  /// max |sum_k |R_k><L_k| - 1|
  double completeness_residual() const;
  /// max |sum_k lambda_k |R_k><L_k| - U|
  double reconstruction_residual(const Eigen::MatrixXcd& op) const;
};

struct SpectralOptions {
  Index dense_limit = kDefaultDenseLimit;
  double condition_limit = 1e8;
  int workers = 1;
};

BiorthogonalSpectrum eigendecompose(const Eigen::MatrixXcd& op, const BasisDescriptor& desc,
                                    const SpectralOptions& options = {});
BiorthogonalSpectrum eigendecompose(const FloquetOperator& op, const SpectralOptions& options = {});

/// Left eigenvectors from a separate eigendecomposition of U^dagger, matched
/// to `eigenvalues` by proximity and scaled so <L_k|R_k> = 1. Requires a
/// nondegenerate spectrum; throws NearDefective on ambiguous matches.
Eigen::MatrixXcd left_eigenvectors_independent(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& eigenvalues,
                                               const Eigen::MatrixXcd& right);

/// A_k = <ref|R_k><L_k|ref>.
Eigen::VectorXcd overlap_weights(const BiorthogonalSpectrum& spec, const StateVector& ref);

/// Circular distance of two phases, reduced to [0, pi].
double circular_gap(double phase1, double phase2);

struct PiPair {
  int plus = -1;   // larger |A|
  int minus = -1;
  Complex weight_plus;
  Complex weight_minus;
  double gap = 0.0;        // Delta E in [0, pi]
  double deviation = 0.0;  // delta E = |pi - Delta E|
  double dominance() const { return std::abs(weight_plus) + std::abs(weight_minus); }
};

struct PairingOptions {
  double dominance_floor = 0.5;
  /// Candidate pairs must have |gap - pi| <= gap_window.
  double gap_window = 0.5;
};

/// Dominant pi-paired eigenstates for a reference state: the pair with the
/// largest |A_k1| + |A_k2| among pairs whose gap is within pi +- gap_window.
PiPair find_pi_pair(const BiorthogonalSpectrum& spec, const StateVector& ref, const PairingOptions& options = {});
PiPair find_pi_pair(const BiorthogonalSpectrum& spec, const Eigen::VectorXcd& weights,
                    const PairingOptions& options = {});

struct ReturnProbabilities {
  double p_stay = 0.0;  // |<ref|U^2|ref>|^2 from the spectral sum
  double p_swap = 0.0;  // |<ref~|U^2|ref>|^2 from the spectral sum
  double p_stay_direct = 0.0;  // same quantities by applying U twice
  double p_swap_direct = 0.0;
  double predicted_stay = 0.0;  // cos^2(delta E)
  double predicted_swap = 0.0;  // sin^2(delta E)
  double delta_e = 0.0;
  double leaked_weight = 0.0;  // sum of |A_k| outside the dominant pair
};

ReturnProbabilities return_probability_check(const DriveParams& params, const StateVector& ref,
                                             const PairingOptions& pairing = {},
                                             const SpectralOptions& options = {});

/// Periods after which the state has moved to its inversion partner: pi / (2 delta E).
double lifetime_periods(double delta_e);

/// delta E of the dominant pair for the polarized state, computed in the pair sector.
PiPair dominant_pair(const DriveParams& params, const PairingOptions& pairing = {},
                     const SpectralOptions& options = {});

}  // namespace nhdtc
