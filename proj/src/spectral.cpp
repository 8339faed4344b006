#include "nhdtc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "nhdtc/errors.hpp"

namespace nhdtc {

namespace {
constexpr double kPi = std::numbers::pi;

// Index sets of the connected components of the nonzero pattern of op.
std::vector<std::vector<Eigen::Index>> coupled_blocks(const Eigen::MatrixXcd& op) {
  const auto n = op.rows();
  std::vector<Eigen::Index> root(static_cast<std::size_t>(n));
  std::iota(root.begin(), root.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      if (op(i, j) != Complex(0.0, 0.0)) root[find(i)] = find(j);

  std::vector<std::vector<Eigen::Index>> blocks;
  std::vector<Eigen::Index> slot(static_cast<std::size_t>(n), -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    auto& s = slot[find(i)];
    if (s < 0) {
      s = static_cast<Eigen::Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[s].push_back(i);
  }
  return blocks;
}
}

QuasiEnergy quasienergy(Complex eigenvalue) {
  double phase = -std::arg(eigenvalue);
  if (phase <= -kPi) phase += 2 * kPi;
  return {phase, -std::log(std::abs(eigenvalue))};
}

double BiorthogonalSpectrum::max_decay() const {
  double worst = 0.0;
  for (const auto& e : energies) worst = std::max(worst, std::abs(e.decay));
  return worst;
}

double BiorthogonalSpectrum::biorthogonality_residual() const {
  const Eigen::MatrixXcd gram = left.adjoint() * right;
  return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double BiorthogonalSpectrum::completeness_residual() const {
  const Eigen::MatrixXcd sum = right * left.adjoint();
  return (sum - Eigen::MatrixXcd::Identity(sum.rows(), sum.cols())).cwiseAbs().maxCoeff();
}

double BiorthogonalSpectrum::reconstruction_residual(const Eigen::MatrixXcd& op) const {
  const Eigen::MatrixXcd rebuilt = right * eigenvalues.asDiagonal() * left.adjoint();
  return (rebuilt - op).cwiseAbs().maxCoeff();
}

BiorthogonalSpectrum eigendecompose(const Eigen::MatrixXcd& op, const BasisDescriptor& desc,
                                    const SpectralOptions& options) {
  const auto n = op.rows();
  if (op.cols() != n || static_cast<Index>(n) != desc.dim())
    throw DimensionError("operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
                         ", basis dim " + std::to_string(desc.dim()));
  if (desc.dim() > options.dense_limit)
    throw ResourceError("dense eigensolve of dim " + std::to_string(desc.dim()) + " exceeds limit " +
                        std::to_string(options.dense_limit));

  BiorthogonalSpectrum spec{desc, Eigen::VectorXcd(n), {}, Eigen::MatrixXcd::Zero(n, n),
                            Eigen::MatrixXcd::Zero(n, n), 1.0};
  Eigen::Index col = 0;
  for (const auto& block : coupled_blocks(op)) {
    const auto m = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXcd sub(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) sub(i, j) = op(block[i], block[j]);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(sub, true);
    if (solver.info() != Eigen::Success) throw NearDefective("eigensolver did not converge");
    Eigen::MatrixXcd right = solver.eigenvectors();
    for (Eigen::Index k = 0; k < m; ++k) right.col(k).normalize();

    // Rows of R^{-1} are the dual vectors: <L_k| R_l> = delta_kl.
    const Eigen::MatrixXcd left = right.partialPivLu().inverse().adjoint();
    if (!left.allFinite()) throw NearDefective("right eigenvectors are linearly dependent");

    for (Eigen::Index k = 0; k < m; ++k, ++col) {
      spec.eigenvalues[col] = solver.eigenvalues()[k];
      for (Eigen::Index i = 0; i < m; ++i) {
        spec.right(block[i], col) = right(i, k);
        spec.left(block[i], col) = left(i, k);
      }
    }
  }

  // |Phi^{R,L}> = |phi^{R,L}> / sqrt|<phi^L|phi^R>| with unit-norm phi's.
  // For unit phi^R the overlap with phi^L = L/|L| is 1/|L|, real and positive.
  spec.energies.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double left_norm = spec.left.col(k).norm();
    spec.condition = std::max(spec.condition, left_norm);
    const double scale = std::sqrt(left_norm);
    spec.right.col(k) *= scale;
    spec.left.col(k) /= scale;
    spec.energies.push_back(quasienergy(spec.eigenvalues[k]));
  }
  if (spec.condition > options.condition_limit)
    throw NearDefective("eigenbasis condition " + std::to_string(spec.condition) + " exceeds " +
                        std::to_string(options.condition_limit));
  return spec;
}

BiorthogonalSpectrum eigendecompose(const FloquetOperator& op, const SpectralOptions& options) {
  return eigendecompose(op.to_dense(options.dense_limit, options.workers), op.desc(), options);
}

Eigen::MatrixXcd left_eigenvectors_independent(const Eigen::MatrixXcd& op, const Eigen::VectorXcd& eigenvalues,
                                               const Eigen::MatrixXcd& right) {
  const auto n = op.rows();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(op.adjoint(), true);
  if (solver.info() != Eigen::Success) throw NearDefective("adjoint eigensolver did not converge");
  const double tol = 1e-8 * static_cast<double>(n);
  Eigen::MatrixXcd left(n, n);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (Eigen::Index k = 0; k < n; ++k) {
    // U^dagger |l> = conj(lambda) |l>.
    const Complex target = std::conj(eigenvalues[k]);
    Eigen::Index best = -1;
    double best_dist = tol;
    int matches = 0;
    for (Eigen::Index m = 0; m < n; ++m) {
      const double dist = std::abs(solver.eigenvalues()[m] - target);
      if (dist < tol) ++matches;
      if (!used[static_cast<std::size_t>(m)] && dist < best_dist) {
        best = m;
        best_dist = dist;
      }
    }
    if (best < 0 || matches != 1)
      throw NearDefective("no unique adjoint eigenvalue within " + std::to_string(tol) + " of eigenvalue " +
                          std::to_string(k));
    used[static_cast<std::size_t>(best)] = true;
    Eigen::VectorXcd l = solver.eigenvectors().col(best);
    const Complex overlap = l.dot(right.col(k));  // <l|r>
    left.col(k) = l / std::conj(overlap);
  }
  return left;
}

Eigen::VectorXcd overlap_weights(const BiorthogonalSpectrum& spec, const StateVector& ref) {
  if (!(ref.desc == spec.desc)) throw DimensionError("reference state and spectrum bases differ");
  const Eigen::VectorXcd ref_right = spec.right.adjoint() * ref.amps;  // conj(<ref|R_k>)
  const Eigen::VectorXcd left_ref = spec.left.adjoint() * ref.amps;    // <L_k|ref>
  return ref_right.conjugate().cwiseProduct(left_ref);
}

double circular_gap(double phase1, double phase2) {
  double diff = std::fmod(std::abs(phase1 - phase2), 2 * kPi);
  return std::min(diff, 2 * kPi - diff);
}

PiPair find_pi_pair(const BiorthogonalSpectrum& spec, const Eigen::VectorXcd& weights, const PairingOptions& options) {
  const auto n = weights.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return std::abs(weights[x]) > std::abs(weights[y]); });
  auto mag = [&](std::size_t pos) { return std::abs(weights[order[pos]]); };

  double best = -1.0;
  std::size_t best_i = 0, best_j = 0;
  for (std::size_t i = 0; i + 1 < order.size(); ++i) {
    if (mag(i) + mag(i + 1) <= best) break;
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      const double sum = mag(i) + mag(j);
      if (sum <= best) break;
      const double gap = circular_gap(spec.energies[static_cast<std::size_t>(order[i])].phase,
                                      spec.energies[static_cast<std::size_t>(order[j])].phase);
      if (std::abs(gap - kPi) <= options.gap_window) {
        best = sum;
        best_i = i;
        best_j = j;
      }
    }
  }
  if (best < 0.0) throw WeakPairing("no eigenstate pair with gap within pi +- " + std::to_string(options.gap_window));
  if (best < options.dominance_floor)
    throw WeakPairing("dominant pair weight " + std::to_string(best) + " below floor " +
                      std::to_string(options.dominance_floor));

  PiPair pair;
  pair.plus = static_cast<int>(order[best_i]);
  pair.minus = static_cast<int>(order[best_j]);
  pair.weight_plus = weights[pair.plus];
  pair.weight_minus = weights[pair.minus];
  pair.gap = circular_gap(spec.energies[static_cast<std::size_t>(pair.plus)].phase,
                          spec.energies[static_cast<std::size_t>(pair.minus)].phase);
  pair.deviation = std::abs(kPi - pair.gap);
  return pair;
}

PiPair find_pi_pair(const BiorthogonalSpectrum& spec, const StateVector& ref, const PairingOptions& options) {
  return find_pi_pair(spec, overlap_weights(spec, ref), options);
}

ReturnProbabilities return_probability_check(const DriveParams& params, const StateVector& ref,
                                             const PairingOptions& pairing, const SpectralOptions& options) {
  const FloquetOperator op =
      build_floquet(params, ref.desc, OperatorForm::DenseMatrix, options.dense_limit, options.workers);
  const BiorthogonalSpectrum spec = eigendecompose(op, options);
  const Eigen::VectorXcd weights = overlap_weights(spec, ref);
  const PiPair pair = find_pi_pair(spec, weights, pairing);

  const StateVector partner = inversion_partner(ref);
  const Eigen::VectorXcd lambda2 = spec.eigenvalues.array().square();
  const Eigen::VectorXcd left_ref = spec.left.adjoint() * ref.amps;               // <L_l|ref>
  const Eigen::VectorXcd partner_right = spec.right.adjoint() * partner.amps;     // conj(<ref~|R_l>)
  const Complex stay = weights.cwiseProduct(lambda2).sum();
  const Complex swap = (partner_right.conjugate().cwiseProduct(lambda2).cwiseProduct(left_ref)).sum();

  Eigen::VectorXcd evolved = ref.amps;
  op.apply(evolved);
  op.apply(evolved);

  ReturnProbabilities out;
  out.p_stay = std::norm(stay);
  out.p_swap = std::norm(swap);
  out.p_stay_direct = std::norm(ref.amps.dot(evolved));
  out.p_swap_direct = std::norm(partner.amps.dot(evolved));
  out.delta_e = pair.deviation;
  out.predicted_stay = std::pow(std::cos(pair.deviation), 2);
  out.predicted_swap = std::pow(std::sin(pair.deviation), 2);
  double total = 0.0;
  for (Eigen::Index k = 0; k < weights.size(); ++k) total += std::abs(weights[k]);
  out.leaked_weight = std::max(0.0, total - pair.dominance());
  return out;
}

double lifetime_periods(double delta_e) {
  if (!(delta_e > 0.0)) throw InvalidParam("lifetime undefined for delta E <= 0");
  return kPi / (2.0 * delta_e);
}

PiPair dominant_pair(const DriveParams& params, const PairingOptions& pairing, const SpectralOptions& options) {
  const BasisDescriptor desc = BasisDescriptor::pair_sector(params.sites);
  const FloquetOperator op = build_floquet(params, desc, OperatorForm::DenseMatrix, options.dense_limit, options.workers);
  const BiorthogonalSpectrum spec = eigendecompose(op, options);
  return find_pi_pair(spec, init_polarized(params.sites, BasisKind::PairSector), pairing);
}

}  // namespace nhdtc
