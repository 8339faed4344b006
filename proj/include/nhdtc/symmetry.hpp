#pragma once

#include <string>

#include <Eigen/Dense>

#include "nhdtc/model.hpp"

namespace nhdtc {

enum class Chain { A, B };

/// Dense Full-basis operators, for symmetry checks at small L.
Eigen::MatrixXcd sigma_z(int sites, Chain chain, int site);
Eigen::MatrixXcd sigma_plus(int sites, Chain chain, int site);
Eigen::MatrixXcd sigma_minus(int sites, Chain chain, int site);
Eigen::MatrixXcd total_sz(int sites);

/// H_a + H_b = -Jz sum_mu sum_j s^z_j s^z_{j+1} (open chain).
Eigen::MatrixXcd ising_hamiltonian(const DriveParams& params);
/// H_I = sum_j (J_a s^{a+}_j s^{b-}_j + J_b s^{a-}_j s^{b+}_j), J_mu = Jz pi/2 (1+eps_mu).
Eigen::MatrixXcd hopping_hamiltonian(const DriveParams& params);

/// W K (conjugate = true) or plain W.
struct AntiUnitaryOp {
  Eigen::MatrixXcd unitary;
  bool conjugate = true;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& amps) const;
  /// Theta O Theta^{-1}.
  Eigen::MatrixXcd conjugate_operator(const Eigen::MatrixXcd& op) const;
  /// Theta^2 = W conj(W) (or W^2), expected to be a multiple of identity.
  Eigen::MatrixXcd square() const;
};

enum class ParityKind {
  Reflection,           // j <-> L-1-j within each chain
  ChainSwap,            // a_j <-> b_j
  ReflectionChainSwap,  // a_j <-> b_{L-1-j}: inversion through the ladder centre
};

ParityKind parse_parity(const std::string& name);
std::string to_string(ParityKind kind);

/// Permutation matrix of the chosen spatial parity.
Eigen::MatrixXcd build_parity(int sites, ParityKind kind = ParityKind::Reflection);

/// sigma^y on every spin of both chains, with complex conjugation.
AntiUnitaryOp build_time_reversal(int sites);

/// P o T.
AntiUnitaryOp compose(const Eigen::MatrixXcd& parity, const AntiUnitaryOp& time_reversal);

struct SymmetryReport {
  int sites = 0;
  double eps_a = 0.0;
  double eps_b = 0.0;
  std::string pt_parity;
  double pt_ising = 0.0;    // |(PT) H_z (PT)^-1 - H_z|_max
  double pt_hopping = 0.0;  // |(PT) H_I (PT)^-1 - H_I|_max
  double pt_ising_reflection = 0.0;   // same with reflection-only parity
  double pt_hopping_reflection = 0.0;
  double parity_commutator = 0.0;  // |[P, U_F]|_max, reflection parity
  double parity_square = 0.0;      // |P^2 - 1|_max
  double time_reversal_square_phase = 0.0;  // T^2 = phase * 1
  double magnetization_commutator = 0.0;    // |[S^z, U_F]|_max
  double max_im_energy = 0.0;               // max |decay| over Full and pair-sector spectra

  std::string to_text() const;
};

struct SymmetryOptions {
  ParityKind pt_parity = ParityKind::ReflectionChainSwap;
  int max_sites = 4;
};

SymmetryReport pt_report(const DriveParams& params, const SymmetryOptions& options = {});

}  // namespace nhdtc
