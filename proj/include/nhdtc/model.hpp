#pragma once

#include <complex>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "nhdtc/basis.hpp"

namespace nhdtc {

using Complex = std::complex<double>;

/// Physical parameters of one drive protocol.
struct DriveParams {
  int sites = 4;
  double eps_a = 0.0;
  double eps_b = 0.0;
  double jz = 1.0;
  double t1 = 0.5;  // Ising phase duration, 1/(2 Jz)
  double t2 = 0.5;  // hopping phase duration, 1/(2 Jz)
  /// Rotation angle of the hopping gate at eps = 0. pi/2 makes the gate a
  /// perfect pair swap. literal_swap_phase() gives the uncalibrated value.
  double swap_phase_base = std::numbers::pi / 2;

  double period() const { return t1 + t2; }
  bool reciprocal() const { return eps_a == eps_b; }
  /// Jz * t2 * pi/2, the angle obtained by reading the couplings J_mu =
  /// Jz*pi/2*(1+eps_mu) and t2 literally.
  double literal_swap_phase() const { return jz * t2 * std::numbers::pi / 2; }

  void validate() const;
  bool operator==(const DriveParams&) const = default;
};

/// How the imperfection eps maps onto (eps_a, eps_b).
struct Protocol {
  enum class Kind { Hermitian, NonReciprocal };
  Kind kind = Kind::Hermitian;
  /// Only for NonReciprocal: (eps, -(1+gamma) eps).
  double gamma = 0.0;

  static Protocol hermitian() { return {Kind::Hermitian, 0.0}; }
  static Protocol non_reciprocal(double gamma = 0.0) { return {Kind::NonReciprocal, gamma}; }

  DriveParams at(DriveParams base, double eps) const;
  /// "H", "NH" or "NH_g<gamma>".
  std::string tag() const;
};

/// 4x4 gate on one (a_j, b_j) pair in the ordered basis (uu, ud, du, dd).
/// Aligned components are left untouched.
struct PairGate {
  Eigen::Matrix2cd middle;  // acts on (ud, du)

  Eigen::Matrix4cd matrix() const;
};

/// Closed-form exp(-i theta0 M), M = [[0, 1+eps_a], [1+eps_b, 0]].
PairGate pair_gate(const DriveParams& params);

/// Generic matrix exponential by scaling and squaring of a Taylor series.
/// Used as an independent check of the closed-form gate.
Eigen::MatrixXcd expm_series(const Eigen::MatrixXcd& a);

/// One phase factor per basis configuration.
struct IsingPhases {
  BasisDescriptor desc;
  Eigen::VectorXcd phases;
};

IsingPhases ising_phases(const DriveParams& params, const BasisDescriptor& desc);

struct GatePlacement {
  int pair;
  PairGate gate;
};

struct GateSequence {
  IsingPhases ising;
  std::vector<GatePlacement> gates;
};

struct DenseMatrix {
  BasisDescriptor desc;
  Eigen::MatrixXcd matrix;
};

enum class OperatorForm { GateSequence, DenseMatrix };

/// Default cap on dense operator dimension (dim x dim allocation, dense eigensolve).
inline constexpr Index kDefaultDenseLimit = 8192;

/// Single-period evolution operator: Ising phases first, then the L hopping gates.
class FloquetOperator {
 public:
  explicit FloquetOperator(GateSequence seq) : rep_(std::move(seq)) {}
  explicit FloquetOperator(DenseMatrix dense) : rep_(std::move(dense)) {}

  const BasisDescriptor& desc() const;
  bool is_dense() const { return std::holds_alternative<DenseMatrix>(rep_); }
  const GateSequence& gate_sequence() const { return std::get<GateSequence>(rep_); }
  const DenseMatrix& dense() const { return std::get<DenseMatrix>(rep_); }

  /// amps <- U amps, in place.
  void apply(Eigen::VectorXcd& amps) const;

  /// Dense matrix of this operator; computed column by column for a gate
  /// sequence.
  Eigen::MatrixXcd to_dense(Index dense_limit = kDefaultDenseLimit, int workers = 1) const;

 private:
  std::variant<GateSequence, DenseMatrix> rep_;
};

FloquetOperator build_floquet(const DriveParams& params, const BasisDescriptor& desc, OperatorForm form,
                              Index dense_limit = kDefaultDenseLimit, int workers = 1);

/// Apply a single pair gate to pair j of a state vector in the given basis.
void apply_pair_gate(const PairGate& gate, int pair, const BasisDescriptor& desc, Eigen::VectorXcd& amps);

}  // namespace nhdtc
