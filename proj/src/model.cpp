#include "nhdtc/model.hpp"

#include <cmath>
#include <sstream>

#include "nhdtc/errors.hpp"
#include "nhdtc/parallel.hpp"

namespace nhdtc {

void DriveParams::validate() const {
  if (sites < 1 || sites > kMaxSites) throw InvalidParam("L must be in [1, " + std::to_string(kMaxSites) + "]");
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw InvalidParam("phase durations t1, t2 must be positive");
  if (!(jz > 0.0)) throw InvalidParam("Jz must be positive");
  if (!std::isfinite(eps_a) || !std::isfinite(eps_b) || !std::isfinite(swap_phase_base))
    throw InvalidParam("non-finite drive parameter");
}

DriveParams Protocol::at(DriveParams base, double eps) const {
  base.eps_a = eps;
  base.eps_b = kind == Kind::Hermitian ? eps : -(1.0 + gamma) * eps;
  return base;
}

std::string Protocol::tag() const {
  if (kind == Kind::Hermitian) return "H";
  if (gamma == 0.0) return "NH";
  std::ostringstream os;
  os << "NH_g" << gamma;
  return os.str();
}

Eigen::Matrix4cd PairGate::matrix() const {
  Eigen::Matrix4cd g = Eigen::Matrix4cd::Zero();
  g(0, 0) = 1.0;
  g(3, 3) = 1.0;
  g.block<2, 2>(1, 1) = middle;
  return g;
}

namespace {

// sin(x)/x and sinh(x)/x with the removable singularity handled.
double sinc(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }
double sinhc(double x) { return std::abs(x) < 1e-8 ? 1.0 + x * x / 6.0 : std::sinh(x) / x; }

}  // namespace

PairGate pair_gate(const DriveParams& params) {
  // M^2 = (1+eps_a)(1+eps_b) I, so exp(-i theta M) = c I - i theta s M with
  // c = cos g, s = sin g / g (cosh/sinh for a negative product).
  const double theta = params.swap_phase_base;
  const double up = 1.0 + params.eps_a;
  const double down = 1.0 + params.eps_b;
  const double product = up * down;
  double c = 0.0;
  double s = 0.0;
  if (product >= 0.0) {
    const double g = theta * std::sqrt(product);
    c = std::cos(g);
    s = theta * sinc(g);
  } else {
    const double h = theta * std::sqrt(-product);
    c = std::cosh(h);
    s = theta * sinhc(h);
  }
  const Complex minus_i(0.0, -1.0);
  PairGate gate;
  gate.middle << c, minus_i * s * up, minus_i * s * down, c;
  return gate;
}

Eigen::MatrixXcd expm_series(const Eigen::MatrixXcd& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXcd scaled = a / std::ldexp(1.0, squarings);
  const auto n = a.rows();
  Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
  for (int k = 1; k < 40; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

IsingPhases ising_phases(const DriveParams& params, const BasisDescriptor& desc) {
  if (desc.sites() != params.sites)
    throw DimensionError("basis has L=" + std::to_string(desc.sites()) + ", params have L=" +
                         std::to_string(params.sites));
  const int sites = desc.sites();
  const double angle = params.jz * params.t1;
  IsingPhases out{desc, Eigen::VectorXcd(static_cast<Eigen::Index>(desc.dim()))};
  for (Index idx = 0; idx < desc.dim(); ++idx) {
    int bonds = 0;
    for (int j = 0; j + 1 < sites; ++j) {
      bonds += spin_a(idx, j) * spin_a(idx, j + 1);
      bonds += spin_b(idx, j, desc) * spin_b(idx, j + 1, desc);
    }
    out.phases[static_cast<Eigen::Index>(idx)] = std::polar(1.0, angle * bonds);
  }
  return out;
}

void apply_pair_gate(const PairGate& gate, int pair, const BasisDescriptor& desc, Eigen::VectorXcd& amps) {
  const Complex m00 = gate.middle(0, 0), m01 = gate.middle(0, 1);
  const Complex m10 = gate.middle(1, 0), m11 = gate.middle(1, 1);
  Index up_mask = Index{1} << pair;
  Index partner_mask = up_mask;
  Index down_mask = 0;
  if (desc.kind() == BasisKind::Full) {
    down_mask = Index{1} << (desc.sites() + pair);
    partner_mask |= down_mask;
  }
  // Visit each (ud, du) doublet once from its ud member.
  for (Index idx = 0; idx < desc.dim(); ++idx) {
    if (!(idx & up_mask) || (idx & down_mask)) continue;
    const auto ud = static_cast<Eigen::Index>(idx);
    const auto du = static_cast<Eigen::Index>(idx ^ partner_mask);
    const Complex x = amps[ud];
    const Complex y = amps[du];
    amps[ud] = m00 * x + m01 * y;
    amps[du] = m10 * x + m11 * y;
  }
}

const BasisDescriptor& FloquetOperator::desc() const {
  return std::visit(
      [](const auto& rep) -> const BasisDescriptor& {
        if constexpr (std::is_same_v<std::decay_t<decltype(rep)>, GateSequence>)
          return rep.ising.desc;
        else
          return rep.desc;
      },
      rep_);
}

void FloquetOperator::apply(Eigen::VectorXcd& amps) const {
  if (static_cast<Index>(amps.size()) != desc().dim())
    throw DimensionError("state has dim " + std::to_string(amps.size()) + ", operator has dim " +
                         std::to_string(desc().dim()));
  if (const auto* seq = std::get_if<GateSequence>(&rep_)) {
    amps.array() *= seq->ising.phases.array();
    for (const auto& placement : seq->gates) apply_pair_gate(placement.gate, placement.pair, seq->ising.desc, amps);
  } else {
    amps = std::get<DenseMatrix>(rep_).matrix * amps;
  }
}

Eigen::MatrixXcd FloquetOperator::to_dense(Index dense_limit, int workers) const {
  if (const auto* dense = std::get_if<DenseMatrix>(&rep_)) return dense->matrix;
  const Index dim = desc().dim();
  if (dim > dense_limit)
    throw ResourceError("dense operator of dim " + std::to_string(dim) + " exceeds limit " +
                        std::to_string(dense_limit));
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd out(n, n);
  parallel_for(static_cast<std::size_t>(n), workers, [&](std::size_t col) {
    Eigen::VectorXcd column = Eigen::VectorXcd::Zero(n);
    column[static_cast<Eigen::Index>(col)] = 1.0;
    apply(column);
    out.col(static_cast<Eigen::Index>(col)) = column;
  });
  return out;
}

FloquetOperator build_floquet(const DriveParams& params, const BasisDescriptor& desc, OperatorForm form,
                              Index dense_limit, int workers) {
  params.validate();
  if (form == OperatorForm::DenseMatrix && desc.dim() > dense_limit)
    throw ResourceError("dense operator of dim " + std::to_string(desc.dim()) + " exceeds limit " +
                        std::to_string(dense_limit));
  GateSequence seq{ising_phases(params, desc), {}};
  const PairGate gate = pair_gate(params);
  for (int j = 0; j < desc.sites(); ++j) seq.gates.push_back({j, gate});
  FloquetOperator op(std::move(seq));
  if (form == OperatorForm::GateSequence) return op;
  return FloquetOperator(DenseMatrix{desc, op.to_dense(dense_limit, workers)});
}

}  // namespace nhdtc
