#include "nhdtc/symmetry.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nhdtc/csv.hpp"
#include "nhdtc/errors.hpp"
#include "nhdtc/spectral.hpp"

namespace nhdtc {

namespace {

int bit_of(int sites, Chain chain, int site) {
  if (site < 0 || site >= sites) throw IndexError("site " + std::to_string(site) + " outside chain");
  return chain == Chain::A ? site : sites + site;
}

Eigen::Index full_dim(int sites) { return static_cast<Eigen::Index>(BasisDescriptor::full(sites).dim()); }

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Eigen::MatrixXcd sigma_z(int sites, Chain chain, int site) {
  const int bit = bit_of(sites, chain, site);
  const auto n = full_dim(sites);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = ((i >> bit) & 1) ? 1.0 : -1.0;
  return m;
}

Eigen::MatrixXcd sigma_plus(int sites, Chain chain, int site) {
  const int bit = bit_of(sites, chain, site);
  const auto n = full_dim(sites);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (!((i >> bit) & 1)) m(i | (Eigen::Index{1} << bit), i) = 1.0;
  return m;
}

Eigen::MatrixXcd sigma_minus(int sites, Chain chain, int site) { return sigma_plus(sites, chain, site).adjoint(); }

Eigen::MatrixXcd total_sz(int sites) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(full_dim(sites), full_dim(sites));
  for (int j = 0; j < sites; ++j) m += sigma_z(sites, Chain::A, j) + sigma_z(sites, Chain::B, j);
  return m;
}

Eigen::MatrixXcd ising_hamiltonian(const DriveParams& params) {
  const int sites = params.sites;
  const auto n = full_dim(sites);
  const BasisDescriptor desc = BasisDescriptor::full(sites);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto idx = static_cast<Index>(i);
    int bonds = 0;
    for (int j = 0; j + 1 < sites; ++j)
      bonds += spin_a(idx, j) * spin_a(idx, j + 1) + spin_b(idx, j, desc) * spin_b(idx, j + 1, desc);
    h(i, i) = -params.jz * bonds;
  }
  return h;
}

Eigen::MatrixXcd hopping_hamiltonian(const DriveParams& params) {
  const int sites = params.sites;
  const double ja = params.jz * std::numbers::pi / 2 * (1.0 + params.eps_a);
  const double jb = params.jz * std::numbers::pi / 2 * (1.0 + params.eps_b);
  const auto n = full_dim(sites);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < sites; ++j) {
      const bool a_up = (i >> j) & 1, b_up = (i >> (sites + j)) & 1;
      if (a_up == b_up) continue;
      const Eigen::Index flipped = i ^ (Eigen::Index{1} << j) ^ (Eigen::Index{1} << (sites + j));
      // s^{a+} s^{b-} takes |down, up> to |up, down>
      h(flipped, i) += b_up ? ja : jb;
    }
  }
  return h;
}

Eigen::VectorXcd AntiUnitaryOp::apply(const Eigen::VectorXcd& amps) const {
  return conjugate ? Eigen::VectorXcd(unitary * amps.conjugate()) : Eigen::VectorXcd(unitary * amps);
}

Eigen::MatrixXcd AntiUnitaryOp::conjugate_operator(const Eigen::MatrixXcd& op) const {
  const Eigen::MatrixXcd inner = conjugate ? Eigen::MatrixXcd(op.conjugate()) : op;
  return unitary * inner * unitary.adjoint();
}

Eigen::MatrixXcd AntiUnitaryOp::square() const {
  return conjugate ? Eigen::MatrixXcd(unitary * unitary.conjugate()) : Eigen::MatrixXcd(unitary * unitary);
}

ParityKind parse_parity(const std::string& name) {
  if (name == "reflection") return ParityKind::Reflection;
  if (name == "chain_swap") return ParityKind::ChainSwap;
  if (name == "ladder") return ParityKind::ReflectionChainSwap;
  throw InvalidConfig("unknown parity variant '" + name + "' (reflection, chain_swap, ladder)");
}

std::string to_string(ParityKind kind) {
  switch (kind) {
    case ParityKind::Reflection: return "reflection";
    case ParityKind::ChainSwap: return "chain_swap";
    case ParityKind::ReflectionChainSwap: return "ladder";
  }
  return "?";
}

Eigen::MatrixXcd build_parity(int sites, ParityKind kind) {
  const auto n = full_dim(sites);
  const Index mask = (Index{1} << sites) - 1;
  auto reflect = [sites](Index bits) {
    Index out = 0;
    for (int j = 0; j < sites; ++j)
      if ((bits >> j) & 1U) out |= Index{1} << (sites - 1 - j);
    return out;
  };
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  for (Index idx = 0; idx < static_cast<Index>(n); ++idx) {
    Index a = idx & mask;
    Index b = (idx >> sites) & mask;
    if (kind != ParityKind::ChainSwap) {
      a = reflect(a);
      b = reflect(b);
    }
    if (kind != ParityKind::Reflection) std::swap(a, b);
    p(static_cast<Eigen::Index>(a | (b << sites)), static_cast<Eigen::Index>(idx)) = 1.0;
  }
  return p;
}

AntiUnitaryOp build_time_reversal(int sites) {
  // sigma^y |up> = i |down>, sigma^y |down> = -i |up>, on every spin.
  const auto n = full_dim(sites);
  const Index all = static_cast<Index>(n) - 1;
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (Index idx = 0; idx <= all; ++idx) {
    Complex phase = 1.0;
    for (int bit = 0; bit < 2 * sites; ++bit) phase *= ((idx >> bit) & 1U) ? Complex(0, 1) : Complex(0, -1);
    w(static_cast<Eigen::Index>(idx ^ all), static_cast<Eigen::Index>(idx)) = phase;
  }
  return {w, true};
}

AntiUnitaryOp compose(const Eigen::MatrixXcd& parity, const AntiUnitaryOp& time_reversal) {
  return {parity * time_reversal.unitary, time_reversal.conjugate};
}

std::string SymmetryReport::to_text() const {
  std::ostringstream os;
  os << "sites: " << sites << "\n"
     << "eps_a: " << format_double(eps_a) << "\n"
     << "eps_b: " << format_double(eps_b) << "\n"
     << "pt_parity: " << pt_parity << "\n"
     << "pt_ising: " << format_double(pt_ising) << "\n"
     << "pt_hopping: " << format_double(pt_hopping) << "\n"
     << "pt_ising_reflection: " << format_double(pt_ising_reflection) << "\n"
     << "pt_hopping_reflection: " << format_double(pt_hopping_reflection) << "\n"
     << "parity_commutator: " << format_double(parity_commutator) << "\n"
     << "parity_square: " << format_double(parity_square) << "\n"
     << "time_reversal_square_phase: " << format_double(time_reversal_square_phase) << "\n"
     << "magnetization_commutator: " << format_double(magnetization_commutator) << "\n"
     << "max_im_energy: " << format_double(max_im_energy) << "\n";
  return os.str();
}

namespace {

// Eigenvalues only, one total-magnetization block at a time.
double max_decay_by_magnetization(const Eigen::MatrixXcd& u, const BasisDescriptor& desc) {
  std::map<int, std::vector<Index>> blocks;
  for (Index i = 0; i < desc.dim(); ++i) blocks[total_magnetization(i, desc)].push_back(i);
  double worst = 0.0;
  for (const auto& [m, idx] : blocks) {
    const auto n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd block(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) block(r, c) = u(static_cast<Eigen::Index>(idx[r]), static_cast<Eigen::Index>(idx[c]));
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(block, false);
    for (Eigen::Index k = 0; k < n; ++k) worst = std::max(worst, std::abs(quasienergy(solver.eigenvalues()[k]).decay));
  }
  return worst;
}

}  // namespace

SymmetryReport pt_report(const DriveParams& params, const SymmetryOptions& options) {
  params.validate();
  if (params.sites > options.max_sites)
    throw ResourceError("symmetry checks build dense 4^L matrices; L=" + std::to_string(params.sites) +
                        " exceeds max " + std::to_string(options.max_sites));
  const int sites = params.sites;
  SymmetryReport report;
  report.sites = sites;
  report.eps_a = params.eps_a;
  report.eps_b = params.eps_b;
  report.pt_parity = to_string(options.pt_parity);

  const Eigen::MatrixXcd hz = ising_hamiltonian(params);
  const Eigen::MatrixXcd hi = hopping_hamiltonian(params);
  const AntiUnitaryOp time_reversal = build_time_reversal(sites);
  const AntiUnitaryOp pt = compose(build_parity(sites, options.pt_parity), time_reversal);
  report.pt_ising = max_abs(pt.conjugate_operator(hz) - hz);
  report.pt_hopping = max_abs(pt.conjugate_operator(hi) - hi);

  const Eigen::MatrixXcd reflection = build_parity(sites, ParityKind::Reflection);
  const AntiUnitaryOp pt_reflection = compose(reflection, time_reversal);
  report.pt_ising_reflection = max_abs(pt_reflection.conjugate_operator(hz) - hz);
  report.pt_hopping_reflection = max_abs(pt_reflection.conjugate_operator(hi) - hi);

  const FloquetOperator full = build_floquet(params, BasisDescriptor::full(sites), OperatorForm::DenseMatrix);
  const Eigen::MatrixXcd& u = full.dense().matrix;
  report.parity_commutator = max_abs(reflection * u - u * reflection);
  report.parity_square = max_abs(reflection * reflection - Eigen::MatrixXcd::Identity(u.rows(), u.cols()));
  report.time_reversal_square_phase = time_reversal.square()(0, 0).real();
  const Eigen::MatrixXcd sz = total_sz(sites);
  report.magnetization_commutator = max_abs(sz * u - u * sz);

  const FloquetOperator sector =
      build_floquet(params, BasisDescriptor::pair_sector(sites), OperatorForm::DenseMatrix);
  report.max_im_energy = std::max(max_decay_by_magnetization(u, BasisDescriptor::full(sites)),
                                  eigendecompose(sector).max_decay());
  return report;
}

}  // namespace nhdtc
