#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nhdtc/basis.hpp"
#include "nhdtc/errors.hpp"
#include "nhdtc/model.hpp"

using namespace nhdtc;
using enum Spin;

namespace {

const Complex I(0.0, 1.0);

DriveParams drive(int sites, double ea, double eb) {
  DriveParams p;
  p.sites = sites;
  p.eps_a = ea;
  p.eps_b = eb;
  return p;
}

Eigen::MatrixXcd columns_of(const FloquetOperator& op) {
  const auto dim = static_cast<Eigen::Index>(op.desc().dim());
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Unit(dim, k);
    op.apply(e);
    m.col(k) = e;
  }
  return m;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("ideal pair gate is a perfect swap") {
  const PairGate g = pair_gate(drive(2, 0, 0));
  Eigen::Matrix2cd want;
  want << 0, -I, -I, 0;
  CHECK(max_abs(g.middle - want) < 1e-15);
  const Eigen::Matrix4cd full = g.matrix();
  CHECK(full(0, 0) == Complex(1));
  CHECK(full(3, 3) == Complex(1));
  CHECK(std::abs(full(0, 1)) == 0.0);
}

TEST_CASE("reciprocal gates are unitary") {
  for (double eps : {-0.4, -0.1, 0.0, 0.2, 0.5, 1.3}) {
    const Eigen::Matrix4cd g = pair_gate(drive(2, eps, eps)).matrix();
    CHECK(max_abs(g * g.adjoint() - Eigen::Matrix4cd::Identity()) < 1e-12);
  }
}

TEST_CASE("closed-form gate matches the series exponential") {
  for (auto [ea, eb] : {std::pair{0.3, -0.3}, {0.2, 0.2}, {0.1, -0.25}, {-1.0, 0.4}, {-1.5, 0.5}, {0.5, -2.0}}) {
    const DriveParams p = drive(2, ea, eb);
    Eigen::MatrixXcd m(2, 2);
    m << 0, 1 + ea, 1 + eb, 0;
    const Eigen::MatrixXcd oracle = expm_series(-I * p.swap_phase_base * m);
    CAPTURE(ea);
    CAPTURE(eb);
    CHECK(max_abs(pair_gate(p).middle - oracle) < 1e-10);
  }
}

TEST_CASE("series exponential sanity") {
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(3, 3);
  CHECK(max_abs(expm_series(z) - Eigen::MatrixXcd::Identity(3, 3)) < 1e-15);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = Complex(0, 30.0);
  const Eigen::MatrixXcd e = expm_series(d);
  CHECK(std::abs(e(0, 0) - std::exp(2.0)) < 1e-12);
  CHECK(std::abs(e(1, 1) - std::exp(Complex(0, 30.0))) < 1e-12);
}

TEST_CASE("non-reciprocal gate is not unitary") {
  const Eigen::Matrix4cd g = pair_gate(drive(2, 0.3, -0.3)).matrix();
  CHECK(max_abs(g * g.adjoint() - Eigen::Matrix4cd::Identity()) > 0.01);
}

TEST_CASE("ising phases") {
  const DriveParams p = drive(2, 0, 0);
  const auto full = BasisDescriptor::full(2);
  const IsingPhases ph = ising_phases(p, full);
  CHECK(std::abs(ph.phases[encode(SpinConfig{Up, Up, Down, Down})] - std::exp(I)) < 1e-15);
  CHECK(std::abs(ph.phases[encode(SpinConfig{Up, Down, Down, Up})] - std::exp(-I)) < 1e-15);

  for (auto kind : {BasisKind::Full, BasisKind::PairSector}) {
    const auto d = BasisDescriptor(4, kind);
    const IsingPhases q = ising_phases(drive(4, 0.1, -0.2), d);
    REQUIRE(q.phases.size() == static_cast<Eigen::Index>(d.dim()));
    CHECK((q.phases.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-15);
  }

  // pair sector entries equal the full entries at the embedded index
  const auto f3 = BasisDescriptor::full(3);
  const auto r3 = BasisDescriptor::pair_sector(3);
  const IsingPhases pf = ising_phases(drive(3, 0, 0), f3), pr = ising_phases(drive(3, 0, 0), r3);
  for (Index r = 0; r < r3.dim(); ++r) CHECK(pr.phases[r] == pf.phases[pair_sector_embed(r, 3)]);

  CHECK_THROWS_AS(ising_phases(drive(3, 0, 0), full), DimensionError);
}

TEST_CASE("ideal Floquet step swaps the polarized state") {
  const auto full = BasisDescriptor::full(2);
  const FloquetOperator op = build_floquet(drive(2, 0, 0), full, OperatorForm::GateSequence);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
  psi[encode(SpinConfig{Up, Up, Down, Down})] = 1.0;
  op.apply(psi);
  const Index target = encode(SpinConfig{Down, Down, Up, Up});
  CHECK(std::abs(std::abs(psi[target]) - 1.0) < 1e-15);
  CHECK(std::abs(psi.norm() - 1.0) < 1e-15);
}

TEST_CASE("gate sequence and dense matrix agree") {
  for (auto kind : {BasisKind::Full, BasisKind::PairSector}) {
    for (int l = 1; l <= 3; ++l) {
      const auto d = BasisDescriptor(l, kind);
      const DriveParams p = drive(l, 0.2, -0.2);
      const auto seq = build_floquet(p, d, OperatorForm::GateSequence);
      const auto dense = build_floquet(p, d, OperatorForm::DenseMatrix);
      CHECK(dense.is_dense());
      CHECK(max_abs(columns_of(seq) - dense.dense().matrix) < 1e-12);
      CHECK(max_abs(seq.to_dense(kDefaultDenseLimit, 3) - dense.dense().matrix) < 1e-12);
    }
  }
}

TEST_CASE("dense operator conserves total magnetization exactly") {
  for (auto [ea, eb] : {std::pair{0.0, 0.0}, {0.3, -0.3}, {0.2, 0.4}}) {
    const auto full = BasisDescriptor::full(2);
    const Eigen::MatrixXcd u = build_floquet(drive(2, ea, eb), full, OperatorForm::DenseMatrix).dense().matrix;
    for (Index r = 0; r < full.dim(); ++r)
      for (Index c = 0; c < full.dim(); ++c)
        if (total_magnetization(r, full) != total_magnetization(c, full)) CHECK(u(r, c) == Complex(0));
  }
}

TEST_CASE("pair sector operator is the restriction of the full operator") {
  for (int l = 1; l <= 4; ++l) {
    const DriveParams p = drive(l, 0.15, -0.35);
    const Eigen::MatrixXcd uf = build_floquet(p, BasisDescriptor::full(l), OperatorForm::DenseMatrix).dense().matrix;
    const Eigen::MatrixXcd ur = build_floquet(p, BasisDescriptor::pair_sector(l), OperatorForm::DenseMatrix).dense().matrix;
    double worst = 0.0;
    const Index n = Index{1} << l;
    for (Index r = 0; r < n; ++r)
      for (Index c = 0; c < n; ++c)
        worst = std::max(worst, std::abs(ur(r, c) - uf(pair_sector_embed(r, l), pair_sector_embed(c, l))));
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("unitarity iff reciprocal") {
  for (double eps : {0.0, 0.1, 0.3}) {
    const Eigen::MatrixXcd u = build_floquet(drive(2, eps, eps), BasisDescriptor::full(2), OperatorForm::DenseMatrix).dense().matrix;
    CHECK(max_abs(u.adjoint() * u - Eigen::MatrixXcd::Identity(16, 16)) < 1e-10);
  }
  const Eigen::MatrixXcd v = build_floquet(drive(2, 0.3, -0.3), BasisDescriptor::full(2), OperatorForm::DenseMatrix).dense().matrix;
  CHECK(max_abs(v.adjoint() * v - Eigen::MatrixXcd::Identity(16, 16)) > 0.01);
}

TEST_CASE("parameter validation and guards") {
  DriveParams p = drive(2, 0, 0);
  p.t1 = 0.0;
  CHECK_THROWS_AS(p.validate(), InvalidParam);
  p = drive(2, 0, 0);
  p.jz = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidParam);
  CHECK_THROWS_AS(build_floquet(drive(6, 0, 0), BasisDescriptor::full(6), OperatorForm::DenseMatrix, 1024), ResourceError);
  CHECK_THROWS_AS(build_floquet(drive(3, 0, 0), BasisDescriptor::full(2), OperatorForm::GateSequence), DimensionError);
}

TEST_CASE("protocols") {
  DriveParams base = drive(4, 0, 0);
  const DriveParams h = Protocol::hermitian().at(base, 0.2);
  CHECK(h.eps_a == 0.2);
  CHECK(h.eps_b == 0.2);
  const DriveParams nh = Protocol::non_reciprocal().at(base, 0.2);
  CHECK(nh.eps_b == -0.2);
  const DriveParams g = Protocol::non_reciprocal(0.1).at(base, 0.2);
  CHECK(g.eps_b == doctest::Approx(-0.22).epsilon(1e-15));
  CHECK(Protocol::hermitian().tag() == "H");
  CHECK(Protocol::non_reciprocal().tag() == "NH");
  CHECK(Protocol::non_reciprocal(0.1).tag() == "NH_g0.1");
  CHECK(base.literal_swap_phase() == doctest::Approx(M_PI / 4));
}
