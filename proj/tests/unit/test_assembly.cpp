#include <gtest/gtest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include <biphasic/assembly.hpp>
#include <biphasic/errors.hpp>

#include "test_support.hpp"

namespace biphasic {
namespace {

using testing::desk_nondim;
using testing::diag2;
using testing::square;
using testing::vec;

ProblemData zero_forces() { return {}; }

TEST(Assembly, ZeroDataRhsIsSourceOnly) {
  for (Pairing pairing : {Pairing::TaylorHood, Pairing::EqualOrder}) {
    const MixedSpaces s = make_spaces(square(3), pairing);
    const NondimParams ndp = desk_nondim();
    const BlockSystem sys = assemble(s, ndp, uniform_resistivity(s, diag2(1, 1)), zero_forces());
    EXPECT_EQ(sys.rhs.head(sys.offsets[2]).norm(), 0.0);
    // Pressure basis functions form a partition of unity.
    EXPECT_NEAR(sys.rhs.tail(sys.size() - sys.offsets[2]).sum(), ndp.a0 * 1.0, 1e-13);
    for (int i = sys.offsets[2]; i < sys.size(); ++i) EXPECT_GT(sys.rhs(i), 0.0);
  }
}

TEST(Assembly, DragIsMassMatrixForIdentity) {
  const MixedSpaces s = make_spaces(square(3));
  NondimParams ndp = desk_nondim();
  ndp.Da = 1.0;
  const ProblemData d = zero_forces();
  const auto A1 = assemble(s, ndp, uniform_resistivity(s, diag2(1, 1)), d).block(0, 0);
  const auto A2 = assemble(s, ndp, uniform_resistivity(s, diag2(2, 2)), d).block(0, 0);
  const Eigen::SparseMatrix<double> M = A2 - A1;
  const FieldFunction one = interpolate(s.velocity, VectorFunction([](const SmallVector&) { return vec({1.0, 0.0}); }));
  const FieldFunction lin = interpolate(s.velocity, VectorFunction([](const SmallVector& x) { return vec({x(1), x(0)}); }));
  EXPECT_NEAR(one.coefficients.dot(M * one.coefficients), 1.0, 1e-13);
  EXPECT_NEAR(lin.coefficients.dot(M * lin.coefficients), 2.0 / 3.0, 1e-13);
  EXPECT_NEAR(one.coefficients.dot(M * lin.coefficients), 0.5, 1e-13);
}

TEST(Assembly, PairingMatchesDirectQuadrature) {
  const MixedSpaces s = make_spaces(square(3));
  const NondimParams ndp = desk_nondim();
  ProblemData d;
  d.b_f = [](const SmallVector& x) { return vec({x(0), 1.0 - x(1)}); };
  d.b_s = constant_vector(vec({0.3, -0.2}));
  d.traction = normal_traction(1.5);
  d.source = [](const SmallVector& x) { return 1.0 + x(0) * x(1); };
  const auto aniso = ResistivityModel::displacement_anisotropic(1.0, 0.5, 0.1, 2);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 4; ++trial) {
    Eigen::VectorXd x(s.total_dofs());
    for (int i = 0; i < x.size(); ++i) x(i) = normal(rng);
    const SolutionTriple t = SolutionTriple::from_combined(s, x);
    const ResistivityField rf = frozen_resistivity(s, aniso, &t.U);
    const BlockSystem sys = assemble(s, ndp, rf, d);
    const double via_matrix = x.dot(sys.matrix * x) - x.dot(sys.rhs);
    const double direct = energy_pairing(s, t, ndp, rf, d);
    EXPECT_LE(std::abs(via_matrix - direct), 1e-10 * std::abs(direct));
  }
}

TEST(Assembly, PressureVelocityBlocksAreSkew) {
  for (auto mesh : {square(4), std::make_shared<const Mesh>(generate_unit_ball(1, 3))}) {
    const MixedSpaces s = make_spaces(mesh);
    const int d = mesh->dim();
    const BlockSystem sys =
        assemble(s, desk_nondim(), uniform_resistivity(s, SmallMatrix::Identity(d, d)), zero_forces());
    const Eigen::SparseMatrix<double> vp = sys.block(0, 2), pv = sys.block(2, 0);
    const Eigen::SparseMatrix<double> sum = Eigen::SparseMatrix<double>(pv.transpose()) + vp;
    EXPECT_LE(sum.norm(), 1e-12 * vp.norm());
  }
}

TEST(Assembly, ElasticBlockIsPositiveDefinite) {
  const MixedSpaces s = make_spaces(square(3));
  const BlockSystem sys = assemble(s, desk_nondim(), uniform_resistivity(s, diag2(1, 1)), zero_forces());
  const Eigen::MatrixXd uu = Eigen::MatrixXd(sys.block(1, 1));
  EXPECT_LE((uu - uu.transpose()).norm(), 1e-12 * uu.norm());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(uu);
  EXPECT_GT(es.eigenvalues().minCoeff(), 0.0);
}

TEST(Assembly, NonSpdResistivityIsRejected) {
  const MixedSpaces s = make_spaces(square(2));
  SmallMatrix K(2, 2);
  K << 1, 2, 2, 1;
  try {
    assemble(s, desk_nondim(), uniform_resistivity(s, K), zero_forces());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LossOfPositivity);
  }
}

TEST(Assembly, FrozenDilatationNeedsPositiveRange) {
  const MixedSpaces s = make_spaces(square(2));
  FieldFunction u = interpolate(s.displacement, VectorFunction([](const SmallVector& x) {
                                  const double b = 16.0 * x(0) * (1 - x(0)) * x(1) * (1 - x(1));
                                  return vec({b, b});
                                }));
  const auto model = ResistivityModel::dilatation_affine(1.0, 10.0, 2);
  EXPECT_THROW(assemble(s, desk_nondim(), frozen_resistivity(s, model, &u), zero_forces()), Error);
}

TEST(Assembly, YNormMatchesDefinition) {
  const MixedSpaces s = make_spaces(square(3));
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(s.total_dofs(), -1.0, 2.0);
  const SolutionTriple t = SolutionTriple::from_combined(s, x);
  const double expected = std::pow(h1_norm(t.V), 2) + std::pow(grad_l2(t.U), 2) + std::pow(l2_norm(t.P), 2);
  EXPECT_NEAR(t.y_norm_sq(), expected, 1e-12 * expected);
  EXPECT_EQ(t.combined(), x);
}

TEST(Residual, Basics) {
  const MixedSpaces s = make_spaces(square(2));
  ProblemData d;
  d.traction = normal_traction(3.0);
  const BlockSystem sys = assemble(s, desk_nondim(), uniform_resistivity(s, diag2(1, 1)), d);
  ASSERT_GE(sys.rhs.norm(), 1.0);
  EXPECT_DOUBLE_EQ(weak_residual(sys, Eigen::VectorXd::Zero(sys.size())), 1.0);
  EXPECT_THROW(weak_residual(sys, Eigen::VectorXd::Zero(3)), Error);
}

TEST(DataNorms, ConstantDataOnSquare) {
  const MixedSpaces s = make_spaces(square(4));
  ProblemData d;
  d.b_f = constant_vector(vec({3.0, 4.0}));
  d.traction = normal_traction(2.0);
  const DataNorms dn = data_norms(s, d, 1.5);
  EXPECT_NEAR(dn.norm_bf, 5.0, 1e-13);
  EXPECT_EQ(dn.norm_bs, 0.0);
  EXPECT_NEAR(dn.norm_Tinf, 2.0 * 2.0, 1e-13);
  EXPECT_NEAR(dn.norm_a0, 1.5, 1e-13);
  EXPECT_NEAR(dn.vol_Omega, 1.0, 1e-14);
  EXPECT_NEAR(dn.area_boundary, 4.0, 1e-13);
}

}  // namespace
}  // namespace biphasic
