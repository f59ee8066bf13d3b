#include <gtest/gtest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include <biphasic/errors.hpp>
#include <biphasic/resistivity.hpp>

#include "test_support.hpp"

namespace biphasic {
namespace {

using testing::diag2;
using testing::vec;

std::vector<ResistivityModel> all_models(int dim) {
  SmallMatrix K = SmallMatrix::Identity(dim, dim);
  K(0, 0) = 0.3;
  K(0, 1) = K(1, 0) = 0.1;
  const auto aniso = ResistivityModel::displacement_anisotropic(1.0, 0.5, 0.1, dim);
  return {ResistivityModel::constant(K), aniso, ResistivityModel::dilatation_affine(1.0, 2e-3, dim),
          ResistivityModel::truncated(aniso, 0.8), ResistivityModel::truncated(ResistivityModel::constant(K), 0.2)};
}

SmallVector sample_arg(const ResistivityModel& m, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  SmallVector s(m.argument() == Argument::Dilatation ? 1 : m.dim());
  for (int i = 0; i < s.size(); ++i) s(i) = u(rng);
  return s;
}

TEST(Resistivity, DilatationAffineAtZeroIsIdentity) {
  const auto m = ResistivityModel::dilatation_affine(1.0, 2e-3, 3);
  EXPECT_EQ(m.eval_dilatation(0.0), SmallMatrix::Identity(3, 3));
}

TEST(Resistivity, AnisotropicExample) {
  const auto m = ResistivityModel::displacement_anisotropic(1.0, 0.5, 0.1, 2);
  EXPECT_LT((m.eval(vec({1.0, 0.0})) - diag2(1.6, 1.1)).norm(), 1e-15);
}

TEST(Resistivity, AnisotropicAtZeroIsExactlyCI) {
  for (int dim : {2, 3}) {
    const auto m = ResistivityModel::displacement_anisotropic(1.0, 0.5, 0.1, dim);
    EXPECT_EQ(m.eval(SmallVector::Zero(dim)), SmallMatrix(0.1 * SmallMatrix::Identity(dim, dim)));
  }
}

TEST(Resistivity, TruncatedConstant) {
  const auto m = ResistivityModel::truncated(ResistivityModel::constant(diag2(0.3, 1.4)), 1.0);
  EXPECT_EQ(m.eval(vec({0.0, 0.0})), diag2(0.3, 1.0));
}

TEST(Resistivity, InactiveTruncationIsIdentical) {
  std::mt19937_64 rng(3);
  const auto inner = ResistivityModel::constant(diag2(0.5, 1.4));
  const auto t = ResistivityModel::truncated(inner, 1.4);
  for (int i = 0; i < 50; ++i) {
    const SmallVector s = sample_arg(inner, rng);
    EXPECT_EQ(t.eval(s), inner.eval(s));
  }
}

TEST(Resistivity, ConstantRejectsNonSpd) {
  SmallMatrix K(2, 2);
  K << 1, 2, 2, 1;
  EXPECT_THROW(ResistivityModel::constant(K), Error);
  K << 1, 0.5, 0.4, 1;
  EXPECT_THROW(ResistivityModel::constant(K), Error);
}

TEST(Resistivity, WrongArgumentSizeIsDimensionMismatch) {
  const auto m = ResistivityModel::displacement_anisotropic(1.0, 0.5, 0.1, 3);
  try {
    m.eval(vec({1.0, 2.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(Resistivity, EvalSymmetricAndTruncationBounded) {
  std::mt19937_64 rng(11);
  for (int dim : {2, 3}) {
    for (const auto& m : all_models(dim)) {
      const auto* t = std::get_if<ResistivityModel::Truncated>(&m.variant());
      for (int i = 0; i < 200; ++i) {
        const SmallMatrix K = m.eval(sample_arg(m, rng));
        EXPECT_LE((K - K.transpose()).norm(), 1e-14 * K.norm()) << m.name();
        if (t) EXPECT_LE(K.maxCoeff(), t->m + 1e-15) << m.name();
      }
    }
  }
}

TEST(Resistivity, ArgumentsAndIndependence) {
  const auto models = all_models(2);
  EXPECT_TRUE(models[0].iterate_independent());
  EXPECT_EQ(models[1].argument(), Argument::Displacement);
  EXPECT_EQ(models[2].argument(), Argument::Dilatation);
  EXPECT_FALSE(models[2].iterate_independent());
  EXPECT_TRUE(models[4].iterate_independent());
  EXPECT_TRUE(ResistivityModel::dilatation_affine(2.0, 0.0, 2).iterate_independent());
}

TEST(Structure, ConstantIdentity) {
  const auto r = verify_structure(ResistivityModel::constant(SmallMatrix::Identity(2, 2)), 100, 1.0);
  EXPECT_DOUBLE_EQ(r.k1_hat, 1.0);
  EXPECT_DOUBLE_EQ(r.k2_hat, 1.0);
  EXPECT_EQ(r.kL_hat, 0.0);
  EXPECT_TRUE(r.contradictions.empty());
}

TEST(Structure, DilatationLipschitz) {
  for (int dim : {2, 3}) {
    const auto r = verify_structure(ResistivityModel::dilatation_affine(1.0, 2e-3, dim), 500, 10.0);
    EXPECT_LE(r.kL_hat, 2e-3 * std::sqrt(dim) + 1e-12);
    EXPECT_TRUE(r.symmetric_ok);
  }
}

TEST(Structure, AnisotropicLowerEigenvalue) {
  const auto m = ResistivityModel::displacement_anisotropic(1.0, 0.5, 0.1, 3);
  const auto r = verify_structure(m, 500, 5.0);
  EXPECT_GE(r.k1_hat, 0.1 - 1e-12);
  EXPECT_TRUE(r.spd_ok);
  EXPECT_TRUE(r.contradictions.empty());
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    Eigen::SelfAdjointEigenSolver<SmallMatrix> es(m.eval(sample_arg(m, rng)));
    EXPECT_GE(es.eigenvalues().minCoeff(), 0.1 - 1e-12);
  }
}

TEST(Structure, DeclaredBoundsNotContradicted) {
  for (int dim : {2, 3}) {
    auto models = all_models(dim);
    models.push_back(ResistivityModel::truncated(ResistivityModel::displacement_anisotropic(0.5, 0.5, 1.0, dim), 3.0));
    for (const auto& m : models) {
      if (m.name().rfind("truncated(displacement", 0) == 0 && !m.diagonal()) continue;
      for (MatrixNorm norm : {MatrixNorm::Spectral, MatrixNorm::Frobenius}) {
        const auto r = verify_structure(m, 300, 4.0, norm, 9);
        EXPECT_TRUE(r.contradictions.empty()) << m.name() << ": " << (r.contradictions.empty() ? "" : r.contradictions[0]);
      }
    }
  }
}

TEST(Structure, EntrywiseTruncationCanLosePositivity) {
  // Off-diagonal entries survive a cap that clips the diagonal.
  const auto m = ResistivityModel::truncated(ResistivityModel::displacement_anisotropic(1.0, 0.5, 0.1, 2), 0.8);
  EXPECT_FALSE(m.declared_bounds().k1.has_value());
  const SmallMatrix K = m.eval(vec({10.0, 10.0}));
  EXPECT_LE(K.determinant(), 0.0);
  EXPECT_FALSE(verify_structure(m, 300, 10.0).spd_ok);
}

}  // namespace
}  // namespace biphasic
