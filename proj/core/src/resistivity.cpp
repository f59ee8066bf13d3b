#include "biphasic/resistivity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "biphasic/errors.hpp"

namespace biphasic {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double matrix_norm(const SmallMatrix& K, MatrixNorm norm) {
  if (norm == MatrixNorm::Frobenius) return K.norm();
  Eigen::SelfAdjointEigenSolver<SmallMatrix> es(K, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

ResistivityModel ResistivityModel::constant(const SmallMatrix& K) {
  if (K.rows() != K.cols() || (K.rows() != 2 && K.rows() != 3)) {
    throw Error(ErrorCode::DimensionMismatch, "constant resistivity must be a 2x2 or 3x3 matrix");
  }
  if ((K - K.transpose()).norm() > 1e-14 * K.norm()) {
    throw Error(ErrorCode::InvalidParameter, "constant resistivity must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<SmallMatrix> es(K, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorCode::LossOfPositivity, "constant resistivity must be positive definite");
  }
  return ResistivityModel(Constant{K}, static_cast<int>(K.rows()));
}

ResistivityModel ResistivityModel::displacement_anisotropic(double a, double b, double c, int dim) {
  if (a < 0.0 || b < 0.0 || c <= 0.0) {
    throw Error(ErrorCode::InvalidParameter, "anisotropic resistivity needs a, b >= 0 and c > 0");
  }
  return ResistivityModel(DisplacementAnisotropic{a, b, c}, dim);
}

ResistivityModel ResistivityModel::dilatation_affine(double gamma1, double gamma2, int dim) {
  if (gamma1 <= 0.0 || gamma2 < 0.0) {
    throw Error(ErrorCode::InvalidParameter, "dilatation resistivity needs gamma1 > 0, gamma2 >= 0");
  }
  return ResistivityModel(DilatationAffine{gamma1, gamma2}, dim);
}

ResistivityModel ResistivityModel::truncated(const ResistivityModel& inner, double m) {
  if (!(m > 0.0)) throw Error(ErrorCode::InvalidParameter, "truncation level must be positive");
  return ResistivityModel(Truncated{std::make_shared<const ResistivityModel>(inner), m}, inner.dim());
}

Argument ResistivityModel::argument() const {
  return std::visit(Overloaded{[](const Constant&) { return Argument::Any; },
                               [](const DisplacementAnisotropic&) { return Argument::Displacement; },
                               [](const DilatationAffine&) { return Argument::Dilatation; },
                               [](const Truncated& t) { return t.inner->argument(); }},
                    variant_);
}

std::string ResistivityModel::name() const {
  std::ostringstream os;
  std::visit(Overloaded{[&](const Constant&) { os << "constant"; },
                        [&](const DisplacementAnisotropic& m) {
                          os << "displacement_anisotropic(a=" << m.a << ", b=" << m.b << ", c=" << m.c << ")";
                        },
                        [&](const DilatationAffine& m) {
                          os << "dilatation_affine(gamma1=" << m.gamma1 << ", gamma2=" << m.gamma2 << ")";
                        },
                        [&](const Truncated& t) { os << "truncated(" << t.inner->name() << ", m=" << t.m << ")"; }},
             variant_);
  return os.str();
}

SmallMatrix ResistivityModel::eval(const SmallVector& s) const {
  const Argument arg = argument();
  const bool ok = (arg == Argument::Displacement && s.size() == dim_) ||
                  (arg == Argument::Dilatation && s.size() == 1) ||
                  (arg == Argument::Any && (s.size() == 1 || s.size() == dim_));
  if (!ok) {
    throw Error(ErrorCode::DimensionMismatch,
                "resistivity argument of size " + std::to_string(s.size()) + " for " + name());
  }
  const SmallMatrix I = SmallMatrix::Identity(dim_, dim_);
  return std::visit(
      Overloaded{[&](const Constant& m) -> SmallMatrix { return m.K; },
                 [&](const DisplacementAnisotropic& m) -> SmallMatrix {
                   const double r = s.norm();
                   if (r == 0.0) return m.c * I;
                   return (m.a * r + m.c) * I + ((m.a - m.b) / r) * (s * s.transpose());
                 },
                 [&](const DilatationAffine& m) -> SmallMatrix { return (m.gamma1 + m.gamma2 * s(0)) * I; },
                 [&](const Truncated& t) -> SmallMatrix {
                   return t.inner->eval(s).cwiseMin(t.m);
                 }},
      variant_);
}

SmallMatrix ResistivityModel::eval_dilatation(double div_u) const {
  SmallVector s(1);
  s(0) = div_u;
  return eval(s);
}

bool ResistivityModel::iterate_independent() const {
  return std::visit(Overloaded{[](const Constant&) { return true; },
                               [](const DisplacementAnisotropic& m) { return m.a == 0.0 && m.b == 0.0; },
                               [](const DilatationAffine& m) { return m.gamma2 == 0.0; },
                               [](const Truncated& t) { return t.inner->iterate_independent(); }},
                    variant_);
}

bool ResistivityModel::diagonal() const {
  return std::visit(Overloaded{[](const Constant& m) { return m.K.isDiagonal(0.0); },
                               [](const DisplacementAnisotropic& m) { return m.a == m.b; },
                               [](const DilatationAffine&) { return true; },
                               [](const Truncated& t) { return t.inner->diagonal(); }},
                    variant_);
}

DeclaredBounds ResistivityModel::declared_bounds(MatrixNorm norm) const {
  const bool frob = norm == MatrixNorm::Frobenius;
  const double sqrt_d = std::sqrt(static_cast<double>(dim_));
  return std::visit(
      Overloaded{
          [&](const Constant& m) {
            Eigen::SelfAdjointEigenSolver<SmallMatrix> es(m.K, Eigen::EigenvaluesOnly);
            const double k = matrix_norm(m.K, norm);
            return DeclaredBounds{es.eigenvalues().minCoeff(), k, 0.0, k};
          },
          [&](const DisplacementAnisotropic& m) {
            DeclaredBounds b;
            // Eigenvalues: a|U| + c (transverse) and (2a - b)|U| + c (along U).
            const double slope = std::max(m.a, std::abs(2.0 * m.a - m.b));
            if (2.0 * m.a >= m.b) b.k1 = m.c;
            if (m.a == 0.0 && m.b == 0.0) b.k2 = frob ? sqrt_d * m.c : m.c;
            // U -> U U^T/|U| is Lipschitz with constant 2/sqrt(3) (spectral)
            // and sqrt(2) (Frobenius).
            b.k_L = frob ? m.a * sqrt_d + std::abs(m.a - m.b) * std::sqrt(2.0)
                         : m.a + std::abs(m.a - m.b) * 2.0 / std::sqrt(3.0);
            b.k0 = (frob ? sqrt_d : 1.0) * std::max(m.c, slope);
            return b;
          },
          [&](const DilatationAffine& m) {
            DeclaredBounds b;
            const double scale = frob ? sqrt_d : 1.0;
            if (m.gamma2 == 0.0) {
              b.k1 = m.gamma1;
              b.k2 = scale * m.gamma1;
            }
            b.k_L = scale * m.gamma2;
            b.k0 = scale * std::max(m.gamma1, m.gamma2);
            return b;
          },
          [&](const Truncated& t) {
            const DeclaredBounds in = t.inner->declared_bounds(norm);
            DeclaredBounds b;
            const bool diag = t.inner->diagonal();
            // |min(m, x)| <= |x| for m > 0, so truncation never increases an
            // entry's magnitude. Diagonal values are also capped by m.
            const double widen = diag || frob ? 1.0 : sqrt_d;
            if (diag && in.k1) b.k1 = std::min(t.m, *in.k1);
            if (diag) b.k2 = frob ? sqrt_d * t.m : t.m;
            if (in.k2) b.k2 = std::min(b.k2.value_or(*in.k2), widen * *in.k2);
            if (in.k_L) b.k_L = widen * *in.k_L;
            if (in.k0) b.k0 = widen * *in.k0;
            if (b.k0 && b.k2) b.k0 = std::min(*b.k0, *b.k2);
            return b;
          }},
      variant_);
}

StructureReport verify_structure(const ResistivityModel& model, int sample_count,
                                 double sample_radius, MatrixNorm norm, std::uint64_t seed,
                                 double tol) {
  if (sample_count < 1 || !(sample_radius > 0.0)) {
    throw Error(ErrorCode::InvalidParameter, "verify_structure needs samples >= 1 and radius > 0");
  }
  const int d = model.dim();
  const int n = model.argument() == Argument::Dilatation ? 1 : d;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif;

  auto draw = [&]() {
    SmallVector s(n);
    for (int k = 0; k < n; ++k) s(k) = gauss(rng);
    const double r = sample_radius * std::pow(unif(rng), 1.0 / n);
    const double len = s.norm();
    return len > 0.0 ? SmallVector(s * (r / len)) : SmallVector(SmallVector::Zero(n));
  };

  std::vector<SmallVector> args;
  args.reserve(static_cast<std::size_t>(sample_count) + 1);
  args.push_back(SmallVector::Zero(n));
  for (int i = 0; i < sample_count; ++i) args.push_back(draw());

  StructureReport rep;
  rep.k1_hat = std::numeric_limits<double>::infinity();
  std::vector<SmallMatrix> values;
  values.reserve(args.size());
  for (const auto& s : args) {
    const SmallMatrix K = model.eval(s);
    values.push_back(K);
    if ((K - K.transpose()).norm() > 1e-14 * K.norm()) rep.symmetric_ok = false;
    Eigen::SelfAdjointEigenSolver<SmallMatrix> es(K, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    rep.k1_hat = std::min(rep.k1_hat, lmin);
    if (lmin <= 0.0) rep.spd_ok = false;
    const double kn = matrix_norm(K, norm);
    rep.k2_hat = std::max(rep.k2_hat, kn);
    rep.k0_hat = std::max(rep.k0_hat, kn / (1.0 + s.norm()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    for (std::size_t j = i + 1; j < args.size() && j < i + 8; ++j) {
      const double dx = (args[i] - args[j]).norm();
      if (dx > 0.0) rep.kL_hat = std::max(rep.kL_hat, matrix_norm(values[i] - values[j], norm) / dx);
    }
  }

  const DeclaredBounds db = model.declared_bounds(norm);
  auto flag = [&](bool bad, const std::string& what, double est, double decl) {
    if (!bad) return;
    std::ostringstream os;
    os << what << ": sampled " << est << " vs declared " << decl;
    rep.contradictions.push_back(os.str());
  };
  if (db.k1) flag(rep.k1_hat < *db.k1 - tol, "k1", rep.k1_hat, *db.k1);
  if (db.k2) flag(rep.k2_hat > *db.k2 + tol, "k2", rep.k2_hat, *db.k2);
  if (db.k_L) flag(rep.kL_hat > *db.k_L + tol, "k_L", rep.kL_hat, *db.k_L);
  if (db.k0) flag(rep.k0_hat > *db.k0 + tol, "k0", rep.k0_hat, *db.k0);
  if (!rep.spd_ok) rep.contradictions.push_back("sampled eigenvalue <= 0");
  return rep;
}

}  // namespace biphasic
