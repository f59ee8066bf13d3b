#pragma once

// Hydraulic resistivity laws K(s), where s is either the solid
// displacement (a d-vector) or its divergence (a scalar).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "biphasic/types.hpp"

namespace biphasic {

enum class MatrixNorm { Spectral, Frobenius };

double matrix_norm(const SmallMatrix& K, MatrixNorm norm = MatrixNorm::Spectral);

/// What the law is evaluated on.
enum class Argument { Any, Displacement, Dilatation };

/// Structural constants a law is known to satisfy; empty means unbounded or
/// not available.
struct DeclaredBounds {
  std::optional<double> k1;   // lower eigenvalue bound
  std::optional<double> k2;   // norm bound
  std::optional<double> k_L;  // Lipschitz constant
  std::optional<double> k0;   // |K(s)| <= k0 (1 + |s|)
};

class ResistivityModel {
 public:
  struct Constant {
    SmallMatrix K;
  };
  /// (a|U| + c) I + (a - b) U U^T / |U|, with c I at U = 0.
  struct DisplacementAnisotropic {
    double a = 0.0, b = 0.0, c = 1.0;
  };
  /// (gamma1 + gamma2 div U) I.
  struct DilatationAffine {
    double gamma1 = 1.0, gamma2 = 0.0;
  };
  /// Entrywise min(m, K_ij) of an inner law.
  struct Truncated {
    std::shared_ptr<const ResistivityModel> inner;
    double m = 1.0;
  };
  using Variant = std::variant<Constant, DisplacementAnisotropic, DilatationAffine, Truncated>;

  static ResistivityModel constant(const SmallMatrix& K);
  static ResistivityModel displacement_anisotropic(double a, double b, double c, int dim);
  static ResistivityModel dilatation_affine(double gamma1, double gamma2, int dim);
  static ResistivityModel truncated(const ResistivityModel& inner, double m);

  int dim() const { return dim_; }
  const Variant& variant() const { return variant_; }
  Argument argument() const;
  std::string name() const;

  /// `s` has size dim for displacement laws and size 1 for dilatation laws;
  /// a constant law accepts either. Throws DimensionMismatch otherwise.
  SmallMatrix eval(const SmallVector& s) const;
  SmallMatrix eval_dilatation(double div_u) const;

  /// True when K does not depend on its argument.
  bool iterate_independent() const;
  /// True when every value is a diagonal matrix.
  bool diagonal() const;

  DeclaredBounds declared_bounds(MatrixNorm norm = MatrixNorm::Spectral) const;

 private:
  ResistivityModel(Variant v, int dim) : variant_(std::move(v)), dim_(dim) {}

  Variant variant_;
  int dim_;
};

struct StructureReport {
  double k1_hat = 0.0;
  double k2_hat = 0.0;
  double kL_hat = 0.0;
  double k0_hat = 0.0;
  bool spd_ok = true;
  bool symmetric_ok = true;
  /// Sampled estimates that contradict the declared bounds.
  std::vector<std::string> contradictions;
};

/// Monte-Carlo estimates of the structural constants over arguments drawn
/// uniformly from the ball (or interval) of the given radius.
StructureReport verify_structure(const ResistivityModel& model, int sample_count,
                                 double sample_radius, MatrixNorm norm = MatrixNorm::Spectral,
                                 std::uint64_t seed = 0, double tol = 1e-12);

}  // namespace biphasic
