#pragma once

// Discrete block operator for the steady biphasic problem with the
// resistivity frozen at quadrature points.

#include <array>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "biphasic/fem.hpp"
#include "biphasic/params.hpp"
#include "biphasic/resistivity.hpp"

namespace biphasic {

/// TaylorHood: P2 velocity and displacement, P1 pressure.
/// EqualOrder: P1 for all three fields.
enum class Pairing { TaylorHood, EqualOrder };

struct MixedSpaces {
  SpacePtr velocity;
  SpacePtr displacement;  // vanishes on the boundary
  SpacePtr pressure;
  int quad_degree = 4;

  const Mesh& mesh() const { return velocity->mesh(); }
  int total_dofs() const {
    return velocity->num_dofs() + displacement->num_dofs() + pressure->num_dofs();
  }
};

MixedSpaces make_spaces(std::shared_ptr<const Mesh> mesh, Pairing pairing = Pairing::TaylorHood);

/// Load data. Empty functions mean zero, except `source`, which defaults
/// to the constant a0.
struct ProblemData {
  VectorFunction b_f;
  VectorFunction b_s;
  TractionFunction traction;
  ScalarFunction source;
};

VectorFunction constant_vector(const SmallVector& v);
/// t(x, n) = T n.
TractionFunction normal_traction(double T);

/// K values at every quadrature point of every cell.
struct ResistivityField {
  int points_per_cell = 0;
  std::vector<SmallMatrix> values;
  std::string descriptor;

  const SmallMatrix& at(int cell, int q) const {
    return values[static_cast<std::size_t>(cell) * points_per_cell + q];
  }
};

ResistivityField uniform_resistivity(const MixedSpaces& spaces, const SmallMatrix& K);

/// K evaluated at U (displacement laws) or div U (dilatation laws) of the
/// given iterate; a null iterate means s = 0.
ResistivityField frozen_resistivity(const MixedSpaces& spaces, const ResistivityModel& model,
                                    const FieldFunction* displacement);

struct SolutionTriple {
  FieldFunction V;
  FieldFunction U;
  FieldFunction P;

  static SolutionTriple zero(const MixedSpaces& spaces);
  static SolutionTriple from_combined(const MixedSpaces& spaces, const Eigen::VectorXd& x);
  Eigen::VectorXd combined() const;
  /// ||V||_1^2 + ||grad U||^2 + ||P||^2.
  double y_norm_sq() const { return biphasic::y_norm_sq(V, U, P); }
};

struct BlockSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  /// Block starts for V, U, P and the total size.
  std::array<int, 4> offsets{};
  NondimParams ndp;
  std::string descriptor;

  int size() const { return offsets[3]; }
  /// Copy of block (row field, column field), fields indexed V=0, U=1, P=2.
  Eigen::SparseMatrix<double> block(int row, int col) const;
};

/// Throws LossOfPositivity if a quadrature-point K is not SPD.
BlockSystem assemble(const MixedSpaces& spaces, const NondimParams& ndp,
                     const ResistivityField& resistivity, const ProblemData& data);

/// Direct quadrature evaluation of the energy pairing <H(X), X>, data
/// terms included with negative sign.
double energy_pairing(const MixedSpaces& spaces, const SolutionTriple& x, const NondimParams& ndp,
                      const ResistivityField& resistivity, const ProblemData& data);

/// ||A x - b|| / max(1, ||b||).
double weak_residual(const BlockSystem& system, const Eigen::VectorXd& x);

/// L2 norms of the data on the mesh, by quadrature.
DataNorms data_norms(const MixedSpaces& spaces, const ProblemData& data, double a0);

/// Pointwise difference of two data sets (defaults resolved with a0).
ProblemData data_difference(const ProblemData& d1, const ProblemData& d2, double a0);

}  // namespace biphasic
