#pragma once

// Lagrange P1/P2 spaces on simplicial meshes, affine cell geometry,
// interpolation and discrete norms.

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "biphasic/mesh.hpp"
#include "biphasic/quadrature.hpp"
#include "biphasic/types.hpp"

namespace biphasic {

enum class Family { P1, P2 };

int degree(Family family);

/// Affine map x = x0 + J xi from the reference simplex to cell c.
struct CellGeometry {
  SmallVector x0;
  SmallMatrix J;
  SmallMatrix invJ;
  double detJ = 0.0;
  double volume = 0.0;

  SmallVector map(const SmallVector& xi) const { return x0 + J * xi; }
  SmallVector pullback(const SmallVector& x) const { return invJ * (x - x0); }
};

CellGeometry cell_geometry(const Mesh& mesh, int c);

/// Shape functions on the reference cell. Local node order: vertices, then
/// edges in Mesh::local_edges order. `grads` rows are reference gradients.
void reference_shape(Family family, int dim, const SmallVector& xi, Eigen::VectorXd& values,
                     Eigen::MatrixXd& grads);

/// Shape values and reference gradients at every point of a rule.
struct Tabulation {
  std::vector<Eigen::VectorXd> values;
  std::vector<Eigen::MatrixXd> grads;
};
Tabulation tabulate(Family family, int dim, const QuadratureRule& rule);

class FunctionSpace {
 public:
  FunctionSpace(std::shared_ptr<const Mesh> mesh, Family family, int value_dim, bool constrained);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  Family family() const { return family_; }
  int degree() const { return biphasic::degree(family_); }
  int value_dim() const { return value_dim_; }
  bool constrained() const { return constrained_; }

  int num_nodes() const { return static_cast<int>(node_constrained_.size()); }
  int num_dofs() const { return num_dofs_; }
  int nodes_per_cell() const { return nodes_per_cell_; }
  int dofs_per_cell() const { return nodes_per_cell_ * value_dim_; }

  /// Global node indices of cell c: vertex v -> v, edge e -> num_vertices + e.
  void cell_nodes(int c, std::vector<int>& nodes) const;
  /// Global dofs of cell c, node-major with interleaved components; -1 for
  /// eliminated dofs.
  void cell_dofs(int c, std::vector<int>& dofs) const;
  int node_dof(int node, int component) const { return node_dof_[node * value_dim_ + component]; }
  bool node_constrained(int node) const { return node_constrained_[node]; }
  SmallVector node_position(int node) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  Family family_;
  int value_dim_;
  bool constrained_;
  int nodes_per_cell_ = 0;
  int num_dofs_ = 0;
  std::vector<bool> node_constrained_;
  std::vector<int> node_dof_;
};

using SpacePtr = std::shared_ptr<const FunctionSpace>;

SpacePtr build_space(std::shared_ptr<const Mesh> mesh, Family family, int value_dim,
                     bool constrained);

struct FieldFunction {
  SpacePtr space;
  Eigen::VectorXd coefficients;

  FieldFunction() = default;
  explicit FieldFunction(SpacePtr s);
  FieldFunction(SpacePtr s, Eigen::VectorXd coeffs);

  /// Coefficients of cell c in cell_dofs order; eliminated dofs read as 0.
  Eigen::VectorXd local(int c) const;
  SmallVector value_at(int c, const SmallVector& xi) const;
  /// Row i holds the gradient of component i.
  SmallMatrix gradient_at(int c, const SmallVector& xi) const;
};

FieldFunction interpolate(SpacePtr space, const VectorFunction& f);
FieldFunction interpolate(SpacePtr space, const ScalarFunction& f);

/// D(u) = (grad u + grad u^T) / 2 at reference point xi of cell c.
SmallMatrix symmetric_gradient_at(const FieldFunction& u, int cell, const SmallVector& xi);

double l2_norm(const FieldFunction& u);
double grad_l2(const FieldFunction& u);
double h1_norm(const FieldFunction& u);
double div_l2(const FieldFunction& u);

/// ||V||_1^2 + ||grad U||^2 + ||P||^2.
double y_norm_sq(const FieldFunction& V, const FieldFunction& U, const FieldFunction& P);

/// Errors against analytic fields, integrated with a rule of degree
/// 2p + 4 to keep quadrature error below the discretisation error.
double l2_error(const FieldFunction& u, const VectorFunction& exact);
double h1_error(const FieldFunction& u, const VectorFunction& exact, const MatrixFunction& exact_grad);

}  // namespace biphasic
