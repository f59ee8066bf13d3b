#include "biphasic/fem.hpp"

#include <cmath>

#include <Eigen/LU>

#include "biphasic/errors.hpp"

namespace biphasic {

int degree(Family family) { return family == Family::P1 ? 1 : 2; }

CellGeometry cell_geometry(const Mesh& mesh, int c) {
  const int d = mesh.dim();
  auto v = mesh.cell(c);
  CellGeometry g;
  g.x0 = mesh.vertex(v[0]);
  g.J.resize(d, d);
  for (int k = 0; k < d; ++k) g.J.col(k) = mesh.vertex(v[k + 1]) - g.x0;
  g.detJ = g.J.determinant();
  g.invJ = g.J.inverse();
  g.volume = std::abs(g.detJ) / (d == 2 ? 2.0 : 6.0);
  return g;
}

void reference_shape(Family family, int dim, const SmallVector& xi, Eigen::VectorXd& values,
                     Eigen::MatrixXd& grads) {
  const int nv = dim + 1;
  Eigen::VectorXd lam(nv);
  Eigen::MatrixXd dlam = Eigen::MatrixXd::Zero(nv, dim);
  lam(0) = 1.0 - xi.sum();
  dlam.row(0).setConstant(-1.0);
  for (int k = 0; k < dim; ++k) {
    lam(k + 1) = xi(k);
    dlam(k + 1, k) = 1.0;
  }
  if (family == Family::P1) {
    values = lam;
    grads = dlam;
    return;
  }
  const auto edges = Mesh::local_edges(dim);
  const int nb = nv + static_cast<int>(edges.size());
  values.resize(nb);
  grads.resize(nb, dim);
  for (int a = 0; a < nv; ++a) {
    values(a) = lam(a) * (2.0 * lam(a) - 1.0);
    grads.row(a) = (4.0 * lam(a) - 1.0) * dlam.row(a);
  }
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    const int i = edges[e][0], j = edges[e][1];
    values(nv + e) = 4.0 * lam(i) * lam(j);
    grads.row(nv + e) = 4.0 * (lam(j) * dlam.row(i) + lam(i) * dlam.row(j));
  }
}

Tabulation tabulate(Family family, int dim, const QuadratureRule& rule) {
  Tabulation t;
  t.values.resize(rule.size());
  t.grads.resize(rule.size());
  for (int q = 0; q < rule.size(); ++q) reference_shape(family, dim, rule.points[q], t.values[q], t.grads[q]);
  return t;
}

FunctionSpace::FunctionSpace(std::shared_ptr<const Mesh> mesh, Family family, int value_dim,
                             bool constrained)
    : mesh_(std::move(mesh)), family_(family), value_dim_(value_dim), constrained_(constrained) {
  const Mesh& m = *mesh_;
  if (value_dim_ != 1 && value_dim_ != m.dim()) {
    throw Error(ErrorCode::UnsupportedElement, "value dimension must be 1 or the mesh dimension");
  }
  const int nv = m.num_vertices();
  const int nn = family_ == Family::P1 ? nv : nv + m.num_edges();
  nodes_per_cell_ = m.dim() + 1 + (family_ == Family::P2 ? static_cast<int>(Mesh::local_edges(m.dim()).size()) : 0);
  node_constrained_.assign(nn, false);
  if (constrained_) {
    for (int f = 0; f < m.num_facets(); ++f) {
      auto fv = m.facet(f);
      for (int v : fv) node_constrained_[v] = true;
      if (family_ == Family::P2) {
        for (std::size_t a = 0; a < fv.size(); ++a) {
          for (std::size_t b = a + 1; b < fv.size(); ++b) {
            const int e = m.find_edge(fv[a], fv[b]);
            if (e >= 0) node_constrained_[nv + e] = true;
          }
        }
      }
    }
  }
  node_dof_.assign(static_cast<std::size_t>(nn) * value_dim_, -1);
  for (int n = 0; n < nn; ++n) {
    if (node_constrained_[n]) continue;
    for (int k = 0; k < value_dim_; ++k) node_dof_[n * value_dim_ + k] = num_dofs_++;
  }
}

void FunctionSpace::cell_nodes(int c, std::vector<int>& nodes) const {
  nodes.clear();
  for (int v : mesh_->cell(c)) nodes.push_back(v);
  if (family_ == Family::P2) {
    for (int e : mesh_->cell_edges(c)) nodes.push_back(mesh_->num_vertices() + e);
  }
}

void FunctionSpace::cell_dofs(int c, std::vector<int>& dofs) const {
  std::vector<int> nodes;
  cell_nodes(c, nodes);
  dofs.clear();
  for (int n : nodes) {
    for (int k = 0; k < value_dim_; ++k) dofs.push_back(node_dof(n, k));
  }
}

SmallVector FunctionSpace::node_position(int node) const {
  const int nv = mesh_->num_vertices();
  if (node < nv) return mesh_->vertex(node);
  const auto& e = mesh_->edge(node - nv);
  return 0.5 * (mesh_->vertex(e[0]) + mesh_->vertex(e[1]));
}

SpacePtr build_space(std::shared_ptr<const Mesh> mesh, Family family, int value_dim,
                     bool constrained) {
  return std::make_shared<const FunctionSpace>(std::move(mesh), family, value_dim, constrained);
}

FieldFunction::FieldFunction(SpacePtr s) : space(std::move(s)) {
  coefficients = Eigen::VectorXd::Zero(space->num_dofs());
}

FieldFunction::FieldFunction(SpacePtr s, Eigen::VectorXd coeffs)
    : space(std::move(s)), coefficients(std::move(coeffs)) {
  if (coefficients.size() != space->num_dofs()) {
    throw Error(ErrorCode::SpaceMismatch, "coefficient vector length differs from space dof count");
  }
}

Eigen::VectorXd FieldFunction::local(int c) const {
  std::vector<int> dofs;
  space->cell_dofs(c, dofs);
  Eigen::VectorXd out(dofs.size());
  for (std::size_t i = 0; i < dofs.size(); ++i) out(i) = dofs[i] >= 0 ? coefficients(dofs[i]) : 0.0;
  return out;
}

namespace {

/// Values (value_dim) and gradient rows from local coefficients.
void evaluate_local(const FunctionSpace& s, const CellGeometry& g, const Eigen::VectorXd& loc,
                    const Eigen::VectorXd& phi, const Eigen::MatrixXd& dphi_ref,
                    SmallVector* value, SmallMatrix* grad) {
  const int vd = s.value_dim(), nb = static_cast<int>(phi.size()), d = s.mesh().dim();
  if (value) {
    value->setZero(vd);
    for (int a = 0; a < nb; ++a) {
      for (int k = 0; k < vd; ++k) (*value)(k) += loc(a * vd + k) * phi(a);
    }
  }
  if (grad) {
    const Eigen::MatrixXd dphi = dphi_ref * g.invJ;
    grad->setZero(vd, d);
    for (int a = 0; a < nb; ++a) {
      for (int k = 0; k < vd; ++k) grad->row(k) += loc(a * vd + k) * dphi.row(a);
    }
  }
}

/// Integrates integrand(value, grad, x) over the mesh with a rule of the
/// given degree.
template <typename F>
double integrate(const FieldFunction& u, int quad_degree, F&& integrand) {
  const FunctionSpace& s = *u.space;
  const Mesh& m = s.mesh();
  const QuadratureRule rule = simplex_rule(m.dim(), quad_degree);
  const Tabulation tab = tabulate(s.family(), m.dim(), rule);
  double total = 0.0;
  SmallVector val;
  SmallMatrix grad;
  for (int c = 0; c < m.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(m, c);
    const Eigen::VectorXd loc = u.local(c);
    for (int q = 0; q < rule.size(); ++q) {
      evaluate_local(s, g, loc, tab.values[q], tab.grads[q], &val, &grad);
      total += rule.weights[q] * std::abs(g.detJ) * integrand(val, grad, g.map(rule.points[q]));
    }
  }
  return total;
}

}  // namespace

SmallVector FieldFunction::value_at(int c, const SmallVector& xi) const {
  Eigen::VectorXd phi;
  Eigen::MatrixXd dphi;
  reference_shape(space->family(), space->mesh().dim(), xi, phi, dphi);
  SmallVector v;
  evaluate_local(*space, cell_geometry(space->mesh(), c), local(c), phi, dphi, &v, nullptr);
  return v;
}

SmallMatrix FieldFunction::gradient_at(int c, const SmallVector& xi) const {
  Eigen::VectorXd phi;
  Eigen::MatrixXd dphi;
  reference_shape(space->family(), space->mesh().dim(), xi, phi, dphi);
  SmallMatrix gr;
  evaluate_local(*space, cell_geometry(space->mesh(), c), local(c), phi, dphi, nullptr, &gr);
  return gr;
}

FieldFunction interpolate(SpacePtr space, const VectorFunction& f) {
  FieldFunction u(space);
  for (int n = 0; n < space->num_nodes(); ++n) {
    if (space->node_constrained(n)) continue;
    const SmallVector val = f(space->node_position(n));
    if (val.size() != space->value_dim()) {
      throw Error(ErrorCode::DimensionMismatch, "interpolated function has wrong value dimension");
    }
    for (int k = 0; k < space->value_dim(); ++k) u.coefficients(space->node_dof(n, k)) = val(k);
  }
  return u;
}

FieldFunction interpolate(SpacePtr space, const ScalarFunction& f) {
  if (space->value_dim() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "scalar function interpolated into a vector space");
  }
  return interpolate(std::move(space), VectorFunction([&f](const SmallVector& x) {
                       SmallVector v(1);
                       v(0) = f(x);
                       return v;
                     }));
}

SmallMatrix symmetric_gradient_at(const FieldFunction& u, int cell, const SmallVector& xi) {
  if (u.space->value_dim() != u.space->mesh().dim()) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric gradient needs a vector field");
  }
  const SmallMatrix g = u.gradient_at(cell, xi);
  return 0.5 * (g + g.transpose());
}

double l2_norm(const FieldFunction& u) {
  return std::sqrt(integrate(u, 2 * u.space->degree(),
                             [](const SmallVector& v, const SmallMatrix&, const SmallVector&) {
                               return v.squaredNorm();
                             }));
}

double grad_l2(const FieldFunction& u) {
  return std::sqrt(integrate(u, 2 * u.space->degree() - 2,
                             [](const SmallVector&, const SmallMatrix& g, const SmallVector&) {
                               return g.squaredNorm();
                             }));
}

double h1_norm(const FieldFunction& u) {
  const double l2 = l2_norm(u), g = grad_l2(u);
  return std::sqrt(l2 * l2 + g * g);
}

double div_l2(const FieldFunction& u) {
  if (u.space->value_dim() != u.space->mesh().dim()) {
    throw Error(ErrorCode::DimensionMismatch, "divergence needs a vector field");
  }
  return std::sqrt(integrate(u, 2 * u.space->degree() - 2,
                             [](const SmallVector&, const SmallMatrix& g, const SmallVector&) {
                               const double dv = g.trace();
                               return dv * dv;
                             }));
}

double y_norm_sq(const FieldFunction& V, const FieldFunction& U, const FieldFunction& P) {
  const double v1 = h1_norm(V), gu = grad_l2(U), p = l2_norm(P);
  return v1 * v1 + gu * gu + p * p;
}

double l2_error(const FieldFunction& u, const VectorFunction& exact) {
  return std::sqrt(integrate(u, 2 * u.space->degree() + 4,
                             [&](const SmallVector& v, const SmallMatrix&, const SmallVector& x) {
                               return (v - exact(x)).squaredNorm();
                             }));
}

double h1_error(const FieldFunction& u, const VectorFunction& exact, const MatrixFunction& exact_grad) {
  return std::sqrt(integrate(u, 2 * u.space->degree() + 4,
                             [&](const SmallVector& v, const SmallMatrix& g, const SmallVector& x) {
                               return (v - exact(x)).squaredNorm() + (g - exact_grad(x)).squaredNorm();
                             }));
}

}  // namespace biphasic
