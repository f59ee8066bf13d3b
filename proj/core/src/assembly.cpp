#include "biphasic/assembly.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/SparseCore>

#include "biphasic/errors.hpp"

namespace biphasic {

MixedSpaces make_spaces(std::shared_ptr<const Mesh> mesh, Pairing pairing) {
  const int d = mesh->dim();
  const Family vel = pairing == Pairing::TaylorHood ? Family::P2 : Family::P1;
  MixedSpaces s;
  s.velocity = build_space(mesh, vel, d, false);
  s.displacement = build_space(mesh, vel, d, true);
  s.pressure = build_space(mesh, Family::P1, 1, false);
  s.quad_degree = 2 * degree(vel);
  return s;
}

VectorFunction constant_vector(const SmallVector& v) {
  return [v](const SmallVector&) { return v; };
}

TractionFunction normal_traction(double T) {
  return [T](const SmallVector&, const SmallVector& n) { return SmallVector(T * n); };
}

namespace {

double source_at(const ProblemData& data, double a0, const SmallVector& x) {
  return data.source ? data.source(x) : a0;
}

/// Physical shape gradients (nb x d).
Eigen::MatrixXd physical_grads(const Eigen::MatrixXd& ref, const CellGeometry& g) {
  return ref * g.invJ;
}

/// Cell-local evaluation context for all three spaces at a rule's points.
struct CellTables {
  QuadratureRule rule;
  Tabulation vel, disp, pres;

  explicit CellTables(const MixedSpaces& s) : rule(simplex_rule(s.mesh().dim(), s.quad_degree)) {
    const int d = s.mesh().dim();
    vel = tabulate(s.velocity->family(), d, rule);
    disp = tabulate(s.displacement->family(), d, rule);
    pres = tabulate(s.pressure->family(), d, rule);
  }
};

/// Visits the boundary quadrature points: f(cell, geometry, xi, x, n, w).
template <typename F>
void for_each_boundary_point(const Mesh& m, int degree, F&& f) {
  const int d = m.dim();
  const QuadratureRule frule = simplex_rule(d - 1, degree);
  const double ref_measure = d == 2 ? 1.0 : 0.5;
  for (int fa = 0; fa < m.num_facets(); ++fa) {
    const int c = m.facet_cell(fa);
    if (c < 0) continue;
    const CellGeometry g = cell_geometry(m, c);
    auto fv = m.facet(fa);
    const SmallVector n = m.facet_normal(fa);
    const double scale = m.facet_measure(fa) / ref_measure;
    for (int q = 0; q < frule.size(); ++q) {
      SmallVector x = m.vertex(fv[0]);
      for (int k = 0; k < d - 1; ++k) x += frule.points[q](k) * (m.vertex(fv[k + 1]) - m.vertex(fv[0]));
      f(c, g, g.pullback(x), x, n, frule.weights[q] * scale);
    }
  }
}

void check_spd(const SmallMatrix& K, int c, int q) {
  Eigen::LLT<SmallMatrix> llt(K);
  if (llt.info() != Eigen::Success || (K - K.transpose()).norm() > 1e-12 * K.norm()) {
    throw Error(ErrorCode::LossOfPositivity,
                "resistivity not SPD at cell " + std::to_string(c) + ", point " + std::to_string(q));
  }
}

void check_field(const MixedSpaces& s, const ResistivityField& rf, int npts) {
  if (rf.points_per_cell != npts ||
      rf.values.size() != static_cast<std::size_t>(s.mesh().num_cells()) * npts) {
    throw Error(ErrorCode::SpaceMismatch, "resistivity field does not match the quadrature layout");
  }
}

}  // namespace

ResistivityField uniform_resistivity(const MixedSpaces& spaces, const SmallMatrix& K) {
  const QuadratureRule rule = simplex_rule(spaces.mesh().dim(), spaces.quad_degree);
  ResistivityField rf;
  rf.points_per_cell = rule.size();
  rf.values.assign(static_cast<std::size_t>(spaces.mesh().num_cells()) * rule.size(), K);
  rf.descriptor = "uniform";
  return rf;
}

ResistivityField frozen_resistivity(const MixedSpaces& spaces, const ResistivityModel& model,
                                    const FieldFunction* displacement) {
  const Mesh& m = spaces.mesh();
  const int d = m.dim();
  if (model.dim() != d) throw Error(ErrorCode::DimensionMismatch, "resistivity dimension differs from mesh");
  const CellTables tab(spaces);
  const int nq = tab.rule.size();
  ResistivityField rf;
  rf.points_per_cell = nq;
  rf.values.reserve(static_cast<std::size_t>(m.num_cells()) * nq);
  rf.descriptor = model.name() + (displacement ? " frozen at iterate" : " at s = 0");
  const Argument arg = model.argument();
  const int vd = d;
  for (int c = 0; c < m.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(m, c);
    Eigen::VectorXd loc;
    if (displacement) loc = displacement->local(c);
    for (int q = 0; q < nq; ++q) {
      SmallVector s = SmallVector::Zero(arg == Argument::Dilatation ? 1 : d);
      if (displacement) {
        const Eigen::VectorXd& phi = tab.disp.values[q];
        if (arg == Argument::Dilatation) {
          const Eigen::MatrixXd G = physical_grads(tab.disp.grads[q], g);
          double dv = 0.0;
          for (int a = 0; a < phi.size(); ++a) {
            for (int k = 0; k < vd; ++k) dv += loc(a * vd + k) * G(a, k);
          }
          s(0) = dv;
        } else if (arg == Argument::Displacement) {
          for (int a = 0; a < phi.size(); ++a) {
            for (int k = 0; k < vd; ++k) s(k) += loc(a * vd + k) * phi(a);
          }
        }
      }
      rf.values.push_back(model.eval(s));
    }
  }
  return rf;
}

SolutionTriple SolutionTriple::zero(const MixedSpaces& s) {
  return {FieldFunction(s.velocity), FieldFunction(s.displacement), FieldFunction(s.pressure)};
}

SolutionTriple SolutionTriple::from_combined(const MixedSpaces& s, const Eigen::VectorXd& x) {
  const int nv = s.velocity->num_dofs(), nu = s.displacement->num_dofs(), np = s.pressure->num_dofs();
  if (x.size() != nv + nu + np) throw Error(ErrorCode::SpaceMismatch, "solution length differs from system size");
  return {FieldFunction(s.velocity, x.segment(0, nv)), FieldFunction(s.displacement, x.segment(nv, nu)),
          FieldFunction(s.pressure, x.segment(nv + nu, np))};
}

Eigen::VectorXd SolutionTriple::combined() const {
  Eigen::VectorXd x(V.coefficients.size() + U.coefficients.size() + P.coefficients.size());
  x << V.coefficients, U.coefficients, P.coefficients;
  return x;
}

Eigen::SparseMatrix<double> BlockSystem::block(int row, int col) const {
  const int r0 = offsets[row], r1 = offsets[row + 1], c0 = offsets[col], c1 = offsets[col + 1];
  return matrix.block(r0, c0, r1 - r0, c1 - c0);
}

BlockSystem assemble(const MixedSpaces& spaces, const NondimParams& ndp,
                     const ResistivityField& resistivity, const ProblemData& data) {
  const Mesh& m = spaces.mesh();
  const int d = m.dim();
  const CellTables tab(spaces);
  const int nq = tab.rule.size();
  check_field(spaces, resistivity, nq);

  BlockSystem sys;
  sys.ndp = ndp;
  sys.descriptor = resistivity.descriptor;
  const int nV = spaces.velocity->num_dofs(), nU = spaces.displacement->num_dofs(),
            nP = spaces.pressure->num_dofs();
  sys.offsets = {0, nV, nV + nU, nV + nU + nP};
  sys.rhs = Eigen::VectorXd::Zero(sys.size());

  const int bv = spaces.velocity->nodes_per_cell(), bu = spaces.displacement->nodes_per_cell(),
            bp = spaces.pressure->nodes_per_cell();
  const int lv = bv * d, lu = bu * d, lp = bp;
  const int lt = lv + lu + lp;
  const double inv_da = 1.0 / ndp.Da;

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(m.num_cells()) * lt * lt);
  std::vector<int> dv, du, dp, gdofs(lt);
  Eigen::MatrixXd Ae(lt, lt);
  Eigen::VectorXd be(lt);

  for (int c = 0; c < m.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(m, c);
    spaces.velocity->cell_dofs(c, dv);
    spaces.displacement->cell_dofs(c, du);
    spaces.pressure->cell_dofs(c, dp);
    for (int i = 0; i < lv; ++i) gdofs[i] = dv[i] < 0 ? -1 : dv[i];
    for (int i = 0; i < lu; ++i) gdofs[lv + i] = du[i] < 0 ? -1 : nV + du[i];
    for (int i = 0; i < lp; ++i) gdofs[lv + lu + i] = dp[i] < 0 ? -1 : nV + nU + dp[i];
    Ae.setZero();
    be.setZero();

    for (int q = 0; q < nq; ++q) {
      const double w = tab.rule.weights[q] * std::abs(g.detJ);
      const SmallVector x = g.map(tab.rule.points[q]);
      const SmallMatrix& K = resistivity.at(c, q);
      check_spd(K, c, q);
      const Eigen::VectorXd& Nv = tab.vel.values[q];
      const Eigen::VectorXd& Nu = tab.disp.values[q];
      const Eigen::VectorXd& Np = tab.pres.values[q];
      const Eigen::MatrixXd Gv = physical_grads(tab.vel.grads[q], g);
      const Eigen::MatrixXd Gu = physical_grads(tab.disp.grads[q], g);

      // Velocity rows.
      for (int a = 0; a < bv; ++a) {
        for (int i = 0; i < d; ++i) {
          const int r = a * d + i;
          for (int b = 0; b < bv; ++b) {
            const double gg = Gv.row(a).dot(Gv.row(b));
            for (int j = 0; j < d; ++j) {
              double v = Gv(a, j) * Gv(b, i) + ndp.lambda * Gv(a, i) * Gv(b, j) +
                         inv_da * K(i, j) * Nv(a) * Nv(b);
              if (i == j) v += gg;
              Ae(r, b * d + j) += w * v;
            }
          }
          for (int b = 0; b < bp; ++b) Ae(r, lv + lu + b) -= w * ndp.phi_f * Np(b) * Gv(a, i);
        }
      }
      // Displacement rows.
      for (int a = 0; a < bu; ++a) {
        for (int i = 0; i < d; ++i) {
          const int r = lv + a * d + i;
          for (int b = 0; b < bu; ++b) {
            const double gg = Gu.row(a).dot(Gu.row(b));
            for (int j = 0; j < d; ++j) {
              double v = ndp.alpha1 * Gu(a, j) * Gu(b, i) + ndp.alpha2 * Gu(a, i) * Gu(b, j);
              if (i == j) v += ndp.alpha1 * gg;
              Ae(r, lv + b * d + j) += w * v;
            }
          }
          for (int b = 0; b < bv; ++b) {
            for (int j = 0; j < d; ++j) Ae(r, b * d + j) -= w * inv_da * K(i, j) * Nu(a) * Nv(b);
          }
          for (int b = 0; b < bp; ++b) Ae(r, lv + lu + b) -= w * ndp.phi_s * Np(b) * Gu(a, i);
        }
      }
      // Pressure rows.
      for (int a = 0; a < bp; ++a) {
        const int r = lv + lu + a;
        for (int b = 0; b < bv; ++b) {
          for (int j = 0; j < d; ++j) Ae(r, b * d + j) += w * ndp.phi_f * Gv(b, j) * Np(a);
        }
        for (int b = 0; b < bp; ++b) Ae(r, lv + lu + b) += w * ndp.a0 * Np(a) * Np(b);
      }

      // Loads.
      if (data.b_f) {
        const SmallVector f = data.b_f(x);
        for (int a = 0; a < bv; ++a) {
          for (int i = 0; i < d; ++i) be(a * d + i) += w * f(i) * Nv(a);
        }
      }
      if (data.b_s) {
        const SmallVector f = data.b_s(x);
        for (int a = 0; a < bu; ++a) {
          for (int i = 0; i < d; ++i) be(lv + a * d + i) += w * f(i) * Nu(a);
        }
      }
      const double s = source_at(data, ndp.a0, x);
      for (int a = 0; a < bp; ++a) be(lv + lu + a) += w * s * Np(a);
    }

    for (int i = 0; i < lt; ++i) {
      if (gdofs[i] < 0) continue;
      sys.rhs(gdofs[i]) += be(i);
      for (int j = 0; j < lt; ++j) {
        if (gdofs[j] >= 0 && Ae(i, j) != 0.0) triplets.emplace_back(gdofs[i], gdofs[j], Ae(i, j));
      }
    }
  }

  if (data.traction) {
    const int deg = 2 * spaces.velocity->degree() + 2;
    std::vector<int> dofs;
    Eigen::VectorXd phi;
    Eigen::MatrixXd dphi;
    for_each_boundary_point(m, deg, [&](int c, const CellGeometry&, const SmallVector& xi,
                                        const SmallVector& x, const SmallVector& n, double w) {
      const SmallVector t = data.traction(x, n);
      reference_shape(spaces.velocity->family(), d, xi, phi, dphi);
      spaces.velocity->cell_dofs(c, dofs);
      for (int a = 0; a < bv; ++a) {
        for (int i = 0; i < d; ++i) {
          if (dofs[a * d + i] >= 0) sys.rhs(dofs[a * d + i]) += w * t(i) * phi(a);
        }
      }
    });
  }

  sys.matrix.resize(sys.size(), sys.size());
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix.makeCompressed();
  return sys;
}

double energy_pairing(const MixedSpaces& spaces, const SolutionTriple& x, const NondimParams& ndp,
                      const ResistivityField& resistivity, const ProblemData& data) {
  const Mesh& m = spaces.mesh();
  const QuadratureRule rule = simplex_rule(m.dim(), spaces.quad_degree);
  check_field(spaces, resistivity, rule.size());
  double total = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(m, c);
    for (int q = 0; q < rule.size(); ++q) {
      const SmallVector& xi = rule.points[q];
      const double w = rule.weights[q] * std::abs(g.detJ);
      const SmallVector pt = g.map(xi);
      const SmallVector V = x.V.value_at(c, xi), U = x.U.value_at(c, xi);
      const double P = x.P.value_at(c, xi)(0);
      const SmallMatrix gV = x.V.gradient_at(c, xi), gU = x.U.gradient_at(c, xi);
      const SmallMatrix DV = 0.5 * (gV + gV.transpose()), DU = 0.5 * (gU + gU.transpose());
      const double divV = gV.trace(), divU = gU.trace();
      const SmallMatrix& K = resistivity.at(c, q);
      const SmallVector KV = K * V;
      double e = 2.0 * DV.squaredNorm() + ndp.lambda * divV * divV + KV.dot(V) / ndp.Da +
                 2.0 * ndp.alpha1 * DU.squaredNorm() + ndp.alpha2 * divU * divU -
                 ndp.phi_f * P * divV - ndp.phi_s * P * divU - KV.dot(U) / ndp.Da +
                 ndp.phi_f * divV * P + ndp.a0 * P * P;
      if (data.b_f) e -= data.b_f(pt).dot(V);
      if (data.b_s) e -= data.b_s(pt).dot(U);
      e -= source_at(data, ndp.a0, pt) * P;
      total += w * e;
    }
  }
  if (data.traction) {
    for_each_boundary_point(m, 2 * spaces.velocity->degree() + 2,
                            [&](int c, const CellGeometry&, const SmallVector& xi, const SmallVector& pt,
                                const SmallVector& n, double w) {
                              total -= w * data.traction(pt, n).dot(x.V.value_at(c, xi));
                            });
  }
  return total;
}

double weak_residual(const BlockSystem& system, const Eigen::VectorXd& x) {
  if (x.size() != system.size()) throw Error(ErrorCode::SpaceMismatch, "solution length differs from system size");
  return (system.matrix * x - system.rhs).norm() / std::max(1.0, system.rhs.norm());
}

DataNorms data_norms(const MixedSpaces& spaces, const ProblemData& data, double a0) {
  const Mesh& m = spaces.mesh();
  const int deg = 2 * spaces.velocity->degree() + 2;
  const QuadratureRule rule = simplex_rule(m.dim(), deg);
  double bf = 0.0, bs = 0.0, s = 0.0, t = 0.0;
  for (int c = 0; c < m.num_cells(); ++c) {
    const CellGeometry g = cell_geometry(m, c);
    for (int q = 0; q < rule.size(); ++q) {
      const double w = rule.weights[q] * std::abs(g.detJ);
      const SmallVector pt = g.map(rule.points[q]);
      if (data.b_f) bf += w * data.b_f(pt).squaredNorm();
      if (data.b_s) bs += w * data.b_s(pt).squaredNorm();
      const double sv = source_at(data, a0, pt);
      s += w * sv * sv;
    }
  }
  if (data.traction) {
    for_each_boundary_point(m, deg, [&](int, const CellGeometry&, const SmallVector&, const SmallVector& pt,
                                        const SmallVector& n, double w) {
      t += w * data.traction(pt, n).squaredNorm();
    });
  }
  DataNorms dn;
  dn.norm_bf = std::sqrt(bf);
  dn.norm_bs = std::sqrt(bs);
  dn.norm_Tinf = std::sqrt(t);
  dn.norm_a0 = std::sqrt(s);
  dn.vol_Omega = m.volume();
  dn.area_boundary = m.boundary_measure();
  return dn;
}

ProblemData data_difference(const ProblemData& d1, const ProblemData& d2, double a0) {
  auto vec_diff = [](const VectorFunction& f1, const VectorFunction& f2) -> VectorFunction {
    if (!f1 && !f2) return {};
    return [f1, f2](const SmallVector& x) {
      SmallVector r = f1 ? f1(x) : f2(x) * 0.0;
      if (f2) r -= f2(x);
      return r;
    };
  };
  ProblemData out;
  out.b_f = vec_diff(d1.b_f, d2.b_f);
  out.b_s = vec_diff(d1.b_s, d2.b_s);
  if (d1.traction || d2.traction) {
    out.traction = [t1 = d1.traction, t2 = d2.traction](const SmallVector& x, const SmallVector& n) {
      SmallVector r = t1 ? t1(x, n) : t2(x, n) * 0.0;
      if (t2) r -= t2(x, n);
      return r;
    };
  }
  out.source = [s1 = d1.source, s2 = d2.source, a0](const SmallVector& x) {
    return (s1 ? s1(x) : a0) - (s2 ? s2(x) : a0);
  };
  return out;
}

}  // namespace biphasic
