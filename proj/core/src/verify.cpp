#include "biphasic/verify.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "biphasic/errors.hpp"

namespace biphasic {

namespace {

JetPoint seed_point(const SmallVector& x) {
  JetPoint p;
  for (int k = 0; k < x.size(); ++k) p.push_back(Jet::variable(x(k), k));
  return p;
}

SmallVector values(const std::vector<Jet>& f) {
  SmallVector v(static_cast<int>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) v(static_cast<int>(i)) = f[i].v;
  return v;
}

SmallMatrix jacobian(const std::vector<Jet>& f, int d) {
  SmallMatrix g(static_cast<int>(f.size()), d);
  for (std::size_t i = 0; i < f.size(); ++i) g.row(static_cast<int>(i)) = f[i].g.head(d).transpose();
  return g;
}

double divergence(const std::vector<Jet>& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i].g(static_cast<int>(i));
  return s;
}

SmallVector laplacian(const std::vector<Jet>& f, int d) {
  SmallVector l(d);
  for (int i = 0; i < d; ++i) l(i) = f[i].h.topLeftCorner(d, d).trace();
  return l;
}

SmallVector grad_div(const std::vector<Jet>& f, int d) {
  SmallVector g = SmallVector::Zero(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i) += f[j].h(i, j);
  }
  return g;
}

/// Resistivity argument of the exact displacement at x.
SmallMatrix exact_resistivity(const ResistivityModel& model, const std::vector<Jet>& U, int d) {
  switch (model.argument()) {
    case Argument::Displacement:
      return model.eval(values(U));
    case Argument::Dilatation:
      return model.eval_dilatation(divergence(U));
    case Argument::Any:
      break;
  }
  return model.eval(SmallVector::Zero(d));
}

}  // namespace

MmsProblem build_mms(int dim, const ExactFields& exact, const NondimParams& ndp,
                     const ResistivityModel& model, const Mesh& probe) {
  if (probe.dim() != dim || model.dim() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "manufactured problem dimension mismatch");
  }
  // Clamped displacement: probe the boundary at facet vertices and midpoints.
  for (int f = 0; f < probe.num_facets(); ++f) {
    auto fv = probe.facet(f);
    SmallVector mid = SmallVector::Zero(dim);
    for (int v : fv) {
      mid += probe.vertex(v) / static_cast<double>(fv.size());
      for (int w : fv) {
        const SmallVector x = 0.5 * (probe.vertex(v) + probe.vertex(w));
        if (values(exact.U(seed_point(x))).norm() > 1e-12) {
          throw Error(ErrorCode::BoundaryViolation, "exact displacement is nonzero on the boundary");
        }
      }
    }
    if (values(exact.U(seed_point(mid))).norm() > 1e-12) {
      throw Error(ErrorCode::BoundaryViolation, "exact displacement is nonzero on the boundary");
    }
  }

  const int d = dim;
  MmsProblem mms{d,
                 [exact](const SmallVector& x) { return values(exact.V(seed_point(x))); },
                 [exact](const SmallVector& x) { return values(exact.U(seed_point(x))); },
                 [exact, d](const SmallVector& x) { return jacobian(exact.V(seed_point(x)), d); },
                 [exact, d](const SmallVector& x) { return jacobian(exact.U(seed_point(x)), d); },
                 [exact](const SmallVector& x) { return exact.P(seed_point(x)).v; },
                 {},
                 ndp,
                 model};

  mms.data.b_f = [exact, ndp, model, d](const SmallVector& x) {
    const JetPoint p = seed_point(x);
    const auto V = exact.V(p);
    const auto U = exact.U(p);
    const Jet P = exact.P(p);
    const SmallMatrix K = exact_resistivity(model, U, d);
    const SmallVector div_stress =
        laplacian(V, d) + (1.0 + ndp.lambda) * grad_div(V, d) - ndp.phi_f * SmallVector(P.g.head(d));
    return SmallVector(-div_stress + K * values(V) / ndp.Da);
  };
  mms.data.b_s = [exact, ndp, model, d](const SmallVector& x) {
    const JetPoint p = seed_point(x);
    const auto V = exact.V(p);
    const auto U = exact.U(p);
    const Jet P = exact.P(p);
    const SmallMatrix K = exact_resistivity(model, U, d);
    const SmallVector div_stress = ndp.alpha1 * (laplacian(U, d) + grad_div(U, d)) +
                                   ndp.alpha2 * grad_div(U, d) - ndp.phi_s * SmallVector(P.g.head(d));
    return SmallVector(-div_stress - K * values(V) / ndp.Da);
  };
  mms.data.source = [exact, ndp](const SmallVector& x) {
    const JetPoint p = seed_point(x);
    return ndp.phi_f * divergence(exact.V(p)) + ndp.a0 * exact.P(p).v;
  };
  mms.data.traction = [exact, ndp, d](const SmallVector& x, const SmallVector& n) {
    const JetPoint p = seed_point(x);
    const auto V = exact.V(p);
    const SmallMatrix G = jacobian(V, d);
    const SmallMatrix I = SmallMatrix::Identity(d, d);
    const SmallMatrix sigma = G + G.transpose() + (ndp.lambda * divergence(V) - ndp.phi_f * exact.P(p).v) * I;
    return SmallVector(sigma * n);
  };
  return mms;
}

ExactFields unit_square_mms_fields() {
  ExactFields f;
  f.V = [](const JetPoint& x) {
    const Jet sx = sin(M_PI * x[0]), cx = cos(M_PI * x[0]);
    const Jet sy = sin(M_PI * x[1]), cy = cos(M_PI * x[1]);
    return std::vector<Jet>{sx * cy, -(cx * sy)};
  };
  f.U = [](const JetPoint& x) {
    const Jet bubble = x[0] * (1.0 - x[0]) * x[1] * (1.0 - x[1]);
    return std::vector<Jet>{bubble, bubble};
  };
  f.P = [](const JetPoint& x) { return cos(M_PI * x[0]) * cos(M_PI * x[1]); };
  return f;
}

std::string RateTable::to_csv() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "n,h,v_l2,v_h1,u_h1,p_l2,picard_iterations\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.h << ',' << r.v_l2 << ',' << r.v_h1 << ',' << r.u_h1 << ',' << r.p_l2 << ','
       << r.picard_iterations << '\n';
  }
  os << "rate,," << rate_v_l2 << ',' << rate_v_h1 << ',' << rate_u_h1 << ',' << rate_p_l2 << ",\n";
  return os.str();
}

double fitted_rate(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  if (n < 2 || err.size() != n) throw Error(ErrorCode::InvalidParameter, "rate fit needs >= 2 matching points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(h[i]) / n;
    my += std::log(err[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(err[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

RateTable convergence_study(const MmsProblem& mms, const std::vector<int>& levels, Pairing pairing,
                            const PicardOptions& picard) {
  if (levels.size() < 3) throw Error(ErrorCode::InvalidParameter, "convergence study needs at least 3 levels");
  if (mms.dim != 2) throw Error(ErrorCode::DimensionMismatch, "convergence study runs on the unit square");
  RateTable table;
  std::vector<double> hs, ev0, ev1, eu1, ep0;
  const VectorFunction P_vec = [&mms](const SmallVector& x) {
    SmallVector v(1);
    v(0) = mms.P(x);
    return v;
  };
  for (int n : levels) {
    auto mesh = std::make_shared<const Mesh>(generate_unit_square(n));
    const MixedSpaces spaces = make_spaces(mesh, pairing);
    RateRow row;
    row.n = n;
    row.h = 1.0 / n;
    SolutionTriple sol = SolutionTriple::zero(spaces);
    if (mms.model.iterate_independent()) {
      const BlockSystem sys = assemble(spaces, mms.ndp, frozen_resistivity(spaces, mms.model, nullptr), mms.data);
      sol = solve_linear(spaces, sys, picard.linear);
    } else {
      PicardResult pr = mms.model.argument() == Argument::Dilatation
                            ? picard_case_b(spaces, mms.ndp, mms.data, mms.model, picard)
                            : picard_case_a(spaces, mms.ndp, mms.data, mms.model, picard);
      if (!pr.report.converged) {
        throw Error(ErrorCode::MaxIterationsExceeded, "Picard did not converge at n = " + std::to_string(n));
      }
      row.picard_iterations = pr.report.iterations;
      sol = std::move(pr.solution);
    }
    row.v_l2 = l2_error(sol.V, mms.V);
    row.v_h1 = h1_error(sol.V, mms.V, mms.grad_V);
    row.u_h1 = h1_error(sol.U, mms.U, mms.grad_U);
    row.p_l2 = l2_error(sol.P, P_vec);
    table.rows.push_back(row);
    hs.push_back(row.h);
    ev0.push_back(row.v_l2);
    ev1.push_back(row.v_h1);
    eu1.push_back(row.u_h1);
    ep0.push_back(row.p_l2);
  }
  table.rate_v_l2 = fitted_rate(hs, ev0);
  table.rate_v_h1 = fitted_rate(hs, ev1);
  table.rate_u_h1 = fitted_rate(hs, eu1);
  table.rate_p_l2 = fitted_rate(hs, ep0);
  return table;
}

AuditReport apriori_audit(const SolutionTriple& solution, const NondimParams& ndp,
                          const FunctionalConstants& fc, const DataNorms& dn, double k1, double k2) {
  const CoercivityConstants cc = coercivity_constants(ndp, fc, dn, k1, k2);
  if (!cc.coercive) {
    throw Error(ErrorCode::NonPositiveAlpha3, "alpha3 = " + std::to_string(cc.alpha3) + " <= 0");
  }
  AuditReport rep;
  rep.lhs = solution.y_norm_sq();
  const double r = cc.alpha4 / cc.alpha3;
  rep.rhs = r * r;
  rep.holds = rep.lhs <= rep.rhs;
  return rep;
}

namespace {

SolutionTriple solve_case(const MixedSpaces& spaces, const ProblemData& data, const NondimParams& ndp,
                          const ResistivityModel& model, DependenceCase which, const PicardOptions& picard) {
  switch (which) {
    case DependenceCase::Frozen: {
      const BlockSystem sys = assemble(spaces, ndp, frozen_resistivity(spaces, model, nullptr), data);
      return solve_linear(spaces, sys, picard.linear);
    }
    case DependenceCase::CaseA:
      return picard_case_a(spaces, ndp, data, model, picard).solution;
    case DependenceCase::CaseB:
      return picard_case_b(spaces, ndp, data, model, picard).solution;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown dependence case");
}

}  // namespace

DependenceReport dependence_study(const MixedSpaces& spaces, const ProblemData& data1,
                                  const ProblemData& data2, const NondimParams& ndp,
                                  const FunctionalConstants& fc, const ResistivityModel& model,
                                  const ModelConstants& constants, DependenceCase which,
                                  const PicardOptions& picard) {
  const SolutionTriple s1 = solve_case(spaces, data1, ndp, model, which, picard);
  const SolutionTriple s2 = solve_case(spaces, data2, ndp, model, which, picard);
  DependenceReport rep;
  rep.sol_diff_sq = SolutionTriple::from_combined(spaces, s1.combined() - s2.combined()).y_norm_sq();

  const DataNorms n1 = data_norms(spaces, data1, ndp.a0), n2 = data_norms(spaces, data2, ndp.a0);
  DataNorms dn = n1;
  dn.norm_bf = std::max(n1.norm_bf, n2.norm_bf);
  dn.norm_bs = std::max(n1.norm_bs, n2.norm_bs);
  dn.norm_Tinf = std::max(n1.norm_Tinf, n2.norm_Tinf);
  dn.norm_a0 = std::max(n1.norm_a0, n2.norm_a0);
  const ConstraintReport cr = check_theorems(ndp, fc, dn, constants);
  switch (which) {
    case DependenceCase::Frozen:
      rep.alpha_used = cr.alpha3;
      rep.certified = cr.verdicts.T1;
      break;
    case DependenceCase::CaseA:
      rep.alpha_used = cr.alpha6_case_a;
      rep.certified = cr.verdicts.THM1;
      break;
    case DependenceCase::CaseB:
      rep.alpha_used = cr.alpha6_case_b;
      rep.certified = cr.verdicts.CaseB;
      break;
  }
  const DataNorms dd = data_norms(spaces, data_difference(data1, data2, ndp.a0), ndp.a0);
  rep.difference_norms = dd;
  const double t = dd.norm_bf + std::sqrt(fc.c_t) * dd.norm_Tinf;
  const double data_sq = t * t + dd.norm_a0 * dd.norm_a0 + fc.c_p * dd.norm_bs * dd.norm_bs;
  if (rep.alpha_used > 0.0) {
    rep.bound = data_sq / (rep.alpha_used * rep.alpha_used);
  } else {
    rep.bound = std::numeric_limits<double>::infinity();
    rep.certified = false;
  }
  rep.holds = rep.sol_diff_sq <= rep.bound;
  if (!rep.certified) rep.error = ErrorCode::ConstraintsNotSatisfied;
  return rep;
}

CoercivityReport coercivity_sample(const MixedSpaces& spaces, const NondimParams& ndp,
                                   const FunctionalConstants& fc, const ProblemData& data,
                                   const ResistivityModel& model, double k1, double k2,
                                   int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw Error(ErrorCode::InvalidParameter, "coercivity sampling needs n_samples >= 1");
  const DataNorms dn = data_norms(spaces, data, ndp.a0);
  const CoercivityConstants cc = coercivity_constants(ndp, fc, dn, k1, k2);
  CoercivityReport rep;
  rep.alpha3 = cc.alpha3;
  rep.alpha4 = cc.alpha4;
  rep.r0 = cc.alpha4 > 0.0 && cc.alpha3 > 0.0 ? 1.1 * cc.alpha4 / cc.alpha3 : 1.0;
  rep.min_pairing = std::numeric_limits<double>::infinity();
  rep.min_ratio = std::numeric_limits<double>::infinity();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const int n = spaces.total_dofs();
  for (int s = 0; s < n_samples; ++s) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x(i) = gauss(rng);
    SolutionTriple t = SolutionTriple::from_combined(spaces, x);
    t = SolutionTriple::from_combined(spaces, x * (rep.r0 / std::sqrt(t.y_norm_sq())));
    const ResistivityField rf = frozen_resistivity(spaces, model, &t.U);
    const double pairing = energy_pairing(spaces, t, ndp, rf, data);
    rep.min_pairing = std::min(rep.min_pairing, pairing);
    rep.min_ratio = std::min(rep.min_ratio, pairing / (cc.alpha3 * t.y_norm_sq()));
  }
  rep.all_positive = rep.min_pairing > 0.0;
  return rep;
}

}  // namespace biphasic
