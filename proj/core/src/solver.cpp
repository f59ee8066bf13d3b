#include "biphasic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

namespace biphasic {

Eigen::VectorXd solve_system(const BlockSystem& system, const LinearSolverOptions& options,
                             double* residual) {
  Eigen::VectorXd x;
  if (system.size() == 0) {
    if (residual) *residual = 0.0;
    return x;
  }
  if (options.method == LinearSolverOptions::Method::SparseLU) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(system.matrix);
    lu.factorize(system.matrix);
    if (lu.info() != Eigen::Success) {
      throw Error(ErrorCode::SingularSystem, "sparse LU factorization failed: " + lu.lastErrorMessage());
    }
    x = lu.solve(system.rhs);
    // A few steps of iterative refinement recover digits lost to scaling.
    for (int k = 0; k < 3 && weak_residual(system, x) > options.rtol; ++k) {
      x += lu.solve(system.rhs - system.matrix * x);
    }
  } else {
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::IncompleteLUT<double>> it;
    it.setTolerance(options.rtol);
    it.setMaxIterations(options.max_iterations);
    it.compute(system.matrix);
    if (it.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "ILUT preconditioner failed");
    x = it.solve(system.rhs);
  }
  const double r = weak_residual(system, x);
  if (residual) *residual = r;
  if (!std::isfinite(r)) throw Error(ErrorCode::SingularSystem, "linear solve produced non-finite values");
  if (r > options.rtol) {
    throw Error(ErrorCode::ToleranceNotReached,
                "linear residual " + std::to_string(r) + " exceeds " + std::to_string(options.rtol));
  }
  return x;
}

SolutionTriple solve_linear(const MixedSpaces& spaces, const BlockSystem& system,
                            const LinearSolverOptions& options) {
  return SolutionTriple::from_combined(spaces, solve_system(system, options));
}

namespace {

PicardIterate measure(const SolutionTriple& s) {
  PicardIterate it;
  it.v_h1 = h1_norm(s.V);
  it.grad_u = grad_l2(s.U);
  it.p_l2 = l2_norm(s.P);
  return it;
}

double y_distance(const MixedSpaces& spaces, const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::sqrt(SolutionTriple::from_combined(spaces, a - b).y_norm_sq());
}

PicardResult run_picard(const MixedSpaces& spaces, const NondimParams& ndp, const ProblemData& data,
                        const ResistivityModel& model, const PicardOptions& opt) {
  if (!(opt.tol > 0.0) || opt.max_iter < 1 || !(opt.relaxation > 0.0 && opt.relaxation <= 1.0)) {
    throw Error(ErrorCode::InvalidParameter, "Picard needs tol > 0, max_iter >= 1, relaxation in (0,1]");
  }
  PicardResult res;
  PicardReport& rep = res.report;
  auto solve_frozen = [&](const FieldFunction* u, double* residual) {
    const BlockSystem sys = assemble(spaces, ndp, frozen_resistivity(spaces, model, u), data);
    return solve_system(sys, opt.linear, residual);
  };
  auto record = [&](const SolutionTriple& s, double step, double resid) {
    PicardIterate it = measure(s);
    it.step_diff = step;
    it.linear_residual = resid;
    if (opt.apriori_bound_sq) it.within_bound = it.y_norm_sq() <= *opt.apriori_bound_sq;
    rep.iterates.push_back(it);
  };

  Eigen::VectorXd x;
  if (opt.initial) {
    x = opt.initial->combined();
    record(*opt.initial, 0.0, 0.0);
  } else {
    double r = 0.0;
    x = solve_frozen(nullptr, &r);
    record(SolutionTriple::from_combined(spaces, x), 0.0, r);
  }

  for (int n = 1; n <= opt.max_iter; ++n) {
    const SolutionTriple cur = SolutionTriple::from_combined(spaces, x);
    double r = 0.0;
    Eigen::VectorXd next = solve_frozen(&cur.U, &r);
    if (opt.relaxation < 1.0) next = opt.relaxation * next + (1.0 - opt.relaxation) * x;
    const double step = y_distance(spaces, next, x);
    x = std::move(next);
    const SolutionTriple sol = SolutionTriple::from_combined(spaces, x);
    record(sol, step, r);
    rep.iterations = n;
    if (step <= opt.tol * std::max(1.0, std::sqrt(sol.y_norm_sq()))) {
      rep.converged = true;
      break;
    }
  }
  if (!rep.converged) rep.error = ErrorCode::MaxIterationsExceeded;

  const auto& its = rep.iterates;
  if (rep.iterations >= 2 && its[1].step_diff > 0.0) {
    rep.contraction_estimate =
        std::pow(its.back().step_diff / its[1].step_diff, 1.0 / (rep.iterations - 1));
  }
  res.solution = SolutionTriple::from_combined(spaces, x);
  return res;
}

}  // namespace

PicardResult picard_case_a(const MixedSpaces& spaces, const NondimParams& ndp,
                           const ProblemData& data, const ResistivityModel& model,
                           const PicardOptions& options) {
  if (model.argument() == Argument::Dilatation) {
    throw Error(ErrorCode::InvalidParameter, "case (a) needs a displacement-dependent resistivity");
  }
  return run_picard(spaces, ndp, data, model, options);
}

PicardResult picard_case_b(const MixedSpaces& spaces, const NondimParams& ndp,
                           const ProblemData& data, const ResistivityModel& model,
                           const PicardOptions& options) {
  if (!std::holds_alternative<ResistivityModel::DilatationAffine>(model.variant())) {
    throw Error(ErrorCode::InvalidParameter, "case (b) needs a dilatation-affine resistivity");
  }
  return run_picard(spaces, ndp, data, model, options);
}

std::vector<double> default_m_schedule(std::optional<double> k2, int count) {
  double m = 1.0;
  if (k2) {
    const double start = std::max(1.0, std::ceil(*k2));
    while (m < start) m *= 2.0;
  }
  std::vector<double> out;
  for (int i = 0; i < count; ++i, m *= 2.0) out.push_back(m);
  return out;
}

TruncationResult solve_truncated_continuation(const MixedSpaces& spaces, const NondimParams& ndp,
                                              const ProblemData& data, const ResistivityModel& model,
                                              const std::vector<double>& m_schedule,
                                              const TruncationBounds& bounds,
                                              const PicardOptions& options) {
  if (m_schedule.empty() || !std::is_sorted(m_schedule.begin(), m_schedule.end()) ||
      std::adjacent_find(m_schedule.begin(), m_schedule.end()) != m_schedule.end()) {
    throw Error(ErrorCode::InvalidParameter, "truncation schedule must be nonempty and increasing");
  }
  TruncationResult out;
  out.bounds = bounds;
  for (double m : m_schedule) {
    PicardResult pr = picard_case_a(spaces, ndp, data, ResistivityModel::truncated(model, m), options);
    TruncationStep step;
    step.m = m;
    const double v = h1_norm(pr.solution.V), p = l2_norm(pr.solution.P);
    step.velocity_pressure = std::sqrt(v * v + p * p);
    step.grad_u = grad_l2(pr.solution.U);
    const ResistivityField raw = frozen_resistivity(spaces, model, &pr.solution.U);
    for (const auto& K : raw.values) step.max_entry = std::max(step.max_entry, K.maxCoeff());
    step.truncation_active = step.max_entry >= m;
    step.within_bounds = step.velocity_pressure <= bounds.velocity_pressure &&
                         step.grad_u <= bounds.displacement_grad;
    step.picard = std::move(pr.report);
    out.steps.push_back(std::move(step));
    out.solution = std::move(pr.solution);
    if (!out.steps.back().truncation_active) return out;
  }
  out.error = ErrorCode::ScheduleExhausted;
  return out;
}

}  // namespace biphasic
