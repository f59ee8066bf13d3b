#pragma once

// Linear solves of the frozen-resistivity problem and the fixed-point
// constructions for deformation-dependent resistivity.

#include <optional>
#include <string>
#include <vector>

#include "biphasic/assembly.hpp"
#include "biphasic/errors.hpp"
#include "biphasic/params.hpp"
#include "biphasic/resistivity.hpp"

namespace biphasic {

struct LinearSolverOptions {
  enum class Method { SparseLU, BiCGSTAB };
  Method method = Method::SparseLU;
  double rtol = 1e-10;
  int max_iterations = 2000;  // Krylov path only
};

/// Returns the solution vector; throws SingularSystem or ToleranceNotReached.
Eigen::VectorXd solve_system(const BlockSystem& system, const LinearSolverOptions& options = {},
                             double* residual = nullptr);

SolutionTriple solve_linear(const MixedSpaces& spaces, const BlockSystem& system,
                            const LinearSolverOptions& options = {});

struct PicardIterate {
  double v_h1 = 0.0;      // ||V||_1
  double grad_u = 0.0;    // ||grad U||
  double p_l2 = 0.0;      // ||P||
  double step_diff = 0.0; // ||X^{n+1} - X^n||_Y
  double linear_residual = 0.0;
  bool within_bound = true;  // against PicardOptions::apriori_bound_sq, if set

  double y_norm_sq() const { return v_h1 * v_h1 + grad_u * grad_u + p_l2 * p_l2; }
};

struct PicardReport {
  std::vector<PicardIterate> iterates;
  bool converged = false;
  int iterations = 0;
  /// Geometric mean of successive step_diff ratios; 0 with fewer than two steps.
  double contraction_estimate = 0.0;
  std::optional<ErrorCode> error;
};

struct PicardOptions {
  double tol = 1e-8;
  int max_iter = 50;
  double relaxation = 1.0;  // in (0, 1]
  /// Replaces the default initial iterate (the solve with K at s = 0).
  std::optional<SolutionTriple> initial;
  /// Squared a-priori bound each iterate is compared with.
  std::optional<double> apriori_bound_sq;
  LinearSolverOptions linear;
};

struct PicardResult {
  SolutionTriple solution;
  PicardReport report;
};

/// K frozen at the previous displacement iterate.
PicardResult picard_case_a(const MixedSpaces& spaces, const NondimParams& ndp,
                           const ProblemData& data, const ResistivityModel& model,
                           const PicardOptions& options = {});

/// K frozen at the previous dilatation iterate; the model must be
/// dilatation-affine.
PicardResult picard_case_b(const MixedSpaces& spaces, const NondimParams& ndp,
                           const ProblemData& data, const ResistivityModel& model,
                           const PicardOptions& options = {});

struct TruncationStep {
  double m = 0.0;
  PicardReport picard;
  double velocity_pressure = 0.0;  // (||V||_1^2 + ||P||^2)^{1/2}
  double grad_u = 0.0;
  double max_entry = 0.0;          // largest untruncated K entry on the solution
  bool truncation_active = true;
  bool within_bounds = true;  // both norms below the m-independent bounds
};

struct TruncationResult {
  SolutionTriple solution;
  std::vector<TruncationStep> steps;
  TruncationBounds bounds;
  std::optional<ErrorCode> error;  // ScheduleExhausted
};

/// Powers of two from the smallest one >= ceil(k2) (or 1), `count` entries.
std::vector<double> default_m_schedule(std::optional<double> k2, int count = 11);

/// Runs case (a) Picard with Truncated(model, m) for each m until the
/// truncation is inactive on the computed solution.
TruncationResult solve_truncated_continuation(const MixedSpaces& spaces, const NondimParams& ndp,
                                              const ProblemData& data, const ResistivityModel& model,
                                              const std::vector<double>& m_schedule,
                                              const TruncationBounds& bounds,
                                              const PicardOptions& options = {});

}  // namespace biphasic
