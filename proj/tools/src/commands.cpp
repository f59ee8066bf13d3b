#include "biphasic_app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include <json.hpp>

#include <biphasic/errors.hpp>

#include "biphasic_app/output.hpp"

namespace biphasic::app {

namespace {

/// Everything a subcommand needs once the config has been read.
struct Context {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;
  int warnings = 0;

  void warn(const std::string& message) {
    err << "warning: " << message << '\n';
    ++warnings;
  }

  MixedSpaces spaces() const {
    auto mesh = std::make_shared<const Mesh>(cfg.build_mesh());
    return make_spaces(mesh, cfg.pairing);
  }

  /// Norms from the declared domain measures when both are given, otherwise
  /// by quadrature on the mesh.
  DataNorms norms(const MixedSpaces* spaces, const ProblemData& data) const {
    if (cfg.domain_volume && cfg.domain_boundary) {
      return DataNorms::from_constants(cfg.data.b_f_magnitude(), cfg.data.b_s_magnitude(),
                                       cfg.data.traction_magnitude(),
                                       std::abs(cfg.data.source.value_or(cfg.ndp.a0)),
                                       *cfg.domain_volume, *cfg.domain_boundary);
    }
    DataNorms dn = data_norms(*spaces, data, cfg.ndp.a0);
    if (cfg.domain_volume) dn.vol_Omega = *cfg.domain_volume;
    if (cfg.domain_boundary) dn.area_boundary = *cfg.domain_boundary;
    return dn;
  }

  bool bounded() const { return std::isfinite(cfg.model_constants.k1) && std::isfinite(cfg.model_constants.k2); }

  std::filesystem::path path(const std::string& name) const {
    std::filesystem::create_directories(cfg.output_dir);
    return cfg.output_dir / name;
  }
};

void require_bounded(const Context& ctx, const std::string& what) {
  if (!ctx.bounded()) {
    throw Error(ErrorCode::ConfigError,
                "/model_constants: " + what + " needs finite k1 and k2; the resistivity model declares none");
  }
}

bool dilatation_model(const Context& ctx) { return ctx.cfg.model->argument() == Argument::Dilatation; }

PicardResult solve_nonlinear(const Context& ctx, const MixedSpaces& spaces, const ProblemData& data,
                             const PicardOptions& opts) {
  if (ctx.cfg.picard_case == "b" || dilatation_model(ctx)) {
    return picard_case_b(spaces, ctx.cfg.ndp, data, *ctx.cfg.model, opts);
  }
  return picard_case_a(spaces, ctx.cfg.ndp, data, *ctx.cfg.model, opts);
}

int check_params(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  require_bounded(ctx, "check-params");
  DataNorms dn;
  if (cfg.domain_volume && cfg.domain_boundary) {
    dn = ctx.norms(nullptr, {});
  } else {
    const MixedSpaces spaces = ctx.spaces();
    dn = ctx.norms(&spaces, cfg.data.to_problem_data());
  }
  const ConstraintReport report = check_theorems(cfg.ndp, cfg.constants, dn, cfg.model_constants);
  std::ofstream(ctx.path("constraints.csv")) << report.to_csv();
  std::ofstream(ctx.path("constraints.txt")) << report.to_text();
  ctx.out << report.to_text();
  for (const auto& w : report.warnings) {
    if (std::find(cfg.param_warnings.begin(), cfg.param_warnings.end(), w) == cfg.param_warnings.end()) ctx.warn(w);
  }
  for (const auto& r : report.records) {
    if (!r.satisfied) ctx.warn(r.name + " fails: " + format_double(r.lhs) + " vs " + format_double(r.rhs));
  }
  return kOk;
}

int solve(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const MixedSpaces spaces = ctx.spaces();
  const ProblemData data = cfg.data.to_problem_data();
  const PicardResult result = solve_nonlinear(ctx, spaces, data, cfg.picard);

  write_vtk(ctx.path("solution.vtk"), result.solution, "biphasic solution");
  std::ofstream(ctx.path("picard.csv")) << picard_csv(result.report);

  nlohmann::ordered_json summary;
  summary["model"] = cfg.model->name();
  summary["cells"] = spaces.mesh().num_cells();
  summary["dofs"] = spaces.total_dofs();
  summary["converged"] = result.report.converged;
  summary["iterations"] = result.report.iterations;
  summary["contraction_estimate"] = result.report.contraction_estimate;
  summary["y_norm_sq"] = result.solution.y_norm_sq();
  summary["error"] = result.report.error ? std::string(to_string(*result.report.error)) : "";
  if (ctx.bounded()) {
    const DataNorms dn = ctx.norms(&spaces, data);
    const CoercivityConstants cc =
        coercivity_constants(cfg.ndp, cfg.constants, dn, cfg.model_constants.k1, cfg.model_constants.k2);
    if (cc.coercive) {
      const AuditReport audit = apriori_audit(result.solution, cfg.ndp, cfg.constants, dn,
                                              cfg.model_constants.k1, cfg.model_constants.k2);
      summary["audit"] = {{"lhs", audit.lhs}, {"rhs", audit.rhs}, {"holds", audit.holds}};
      if (!audit.holds) ctx.warn("a-priori bound does not hold on the discrete solution");
    } else {
      ctx.warn("alpha3 <= 0: no a-priori bound to audit");
    }
  }
  std::ofstream(ctx.path("summary.json")) << summary.dump(2) << '\n';
  ctx.out << summary.dump(2) << '\n';

  if (result.report.error) {
    ctx.err << "error: " << to_string(*result.report.error) << " after " << result.report.iterations
            << " iterations\n";
    return kSolverFailure;
  }
  return kOk;
}

int mms(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  if (cfg.mesh.dim != 2) throw Error(ErrorCode::ConfigError, "/mesh: mms runs on the unit square only");
  const MmsProblem problem =
      build_mms(2, unit_square_mms_fields(), cfg.ndp, *cfg.model, generate_unit_square(4));
  const RateTable table = convergence_study(problem, cfg.mms_levels, cfg.pairing, cfg.picard);
  std::ofstream(ctx.path("rates.csv")) << table.to_csv();
  ctx.out << table.to_csv();
  return kOk;
}

int coercivity(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  require_bounded(ctx, "coercivity");
  const MixedSpaces spaces = ctx.spaces();
  const CoercivityReport r =
      coercivity_sample(spaces, cfg.ndp, cfg.constants, cfg.data.to_problem_data(), *cfg.model,
                        cfg.model_constants.k1, cfg.model_constants.k2, cfg.coercivity_samples, cfg.seed);
  CsvTable t({"samples", "seed", "r0", "alpha3", "alpha4", "min_pairing", "min_ratio", "all_positive"});
  t.row()
      .add(cfg.coercivity_samples)
      .add(std::to_string(cfg.seed))
      .add(r.r0)
      .add(r.alpha3)
      .add(r.alpha4)
      .add(r.min_pairing)
      .add(r.min_ratio)
      .add(r.all_positive);
  t.save(ctx.path("coercivity.csv"));
  ctx.out << t.str();
  if (!r.all_positive) ctx.warn("non-positive pairing observed");
  return kOk;
}

DataSpec perturbed(const Context& ctx, double eps) {
  const RunConfig& cfg = ctx.cfg;
  DataSpec d = cfg.data;
  const int dim = cfg.mesh.dim;
  std::vector<double> dir = cfg.dependence.direction;
  if (dir.empty()) {
    dir.assign(dim, 0.0);
    dir[0] = 1.0;
  }
  auto shift = [&](std::vector<double>& v) {
    if (static_cast<int>(dir.size()) != dim) {
      throw Error(ErrorCode::ConfigError, "/dependence/direction: expected " + std::to_string(dim) + " components");
    }
    if (v.empty()) v.assign(dim, 0.0);
    for (int i = 0; i < dim; ++i) v[i] += eps * dir[i];
  };
  const std::string& which = cfg.dependence.perturb;
  if (which == "b_f") {
    shift(d.b_f);
  } else if (which == "b_s") {
    shift(d.b_s);
  } else if (which == "traction") {
    if (d.traction_vector.empty()) {
      d.traction_normal = d.traction_normal.value_or(0.0) + eps * dir[0];
    } else {
      shift(d.traction_vector);
    }
  } else {
    d.source = d.source.value_or(cfg.ndp.a0) + eps * dir[0];
  }
  return d;
}

int dependence(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  require_bounded(ctx, "dependence");
  const MixedSpaces spaces = ctx.spaces();
  const ProblemData base = cfg.data.to_problem_data();
  CsvTable t({"eps", "sol_diff_sq", "ratio", "bound", "holds", "certified"});
  int status = kOk;
  for (double eps : cfg.dependence.epsilons) {
    const DependenceReport r =
        dependence_study(spaces, base, perturbed(ctx, eps).to_problem_data(), cfg.ndp, cfg.constants,
                         *cfg.model, cfg.model_constants, cfg.dependence.which, cfg.picard);
    t.row().add(eps).add(r.sol_diff_sq).add(r.sol_diff_sq / (eps * eps)).add(r.bound).add(r.holds).add(r.certified);
    if (!r.holds) {
      ctx.warn("estimate violated at eps = " + format_double(eps) + ": " + format_double(r.sol_diff_sq) +
               " > " + format_double(r.bound));
    }
    if (r.error == ErrorCode::MaxIterationsExceeded) status = kSolverFailure;
    if (r.error == ErrorCode::ConstraintsNotSatisfied) ctx.warn("estimate hypotheses not satisfied");
  }
  t.save(ctx.path("dependence.csv"));
  ctx.out << t.str();
  return status;
}

int truncation(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const MixedSpaces spaces = ctx.spaces();
  const ProblemData data = cfg.data.to_problem_data();
  const TruncationBounds bounds = truncation_bounds(cfg.ndp, cfg.constants, ctx.norms(&spaces, data), cfg.model_constants);
  if (!bounds.valid) ctx.warn("growth condition fails; per-m bounds are not certified");
  const TruncationResult r =
      solve_truncated_continuation(spaces, cfg.ndp, data, *cfg.model, cfg.m_schedule, bounds, cfg.picard);

  CsvTable t({"m", "picard_iterations", "converged", "velocity_pressure", "grad_u", "max_entry",
              "truncation_active", "within_bounds", "bound_velocity_pressure", "bound_grad_u"});
  for (const TruncationStep& s : r.steps) {
    t.row()
        .add(s.m)
        .add(s.picard.iterations)
        .add(s.picard.converged)
        .add(s.velocity_pressure)
        .add(s.grad_u)
        .add(s.max_entry)
        .add(s.truncation_active)
        .add(s.within_bounds)
        .add(bounds.velocity_pressure)
        .add(bounds.displacement_grad);
    if (bounds.valid && !s.within_bounds) ctx.warn("bounds exceeded at m = " + format_double(s.m));
  }
  t.save(ctx.path("truncation.csv"));
  ctx.out << t.str();
  if (!r.steps.empty()) write_vtk(ctx.path("solution.vtk"), r.solution, "truncated continuation");
  if (r.error) {
    ctx.err << "error: " << to_string(*r.error) << '\n';
    return kSolverFailure;
  }
  return kOk;
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::ParseError:
    case ErrorCode::ValidationError:
    case ErrorCode::InvalidParameter:
    case ErrorCode::PoissonRatioSingular:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::UnsupportedElement:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(const std::string& subcommand, const std::string& config_path, std::ostream& out,
        std::ostream& err) {
  static const std::map<std::string, std::function<int(Context&)>> commands{
      {"check-params", check_params}, {"solve", solve},           {"mms", mms},
      {"coercivity", coercivity},     {"dependence", dependence}, {"truncation", truncation},
  };
  const auto it = commands.find(subcommand);
  if (it == commands.end()) {
    err << "error: unknown subcommand '" << subcommand << "'\n";
    return kConfigError;
  }
  try {
    Context ctx{load_config(config_path), out, err};
    for (const auto& w : ctx.cfg.param_warnings) ctx.warn(w);
    return it->second(ctx);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_config_error(e.code()) ? kConfigError : kSolverFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace biphasic::app
