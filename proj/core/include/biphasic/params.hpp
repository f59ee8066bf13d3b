#pragma once

// Physical and nondimensional parameters, coercivity constants, and the
// parameter inequalities under which the steady biphasic problem is
// well posed.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace biphasic {

/// Dimensional inputs. Units are SI as noted.
struct PhysicalParams {
  double mu_f = 0.0;      // fluid dynamic viscosity [Pa s]
  double lambda_f = 0.0;  // fluid Lame coefficient [Pa s]
  double young_Y = 0.0;   // Young's modulus [Pa]
  double nu_p = 0.0;      // Poisson ratio [-]
  double rho_f = 0.0;     // fluid density [kg/m^3]
  double R = 0.0;         // length scale [m]
  double P_F = 0.0;       // weighted vascular pressure [Pa]
  double L_p = 0.0;       // capillary hydraulic conductivity
  double AoverV = 0.0;    // capillary surface per tissue volume [1/m]
  double LrAr = 0.0;      // source/sink strength ratio [-]
  double K_d = 0.0;       // reference hydraulic resistivity [Pa s/m^2]

  /// Throws InvalidParameter if an invariant fails.
  void validate() const;
};

struct NondimParams {
  double lambda = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double a0 = 0.0;
  double Da = 0.0;
  double phi_f = 0.0;
  double phi_s = 0.0;

  /// Throws InvalidParameter on a hard violation. Returns warnings for
  /// admissible-but-unanalysed input (negative lambda).
  std::vector<std::string> validate() const;
};

/// Constants of the Korn, Poincare, trace and Sobolev (H1 -> L4) inequalities.
struct FunctionalConstants {
  double c_k = 3.0;
  double c_p = 0.5;
  double c_t = 2.0;
  double c_s = 0.5;

  void validate() const;
};

/// L2 norms of the problem data plus domain measures.
struct DataNorms {
  double norm_bf = 0.0;
  double norm_bs = 0.0;
  double norm_Tinf = 0.0;   // boundary L2 norm
  double norm_a0 = 0.0;     // L2 norm of the pressure-equation source
  double vol_Omega = 1.0;
  double area_boundary = 1.0;

  /// Norms of spatially constant data: |b| sqrt|Omega|, |T| sqrt|dOmega|,
  /// a0 sqrt|Omega|.
  static DataNorms from_constants(double bf, double bs, double t_inf, double a0,
                                  double vol, double area);

  void validate() const;
};

/// Structural constants of the resistivity law used by the inequalities.
struct ModelConstants {
  double k1 = 1.0;      // uniform lower eigenvalue bound
  double k2 = 1.0;      // uniform norm bound
  double k_L = 0.0;     // Lipschitz constant
  double k0 = 0.0;      // sub-linear growth constant
  double gamma2 = 0.0;  // dilatation slope (case b)
};

NondimParams derive_nondimensional(const PhysicalParams& p, double phi_f);

struct CoercivityConstants {
  double alpha = 0.0;
  double alpha3 = 0.0;
  double alpha4 = 0.0;
  /// False when alpha3 <= 0, i.e. the energy estimate gives no coercivity.
  bool coercive = false;
};

CoercivityConstants coercivity_constants(const NondimParams& ndp, const FunctionalConstants& fc,
                                         const DataNorms& dn, double k1, double k2);

enum class Relation { Greater, GreaterEqual };

bool compare(double lhs, double rhs, Relation rel);
std::string_view to_string(Relation rel);

struct InequalityRecord {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::Greater;
  bool satisfied = false;
};

struct TheoremVerdicts {
  bool T1 = false;           // linear problem: existence, bound, uniqueness
  bool THM1 = false;         // case (a) uniqueness
  bool THM2_exist = false;   // unbounded K existence
  bool THM2_unique = false;  // unbounded K uniqueness
  bool CaseB = false;        // case (b) uniqueness

  friend bool operator==(const TheoremVerdicts&, const TheoremVerdicts&) = default;
};

struct ConstraintReport {
  std::vector<InequalityRecord> records;

  double alpha = 0.0;
  double alpha3 = 0.0;
  double alpha4 = 0.0;
  double alpha_star = 0.0;
  double alpha3_star = 0.0;
  double alpha4_star = 0.0;
  double alpha5_star = 0.0;
  double alpha6_case_a = 0.0;
  double alpha6_case_b = 0.0;

  TheoremVerdicts verdicts;
  std::vector<std::string> warnings;

  const InequalityRecord* find(std::string_view name) const;

  /// Rows `name,lhs,rhs,satisfied` with 17 significant digits.
  std::string to_csv() const;
  std::string to_text() const;

  /// Rebuilds records from CSV; verdicts are recomputed from membership.
  static ConstraintReport from_csv(std::string_view csv);
};

/// Relation printed for a named inequality ("assu.1", "P4.2", ...).
Relation relation_for(std::string_view name);

/// Conjunction of member inequalities for each theorem.
TheoremVerdicts verdicts_from(const std::vector<InequalityRecord>& records);

ConstraintReport check_theorems(const NondimParams& ndp, const FunctionalConstants& fc,
                                const DataNorms& dn, const ModelConstants& model);

/// Bounds for the truncated unbounded-K construction, independent of the
/// truncation level.
struct TruncationBounds {
  double velocity_pressure = 0.0;   // alpha4* / alpha3*
  double displacement_grad = 0.0;   // alpha5*
  bool valid = false;               // false when the alpha5* denominator is <= 0
};

TruncationBounds truncation_bounds(const NondimParams& ndp, const FunctionalConstants& fc,
                                   const DataNorms& dn, const ModelConstants& model);

}  // namespace biphasic
