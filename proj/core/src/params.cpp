#include "biphasic/params.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "biphasic/errors.hpp"

namespace biphasic {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

std::string format_real(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct Membership {
  std::string_view name;
  Relation relation;
};

constexpr std::array<Membership, 12> kInequalities{{
    {"assu.1", Relation::Greater},
    {"assu.2", Relation::GreaterEqual},
    {"P4.1", Relation::Greater},
    {"P4.2", Relation::Greater},
    {"P4.3", Relation::GreaterEqual},
    {"Rassup1", Relation::Greater},
    {"Nasum1.1", Relation::Greater},
    {"Nasum1.2", Relation::GreaterEqual},
    {"Nasum2", Relation::Greater},
    {"P14.1", Relation::Greater},
    {"P14.2", Relation::Greater},
    {"P14.3", Relation::GreaterEqual},
}};

bool all_with_prefix(const std::vector<InequalityRecord>& records,
                     std::initializer_list<std::string_view> prefixes) {
  bool any = false;
  for (const auto& r : records) {
    for (auto p : prefixes) {
      if (r.name == p || (r.name.size() > p.size() && r.name.compare(0, p.size(), p) == 0 &&
                          r.name[p.size()] == '.')) {
        any = true;
        if (!r.satisfied) return false;
      }
    }
  }
  return any;
}

}  // namespace

void PhysicalParams::validate() const {
  require(mu_f > 0, "mu_f must be positive");
  require(young_Y > 0, "young_Y must be positive");
  require(nu_p >= 0 && nu_p < 0.5, "nu_p must lie in [0, 0.5)");
  require(R > 0, "R must be positive");
  require(K_d > 0, "K_d must be positive");
}

std::vector<std::string> NondimParams::validate() const {
  require(std::isfinite(lambda) && std::isfinite(alpha1) && std::isfinite(alpha2) &&
              std::isfinite(a0) && std::isfinite(Da),
          "nondimensional parameters must be finite");
  require(phi_f > 0 && phi_f < 1, "phi_f must lie in (0, 1)");
  require(phi_s > 0 && phi_s < 1, "phi_s must lie in (0, 1)");
  require(std::abs(phi_f + phi_s - 1.0) <= 1e-12, "phi_f + phi_s must equal 1");
  require(alpha1 > 0, "alpha1 must be positive");
  require(alpha2 > 0, "alpha2 must be positive");
  require(a0 > 0, "a0 must be positive");
  require(Da > 0, "Da must be positive");
  std::vector<std::string> warnings;
  if (lambda < 0) {
    warnings.emplace_back(
        "lambda < 0 (Stokes hypothesis): the coercivity restrictions checked here assume "
        "lambda >= 0");
  }
  return warnings;
}

void FunctionalConstants::validate() const {
  require(c_k > 0 && c_p > 0 && c_t > 0 && c_s > 0, "functional constants must be positive");
}

DataNorms DataNorms::from_constants(double bf, double bs, double t_inf, double a0, double vol,
                                    double area) {
  DataNorms dn;
  dn.norm_bf = std::abs(bf) * std::sqrt(vol);
  dn.norm_bs = std::abs(bs) * std::sqrt(vol);
  dn.norm_Tinf = std::abs(t_inf) * std::sqrt(area);
  dn.norm_a0 = std::abs(a0) * std::sqrt(vol);
  dn.vol_Omega = vol;
  dn.area_boundary = area;
  return dn;
}

void DataNorms::validate() const {
  require(norm_bf >= 0 && norm_bs >= 0 && norm_Tinf >= 0 && norm_a0 >= 0,
          "data norms must be nonnegative");
  require(vol_Omega > 0, "|Omega| must be positive");
  require(area_boundary >= 0, "|dOmega| must be nonnegative");
}

NondimParams derive_nondimensional(const PhysicalParams& p, double phi_f) {
  if (p.nu_p == 0.5) {
    throw Error(ErrorCode::PoissonRatioSingular, "nu_p = 0.5 makes alpha2 singular");
  }
  p.validate();
  const double rho_t = p.young_Y * p.R * p.R * p.rho_f / (p.mu_f * p.mu_f);
  const double alpha_t_sq = p.L_p * p.AoverV * p.mu_f;

  NondimParams n;
  n.lambda = p.lambda_f / p.mu_f;
  n.alpha1 = rho_t / (2.0 * (1.0 + p.nu_p));
  n.alpha2 = p.nu_p * rho_t / ((1.0 + p.nu_p) * (1.0 - 2.0 * p.nu_p));
  n.a0 = alpha_t_sq * (1.0 + p.LrAr);
  n.Da = p.K_d * p.mu_f / (p.R * p.R);
  n.phi_f = phi_f;
  n.phi_s = 1.0 - phi_f;
  return n;
}

CoercivityConstants coercivity_constants(const NondimParams& ndp, const FunctionalConstants& fc,
                                         const DataNorms& dn, double k1, double k2) {
  require(k1 > 0, "k1 must be positive");
  require(k2 >= k1, "k2 must be at least k1");
  CoercivityConstants c;
  c.alpha = std::min(2.0, k1 / (2.0 * ndp.Da)) / fc.c_k;
  const double elastic = 2.0 * ndp.alpha1 / fc.c_k - fc.c_p * k2 * k2 / (2.0 * k1 * ndp.Da);
  c.alpha3 = std::min({c.alpha, elastic, ndp.a0 / 2.0});
  const double traction = dn.norm_bf + std::sqrt(fc.c_t) * dn.norm_Tinf;
  c.alpha4 = std::sqrt(traction * traction + dn.norm_a0 * dn.norm_a0 +
                       fc.c_p * dn.norm_bs * dn.norm_bs);
  c.coercive = c.alpha3 > 0;
  return c;
}

bool compare(double lhs, double rhs, Relation rel) {
  return rel == Relation::Greater ? lhs > rhs : lhs >= rhs;
}

std::string_view to_string(Relation rel) { return rel == Relation::Greater ? ">" : ">="; }

Relation relation_for(std::string_view name) {
  for (const auto& m : kInequalities) {
    if (m.name == name) return m.relation;
  }
  throw Error(ErrorCode::ParseError, "unknown inequality name '" + std::string(name) + "'");
}

TheoremVerdicts verdicts_from(const std::vector<InequalityRecord>& records) {
  TheoremVerdicts v;
  v.T1 = all_with_prefix(records, {"assu"});
  v.THM1 = all_with_prefix(records, {"P4"});
  v.THM2_exist = all_with_prefix(records, {"Rassup1"});
  v.THM2_unique = all_with_prefix(records, {"Rassup1", "Nasum1", "Nasum2"});
  v.CaseB = all_with_prefix(records, {"P14"});
  return v;
}

const InequalityRecord* ConstraintReport::find(std::string_view name) const {
  for (const auto& r : records) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::string ConstraintReport::to_csv() const {
  std::ostringstream os;
  os << "name,lhs,rhs,satisfied\n";
  for (const auto& r : records) {
    os << r.name << ',' << format_real(r.lhs) << ',' << format_real(r.rhs) << ','
       << (r.satisfied ? "true" : "false") << '\n';
  }
  return os.str();
}

std::string ConstraintReport::to_text() const {
  std::ostringstream os;
  os << std::setprecision(10);
  os << "Derived constants\n";
  os << "  alpha    = " << alpha << "\n  alpha3   = " << alpha3 << "\n  alpha4   = " << alpha4
     << "\n  alpha*   = " << alpha_star << "\n  alpha3*  = " << alpha3_star
     << "\n  alpha4*  = " << alpha4_star << "\n  alpha5*  = " << alpha5_star
     << "\n  alpha6 (case a) = " << alpha6_case_a << "\n  alpha6 (case b) = " << alpha6_case_b
     << "\n\nInequalities\n";
  for (const auto& r : records) {
    os << "  " << std::left << std::setw(10) << r.name << std::right << std::setw(20) << r.lhs
       << ' ' << std::setw(2) << to_string(r.relation) << ' ' << std::setw(20) << r.rhs << "  "
       << (r.satisfied ? "ok" : "VIOLATED") << '\n';
  }
  auto yn = [](bool b) { return b ? "holds" : "not verified"; };
  os << "\nTheorem hypotheses\n"
     << "  linear problem (T1)       : " << yn(verdicts.T1) << '\n'
     << "  case (a) uniqueness (THM1): " << yn(verdicts.THM1) << '\n'
     << "  unbounded K existence     : " << yn(verdicts.THM2_exist) << '\n'
     << "  unbounded K uniqueness    : " << yn(verdicts.THM2_unique) << '\n'
     << "  case (b) uniqueness       : " << yn(verdicts.CaseB) << '\n';
  for (const auto& w : warnings) os << "warning: " << w << '\n';
  return os.str();
}

ConstraintReport ConstraintReport::from_csv(std::string_view csv) {
  ConstraintReport report;
  std::istringstream is{std::string(csv)};
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line == "name,lhs,rhs,satisfied") continue;
    std::istringstream ls(line);
    std::string name, lhs, rhs, sat;
    if (!std::getline(ls, name, ',') || !std::getline(ls, lhs, ',') ||
        !std::getline(ls, rhs, ',') || !std::getline(ls, sat)) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 4 fields");
    }
    InequalityRecord r;
    r.name = name;
    r.relation = relation_for(name);
    try {
      r.lhs = std::stod(lhs);
      r.rhs = std::stod(rhs);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad number");
    }
    if (sat != "true" && sat != "false") {
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": bad flag");
    }
    r.satisfied = sat == "true";
    report.records.push_back(std::move(r));
  }
  report.verdicts = verdicts_from(report.records);
  return report;
}

namespace {

struct StarConstants {
  double alpha_star, alpha3_star, alpha4_star, alpha5_star, growth_term;
};

/// Constants of the unbounded-K estimate; they need k1 and k0 only.
StarConstants star_constants(const NondimParams& ndp, const FunctionalConstants& fc,
                             const DataNorms& dn, double k1, double k0) {
  StarConstants s{};
  const double sqrt_cp = std::sqrt(fc.c_p);
  s.alpha_star = std::min(2.0, k1 / ndp.Da) / fc.c_k;
  const double traction = dn.norm_bf + std::sqrt(fc.c_t) * dn.norm_Tinf;
  s.alpha4_star = std::sqrt(traction * traction + ndp.a0 * ndp.a0 * dn.vol_Omega);
  s.alpha3_star = std::min(s.alpha_star, ndp.a0);
  s.growth_term = fc.c_s * k0 * sqrt_cp * s.alpha4_star / (s.alpha3_star * ndp.Da);
  s.alpha5_star = (sqrt_cp * dn.norm_bs +
                   (s.alpha4_star / s.alpha3_star) * (ndp.phi_s + fc.c_s * k0 * dn.vol_Omega / ndp.Da)) /
                  (2.0 * ndp.alpha1 / fc.c_k - s.growth_term);
  return s;
}

}  // namespace

ConstraintReport check_theorems(const NondimParams& ndp, const FunctionalConstants& fc,
                                const DataNorms& dn, const ModelConstants& m) {
  ConstraintReport rep;
  rep.warnings = ndp.validate();
  fc.validate();
  dn.validate();

  const double ck = fc.c_k, cp = fc.c_p, cs = fc.c_s, Da = ndp.Da;
  const double sqrt_cp = std::sqrt(cp);
  const double vol = dn.vol_Omega;

  const auto cc = coercivity_constants(ndp, fc, dn, m.k1, m.k2);
  rep.alpha = cc.alpha;
  rep.alpha3 = cc.alpha3;
  rep.alpha4 = cc.alpha4;
  if (!cc.coercive) rep.warnings.emplace_back("alpha3 <= 0: no coercivity estimate available");

  const double a3 = cc.alpha3, a4 = cc.alpha4;
  const double korn_u = 2.0 * ndp.alpha1 / ck;
  const double drag_u = cp * m.k2 * m.k2 / (2.0 * m.k1 * Da);
  const double pressure_coupling = ndp.phi_s * ndp.phi_s / (2.0 * ndp.a0);

  const StarConstants star = star_constants(ndp, fc, dn, m.k1, m.k0);
  rep.alpha_star = star.alpha_star;
  rep.alpha3_star = star.alpha3_star;
  rep.alpha4_star = star.alpha4_star;
  rep.alpha5_star = star.alpha5_star;
  const double growth_term = star.growth_term;

  const double lip_a = m.k_L * a4 * cs / a3;
  const double lip_b = m.gamma2 * cs * a4 / a3;
  rep.alpha6_case_a = std::min({cc.alpha - lip_a / (2.0 * Da),
                                korn_u - drag_u - lip_a * (cp + 2.0 * sqrt_cp) / (2.0 * Da),
                                ndp.a0 / 2.0});
  rep.alpha6_case_b =
      std::min({cc.alpha - lip_b / (2.0 * Da), korn_u - drag_u - lip_b / (2.0 * Da), ndp.a0 / 2.0});

  auto add = [&rep](std::string name, double lhs, double rhs) {
    InequalityRecord r;
    r.relation = relation_for(name);
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.satisfied = compare(lhs, rhs, r.relation);
    rep.records.push_back(std::move(r));
  };

  add("assu.1", korn_u, drag_u);
  add("assu.2", ndp.alpha2, pressure_coupling);

  add("P4.1", 2.0 * cc.alpha * Da, lip_a);
  add("P4.2", 4.0 * ndp.alpha1 * Da / ck, cp * m.k2 * m.k2 / m.k1 + lip_a * (cp + 2.0 * sqrt_cp));
  add("P4.3", 2.0 * ndp.alpha2, ndp.phi_s * ndp.phi_s / ndp.a0);

  add("Rassup1", korn_u, growth_term);

  const double star_lip = m.k_L * rep.alpha4_star / rep.alpha3_star;
  const double growth_tail = std::sqrt(2.0) * m.k0 * (std::sqrt(vol) + sqrt_cp * rep.alpha5_star);
  add("Nasum1.1", 2.0 * rep.alpha_star * Da / cs, star_lip + growth_tail);
  add("Nasum1.2", ndp.alpha2, pressure_coupling);
  add("Nasum2", 4.0 * ndp.alpha1 * Da / (ck * cs), star_lip * (cp + 2.0 * sqrt_cp) + growth_tail);

  add("P14.1", 2.0 * cc.alpha * Da, lip_b);
  add("P14.2", 4.0 * ndp.alpha1 * Da / ck, cp * m.k2 * m.k2 / m.k1 + lip_b);
  add("P14.3", ndp.alpha2, pressure_coupling + lip_b / Da);

  if (!(korn_u - growth_term > 0)) {
    rep.warnings.emplace_back("alpha5* denominator is not positive; unbounded-K bounds undefined");
  }
  rep.verdicts = verdicts_from(rep.records);
  return rep;
}

TruncationBounds truncation_bounds(const NondimParams& ndp, const FunctionalConstants& fc,
                                   const DataNorms& dn, const ModelConstants& model) {
  require(model.k1 > 0, "k1 must be positive");
  const StarConstants star = star_constants(ndp, fc, dn, model.k1, model.k0);
  TruncationBounds b;
  b.velocity_pressure = star.alpha4_star / star.alpha3_star;
  b.displacement_grad = star.alpha5_star;
  b.valid = compare(2.0 * ndp.alpha1 / fc.c_k, star.growth_term, relation_for("Rassup1"));
  return b;
}

}  // namespace biphasic
