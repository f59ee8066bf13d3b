#include "biphasic_app/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <biphasic/errors.hpp>

namespace biphasic::app {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ConfigError, path + ": " + what);
}

/// Typed access to a JSON object that remembers where it sits in the file.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "/" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }
  std::string at(const std::string& key) const { return path_ + "/" + key; }

  Section section(const std::string& key) const {
    if (!has(key)) fail(at(key), "missing section");
    return Section(j_.at(key), at(key));
  }

  double number(const std::string& key) const {
    if (!has(key)) fail(at(key), "missing required number");
    const json& v = j_.at(key);
    if (!v.is_number()) fail(at(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(at(key), "expected a finite number");
    return d;
  }
  double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  int integer(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) fail(at(key), "expected an integer");
    return v.get<int>();
  }

  std::string string(const std::string& key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) fail(at(key), "expected a string");
    return v.get<std::string>();
  }

  template <typename T>
  std::vector<T> list(const std::string& key) const {
    std::vector<T> out;
    if (!has(key)) return out;
    const json& v = j_.at(key);
    if (!v.is_array()) fail(at(key), "expected an array");
    for (std::size_t i = 0; i < v.size(); ++i) {
      const bool ok = std::is_integral_v<T> ? v[i].is_number_integer() : v[i].is_number();
      if (!ok) fail(at(key) + "/" + std::to_string(i), "expected a number");
      out.push_back(v[i].get<T>());
    }
    return out;
  }

  const json& raw(const std::string& key) const { return j_.at(key); }

 private:
  const json& j_;
  std::string path_;
};

void require_positive(const Section& s, const std::string& key, double v) {
  if (!(v > 0.0)) fail(s.at(key), "must be positive");
}

std::shared_ptr<const ResistivityModel> parse_model(const Section& s, int dim) {
  const std::string type = s.string("type", "");
  try {
    if (type == "constant") {
      const json& m = s.raw("matrix");
      if (!m.is_array() || static_cast<int>(m.size()) != dim) {
        fail(s.at("matrix"), "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " array");
      }
      SmallMatrix K(dim, dim);
      for (int i = 0; i < dim; ++i) {
        if (!m[i].is_array() || static_cast<int>(m[i].size()) != dim) {
          fail(s.at("matrix") + "/" + std::to_string(i), "expected a row of length " + std::to_string(dim));
        }
        for (int j = 0; j < dim; ++j) K(i, j) = m[i][j].get<double>();
      }
      return std::make_shared<const ResistivityModel>(ResistivityModel::constant(K));
    }
    if (type == "displacement_anisotropic") {
      return std::make_shared<const ResistivityModel>(
          ResistivityModel::displacement_anisotropic(s.number("a"), s.number("b"), s.number("c"), dim));
    }
    if (type == "dilatation_affine") {
      return std::make_shared<const ResistivityModel>(
          ResistivityModel::dilatation_affine(s.number("gamma1"), s.number("gamma2", 0.0), dim));
    }
    if (type == "truncated") {
      const auto inner = parse_model(s.section("inner"), dim);
      return std::make_shared<const ResistivityModel>(ResistivityModel::truncated(*inner, s.number("m")));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(s.at("type"), e.what());
  } catch (const json::exception& e) {
    fail(s.at("matrix"), e.what());
  }
  fail(s.at("type"), "unknown resistivity type '" + type +
                         "' (constant, displacement_anisotropic, dilatation_affine, truncated)");
}

DataSpec parse_data(const Section& s, int dim) {
  DataSpec d;
  auto vec = [&](const std::string& key) {
    auto v = s.list<double>(key);
    if (!v.empty() && static_cast<int>(v.size()) != dim) {
      fail(s.at(key), "expected " + std::to_string(dim) + " components");
    }
    return v;
  };
  d.b_f = vec("b_f");
  d.b_s = vec("b_s");
  if (s.has("traction")) {
    if (s.raw("traction").is_number()) {
      d.traction_normal = s.number("traction");
    } else {
      d.traction_vector = vec("traction");
    }
  }
  if (s.has("source")) d.source = s.number("source");
  return d;
}

}  // namespace

ProblemData DataSpec::to_problem_data() const {
  auto as_vec = [](const std::vector<double>& v) {
    SmallVector x(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) x(static_cast<int>(i)) = v[i];
    return x;
  };
  ProblemData p;
  if (!b_f.empty()) p.b_f = constant_vector(as_vec(b_f));
  if (!b_s.empty()) p.b_s = constant_vector(as_vec(b_s));
  if (traction_normal) {
    p.traction = normal_traction(*traction_normal);
  } else if (!traction_vector.empty()) {
    const SmallVector t = as_vec(traction_vector);
    p.traction = [t](const SmallVector&, const SmallVector&) { return t; };
  }
  if (source) p.source = [v = *source](const SmallVector&) { return v; };
  return p;
}

namespace {
double magnitude(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}
}  // namespace

double DataSpec::b_f_magnitude() const { return magnitude(b_f); }
double DataSpec::b_s_magnitude() const { return magnitude(b_s); }
double DataSpec::traction_magnitude() const {
  return traction_normal ? std::abs(*traction_normal) : magnitude(traction_vector);
}

Mesh RunConfig::build_mesh() const {
  if (mesh.generator == "unit_square") return generate_unit_square(mesh.n);
  if (mesh.generator == "unit_ball") return generate_unit_ball(mesh.n, mesh.dim);
  return load_mesh(mesh.file.string());
}

RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, std::string("invalid JSON: ") + e.what());
  }
  const Section top(root, "");
  RunConfig cfg;

  // Mesh.
  if (top.has("mesh")) {
    const Section m = top.section("mesh");
    if (m.has("file")) {
      cfg.mesh.generator = "file";
      cfg.mesh.file = m.string("file", "");
      if (cfg.mesh.file.is_relative() && !base_dir.empty()) cfg.mesh.file = base_dir / cfg.mesh.file;
      if (!std::filesystem::exists(cfg.mesh.file)) fail(m.at("file"), "mesh file not found: " + cfg.mesh.file.string());
      std::ifstream in(cfg.mesh.file);
      int dim = 0;
      in >> dim;
      cfg.mesh.dim = dim;
    } else {
      cfg.mesh.generator = m.string("generator", "unit_square");
      if (cfg.mesh.generator == "unit_square") {
        cfg.mesh.n = m.integer("n", 8);
        cfg.mesh.dim = 2;
        if (cfg.mesh.n < 1) fail(m.at("n"), "must be >= 1");
      } else if (cfg.mesh.generator == "unit_ball") {
        cfg.mesh.n = m.integer("level", 2);
        cfg.mesh.dim = m.integer("dim", 3);
        if (cfg.mesh.n < 0) fail(m.at("level"), "must be >= 0");
        if (cfg.mesh.dim != 2 && cfg.mesh.dim != 3) fail(m.at("dim"), "must be 2 or 3");
      } else {
        fail(m.at("generator"), "unknown generator '" + cfg.mesh.generator + "' (unit_square, unit_ball)");
      }
    }
  }
  const int dim = cfg.mesh.dim;

  const std::string pairing = top.string("pairing", "taylor_hood");
  if (pairing == "taylor_hood") {
    cfg.pairing = Pairing::TaylorHood;
  } else if (pairing == "equal_order") {
    cfg.pairing = Pairing::EqualOrder;
  } else {
    fail("/pairing", "expected taylor_hood or equal_order");
  }

  // Parameters: exactly one of nondim / physical.
  if (top.has("nondim") == top.has("physical")) {
    fail("/nondim", "provide exactly one of 'nondim' and 'physical'");
  }
  try {
    if (top.has("nondim")) {
      const Section n = top.section("nondim");
      cfg.ndp.lambda = n.number("lambda", 0.0);
      if (n.has("rho_t")) {
        // Grouped form: elastic number, Poisson ratio and transmural number.
        const double rho_t = n.number("rho_t");
        const double nu_p = n.number("nu_p");
        if (nu_p == 0.5) throw Error(ErrorCode::PoissonRatioSingular, "nu_p = 0.5 makes alpha2 singular");
        const double alpha_t = n.number("alpha_t");
        cfg.ndp.alpha1 = rho_t / (2.0 * (1.0 + nu_p));
        cfg.ndp.alpha2 = nu_p * rho_t / ((1.0 + nu_p) * (1.0 - 2.0 * nu_p));
        cfg.ndp.a0 = alpha_t * alpha_t * (1.0 + n.number("LrAr", 0.0));
      } else {
        cfg.ndp.alpha1 = n.number("alpha1");
        cfg.ndp.alpha2 = n.number("alpha2");
        cfg.ndp.a0 = n.number("a0");
      }
      cfg.ndp.Da = n.number("Da");
      cfg.ndp.phi_f = n.number("phi_f");
      cfg.ndp.phi_s = n.number("phi_s", 1.0 - cfg.ndp.phi_f);
    } else {
      const Section p = top.section("physical");
      PhysicalParams pp;
      pp.mu_f = p.number("mu_f");
      pp.lambda_f = p.number("lambda_f", 0.0);
      pp.young_Y = p.number("young_Y");
      pp.nu_p = p.number("nu_p");
      pp.rho_f = p.number("rho_f");
      pp.R = p.number("R");
      pp.P_F = p.number("P_F", 0.0);
      pp.L_p = p.number("L_p");
      pp.AoverV = p.number("AoverV");
      pp.LrAr = p.number("LrAr");
      pp.K_d = p.number("K_d");
      cfg.ndp = derive_nondimensional(pp, p.number("phi_f"));
    }
    cfg.param_warnings = cfg.ndp.validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    fail(top.has("nondim") ? "/nondim" : "/physical", e.what());
  }

  if (top.has("constants")) {
    const Section c = top.section("constants");
    cfg.constants.c_k = c.number("c_k", cfg.constants.c_k);
    cfg.constants.c_p = c.number("c_p", cfg.constants.c_p);
    cfg.constants.c_t = c.number("c_t", cfg.constants.c_t);
    cfg.constants.c_s = c.number("c_s", cfg.constants.c_s);
    require_positive(c, "c_k", cfg.constants.c_k);
    require_positive(c, "c_p", cfg.constants.c_p);
    require_positive(c, "c_t", cfg.constants.c_t);
    require_positive(c, "c_s", cfg.constants.c_s);
  }

  if (top.has("resistivity")) {
    cfg.model = parse_model(top.section("resistivity"), dim);
  } else {
    cfg.model = std::make_shared<const ResistivityModel>(
        ResistivityModel::constant(SmallMatrix::Identity(dim, dim)));
  }

  // Structural constants default to what the model declares.
  const DeclaredBounds db = cfg.model->declared_bounds();
  cfg.model_constants.k1 = db.k1.value_or(std::nan(""));
  cfg.model_constants.k2 = db.k2.value_or(std::nan(""));
  cfg.model_constants.k_L = db.k_L.value_or(0.0);
  cfg.model_constants.k0 = db.k0.value_or(0.0);
  if (const auto* da = std::get_if<ResistivityModel::DilatationAffine>(&cfg.model->variant())) {
    cfg.model_constants.gamma2 = da->gamma2;
  }
  if (top.has("model_constants")) {
    const Section mc = top.section("model_constants");
    cfg.model_constants.k1 = mc.number("k1", cfg.model_constants.k1);
    cfg.model_constants.k2 = mc.number("k2", cfg.model_constants.k2);
    cfg.model_constants.k_L = mc.number("k_L", cfg.model_constants.k_L);
    cfg.model_constants.k0 = mc.number("k0", cfg.model_constants.k0);
    cfg.model_constants.gamma2 = mc.number("gamma2", cfg.model_constants.gamma2);
  }

  if (top.has("data")) cfg.data = parse_data(top.section("data"), dim);

  if (top.has("domain")) {
    const Section d = top.section("domain");
    if (d.has("volume")) {
      cfg.domain_volume = d.number("volume");
      require_positive(d, "volume", *cfg.domain_volume);
    }
    if (d.has("boundary_area")) {
      cfg.domain_boundary = d.number("boundary_area");
      require_positive(d, "boundary_area", *cfg.domain_boundary);
    }
  }

  if (top.has("solver")) {
    const Section s = top.section("solver");
    cfg.picard.tol = s.number("tol", 1e-8);
    cfg.picard.max_iter = s.integer("max_iter", 50);
    cfg.picard.relaxation = s.number("relaxation", 1.0);
    cfg.picard.linear.rtol = s.number("rtol", 1e-10);
    require_positive(s, "tol", cfg.picard.tol);
    if (cfg.picard.max_iter < 1) fail(s.at("max_iter"), "must be >= 1");
    if (!(cfg.picard.relaxation > 0.0 && cfg.picard.relaxation <= 1.0)) fail(s.at("relaxation"), "must be in (0, 1]");
    const std::string linear = s.string("linear", "sparse_lu");
    if (linear == "sparse_lu") {
      cfg.picard.linear.method = LinearSolverOptions::Method::SparseLU;
    } else if (linear == "bicgstab") {
      cfg.picard.linear.method = LinearSolverOptions::Method::BiCGSTAB;
    } else {
      fail(s.at("linear"), "expected sparse_lu or bicgstab");
    }
    cfg.picard_case = s.string("case", "a");
    if (cfg.picard_case != "a" && cfg.picard_case != "b") fail(s.at("case"), "expected 'a' or 'b'");
    cfg.m_schedule = s.list<double>("m_schedule");
    for (std::size_t i = 1; i < cfg.m_schedule.size(); ++i) {
      if (!(cfg.m_schedule[i] > cfg.m_schedule[i - 1])) fail(s.at("m_schedule"), "must be increasing");
    }
  }
  if (cfg.m_schedule.empty()) cfg.m_schedule = default_m_schedule(db.k2);

  if (top.has("mms")) {
    cfg.mms_levels = top.section("mms").list<int>("levels");
    if (cfg.mms_levels.size() < 3) fail("/mms/levels", "needs at least 3 levels");
  }
  if (top.has("coercivity")) {
    cfg.coercivity_samples = top.section("coercivity").integer("samples", 100);
    if (cfg.coercivity_samples < 1) fail("/coercivity/samples", "must be >= 1");
  }
  if (top.has("dependence")) {
    const Section d = top.section("dependence");
    const std::string which = d.string("case", "frozen");
    if (which == "frozen") {
      cfg.dependence.which = DependenceCase::Frozen;
    } else if (which == "a") {
      cfg.dependence.which = DependenceCase::CaseA;
    } else if (which == "b") {
      cfg.dependence.which = DependenceCase::CaseB;
    } else {
      fail(d.at("case"), "expected frozen, a or b");
    }
    cfg.dependence.perturb = d.string("perturb", "b_f");
    if (cfg.dependence.perturb != "b_f" && cfg.dependence.perturb != "b_s" &&
        cfg.dependence.perturb != "traction" && cfg.dependence.perturb != "source") {
      fail(d.at("perturb"), "expected b_f, b_s, traction or source");
    }
    cfg.dependence.direction = d.list<double>("direction");
    const auto eps = d.list<double>("epsilons");
    if (!eps.empty()) cfg.dependence.epsilons = eps;
  }

  cfg.output_dir = top.string("output", "output");
  if (cfg.output_dir.is_relative() && !base_dir.empty()) cfg.output_dir = base_dir / cfg.output_dir;
  if (top.has("seed")) {
    const json& s = root.at("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0)) {
      fail("/seed", "expected a non-negative integer");
    }
    cfg.seed = s.get<std::uint64_t>();
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

}  // namespace biphasic::app
