#pragma once

// Run configuration: a single JSON document with nested sections.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <biphasic/assembly.hpp>
#include <biphasic/mesh.hpp>
#include <biphasic/params.hpp>
#include <biphasic/resistivity.hpp>
#include <biphasic/solver.hpp>
#include <biphasic/verify.hpp>

namespace biphasic::app {

struct MeshSpec {
  std::string generator = "unit_square";  // unit_square | unit_ball | file
  int n = 8;                              // square subdivisions or ball level
  int dim = 2;
  std::filesystem::path file;
};

/// Spatially constant data; traction is either a normal magnitude or a vector.
struct DataSpec {
  std::vector<double> b_f;
  std::vector<double> b_s;
  std::optional<double> traction_normal;
  std::vector<double> traction_vector;
  std::optional<double> source;  // empty: the constant a0

  ProblemData to_problem_data() const;
  /// Magnitudes used when norms are taken from domain measures alone.
  double b_f_magnitude() const;
  double b_s_magnitude() const;
  double traction_magnitude() const;
};

struct DependenceSpec {
  DependenceCase which = DependenceCase::Frozen;
  std::string perturb = "b_f";  // b_f | b_s | traction | source
  std::vector<double> direction;
  std::vector<double> epsilons{1e-2, 5e-3, 2.5e-3};
};

struct RunConfig {
  MeshSpec mesh;
  Pairing pairing = Pairing::TaylorHood;
  NondimParams ndp;
  std::vector<std::string> param_warnings;
  FunctionalConstants constants;
  std::shared_ptr<const ResistivityModel> model;
  ModelConstants model_constants;
  DataSpec data;
  /// Domain measures for check-params; taken from the mesh when absent.
  std::optional<double> domain_volume;
  std::optional<double> domain_boundary;

  std::string picard_case = "a";  // a | b
  PicardOptions picard;
  std::vector<double> m_schedule;
  std::vector<int> mms_levels{8, 16, 32};
  int coercivity_samples = 100;
  DependenceSpec dependence;

  std::filesystem::path output_dir = "output";
  std::uint64_t seed = 0;

  Mesh build_mesh() const;
};

/// Throws Error(ConfigError) with the offending field path in the message.
RunConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

}  // namespace biphasic::app
