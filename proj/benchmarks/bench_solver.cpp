#include <memory>

#include <benchmark/benchmark.h>

#include <biphasic/params.hpp>
#include <biphasic/solver.hpp>
#include <biphasic/verify.hpp>

namespace {

using namespace biphasic;

const NondimParams kParams{1.0, 10.0, 10.0, 1.0, 1.0, 0.6, 0.4};

ProblemData traction() {
  ProblemData d;
  d.traction = normal_traction(1.0);
  return d;
}

MixedSpaces square_spaces(int n, Pairing pairing = Pairing::TaylorHood) {
  return make_spaces(std::make_shared<const Mesh>(generate_unit_square(n)), pairing);
}

void BM_AssembleSquare(benchmark::State& state) {
  const MixedSpaces s = square_spaces(static_cast<int>(state.range(0)));
  const ResistivityField rf = uniform_resistivity(s, SmallMatrix::Identity(2, 2));
  const ProblemData d = traction();
  for (auto _ : state) benchmark::DoNotOptimize(assemble(s, kParams, rf, d));
  state.counters["dofs"] = s.total_dofs();
}
BENCHMARK(BM_AssembleSquare)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_FrozenResistivity(benchmark::State& state) {
  const MixedSpaces s = square_spaces(32);
  const auto model = ResistivityModel::displacement_anisotropic(1.0, 0.5, 0.1, 2);
  const FieldFunction u(s.displacement, Eigen::VectorXd::Constant(s.displacement->num_dofs(), 0.1));
  for (auto _ : state) benchmark::DoNotOptimize(frozen_resistivity(s, model, &u));
}
BENCHMARK(BM_FrozenResistivity)->Unit(benchmark::kMillisecond);

void BM_SolveSquare(benchmark::State& state) {
  const MixedSpaces s = square_spaces(static_cast<int>(state.range(0)));
  const BlockSystem sys = assemble(s, kParams, uniform_resistivity(s, SmallMatrix::Identity(2, 2)), traction());
  LinearSolverOptions opts;
  opts.method = state.range(1) == 0 ? LinearSolverOptions::Method::SparseLU : LinearSolverOptions::Method::BiCGSTAB;
  for (auto _ : state) benchmark::DoNotOptimize(solve_system(sys, opts));
  state.counters["dofs"] = sys.size();
}
BENCHMARK(BM_SolveSquare)->Args({16, 0})->Args({32, 0})->Args({16, 1})->Args({32, 1})->Unit(benchmark::kMillisecond);

void BM_PicardCaseA(benchmark::State& state) {
  const MixedSpaces s = square_spaces(16);
  const auto model = ResistivityModel::displacement_anisotropic(0.02, 0.02, 1.0, 2);
  const ProblemData d = traction();
  for (auto _ : state) benchmark::DoNotOptimize(picard_case_a(s, kParams, d, model));
}
BENCHMARK(BM_PicardCaseA)->Unit(benchmark::kMillisecond);

void BM_PicardCaseBBall(benchmark::State& state) {
  const MixedSpaces s = make_spaces(std::make_shared<const Mesh>(generate_unit_ball(1, 3)));
  const auto model = ResistivityModel::dilatation_affine(1.0, 2e-3, 3);
  const ProblemData d = traction();
  for (auto _ : state) benchmark::DoNotOptimize(picard_case_b(s, kParams, d, model));
  state.counters["dofs"] = s.total_dofs();
}
BENCHMARK(BM_PicardCaseBBall)->Unit(benchmark::kMillisecond);

void BM_CheckTheorems(benchmark::State& state) {
  const DataNorms dn = DataNorms::from_constants(0.0, 0.0, 1.0, 2.0, 4.18879, 12.5664);
  for (auto _ : state) benchmark::DoNotOptimize(check_theorems(kParams, {}, dn, {0.5, 1.4, 2e-3, 1.0, 2e-3}));
}
BENCHMARK(BM_CheckTheorems);

}  // namespace

BENCHMARK_MAIN();
