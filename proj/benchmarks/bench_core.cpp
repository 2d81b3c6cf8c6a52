#include <benchmark/benchmark.h>

#include "plate/stepper.hpp"

using namespace plate;

namespace {

SimulationConfig bench_config() {
  SimulationConfig c;
  c.lambda = 1.0;
  c.p = 5.0;
  c.a1 = 5.0;
  c.a2 = 0.4;
  c.theta = 0.5;
  c.vartheta = 0.3;
  c.s_delay = 5.0;
  c.N_nodes = 250;
  c.M_xi = 400;
  c.dt = 1e-3;
  return c;
}

void BM_Assemble(benchmark::State& state) {
  const Mesh mesh{1.0, static_cast<int>(state.range(0))};
  for (auto _ : state) {
    FemSystem sys = FemSystem::assemble(mesh);
    benchmark::DoNotOptimize(sys.mass().raw().data());
  }
}
BENCHMARK(BM_Assemble)->Arg(250)->Arg(1000);

void BM_NonlinearForce(benchmark::State& state) {
  const FemSystem sys = FemSystem::assemble(Mesh{1.0, static_cast<int>(state.range(0))});
  const NodalField q = sys.interpolate(
      [](double x) { return x * x * (1 - x) * (1 - x); },
      [](double x) { return 2 * x * (1 - x) * (1 - 2 * x); });
  for (auto _ : state) {
    NodalField f = sys.nonlinear_force(q, 5.0);
    benchmark::DoNotOptimize(f.data());
  }
}
BENCHMARK(BM_NonlinearForce)->Arg(250);

void BM_BandedSolve(benchmark::State& state) {
  const FemSystem sys = FemSystem::assemble(Mesh{1.0, static_cast<int>(state.range(0))});
  BandedCholesky chol;
  chol.factor(sys.mass());
  std::vector<double> rhs(sys.n_free(), 1.0);
  for (auto _ : state) {
    std::vector<double> x = chol.solve(rhs);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_BandedSolve)->Arg(250)->Arg(1000);

void BM_AuxUpdate(benchmark::State& state) {
  const XiGrid grid = build_grid(0.5, 200.0, static_cast<int>(state.range(0)));
  DiffusiveField field(grid.M_xi, 496);
  const NodalField v(496, 0.01);
  for (auto _ : state) {
    update_aux(grid, field, 0.3, 1e-3, v);
    benchmark::DoNotOptimize(field.data.data());
  }
}
BENCHMARK(BM_AuxUpdate)->Arg(400)->Arg(1600);

void BM_FullStep(benchmark::State& state) {
  SimulationConfig c = bench_config();
  Simulation sim(c);
  for (auto _ : state) {
    if (sim.step() != StepStatus::Ok) state.SkipWithError("step failed");
    benchmark::DoNotOptimize(sim.state().q.data());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_FullStep);

void BM_EnergyRecord(benchmark::State& state) {
  SimulationConfig c = bench_config();
  Simulation sim(c);
  sim.step();
  for (auto _ : state) {
    EnergyRecord r = sim.energy();
    benchmark::DoNotOptimize(&r);
  }
}
BENCHMARK(BM_EnergyRecord);

}  // namespace

BENCHMARK_MAIN();
