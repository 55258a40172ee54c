#include <benchmark/benchmark.h>

#include "lorentz/dynamics.hpp"
#include "lorentz/environment.hpp"
#include "lorentz/estimate.hpp"
#include "lorentz/models.hpp"
#include "lorentz/prf.hpp"

namespace {

using namespace lorentz;

EnvironmentSpec mirror_spec(double p, std::uint64_t seed) {
    EnvironmentSpec spec;
    spec.model = ModelKind::Mirror;
    spec.p = p;
    spec.q = 0.5;
    spec.seed = seed;
    return spec;
}

void BM_MirrorAt(benchmark::State& state) {
    const Environment env(mirror_spec(0.5, 1));
    std::int64_t x = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(env.mirror_at(Vertex{x, -x}));
        ++x;
    }
}
BENCHMARK(BM_MirrorAt);

void BM_StepFreeFlight(benchmark::State& state) {
    const Environment env(mirror_spec(0.0, 1));
    RayState s{Vertex{0, 0}, Direction::East};
    for (auto _ : state) {
        s = step(env, s);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_StepFreeFlight);

void BM_StepMixedDensity(benchmark::State& state) {
    const Environment env(mirror_spec(0.5, 1));
    RayState s{Vertex{0, 0}, Direction::East};
    for (auto _ : state) {
        s = step(env, s);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_StepMixedDensity);

void BM_TraceFullDensityOrbits(benchmark::State& state) {
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    TraceOptions opts;
    opts.track_edges = false;
    for (auto _ : state) {
        EnvironmentSpec spec = mirror_spec(1.0, trial_seed(0, seed++));
        const Environment env(spec);
        const TraceResult tr =
            trace(env, initial_state(env), EscapeRegion::outside_box(25), opts);
        steps += tr.steps;
        benchmark::DoNotOptimize(tr.steps);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_TraceFullDensityOrbits);

void BM_RotatingTrace(benchmark::State& state) {
    std::uint64_t seed = 0;
    std::uint64_t steps = 0;
    TraceOptions opts;
    opts.track_edges = false;
    opts.max_steps = 200000;
    for (auto _ : state) {
        EnvironmentSpec spec = mirror_spec(1.0, trial_seed(7, seed++));
        spec.model = ModelKind::Rotating;
        const Environment env(spec);
        const TraceResult tr =
            trace(env, initial_state(env), EscapeRegion::outside_box(50), opts);
        steps += tr.steps;
        benchmark::DoNotOptimize(tr.steps);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_RotatingTrace);

void BM_ClopperPearsonUpper(benchmark::State& state) {
    std::uint64_t x = 31415;
    for (auto _ : state) {
        benchmark::DoNotOptimize(clopper_pearson_upper(x, 100000, 1e-3));
        x = (x + 9973) % 100000;
    }
}
BENCHMARK(BM_ClopperPearsonUpper);

}  // namespace

BENCHMARK_MAIN();
