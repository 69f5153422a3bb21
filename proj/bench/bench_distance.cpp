#include "cellshape/distance.hpp"
#include "cellshape/synthetic.hpp"
#include "cellshape/templates.hpp"

#include <benchmark/benchmark.h>

using namespace cellshape;

namespace {

std::vector<NormalizedCurve> curves(std::size_t count) {
    std::mt19937_64 rng(7);
    std::vector<NormalizedCurve> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(normalize({"c" + std::to_string(i), synthetic::random_smooth_curve(rng), {}}));
    }
    return out;
}

std::vector<std::string> ids(const std::vector<NormalizedCurve>& cs) {
    std::vector<std::string> out;
    for (const auto& c : cs) out.push_back(c.meta.source_id);
    return out;
}

DistanceOptions opts(Space s, Method m) {
    DistanceOptions o;
    o.space = s;
    o.method = m;
    return o;
}

void BM_Matrix(benchmark::State& state, bool parallel, Space space, Method method) {
    const auto cs = curves(static_cast<std::size_t>(state.range(0)));
    const auto reps = prepare_all(cs, space);
    const auto names = ids(cs);
    const auto o = opts(space, method);
    for (auto _ : state) {
        auto dm = parallel ? distance_matrix(reps, names, o) : distance_matrix_serial(reps, names, o);
        benchmark::DoNotOptimize(dm.d.data());
    }
    state.SetComplexityN(state.range(0));
}

void BM_Templates(benchmark::State& state, bool parallel) {
    const auto cs = curves(static_cast<std::size_t>(state.range(0)));
    const auto t = make_templates();
    const auto o = opts(Space::S2, Method::Fixed);
    for (auto _ : state) {
        auto f = parallel ? template_features(cs, t, o) : template_features_serial(cs, t, o);
        benchmark::DoNotOptimize(f.data());
    }
    state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Matrix, s2_fixed_serial, false, Space::S2, Method::Fixed)->RangeMultiplier(2)->Range(50, 200)->Complexity();
BENCHMARK_CAPTURE(BM_Matrix, s2_fixed_parallel, true, Space::S2, Method::Fixed)->RangeMultiplier(2)->Range(50, 200)->Complexity();
BENCHMARK_CAPTURE(BM_Matrix, s1_fixed_serial, false, Space::S1, Method::Fixed)->RangeMultiplier(2)->Range(50, 200)->Complexity();
BENCHMARK_CAPTURE(BM_Matrix, s1_fixed_parallel, true, Space::S1, Method::Fixed)->RangeMultiplier(2)->Range(50, 200)->Complexity();
BENCHMARK_CAPTURE(BM_Matrix, s2_reparam_serial, false, Space::S2, Method::Reparam)->Arg(50);
BENCHMARK_CAPTURE(BM_Matrix, s2_reparam_parallel, true, Space::S2, Method::Reparam)->Arg(50);
BENCHMARK_CAPTURE(BM_Templates, serial, false)->RangeMultiplier(2)->Range(50, 200)->Complexity();
BENCHMARK_CAPTURE(BM_Templates, parallel, true)->RangeMultiplier(2)->Range(50, 200)->Complexity();

BENCHMARK_MAIN();
