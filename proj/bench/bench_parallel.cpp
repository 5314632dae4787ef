// OpenMP kernels against the serial reference implementations.

#include <benchmark/benchmark.h>

#include "scale/data.hpp"
#include "scale/graph.hpp"
#include "scale/support.hpp"
#include "scale/witness.hpp"
#include "scale_reference.hpp"

using namespace scale;

namespace {

SyntheticData instance(std::size_t per_class) {
    SyntheticSpec spec;
    spec.cap_centers = great_circle_centers(4, 0.8, 6);
    spec.cap_radius = 0.2;
    spec.points_per_class = per_class;
    spec.seed = 11;
    return generate_synthetic(spec);
}

void BM_AngleMatrix(benchmark::State& state) {
    const SyntheticData d = instance(static_cast<std::size_t>(state.range(0)) / 4);
    for (auto _ : state) benchmark::DoNotOptimize(angle_matrix(d.points));
}

void BM_AngleMatrixSerial(benchmark::State& state) {
    const SyntheticData d = instance(static_cast<std::size_t>(state.range(0)) / 4);
    for (auto _ : state) benchmark::DoNotOptimize(reference::angle_matrix_serial(d.points));
}

void BM_FValues(benchmark::State& state) {
    const SyntheticData d = instance(static_cast<std::size_t>(state.range(0)) / 4);
    const ChebyshevKernel kernel(32);
    for (auto _ : state) benchmark::DoNotOptimize(f_values(d.points, kernel, FEvaluation::streamed));
}

void BM_FValuesSerial(benchmark::State& state) {
    const SyntheticData d = instance(static_cast<std::size_t>(state.range(0)) / 4);
    for (auto _ : state) benchmark::DoNotOptimize(reference::f_values_serial(d.points, 32));
}

void BM_Components(benchmark::State& state) {
    const SyntheticData d = instance(static_cast<std::size_t>(state.range(0)) / 4);
    const AngleMatrix angles = angle_matrix(d.points);
    const std::vector<bool> mask(d.points.size(), true);
    for (auto _ : state) benchmark::DoNotOptimize(build_components(angles, mask, 0.15));
}

void BM_ComponentsSerial(benchmark::State& state) {
    const SyntheticData d = instance(static_cast<std::size_t>(state.range(0)) / 4);
    const AngleMatrix angles = angle_matrix(d.points);
    const std::vector<bool> mask(d.points.size(), true);
    for (auto _ : state) benchmark::DoNotOptimize(reference::components_oracle(angles, mask, 0.15));
}

// Every other point is an anchor, the rest are classified.
LabelState half_labeled(const SyntheticData& d) {
    LabelState st;
    st.predicted = d.labels;
    for (std::size_t i = 1; i < d.labels.size(); i += 2) {
        st.predicted[i] = 0;
        st.uncertain.push_back(i);
    }
    return st;
}

void BM_Witness(benchmark::State& state) {
    const SyntheticData d = instance(static_cast<std::size_t>(state.range(0)) / 4);
    const LabelState st = half_labeled(d);
    for (auto _ : state) benchmark::DoNotOptimize(classify_uncertain(st, d.points, 32, 5));
}

void BM_WitnessSerial(benchmark::State& state) {
    const SyntheticData d = instance(static_cast<std::size_t>(state.range(0)) / 4);
    const LabelState st = half_labeled(d);
    const WitnessModel model = WitnessModel::from_labels(d.points, st.predicted, 32, 5);
    for (auto _ : state) benchmark::DoNotOptimize(reference::witness_labels_serial(d.points, st.uncertain, model));
}

}  // namespace

BENCHMARK(BM_AngleMatrix)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AngleMatrixSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FValues)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FValuesSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Components)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ComponentsSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Witness)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_WitnessSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
