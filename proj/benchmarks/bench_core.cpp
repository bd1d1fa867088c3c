#include <benchmark/benchmark.h>

#include "holocurve/flags.hpp"

using namespace holocurve;

namespace {

ExtendedCurve hardy_curve(int N) {
    Frame f{{section_from_kernel(DiagonalKernelSpec::hardy(1, N))}};
    return {f, f};
}

ExtendedCurve da_curve(int N) {
    Frame f{{section_from_kernel(DiagonalKernelSpec::drury_arveson(2, N))}};
    return {f, f};
}

void BM_jet_mul_m2(benchmark::State& state) {
    int cap = static_cast<int>(state.range(0));
    ExtendedCurve c = da_curve(8);
    Point z{Complex(0.3, 0.1), Complex(-0.2, 0.25)};
    WirtingerJet I = curve_eval_jet(c, z, cap, cap);
    for (auto _ : state) benchmark::DoNotOptimize(I * I);
}
BENCHMARK(BM_jet_mul_m2)->Arg(2)->Arg(3)->Arg(4);

void BM_jet_invert(benchmark::State& state) {
    Frame f = jet_frame(section_from_kernel(DiagonalKernelSpec::hardy(1, 60)), 1);
    WirtingerJet H = gram(f, f, Point{Complex(0.3, 0.2)}, 4, 4);
    for (auto _ : state) benchmark::DoNotOptimize(jet_invert(H));
}
BENCHMARK(BM_jet_invert);

void BM_curvature_grid_point(benchmark::State& state) {
    Frame f{{section_from_kernel(DiagonalKernelSpec::hardy(1, 60))}};
    Point z{Complex(0.35, 0.2)};
    for (auto _ : state)
        benchmark::DoNotOptimize(classical_curvature(gram(f, f, z, 1, 1)).value());
}
BENCHMARK(BM_curvature_grid_point);

void BM_covariant_plan_m1(benchmark::State& state) {
    ExtendedCurve c = hardy_curve(60);
    Point z{Complex(0.3, 0.1)};
    CurveJets jets = make_curve_jets(c, z, 3, 3);
    WirtingerJet K = extended_curvature(jets);
    StepApply step = extended_step(jets);
    DerivPlan plan = DerivPlan::canonical(MultiIndex({2}), MultiIndex({2}));
    for (auto _ : state) benchmark::DoNotOptimize(apply_plan_sequential(K, plan, step));
}
BENCHMARK(BM_covariant_plan_m1);

void BM_covariant_plan_m2(benchmark::State& state) {
    ExtendedCurve c = da_curve(8);
    Point z{Complex(0.3, 0.1), Complex(-0.2, 0.25)};
    CurveJets jets = make_curve_jets(c, z, 3, 3);
    WirtingerJet K = extended_curvature(jets);
    StepApply step = extended_step(jets);
    DerivPlan plan = DerivPlan::canonical(MultiIndex({1, 1}), MultiIndex({1, 1}));
    for (auto _ : state) benchmark::DoNotOptimize(apply_plan_sequential(K, plan, step));
}
BENCHMARK(BM_covariant_plan_m2);

void BM_fb2_projection(benchmark::State& state) {
    Fb2Model mdl{DiagonalKernelSpec::hardy(1, 60), DiagonalKernelSpec::hardy(1, 60),
                 Complex(1, 0)};
    for (auto _ : state) benchmark::DoNotOptimize(fb2_projection(mdl, Complex(0.3, 0.2)));
}
BENCHMARK(BM_fb2_projection);

}  // namespace

BENCHMARK_MAIN();
