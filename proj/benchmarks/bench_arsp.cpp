#include <benchmark/benchmark.h>

#include <random>

#include "arsp/agg_rtree.hpp"
#include "arsp/baselines.hpp"
#include "arsp/bnb.hpp"
#include "arsp/datagen.hpp"
#include "arsp/dual2d.hpp"
#include "arsp/eclipse.hpp"
#include "arsp/kdtt.hpp"

using namespace arsp;

namespace {

UncertainDataset make_dataset(std::size_t m, int cnt, int d) {
    GenParams p;
    p.dist = Distribution::IND;
    p.m = m;
    p.cnt = cnt;
    p.d = d;
    p.l = 0.2;
    p.seed = 12345;
    return gen_dataset(p);
}

VertexSet make_wr_vertices(int d) {
    return preference_vertices(gen_constraints(ConstraintKind::WR, d, d - 1, 0));
}

RatioBox make_box(int d) {
    RatioBox rb;
    rb.dim = d;
    for (int i = 0; i + 1 < d; ++i) rb.ranges.push_back({0.5, 2.0});
    return rb;
}

void BM_FDominanceRatio(benchmark::State& state) {
    const int d = int(state.range(0));
    const auto rb = make_box(d);
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> t(d), s(d);
    for (auto& x : t) x = u(gen);
    for (auto& x : s) x = u(gen);
    for (auto _ : state) benchmark::DoNotOptimize(f_dominates_ratio(rb, t, s));
}
BENCHMARK(BM_FDominanceRatio)->Arg(2)->Arg(4)->Arg(6);

void BM_FDominanceVertices(benchmark::State& state) {
    const int d = int(state.range(0));
    const auto V = preference_vertices(ratio_box_to_constraints(make_box(d)));
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> t(d), s(d);
    for (auto& x : t) x = u(gen);
    for (auto& x : s) x = u(gen);
    for (auto _ : state) benchmark::DoNotOptimize(f_dominates_vertices(V, t, s));
}
BENCHMARK(BM_FDominanceVertices)->Arg(2)->Arg(4)->Arg(6);

void BM_VertexEnumeration(benchmark::State& state) {
    const auto cs = gen_constraints(ConstraintKind::IM, int(state.range(0)), 6, 77);
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_vertices(cs));
}
BENCHMARK(BM_VertexEnumeration)->Arg(3)->Arg(4)->Arg(5);

void BM_AggWindowSum(benchmark::State& state) {
    const int d = 4;
    AggRTree tree(d);
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        std::vector<double> p(d);
        for (auto& x : p) x = u(gen);
        tree.insert(p, 0.5 * u(gen));
    }
    std::vector<double> hi(d, 0.6);
    for (auto _ : state) benchmark::DoNotOptimize(tree.dominated_sum(hi));
}
BENCHMARK(BM_AggWindowSum);

void BM_Loop(benchmark::State& state) {
    const auto ds = make_dataset(std::size_t(state.range(0)), 10, 3);
    const auto V = make_wr_vertices(3);
    for (auto _ : state) benchmark::DoNotOptimize(loop_arsp(ds, V));
}
BENCHMARK(BM_Loop)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_KdttFused(benchmark::State& state) {
    const auto ds = make_dataset(std::size_t(state.range(0)), 10, 3);
    const auto V = make_wr_vertices(3);
    for (auto _ : state) benchmark::DoNotOptimize(kdtt_arsp(ds, V));
}
BENCHMARK(BM_KdttFused)->Arg(250)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_QdttFused(benchmark::State& state) {
    const auto ds = make_dataset(std::size_t(state.range(0)), 10, 3);
    const auto V = make_wr_vertices(3);
    KdttOptions opt;
    opt.variant = KdttOptions::Variant::quad;
    for (auto _ : state) benchmark::DoNotOptimize(kdtt_arsp(ds, V, opt));
}
BENCHMARK(BM_QdttFused)->Arg(250)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Bnb(benchmark::State& state) {
    const auto ds = make_dataset(std::size_t(state.range(0)), 10, 3);
    const auto V = make_wr_vertices(3);
    for (auto _ : state) benchmark::DoNotOptimize(bnb_arsp(ds, V));
}
BENCHMARK(BM_Bnb)->Arg(250)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_Dual2dSingleton(benchmark::State& state) {
    const auto ds = make_dataset(std::size_t(state.range(0)), 1, 2);
    const auto rb = make_box(2);
    const auto index = dual2d_preprocess(ds, AngularIndex::Profile::singleton);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            dual2d_arsp(ds, rb, AngularIndex::Profile::singleton, &index));
}
BENCHMARK(BM_Dual2dSingleton)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_Eclipse(benchmark::State& state) {
    const auto ds = make_dataset(std::size_t(state.range(0)), 1, 3);
    PointSet pts;
    for (const auto& obj : ds.objects) pts.push_back(obj.instances[0].coords);
    RatioBox rb;
    rb.dim = 3;
    rb.ranges = {{0.36, 2.75}, {0.36, 2.75}};
    const bool pruned = state.range(1) != 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(pruned ? eclipse_pruned(pts, rb) : eclipse_naive(pts, rb));
}
BENCHMARK(BM_Eclipse)
    ->Args({1 << 12, 0})
    ->Args({1 << 12, 1})
    ->Args({1 << 14, 0})
    ->Args({1 << 14, 1})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
