// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "exactkit/lab.hpp"
#include "exactkit/rng.hpp"

using namespace exactkit;

namespace {

struct MembershipInput {
    std::unique_ptr<Skeleton> sk;
    SubfunctorData F;
    std::vector<ModuleMorphism> maps;
};

const MembershipInput& membership_input() {
    static MembershipInput in = [] {
        MembershipInput m;
        m.sk = build_skeleton({2, 3}, 4);
        auto fs = enumerate_subfunctors(*m.sk, false);
        m.F = fs[fs.size() / 2].F;
        auto objs = window_objects(m.sk->config(), 4);
        Rng rng(1);
        for (int k = 0; k < 2000; ++k)
            m.maps.push_back(random_morphism(rng, objs[rng.below(objs.size())], objs[rng.below(objs.size())]));
        return m;
    }();
    return in;
}

void BM_membership_serial(benchmark::State& st) {
    const auto& in = membership_input();
    for (auto _ : st) benchmark::DoNotOptimize(membership_serial(*in.sk, in.F, in.maps));
    st.SetItemsProcessed(st.iterations() * in.maps.size());
}

void BM_membership_parallel(benchmark::State& st) {
    const auto& in = membership_input();
    for (auto _ : st) benchmark::DoNotOptimize(membership_parallel(*in.sk, in.F, in.maps));
    st.SetItemsProcessed(st.iterations() * in.maps.size());
}

void BM_candidates_serial(benchmark::State& st) {
    auto sk = build_skeleton({2, 4}, 4);
    CandidateSpace space(*sk);
    for (auto _ : st) benchmark::DoNotOptimize(validate_candidates_serial(*sk, space));
    st.SetItemsProcessed(st.iterations() * space.size());
}

void BM_candidates_parallel(benchmark::State& st) {
    auto sk = build_skeleton({2, 4}, 4);
    CandidateSpace space(*sk);
    for (auto _ : st) benchmark::DoNotOptimize(validate_candidates_parallel(*sk, space));
    st.SetItemsProcessed(st.iterations() * space.size());
}

}  // namespace

BENCHMARK(BM_membership_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_membership_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_candidates_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_candidates_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
