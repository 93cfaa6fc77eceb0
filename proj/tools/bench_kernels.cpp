// Serial reference vs OpenMP kernels: Gram assembly and matrix-vector products.

#include <benchmark/benchmark.h>

#include "polysieve/gram.hpp"
#include "polysieve/kernels.hpp"

namespace ps = polysieve;

namespace {

const ps::FareyWindow& window() {
    static const auto w = ps::FareyWindow::build(ps::QuadPoly::make(2, 3, 1), 1, 12);
    return w;
}

template <bool Parallel>
void bm_farey_gram(benchmark::State& state) {
    const auto& w = window();
    const ps::i64 N = state.range(0);
    std::vector<ps::Complex> out(w.size() * w.size());
    for (auto _ : state) {
        if constexpr (Parallel) ps::kernels::parallel::assemble_farey_gram(w.fractions(), N, out);
        else ps::kernels::serial::assemble_farey_gram(w.fractions(), N, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(out.size()));
}

template <bool Parallel>
void bm_time_gram(benchmark::State& state) {
    const auto& w = window();
    const ps::i64 N = state.range(0);
    std::vector<ps::Complex> out(static_cast<std::size_t>(N * N));
    for (auto _ : state) {
        if constexpr (Parallel) ps::kernels::parallel::assemble_time_gram(w.fractions(), N, out);
        else ps::kernels::serial::assemble_time_gram(w.fractions(), N, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(out.size()));
}

template <bool Parallel>
void bm_matvec(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<ps::Complex> m(n * n);
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = ps::e_frac(static_cast<ps::i64>(i % 997), 997);
    const auto x = ps::seeded_unit_vector(n, 7);
    std::vector<ps::Complex> y(n);
    for (auto _ : state) {
        if constexpr (Parallel) ps::kernels::parallel::matvec(m, n, x, y);
        else ps::kernels::serial::matvec(m, n, x, y);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}

void bm_norm(benchmark::State& state) {
    const auto& w = window();
    const auto g = ps::build_gram(w, state.range(0));
    ps::NormOptions opt;
    opt.parallel = state.range(1) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(ps::largest_eigenpair(g, opt).value);
}

} // namespace

BENCHMARK(bm_farey_gram<false>)->Arg(64)->Arg(4096);
BENCHMARK(bm_farey_gram<true>)->Arg(64)->Arg(4096);
BENCHMARK(bm_time_gram<false>)->Arg(256)->Arg(1024);
BENCHMARK(bm_time_gram<true>)->Arg(256)->Arg(1024);
BENCHMARK(bm_matvec<false>)->Arg(512)->Arg(2048);
BENCHMARK(bm_matvec<true>)->Arg(512)->Arg(2048);
BENCHMARK(bm_norm)->Args({1024, 0})->Args({1024, 1});

BENCHMARK_MAIN();
