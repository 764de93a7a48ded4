#include <benchmark/benchmark.h>

#include "culog/units.hpp"

using namespace culog;

static void BM_eta(benchmark::State& state) {
    AbelianField F = AbelianField::max_real_cyclotomic(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(eta(F));
}
BENCHMARK(BM_eta)->Arg(40)->Arg(104)->Arg(200);

static void BM_iwasawa_log(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(iwasawa_log(Int(1234567), 3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_iwasawa_log)->Arg(8)->Arg(16)->Arg(32);

static void BM_snf(benchmark::State& state) {
    long n = state.range(0);
    ZMat A = ZMat::zero(n, n);
    uint64_t x = 88172645463325252ULL;
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            A.a[i][j] = Int(static_cast<long>(x % 6561));
        }
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(A, 3, 8));
}
BENCHMARK(BM_snf)->Arg(8)->Arg(16)->Arg(32);

BENCHMARK_MAIN();
