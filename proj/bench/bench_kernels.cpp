// Serial reference vs OpenMP kernels. Arg 0 = serial, 1 = parallel.
#include <benchmark/benchmark.h>

#include <random>

#include "wright/bounds.hpp"

using namespace wright;

namespace {

const RealInterval kAlpha(2.0);

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

struct Fixture {
    ChebyshevScheme scheme = build_scheme(10, kAlpha);
    SpectralPair lambda = *census_psa(scheme).unstable;
    ProblemData psa = make_problem(Kind::psa, kAlpha, lambda, &scheme, 50, 0.15);
    TaylorSeq2 xhat = recurse_coeffs(psa, 25);
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}

void BM_Conv(benchmark::State& st) {
    const TaylorSeq2& x = fx().xhat;
    for (auto _ : st) benchmark::DoNotOptimize(conv(x, x, 50, exec_of(st)));
}

void BM_DfBlock(benchmark::State& st) {
    for (auto _ : st) benchmark::DoNotOptimize(assemble_df_block(fx().psa, fx().xhat, 25, exec_of(st)));
}

void BM_MatmulPi(benchmark::State& st) {
    CMatrix df = assemble_df_block(fx().psa, fx().xhat, 25);
    Eigen::MatrixXcd abar = float_inverse(midpoint(df));
    for (auto _ : st) benchmark::DoNotOptimize(matmul_pi(abar, df, exec_of(st)));
}

void BM_Multipliers(benchmark::State& st) {
    const Fixture& f = fx();
    for (auto _ : st)
        benchmark::DoNotOptimize(
            multipliers(Kind::psa, f.lambda.plus.enclosure, f.lambda.minus.enclosure, &f.scheme, 50, exec_of(st)));
}

void BM_Sweep(benchmark::State& st) {
    const Fixture& f = fx();
    for (auto _ : st) benchmark::DoNotOptimize(invertibility_sweep(f.scheme, f.lambda, 820, std::nullopt, exec_of(st)));
}

}  // namespace

BENCHMARK(BM_Conv)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DfBlock)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatmulPi)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Multipliers)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Iterations(1)->Unit(benchmark::kSecond);

BENCHMARK_MAIN();
