// Serial reference against OpenMP kernel for each parallel hot path.

#include <benchmark/benchmark.h>

#include "stc/acceptance.hpp"

using namespace stc;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_VerifyIsomorphism(benchmark::State& state) {
    const auto alg = load_algebra_spec("q15_quartic");
    const IdealSpec I{parse_base_element(BaseRingKind::Gaussian, "1+i"), 1};
    const QuotientRing Q(alg, I);
    const IsoCertificate base = build_matrix_iso_s1(Q);
    VerifyOptions opts;
    opts.exec = exec_of(state);
    for (auto _ : state) {
        IsoCertificate cert = base;
        benchmark::DoNotOptimize(verify_isomorphism(cert, Q, opts));
    }
}

void BM_BruteForceIdeals(benchmark::State& state) {
    const auto alg = load_algebra_spec("gauss_over_Q_u5");
    const QuotientRing Q(alg, IdealSpec{BaseElement(BaseRingKind::Integers, 5), 1});
    for (auto _ : state) benchmark::DoNotOptimize(brute_force_two_sided_ideals(Q, exec_of(state)));
}

void BM_DeltaMinSearch(benchmark::State& state) {
    const CodeSpec spec = load_code_spec("golden_u_1pi_z");
    SearchOptions opts;
    opts.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(delta_min_search(spec.algebra, spec.ideal, 3, opts));
}

void BM_MinDetSq(benchmark::State& state) {
    const auto alg = load_algebra_spec("golden_u_i");
    SearchOptions opts;
    opts.exec = exec_of(state);
    for (auto _ : state) benchmark::DoNotOptimize(min_det_sq(alg, std::nullopt, opts));
}

// Arg 1 is the OpenMP idempotent scan, arg 0 the Frobenius fixed-space method.
void BM_IdempotentScan(benchmark::State& state) {
    const auto ext = load_algebra_spec("q7_cubic")->ext;
    const BaseElement q = parse_base_element(BaseRingKind::Eisenstein, "5");
    const FactorMethod m = state.range(0) ? FactorMethod::BruteForce : FactorMethod::Berlekamp;
    for (auto _ : state) benchmark::DoNotOptimize(factor_prime(ext, q, m));
}

}  // namespace

BENCHMARK(BM_VerifyIsomorphism)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceIdeals)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeltaMinSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinDetSq)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdempotentScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
