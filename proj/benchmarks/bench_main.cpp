#include <benchmark/benchmark.h>

#include <cvpv/adversaries.hpp>
#include <cvpv/compilers.hpp>
#include <cvpv/oracle.hpp>
#include <cvpv/qsim.hpp>

namespace {

using namespace cvpv;

Bits bench_challenge(std::uint64_t salt) {
    return PrfStream(Seed::from_hex("be"), "bench", salt).next_bits(128);
}

void BM_Simulate(benchmark::State& state) {
    AnsatzConfig ansatz;
    ansatz.n_qubits = static_cast<int>(state.range(0));
    ansatz.depth = 12;
    Circuit c = build_circuit(bench_challenge(1), ansatz);
    for (auto _ : state) {
        StateVector sv = simulate(c);
        benchmark::DoNotOptimize(sv.amps.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Simulate)->DenseRange(6, 14, 2);

void BM_XhogScore(benchmark::State& state) {
    AnsatzConfig ansatz;
    ansatz.n_qubits = 8;
    ansatz.depth = 12;
    Circuit c = build_circuit(bench_challenge(2), ansatz);
    StateVector sv = simulate(c);
    PrfRng rng(Seed::from_hex("bf"), "samples");
    auto samples = sample(sv, static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) {
        double score = xhog_score(c, samples);
        benchmark::DoNotOptimize(score);
    }
}
BENCHMARK(BM_XhogScore)->Arg(100)->Arg(500);

void BM_OracleQuery(benchmark::State& state) {
    OracleParams params;
    Seed seed = Seed::from_hex("c0");
    RandomOracle oracle(params, seed, RandomOracle::sample_key(seed, params.key_bits));
    PrfRng rng(Seed::from_hex("c1"), "inputs");
    Bits z = rng.bits(128);
    for (auto _ : state) {
        Bits out = oracle.query(0, z);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_OracleQuery);

void BM_SingleRoundTrial(benchmark::State& state) {
    CompilerConfig cfg;
    cfg.mode = Mode::Single;
    cfg.backend.n_qubits = 8;
    cfg.backend.depth = 12;
    cfg.backend.samples_per_round = static_cast<std::size_t>(state.range(0));
    cfg.backend.test_probability = 1.0;
    auto honest = honest_strategy();
    std::uint64_t t = 0;
    for (auto _ : state) {
        RunResult r = run_cvpv(cfg, *honest,
                               derive_seed(Seed::from_hex("c2"), "trial", t++));
        benchmark::DoNotOptimize(r.verdict.accept);
    }
}
BENCHMARK(BM_SingleRoundTrial)->Arg(100)->Arg(500);

void BM_RapidFireTrial(benchmark::State& state) {
    CompilerConfig cfg;
    cfg.mode = Mode::RapidFire;
    cfg.rounds = 8;
    cfg.delta = 0.1;
    cfg.backend.n_qubits = 8;
    cfg.backend.depth = 12;
    cfg.backend.samples_per_round = 100;
    cfg.backend.test_probability = 0.5;
    auto honest = honest_strategy();
    std::uint64_t t = 0;
    for (auto _ : state) {
        RunResult r = run_cvpv(cfg, *honest,
                               derive_seed(Seed::from_hex("c3"), "trial", t++));
        benchmark::DoNotOptimize(r.verdict.accept);
    }
}
BENCHMARK(BM_RapidFireTrial);

} // namespace

BENCHMARK_MAIN();
