// Serial reference kernels vs their OpenMP counterparts.
//
//   ./build/bench/bench_kernels --benchmark_filter=ApplyGate
//   OMP_NUM_THREADS=4 ./build/bench/bench_kernels

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "oraclesim/gates.hpp"
#include "oraclesim/kernels.hpp"

namespace {

using oraclesim::Amp;
namespace kernels = oraclesim::kernels;

std::vector<Amp> random_amps(int num_qubits) {
    std::mt19937_64 rng(1234);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<Amp> amps(std::size_t{1} << num_qubits);
    for (auto &a : amps) {
        a = Amp(g(rng), g(rng));
    }
    const double n = std::sqrt(kernels::squared_norm_serial(amps));
    for (auto &a : amps) {
        a /= n;
    }
    return amps;
}

std::vector<Amp> random_gate(int k) {
    std::mt19937_64 rng(99);
    const auto u = oraclesim::random_unitary(std::size_t{1} << k, rng);
    const auto e = u.matrix().entries();
    return {e.begin(), e.end()};
}

template <bool Parallel>
void ApplyGate(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    auto amps = random_amps(n);
    const auto gate = random_gate(k);
    std::vector<int> targets;
    for (int t = 0; t < k; ++t) {
        targets.push_back(n / 2 + t);
    }
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::apply_gate(amps, n, gate, targets);
        } else {
            kernels::apply_gate_serial(amps, n, gate, targets);
        }
        benchmark::DoNotOptimize(amps.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel>
void Marginal(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const auto amps = random_amps(n);
    const std::vector<int> qubits = {0, 1, 2};
    std::vector<double> out(8);
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::marginal_probabilities(amps, n, qubits, out);
        } else {
            kernels::marginal_probabilities_serial(amps, n, qubits, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

template <bool Parallel>
void ReducedDensity(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    const auto amps = random_amps(n);
    const std::vector<int> keep = {0, 1};
    std::vector<Amp> out(16);
    for (auto _ : state) {
        if constexpr (Parallel) {
            kernels::reduced_density(amps, n, keep, out);
        } else {
            kernels::reduced_density_serial(amps, n, keep, out);
        }
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(amps.size()));
}

void GateArgs(benchmark::internal::Benchmark *b) {
    for (int n : {4, 12, 16, 20, 22}) {
        for (int k : {1, 2}) {
            b->Args({n, k});
        }
    }
}

} // namespace

BENCHMARK(ApplyGate<false>)->Name("ApplyGate/serial")->Apply(GateArgs);
BENCHMARK(ApplyGate<true>)->Name("ApplyGate/openmp")->Apply(GateArgs)->UseRealTime();
BENCHMARK(Marginal<false>)->Name("Marginal/serial")->DenseRange(12, 22, 5);
BENCHMARK(Marginal<true>)->Name("Marginal/openmp")->DenseRange(12, 22, 5)->UseRealTime();
BENCHMARK(ReducedDensity<false>)->Name("ReducedDensity/serial")->DenseRange(12, 22, 5);
BENCHMARK(ReducedDensity<true>)->Name("ReducedDensity/openmp")->DenseRange(12, 22, 5)->UseRealTime();

BENCHMARK_MAIN();
