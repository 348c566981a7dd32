// Copyright 2026 The qfarith Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "qfarith/arith.hpp"
#include "qfarith/kernels.hpp"
#include "qfarith/noise.hpp"
#include "qfarith/split_state.hpp"

using namespace qfarith;

namespace {

void BM_KernelCx(benchmark::State &state) {
    const auto width = static_cast<std::uint32_t>(state.range(0));
    Statevector s(width);
    s.apply(Gate::sx(0));
    for (auto _ : state) {
        s.apply(Gate::cx(0, width - 1));
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << width));
}
BENCHMARK(BM_KernelCx)->Arg(10)->Arg(16)->Arg(20);

void BM_KernelRz(benchmark::State &state) {
    const auto width = static_cast<std::uint32_t>(state.range(0));
    Statevector s(width);
    s.apply(Gate::sx(1));
    for (auto _ : state) {
        s.apply(Gate::rz(1, 0.1));
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << width));
}
BENCHMARK(BM_KernelRz)->Arg(10)->Arg(16)->Arg(20);

void BM_KernelSx(benchmark::State &state) {
    const auto width = static_cast<std::uint32_t>(state.range(0));
    Statevector s(width);
    for (auto _ : state) {
        s.apply(Gate::sx(width / 2));
        benchmark::DoNotOptimize(s);
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << width));
}
BENCHMARK(BM_KernelSx)->Arg(10)->Arg(16)->Arg(20);

void BM_NoiselessAdderDense(benchmark::State &state) {
    const ArithOp op = ArithOp::add(8, true);
    const Circuit c = decompose_to_basis(build_arith(op, Depth::full()));
    const Statevector init = prepare_operands(op, QInteger::uniform(8, {3, 77}), QInteger::basis(8, 5));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_noiseless(c, init));
    }
    state.counters["gates"] = static_cast<double>(c.size());
}
BENCHMARK(BM_NoiselessAdderDense)->Unit(benchmark::kMillisecond);

void BM_NoiselessAdderSplit(benchmark::State &state) {
    const ArithOp op = ArithOp::add(8, true);
    const Circuit c = decompose_to_basis(build_arith(op, Depth::full()));
    const Statevector init = prepare_operands(op, QInteger::uniform(8, {3, 77}), QInteger::basis(8, 5));
    const std::uint64_t mask = SplitState::classical_qubits(c);
    for (auto _ : state) {
        SplitState s(init, mask);
        for (const Gate &g : c.gates()) {
            s.apply(g);
        }
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_NoiselessAdderSplit)->Unit(benchmark::kMillisecond);

// Trajectory-gate applications per millisecond on the 16-qubit multiplier.
void BM_ShotsMultiplier(benchmark::State &state) {
    const ArithOp op = ArithOp::multiply(4, 4);
    const Circuit c = decompose_to_basis(build_arith(op, Depth::full()));
    const Statevector init = prepare_operands(op, QInteger::uniform(4, {3, 9}), QInteger::basis(4, 13));
    const NoiseModel model{0.0, static_cast<double>(state.range(0)) / 1000.0};
    const std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_shots(c, init, model, shots, ++seed));
    }
    state.counters["gate_apps_per_ms"] = benchmark::Counter(
        static_cast<double>(state.iterations() * shots * c.size()) / 1000.0, benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ShotsMultiplier)->Arg(0)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ShotsAdder(benchmark::State &state) {
    const ArithOp op = ArithOp::add(8, true);
    const Circuit c = decompose_to_basis(build_arith(op, Depth::limited(4)));
    const Statevector init = prepare_operands(op, QInteger::uniform(8, {3, 77}), QInteger::uniform(8, {5, 200}));
    const NoiseModel model{0.0, static_cast<double>(state.range(0)) / 1000.0};
    const std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_shots(c, init, model, shots, ++seed));
    }
    state.counters["gate_apps_per_ms"] = benchmark::Counter(
        static_cast<double>(state.iterations() * shots * c.size()) / 1000.0, benchmark::Counter::kIsRate);
}
BENCHMARK(BM_ShotsAdder)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
