// Copyright 2026 The spskit Authors
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

#include <string>

#include "benchmark/benchmark.h"
#include "spskit/models.h"
#include "spskit/parallel.h"
#include "spskit/pathfind.h"
#include "spskit/sim.h"
#include "spskit/sps.h"

using namespace spskit;

namespace {

BasisState middle_flip(int n) {
    std::string ket(n, '0');
    ket[n / 2] = '1';
    return parse_ket(ket);
}

void BM_apply_steps(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    Model m = build_t6(n);
    CompiledCircuit c(m.circuit);
    for (auto _ : state) {
        Statevector psi = Statevector::basis(middle_flip(n));
        apply_circuit_steps(psi, c, 4);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
}
BENCHMARK(BM_apply_steps)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_apply_steps_serial(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    Model m = build_t6(n);
    for (auto _ : state) {
        Statevector psi = Statevector::basis(middle_flip(n));
        serial::apply_circuit_steps(psi, m.circuit, 4);
        benchmark::DoNotOptimize(psi.amplitudes().data());
    }
}
BENCHMARK(BM_apply_steps_serial)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_partition(benchmark::State &state) {
    Model m = build_f4(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(partition_labels(m.maps));
    }
}
BENCHMARK(BM_partition)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_partition_serial(benchmark::State &state) {
    Model m = build_f4(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::partition_labels(m.maps));
    }
}
BENCHMARK(BM_partition_serial)->Arg(14)->Arg(18)->Unit(benchmark::kMillisecond);

void BM_chi(benchmark::State &state) {
    const int n = 15;
    Model m = build_heisenberg(n);
    BasisState b = parse_ket("000000001111111");
    for (auto _ : state) {
        benchmark::DoNotOptimize(chi(m.maps, b, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_chi)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_failure_rate(benchmark::State &state) {
    Model m = build_t6(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(failure_rate(m.maps, 2));
    }
}
BENCHMARK(BM_failure_rate)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_failure_rate_serial(benchmark::State &state) {
    Model m = build_t6(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::failure_rate(m.maps, 2));
    }
}
BENCHMARK(BM_failure_rate_serial)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_sample_measurements(benchmark::State &state) {
    const int n = 10;
    Model m = build_t6(n);
    CompiledCircuit c(m.circuit);
    NoiseSpec noise;
    noise.eps_over_3 = 0.01;
    noise.rng_seed = 5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_measurements(c, middle_flip(n), 8, state.range(0), noise));
    }
}
BENCHMARK(BM_sample_measurements)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
