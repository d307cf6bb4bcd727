// Copyright 2026 The defermion Authors
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


#include <algorithm>
#include <random>

#include <benchmark/benchmark.h>

#include "defermion/emulator.hpp"
#include "defermion/pauli.hpp"

namespace {

using namespace defermion;

StateVector random_state(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(static_cast<Eigen::Index>(std::size_t{1} << n));
    for (auto& a : v) {
        a = cplx(g(rng), g(rng));
    }
    v.normalize();
    return StateVector(v);
}

PauliString random_string(std::size_t n, std::size_t weight, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::string letters(n, 'I');
    std::vector<std::size_t> q(n);
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = i;
    }
    std::shuffle(q.begin(), q.end(), rng);
    for (std::size_t i = 0; i < weight && i < n; ++i) {
        letters[q[i]] = "XYZ"[rng() % 3];
    }
    return PauliString::from_letters(letters);
}

void BM_Hadamard(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    StateVector s = random_state(n);
    for (auto _ : state) {
        s.apply_h(n / 2);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_Hadamard)->Arg(12)->Arg(16)->Arg(20);

void BM_Cnot(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    StateVector s = random_state(n);
    for (auto _ : state) {
        s.apply_cnot(0, n - 1);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_Cnot)->Arg(12)->Arg(16)->Arg(20);

void BM_Rz(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    StateVector s = random_state(n);
    for (auto _ : state) {
        s.apply_rz(1, 0.1);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_Rz)->Arg(12)->Arg(16)->Arg(20);

void BM_FusedPauliRotation(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    StateVector s = random_state(n);
    PauliString p = random_string(n, static_cast<std::size_t>(state.range(1)), 7);
    for (auto _ : state) {
        s.apply_pauli_rotation(p, 0.05);
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_FusedPauliRotation)->Args({12, 6})->Args({16, 7})->Args({20, 7});

void BM_PauliExpectation(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    StateVector s = random_state(n);
    PauliString p = random_string(n, 6, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(s.expectation(p));
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << n));
}
BENCHMARK(BM_PauliExpectation)->Arg(12)->Arg(16)->Arg(20);

}  // namespace
