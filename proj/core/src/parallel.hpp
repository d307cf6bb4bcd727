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

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace defermion::detail {

/// Worker count from DEFERMION_THREADS, defaulting to the hardware count.
inline unsigned thread_count() {
    static const unsigned n = [] {
        if (const char* env = std::getenv("DEFERMION_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) {
                return static_cast<unsigned>(v);
            }
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }();
    return n;
}

/// Splits [0, n) into fixed chunks of `grain`; f(begin, end) must only touch
/// its own range, so results do not depend on the worker count.
template <typename F>
void parallel_for(std::size_t n, std::size_t grain, F&& f) {
    unsigned workers = thread_count();
    std::size_t chunks = (n + grain - 1) / grain;
    if (workers <= 1 || chunks <= 1) {
        f(std::size_t{0}, n);
        return;
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, chunks));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t c = w; c < chunks; c += workers) {
                std::size_t b = c * grain;
                f(b, std::min(n, b + grain));
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
}

/// Sum of f(begin, end) over fixed chunks, added in chunk order.
template <typename T, typename F>
T parallel_sum(std::size_t n, std::size_t grain, F&& f) {
    std::size_t chunks = (n + grain - 1) / grain;
    std::vector<T> partial(std::max<std::size_t>(chunks, 1), T{});
    parallel_for(chunks, 1, [&](std::size_t cb, std::size_t ce) {
        for (std::size_t c = cb; c < ce; ++c) {
            std::size_t b = c * grain;
            partial[c] = f(b, std::min(n, b + grain));
        }
    });
    T total{};
    for (const T& p : partial) {
        total += p;
    }
    return total;
}

}  // namespace defermion::detail
