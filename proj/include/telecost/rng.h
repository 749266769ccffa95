// Copyright 2026 The telecost Authors
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

#ifndef TELECOST_RNG_H
#define TELECOST_RNG_H

#include <algorithm>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

namespace telecost {

/// Seedable, splittable generator.
///
/// The engine is std::mt19937_64; independent substreams are keyed by
/// (seed, index) through a splitmix64 finalizer. Uniform variates are drawn
/// from raw engine output directly so sequences do not depend on the
/// standard library's distribution implementations.
class Rng {
   public:
    static constexpr const char* kAlgorithm = "mt19937_64/splitmix64-substreams";

    explicit Rng(std::uint64_t seed) : engine_(mix(seed)) {}

    /// Generator for substream `index` of `seed`. Distinct indices give
    /// statistically independent streams.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        return Rng(mix(seed) ^ mix(index * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) {
        // Rejection on the largest multiple of n to avoid modulo bias.
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % n;
    }

    /// splitmix64 finalizer.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

   private:
    std::mt19937_64 engine_;
};

inline constexpr std::uint64_t kTrialBlockSize = 1 << 14;

/// Runs `trials` independent trials in fixed-size blocks. Block b draws from
/// Rng::substream(seed, b) and produces an accumulator via
/// `fn(rng, begin, end)`; accumulators are merged with `+=` in block order.
/// The result is identical for every thread count.
template <typename Acc, typename Fn>
Acc run_trial_blocks(std::uint64_t trials, std::uint64_t seed, Fn fn, unsigned threads = 0) {
    std::uint64_t blocks = (trials + kTrialBlockSize - 1) / kTrialBlockSize;
    std::vector<Acc> partial(blocks);
    auto work = [&](std::uint64_t first, std::uint64_t stride) {
        for (std::uint64_t b = first; b < blocks; b += stride) {
            Rng rng = Rng::substream(seed, b);
            std::uint64_t begin = b * kTrialBlockSize;
            std::uint64_t end = std::min(trials, begin + kTrialBlockSize);
            partial[b] = fn(rng, begin, end);
        }
    };
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(blocks, 1)));
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; t++) {
            pool.emplace_back(work, t, threads);
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    Acc total{};
    for (const auto& p : partial) {
        total += p;
    }
    return total;
}

}  // namespace telecost

#endif
