/**************************************************************************
 * common.hpp
 *
 * Copyright 2026 The apnlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace apnlab {

/// Raised when an operation is called outside its mathematical domain
/// (inverse of zero, non-permutation inverted, zero direction, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an exhaustive algorithm is asked to run on a size it does
/// not support.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Raised on malformed input data (tables, files, parameters).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

[[nodiscard]] inline constexpr std::uint64_t low_mask(unsigned bits) noexcept {
    return bits >= 64 ? ~0ull : ((1ull << bits) - 1ull);
}

[[nodiscard]] inline constexpr unsigned parity(std::uint64_t x) noexcept {
    return static_cast<unsigned>(std::popcount(x) & 1);
}

[[nodiscard]] inline constexpr int msb_index(std::uint64_t x) noexcept {
    return x == 0 ? -1 : 63 - std::countl_zero(x);
}

/// Number of worker threads used by data-parallel loops. 0 means one per
/// hardware thread.
inline unsigned& default_jobs() {
    static unsigned jobs = 0;
    return jobs;
}

inline unsigned resolve_jobs(unsigned jobs) {
    if (jobs == 0) jobs = default_jobs();
    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    return jobs;
}

/// Runs body(begin, end, worker) on contiguous chunks of [0, count).
/// Chunks are assigned statically, so results that are merged by chunk
/// index are independent of the thread count.
inline void parallel_chunks(std::size_t count,
                            const std::function<void(std::size_t, std::size_t, unsigned)>& body,
                            unsigned jobs = 0) {
    jobs = resolve_jobs(jobs);
    if (jobs <= 1 || count < 2) {
        if (count > 0) body(0, count, 0);
        return;
    }
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    std::vector<std::thread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
        const std::size_t begin = count * w / jobs;
        const std::size_t end = count * (w + 1) / jobs;
        workers.emplace_back([&body, begin, end, w] { body(begin, end, w); });
    }
    for (auto& t : workers) t.join();
}

/// Element-wise parallel loop; fn(i) must only touch state owned by i.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         unsigned jobs = 0) {
    parallel_chunks(
        count,
        [&fn](std::size_t b, std::size_t e, unsigned) {
            for (std::size_t i = b; i < e; ++i) fn(i);
        },
        jobs);
}

inline std::string to_hex(std::uint64_t v) {
    static constexpr char digits[] = "0123456789abcdef";
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(digits[v & 15]);
        v >>= 4;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace apnlab
