// Copyright 2026 The twistmps Authors
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
#include <chrono>
#include <cstdint>
#include <random>
#include <vector>

#include "twistmps/mps.hpp"

namespace twistmps {

/// Model of m mutually anticommuting generators (q_j = -1 for j >= 2, a = 2)
/// at degree k, with coefficients drawn uniformly from the unit disk.
inline MpsModel anticommuting_model(int m, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    std::vector<Complex> c;
    std::vector<QParam> qs;
    for (int j = 0; j < m; ++j) {
        c.push_back(std::polar(std::sqrt(radius(rng)), angle(rng)));
        qs.emplace_back(j == 0 ? 1.0 : -1.0);
    }
    return MpsModel(std::move(c), std::move(qs), 2, k);
}

/**
 * Benchmark query for degree k. Mutually anticommuting generators square to
 * scalars, so h^k is supported on the zero tuple (k even) or on tuples with a
 * single 1 (k odd). The query picks a nonzero amplitude: all zeros, plus a 1
 * on the middle site when k is odd.
 */
inline Residues benchmark_residues(int m, int k) {
    Residues r(static_cast<size_t>(m), 0);
    if (k % 2 != 0 && m > 0) {
        r[static_cast<size_t>(m / 2)] = 1;
    }
    return r;
}

/// Wall time of one cold sweep, in nanoseconds.
inline double single_sweep_nanos(const MpsModel& model, const Residues& r) {
    using Clock = std::chrono::steady_clock;
    auto start = Clock::now();
    volatile double sink = std::abs(contract(model, r));
    (void)sink;
    return static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

namespace detail {

/// Nanoseconds for `batch` back-to-back sweeps; the result feeds `sink`.
inline double timed_batch(const MpsModel& model, const Residues& r, std::int64_t batch, double& sink) {
    using Clock = std::chrono::steady_clock;
    auto start = Clock::now();
    for (std::int64_t b = 0; b < batch; ++b) {
        sink += contract(model, r).real();
    }
    return static_cast<double>(std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count());
}

/// Smallest power-of-two batch that takes at least ~200 us.
inline std::int64_t calibrate_batch(const MpsModel& model, const Residues& r, double& sink) {
    std::int64_t batch = 1;
    while (batch < (std::int64_t{1} << 24) && timed_batch(model, r, batch, sink) < 2e5) {
        batch *= 2;
    }
    return batch;
}

inline double median(std::vector<double> xs) {
    const size_t mid = xs.size() / 2;
    std::nth_element(xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(mid), xs.end());
    return xs[mid];
}

}  // namespace detail

/// Median per-sweep time over `reps` batched repetitions.
inline double median_sweep_nanos(const MpsModel& model, const Residues& r, int reps = 21) {
    double sink = 0.0;
    const std::int64_t batch = detail::calibrate_batch(model, r, sink);
    std::vector<double> samples;
    for (int i = 0; i < reps; ++i) {
        samples.push_back(detail::timed_batch(model, r, batch, sink) / static_cast<double>(batch));
    }
    volatile double keep = sink;
    (void)keep;
    return detail::median(std::move(samples));
}

struct PairedTiming {
    double first_nanos;   // median per-sweep time of the first query
    double second_nanos;  // median per-sweep time of the second query
    double ratio;         // median of per-round second/first ratios
};

/**
 * Times two sweeps in alternating batches so that slow drift in machine load
 * affects both alike. Each round yields one ratio; the median is reported.
 */
inline PairedTiming paired_sweep_nanos(const MpsModel& first, const Residues& r1, const MpsModel& second,
                                       const Residues& r2, int rounds = 21) {
    double sink = 0.0;
    const std::int64_t b1 = detail::calibrate_batch(first, r1, sink);
    const std::int64_t b2 = detail::calibrate_batch(second, r2, sink);
    std::vector<double> t1;
    std::vector<double> t2;
    std::vector<double> ratios;
    for (int i = 0; i < rounds; ++i) {
        const double x = detail::timed_batch(first, r1, b1, sink) / static_cast<double>(b1);
        const double y = detail::timed_batch(second, r2, b2, sink) / static_cast<double>(b2);
        t1.push_back(x);
        t2.push_back(y);
        ratios.push_back(y / x);
    }
    volatile double keep = sink;
    (void)keep;
    return {detail::median(std::move(t1)), detail::median(std::move(t2)), detail::median(std::move(ratios))};
}

}  // namespace twistmps
