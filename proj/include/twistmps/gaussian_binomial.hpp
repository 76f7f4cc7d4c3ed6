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

#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "twistmps/common.hpp"

namespace twistmps {

/**
 * Deformation parameter of a Gaussian binomial. Any nonzero complex number
 * is allowed; roots of unity are the case of interest for twisted algebras,
 * but the combinatorial identities hold for every nonzero value.
 */
class QParam {
  public:
    QParam() = default;
    QParam(Complex value) : value_(value) {  // NOLINT(google-explicit-constructor)
        if (value == Complex{0.0, 0.0}) {
            throw ArgumentError("QParam: deformation parameter must be nonzero");
        }
        if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
            throw ArgumentError("QParam: deformation parameter must be finite");
        }
    }
    QParam(double value) : QParam(Complex{value, 0.0}) {}  // NOLINT(google-explicit-constructor)

    Complex value() const { return value_; }

    bool operator==(const QParam&) const = default;

  private:
    Complex value_{1.0, 0.0};
};

namespace detail {

inline void check_nonnegative(int n, int r, const char* who) {
    if (n < 0 || r < 0) {
        throw ArgumentError(std::string(who) + ": n and r must be non-negative");
    }
}

inline std::vector<Complex> powers(Complex q, int up_to) {
    std::vector<Complex> p(static_cast<size_t>(up_to) + 1);
    p[0] = 1.0;
    for (int s = 1; s <= up_to; ++s) {
        p[s] = p[s - 1] * q;
    }
    return p;
}

inline std::uint64_t checked_binomial(std::uint64_t n, std::uint64_t r) {
    if (r > n) {
        return 0;
    }
    r = std::min(r, n - r);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        // result * (n - r + i) / i stays integral at every step.
        std::uint64_t factor = n - r + i;
        std::uint64_t g = std::gcd(result, i);
        std::uint64_t reduced = result / g;
        std::uint64_t divisor = i / g;
        // divisor divides factor because the full product is integral.
        std::uint64_t f = factor / divisor;
        if (reduced != 0 && f > std::numeric_limits<std::uint64_t>::max() / reduced) {
            throw SizeLimitError("binomial coefficient overflows 64 bits");
        }
        result = reduced * f;
    }
    return result;
}

}  // namespace detail

/// binom(n, r)_q by the q-Pascal recurrence
///   binom(n, r) = binom(n-1, r-1) + q^r binom(n-1, r),
/// with binom(n, 0) = 1 and binom(n, r) = 0 for r > n. Valid at every q,
/// roots of unity included. O(n r) operations.
inline Complex q_binom_pascal(int n, int r, QParam q) {
    detail::check_nonnegative(n, r, "q_binom_pascal");
    if (r > n) {
        return 0.0;
    }
    // Row vector over r' = 0..r, rolled forward in n.
    std::vector<Complex> qpow = detail::powers(q.value(), r);
    std::vector<Complex> row(static_cast<size_t>(r) + 1, Complex{0.0, 0.0});
    row[0] = 1.0;
    for (int nn = 1; nn <= n; ++nn) {
        int top = std::min(nn, r);
        for (int rr = top; rr >= 1; --rr) {
            row[rr] = row[rr - 1] + qpow[rr] * row[rr];
        }
    }
    return row[r];
}

/// Default cap on n for the partition-enumeration oracle.
inline constexpr int kPartitionOracleCap = 16;

/**
 * Gaussian binomial as the generating function of partitions fitting in an
 * r x (n - r) box: sum over lambda_1 >= ... >= lambda_r >= 0 with
 * lambda_1 <= n - r of q^{|lambda|}.
 *
 * Partitions are visited in colexicographic order (the last part is the
 * most significant digit). The sum does not depend on the order; the work is
 * binom(n, r) terms.
 */
inline Complex q_binom_partition_oracle(int n, int r, QParam q, int cap = kPartitionOracleCap) {
    detail::check_nonnegative(n, r, "q_binom_partition_oracle");
    if (r > n) {
        throw ArgumentError("q_binom_partition_oracle: requires r <= n");
    }
    if (n > cap) {
        throw SizeLimitError("q_binom_partition_oracle: n = " + std::to_string(n) +
                             " exceeds enumeration cap " + std::to_string(cap));
    }
    const int width = n - r;
    std::vector<Complex> qpow = detail::powers(q.value(), r * width);
    if (r == 0 || width == 0) {
        return 1.0;
    }
    // parts[0] >= parts[1] >= ... >= parts[r-1], each in [0, width].
    std::vector<int> parts(static_cast<size_t>(r), 0);
    Complex total{0.0, 0.0};
    while (true) {
        int size = 0;
        for (int p : parts) {
            size += p;
        }
        total += qpow[size];
        // Colex successor: bump the least significant part that has room,
        // then lower every less significant part to the new value.
        int i = 0;
        while (i < r && parts[i] == (i == 0 ? width : parts[i - 1])) {
            ++i;
        }
        if (i == r) {
            break;
        }
        ++parts[i];
        for (int t = 0; t < i; ++t) {
            parts[t] = parts[i];
        }
    }
    return total;
}

/// Product form prod_{i<r} (1 - q^{n-i}) / (1 - q^{i+1}). Undefined when q is
/// a root of unity of order <= r; use q_binom_pascal there.
inline Complex q_binom_product(int n, int r, QParam q) {
    detail::check_nonnegative(n, r, "q_binom_product");
    if (r > n) {
        throw ArgumentError("q_binom_product: requires r <= n");
    }
    const Complex qv = q.value();
    Complex result{1.0, 0.0};
    for (int i = 0; i < r; ++i) {
        Complex den = 1.0 - int_power(qv, i + 1);
        if (std::abs(den) <= kEntryTolerance) {
            throw DomainError("q_binom_product: 1 - q^" + std::to_string(i + 1) +
                              " vanishes (q is a root of unity of order <= r); "
                              "use q_binom_pascal instead");
        }
        result *= (1.0 - int_power(qv, n - i)) / den;
    }
    return result;
}

/// Exact binom(n, r) at q = -1:
///   binom(floor(n/2), floor(r/2)) if n is odd or r is even, else 0.
inline std::uint64_t q_binom_minus1(int n, int r) {
    detail::check_nonnegative(n, r, "q_binom_minus1");
    if (r > n) {
        return 0;
    }
    if (n % 2 == 0 && r % 2 == 1) {
        return 0;
    }
    return detail::checked_binomial(static_cast<std::uint64_t>(n / 2),
                                    static_cast<std::uint64_t>(r / 2));
}

/// Exact integer Gaussian binomial for q in {+1, -1}, via the integer
/// q-Pascal recurrence. `sign` must be +1 or -1.
inline std::int64_t q_binom_sign(int n, int r, int sign) {
    detail::check_nonnegative(n, r, "q_binom_sign");
    if (sign != 1 && sign != -1) {
        throw ArgumentError("q_binom_sign: sign must be +1 or -1");
    }
    if (r > n) {
        return 0;
    }
    std::vector<std::int64_t> row(static_cast<size_t>(r) + 1, 0);
    row[0] = 1;
    for (int nn = 1; nn <= n; ++nn) {
        for (int rr = std::min(nn, r); rr >= 1; --rr) {
            std::int64_t scaled = (sign == -1 && (rr % 2 == 1)) ? -row[rr] : row[rr];
            std::int64_t next;
            if (__builtin_add_overflow(row[rr - 1], scaled, &next)) {
                throw SizeLimitError("q_binom_sign: overflow");
            }
            row[rr] = next;
        }
    }
    return row[r];
}

/**
 * Immutable triangular table of binom(n, r)_q for 0 <= r <= n <= n_max,
 * filled row by row with the q-Pascal recurrence. Lookups with r > n return
 * zero, matching the boundary convention.
 */
class QBinomTable {
  public:
    QBinomTable(int n_max, QParam q) : n_max_(n_max), q_(q) {
        if (n_max < 0) {
            throw ArgumentError("QBinomTable: n_max must be non-negative");
        }
        entries_.resize(static_cast<size_t>(n_max + 1) * static_cast<size_t>(n_max + 2) / 2);
        std::vector<Complex> qpow = detail::powers(q.value(), n_max);
        for (int n = 0; n <= n_max; ++n) {
            at(n, 0) = 1.0;
            at(n, n) = 1.0;
            for (int r = 1; r < n; ++r) {
                at(n, r) = at(n - 1, r - 1) + qpow[r] * at(n - 1, r);
            }
        }
    }

    int n_max() const { return n_max_; }
    QParam q() const { return q_; }

    Complex operator()(int n, int r) const {
        if (n < 0 || r < 0 || n > n_max_) {
            throw ArgumentError("QBinomTable: index out of range");
        }
        if (r > n) {
            return 0.0;
        }
        return entries_[index(n, r)];
    }

    std::vector<Complex> row(int n) const {
        std::vector<Complex> out;
        for (int r = 0; r <= n; ++r) {
            out.push_back((*this)(n, r));
        }
        return out;
    }

  private:
    static size_t index(int n, int r) {
        return static_cast<size_t>(n) * static_cast<size_t>(n + 1) / 2 + static_cast<size_t>(r);
    }
    Complex& at(int n, int r) { return entries_[index(n, r)]; }

    int n_max_;
    QParam q_;
    std::vector<Complex> entries_;
};

inline QBinomTable build_table(int n_max, QParam q) { return QBinomTable(n_max, q); }

}  // namespace twistmps
