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
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistmps {

using Complex = std::complex<double>;

/// Residue tuple r in {0,...,a-1}^m, one digit per generator.
using Residues = std::vector<int>;

/// Sparse map from residue tuple to amplitude. Missing keys mean zero.
/// std::map keeps keys in lexicographic order, which is the output order.
using AmplitudeTable = std::map<Residues, Complex>;

// Error kinds. Each maps to a distinct failure class in the CLI.

/// Malformed input: negative sizes, mismatched lengths, invalid matrices.
struct ArgumentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A brute-force enumeration or a table would exceed its configured cap.
struct SizeLimitError : std::length_error {
    using std::length_error::length_error;
};

/// Formula not defined at this argument (e.g. a vanishing denominator).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Input is well formed but violates a structural requirement of the routine.
struct PreconditionError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Absolute tolerance used for exact-in-principle comparisons of
/// weight-matrix entries (roots of unity or user-given values).
inline constexpr double kEntryTolerance = 1e-12;

/// Zero-pruning threshold for bulk amplitude tables.
inline constexpr double kPruneThreshold = 1e-14;

/// Error of `value` against `reference`, scaled by max(1, |reference|).
/// Amplitudes routinely cancel to exact zero, so a pure relative error is
/// undefined there; below unit magnitude this degrades to absolute error.
inline double relative_error(Complex value, Complex reference) {
    return std::abs(value - reference) / std::max(1.0, std::abs(reference));
}

/// e^{2 pi i t / a}, with t reduced mod a so the common cases hit exact values.
inline Complex root_of_unity(std::int64_t t, int a) {
    if (a <= 0) {
        throw ArgumentError("root_of_unity: order must be positive");
    }
    std::int64_t e = t % a;
    if (e < 0) {
        e += a;
    }
    if (e == 0) {
        return {1.0, 0.0};
    }
    if (2 * e == a) {
        return {-1.0, 0.0};
    }
    if (4 * e == a) {
        return {0.0, 1.0};
    }
    if (4 * e == 3 * static_cast<std::int64_t>(a)) {
        return {0.0, -1.0};
    }
    double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / a;
    return std::polar(1.0, angle);
}

/// Integer power by repeated multiplication (keeps +-1 and 1 exact).
inline Complex int_power(Complex base, int exponent) {
    Complex result{1.0, 0.0};
    bool invert = exponent < 0;
    unsigned e = static_cast<unsigned>(invert ? -exponent : exponent);
    Complex b = base;
    while (e != 0) {
        if (e & 1u) {
            result *= b;
        }
        b *= b;
        e >>= 1u;
    }
    return invert ? Complex{1.0, 0.0} / result : result;
}

/// Digit-string rendering of a residue tuple, e.g. {0,1,2,0} -> "0120".
/// Digits above 9 are written as lowercase letters.
inline std::string residues_to_string(const Residues& r) {
    std::string out;
    out.reserve(r.size());
    for (int digit : r) {
        if (digit < 0 || digit >= 36) {
            throw ArgumentError("residues_to_string: digit out of range");
        }
        out.push_back(digit < 10 ? static_cast<char>('0' + digit)
                                 : static_cast<char>('a' + digit - 10));
    }
    return out;
}

inline Residues residues_from_string(const std::string& s) {
    Residues r;
    r.reserve(s.size());
    for (char ch : s) {
        if (ch >= '0' && ch <= '9') {
            r.push_back(ch - '0');
        } else if (ch >= 'a' && ch <= 'z') {
            r.push_back(ch - 'a' + 10);
        } else {
            throw ArgumentError(std::string("invalid residue digit '") + ch + "'");
        }
    }
    return r;
}

}  // namespace twistmps
