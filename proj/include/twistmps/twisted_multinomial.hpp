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
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "twistmps/common.hpp"
#include "twistmps/gaussian_binomial.hpp"

namespace twistmps {

/**
 * Twisting matrix Omega of pairwise inversion weights on m generators.
 *
 * Entry (i, j) with i < j is the phase picked up when generator j is moved
 * to the left of generator i: z_j z_i = omega(i, j) z_i z_j. The matrix is
 * validated on construction and immutable afterwards:
 *   omega(i, i) = 1, omega(j, i) = 1 / omega(i, j), every entry nonzero,
 *   and omega(i, j)^a = 1 when a generator order a is attached.
 * Indices are zero-based.
 */
class WeightMatrix {
  public:
    WeightMatrix(int m, std::vector<Complex> entries, std::optional<int> order = std::nullopt)
        : m_(m), entries_(std::move(entries)), order_(order) {
        validate();
    }

    /// Builds the matrix from its strict upper triangle; the lower triangle
    /// is filled with reciprocals.
    static WeightMatrix from_upper(int m, const std::function<Complex(int, int)>& upper,
                                   std::optional<int> order = std::nullopt) {
        if (m < 0) {
            throw ArgumentError("WeightMatrix: m must be non-negative");
        }
        std::vector<Complex> e(static_cast<size_t>(m) * static_cast<size_t>(m), Complex{1.0, 0.0});
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                Complex w = upper(i, j);
                if (w == Complex{0.0, 0.0}) {
                    throw ArgumentError("WeightMatrix: entries must be nonzero");
                }
                e[static_cast<size_t>(i * m + j)] = w;
                e[static_cast<size_t>(j * m + i)] = 1.0 / w;
            }
        }
        return WeightMatrix(m, std::move(e), order);
    }

    /// omega(i, j) = exp(2 pi i t / a) for listed (i, j, t) with i < j; every
    /// unlisted pair commutes.
    static WeightMatrix from_phase_exponents(int m, int a,
                                             const std::vector<std::array<int, 3>>& triples) {
        if (a < 2) {
            throw ArgumentError("WeightMatrix: generator order must be >= 2");
        }
        std::vector<int> t(static_cast<size_t>(m) * static_cast<size_t>(m), 0);
        for (const auto& [i, j, e] : triples) {
            if (i < 0 || j < 0 || i >= m || j >= m || i >= j) {
                throw ArgumentError("WeightMatrix: phase triple needs 0 <= i < j < m");
            }
            t[static_cast<size_t>(i * m + j)] = e;
        }
        return from_upper(
            m, [&](int i, int j) { return root_of_unity(t[static_cast<size_t>(i * m + j)], a); }, a);
    }

    /// The predecessor-uniform matrix induced by qs: omega(i, j) = qs[j] for
    /// i < j. qs[0] is not used.
    static WeightMatrix predecessor_uniform(const std::vector<QParam>& qs,
                                            std::optional<int> order = std::nullopt) {
        return from_upper(
            static_cast<int>(qs.size()), [&](int, int j) { return qs[static_cast<size_t>(j)].value(); },
            order);
    }

    int size() const { return m_; }
    std::optional<int> order() const { return order_; }

    Complex operator()(int i, int j) const { return entries_[static_cast<size_t>(i * m_ + j)]; }

    /// Matrix of the reordered generators: result(p, p') = (*this)(perm[p], perm[p']).
    WeightMatrix permuted(const std::vector<int>& perm) const {
        check_permutation(perm, m_);
        std::vector<Complex> e(entries_.size());
        for (int p = 0; p < m_; ++p) {
            for (int pp = 0; pp < m_; ++pp) {
                e[static_cast<size_t>(p * m_ + pp)] = (*this)(perm[static_cast<size_t>(p)], perm[static_cast<size_t>(pp)]);
            }
        }
        return WeightMatrix(m_, std::move(e), order_);
    }

    /// Same matrix tagged with a generator order; validates omega^a = 1.
    WeightMatrix with_order(int a) const { return WeightMatrix(m_, entries_, a); }

    bool operator==(const WeightMatrix&) const = default;

    static void check_permutation(const std::vector<int>& perm, int m) {
        if (static_cast<int>(perm.size()) != m) {
            throw ArgumentError("permutation has wrong length");
        }
        std::vector<bool> seen(static_cast<size_t>(m), false);
        for (int p : perm) {
            if (p < 0 || p >= m || seen[static_cast<size_t>(p)]) {
                throw ArgumentError("not a permutation");
            }
            seen[static_cast<size_t>(p)] = true;
        }
    }

  private:
    void validate() const {
        if (m_ < 0 || entries_.size() != static_cast<size_t>(m_) * static_cast<size_t>(m_)) {
            throw ArgumentError("WeightMatrix: entry count must be m*m");
        }
        if (order_ && *order_ < 2) {
            throw ArgumentError("WeightMatrix: generator order must be >= 2");
        }
        for (int i = 0; i < m_; ++i) {
            if (std::abs((*this)(i, i) - 1.0) > kEntryTolerance) {
                throw ArgumentError("WeightMatrix: diagonal entries must be 1");
            }
            for (int j = 0; j < m_; ++j) {
                Complex w = (*this)(i, j);
                if (w == Complex{0.0, 0.0} || !std::isfinite(w.real()) || !std::isfinite(w.imag())) {
                    throw ArgumentError("WeightMatrix: entries must be finite and nonzero");
                }
                if (i < j && std::abs(w * (*this)(j, i) - 1.0) > kEntryTolerance) {
                    throw ArgumentError("WeightMatrix: omega(j,i) must equal 1/omega(i,j) for (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
                }
                if (order_ && std::abs(int_power(w, *order_) - 1.0) > kEntryTolerance) {
                    throw ArgumentError("WeightMatrix: entry (" + std::to_string(i) + "," +
                                        std::to_string(j) + ") is not an a-th root of unity");
                }
            }
        }
    }

    int m_;
    std::vector<Complex> entries_;
    std::optional<int> order_;
};

/// Non-negative parts (k_1, ..., k_m) with total k and prefix sums
/// l_0 = 0, l_j = k_1 + ... + k_j.
class Composition {
  public:
    explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
        prefix_.push_back(0);
        for (int p : parts_) {
            if (p < 0) {
                throw ArgumentError("Composition: parts must be non-negative");
            }
            prefix_.push_back(prefix_.back() + p);
        }
    }

    int size() const { return static_cast<int>(parts_.size()); }
    int total() const { return prefix_.back(); }
    int part(int j) const { return parts_[static_cast<size_t>(j)]; }
    /// l_j for j = 0..m.
    int prefix(int j) const { return prefix_[static_cast<size_t>(j)]; }
    const std::vector<int>& parts() const { return parts_; }

  private:
    std::vector<int> parts_;
    std::vector<int> prefix_;
};

/// All compositions of k into m non-negative parts, lexicographic.
inline std::vector<Composition> compositions(int k, int m) {
    std::vector<Composition> out;
    if (m == 0) {
        if (k == 0) {
            out.emplace_back(std::vector<int>{});
        }
        return out;
    }
    std::vector<int> parts(static_cast<size_t>(m), 0);
    std::function<void(int, int)> rec = [&](int j, int left) {
        if (j == m - 1) {
            parts[static_cast<size_t>(j)] = left;
            out.emplace_back(parts);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            parts[static_cast<size_t>(j)] = v;
            rec(j + 1, left - v);
        }
    };
    rec(0, k);
    return out;
}

/// Ordering under which a weight matrix is predecessor-uniform. perm[p] is
/// the generator placed at position p; qs[p] is the common weight of that
/// generator against every earlier one (qs[0] = 1).
struct PuOrdering {
    std::vector<int> perm;
    std::vector<Complex> qs;
};

/// Default cap on the number of shuffles enumerated by the brute force.
inline constexpr std::uint64_t kShuffleCap = 1'000'000;

/// k! / (k_1! ... k_m!), exact. Throws SizeLimitError on 64-bit overflow.
inline std::uint64_t multinomial_exact(const Composition& comp) {
    std::uint64_t result = 1;
    for (int j = 0; j < comp.size(); ++j) {
        std::uint64_t b = detail::checked_binomial(static_cast<std::uint64_t>(comp.prefix(j + 1)),
                                                   static_cast<std::uint64_t>(comp.part(j)));
        if (b != 0 && result > std::numeric_limits<std::uint64_t>::max() / b) {
            throw SizeLimitError("multinomial coefficient overflows 64 bits");
        }
        result *= b;
    }
    return result;
}

namespace detail {

inline void check_same_size(const Composition& comp, const WeightMatrix& w, const char* who) {
    if (comp.size() != w.size()) {
        throw ArgumentError(std::string(who) + ": composition has " + std::to_string(comp.size()) +
                            " parts but the weight matrix has size " + std::to_string(w.size()));
    }
}

/// Product of inversion weights of one word: for positions r < s with
/// word[r] > word[s], multiply omega(word[s], word[r]).
inline Complex inversion_weight(const std::vector<int>& word, const WeightMatrix& w) {
    Complex phase{1.0, 0.0};
    for (size_t r = 0; r < word.size(); ++r) {
        for (size_t s = r + 1; s < word.size(); ++s) {
            if (word[r] > word[s]) {
                phase *= w(word[s], word[r]);
            }
        }
    }
    return phase;
}

}  // namespace detail

/**
 * Twisted multinomial coefficient by direct enumeration of shuffles: every
 * word with letter j appearing k_j times, each weighted by the product of
 * its inversion weights. Words are generated in lexicographic order.
 * k = 0 gives 1 (the empty word).
 */
inline Complex twisted_multinomial_bruteforce(const Composition& comp, const WeightMatrix& w,
                                              std::uint64_t cap = kShuffleCap) {
    detail::check_same_size(comp, w, "twisted_multinomial_bruteforce");
    std::uint64_t count = 0;
    try {
        count = multinomial_exact(comp);
    } catch (const SizeLimitError&) {
        count = std::numeric_limits<std::uint64_t>::max();
    }
    if (count > cap) {
        throw SizeLimitError("twisted_multinomial_bruteforce: " + std::to_string(count) +
                             " shuffles exceed the cap of " + std::to_string(cap));
    }
    std::vector<int> word;
    word.reserve(static_cast<size_t>(comp.total()));
    for (int j = 0; j < comp.size(); ++j) {
        word.insert(word.end(), static_cast<size_t>(comp.part(j)), j);
    }
    Complex total{0.0, 0.0};
    do {
        total += detail::inversion_weight(word, w);
    } while (std::next_permutation(word.begin(), word.end()));
    return total;
}

/// Default cap on the memo table of the recurrence (product of k_j + 1).
inline constexpr std::uint64_t kRecurrenceCap = 10'000'000;

/**
 * Twisted multinomial coefficient by first-letter recursion:
 *   T(k) = sum over i with k_i >= 1 of T(k - e_i) * prod_{j<i} omega(j, i)^{k_j},
 * with T(0) = 1. Evaluated bottom-up over every sub-composition.
 */
inline Complex twisted_multinomial_recurrence(const Composition& comp, const WeightMatrix& w,
                                              std::uint64_t cap = kRecurrenceCap) {
    detail::check_same_size(comp, w, "twisted_multinomial_recurrence");
    const int m = comp.size();
    // Mixed-radix index over sub-compositions 0 <= x_j <= k_j.
    std::vector<std::uint64_t> stride(static_cast<size_t>(m) + 1, 1);
    for (int j = 0; j < m; ++j) {
        std::uint64_t radix = static_cast<std::uint64_t>(comp.part(j)) + 1;
        if (stride[static_cast<size_t>(j)] > cap / radix) {
            throw SizeLimitError("twisted_multinomial_recurrence: memo table exceeds cap");
        }
        stride[static_cast<size_t>(j) + 1] = stride[static_cast<size_t>(j)] * radix;
    }
    const std::uint64_t states = stride[static_cast<size_t>(m)];
    // power[i][j][e] = omega(j, i)^e for j < i, e <= k_j.
    std::vector<std::vector<std::vector<Complex>>> power(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        power[static_cast<size_t>(i)].resize(static_cast<size_t>(i));
        for (int j = 0; j < i; ++j) {
            power[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                detail::powers(w(j, i), comp.part(j));
        }
    }
    std::vector<Complex> table(states, Complex{0.0, 0.0});
    std::vector<int> x(static_cast<size_t>(m), 0);
    table[0] = 1.0;
    for (std::uint64_t idx = 1; idx < states; ++idx) {
        // Advance the odometer x to match idx.
        for (int j = 0; j < m; ++j) {
            if (x[static_cast<size_t>(j)] < comp.part(j)) {
                ++x[static_cast<size_t>(j)];
                break;
            }
            x[static_cast<size_t>(j)] = 0;
        }
        Complex sum{0.0, 0.0};
        for (int i = 0; i < m; ++i) {
            if (x[static_cast<size_t>(i)] == 0) {
                continue;
            }
            Complex term = table[idx - stride[static_cast<size_t>(i)]];
            for (int j = 0; j < i; ++j) {
                term *= power[static_cast<size_t>(i)][static_cast<size_t>(j)]
                             [static_cast<size_t>(x[static_cast<size_t>(j)])];
            }
            sum += term;
        }
        table[idx] = sum;
    }
    return table[states - 1];
}

/// q_2, ..., q_m if every column j has a constant weight omega(i, j) over
/// i < j (identity ordering), else nullopt.
inline std::optional<std::vector<Complex>> check_predecessor_uniform(const WeightMatrix& w) {
    std::vector<Complex> qs;
    for (int j = 1; j < w.size(); ++j) {
        const Complex q = w(0, j);
        for (int i = 1; i < j; ++i) {
            if (std::abs(w(i, j) - q) > kEntryTolerance) {
                return std::nullopt;
            }
        }
        qs.push_back(q);
    }
    return qs;
}

/// Full q-list (with q_1 = 1) if `perm` is a predecessor-uniform ordering of w.
inline std::optional<std::vector<Complex>> predecessor_uniform_under(const WeightMatrix& w,
                                                                     const std::vector<int>& perm) {
    auto tail = check_predecessor_uniform(w.permuted(perm));
    if (!tail) {
        return std::nullopt;
    }
    std::vector<Complex> qs;
    if (w.size() > 0) {
        qs.push_back(1.0);
    }
    qs.insert(qs.end(), tail->begin(), tail->end());
    return qs;
}

/**
 * Greedy peeling. Fills the ordering from the last position backwards: at
 * each step the largest-index remaining generator whose weights against
 * all other remaining generators agree is placed last and removed, so ties
 * leave smaller indices earlier and an ordering that is already
 * predecessor-uniform comes back as the identity. If no
 * remaining generator qualifies, no predecessor-uniform ordering exists
 * (any valid ordering restricted to the remaining set would supply one).
 * O(m^3) comparisons.
 */
inline std::optional<PuOrdering> find_pu_ordering(const WeightMatrix& w) {
    const int m = w.size();
    std::vector<int> remaining(static_cast<size_t>(m));
    std::iota(remaining.begin(), remaining.end(), 0);
    PuOrdering out;
    out.perm.assign(static_cast<size_t>(m), -1);
    out.qs.assign(static_cast<size_t>(m), Complex{1.0, 0.0});
    for (int pos = m - 1; pos >= 0; --pos) {
        bool placed = false;
        for (size_t c = remaining.size(); c-- > 0 && !placed;) {
            const int j = remaining[c];
            std::optional<Complex> common;
            bool uniform = true;
            for (int i : remaining) {
                if (i == j) {
                    continue;
                }
                if (!common) {
                    common = w(i, j);
                } else if (std::abs(w(i, j) - *common) > kEntryTolerance) {
                    uniform = false;
                    break;
                }
            }
            if (uniform) {
                out.perm[static_cast<size_t>(pos)] = j;
                out.qs[static_cast<size_t>(pos)] = pos == 0 ? Complex{1.0, 0.0} : common.value_or(1.0);
                remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(c));
                placed = true;
            }
        }
        if (!placed) {
            return std::nullopt;
        }
    }
    return out;
}

inline constexpr int kExhaustiveSearchMaxM = 8;

/// Tries all m! orderings in lexicographic order; returns the first
/// predecessor-uniform one. Test oracle for find_pu_ordering.
inline std::optional<PuOrdering> exhaustive_pu_search(const WeightMatrix& w) {
    const int m = w.size();
    if (m > kExhaustiveSearchMaxM) {
        throw SizeLimitError("exhaustive_pu_search: m = " + std::to_string(m) + " exceeds " +
                             std::to_string(kExhaustiveSearchMaxM));
    }
    std::vector<int> perm(static_cast<size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (auto qs = predecessor_uniform_under(w, perm)) {
            return PuOrdering{perm, *qs};
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

/// prod_j binom(l_j, k_j)_{q_j}, each factor by the q-Pascal recurrence.
inline Complex twisted_multinomial_factorized(const Composition& comp, const std::vector<QParam>& qs) {
    if (static_cast<int>(qs.size()) != comp.size()) {
        throw ArgumentError("twisted_multinomial_factorized: need one q per part");
    }
    Complex result{1.0, 0.0};
    for (int j = 0; j < comp.size(); ++j) {
        result *= q_binom_pascal(comp.prefix(j + 1), comp.part(j), qs[static_cast<size_t>(j)]);
    }
    return result;
}

/// Exact integer form of the factorization for q_j in {+1, -1}.
inline std::int64_t twisted_multinomial_factorized_exact(const Composition& comp,
                                                         const std::vector<int>& signs) {
    if (static_cast<int>(signs.size()) != comp.size()) {
        throw ArgumentError("twisted_multinomial_factorized_exact: need one sign per part");
    }
    std::int64_t result = 1;
    for (int j = 0; j < comp.size(); ++j) {
        std::int64_t f = q_binom_sign(comp.prefix(j + 1), comp.part(j), signs[static_cast<size_t>(j)]);
        if (__builtin_mul_overflow(result, f, &result)) {
            throw SizeLimitError("twisted_multinomial_factorized_exact: overflow");
        }
    }
    return result;
}

}  // namespace twistmps
