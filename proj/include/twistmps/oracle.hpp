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

// Brute-force expansions of h^k used as ground truth for the matrix product
// representation. Nothing here touches Gaussian binomials or site tensors.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twistmps/common.hpp"
#include "twistmps/pauli.hpp"
#include "twistmps/twisted_multinomial.hpp"

namespace twistmps {

struct ExpansionResult {
    AmplitudeTable amplitudes;
    /// Words enumerated (word-wise) or matrix dimension (dense).
    std::uint64_t explored = 0;
};

enum class Schedule { kBubble, kInsertion };

/**
 * Phase acquired by sorting `word` into non-decreasing order with adjacent
 * transpositions, using z_x z_y = omega(y, x) z_y z_x for x > y. Both
 * schedules perform the same multiset of swaps in a different order.
 */
inline Complex normal_order_phase(std::vector<int> word, const WeightMatrix& w,
                                  Schedule schedule = Schedule::kBubble) {
    Complex phase{1.0, 0.0};
    const size_t len = word.size();
    if (schedule == Schedule::kBubble) {
        bool swapped = true;
        while (swapped) {
            swapped = false;
            for (size_t t = 0; t + 1 < len; ++t) {
                if (word[t] > word[t + 1]) {
                    phase *= w(word[t + 1], word[t]);
                    std::swap(word[t], word[t + 1]);
                    swapped = true;
                }
            }
        }
    } else {
        for (size_t t = 1; t < len; ++t) {
            for (size_t s = t; s > 0 && word[s - 1] > word[s]; --s) {
                phase *= w(word[s], word[s - 1]);
                std::swap(word[s - 1], word[s]);
            }
        }
    }
    return phase;
}

inline constexpr std::uint64_t kWordCap = 10'000'000;

namespace detail {

inline void prune(AmplitudeTable& table) {
    for (auto it = table.begin(); it != table.end();) {
        if (std::abs(it->second) <= kPruneThreshold) {
            it = table.erase(it);
        } else {
            ++it;
        }
    }
}

inline void check_coefficients(const WeightMatrix& w, const std::vector<Complex>& c) {
    if (static_cast<int>(c.size()) != w.size()) {
        throw ArgumentError("need one coefficient per generator");
    }
}

}  // namespace detail

/**
 * Distributes (sum_j c_j z_j)^k into all m^k words, normal-orders each word
 * by bubble sort and files the product of coefficients times the phase under
 * r_j = (count of letter j) mod a. Works for any twisting matrix.
 */
inline ExpansionResult expand_wordwise(const WeightMatrix& w, const std::vector<Complex>& c, int a,
                                       int k, std::uint64_t cap = kWordCap) {
    detail::check_coefficients(w, c);
    if (a < 2 || k < 0) {
        throw ArgumentError("expand_wordwise: need a >= 2 and k >= 0");
    }
    const int m = w.size();
    std::uint64_t words = 1;
    for (int t = 0; t < k; ++t) {
        if (m != 0 && words > cap / static_cast<std::uint64_t>(m)) {
            throw SizeLimitError("expand_wordwise: m^k exceeds the cap of " + std::to_string(cap));
        }
        words *= static_cast<std::uint64_t>(m);
    }
    ExpansionResult result;
    if (m == 0) {
        if (k == 0) {
            result.amplitudes[{}] = 1.0;
            result.explored = 1;
        }
        return result;
    }
    std::vector<int> word(static_cast<size_t>(k), 0);
    std::vector<int> counts(static_cast<size_t>(m), 0);
    Residues key(static_cast<size_t>(m), 0);
    for (std::uint64_t n = 0; n < words; ++n) {
        std::fill(counts.begin(), counts.end(), 0);
        Complex coeff{1.0, 0.0};
        for (int letter : word) {
            ++counts[static_cast<size_t>(letter)];
            coeff *= c[static_cast<size_t>(letter)];
        }
        for (int j = 0; j < m; ++j) {
            key[static_cast<size_t>(j)] = counts[static_cast<size_t>(j)] % a;
        }
        result.amplitudes[key] += coeff * normal_order_phase(word, w);
        // Odometer over words, last position fastest.
        for (int t = k - 1; t >= 0; --t) {
            if (++word[static_cast<size_t>(t)] < m) {
                break;
            }
            word[static_cast<size_t>(t)] = 0;
        }
    }
    result.explored = words;
    detail::prune(result.amplitudes);
    return result;
}

/// Amplitudes as a sum over compositions with k_j = r_j (mod a) of the
/// brute-force twisted multinomial times prod c_j^{k_j}.
inline AmplitudeTable expand_by_compositions(const WeightMatrix& w, const std::vector<Complex>& c,
                                             int a, int k) {
    detail::check_coefficients(w, c);
    AmplitudeTable table;
    for (const Composition& comp : compositions(k, w.size())) {
        Complex term = twisted_multinomial_bruteforce(comp, w);
        Residues key;
        for (int j = 0; j < comp.size(); ++j) {
            term *= int_power(c[static_cast<size_t>(j)], comp.part(j));
            key.push_back(comp.part(j) % a);
        }
        table[key] += term;
    }
    detail::prune(table);
    return table;
}

/**
 * Commutative (all generators commuting) amplitude for a = 2, by the
 * factorial-normalized transfer matrices
 *   A[j]_r(l', l) = c_j^{l-l'} / (l-l')!  when l >= l' and l - l' = r mod 2,
 * contracted between e_0 and e_k and multiplied by k!.
 */
inline Complex commutative_amplitude(const std::vector<Complex>& c, int k, const Residues& r) {
    if (r.size() != c.size() || k < 0) {
        throw ArgumentError("commutative_amplitude: size mismatch");
    }
    const int dim = k + 1;
    Eigen::RowVectorXcd v = Eigen::RowVectorXcd::Zero(dim);
    v(0) = 1.0;
    for (size_t j = 0; j < c.size(); ++j) {
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
        for (int from = 0; from < dim; ++from) {
            for (int to = from; to < dim; ++to) {
                const int delta = to - from;
                if (delta % 2 == r[j]) {
                    a(from, to) = int_power(c[j], delta) / std::tgamma(delta + 1.0);
                }
            }
        }
        v = v * a;
    }
    return std::tgamma(k + 1.0) * v(k);
}

inline constexpr int kDenseMaxSites = 6;

namespace detail {

inline int check_dense_qubits(const std::vector<PauliGen>& gens, const std::vector<Complex>& c, int k,
                              const char* who) {
    if (gens.size() != c.size()) {
        throw ArgumentError(std::string(who) + ": need one coefficient per generator");
    }
    if (k < 0) {
        throw ArgumentError(std::string(who) + ": k must be non-negative");
    }
    if (gens.empty()) {
        throw ArgumentError(std::string(who) + ": need at least one generator");
    }
    detail::check_uniform(gens);
    const int n = gens.front().n;
    if (gens.front().d != 2) {
        throw PreconditionError(std::string(who) + ": only qubit generators are supported");
    }
    if (n > kDenseMaxSites) {
        throw SizeLimitError(std::string(who) + ": n = " + std::to_string(n) + " exceeds " +
                             std::to_string(kDenseMaxSites));
    }
    return n;
}

/// Calls visit(r, B_r) for every ordered monomial B_r = P_1^{r_1} ... P_m^{r_m},
/// r in {0,1}^m, sharing prefix products.
inline void for_each_ordered_monomial(const std::vector<PauliGen>& gens,
                                      const std::function<void(const Residues&, const Eigen::MatrixXcd&)>& visit) {
    std::vector<Eigen::MatrixXcd> mats;
    for (const auto& g : gens) {
        mats.push_back(dense_matrix(g));
    }
    const int m = static_cast<int>(gens.size());
    const Eigen::Index dim = mats.front().rows();
    Residues r(static_cast<size_t>(m), 0);
    std::function<void(int, const Eigen::MatrixXcd&)> step = [&](int j, const Eigen::MatrixXcd& prefix) {
        if (j == m) {
            visit(r, prefix);
            return;
        }
        r[static_cast<size_t>(j)] = 0;
        step(j + 1, prefix);
        r[static_cast<size_t>(j)] = 1;
        step(j + 1, prefix * mats[static_cast<size_t>(j)]);
        r[static_cast<size_t>(j)] = 0;
    };
    step(0, Eigen::MatrixXcd::Identity(dim, dim));
}

}  // namespace detail

/// (sum_j c_j P_j)^k as a dense 2^n x 2^n matrix, by repeated multiplication.
inline Eigen::MatrixXcd dense_hamiltonian_power(const std::vector<PauliGen>& gens, const std::vector<Complex>& c,
                                                int k) {
    const int n = detail::check_dense_qubits(gens, c, k, "dense_hamiltonian_power");
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    for (size_t j = 0; j < gens.size(); ++j) {
        h += c[j] * dense_matrix(gens[j]);
    }
    Eigen::MatrixXcd power = Eigen::MatrixXcd::Identity(dim, dim);
    for (int t = 0; t < k; ++t) {
        power = power * h;
    }
    return power;
}

/**
 * Expansion of H^k, H = sum_j c_j P_j, on explicit 2^n x 2^n matrices.
 * The ordered monomials B_r = P_1^{r_1} ... P_m^{r_m} of independent
 * generators are distinct Paulis up to phase and hence trace-orthogonal, so
 * alpha_r = Tr(B_r^dagger H^k) / 2^n.
 */
inline ExpansionResult expand_dense_pauli(const std::vector<PauliGen>& gens,
                                          const std::vector<Complex>& c, int k) {
    const int n = detail::check_dense_qubits(gens, c, k, "expand_dense_pauli");
    if (static_cast<int>(gens.size()) > 2 * n || symplectic_rank(gens) != static_cast<int>(gens.size())) {
        throw PreconditionError(
            "expand_dense_pauli: generators must be linearly independent over F_2");
    }
    const Eigen::MatrixXcd power = dense_hamiltonian_power(gens, c, k);
    const double dim = static_cast<double>(power.rows());
    ExpansionResult result;
    result.explored = static_cast<std::uint64_t>(power.rows());
    detail::for_each_ordered_monomial(gens, [&](const Residues& r, const Eigen::MatrixXcd& b) {
        Complex value = b.conjugate().cwiseProduct(power).sum() / dim;
        if (std::abs(value) > kPruneThreshold) {
            result.amplitudes[r] = value;
        }
    });
    return result;
}

/**
 * sum_r alpha_r B_r as a dense matrix. Works for dependent generator sets
 * (e.g. 2n + 1 Jordan-Wigner operators), where the amplitudes are not
 * recoverable from H^k by traces but the reassembled operator still is H^k.
 */
inline Eigen::MatrixXcd reassemble_operator(const std::vector<PauliGen>& gens, const AmplitudeTable& amplitudes) {
    detail::check_dense_qubits(gens, std::vector<Complex>(gens.size()), 0, "reassemble_operator");
    const Eigen::Index dim = Eigen::Index{1} << gens.front().n;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    detail::for_each_ordered_monomial(gens, [&](const Residues& r, const Eigen::MatrixXcd& b) {
        auto it = amplitudes.find(r);
        if (it != amplitudes.end()) {
            out += it->second * b;
        }
    });
    return out;
}

/// Largest relative_error over the union of keys (missing keys are zero).
inline double max_relative_error(const AmplitudeTable& got, const AmplitudeTable& reference) {
    double worst = 0.0;
    for (const auto& [key, ref] : reference) {
        auto it = got.find(key);
        worst = std::max(worst, relative_error(it == got.end() ? Complex{} : it->second, ref));
    }
    for (const auto& [key, value] : got) {
        if (!reference.contains(key)) {
            worst = std::max(worst, relative_error(value, Complex{}));
        }
    }
    return worst;
}

}  // namespace twistmps
