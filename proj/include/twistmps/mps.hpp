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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twistmps/common.hpp"
#include "twistmps/gaussian_binomial.hpp"

namespace twistmps {

/**
 * Exact matrix product representation of the pilot amplitudes of P(h),
 * h = sum_j c_j z_j, for a predecessor-uniform twisting with parameters q_j.
 *
 * Bond indices run over l = 0..d (the number of letters placed so far).
 * Site j carries, for every physical index r in {0..a-1}, the matrix
 *
 *   A[j]_r(l', l) = c_j^{l - l'} binom(l, l - l')_{q_j}   if l >= l' and
 *                                                          l - l' = r (mod a),
 *                 = 0                                      otherwise.
 *
 * Only the selection-rule-free part c_j^{l-l'} binom(l, l-l')_{q_j} is stored;
 * the residue of l - l' picks out the single physical index that owns each
 * entry. Left boundary e_0, right boundary e_d unless replaced.
 */
class MpsModel {
  public:
    MpsModel(std::vector<Complex> coeffs, std::vector<QParam> qs, int order, int degree)
        : coeffs_(std::move(coeffs)), qs_(std::move(qs)), order_(order), degree_(degree) {
        if (order_ < 2) {
            throw ArgumentError("MpsModel: generator order must be >= 2");
        }
        if (degree_ < 0) {
            throw ArgumentError("MpsModel: degree must be non-negative");
        }
        if (coeffs_.size() != qs_.size()) {
            throw ArgumentError("MpsModel: need one q per coefficient");
        }
        for (const Complex& c : coeffs_) {
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                throw ArgumentError("MpsModel: coefficients must be finite");
            }
        }
        const int dim = bond_dim();
        weights_.assign(coeffs_.size() * static_cast<size_t>(dim) * static_cast<size_t>(dim),
                        Complex{0.0, 0.0});
        // One Gaussian-binomial table per distinct q.
        std::vector<std::pair<QParam, QBinomTable>> tables;
        for (int j = 0; j < sites(); ++j) {
            const QParam q = qs_[static_cast<size_t>(j)];
            auto it = std::find_if(tables.begin(), tables.end(),
                                   [&](const auto& t) { return t.first == q; });
            if (it == tables.end()) {
                tables.emplace_back(q, QBinomTable(degree_, q));
                it = std::prev(tables.end());
            }
            const QBinomTable& table = it->second;
            std::vector<Complex> cpow = detail::powers(coeffs_[static_cast<size_t>(j)], degree_);
            for (int from = 0; from <= degree_; ++from) {
                for (int to = from; to <= degree_; ++to) {
                    weight_ref(j, from, to) = cpow[static_cast<size_t>(to - from)] * table(to, to - from);
                }
            }
        }
        right_.assign(static_cast<size_t>(dim), Complex{0.0, 0.0});
        right_.back() = 1.0;
    }

    int sites() const { return static_cast<int>(coeffs_.size()); }
    int order() const { return order_; }
    int degree() const { return degree_; }
    int bond_dim() const { return degree_ + 1; }
    const std::vector<Complex>& coefficients() const { return coeffs_; }
    const std::vector<QParam>& q_params() const { return qs_; }

    /// c_j^{l-l'} binom(l, l-l')_{q_j} for l >= l', else 0. No selection rule.
    Complex weight(int j, int from, int to) const {
        if (to < from) {
            return 0.0;
        }
        return weights_[flat(j, from, to)];
    }

    /// Entry (from, to) of the site matrix A[j]_r.
    Complex entry(int j, int r, int from, int to) const {
        if (to < from || (to - from) % order_ != r) {
            return 0.0;
        }
        return weights_[flat(j, from, to)];
    }

    Eigen::MatrixXcd site_matrix(int j, int r) const {
        if (j < 0 || j >= sites() || r < 0 || r >= order_) {
            throw ArgumentError("site_matrix: index out of range");
        }
        const int dim = bond_dim();
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
        for (int from = 0; from < dim; ++from) {
            for (int to = from; to < dim; ++to) {
                a(from, to) = entry(j, r, from, to);
            }
        }
        return a;
    }

    std::vector<Complex> left_boundary() const {
        std::vector<Complex> v(static_cast<size_t>(bond_dim()), Complex{0.0, 0.0});
        v.front() = 1.0;
        return v;
    }

    const std::vector<Complex>& right_boundary() const { return right_; }

    /// Copy of this model with a different right boundary (same site tensors).
    MpsModel with_right_boundary(std::vector<Complex> boundary) const {
        if (static_cast<int>(boundary.size()) != bond_dim()) {
            throw ArgumentError("right boundary must have length d + 1");
        }
        MpsModel copy = *this;
        copy.right_ = std::move(boundary);
        return copy;
    }

    /// Row-vector step v <- v A[j]_r. Entries move only to equal or larger
    /// bond indices, in steps congruent to r mod a.
    void apply_site(int j, int r, const std::vector<Complex>& in, std::vector<Complex>& out) const {
        const int dim = bond_dim();
        std::fill(out.begin(), out.end(), Complex{0.0, 0.0});
        const Complex* w = weights_.data() + flat(j, 0, 0);
        for (int from = 0; from < dim; ++from) {
            const Complex v = in[static_cast<size_t>(from)];
            if (v == Complex{0.0, 0.0}) {
                continue;
            }
            const Complex* row = w + static_cast<size_t>(from) * static_cast<size_t>(dim);
            for (int to = from + r; to < dim; to += order_) {
                out[static_cast<size_t>(to)] += v * row[to];
            }
        }
    }

  private:
    size_t flat(int j, int from, int to) const {
        const size_t dim = static_cast<size_t>(bond_dim());
        return (static_cast<size_t>(j) * dim + static_cast<size_t>(from)) * dim + static_cast<size_t>(to);
    }
    Complex& weight_ref(int j, int from, int to) { return weights_[flat(j, from, to)]; }

    std::vector<Complex> coeffs_;
    std::vector<QParam> qs_;
    int order_;
    int degree_;
    std::vector<Complex> weights_;
    std::vector<Complex> right_;
};

inline MpsModel build_model(std::vector<Complex> c, std::vector<QParam> qs, int a, int d) {
    return MpsModel(std::move(c), std::move(qs), a, d);
}

namespace detail {

inline void check_residues(const MpsModel& model, const Residues& r) {
    if (static_cast<int>(r.size()) != model.sites()) {
        throw ArgumentError("residue tuple has length " + std::to_string(r.size()) + ", expected " +
                            std::to_string(model.sites()));
    }
    for (int digit : r) {
        if (digit < 0 || digit >= model.order()) {
            throw ArgumentError("residue digit " + std::to_string(digit) + " outside [0, " +
                                std::to_string(model.order()) + ")");
        }
    }
}

inline Complex dot(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex s{0.0, 0.0};
    for (size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

}  // namespace detail

/// v_0 A[1]_{r_1} ... A[m]_{r_m}, left to right. O(m d^2 / a).
inline std::vector<Complex> sweep(const MpsModel& model, const Residues& r) {
    detail::check_residues(model, r);
    std::vector<Complex> v = model.left_boundary();
    std::vector<Complex> next(v.size());
    for (int j = 0; j < model.sites(); ++j) {
        model.apply_site(j, r[static_cast<size_t>(j)], v, next);
        v.swap(next);
    }
    return v;
}

/// Amplitude against the model's right boundary (e_d by default).
inline Complex contract(const MpsModel& model, const Residues& r) {
    return detail::dot(sweep(model, r), model.right_boundary());
}

/// Amplitude of the monomial h^k for any k <= d, using the right boundary e_k.
inline Complex contract_monomial(const MpsModel& model, const Residues& r, int k) {
    if (k < 0 || k > model.degree()) {
        throw ArgumentError("contract_monomial: k must lie in [0, d]");
    }
    return sweep(model, r)[static_cast<size_t>(k)];
}

/// Amplitude of P(h) = sum_j poly[j] h^j, using the right boundary poly.
inline Complex contract_polynomial(const MpsModel& model, const std::vector<Complex>& poly,
                                   const Residues& r) {
    if (static_cast<int>(poly.size()) != model.bond_dim()) {
        throw ArgumentError("contract_polynomial: polynomial has " + std::to_string(poly.size()) +
                            " coefficients, model expects " + std::to_string(model.bond_dim()));
    }
    return detail::dot(sweep(model, r), poly);
}

inline constexpr std::uint64_t kAmplitudeTableCap = 1'000'000;

/**
 * Every amplitude v_0 (prod A) boundary^T over {0..a-1}^m. Prefixes are
 * shared by a depth-first traversal, so each internal node costs one site
 * step. Entries with |alpha| <= 1e-14 are dropped when `prune` is set.
 */
inline AmplitudeTable all_amplitudes(const MpsModel& model, const std::vector<Complex>& boundary,
                                     std::uint64_t cap = kAmplitudeTableCap, bool prune = true) {
    if (static_cast<int>(boundary.size()) != model.bond_dim()) {
        throw ArgumentError("all_amplitudes: boundary must have length d + 1");
    }
    std::uint64_t count = 1;
    for (int j = 0; j < model.sites(); ++j) {
        if (count > cap / static_cast<std::uint64_t>(model.order())) {
            throw SizeLimitError("all_amplitudes: a^m = " + std::to_string(model.order()) + "^" +
                                 std::to_string(model.sites()) + " exceeds the cap of " +
                                 std::to_string(cap) + "; query specific residue tuples instead");
        }
        count *= static_cast<std::uint64_t>(model.order());
    }
    AmplitudeTable table;
    const int m = model.sites();
    std::vector<std::vector<Complex>> stack(static_cast<size_t>(m) + 1,
                                            std::vector<Complex>(static_cast<size_t>(model.bond_dim())));
    stack[0] = model.left_boundary();
    Residues r(static_cast<size_t>(m), 0);
    std::function<void(int)> visit = [&](int j) {
        if (j == m) {
            Complex value = detail::dot(stack[static_cast<size_t>(m)], boundary);
            if (!prune || std::abs(value) > kPruneThreshold) {
                table.emplace(r, value);
            }
            return;
        }
        const auto& in = stack[static_cast<size_t>(j)];
        bool empty = std::all_of(in.begin(), in.end(), [](Complex z) { return z == Complex{0.0, 0.0}; });
        if (empty && prune) {
            return;
        }
        for (int digit = 0; digit < model.order(); ++digit) {
            r[static_cast<size_t>(j)] = digit;
            model.apply_site(j, digit, in, stack[static_cast<size_t>(j) + 1]);
            visit(j + 1);
        }
        r[static_cast<size_t>(j)] = 0;
    };
    visit(0);
    return table;
}

}  // namespace twistmps
