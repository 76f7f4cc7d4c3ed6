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
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "twistmps/common.hpp"
#include "twistmps/twisted_multinomial.hpp"

namespace twistmps {

inline bool is_prime(int d) {
    if (d < 2) {
        return false;
    }
    for (int p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            return false;
        }
    }
    return true;
}

/**
 * Generalized Pauli X^u Z^w on n sites of prime dimension d, in symplectic
 * form (u | w) with digits mod d. The global phase is fixed: for qubits a
 * site with u = w = 1 is Y, otherwise the operator is X^u Z^w.
 */
struct PauliGen {
    int n = 0;
    int d = 2;
    std::vector<int> u;
    std::vector<int> w;

    PauliGen() = default;
    PauliGen(int dim, std::vector<int> x_part, std::vector<int> z_part)
        : n(static_cast<int>(x_part.size())), d(dim), u(std::move(x_part)), w(std::move(z_part)) {
        if (!is_prime(d)) {
            throw ArgumentError("PauliGen: local dimension must be prime, got " + std::to_string(d));
        }
        if (u.size() != w.size()) {
            throw ArgumentError("PauliGen: X and Z parts must have equal length");
        }
        for (size_t i = 0; i < u.size(); ++i) {
            if (u[i] < 0 || u[i] >= d || w[i] < 0 || w[i] >= d) {
                throw ArgumentError("PauliGen: digits must lie in [0, d)");
            }
        }
    }

    /// Qubit string over {I, X, Y, Z}, leftmost character is site 0.
    static PauliGen from_string(const std::string& s) {
        std::vector<int> x(s.size(), 0);
        std::vector<int> z(s.size(), 0);
        for (size_t i = 0; i < s.size(); ++i) {
            switch (s[i]) {
                case 'I': case '_': break;
                case 'X': x[i] = 1; break;
                case 'Y': x[i] = 1; z[i] = 1; break;
                case 'Z': z[i] = 1; break;
                default:
                    throw ArgumentError(std::string("invalid Pauli character '") + s[i] + "'");
            }
        }
        return PauliGen(2, std::move(x), std::move(z));
    }

    /// Qubits render as IXYZ. Qudits render one space-separated token per
    /// site: "I", or "X<a>", "Z<b>", "X<a>Z<b>" for X^a Z^b.
    std::string to_string() const {
        std::string out;
        for (int i = 0; i < n; ++i) {
            const int a = u[static_cast<size_t>(i)];
            const int b = w[static_cast<size_t>(i)];
            if (d == 2) {
                out.push_back("IZXY"[2 * a + b]);
                continue;
            }
            if (i > 0) {
                out.push_back(' ');
            }
            if (a == 0 && b == 0) {
                out.push_back('I');
            }
            if (a != 0) {
                out += "X" + std::to_string(a);
            }
            if (b != 0) {
                out += "Z" + std::to_string(b);
            }
        }
        return out;
    }

    /// Parses the qudit token form produced by to_string().
    static PauliGen from_qudit_string(const std::string& s, int d) {
        std::vector<int> x;
        std::vector<int> z;
        size_t pos = 0;
        auto number = [&](size_t& at) {
            size_t start = at;
            while (at < s.size() && std::isdigit(static_cast<unsigned char>(s[at]))) {
                ++at;
            }
            if (start == at) {
                throw ArgumentError("qudit Pauli: expected exponent digits in '" + s + "'");
            }
            return std::stoi(s.substr(start, at - start));
        };
        while (pos < s.size()) {
            if (std::isspace(static_cast<unsigned char>(s[pos]))) {
                ++pos;
                continue;
            }
            int a = 0;
            int b = 0;
            if (s[pos] == 'I') {
                ++pos;
            } else {
                if (s[pos] == 'X') {
                    ++pos;
                    a = number(pos);
                }
                if (pos < s.size() && s[pos] == 'Z') {
                    ++pos;
                    b = number(pos);
                }
                if (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) {
                    throw ArgumentError("qudit Pauli: unexpected character in '" + s + "'");
                }
            }
            x.push_back(a);
            z.push_back(b);
        }
        return PauliGen(d, std::move(x), std::move(z));
    }

    bool operator==(const PauliGen&) const = default;
};

/// t in [0, d) with P Q = exp(2 pi i t / d) Q P; t = u_P.w_Q - w_P.u_Q mod d.
/// This fixes the qudit convention X Z = exp(2 pi i / d) Z X.
inline int phase_exponent(const PauliGen& p, const PauliGen& q) {
    if (p.n != q.n || p.d != q.d) {
        throw ArgumentError("commutation phase: generators differ in site count or dimension");
    }
    std::int64_t t = 0;
    for (int i = 0; i < p.n; ++i) {
        const auto s = static_cast<size_t>(i);
        t += static_cast<std::int64_t>(p.u[s]) * q.w[s] - static_cast<std::int64_t>(p.w[s]) * q.u[s];
    }
    t %= p.d;
    if (t < 0) {
        t += p.d;
    }
    return static_cast<int>(t);
}

/// The scalar s with P Q = s Q P, a d-th root of unity.
inline Complex commutation_phase(const PauliGen& p, const PauliGen& q) {
    return root_of_unity(phase_exponent(p, q), p.d);
}

namespace detail {

inline void check_uniform(const std::vector<PauliGen>& gens) {
    for (const auto& g : gens) {
        if (g.n != gens.front().n || g.d != gens.front().d) {
            throw ArgumentError("generators must share the site count and local dimension");
        }
    }
}

}  // namespace detail

/// Integer phase exponents of the twisting matrix: entry (i, j) is t with
/// omega(i, j) = exp(2 pi i t / d).
inline std::vector<std::vector<int>> phase_exponents_from_paulis(const std::vector<PauliGen>& gens) {
    detail::check_uniform(gens);
    const size_t m = gens.size();
    std::vector<std::vector<int>> t(m, std::vector<int>(m, 0));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < m; ++j) {
            // z_j z_i = omega(i, j) z_i z_j, i.e. omega(i, j) is the phase of (P_j, P_i).
            t[i][j] = phase_exponent(gens[j], gens[i]);
        }
    }
    return t;
}

/// Twisting matrix of a generator list, with generator order a = d.
inline WeightMatrix weight_matrix_from_paulis(const std::vector<PauliGen>& gens) {
    if (gens.empty()) {
        return WeightMatrix(0, {}, 2);
    }
    const auto t = phase_exponents_from_paulis(gens);
    const int d = gens.front().d;
    return WeightMatrix::from_upper(
        static_cast<int>(gens.size()),
        [&](int i, int j) { return root_of_unity(t[static_cast<size_t>(i)][static_cast<size_t>(j)], d); }, d);
}

struct AnticommGraph {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
    /// Vertex lists, each sorted; components ordered by smallest vertex.
    std::vector<std::vector<int>> components;
    int c_max = 0;
};

/// Graph with an edge wherever the weight differs from +1; components by
/// breadth-first search.
inline AnticommGraph anticommutation_graph(const WeightMatrix& w) {
    AnticommGraph g;
    const int m = w.size();
    g.vertices = m;
    std::vector<std::vector<int>> adj(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            if (std::abs(w(i, j) - 1.0) > kEntryTolerance) {
                g.edges.emplace_back(i, j);
                adj[static_cast<size_t>(i)].push_back(j);
                adj[static_cast<size_t>(j)].push_back(i);
            }
        }
    }
    std::vector<bool> seen(static_cast<size_t>(m), false);
    for (int s = 0; s < m; ++s) {
        if (seen[static_cast<size_t>(s)]) {
            continue;
        }
        std::vector<int> comp{s};
        seen[static_cast<size_t>(s)] = true;
        for (size_t head = 0; head < comp.size(); ++head) {
            for (int nb : adj[static_cast<size_t>(comp[head])]) {
                if (!seen[static_cast<size_t>(nb)]) {
                    seen[static_cast<size_t>(nb)] = true;
                    comp.push_back(nb);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        g.c_max = std::max(g.c_max, static_cast<int>(comp.size()));
        g.components.push_back(std::move(comp));
    }
    return g;
}

inline AnticommGraph anticommutation_graph(const std::vector<PauliGen>& gens) {
    return anticommutation_graph(weight_matrix_from_paulis(gens));
}

/// 2n + 1 mutually anticommuting qubit Paulis:
/// Z..Z X I..I and Z..Z Y I..I for each site, then Z..Z.
inline std::vector<PauliGen> jordan_wigner(int n) {
    if (n < 1) {
        throw ArgumentError("jordan_wigner: n must be >= 1");
    }
    std::vector<PauliGen> out;
    for (int k = 0; k < n; ++k) {
        for (char last : {'X', 'Y'}) {
            std::string s(static_cast<size_t>(k), 'Z');
            s.push_back(last);
            s.append(static_cast<size_t>(n - k - 1), 'I');
            out.push_back(PauliGen::from_string(s));
        }
    }
    out.push_back(PauliGen::from_string(std::string(static_cast<size_t>(n), 'Z')));
    return out;
}

/// Realizes any symmetric zero-diagonal binary matrix L as commutation data
/// on n = m qubits: P_i = (e_i | w_i) with w_i[j] = L[i][j] for j > i.
inline std::vector<PauliGen> realize_lambda(const std::vector<std::vector<int>>& lambda) {
    const size_t m = lambda.size();
    for (size_t i = 0; i < m; ++i) {
        if (lambda[i].size() != m) {
            throw ArgumentError("realize_lambda: matrix must be square");
        }
        if (lambda[i][i] != 0) {
            throw ArgumentError("realize_lambda: diagonal must be zero");
        }
        for (size_t j = 0; j < m; ++j) {
            if (lambda[i][j] != 0 && lambda[i][j] != 1) {
                throw ArgumentError("realize_lambda: entries must be 0 or 1");
            }
            if (lambda[i][j] != lambda[j][i]) {
                throw ArgumentError("realize_lambda: matrix must be symmetric");
            }
        }
    }
    std::vector<PauliGen> out;
    for (size_t i = 0; i < m; ++i) {
        std::vector<int> x(m, 0);
        std::vector<int> z(m, 0);
        x[i] = 1;
        for (size_t j = i + 1; j < m; ++j) {
            z[j] = lambda[i][j];
        }
        out.emplace_back(2, std::move(x), std::move(z));
    }
    return out;
}

/// Rank over F_d of the symplectic vectors (u | w).
inline int symplectic_rank(const std::vector<PauliGen>& gens) {
    if (gens.empty()) {
        return 0;
    }
    detail::check_uniform(gens);
    const int d = gens.front().d;
    const int cols = 2 * gens.front().n;
    std::vector<std::vector<int>> rows;
    for (const auto& g : gens) {
        std::vector<int> row(g.u);
        row.insert(row.end(), g.w.begin(), g.w.end());
        rows.push_back(std::move(row));
    }
    auto inverse = [d](int a) {
        for (int b = 1; b < d; ++b) {
            if ((a * b) % d == 1) {
                return b;
            }
        }
        return 0;
    };
    int rank = 0;
    for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
        int pivot = -1;
        for (size_t r = static_cast<size_t>(rank); r < rows.size(); ++r) {
            if (rows[r][static_cast<size_t>(c)] != 0) {
                pivot = static_cast<int>(r);
                break;
            }
        }
        if (pivot < 0) {
            continue;
        }
        std::swap(rows[static_cast<size_t>(rank)], rows[static_cast<size_t>(pivot)]);
        auto& prow = rows[static_cast<size_t>(rank)];
        const int inv = inverse(prow[static_cast<size_t>(c)]);
        for (int& v : prow) {
            v = (v * inv) % d;
        }
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == static_cast<size_t>(rank) || rows[r][static_cast<size_t>(c)] == 0) {
                continue;
            }
            const int f = rows[r][static_cast<size_t>(c)];
            for (size_t k = 0; k < rows[r].size(); ++k) {
                rows[r][k] = ((rows[r][k] - f * prow[k]) % d + d) % d;
            }
        }
        ++rank;
    }
    return rank;
}

/**
 * Explicit d^n x d^n matrix of a generator, as a Kronecker product of
 * single-site factors (site 0 is the most significant tensor factor).
 * Qubits use the standard X, Y, Z with Y = i X Z. Qudits use shift
 * X|j> = |j+1> and clock Z|j> = exp(-2 pi i j / d)|j>, so that
 * X Z = exp(2 pi i / d) Z X.
 */
inline Eigen::MatrixXcd dense_matrix(const PauliGen& p) {
    const int d = p.d;
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(1, 1);
    for (int i = 0; i < p.n; ++i) {
        const int ux = p.u[static_cast<size_t>(i)];
        const int wz = p.w[static_cast<size_t>(i)];
        Eigen::MatrixXcd site = Eigen::MatrixXcd::Zero(d, d);
        for (int col = 0; col < d; ++col) {
            // X^u Z^w |col> = clock(col)^w |col + u>.
            const int row = (col + ux) % d;
            site(row, col) = root_of_unity(-static_cast<std::int64_t>(col) * wz, d);
        }
        if (d == 2 && ux == 1 && wz == 1) {
            site *= Complex{0.0, 1.0};
        }
        Eigen::MatrixXcd next(result.rows() * d, result.cols() * d);
        for (Eigen::Index r = 0; r < result.rows(); ++r) {
            for (Eigen::Index c = 0; c < result.cols(); ++c) {
                next.block(r * d, c * d, d, d) = result(r, c) * site;
            }
        }
        result = std::move(next);
    }
    return result;
}

}  // namespace twistmps
