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

#include "twistmps/mps.hpp"

#include <gtest/gtest.h>

#include "twistmps/oracle.hpp"
#include "twistmps/pilot.hpp"
#include "twistmps/selftest.hpp"

using namespace twistmps;

namespace {

void expect_close(Complex got, Complex want, double tol = 1e-12) {
    EXPECT_LE(relative_error(got, want), tol) << "got " << got << " want " << want;
}

}  // namespace

TEST(mps, single_site_matrices) {
    const Complex c{0.6, -0.3};
    const MpsModel model = build_model({c}, {QParam(1.0)}, 2, 1);
    const auto a0 = model.site_matrix(0, 0);
    const auto a1 = model.site_matrix(0, 1);
    ASSERT_EQ(a0.rows(), 2);
    EXPECT_EQ(a0(0, 0), Complex(1.0));
    EXPECT_EQ(a0(1, 1), Complex(1.0));
    EXPECT_EQ(a0(0, 1), Complex(0.0));
    EXPECT_EQ(a0(1, 0), Complex(0.0));
    EXPECT_EQ(a1(0, 1), c);
    EXPECT_EQ(a1(0, 0), Complex(0.0));
    EXPECT_EQ(a1(1, 1), Complex(0.0));
    EXPECT_EQ(a1(1, 0), Complex(0.0));
}

TEST(mps, contract_cases) {
    const Complex c{0.6, -0.3};
    const MpsModel one = build_model({c}, {QParam(1.0)}, 2, 1);
    EXPECT_EQ(contract(one, {1}), c);
    EXPECT_EQ(contract(one, {0}), Complex(0.0));

    const MpsModel anti = build_model({1.0, 1.0}, {QParam(1.0), QParam(-1.0)}, 2, 2);
    EXPECT_EQ(contract(anti, {0, 0}), Complex(2.0));
    EXPECT_EQ(contract(anti, {1, 1}), Complex(0.0));

    const MpsModel comm = build_model({1.0, 1.0}, {QParam(1.0), QParam(1.0)}, 2, 2);
    EXPECT_EQ(contract(comm, {1, 1}), Complex(2.0));
    EXPECT_EQ(contract(comm, {0, 0}), Complex(2.0));
}

TEST(mps, malformed_residues) {
    const MpsModel model = build_model({1.0, 1.0}, {QParam(1.0), QParam(-1.0)}, 2, 2);
    EXPECT_THROW(contract(model, {0}), ArgumentError);
    EXPECT_THROW(contract(model, {0, 2}), ArgumentError);
    EXPECT_THROW(contract(model, {-1, 0}), ArgumentError);
    EXPECT_THROW(build_model({1.0}, {QParam(1.0)}, 1, 2), ArgumentError);
    EXPECT_THROW(build_model({1.0}, {QParam(1.0)}, 2, -1), ArgumentError);
    EXPECT_THROW(build_model({1.0, 2.0}, {QParam(1.0)}, 2, 1), ArgumentError);
    EXPECT_THROW(build_model({Complex(INFINITY, 0.0)}, {QParam(1.0)}, 2, 1), ArgumentError);
}

TEST(mps, site_structure) {
    Sampler s(31);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = s.integer(1, 4);
        const int a = s.integer(2, 4);
        const int d = s.integer(0, 7);
        std::vector<Complex> c;
        std::vector<QParam> qs;
        for (int j = 0; j < m; ++j) {
            c.push_back(s.nonzero());
            qs.emplace_back(j == 0 ? Complex(1.0) : s.root(a));
        }
        const MpsModel model = build_model(c, qs, a, d);
        for (int j = 0; j < m; ++j) {
            Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d + 1, d + 1);
            for (int r = 0; r < a; ++r) {
                const auto site = model.site_matrix(j, r);
                ASSERT_EQ(site.rows(), d + 1);
                ASSERT_EQ(site.cols(), d + 1);
                for (int from = 0; from <= d; ++from) {
                    for (int to = 0; to <= d; ++to) {
                        if (to < from || (to - from) % a != r) {
                            EXPECT_EQ(site(from, to), Complex(0.0));
                        }
                        // Each bond pair belongs to exactly one physical index.
                        if (to >= from && (to - from) % a == r) {
                            EXPECT_EQ(total(from, to), Complex(0.0));
                        }
                    }
                }
                total += site;
            }
            for (int from = 0; from <= d; ++from) {
                for (int to = from; to <= d; ++to) {
                    expect_close(total(from, to),
                                 int_power(c[static_cast<size_t>(j)], to - from) *
                                     q_binom_pascal(to, to - from, qs[static_cast<size_t>(j)]));
                }
            }
        }
    }
}

TEST(mps, bond_monotonicity) {
    Sampler s(32);
    const int m = 5;
    const int d = 6;
    std::vector<Complex> c;
    std::vector<QParam> qs;
    for (int j = 0; j < m; ++j) {
        c.push_back(s.unit_disk());
        qs.emplace_back(j == 0 ? Complex(1.0) : s.root(3));
    }
    const MpsModel model = build_model(c, qs, 3, d);
    for (const Residues& r : all_residues(m, 3)) {
        std::vector<Complex> v = model.left_boundary();
        std::vector<Complex> next(v.size());
        int min_bond = 0;
        for (int j = 0; j < m; ++j) {
            model.apply_site(j, r[static_cast<size_t>(j)], v, next);
            min_bond += r[static_cast<size_t>(j)];
            // Support lies in bond indices >= sum of residues so far.
            for (int l = 0; l < std::min(min_bond, d + 1); ++l) {
                EXPECT_EQ(next[static_cast<size_t>(l)], Complex(0.0));
            }
            v.swap(next);
        }
    }
}

TEST(mps, sparsity_at_minus_one) {
    const int d = 9;
    const MpsModel model = build_model({0.7, 1.3}, {QParam(1.0), QParam(-1.0)}, 2, d);
    for (int from = 0; from <= d; ++from) {
        for (int to = from; to <= d; ++to) {
            const bool zero = (to % 2 == 0) && ((to - from) % 2 == 1);
            EXPECT_EQ(model.weight(1, from, to) == Complex(0.0), zero) << from << " " << to;
        }
    }
}

TEST(mps, zero_coefficient_forces_zero_residue) {
    const MpsModel model = build_model({1.0, 0.0}, {QParam(1.0), QParam(-1.0)}, 2, 3);
    EXPECT_EQ(contract(model, {1, 1}), Complex(0.0));
    EXPECT_EQ(contract(model, {1, 0}), Complex(1.0));
}

TEST(mps, polynomial_cases) {
    Sampler s(33);
    std::vector<Complex> c{s.unit_disk(), s.unit_disk(), s.unit_disk()};
    std::vector<QParam> qs{QParam(1.0), QParam(-1.0), QParam(-1.0)};
    const MpsModel model = build_model(c, qs, 2, 3);
    // P = 1.
    for (const Residues& r : all_residues(3, 2)) {
        const bool zero_tuple = r == Residues{0, 0, 0};
        EXPECT_EQ(contract_polynomial(model, {1.0, 0.0, 0.0, 0.0}, r), Complex(zero_tuple ? 1.0 : 0.0));
    }
    // P = x^2 equals the monomial query with boundary e_2.
    for (const Residues& r : all_residues(3, 2)) {
        EXPECT_EQ(contract_polynomial(model, {0.0, 0.0, 1.0, 0.0}, r), contract_monomial(model, r, 2));
    }
    // P = x picks out c_j at unit tuples.
    for (int j = 0; j < 3; ++j) {
        Residues e(3, 0);
        e[static_cast<size_t>(j)] = 1;
        expect_close(contract_polynomial(model, {0.0, 1.0, 0.0, 0.0}, e), c[static_cast<size_t>(j)]);
    }
    // Degree-3 random polynomial against separate monomial sweeps.
    std::vector<Complex> poly{s.unit_disk(), s.unit_disk(), s.unit_disk(), s.unit_disk()};
    for (const Residues& r : all_residues(3, 2)) {
        Complex want{0.0, 0.0};
        for (int j = 0; j <= 3; ++j) {
            want += poly[static_cast<size_t>(j)] * contract(build_model(c, qs, 2, j), r);
        }
        expect_close(contract_polynomial(model, poly, r), want, 1e-10);
    }
    EXPECT_THROW(contract_polynomial(model, {1.0, 2.0}, {0, 0, 0}), ArgumentError);
    EXPECT_THROW(contract_monomial(model, {0, 0, 0}, 4), ArgumentError);
}

TEST(mps, all_amplitudes_cases) {
    const Complex c{0.25, 0.5};
    const auto single = all_amplitudes(build_model({c}, {QParam(1.0)}, 2, 1), {0.0, 1.0});
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(single.at({1}), c);

    const MpsModel anti = build_model({1.0, 1.0}, {QParam(1.0), QParam(-1.0)}, 2, 2);
    const auto table = all_amplitudes(anti, anti.right_boundary());
    ASSERT_EQ(table.size(), 1u);
    EXPECT_EQ(table.at({0, 0}), Complex(2.0));

    const Complex w = root_of_unity(1, 3);
    const MpsModel tri = build_model({1.0, 1.0}, {QParam(1.0), QParam(w)}, 3, 2);
    const auto mps = all_amplitudes(tri, tri.right_boundary());
    const auto oracle = expand_wordwise(WeightMatrix::predecessor_uniform({QParam(1.0), QParam(w)}, 3), {1.0, 1.0}, 3, 2);
    EXPECT_LE(max_relative_error(mps, oracle.amplitudes), 1e-12);
    EXPECT_EQ(all_amplitudes(tri, tri.right_boundary(), 1000, false).size(), 9u);
}

TEST(mps, all_amplitudes_cap) {
    const MpsModel model = anticommuting_model(21, 2, 1);
    EXPECT_THROW(all_amplitudes(model, model.right_boundary()), SizeLimitError);
    try {
        all_amplitudes(model, model.right_boundary());
    } catch (const SizeLimitError& e) {
        EXPECT_NE(std::string(e.what()).find("query specific"), std::string::npos);
    }
}

TEST(mps, property_matches_wordwise_oracle) {
    Sampler s(34);
    for (int trial = 0; trial < 200; ++trial) {
        const int m = s.integer(1, 5);
        const int k = s.integer(0, 6);
        const int a = s.integer(2, 3);
        std::vector<QParam> qs{QParam(1.0)};
        std::vector<Complex> c{s.unit_disk()};
        for (int j = 1; j < m; ++j) {
            qs.emplace_back(s.root(a));
            c.push_back(s.unit_disk());
        }
        const MpsModel model = build_model(c, qs, a, k);
        const auto oracle = expand_wordwise(WeightMatrix::predecessor_uniform(qs, a), c, a, k).amplitudes;
        for (const Residues& r : all_residues(m, a)) {
            const auto it = oracle.find(r);
            expect_close(contract(model, r), it == oracle.end() ? Complex{} : it->second, 1e-9);
        }
    }
}

TEST(mps, property_commutative_consistency) {
    Sampler s(35);
    for (int m = 1; m <= 6; ++m) {
        for (int k = 0; k <= 8; ++k) {
            std::vector<Complex> c;
            for (int j = 0; j < m; ++j) {
                c.push_back(s.unit_disk());
            }
            const MpsModel model = build_model(c, std::vector<QParam>(static_cast<size_t>(m), QParam(1.0)), 2, k);
            for (const Residues& r : all_residues(m, 2)) {
                expect_close(contract(model, r), commutative_amplitude(c, k, r), 1e-10);
            }
        }
    }
}

TEST(mps, with_right_boundary) {
    const MpsModel model = build_model({1.0, 1.0}, {QParam(1.0), QParam(1.0)}, 2, 2);
    const MpsModel shifted = model.with_right_boundary({0.0, 1.0, 0.0});
    EXPECT_EQ(contract(shifted, {1, 0}), Complex(1.0));
    EXPECT_EQ(contract(shifted, {0, 1}), Complex(1.0));
    EXPECT_THROW(model.with_right_boundary({1.0}), ArgumentError);
}

TEST(pilot_model, reorder_phase_restores_input_order) {
    Sampler s(36);
    int reordered = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int m = s.integer(2, 5);
        const int a = s.integer(2, 4);
        const int k = s.integer(0, 5);
        const WeightMatrix w = WeightMatrix::from_upper(m, [&](int, int) { return s.root(a); }, a);
        std::vector<Complex> c;
        for (int j = 0; j < m; ++j) {
            c.push_back(s.unit_disk());
        }
        const auto pilot = PilotModel::create(w, c, a, k);
        if (!pilot) {
            continue;
        }
        reordered += std::is_sorted(pilot->ordering().perm.begin(), pilot->ordering().perm.end()) ? 0 : 1;
        const auto oracle = expand_wordwise(w, c, a, k).amplitudes;
        EXPECT_LE(max_relative_error(pilot->all(unit_vector(k + 1, k)), oracle), 1e-9);
        for (const Residues& r : all_residues(m, a)) {
            EXPECT_EQ(pilot->to_input_order(pilot->to_model_order(r)), r);
        }
    }
    EXPECT_GT(reordered, 30);
}

TEST(pilot_model, plain_key_permutation_is_not_enough) {
    // omega(0,1) = -1, omega(0,2) = +1, omega(1,2) = -1: generator 2 must move.
    const WeightMatrix w = WeightMatrix::from_upper(3, [](int i, int j) {
        return (i == 0 && j == 2) ? Complex{1.0} : Complex{-1.0};
    }, 2);
    const std::vector<Complex> c{0.5, 0.7, 0.9};
    const auto pilot = PilotModel::create(w, c, 2, 3);
    ASSERT_TRUE(pilot.has_value());
    const auto oracle = expand_wordwise(w, c, 2, 3).amplitudes;
    bool some_phase = false;
    for (const auto& [r, value] : oracle) {
        const Complex raw = contract_monomial(pilot->model(), pilot->to_model_order(r), 3);
        expect_close(raw * pilot->reorder_phase(r), value);
        some_phase = some_phase || relative_error(raw, value) > 1e-6;
    }
    EXPECT_TRUE(some_phase);
}

TEST(mps, benchmark_query_is_nonzero) {
    // Anticommuting generators give h^2 = sum_j c_j^2, so h^k = (sum c_j^2)^(k/2) for even k.
    for (int m : {1, 7, 101}) {
        for (int k : {0, 2, 5, 20}) {
            const MpsModel model = anticommuting_model(m, k, 99);
            const Residues r = benchmark_residues(m, k);
            Complex square{0.0, 0.0};
            double norm = 0.0;
            for (const Complex& c : model.coefficients()) {
                square += c * c;
                norm += std::norm(c);
            }
            const Complex value = contract(model, r);
            EXPECT_GT(std::abs(value), 0.0) << m << " " << k;
            if (k % 2 == 0) {
                // Terms of size norm^(k/2) cancel down to |square|^(k/2).
                const double condition = std::pow(norm / std::abs(square), k / 2);
                EXPECT_LE(relative_error(value, std::pow(square, k / 2)), 1e-13 * condition) << m << " " << k;
            }
        }
    }
}
