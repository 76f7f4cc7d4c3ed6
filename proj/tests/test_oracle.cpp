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

#include "twistmps/oracle.hpp"

#include <gtest/gtest.h>

#include "twistmps/pilot.hpp"
#include "twistmps/selftest.hpp"

using namespace twistmps;

namespace {

WeightMatrix all_equal(int m, Complex w, std::optional<int> order = std::nullopt) {
    return WeightMatrix::from_upper(m, [&](int, int) { return w; }, order);
}

std::vector<PauliGen> Ps(std::initializer_list<const char*> list) {
    std::vector<PauliGen> out;
    for (const char* s : list) {
        out.push_back(PauliGen::from_string(s));
    }
    return out;
}

}  // namespace

TEST(oracle, wordwise_cases) {
    const auto anti = expand_wordwise(all_equal(2, -1.0, 2), {1.0, 1.0}, 2, 2);
    EXPECT_EQ(anti.explored, 4u);
    ASSERT_EQ(anti.amplitudes.size(), 1u);
    EXPECT_EQ(anti.amplitudes.at({0, 0}), Complex(2.0));

    const Complex c{0.3, -0.6};
    const auto cube = expand_wordwise(WeightMatrix(1, {1.0}, 2), {c}, 2, 3).amplitudes;
    ASSERT_EQ(cube.size(), 1u);
    EXPECT_LE(relative_error(cube.at({1}), c * c * c), 1e-15);

    Sampler s(51);
    for (int m = 1; m <= 5; ++m) {
        std::vector<Complex> coeffs;
        for (int j = 0; j < m; ++j) {
            coeffs.push_back(s.nonzero());
        }
        const WeightMatrix w = WeightMatrix::from_upper(m, [&](int, int) { return s.root(3); }, 3);
        const auto linear = expand_wordwise(w, coeffs, 3, 1).amplitudes;
        ASSERT_EQ(linear.size(), static_cast<size_t>(m));
        for (int j = 0; j < m; ++j) {
            Residues e(static_cast<size_t>(m), 0);
            e[static_cast<size_t>(j)] = 1;
            EXPECT_EQ(linear.at(e), coeffs[static_cast<size_t>(j)]);
        }
    }
}

TEST(oracle, wordwise_edges) {
    const auto empty = expand_wordwise(all_equal(3, -1.0), {1.0, 2.0, 3.0}, 2, 0).amplitudes;
    ASSERT_EQ(empty.size(), 1u);
    EXPECT_EQ(empty.at({0, 0, 0}), Complex(1.0));
    EXPECT_THROW(expand_wordwise(all_equal(4, -1.0), {1, 1, 1, 1}, 2, 12, 1000), SizeLimitError);
    EXPECT_THROW(expand_wordwise(all_equal(2, -1.0), {1.0}, 2, 2), ArgumentError);
    EXPECT_THROW(expand_wordwise(all_equal(2, -1.0), {1.0, 1.0}, 1, 2), ArgumentError);
    EXPECT_THROW(expand_wordwise(all_equal(2, -1.0), {1.0, 1.0}, 2, -1), ArgumentError);
}

TEST(oracle, property_wordwise_equals_composition_sum) {
    Sampler s(52);
    for (int m = 1; m <= 4; ++m) {
        for (int k = 0; k <= 6; ++k) {
            const int a = s.integer(2, 4);
            const WeightMatrix w = WeightMatrix::from_upper(m, [&](int, int) { return s.nonzero(); });
            std::vector<Complex> c;
            for (int j = 0; j < m; ++j) {
                c.push_back(s.unit_disk());
            }
            EXPECT_LE(max_relative_error(expand_wordwise(w, c, a, k).amplitudes, expand_by_compositions(w, c, a, k)),
                      1e-10);
        }
    }
}

TEST(oracle, property_phase_schedule_independence) {
    Sampler s(53);
    for (int trial = 0; trial < 100; ++trial) {
        const int m = s.integer(1, 5);
        const int len = s.integer(0, 9);
        const WeightMatrix w = WeightMatrix::from_upper(m, [&](int, int) { return s.nonzero(); });
        std::vector<int> word;
        for (int t = 0; t < len; ++t) {
            word.push_back(s.integer(0, m - 1));
        }
        const Complex bubble = normal_order_phase(word, w, Schedule::kBubble);
        const Complex insertion = normal_order_phase(word, w, Schedule::kInsertion);
        EXPECT_LE(relative_error(bubble, insertion), 1e-12);
        // Same value as the inversion product used by the shuffle brute force.
        EXPECT_LE(relative_error(bubble, detail::inversion_weight(word, w)), 1e-12);
    }
}

TEST(oracle, normal_order_phase_small) {
    const Complex w{0.0, 1.0};
    const WeightMatrix m = all_equal(2, w);
    EXPECT_EQ(normal_order_phase({0, 1}, m), Complex(1.0));
    EXPECT_EQ(normal_order_phase({1, 0}, m), w);
    EXPECT_EQ(normal_order_phase({1, 1, 0}, m), w * w);
    EXPECT_EQ(normal_order_phase({}, m), Complex(1.0));
}

TEST(oracle, dense_pauli_cases) {
    const auto xz = expand_dense_pauli(Ps({"X", "Z"}), {1.0, 1.0}, 2).amplitudes;
    ASSERT_EQ(xz.size(), 1u);
    EXPECT_LE(relative_error(xz.at({0, 0}), 2.0), 1e-15);

    const auto id = expand_dense_pauli(Ps({"XI", "ZZ"}), {0.3, 0.4}, 0).amplitudes;
    ASSERT_EQ(id.size(), 1u);
    EXPECT_EQ(id.at({0, 0}), Complex(1.0));
}

TEST(oracle, dense_pauli_preconditions) {
    EXPECT_THROW(expand_dense_pauli(jordan_wigner(2), std::vector<Complex>(5, 1.0), 3), PreconditionError);
    EXPECT_THROW(expand_dense_pauli(Ps({"XI", "IX", "XX"}), {1.0, 1.0, 1.0}, 1), PreconditionError);
    EXPECT_THROW(expand_dense_pauli(Ps({"IIIIIIX"}), {1.0}, 1), SizeLimitError);
    EXPECT_THROW(expand_dense_pauli({PauliGen::from_qudit_string("X1", 3)}, {1.0}, 1), PreconditionError);
    EXPECT_THROW(expand_dense_pauli(Ps({"X"}), {1.0, 2.0}, 1), ArgumentError);
    EXPECT_THROW(expand_dense_pauli(Ps({"X"}), {1.0}, -1), ArgumentError);
}

TEST(oracle, jordan_wigner_operator_reassembly) {
    // 2n + 1 generators are dependent, so compare operators rather than
    // individual amplitudes.
    Sampler s(54);
    const auto jw = jordan_wigner(2);
    const WeightMatrix w = weight_matrix_from_paulis(jw);
    for (int k = 0; k <= 4; ++k) {
        std::vector<Complex> c;
        for (int j = 0; j < 5; ++j) {
            c.push_back(s.real(-1.0, 1.0));
        }
        const Eigen::MatrixXcd reference = dense_hamiltonian_power(jw, c, k);
        const auto words = expand_wordwise(w, c, 2, k).amplitudes;
        EXPECT_LE((reassemble_operator(jw, words) - reference).norm(), 1e-12 * std::max(1.0, reference.norm()));
        const auto pilot = PilotModel::create(w, c, 2, k);
        ASSERT_TRUE(pilot.has_value());
        EXPECT_LE(max_relative_error(pilot->all(unit_vector(k + 1, k)), words), 1e-12);
    }
}

TEST(oracle, property_dense_equals_wordwise_on_independent_sets) {
    Sampler s(55);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = s.integer(1, 4);
        std::vector<PauliGen> gens;
        const int m = s.integer(1, std::min(2 * n, 5));
        while (static_cast<int>(gens.size()) < m) {
            std::string str;
            for (int i = 0; i < n; ++i) {
                str.push_back("IXYZ"[s.integer(0, 3)]);
            }
            gens.push_back(PauliGen::from_string(str));
            if (symplectic_rank(gens) != static_cast<int>(gens.size())) {
                gens.pop_back();
            }
        }
        std::vector<Complex> c;
        for (int j = 0; j < m; ++j) {
            c.push_back(s.unit_disk());
        }
        const int k = s.integer(0, 4);
        EXPECT_LE(max_relative_error(expand_dense_pauli(gens, c, k).amplitudes,
                                     expand_wordwise(weight_matrix_from_paulis(gens), c, 2, k).amplitudes),
                  1e-9);
    }
}

TEST(oracle, commutative_amplitude_cases) {
    // (c0 z0 + c1 z1)^2 with commuting z, a = 2: c0^2 + c1^2 + 2 c0 c1 z0 z1.
    const std::vector<Complex> c{0.5, 2.0};
    EXPECT_LE(relative_error(commutative_amplitude(c, 2, {0, 0}), 4.25), 1e-15);
    EXPECT_LE(relative_error(commutative_amplitude(c, 2, {1, 1}), 2.0), 1e-15);
    EXPECT_EQ(commutative_amplitude(c, 2, {1, 0}), Complex(0.0));
    EXPECT_EQ(commutative_amplitude(c, 0, {0, 0}), Complex(1.0));
}

TEST(oracle, max_relative_error_union_of_keys) {
    AmplitudeTable a{{{0}, 1.0}};
    AmplitudeTable b{{{0}, 1.0}, {{1}, 0.5}};
    EXPECT_EQ(max_relative_error(a, a), 0.0);
    EXPECT_EQ(max_relative_error(a, b), 0.5);
    EXPECT_EQ(max_relative_error(b, a), 0.5);
}
