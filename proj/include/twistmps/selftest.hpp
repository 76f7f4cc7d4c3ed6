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

// Cross-oracle acceptance suites. Shared by the acceptance test binary and
// the `selftest` subcommand. Every suite is seeded and deterministic apart
// from the timing suite.

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "twistmps/bench.hpp"
#include "twistmps/common.hpp"
#include "twistmps/gaussian_binomial.hpp"
#include "twistmps/mps.hpp"
#include "twistmps/oracle.hpp"
#include "twistmps/pauli.hpp"
#include "twistmps/pilot.hpp"
#include "twistmps/twisted_multinomial.hpp"

namespace twistmps {

enum class Scale { kSmall, kFull };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Largest error seen (or the measured quantity for the timing suite).
    double max_error = 0.0;
    double tolerance = 0.0;
    std::string detail;
    double seconds = 0.0;
};

/// Seeded random draws used by the suites and the property tests.
class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

    Complex unit_disk() { return std::polar(std::sqrt(real(0.0, 1.0)), real(0.0, 2.0 * std::numbers::pi)); }

    /// Nonzero complex number with modulus in [lo, hi] and uniform argument.
    Complex nonzero(double lo = 0.5, double hi = 1.5) {
        return std::polar(real(lo, hi), real(0.0, 2.0 * std::numbers::pi));
    }

    Complex unit_circle() { return std::polar(1.0, real(0.0, 2.0 * std::numbers::pi)); }

    Complex root(int a) { return root_of_unity(integer(0, a - 1), a); }

    /// Uniform placement of k balls into m bins.
    std::vector<int> composition(int k, int m) {
        std::vector<int> parts(static_cast<size_t>(m), 0);
        for (int b = 0; b < k; ++b) {
            ++parts[static_cast<size_t>(integer(0, m - 1))];
        }
        return parts;
    }

    std::vector<int> permutation(int m) {
        std::vector<int> p(static_cast<size_t>(m));
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng_);
        return p;
    }

    std::mt19937_64& engine() { return rng_; }

  private:
    std::mt19937_64 rng_;
};

/// Every tuple in {0..a-1}^m, lexicographic.
inline std::vector<Residues> all_residues(int m, int a) {
    std::vector<Residues> out;
    Residues r(static_cast<size_t>(m), 0);
    while (true) {
        out.push_back(r);
        int j = m - 1;
        while (j >= 0 && r[static_cast<size_t>(j)] == a - 1) {
            r[static_cast<size_t>(j)] = 0;
            --j;
        }
        if (j < 0) {
            break;
        }
        ++r[static_cast<size_t>(j)];
    }
    return out;
}

inline std::vector<Complex> unit_vector(int dim, int index) {
    std::vector<Complex> e(static_cast<size_t>(dim), Complex{0.0, 0.0});
    e[static_cast<size_t>(index)] = 1.0;
    return e;
}

inline std::string format_error(double e) {
    std::ostringstream os;
    os << e;
    return os.str();
}

namespace suites {

// 1. Factorization of the twisted multinomial under predecessor-uniformity.
inline CriterionResult factorization(Scale scale, std::uint64_t seed) {
    CriterionResult res{1, "factorization identity", false, 0.0, 1e-9, "", 0.0};
    Sampler s(seed);
    const int instances = scale == Scale::kFull ? 200 : 50;
    for (int t = 0; t < instances; ++t) {
        const int m = s.integer(1, 4);
        const int k = s.integer(0, 8);
        Composition comp(s.composition(k, m));
        std::vector<QParam> qs{QParam(1.0)};
        for (int j = 1; j < m; ++j) {
            qs.emplace_back(s.nonzero());
        }
        const WeightMatrix w = WeightMatrix::predecessor_uniform(qs);
        const Complex brute = twisted_multinomial_bruteforce(comp, w);
        const Complex fact = twisted_multinomial_factorized(comp, qs);
        res.max_error = std::max(res.max_error, relative_error(fact, brute));
    }
    res.passed = res.max_error <= res.tolerance;
    res.detail = std::to_string(instances) + " random instances, m <= 4, k <= 8";
    return res;
}

// 2. Word-wise expansion equals the composition sum of twisted multinomials.
inline CriterionResult multinomial_theorem(Scale scale, std::uint64_t seed) {
    CriterionResult res{2, "twisted multinomial theorem", false, 0.0, 1e-10, "", 0.0};
    Sampler s(seed);
    const int per_size = scale == Scale::kFull ? 3 : 1;
    int cases = 0;
    for (int m = 1; m <= 4; ++m) {
        for (int k = 0; k <= 6; ++k) {
            for (int t = 0; t < per_size; ++t) {
                const int a = s.integer(2, 4);
                const bool roots = (t % 2) == 1;
                const WeightMatrix w = WeightMatrix::from_upper(
                    m, [&](int, int) { return roots ? s.root(a) : s.nonzero(); });
                std::vector<Complex> c;
                for (int j = 0; j < m; ++j) {
                    c.push_back(s.unit_disk());
                }
                const auto words = expand_wordwise(w, c, a, k).amplitudes;
                const auto comps = expand_by_compositions(w, c, a, k);
                res.max_error = std::max(res.max_error, max_relative_error(words, comps));
                ++cases;
            }
        }
    }
    res.passed = res.max_error <= res.tolerance;
    res.detail = std::to_string(cases) + " cases, m <= 4, k <= 6, arbitrary Omega";
    return res;
}

// 3. Matrix product amplitudes against the word-wise oracle.
inline CriterionResult mps_vs_oracle(Scale scale, std::uint64_t seed) {
    CriterionResult res{3, "MPS vs word-wise oracle", false, 0.0, 1e-9, "", 0.0};
    Sampler s(seed);
    const int instances = scale == Scale::kFull ? 200 : 50;
    std::uint64_t amplitudes = 0;
    for (int t = 0; t < instances; ++t) {
        const int m = s.integer(1, 5);
        const int k = s.integer(0, 6);
        const int a = s.integer(2, 3);
        std::vector<QParam> qs{QParam(1.0)};
        std::vector<Complex> c{s.unit_disk()};
        for (int j = 1; j < m; ++j) {
            qs.emplace_back(s.root(a));
            c.push_back(s.unit_disk());
        }
        const WeightMatrix w = WeightMatrix::predecessor_uniform(qs, a);
        const MpsModel model = build_model(c, qs, a, k);
        const auto mps = all_amplitudes(model, unit_vector(k + 1, k));
        const auto oracle = expand_wordwise(w, c, a, k).amplitudes;
        res.max_error = std::max(res.max_error, max_relative_error(mps, oracle));
        amplitudes += static_cast<std::uint64_t>(all_residues(m, a).size());
    }
    res.passed = res.max_error <= res.tolerance;
    res.detail = std::to_string(instances) + " instances, " + std::to_string(amplitudes) +
                 " amplitudes, m <= 5, k <= 6, a in {2,3}";
    return res;
}

// 4. Gaussian binomial: recurrence, partition sum, product form, q = -1.
inline CriterionResult gaussian_triple(Scale, std::uint64_t seed) {
    CriterionResult res{4, "Gaussian binomial triple agreement", false, 0.0, 1e-12, "", 0.0};
    Sampler s(seed);
    std::vector<Complex> qs;
    for (int i = 0; i < 10; ++i) {
        qs.push_back(s.unit_circle());
        qs.push_back(s.nonzero(0.8, 1.25));
    }
    double partition_err = 0.0;
    double product_err = 0.0;
    int product_cases = 0;
    for (Complex q : qs) {
        for (int n = 0; n <= 12; ++n) {
            for (int r = 0; r <= n; ++r) {
                const Complex pascal = q_binom_pascal(n, r, q);
                partition_err = std::max(partition_err, relative_error(pascal, q_binom_partition_oracle(n, r, q)));
                try {
                    const Complex product = q_binom_product(n, r, q);
                    product_err = std::max(product_err, relative_error(product, pascal));
                    ++product_cases;
                } catch (const DomainError&) {
                }
            }
        }
    }
    bool minus1_exact = true;
    for (int n = 0; n <= 14; ++n) {
        for (int r = 0; r <= n; ++r) {
            const Complex v = q_binom_pascal(n, r, -1.0);
            if (v.imag() != 0.0 || v.real() != static_cast<double>(q_binom_minus1(n, r))) {
                minus1_exact = false;
            }
        }
    }
    res.max_error = partition_err;
    res.passed = partition_err <= 1e-12 && product_err <= 1e-10 && minus1_exact;
    std::ostringstream os;
    os << "partition err " << partition_err << " (tol 1e-12), product err " << product_err << " over "
       << product_cases << " cases (tol 1e-10), q=-1 closed form " << (minus1_exact ? "exact" : "MISMATCH");
    res.detail = os.str();
    return res;
}

// 5. Greedy peeling agrees with exhaustive search on sign matrices.
inline CriterionResult recognizer(Scale, std::uint64_t) {
    CriterionResult res{5, "greedy recognizer", false, 0.0, 0.0, "", 0.0};
    auto sign_matrix = [](int m, unsigned bits) {
        unsigned bit = 0;
        std::vector<Complex> upper(static_cast<size_t>(m * m), 1.0);
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                upper[static_cast<size_t>(i * m + j)] = ((bits >> bit++) & 1u) ? -1.0 : 1.0;
            }
        }
        return WeightMatrix::from_upper(m, [&](int i, int j) { return upper[static_cast<size_t>(i * m + j)]; }, 2);
    };
    int disagreements = 0;
    int invalid = 0;
    int accepted4 = 0;
    for (unsigned bits = 0; bits < 64; ++bits) {
        const WeightMatrix w = sign_matrix(4, bits);
        const auto greedy = find_pu_ordering(w);
        const auto exhaustive = exhaustive_pu_search(w);
        if (greedy.has_value() != exhaustive.has_value()) {
            ++disagreements;
        }
        if (greedy) {
            ++accepted4;
            if (!predecessor_uniform_under(w, greedy->perm)) {
                ++invalid;
            }
        }
    }
    int accepted3 = 0;
    for (unsigned bits = 0; bits < 8; ++bits) {
        if (find_pu_ordering(sign_matrix(3, bits))) {
            ++accepted3;
        }
    }
    // omega12 = -1, omega13 = +1, omega14 = -1, omega23 = -1, omega24 = +1, omega34 = -1
    const WeightMatrix counter = WeightMatrix::from_upper(
        4,
        [](int i, int j) {
            return ((i == 0 && j == 2) || (i == 1 && j == 3)) ? Complex{1.0} : Complex{-1.0};
        },
        2);
    const bool rejected = !find_pu_ordering(counter) && !exhaustive_pu_search(counter);
    res.passed = disagreements == 0 && invalid == 0 && accepted3 == 8 && rejected;
    res.max_error = disagreements + invalid;
    std::ostringstream os;
    os << "m=4: " << accepted4 << "/64 accepted, " << disagreements << " disagreements, " << invalid
       << " invalid orderings; m=3: " << accepted3 << "/8 accepted; counterexample "
       << (rejected ? "rejected" : "ACCEPTED");
    res.detail = os.str();
    return res;
}

// 6. First-letter recurrence against the shuffle brute force.
inline CriterionResult recurrence(Scale scale, std::uint64_t seed) {
    CriterionResult res{6, "first-letter recurrence", false, 0.0, 1e-10, "", 0.0};
    Sampler s(seed);
    const int per_size = scale == Scale::kFull ? 2 : 1;
    int cases = 0;
    for (int m = 1; m <= 4; ++m) {
        for (int k = 0; k <= 7; ++k) {
            for (int t = 0; t < per_size; ++t) {
                const WeightMatrix w = WeightMatrix::from_upper(m, [&](int, int) { return s.nonzero(); });
                for (const Composition& comp : compositions(k, m)) {
                    res.max_error = std::max(res.max_error,
                                             relative_error(twisted_multinomial_recurrence(comp, w),
                                                            twisted_multinomial_bruteforce(comp, w)));
                    ++cases;
                }
            }
        }
    }
    res.passed = res.max_error <= res.tolerance;
    res.detail = std::to_string(cases) + " compositions, m <= 4, k <= 7, arbitrary Omega";
    return res;
}

// 7. One model at degree d serves every polynomial of degree <= d.
inline CriterionResult polynomial(Scale scale, std::uint64_t seed) {
    CriterionResult res{7, "polynomial extension", false, 0.0, 1e-10, "", 0.0};
    Sampler s(seed);
    const int instances = scale == Scale::kFull ? 60 : 15;
    bool dims_ok = true;
    double oracle_error = 0.0;
    for (int t = 0; t < instances; ++t) {
        const int m = s.integer(1, 5);
        const int d = s.integer(0, 6);
        const int a = s.integer(2, 3);
        std::vector<QParam> qs{QParam(1.0)};
        std::vector<Complex> c{s.unit_disk()};
        for (int j = 1; j < m; ++j) {
            qs.emplace_back(s.root(a));
            c.push_back(s.unit_disk());
        }
        std::vector<Complex> poly;
        for (int j = 0; j <= d; ++j) {
            poly.push_back(s.unit_disk());
        }
        const MpsModel model = build_model(c, qs, a, d);
        for (int j = 0; j < m; ++j) {
            for (int r = 0; r < a; ++r) {
                const auto site = model.site_matrix(j, r);
                dims_ok = dims_ok && site.rows() == d + 1 && site.cols() == d + 1;
            }
        }
        std::vector<MpsModel> monomials;
        for (int j = 0; j <= d; ++j) {
            monomials.push_back(build_model(c, qs, a, j));
        }
        // Independent reference: sum_j poly[j] times the word-wise expansion of h^j.
        const WeightMatrix w = WeightMatrix::from_upper(
            m, [&](int, int j) { return qs[static_cast<size_t>(j)].value(); }, a);
        AmplitudeTable words;
        for (int j = 0; j <= d; ++j) {
            for (const auto& [r, v] : expand_wordwise(w, c, a, j).amplitudes) {
                words[r] += poly[static_cast<size_t>(j)] * v;
            }
        }
        for (const Residues& r : all_residues(m, a)) {
            Complex combo{0.0, 0.0};
            for (int j = 0; j <= d; ++j) {
                combo += poly[static_cast<size_t>(j)] * contract(monomials[static_cast<size_t>(j)], r);
            }
            const Complex value = contract_polynomial(model, poly, r);
            const auto it = words.find(r);
            const Complex reference = it == words.end() ? Complex{0.0, 0.0} : it->second;
            res.max_error = std::max({res.max_error, relative_error(value, combo), relative_error(value, reference)});
            oracle_error = std::max(oracle_error, relative_error(value, reference));
        }
    }
    res.passed = res.max_error <= res.tolerance && dims_ok;
    res.detail = std::to_string(instances) + " random polynomials of degree <= 6; site matrices " +
                 (dims_ok ? "(d+1)x(d+1)" : "WRONG SIZE") + " (direct sum would need binom(d+2,2) = 28 at d=6); word-wise err " +
                 format_error(oracle_error);
    return res;
}

/// Random independent qubit generators on n sites admitting a
/// predecessor-uniform ordering (possibly not the identity).
inline std::vector<PauliGen> random_pu_generators(Sampler& s, int n, int max_m) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const int m = s.integer(1, std::min(2 * n, max_m));
        std::vector<PauliGen> gens;
        for (int j = 0; j < m; ++j) {
            std::string str;
            for (int i = 0; i < n; ++i) {
                str.push_back("IXYZ"[s.integer(0, 3)]);
            }
            gens.push_back(PauliGen::from_string(str));
        }
        if (symplectic_rank(gens) != m) {
            continue;
        }
        if (find_pu_ordering(weight_matrix_from_paulis(gens))) {
            return gens;
        }
    }
    throw std::runtime_error("random_pu_generators: no admissible set found");
}

// 8. Explicit matrix expansion of H^k against matrix product amplitudes.
inline CriterionResult dense_pauli(Scale scale, std::uint64_t seed) {
    CriterionResult res{8, "dense Pauli oracle", false, 0.0, 1e-9, "", 0.0};
    Sampler s(seed);
    int cases = 0;
    int reordered = 0;
    auto check = [&](const std::vector<PauliGen>& gens, const std::vector<Complex>& c, int k) {
        const auto pilot = PilotModel::create(weight_matrix_from_paulis(gens), c, 2, k);
        if (!pilot) {
            throw std::runtime_error("dense_pauli: generator set is not predecessor-uniform");
        }
        reordered += std::is_sorted(pilot->ordering().perm.begin(), pilot->ordering().perm.end()) ? 0 : 1;
        const auto mps = pilot->all(unit_vector(k + 1, k));
        const auto dense = expand_dense_pauli(gens, c, k).amplitudes;
        res.max_error = std::max(res.max_error, max_relative_error(mps, dense));
        ++cases;
    };
    // Jordan-Wigner n=2 has m = 5 > 2n generators, so the ordered monomials
    // are linearly dependent and traces cannot isolate single amplitudes.
    // The reassembled operator sum_r alpha_r B_r must still equal H^k.
    const auto jw = jordan_wigner(2);
    double jw_err = 0.0;
    for (int k = 0; k <= 4; ++k) {
        std::vector<Complex> c;
        for (size_t j = 0; j < jw.size(); ++j) {
            c.push_back(s.real(-1.0, 1.0));
        }
        const auto pilot = PilotModel::create(weight_matrix_from_paulis(jw), c, 2, k);
        if (!pilot) {
            throw std::runtime_error("dense_pauli: Jordan-Wigner set is not predecessor-uniform");
        }
        const Eigen::MatrixXcd reference = dense_hamiltonian_power(jw, c, k);
        const double diff = (reassemble_operator(jw, pilot->all(unit_vector(k + 1, k))) - reference).norm();
        jw_err = std::max(jw_err, diff / std::max(1.0, reference.norm()));
        ++cases;
    }
    res.max_error = jw_err;
    const int max_n = scale == Scale::kFull ? 4 : 3;
    const int sets = scale == Scale::kFull ? 40 : 10;
    for (int t = 0; t < sets; ++t) {
        const int n = s.integer(1, max_n);
        const auto gens = random_pu_generators(s, n, 6);
        std::vector<Complex> c;
        for (size_t j = 0; j < gens.size(); ++j) {
            c.push_back(s.unit_disk());
        }
        check(gens, c, s.integer(0, 4));
    }
    res.passed = res.max_error <= res.tolerance;
    std::ostringstream os;
    os << cases << " expansions; Jordan-Wigner n=2 operator err " << jw_err << ", random independent sets n <= "
       << max_n << ", k <= 4 (" << reordered << " needed a non-identity ordering)";
    res.detail = os.str();
    return res;
}

// 9. q_j = 1 reproduces the factorial-normalized commutative construction.
inline CriterionResult commutative_limit(Scale, std::uint64_t seed) {
    CriterionResult res{9, "commutative limit", false, 0.0, 1e-10, "", 0.0};
    Sampler s(seed);
    int amplitudes = 0;
    for (int m = 1; m <= 6; ++m) {
        for (int k = 0; k <= 8; ++k) {
            std::vector<Complex> c;
            for (int j = 0; j < m; ++j) {
                c.push_back(s.unit_disk());
            }
            const MpsModel model = build_model(c, std::vector<QParam>(static_cast<size_t>(m), QParam(1.0)), 2, k);
            for (const Residues& r : all_residues(m, 2)) {
                res.max_error = std::max(res.max_error,
                                         relative_error(contract(model, r), commutative_amplitude(c, k, r)));
                ++amplitudes;
            }
        }
    }
    res.passed = res.max_error <= res.tolerance;
    res.detail = std::to_string(amplitudes) + " amplitudes, m <= 6, k <= 8";
    return res;
}

// 10. Single-amplitude sweep cost: absolute budget and linear growth in m.
inline CriterionResult performance(Scale, std::uint64_t seed) {
    CriterionResult res{10, "sweep performance", false, 0.0, 50e6, "", 0.0};
    const int k = 20;
    const MpsModel base = anticommuting_model(101, k, seed);
    const MpsModel doubled = anticommuting_model(202, k, seed);
    double cold = 0.0;
    for (int i = 0; i < 5; ++i) {
        cold = std::max(cold, single_sweep_nanos(base, benchmark_residues(101, k)));
    }
    const PairedTiming timing =
        paired_sweep_nanos(base, benchmark_residues(101, k), doubled, benchmark_residues(202, k));
    const double t1 = timing.first_nanos;
    const double t2 = timing.second_nanos;
    const double ratio = timing.ratio;
    res.max_error = std::max(cold, t1);
    res.passed = res.max_error < res.tolerance && ratio >= 1.5 && ratio <= 3.0;
    std::ostringstream os;
    os << "m=101 k=20: worst cold sweep " << cold / 1e6 << " ms, median " << t1 / 1e3
       << " us (budget 50 ms); m=202 median " << t2 / 1e3 << " us, paired ratio " << ratio << " (need [1.5, 3.0])";
    res.detail = os.str();
    return res;
}

}  // namespace suites

inline std::vector<std::function<CriterionResult(Scale, std::uint64_t)>> acceptance_suites() {
    return {suites::factorization, suites::multinomial_theorem, suites::mps_vs_oracle,
            suites::gaussian_triple, suites::recognizer,          suites::recurrence,
            suites::polynomial,      suites::dense_pauli,         suites::commutative_limit,
            suites::performance};
}

/// Runs one suite, converting any exception into a failed result.
inline CriterionResult run_suite(const std::function<CriterionResult(Scale, std::uint64_t)>& suite, int id,
                                 Scale scale, std::uint64_t seed) {
    auto start = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
        res = suite(scale, seed + static_cast<std::uint64_t>(id));
    } catch (const std::exception& e) {
        res.id = id;
        res.name = "suite " + std::to_string(id);
        res.passed = false;
        res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

inline std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << ": max_err=" << r.max_error
       << " tol=" << r.tolerance << " (" << r.seconds << " s) " << r.detail;
    return os.str();
}

}  // namespace twistmps
