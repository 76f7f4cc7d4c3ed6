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

// Hamiltonian input files.
//
// A spec is a JSON object holding exactly one of
//
//   "abstract": {"m": 3, "a": 2, "omega": [[0, 1, 1], [1, 2, 1]], "c": [1, 0.5, [0, 1]]}
//   "pauli":    {"n": 2, "d": 2, "terms": [["XI", 1.0], ["ZX", [0.5, -0.5]]]}
//
// plus optional "k" (integer degree) or "poly" (coefficients a_0..a_d), and
// optional "queries" (list of residue digit strings) or "queries": "all".
// Generator indices are zero-based. An omega triple (i, j, t) with i < j sets
// omega(i, j) = exp(2 pi i t / a); unlisted pairs commute. Coefficients are a
// real number or a [re, im] pair. Qubit terms use IXYZ strings; qudit terms
// use space-separated site tokens such as "X1Z2 I Z1".

#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "twistmps/common.hpp"
#include "twistmps/pauli.hpp"
#include "twistmps/twisted_multinomial.hpp"

namespace twistmps {

struct AbstractForm {
    int m = 0;
    int a = 2;
    /// Canonical: 0 <= i < j < m, 0 < t < a, sorted by (i, j), no repeats.
    std::vector<std::array<int, 3>> omega;
    std::vector<Complex> c;
};

struct PauliTerm {
    PauliGen gen;
    Complex coeff;
};

struct PauliForm {
    int n = 0;
    int d = 2;
    std::vector<PauliTerm> terms;
};

struct HamiltonianSpec {
    std::variant<AbstractForm, PauliForm> form;
    std::optional<int> k;
    std::optional<std::vector<Complex>> poly;
    std::vector<Residues> queries;
    bool all = false;

    bool is_pauli() const { return std::holds_alternative<PauliForm>(form); }

    int size() const {
        if (is_pauli()) {
            return static_cast<int>(std::get<PauliForm>(form).terms.size());
        }
        return std::get<AbstractForm>(form).m;
    }

    int order() const {
        return is_pauli() ? std::get<PauliForm>(form).d : std::get<AbstractForm>(form).a;
    }

    std::vector<PauliGen> generators() const {
        std::vector<PauliGen> gens;
        for (const auto& t : std::get<PauliForm>(form).terms) {
            gens.push_back(t.gen);
        }
        return gens;
    }

    std::vector<Complex> coefficients() const {
        if (!is_pauli()) {
            return std::get<AbstractForm>(form).c;
        }
        std::vector<Complex> c;
        for (const auto& t : std::get<PauliForm>(form).terms) {
            c.push_back(t.coeff);
        }
        return c;
    }

    /// Upper-triangular phase exponents t(i, j), i < j, in [0, a).
    std::vector<std::array<int, 3>> phase_triples() const {
        if (!is_pauli()) {
            return std::get<AbstractForm>(form).omega;
        }
        std::vector<std::array<int, 3>> out;
        const auto t = phase_exponents_from_paulis(generators());
        for (size_t i = 0; i < t.size(); ++i) {
            for (size_t j = i + 1; j < t.size(); ++j) {
                if (t[i][j] != 0) {
                    out.push_back({static_cast<int>(i), static_cast<int>(j), t[i][j]});
                }
            }
        }
        return out;
    }

    WeightMatrix weight_matrix() const {
        if (is_pauli()) {
            return weight_matrix_from_paulis(generators());
        }
        return WeightMatrix::from_phase_exponents(size(), order(), phase_triples());
    }

    /// Degree of the requested polynomial (k for a monomial).
    int degree() const {
        if (poly) {
            return static_cast<int>(poly->size()) - 1;
        }
        if (k) {
            return *k;
        }
        throw ArgumentError("spec: neither a degree k nor a polynomial was given");
    }

    /// Right boundary: the polynomial coefficients, or e_k.
    std::vector<Complex> boundary() const {
        if (poly) {
            return *poly;
        }
        std::vector<Complex> e(static_cast<size_t>(degree()) + 1, Complex{0.0, 0.0});
        e.back() = 1.0;
        return e;
    }
};

namespace detail {

inline Complex complex_from_json(const nlohmann::json& j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ArgumentError("spec: coefficient must be a number or a [re, im] pair, got " + j.dump());
}

inline nlohmann::json complex_to_json(Complex z) {
    if (z.imag() == 0.0) {
        return z.real();
    }
    return nlohmann::json::array({z.real(), z.imag()});
}

inline std::vector<std::array<int, 3>> canonical_triples(int m, int a, const nlohmann::json& list) {
    std::map<std::pair<int, int>, int> by_pair;
    for (const auto& entry : list) {
        if (!entry.is_array() || entry.size() != 3) {
            throw ArgumentError("spec: omega entries must be [i, j, t] triples");
        }
        int i = entry[0].get<int>();
        int j = entry[1].get<int>();
        int t = entry[2].get<int>();
        if (i < 0 || j < 0 || i >= m || j >= m || i == j) {
            throw ArgumentError("spec: omega triple " + entry.dump() + " has invalid indices");
        }
        if (i > j) {
            // omega(j, i) = omega(i, j)^{-1}
            std::swap(i, j);
            t = -t;
        }
        t = ((t % a) + a) % a;
        if (!by_pair.emplace(std::make_pair(i, j), t).second) {
            throw ArgumentError("spec: omega pair (" + std::to_string(i) + "," + std::to_string(j) +
                                ") listed twice");
        }
    }
    std::vector<std::array<int, 3>> out;
    for (const auto& [pair, t] : by_pair) {
        if (t != 0) {
            out.push_back({pair.first, pair.second, t});
        }
    }
    return out;
}

}  // namespace detail

inline HamiltonianSpec parse_spec(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ArgumentError("spec: top level must be an object");
    }
    const bool has_abstract = j.contains("abstract");
    const bool has_pauli = j.contains("pauli");
    if (has_abstract == has_pauli) {
        throw ArgumentError("spec: exactly one of \"abstract\" or \"pauli\" is required");
    }
    HamiltonianSpec spec;
    if (has_abstract) {
        const auto& a = j.at("abstract");
        AbstractForm form;
        form.m = a.at("m").get<int>();
        form.a = a.at("a").get<int>();
        if (form.m < 0 || form.a < 2) {
            throw ArgumentError("spec: need m >= 0 and a >= 2");
        }
        form.omega = detail::canonical_triples(form.m, form.a, a.value("omega", nlohmann::json::array()));
        for (const auto& c : a.at("c")) {
            form.c.push_back(detail::complex_from_json(c));
        }
        if (static_cast<int>(form.c.size()) != form.m) {
            throw ArgumentError("spec: abstract form needs exactly m coefficients");
        }
        spec.form = std::move(form);
    } else {
        const auto& p = j.at("pauli");
        PauliForm form;
        form.n = p.at("n").get<int>();
        form.d = p.value("d", 2);
        for (const auto& term : p.at("terms")) {
            if (!term.is_array() || term.size() != 2 || !term[0].is_string()) {
                throw ArgumentError("spec: Pauli terms must be [string, coefficient] pairs");
            }
            const auto text = term[0].get<std::string>();
            PauliGen gen = form.d == 2 ? PauliGen::from_string(text) : PauliGen::from_qudit_string(text, form.d);
            if (gen.n != form.n) {
                throw ArgumentError("spec: Pauli string '" + text + "' does not act on n = " +
                                    std::to_string(form.n) + " sites");
            }
            form.terms.push_back({std::move(gen), detail::complex_from_json(term[1])});
        }
        spec.form = std::move(form);
    }
    if (j.contains("k") && j.contains("poly")) {
        throw ArgumentError("spec: give either \"k\" or \"poly\", not both");
    }
    if (j.contains("k")) {
        spec.k = j.at("k").get<int>();
        if (*spec.k < 0) {
            throw ArgumentError("spec: k must be non-negative");
        }
    }
    if (j.contains("poly")) {
        std::vector<Complex> poly;
        for (const auto& c : j.at("poly")) {
            poly.push_back(detail::complex_from_json(c));
        }
        if (poly.empty()) {
            throw ArgumentError("spec: poly must have at least one coefficient");
        }
        spec.poly = std::move(poly);
    }
    if (j.contains("queries")) {
        const auto& q = j.at("queries");
        if (q.is_string() && q.get<std::string>() == "all") {
            spec.all = true;
        } else {
            for (const auto& s : q) {
                spec.queries.push_back(residues_from_string(s.get<std::string>()));
            }
        }
    }
    // Surfaces invalid phase data (e.g. non-prime qudit dimension) at parse time.
    (void)spec.weight_matrix();
    return spec;
}

inline nlohmann::json to_json(const HamiltonianSpec& spec) {
    nlohmann::json j;
    if (spec.is_pauli()) {
        const auto& form = std::get<PauliForm>(spec.form);
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : form.terms) {
            terms.push_back(nlohmann::json::array({t.gen.to_string(), detail::complex_to_json(t.coeff)}));
        }
        j["pauli"] = {{"n", form.n}, {"d", form.d}, {"terms", terms}};
    } else {
        const auto& form = std::get<AbstractForm>(spec.form);
        nlohmann::json omega = nlohmann::json::array();
        for (const auto& [i, jj, t] : form.omega) {
            omega.push_back({i, jj, t});
        }
        nlohmann::json c = nlohmann::json::array();
        for (const auto& z : form.c) {
            c.push_back(detail::complex_to_json(z));
        }
        j["abstract"] = {{"m", form.m}, {"a", form.a}, {"omega", omega}, {"c", c}};
    }
    if (spec.k) {
        j["k"] = *spec.k;
    }
    if (spec.poly) {
        nlohmann::json poly = nlohmann::json::array();
        for (const auto& z : *spec.poly) {
            poly.push_back(detail::complex_to_json(z));
        }
        j["poly"] = poly;
    }
    if (spec.all) {
        j["queries"] = "all";
    } else if (!spec.queries.empty()) {
        nlohmann::json q = nlohmann::json::array();
        for (const auto& r : spec.queries) {
            q.push_back(residues_to_string(r));
        }
        j["queries"] = q;
    }
    return j;
}

inline HamiltonianSpec parse_spec_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("spec: invalid JSON: ") + e.what());
    }
    try {
        return parse_spec(j);
    } catch (const nlohmann::json::exception& e) {
        throw ArgumentError(std::string("spec: ") + e.what());
    }
}

inline HamiltonianSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ArgumentError("cannot open spec file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_spec_text(buffer.str());
}

}  // namespace twistmps
