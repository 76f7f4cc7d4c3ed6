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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "twistmps/bench.hpp"
#include "twistmps/oracle.hpp"
#include "twistmps/pauli.hpp"
#include "twistmps/pilot.hpp"
#include "twistmps/selftest.hpp"
#include "twistmps/spec_io.hpp"

using namespace twistmps;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitNoOrdering = 2;
constexpr int kExitSizeLimit = 3;
constexpr int kExitFailure = 4;

struct Options {
    std::string spec_path;
    std::optional<int> k;
    std::string poly;
    std::vector<std::string> queries;
    bool all = false;
    bool oracle = false;
    std::uint64_t seed = 20260101;
    std::string out;
    std::string format = "json";
    std::string scale = "small";
    std::vector<int> m_list{101, 202};
    std::vector<int> k_list{20};
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt(Complex z) { return "[" + fmt(z.real()) + ", " + fmt(z.imag()) + "]"; }

/// Command-line overrides applied on top of the spec file.
HamiltonianSpec load(const Options& opt) {
    HamiltonianSpec spec = load_spec(opt.spec_path);
    if (opt.k) {
        if (*opt.k < 0) {
            throw ArgumentError("--k must be non-negative");
        }
        spec.k = opt.k;
        spec.poly.reset();
    }
    if (!opt.poly.empty()) {
        std::vector<Complex> poly;
        std::stringstream ss(opt.poly);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                size_t used = 0;
                poly.emplace_back(std::stod(item, &used), 0.0);
                if (used != item.size()) {
                    throw std::invalid_argument(item);
                }
            } catch (const std::exception&) {
                throw ArgumentError("--poly: cannot parse coefficient '" + item + "'");
            }
        }
        if (poly.empty()) {
            throw ArgumentError("--poly: empty coefficient list");
        }
        spec.poly = std::move(poly);
        spec.k.reset();
    }
    if (opt.all) {
        spec.all = true;
        spec.queries.clear();
    } else if (!opt.queries.empty()) {
        spec.all = false;
        spec.queries.clear();
        for (const auto& q : opt.queries) {
            spec.queries.push_back(residues_from_string(q));
        }
    }
    const int m = spec.size();
    for (const auto& r : spec.queries) {
        if (static_cast<int>(r.size()) != m) {
            throw ArgumentError("query '" + residues_to_string(r) + "' has length " + std::to_string(r.size()) +
                                ", expected " + std::to_string(m));
        }
        for (int digit : r) {
            if (digit >= spec.order()) {
                throw ArgumentError("query '" + residues_to_string(r) + "' has a digit >= a = " +
                                    std::to_string(spec.order()));
            }
        }
    }
    return spec;
}

/// Writes to --out when given, otherwise stdout.
void emit(const Options& opt, const std::string& text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out);
    if (!f) {
        throw ArgumentError("cannot write '" + opt.out + "'");
    }
    f << text;
}

std::string no_ordering_message() {
    return "no predecessor-uniform ordering exists for this weight matrix: the pairwise phases cannot be "
           "arranged so that each generator sees one common weight against all earlier ones, so the "
           "factorized matrix product model does not apply. Use --oracle for the exponential-cost "
           "word-wise expansion.";
}

int cmd_check_order(const Options& opt) {
    const HamiltonianSpec spec = load(opt);
    const WeightMatrix w = spec.weight_matrix();
    const auto ordering = find_pu_ordering(w);
    std::ostringstream os;
    if (opt.format == "csv") {
        os << "position,generator,q_re,q_im\n";
        if (ordering) {
            for (size_t p = 0; p < ordering->perm.size(); ++p) {
                os << p << "," << ordering->perm[p] << "," << fmt(ordering->qs[p].real()) << ","
                   << fmt(ordering->qs[p].imag()) << "\n";
            }
        }
    } else {
        os << "{\n  \"found\": " << (ordering ? "true" : "false");
        if (ordering) {
            os << ",\n  \"permutation\": [";
            for (size_t p = 0; p < ordering->perm.size(); ++p) {
                os << (p ? ", " : "") << ordering->perm[p];
            }
            os << "],\n  \"q\": [";
            for (size_t p = 0; p < ordering->qs.size(); ++p) {
                os << (p ? ", " : "") << fmt(ordering->qs[p]);
            }
            // q = exp(2 pi i t / a); exact since every weight is an a-th root of unity.
            os << "],\n  \"q_exponents\": [";
            const int a = spec.order();
            for (size_t p = 0; p < ordering->qs.size(); ++p) {
                const double turns = std::arg(ordering->qs[p]) / (2.0 * std::numbers::pi);
                const long t = ((std::lround(turns * a) % a) + a) % a;
                os << (p ? ", " : "") << t;
            }
            os << "]";
        }
        os << "\n}\n";
    }
    emit(opt, os.str());
    if (!ordering) {
        std::cerr << no_ordering_message() << "\n";
        return kExitNoOrdering;
    }
    return kExitOk;
}

AmplitudeTable oracle_table(const HamiltonianSpec& spec) {
    const WeightMatrix w = spec.weight_matrix();
    const auto c = spec.coefficients();
    const auto boundary = spec.boundary();
    AmplitudeTable total;
    for (size_t j = 0; j < boundary.size(); ++j) {
        if (boundary[j] == Complex{0.0, 0.0}) {
            continue;
        }
        for (const auto& [r, v] : expand_wordwise(w, c, spec.order(), static_cast<int>(j)).amplitudes) {
            total[r] += boundary[j] * v;
        }
    }
    return total;
}

int cmd_amplitudes(const Options& opt) {
    const HamiltonianSpec spec = load(opt);
    if (!spec.all && spec.queries.empty()) {
        throw ArgumentError("amplitudes: give --query <digits> (repeatable) or --all");
    }
    const auto boundary = spec.boundary();
    AmplitudeTable result;
    std::string method = "mps";
    if (opt.oracle) {
        method = "word-wise oracle (exponential cost)";
        std::cerr << "note: --oracle enumerates all m^k words; cost grows exponentially in k\n";
        AmplitudeTable table = oracle_table(spec);
        if (spec.all) {
            for (const auto& [r, v] : table) {
                if (std::abs(v) > kPruneThreshold) {
                    result.emplace(r, v);
                }
            }
        } else {
            for (const auto& r : spec.queries) {
                auto it = table.find(r);
                result[r] = it == table.end() ? Complex{0.0, 0.0} : it->second;
            }
        }
    } else {
        const auto pilot =
            PilotModel::create(spec.weight_matrix(), spec.coefficients(), spec.order(), spec.degree());
        if (!pilot) {
            std::cerr << no_ordering_message() << "\n";
            return kExitNoOrdering;
        }
        if (spec.all) {
            result = pilot->all(boundary);
        } else {
            for (const auto& r : spec.queries) {
                result[r] = pilot->amplitude(r, boundary);
            }
        }
    }
    std::ostringstream os;
    if (opt.format == "csv") {
        os << "r,re,im\n";
        for (const auto& [r, v] : result) {
            os << residues_to_string(r) << "," << fmt(v.real()) << "," << fmt(v.imag()) << "\n";
        }
    } else {
        os << "{\n  \"method\": \"" << method << "\",\n  \"amplitudes\": [";
        bool first = true;
        for (const auto& [r, v] : result) {
            os << (first ? "\n" : ",\n") << "    {\"r\": \"" << residues_to_string(r) << "\", \"re\": "
               << fmt(v.real()) << ", \"im\": " << fmt(v.imag()) << "}";
            first = false;
        }
        os << (first ? "]\n}\n" : "\n  ]\n}\n");
    }
    emit(opt, os.str());
    return kExitOk;
}

int cmd_graph(const Options& opt) {
    const HamiltonianSpec spec = load(opt);
    const AnticommGraph g = anticommutation_graph(spec.weight_matrix());
    std::ostringstream os;
    if (opt.format == "csv") {
        os << "i,j\n";
        for (const auto& [i, j] : g.edges) {
            os << i << "," << j << "\n";
        }
    } else {
        os << "{\n  \"vertices\": " << g.vertices << ",\n  \"edges\": [";
        for (size_t e = 0; e < g.edges.size(); ++e) {
            os << (e ? ", " : "") << "[" << g.edges[e].first << ", " << g.edges[e].second << "]";
        }
        os << "],\n  \"components\": [";
        for (size_t c = 0; c < g.components.size(); ++c) {
            os << (c ? ", " : "") << "[";
            for (size_t v = 0; v < g.components[c].size(); ++v) {
                os << (v ? ", " : "") << g.components[c][v];
            }
            os << "]";
        }
        os << "],\n  \"component_sizes\": [";
        for (size_t c = 0; c < g.components.size(); ++c) {
            os << (c ? ", " : "") << g.components[c].size();
        }
        os << "],\n  \"c_max\": " << g.c_max << "\n}\n";
    }
    emit(opt, os.str());
    return kExitOk;
}

int cmd_selftest(const Options& opt) {
    if (opt.scale != "small" && opt.scale != "full") {
        throw ArgumentError("--scale must be 'small' or 'full'");
    }
    const Scale scale = opt.scale == "full" ? Scale::kFull : Scale::kSmall;
    const auto suites = acceptance_suites();
    std::ostringstream os;
    bool ok = true;
    for (size_t i = 0; i < suites.size(); ++i) {
        const CriterionResult r = run_suite(suites[i], static_cast<int>(i) + 1, scale, opt.seed);
        ok = ok && r.passed;
        const std::string line = format_result(r);
        std::cerr << line << "\n";
        os << line << "\n";
    }
    if (!opt.out.empty()) {
        emit(opt, os.str());
    }
    return ok ? kExitOk : kExitFailure;
}

int cmd_bench(const Options& opt) {
    std::ostringstream os;
    os << "m,k,nanos\n";
    for (int m : opt.m_list) {
        for (int k : opt.k_list) {
            if (m < 1 || k < 0) {
                throw ArgumentError("bench: need m >= 1 and k >= 0");
            }
            const MpsModel model = anticommuting_model(m, k, opt.seed);
            os << m << "," << k << "," << fmt(median_sweep_nanos(model, benchmark_residues(m, k))) << "\n";
        }
    }
    emit(opt, os.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"twistmps: pilot amplitudes of powers of twisted-commuting Hamiltonians"};
    app.require_subcommand(1);
    Options opt;

    auto add_spec = [&](CLI::App* sub) {
        sub->add_option("--spec", opt.spec_path, "Hamiltonian spec (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "Write output to this path instead of stdout");
        sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* check = app.add_subcommand("check-order", "Search for a predecessor-uniform ordering");
    add_spec(check);

    auto* amps = app.add_subcommand("amplitudes", "Pilot amplitudes of h^k or P(h)");
    add_spec(amps);
    amps->add_option("--k", opt.k, "Degree (overrides the spec)");
    amps->add_option("--poly", opt.poly, "Real polynomial coefficients a_0,a_1,... (overrides the spec)");
    amps->add_option("--query", opt.queries, "Residue tuple as a digit string (repeatable)");
    amps->add_flag("--all", opt.all, "Every residue tuple with a nonzero amplitude");
    amps->add_flag("--oracle", opt.oracle, "Use the exponential-cost word-wise expansion");

    auto* graph = app.add_subcommand("graph", "Anticommutation graph and its components");
    add_spec(graph);

    auto* self = app.add_subcommand("selftest", "Run the cross-oracle acceptance suites");
    self->add_option("--scale", opt.scale, "small or full")->check(CLI::IsMember({"small", "full"}));
    self->add_option("--seed", opt.seed, "Base RNG seed");
    self->add_option("--out", opt.out, "Also write the report to this path");

    auto* bench = app.add_subcommand("bench", "Median single-amplitude sweep time (CSV)");
    bench->add_option("--m-list", opt.m_list, "Generator counts")->delimiter(',');
    bench->add_option("--k-list", opt.k_list, "Degrees")->delimiter(',');
    bench->add_option("--seed", opt.seed, "RNG seed for the coefficients");
    bench->add_option("--out", opt.out, "Write CSV to this path instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (*check) {
            return cmd_check_order(opt);
        }
        if (*amps) {
            return cmd_amplitudes(opt);
        }
        if (*graph) {
            return cmd_graph(opt);
        }
        if (*self) {
            return cmd_selftest(opt);
        }
        return cmd_bench(opt);
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << "\n";
        return kExitSizeLimit;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}
