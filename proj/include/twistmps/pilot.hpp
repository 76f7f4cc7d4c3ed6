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

#include <optional>
#include <vector>

#include "twistmps/mps.hpp"
#include "twistmps/twisted_multinomial.hpp"

namespace twistmps {

/**
 * Pilot amplitudes of a twisted Hamiltonian given in arbitrary generator
 * order. A predecessor-uniform ordering is found by greedy peeling, the
 * matrix product model is built in that order, and answers are reported for
 * the ordered monomials z_1^{r_1} ... z_m^{r_m} of the *input* order.
 *
 * The two monomial bases differ by a phase: rewriting the reordered product
 * in input order swaps every pair of generators x > y that appear as
 * (x before y), each copy pair contributing omega(y, x). Hence
 *   alpha_input(r) = alpha_reordered(r o perm) * prod omega(y, x)^{r_x r_y}.
 */
class PilotModel {
  public:
    static std::optional<PilotModel> create(const WeightMatrix& w, const std::vector<Complex>& c, int a,
                                            int degree) {
        if (static_cast<int>(c.size()) != w.size()) {
            throw ArgumentError("PilotModel: need one coefficient per generator");
        }
        auto ordering = find_pu_ordering(w);
        if (!ordering) {
            return std::nullopt;
        }
        std::vector<Complex> coeffs;
        std::vector<QParam> qs;
        for (size_t p = 0; p < ordering->perm.size(); ++p) {
            coeffs.push_back(c[static_cast<size_t>(ordering->perm[p])]);
            qs.emplace_back(ordering->qs[p]);
        }
        return PilotModel(w, *ordering, MpsModel(std::move(coeffs), std::move(qs), a, degree));
    }

    const PuOrdering& ordering() const { return ordering_; }
    const MpsModel& model() const { return model_; }
    const WeightMatrix& weights() const { return weights_; }

    /// r in input order -> r in model order.
    Residues to_model_order(const Residues& input) const {
        Residues out(input.size());
        for (size_t p = 0; p < ordering_.perm.size(); ++p) {
            out[p] = input[static_cast<size_t>(ordering_.perm[p])];
        }
        return out;
    }

    Residues to_input_order(const Residues& model_order) const {
        Residues out(model_order.size());
        for (size_t p = 0; p < ordering_.perm.size(); ++p) {
            out[static_cast<size_t>(ordering_.perm[p])] = model_order[p];
        }
        return out;
    }

    /// Phase with (reordered monomial) = phase * (input-order monomial).
    Complex reorder_phase(const Residues& input) const {
        Complex phase{1.0, 0.0};
        const auto& perm = ordering_.perm;
        for (size_t p = 0; p < perm.size(); ++p) {
            for (size_t pp = p + 1; pp < perm.size(); ++pp) {
                const int x = perm[p];
                const int y = perm[pp];
                if (x > y) {
                    const int count = input[static_cast<size_t>(x)] * input[static_cast<size_t>(y)];
                    phase *= int_power(weights_(y, x), count);
                }
            }
        }
        return phase;
    }

    /// Amplitude for the right boundary `boundary` (length d + 1).
    Complex amplitude(const Residues& input, const std::vector<Complex>& boundary) const {
        if (input.size() != ordering_.perm.size()) {
            throw ArgumentError("residue tuple length does not match the generator count");
        }
        std::vector<Complex> v = sweep(model_, to_model_order(input));
        if (boundary.size() != v.size()) {
            throw ArgumentError("right boundary must have length d + 1");
        }
        return detail::dot(v, boundary) * reorder_phase(input);
    }

    /// Amplitude of h^d.
    Complex amplitude(const Residues& input) const { return amplitude(input, model_.right_boundary()); }

    AmplitudeTable all(const std::vector<Complex>& boundary, std::uint64_t cap = kAmplitudeTableCap) const {
        AmplitudeTable out;
        for (const auto& [key, value] : all_amplitudes(model_, boundary, cap)) {
            Residues input = to_input_order(key);
            out.emplace(input, value * reorder_phase(input));
        }
        return out;
    }

  private:
    PilotModel(WeightMatrix w, PuOrdering ordering, MpsModel model)
        : weights_(std::move(w)), ordering_(std::move(ordering)), model_(std::move(model)) {}

    WeightMatrix weights_;
    PuOrdering ordering_;
    MpsModel model_;
};

}  // namespace twistmps
