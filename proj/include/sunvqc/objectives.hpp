// Copyright 2026 The sunvqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Cost functions for the autoencoder and classifier benchmarks, plus the
 * Schmidt lower bound on the compression infidelity.
 */
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "sunvqc/statevector.hpp"

namespace sunvqc {

/**
 * @brief Expectation-type cost f(psi) = offset + scale * <psi|O|psi>.
 *
 * Exposing O|psi> (apply_observable) is what lets the adjoint
 * differentiation path compute exact gradients in a single sweep; the
 * shift-rule paths only ever call value().
 */
class ExpectationCost {
  public:
    virtual ~ExpectationCost() = default;

    virtual double offset() const { return 0.0; }
    virtual double scale() const { return 1.0; }
    virtual void apply_observable(const Eigen::VectorXcd &in,
                                  Eigen::VectorXcd &out, int n_qubits) const = 0;

    double value(const StateVector &state) const {
        Eigen::VectorXcd obs(state.dim());
        apply_observable(state.amps(), obs, state.n_qubits());
        return offset() + scale() * state.amps().dot(obs).real();
    }
};

/**
 * @brief Autoencoder infidelity L = 1 - <000|rho_trash|000> on 6 qubits.
 *
 * Qubits 0-2 are traced out; qubits 3-5 form the trash register compared
 * against |000>. The observable is the diagonal projector onto basis
 * states whose trash bits are all zero.
 */
class TrashInfidelityCost : public ExpectationCost {
  public:
    double offset() const override { return 1.0; }
    double scale() const override { return -1.0; }

    void apply_observable(const Eigen::VectorXcd &in, Eigen::VectorXcd &out,
                          int n_qubits) const override {
        if (n_qubits != 6) {
            throw std::invalid_argument("trash_infidelity: requires 6 qubits");
        }
        const std::int64_t trash_mask = 0b000111;
        out.resize(in.size());
        for (std::int64_t idx = 0; idx < in.size(); ++idx) {
            out(idx) = (idx & trash_mask) == 0 ? in(idx) : 0.0;
        }
    }
};

/// L(psi) = 1 - <000|rho_trash|000>, computed through the reduced matrix.
inline double trash_infidelity(const StateVector &state) {
    if (state.n_qubits() != 6) {
        throw std::invalid_argument("trash_infidelity: requires 6 qubits");
    }
    const DensityMatrix rho = partial_trace_keep(state, {3, 4, 5});
    return 1.0 - rho(0, 0).real();
}

/**
 * @brief Lower bound on the reachable infidelity for a fixed input under
 * unitaries that do not entangle across the 3|3 cut:
 * L_opt = 1 - max_j sigma_j^2.
 */
inline double schmidt_bound(const StateVector &input) {
    if (input.n_qubits() != 6) {
        throw std::invalid_argument("schmidt_bound: requires 6 qubits");
    }
    const Eigen::VectorXd sigma = schmidt_singular_values(input, 3);
    return 1.0 - sigma(0) * sigma(0);
}

/// Readout observable <Z> on one qubit (diagonal, sign from that bit).
class ZReadoutCost : public ExpectationCost {
  public:
    explicit ZReadoutCost(int qubit = 0) : qubit_(qubit) {}

    void apply_observable(const Eigen::VectorXcd &in, Eigen::VectorXcd &out,
                          int n_qubits) const override {
        const std::int64_t mask = detail::qubit_mask(n_qubits, qubit_);
        out.resize(in.size());
        for (std::int64_t idx = 0; idx < in.size(); ++idx) {
            out(idx) = (idx & mask) ? -in(idx) : in(idx);
        }
    }

  private:
    int qubit_;
};

/// Classifier readout <Z_0> on a 4-qubit register, in [-1, 1].
inline double classifier_output(const StateVector &state) {
    if (state.n_qubits() != 4) {
        throw std::invalid_argument("classifier_output: requires 4 qubits");
    }
    return ZReadoutCost(0).value(state);
}

inline double mse_loss(const std::vector<double> &outputs,
                       const std::vector<int> &targets) {
    if (outputs.empty() || outputs.size() != targets.size()) {
        throw std::invalid_argument("mse_loss: length mismatch or empty input");
    }
    double total = 0.0;
    for (std::size_t s = 0; s < outputs.size(); ++s) {
        const double diff = outputs[s] - static_cast<double>(targets[s]);
        total += diff * diff;
    }
    return total / static_cast<double>(outputs.size());
}

/// Fraction of samples with sign(output) == target; sign(0) counts as +1.
inline double accuracy(const std::vector<double> &outputs,
                       const std::vector<int> &targets) {
    if (outputs.empty() || outputs.size() != targets.size()) {
        throw std::invalid_argument("accuracy: length mismatch or empty input");
    }
    std::size_t correct = 0;
    for (std::size_t s = 0; s < outputs.size(); ++s) {
        const int predicted = outputs[s] >= 0.0 ? 1 : -1;
        if (predicted == targets[s]) {
            ++correct;
        }
    }
    return static_cast<double>(correct) / static_cast<double>(outputs.size());
}

} // namespace sunvqc
