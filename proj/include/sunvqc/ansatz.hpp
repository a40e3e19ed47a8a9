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
 * Two-qubit block families and the brick-wall circuit builder.
 *
 * Four block families act on a qubit pair (a, b):
 *
 *  - SUN: W = exp(i sum_a theta_a Lambda_a), one exponential of the full
 *    su(4) Pauli basis in canonical order (15 parameters).
 *  - Cartan: W = K1 * A * K2 with A = exp(i(a1 XX + a2 YY + a3 ZZ)) and
 *    K1, K2 products of per-qubit ZYZ Euler rotations. Parameter layout:
 *    6 K2 angles, 3 Cartan angles, 6 K1 angles (15 total).
 *  - PauliProduct: W = prod_m exp(i theta_m P_m), the canonical-order
 *    sweep with the m-th gate applied m-th to the state (15 parameters).
 *  - HardwareEfficient: W = CNOT_{a->b} * (ZYZ on a)(ZYZ on b) with
 *    R_P(t) = exp(i t P / 2), 6 parameters; the entangler is fixed.
 */
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sunvqc/linalg.hpp"
#include "sunvqc/pauli.hpp"
#include "sunvqc/statevector.hpp"

namespace sunvqc {

/// Flat real parameter vector theta with per-block slices.
using ParameterVector = Eigen::VectorXd;

enum class BlockFamily { SUN, Cartan, PauliProduct, HardwareEfficient };

inline int param_count(BlockFamily family) {
    return family == BlockFamily::HardwareEfficient ? 6 : 15;
}

inline std::string family_name(BlockFamily family) {
    switch (family) {
    case BlockFamily::SUN:
        return "sun";
    case BlockFamily::Cartan:
        return "cartan";
    case BlockFamily::PauliProduct:
        return "pauli";
    case BlockFamily::HardwareEfficient:
        return "he";
    }
    return "?";
}

inline BlockFamily family_from_name(const std::string &name) {
    if (name == "sun") {
        return BlockFamily::SUN;
    }
    if (name == "cartan") {
        return BlockFamily::Cartan;
    }
    if (name == "pauli") {
        return BlockFamily::PauliProduct;
    }
    if (name == "he") {
        return BlockFamily::HardwareEfficient;
    }
    throw std::invalid_argument("unknown ansatz family: " + name);
}

/// Block descriptor; all blocks act on k = 2 qubits.
struct BlockSpec {
    BlockFamily family = BlockFamily::SUN;
    int param_count() const { return sunvqc::param_count(family); }
};

enum class Boundary { Open, Periodic };

namespace detail {

inline const std::vector<Eigen::Matrix4cd> &su4_generators() {
    static const std::vector<Eigen::Matrix4cd> gens = [] {
        std::vector<Eigen::Matrix4cd> out;
        for (const auto &m : su_basis(2).matrices()) {
            out.push_back(m);
        }
        return out;
    }();
    return gens;
}

inline Eigen::Matrix2cd rot(char axis, double angle) {
    // R_P(t) = exp(i t P / 2) = cos(t/2) I + i sin(t/2) P
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    return c * Eigen::Matrix2cd::Identity() +
           cxd(0, s) * pauli_1q(axis);
}

/// d/dt R_P(t): (i P / 2) R_P(t).
inline Eigen::Matrix2cd rot_derivative(char axis, double angle) {
    return cxd(0, 0.5) * pauli_1q(axis) * rot(axis, angle);
}

inline Eigen::Matrix2cd euler_zyz(const double *a) {
    return rot('Z', a[0]) * rot('Y', a[1]) * rot('Z', a[2]);
}

inline Eigen::Matrix2cd euler_zyz_derivative(const double *a, int which) {
    Eigen::Matrix2cd f0 = which == 0 ? rot_derivative('Z', a[0]) : rot('Z', a[0]);
    Eigen::Matrix2cd f1 = which == 1 ? rot_derivative('Y', a[1]) : rot('Y', a[1]);
    Eigen::Matrix2cd f2 = which == 2 ? rot_derivative('Z', a[2]) : rot('Z', a[2]);
    return f0 * f1 * f2;
}

inline const Eigen::Matrix4cd &cnot_matrix() {
    static const Eigen::Matrix4cd m = (Eigen::Matrix4cd() << //
                                           1, 0, 0, 0,       //
                                       0, 1, 0, 0,           //
                                       0, 0, 0, 1,           //
                                       0, 0, 1, 0)
                                          .finished();
    return m;
}

inline Eigen::Matrix4cd cartan_core(const double *alpha) {
    Eigen::Matrix4cd gen = Eigen::Matrix4cd::Zero();
    static const std::array<const char *, 3> words = {"XX", "YY", "ZZ"};
    for (int mu = 0; mu < 3; ++mu) {
        gen += alpha[mu] * pauli_matrix(PauliWord(words[static_cast<std::size_t>(mu)]));
    }
    return expi_hermitian(gen);
}

/// exp(i t P) for a Pauli word matrix with P^2 = I.
inline Eigen::Matrix4cd pauli_gate(const Eigen::Matrix4cd &p, double angle) {
    return std::cos(angle) * Eigen::Matrix4cd::Identity() +
           cxd(0, std::sin(angle)) * p;
}

} // namespace detail

/**
 * @brief Builds the 4x4 unitary of one block from its parameter slice.
 */
inline Eigen::Matrix4cd block_unitary(const BlockSpec &spec,
                                      const Eigen::Ref<const Eigen::VectorXd> &params) {
    if (params.size() != spec.param_count()) {
        throw std::invalid_argument("block_unitary: wrong parameter count");
    }
    switch (spec.family) {
    case BlockFamily::SUN: {
        Eigen::Matrix4cd gen = Eigen::Matrix4cd::Zero();
        const auto &lambdas = detail::su4_generators();
        for (int a = 0; a < 15; ++a) {
            gen += params(a) * lambdas[static_cast<std::size_t>(a)];
        }
        return expi_hermitian(gen);
    }
    case BlockFamily::Cartan: {
        const Eigen::Matrix4cd k2 =
            kron(detail::euler_zyz(params.data()),
                 detail::euler_zyz(params.data() + 3));
        const Eigen::Matrix4cd core = detail::cartan_core(params.data() + 6);
        const Eigen::Matrix4cd k1 =
            kron(detail::euler_zyz(params.data() + 9),
                 detail::euler_zyz(params.data() + 12));
        return k1 * core * k2;
    }
    case BlockFamily::PauliProduct: {
        const auto &lambdas = detail::su4_generators();
        Eigen::Matrix4cd w = Eigen::Matrix4cd::Identity();
        for (int m = 0; m < 15; ++m) {
            // gate m applied m-th: left-multiply onto the running product
            w = detail::pauli_gate(lambdas[static_cast<std::size_t>(m)],
                                   params(m)) *
                w;
        }
        return w;
    }
    case BlockFamily::HardwareEfficient: {
        const Eigen::Matrix4cd locals =
            kron(detail::euler_zyz(params.data()),
                 detail::euler_zyz(params.data() + 3));
        return detail::cnot_matrix() * locals;
    }
    }
    throw std::logic_error("block_unitary: unreachable");
}

/**
 * @brief Partial derivatives dW/dtheta_l of a block, one 4x4 matrix per
 * parameter. Used by the adjoint differentiation path.
 */
inline std::vector<Eigen::Matrix4cd>
block_unitary_jacobian(const BlockSpec &spec,
                       const Eigen::Ref<const Eigen::VectorXd> &params) {
    if (params.size() != spec.param_count()) {
        throw std::invalid_argument("block_unitary_jacobian: wrong parameter count");
    }
    std::vector<Eigen::Matrix4cd> jac(
        static_cast<std::size_t>(spec.param_count()));
    switch (spec.family) {
    case BlockFamily::SUN: {
        const auto &lambdas = detail::su4_generators();
        Eigen::Matrix4cd gen = Eigen::Matrix4cd::Zero();
        for (int a = 0; a < 15; ++a) {
            gen += params(a) * lambdas[static_cast<std::size_t>(a)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(gen);
        const Eigen::Vector4d lambda = es.eigenvalues();
        const Eigen::Matrix4cd &v = es.eigenvectors();
        Eigen::Vector4cd phases;
        for (int j = 0; j < 4; ++j) {
            phases(j) = std::exp(cxd(0, lambda(j)));
        }
        const Eigen::Matrix4cd w = v * phases.asDiagonal() * v.adjoint();
        Eigen::Matrix4cd phi;
        for (int j = 0; j < 4; ++j) {
            for (int kk = 0; kk < 4; ++kk) {
                const double delta = lambda(j) - lambda(kk);
                if (std::abs(delta) < 1e-8) {
                    // series of (e^{i d} - 1)/(i d) around d = 0
                    phi(j, kk) = cxd(1.0 - delta * delta / 6.0, 0.5 * delta);
                } else {
                    phi(j, kk) = (std::exp(cxd(0, delta)) - 1.0) / cxd(0, delta);
                }
            }
        }
        for (int l = 0; l < 15; ++l) {
            const Eigen::Matrix4cd m =
                v.adjoint() * lambdas[static_cast<std::size_t>(l)] * v;
            const Eigen::Matrix4cd omega =
                v * m.cwiseProduct(phi) * v.adjoint();
            jac[static_cast<std::size_t>(l)] = cxd(0, 1) * omega * w;
        }
        return jac;
    }
    case BlockFamily::Cartan: {
        const Eigen::Matrix2cd u2a = detail::euler_zyz(params.data());
        const Eigen::Matrix2cd u2b = detail::euler_zyz(params.data() + 3);
        const Eigen::Matrix2cd u1a = detail::euler_zyz(params.data() + 9);
        const Eigen::Matrix2cd u1b = detail::euler_zyz(params.data() + 12);
        const Eigen::Matrix4cd k2 = kron(u2a, u2b);
        const Eigen::Matrix4cd k1 = kron(u1a, u1b);
        const Eigen::Matrix4cd core = detail::cartan_core(params.data() + 6);
        static const std::array<const char *, 3> words = {"XX", "YY", "ZZ"};
        for (int l = 0; l < 3; ++l) {
            jac[static_cast<std::size_t>(l)] =
                k1 * core *
                kron(detail::euler_zyz_derivative(params.data(), l), u2b);
            jac[static_cast<std::size_t>(l + 3)] =
                k1 * core *
                kron(u2a, detail::euler_zyz_derivative(params.data() + 3, l));
            // the Cartan generators commute with the core
            jac[static_cast<std::size_t>(l + 6)] =
                k1 *
                (cxd(0, 1) *
                 pauli_matrix(PauliWord(words[static_cast<std::size_t>(l)])) *
                 core) *
                k2;
            jac[static_cast<std::size_t>(l + 9)] =
                kron(detail::euler_zyz_derivative(params.data() + 9, l), u1b) *
                core * k2;
            jac[static_cast<std::size_t>(l + 12)] =
                kron(u1a, detail::euler_zyz_derivative(params.data() + 12, l)) *
                core * k2;
        }
        return jac;
    }
    case BlockFamily::PauliProduct: {
        const auto &lambdas = detail::su4_generators();
        // suffix[m] = G_m ... G_1, prefix[m] = G_15 ... G_{m+1}
        std::array<Eigen::Matrix4cd, 16> suffix;
        suffix[0] = Eigen::Matrix4cd::Identity();
        for (int m = 0; m < 15; ++m) {
            suffix[static_cast<std::size_t>(m + 1)] =
                detail::pauli_gate(lambdas[static_cast<std::size_t>(m)],
                                   params(m)) *
                suffix[static_cast<std::size_t>(m)];
        }
        Eigen::Matrix4cd prefix = Eigen::Matrix4cd::Identity();
        for (int m = 14; m >= 0; --m) {
            jac[static_cast<std::size_t>(m)] =
                prefix * cxd(0, 1) * lambdas[static_cast<std::size_t>(m)] *
                suffix[static_cast<std::size_t>(m + 1)];
            prefix = prefix * detail::pauli_gate(
                                  lambdas[static_cast<std::size_t>(m)], params(m));
        }
        return jac;
    }
    case BlockFamily::HardwareEfficient: {
        const Eigen::Matrix2cd ua = detail::euler_zyz(params.data());
        const Eigen::Matrix2cd ub = detail::euler_zyz(params.data() + 3);
        for (int l = 0; l < 3; ++l) {
            jac[static_cast<std::size_t>(l)] =
                detail::cnot_matrix() *
                kron(detail::euler_zyz_derivative(params.data(), l), ub);
            jac[static_cast<std::size_t>(l + 3)] =
                detail::cnot_matrix() *
                kron(ua, detail::euler_zyz_derivative(params.data() + 3, l));
        }
        return jac;
    }
    }
    throw std::logic_error("block_unitary_jacobian: unreachable");
}

/// One block placed on a qubit pair, with its slice into theta.
struct PlacedBlock {
    int qa = 0;
    int qb = 1;
    BlockSpec spec;
    int param_offset = 0;
};

/**
 * @brief Ordered block list over an n-qubit register.
 *
 * Parameter slices are contiguous, disjoint, and laid out block-major in
 * layout order. Immutable after construction.
 */
class CircuitLayout {
  public:
    CircuitLayout(int n_qubits, std::vector<std::pair<int, int>> pairs,
                  BlockSpec spec)
        : n_qubits_(n_qubits) {
        blocks_.reserve(pairs.size());
        int offset = 0;
        for (const auto &[qa, qb] : pairs) {
            if (qa == qb || qa < 0 || qb < 0 || qa >= n_qubits ||
                qb >= n_qubits) {
                throw std::invalid_argument("CircuitLayout: invalid qubit pair");
            }
            blocks_.push_back(PlacedBlock{qa, qb, spec, offset});
            offset += spec.param_count();
        }
        total_params_ = offset;
    }

    int n_qubits() const { return n_qubits_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const PlacedBlock &block(int b) const {
        return blocks_[static_cast<std::size_t>(b)];
    }
    const std::vector<PlacedBlock> &blocks() const { return blocks_; }
    int param_count() const { return total_params_; }

    /// Index of the block owning flat parameter index `p`.
    int block_of_param(int p) const {
        if (p < 0 || p >= total_params_) {
            throw std::invalid_argument("block_of_param: index out of range");
        }
        for (int b = block_count() - 1; b >= 0; --b) {
            if (blocks_[static_cast<std::size_t>(b)].param_offset <= p) {
                return b;
            }
        }
        return 0;
    }

  private:
    int n_qubits_;
    std::vector<PlacedBlock> blocks_;
    int total_params_ = 0;
};

/**
 * @brief Depth-two brick-wall layout: per repetition an even layer of
 * pairs (0,1), (2,3), ... then an odd layer (1,2), (3,4), ..., plus the
 * wrap-around pair (n-1, 0) when the boundary is periodic.
 */
inline CircuitLayout brickwall_layout(int n_qubits, int reps, BlockSpec spec,
                                      Boundary boundary) {
    if (n_qubits < 2 || n_qubits % 2 != 0) {
        throw std::invalid_argument("brickwall_layout: n_qubits must be even");
    }
    if (reps < 1) {
        throw std::invalid_argument("brickwall_layout: reps must be >= 1");
    }
    std::vector<std::pair<int, int>> pairs;
    for (int rep = 0; rep < reps; ++rep) {
        for (int q = 0; q + 1 < n_qubits; q += 2) {
            pairs.emplace_back(q, q + 1);
        }
        for (int q = 1; q + 1 < n_qubits; q += 2) {
            pairs.emplace_back(q, q + 1);
        }
        if (boundary == Boundary::Periodic && n_qubits > 2) {
            pairs.emplace_back(n_qubits - 1, 0);
        }
    }
    return CircuitLayout(n_qubits, std::move(pairs), spec);
}

/**
 * @brief Stacked even layers only: pairs (0,1), (2,3), ... repeated.
 *
 * Blocks never straddle pairs, so the circuit's dynamical Lie algebra
 * stays the direct sum of one su(4) per pair. This is the configuration
 * the barren-plateau scan uses for the block-restricted families.
 */
inline CircuitLayout block_local_layout(int n_qubits, int reps,
                                        BlockSpec spec) {
    if (n_qubits < 2 || n_qubits % 2 != 0) {
        throw std::invalid_argument("block_local_layout: n_qubits must be even");
    }
    if (reps < 1) {
        throw std::invalid_argument("block_local_layout: reps must be >= 1");
    }
    std::vector<std::pair<int, int>> pairs;
    for (int rep = 0; rep < reps; ++rep) {
        for (int q = 0; q + 1 < n_qubits; q += 2) {
            pairs.emplace_back(q, q + 1);
        }
    }
    return CircuitLayout(n_qubits, std::move(pairs), spec);
}

inline int circuit_param_count(const CircuitLayout &layout) {
    return layout.param_count();
}

/// Applies the layout's blocks in order to `input`.
inline StateVector circuit_state(const CircuitLayout &layout,
                                 const ParameterVector &theta,
                                 const StateVector &input) {
    if (theta.size() != layout.param_count()) {
        throw std::invalid_argument("circuit_state: parameter length mismatch");
    }
    if (input.n_qubits() != layout.n_qubits()) {
        throw std::invalid_argument("circuit_state: qubit count mismatch");
    }
    StateVector state = input;
    for (const auto &block : layout.blocks()) {
        const Eigen::Matrix4cd w = block_unitary(
            block.spec, theta.segment(block.param_offset,
                                      block.spec.param_count()));
        detail::apply_2q_inplace(state.amps(), layout.n_qubits(), w, block.qa,
                                 block.qb);
    }
    return state;
}

/**
 * @brief Circuit application with one extra 4x4 gate inserted on the pair
 * of block `insert_after`, immediately after that block. Used by the
 * generalized shift rule.
 */
inline StateVector circuit_state_with_insertion(const CircuitLayout &layout,
                                                const ParameterVector &theta,
                                                const StateVector &input,
                                                int insert_after,
                                                const Eigen::Matrix4cd &gate) {
    if (insert_after < 0 || insert_after >= layout.block_count()) {
        throw std::invalid_argument(
            "circuit_state_with_insertion: block index out of range");
    }
    StateVector state = input;
    for (int b = 0; b < layout.block_count(); ++b) {
        const auto &block = layout.block(b);
        const Eigen::Matrix4cd w = block_unitary(
            block.spec, theta.segment(block.param_offset,
                                      block.spec.param_count()));
        detail::apply_2q_inplace(state.amps(), layout.n_qubits(), w, block.qa,
                                 block.qb);
        if (b == insert_after) {
            detail::apply_2q_inplace(state.amps(), layout.n_qubits(), gate,
                                     block.qa, block.qb);
        }
    }
    return state;
}

} // namespace sunvqc
