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
 * Dense statevector representation and gate application.
 *
 * Qubit ordering convention, used everywhere in this library: qubit 0 is
 * the leftmost ket label and the most significant bit of the amplitude
 * index, i.e. index = sum_q bit_q * 2^(n-1-q). For example on three
 * qubits |100> has index 4.
 */
#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "sunvqc/linalg.hpp"

namespace sunvqc {

/// Dense reduced density matrix (Hermitian, PSD, unit trace).
using DensityMatrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 14;

/**
 * @brief Normalized complex amplitude vector over n qubits.
 *
 * All circuit operations treat StateVector as an immutable value and
 * return transformed copies; mutable amplitude access exists for
 * construction only.
 */
class StateVector {
  public:
    explicit StateVector(int n_qubits)
        : n_qubits_(check_qubits(n_qubits)),
          amps_(Eigen::VectorXcd::Zero(std::int64_t{1} << n_qubits)) {
        amps_(0) = 1.0;
    }

    StateVector(int n_qubits, Eigen::VectorXcd amps)
        : n_qubits_(check_qubits(n_qubits)), amps_(std::move(amps)) {
        if (amps_.size() != (std::int64_t{1} << n_qubits_)) {
            throw std::invalid_argument(
                "StateVector: amplitude count does not match qubit count");
        }
    }

    /// Computational basis state |index> (index uses the MSB-first layout).
    static StateVector basis_state(int n_qubits, std::uint64_t index) {
        StateVector s(n_qubits);
        if (index >= static_cast<std::uint64_t>(s.dim())) {
            throw std::invalid_argument("basis_state: index out of range");
        }
        s.amps_(0) = 0.0;
        s.amps_(static_cast<std::int64_t>(index)) = 1.0;
        return s;
    }

    int n_qubits() const { return n_qubits_; }
    std::int64_t dim() const { return amps_.size(); }
    const Eigen::VectorXcd &amps() const { return amps_; }
    Eigen::VectorXcd &amps() { return amps_; }

    double norm() const { return amps_.norm(); }
    bool is_normalized(double tol = kValidationTol) const {
        return std::abs(norm() - 1.0) <= tol;
    }

  private:
    static int check_qubits(int n_qubits) {
        if (n_qubits < 1 || n_qubits > kMaxQubits) {
            throw std::invalid_argument("StateVector: n_qubits out of range");
        }
        return n_qubits;
    }

    int n_qubits_;
    Eigen::VectorXcd amps_;
};

namespace detail {

/// Bit mask selecting qubit q in an n-qubit amplitude index.
inline std::int64_t qubit_mask(int n_qubits, int q) {
    return std::int64_t{1} << (n_qubits - 1 - q);
}

inline void check_qubit_index(int n_qubits, int q) {
    if (q < 0 || q >= n_qubits) {
        throw std::invalid_argument("qubit index out of range");
    }
}

/// In-place two-qubit kernel. Rows/columns of u are ordered |q_a q_b> =
/// 00, 01, 10, 11 with q_a the more significant label.
inline void apply_2q_inplace(Eigen::VectorXcd &amps, int n_qubits,
                             const Eigen::Matrix4cd &u, int qa, int qb) {
    const std::int64_t ma = qubit_mask(n_qubits, qa);
    const std::int64_t mb = qubit_mask(n_qubits, qb);
    const std::int64_t dim = amps.size();
    for (std::int64_t base = 0; base < dim; ++base) {
        if ((base & ma) != 0 || (base & mb) != 0) {
            continue;
        }
        const std::int64_t i00 = base;
        const std::int64_t i01 = base | mb;
        const std::int64_t i10 = base | ma;
        const std::int64_t i11 = base | ma | mb;
        const cxd a00 = amps(i00), a01 = amps(i01);
        const cxd a10 = amps(i10), a11 = amps(i11);
        amps(i00) = u(0, 0) * a00 + u(0, 1) * a01 + u(0, 2) * a10 + u(0, 3) * a11;
        amps(i01) = u(1, 0) * a00 + u(1, 1) * a01 + u(1, 2) * a10 + u(1, 3) * a11;
        amps(i10) = u(2, 0) * a00 + u(2, 1) * a01 + u(2, 2) * a10 + u(2, 3) * a11;
        amps(i11) = u(3, 0) * a00 + u(3, 1) * a01 + u(3, 2) * a10 + u(3, 3) * a11;
    }
}

inline void apply_1q_inplace(Eigen::VectorXcd &amps, int n_qubits,
                             const Eigen::Matrix2cd &u, int q) {
    const std::int64_t m = qubit_mask(n_qubits, q);
    const std::int64_t dim = amps.size();
    for (std::int64_t base = 0; base < dim; ++base) {
        if ((base & m) != 0) {
            continue;
        }
        const cxd a0 = amps(base);
        const cxd a1 = amps(base | m);
        amps(base) = u(0, 0) * a0 + u(0, 1) * a1;
        amps(base | m) = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

} // namespace detail

/**
 * @brief Applies a 4x4 unitary to qubits (qa, qb) of the register.
 *
 * Only the two target axes are transformed; the norm is preserved to
 * machine precision. The matrix is checked for unitarity in debug builds.
 */
inline StateVector apply_block(const StateVector &state,
                               const Eigen::Matrix4cd &u4, int qa, int qb) {
    detail::check_qubit_index(state.n_qubits(), qa);
    detail::check_qubit_index(state.n_qubits(), qb);
    if (qa == qb) {
        throw std::invalid_argument("apply_block: target qubits must differ");
    }
    assert(is_unitary(u4, 1e-8));
    StateVector out = state;
    detail::apply_2q_inplace(out.amps(), state.n_qubits(), u4, qa, qb);
    return out;
}

/// Single-qubit analogue of apply_block.
inline StateVector apply_1q(const StateVector &state,
                            const Eigen::Matrix2cd &u2, int q) {
    detail::check_qubit_index(state.n_qubits(), q);
    assert(is_unitary(u2, 1e-8));
    StateVector out = state;
    detail::apply_1q_inplace(out.amps(), state.n_qubits(), u2, q);
    return out;
}

/**
 * @brief Reduced density matrix over the kept qubits, tracing out the rest.
 *
 * `keep` lists the retained qubits; the first entry becomes the most
 * significant label of the reduced index.
 */
inline DensityMatrix partial_trace_keep(const StateVector &state,
                                        const std::vector<int> &keep) {
    const int n = state.n_qubits();
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace_keep: empty keep set");
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int q : keep) {
        detail::check_qubit_index(n, q);
        if (seen[static_cast<std::size_t>(q)]) {
            throw std::invalid_argument("partial_trace_keep: duplicate qubit");
        }
        seen[static_cast<std::size_t>(q)] = true;
    }
    const int r = static_cast<int>(keep.size());
    const std::int64_t kept_dim = std::int64_t{1} << r;
    const std::int64_t env_dim = state.dim() >> r;

    // A(e, k) = amplitude with kept qubits in configuration k, rest in e.
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(env_dim, kept_dim);
    for (std::int64_t idx = 0; idx < state.dim(); ++idx) {
        std::int64_t k = 0;
        for (int pos = 0; pos < r; ++pos) {
            if (idx & detail::qubit_mask(n, keep[static_cast<std::size_t>(pos)])) {
                k |= std::int64_t{1} << (r - 1 - pos);
            }
        }
        std::int64_t e = 0;
        for (int q = 0, pos = 0; q < n; ++q) {
            if (seen[static_cast<std::size_t>(q)]) {
                continue;
            }
            if (idx & detail::qubit_mask(n, q)) {
                e |= std::int64_t{1} << (n - r - 1 - pos);
            }
            ++pos;
        }
        a(e, k) = state.amps()(idx);
    }
    return a.transpose() * a.conjugate();
}

/**
 * @brief Schmidt singular values across the cut after qubit `cut-1`.
 *
 * The amplitudes are reshaped into a 2^cut x 2^(n-cut) matrix (first
 * `cut` qubits index rows) and its singular values are returned in
 * descending order; their squares sum to one for a normalized state.
 */
inline Eigen::VectorXd schmidt_singular_values(const StateVector &state,
                                               int cut) {
    const int n = state.n_qubits();
    if (cut < 1 || cut >= n) {
        throw std::invalid_argument("schmidt_singular_values: invalid cut");
    }
    const std::int64_t rows = std::int64_t{1} << cut;
    const std::int64_t cols = std::int64_t{1} << (n - cut);
    Eigen::MatrixXcd m(rows, cols);
    for (std::int64_t rrow = 0; rrow < rows; ++rrow) {
        for (std::int64_t c = 0; c < cols; ++c) {
            m(rrow, c) = state.amps()((rrow << (n - cut)) | c);
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues();
}

} // namespace sunvqc
