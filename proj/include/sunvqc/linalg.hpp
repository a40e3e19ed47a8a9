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
 * Dense complex linear algebra helpers shared across the library.
 */
#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace sunvqc {

using cxd = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kValidationTol = 1e-10;

inline bool is_hermitian(const ComplexMatrix &m, double tol = kValidationTol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline bool is_unitary(const ComplexMatrix &m, double tol = kValidationTol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const ComplexMatrix res =
        m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
    return res.norm() <= tol;
}

/**
 * @brief Computes exp(iH) for a Hermitian matrix H.
 *
 * Uses the eigendecomposition H = V diag(lambda) V^dag, so that
 * exp(iH) = V diag(e^{i lambda}) V^dag. The input is symmetrized as
 * (H + H^dag)/2 before decomposing; inputs further than 1e-10 from
 * Hermitian are rejected.
 */
inline ComplexMatrix expi_hermitian(const ComplexMatrix &h) {
    if (!is_hermitian(h)) {
        throw std::invalid_argument("expi_hermitian: input is not Hermitian");
    }
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym);
    const Eigen::VectorXd lambda = es.eigenvalues();
    Eigen::VectorXcd phases(lambda.size());
    for (Eigen::Index j = 0; j < lambda.size(); ++j) {
        phases(j) = std::exp(cxd(0.0, lambda(j)));
    }
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    return Eigen::kroneckerProduct(a, b);
}

} // namespace sunvqc
