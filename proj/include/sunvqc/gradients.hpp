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
 * Exact and shift-rule differentiation of all block families.
 *
 * Derivative convention: for a multi-parameter exponential gate
 * W = exp(iA(theta)), the derivative is written with left insertion,
 * dW/dtheta_l = i Omega_l W, where Omega_l is the Hermitian effective
 * generator from the spectral divided-difference (Daleckii-Krein)
 * construction. Shift gates produced by the generalized rule are
 * therefore inserted immediately after the block in circuit order.
 */
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "sunvqc/ansatz.hpp"
#include "sunvqc/objectives.hpp"
#include "sunvqc/pauli.hpp"
#include "sunvqc/statevector.hpp"

namespace sunvqc {

/// Black-box cost for shift-rule and finite-difference paths.
using CostFn = std::function<double(const StateVector &)>;

/// One term of a generalized shift rule: c * [f(t + s) - f(t - s)].
struct ShiftTerm {
    double coefficient = 0.0;
    double shift = 0.0;
};

/// How a training loop obtains gradients.
struct GradientMethod {
    enum class Kind { ExactAdjoint, ShiftRule, FiniteDifference };
    Kind kind = Kind::ExactAdjoint;
    double fd_eps = 1e-5;

    static GradientMethod exact() { return {Kind::ExactAdjoint, 0.0}; }
    static GradientMethod shift() { return {Kind::ShiftRule, 0.0}; }
    static GradientMethod finite_difference(double eps) {
        if (eps <= 0.0) {
            throw std::invalid_argument("finite_difference: eps must be > 0");
        }
        return {Kind::FiniteDifference, eps};
    }
};

/**
 * @brief Effective generator Omega_l for dexp(iA)/dtheta_l = i Omega_l exp(iA).
 *
 * With A = V diag(lambda) V^dag, Omega_l = V [(V^dag Lambda_l V) o Phi] V^dag
 * where Phi_jk = (e^{i(lambda_j - lambda_k)} - 1) / (i(lambda_j - lambda_k))
 * and Phi_jj = 1. Small gaps use a series expansion of Phi to avoid
 * cancellation. The output is Hermitian, and traceless when Lambda_l is.
 */
inline ComplexMatrix effective_generator(const ComplexMatrix &a,
                                         const ComplexMatrix &lambda_l) {
    if (!is_hermitian(a) || !is_hermitian(lambda_l)) {
        throw std::invalid_argument("effective_generator: inputs must be Hermitian");
    }
    if (a.rows() != lambda_l.rows()) {
        throw std::invalid_argument("effective_generator: dimension mismatch");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (a + a.adjoint()));
    const Eigen::VectorXd ev = es.eigenvalues();
    const ComplexMatrix &v = es.eigenvectors();
    const Eigen::Index dim = ev.size();
    ComplexMatrix phi(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index k = 0; k < dim; ++k) {
            const double delta = ev(j) - ev(k);
            if (std::abs(delta) < 1e-8) {
                phi(j, k) = cxd(1.0 - delta * delta / 6.0, 0.5 * delta);
            } else {
                phi(j, k) = (std::exp(cxd(0, delta)) - 1.0) / cxd(0, delta);
            }
        }
    }
    const ComplexMatrix m = v.adjoint() * lambda_l * v;
    return v * m.cwiseProduct(phi) * v.adjoint();
}

/**
 * @brief Shift terms for a gate exp(i t G) from the eigenvalues of G.
 *
 * The cost is a trigonometric polynomial in the distinct positive
 * spectral gaps Delta_m; with R such gaps, the R coefficients c_r solve
 * sum_r 2 c_r sin(Delta_m s_r) = Delta_m for the equidistant shifts
 * s_r = r pi / (2 Delta_max R), making the rule exact for every odd
 * Fourier mode. Intended for rational-ratio spectra (all generators here
 * have eigenvalues on a {-1, 0, 1} scale).
 */
inline std::vector<ShiftTerm>
spectral_shift_rule(const std::vector<double> &eigenvalues) {
    if (eigenvalues.size() < 2) {
        throw std::invalid_argument("spectral_shift_rule: need >= 2 eigenvalues");
    }
    constexpr double kGapTol = 1e-9;
    std::vector<double> gaps;
    for (std::size_t j = 0; j < eigenvalues.size(); ++j) {
        for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
            const double gap = eigenvalues[j] - eigenvalues[k];
            if (gap <= kGapTol) {
                continue;
            }
            bool known = false;
            for (double g : gaps) {
                if (std::abs(g - gap) <= kGapTol) {
                    known = true;
                    break;
                }
            }
            if (!known) {
                gaps.push_back(gap);
            }
        }
    }
    if (gaps.empty()) {
        throw std::invalid_argument(
            "spectral_shift_rule: degenerate spectrum, parameter has no effect");
    }
    std::sort(gaps.begin(), gaps.end());
    const int terms = static_cast<int>(gaps.size());
    const double gap_max = gaps.back();
    constexpr double kPi = 3.14159265358979323846;

    Eigen::VectorXd shifts(terms);
    for (int r = 0; r < terms; ++r) {
        shifts(r) = (r + 1) * kPi / (2.0 * gap_max * terms);
    }
    Eigen::MatrixXd system(terms, terms);
    Eigen::VectorXd rhs(terms);
    for (int m = 0; m < terms; ++m) {
        rhs(m) = gaps[static_cast<std::size_t>(m)];
        for (int r = 0; r < terms; ++r) {
            system(m, r) = 2.0 * std::sin(gaps[static_cast<std::size_t>(m)] * shifts(r));
        }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(system);
    if (!lu.isInvertible()) {
        throw std::runtime_error("spectral_shift_rule: singular shift system");
    }
    const Eigen::VectorXd coeffs = lu.solve(rhs);
    std::vector<ShiftTerm> rule(static_cast<std::size_t>(terms));
    for (int r = 0; r < terms; ++r) {
        rule[static_cast<std::size_t>(r)] = ShiftTerm{coeffs(r), shifts(r)};
    }
    return rule;
}

namespace detail {

/// Gate form a single parameter multiplies, fixing its two-term rule.
enum class ParamKind {
    SunSum,    // inside exp(i sum theta_a Lambda_a); no two-term rule
    FullAngle, // exp(i t P): shifts +-pi/4, coefficient 1
    HalfAngle  // exp(i t P / 2): shifts +-pi/2, coefficient 1/2
};

inline ParamKind param_kind(BlockFamily family, int index_in_block) {
    switch (family) {
    case BlockFamily::SUN:
        return ParamKind::SunSum;
    case BlockFamily::Cartan:
        return (index_in_block >= 6 && index_in_block < 9) ? ParamKind::FullAngle
                                                           : ParamKind::HalfAngle;
    case BlockFamily::PauliProduct:
        return ParamKind::FullAngle;
    case BlockFamily::HardwareEfficient:
        return ParamKind::HalfAngle;
    }
    return ParamKind::SunSum;
}

} // namespace detail

/**
 * @brief Two-term parameter-shift derivative for parameters that multiply
 * a single Pauli word.
 *
 * Gates exp(i t P) give f(t + pi/4) - f(t - pi/4); gates exp(i t P / 2)
 * give [f(t + pi/2) - f(t - pi/2)] / 2. Both are exact, not finite
 * differences. SUN-block parameters are rejected.
 */
inline double two_term_shift(const CircuitLayout &layout,
                             const ParameterVector &theta,
                             const StateVector &input, int param_index,
                             const CostFn &cost) {
    const int b = layout.block_of_param(param_index);
    const auto &block = layout.block(b);
    const auto kind = detail::param_kind(block.spec.family,
                                         param_index - block.param_offset);
    if (kind == detail::ParamKind::SunSum) {
        throw std::invalid_argument(
            "two_term_shift: parameter is not of single-Pauli type");
    }
    constexpr double kPi = 3.14159265358979323846;
    const double shift = kind == detail::ParamKind::FullAngle ? kPi / 4 : kPi / 2;
    const double coeff = kind == detail::ParamKind::FullAngle ? 1.0 : 0.5;
    ParameterVector shifted = theta;
    shifted(param_index) = theta(param_index) + shift;
    const double plus = cost(circuit_state(layout, shifted, input));
    shifted(param_index) = theta(param_index) - shift;
    const double minus = cost(circuit_state(layout, shifted, input));
    return coeff * (plus - minus);
}

/**
 * @brief Generalized shift-rule derivative for one SUN-block parameter.
 *
 * Computes the effective generator Omega_l of block b, expands it in the
 * Pauli basis (omega = Hilbert-Schmidt coefficients), and combines
 * cost evaluations with the gate exp(+-i pi/4 P_m) inserted right after
 * the block: d f = sum_m omega_m [f_{+m} - f_{-m}]. At most
 * 2 * 15 = 30 shifted-circuit evaluations per parameter; terms with a
 * vanishing weight are skipped.
 */
inline double sun_block_gradient(const CircuitLayout &layout,
                                 const ParameterVector &theta,
                                 const StateVector &input, int block_index,
                                 int param_in_block, const CostFn &cost,
                                 long *eval_count = nullptr) {
    if (block_index < 0 || block_index >= layout.block_count()) {
        throw std::invalid_argument("sun_block_gradient: block index out of range");
    }
    const auto &block = layout.block(block_index);
    if (block.spec.family != BlockFamily::SUN) {
        throw std::invalid_argument("sun_block_gradient: block is not SUN family");
    }
    if (param_in_block < 0 || param_in_block >= block.spec.param_count()) {
        throw std::invalid_argument("sun_block_gradient: parameter index out of range");
    }
    const auto &lambdas = detail::su4_generators();
    Eigen::Matrix4cd gen = Eigen::Matrix4cd::Zero();
    for (int a = 0; a < 15; ++a) {
        gen += theta(block.param_offset + a) * lambdas[static_cast<std::size_t>(a)];
    }
    const ComplexMatrix omega_op = effective_generator(
        gen, lambdas[static_cast<std::size_t>(param_in_block)]);
    const Eigen::VectorXd omega = hs_coefficients(omega_op, 2);

    constexpr double kPi = 3.14159265358979323846;
    double grad = 0.0;
    long evals = 0;
    for (int m = 0; m < 15; ++m) {
        if (std::abs(omega(m)) < 1e-15) {
            continue;
        }
        const Eigen::Matrix4cd &pm = lambdas[static_cast<std::size_t>(m)];
        const double plus = cost(circuit_state_with_insertion(
            layout, theta, input, block_index, detail::pauli_gate(pm, kPi / 4)));
        const double minus = cost(circuit_state_with_insertion(
            layout, theta, input, block_index, detail::pauli_gate(pm, -kPi / 4)));
        grad += omega(m) * (plus - minus);
        evals += 2;
    }
    if (eval_count != nullptr) {
        *eval_count += evals;
    }
    return grad;
}

/// Full gradient by shift rules: SUN parameters via sun_block_gradient,
/// all single-Pauli parameters via the two-term rule.
inline Eigen::VectorXd shift_gradient(const CircuitLayout &layout,
                                      const ParameterVector &theta,
                                      const StateVector &input,
                                      const CostFn &cost) {
    Eigen::VectorXd grad(layout.param_count());
    for (int b = 0; b < layout.block_count(); ++b) {
        const auto &block = layout.block(b);
        for (int l = 0; l < block.spec.param_count(); ++l) {
            const int p = block.param_offset + l;
            if (block.spec.family == BlockFamily::SUN) {
                grad(p) = sun_block_gradient(layout, theta, input, b, l, cost);
            } else {
                grad(p) = two_term_shift(layout, theta, input, p, cost);
            }
        }
    }
    return grad;
}

/**
 * @brief Exact gradient via one adjoint sweep; the simulation-mode oracle.
 *
 * Cost O(P) block applications for all P parameters. Returns the cost
 * value; the gradient is written to `grad`.
 */
inline double exact_value_and_gradient(const CircuitLayout &layout,
                                       const ParameterVector &theta,
                                       const StateVector &input,
                                       const ExpectationCost &cost,
                                       Eigen::VectorXd &grad) {
    if (theta.size() != layout.param_count()) {
        throw std::invalid_argument("exact_gradient: parameter length mismatch");
    }
    const int n = layout.n_qubits();
    grad.resize(layout.param_count());

    // forward pass, keeping per-block unitaries for the backward sweep
    std::vector<Eigen::Matrix4cd> unitaries(
        static_cast<std::size_t>(layout.block_count()));
    StateVector chi = input;
    for (int b = 0; b < layout.block_count(); ++b) {
        const auto &block = layout.block(b);
        unitaries[static_cast<std::size_t>(b)] = block_unitary(
            block.spec,
            theta.segment(block.param_offset, block.spec.param_count()));
        detail::apply_2q_inplace(chi.amps(), n,
                                 unitaries[static_cast<std::size_t>(b)],
                                 block.qa, block.qb);
    }
    const double value =
        cost.offset() + cost.scale() * [&] {
            Eigen::VectorXcd obs(chi.dim());
            cost.apply_observable(chi.amps(), obs, n);
            return chi.amps().dot(obs).real();
        }();

    // lambda_b = (U_B ... U_{b+1})^dag O |psi>, chi_b = state before block b
    Eigen::VectorXcd lambda(chi.dim());
    cost.apply_observable(chi.amps(), lambda, n);
    Eigen::VectorXcd scratch(chi.dim());
    for (int b = layout.block_count() - 1; b >= 0; --b) {
        const auto &block = layout.block(b);
        const Eigen::Matrix4cd adj =
            unitaries[static_cast<std::size_t>(b)].adjoint();
        detail::apply_2q_inplace(chi.amps(), n, adj, block.qa, block.qb);
        const auto jac = block_unitary_jacobian(
            block.spec,
            theta.segment(block.param_offset, block.spec.param_count()));
        for (int l = 0; l < block.spec.param_count(); ++l) {
            scratch = chi.amps();
            detail::apply_2q_inplace(scratch, n,
                                     jac[static_cast<std::size_t>(l)], block.qa,
                                     block.qb);
            grad(block.param_offset + l) =
                cost.scale() * 2.0 * lambda.dot(scratch).real();
        }
        detail::apply_2q_inplace(lambda, n, adj, block.qa, block.qb);
    }
    return value;
}

inline Eigen::VectorXd exact_gradient(const CircuitLayout &layout,
                                      const ParameterVector &theta,
                                      const StateVector &input,
                                      const ExpectationCost &cost) {
    Eigen::VectorXd grad;
    exact_value_and_gradient(layout, theta, input, cost, grad);
    return grad;
}

/// Adjoint derivative of a single parameter; cheap for scans that only
/// probe one coordinate.
inline double exact_gradient_component(const CircuitLayout &layout,
                                       const ParameterVector &theta,
                                       const StateVector &input,
                                       const ExpectationCost &cost,
                                       int param_index) {
    const int target_block = layout.block_of_param(param_index);
    const int n = layout.n_qubits();

    StateVector state = input;
    Eigen::VectorXcd chi_before;
    std::vector<Eigen::Matrix4cd> tail;
    for (int b = 0; b < layout.block_count(); ++b) {
        const auto &block = layout.block(b);
        if (b == target_block) {
            chi_before = state.amps();
        }
        const Eigen::Matrix4cd w = block_unitary(
            block.spec,
            theta.segment(block.param_offset, block.spec.param_count()));
        if (b > target_block) {
            tail.push_back(w);
        }
        detail::apply_2q_inplace(state.amps(), n, w, block.qa, block.qb);
    }

    Eigen::VectorXcd lambda(state.dim());
    cost.apply_observable(state.amps(), lambda, n);
    for (int t = static_cast<int>(tail.size()) - 1; t >= 0; --t) {
        const auto &block = layout.block(target_block + 1 + t);
        detail::apply_2q_inplace(lambda, n,
                                 tail[static_cast<std::size_t>(t)].adjoint().eval(),
                                 block.qa, block.qb);
    }
    const auto &block = layout.block(target_block);
    const auto jac = block_unitary_jacobian(
        block.spec,
        theta.segment(block.param_offset, block.spec.param_count()));
    detail::apply_2q_inplace(
        chi_before, n,
        jac[static_cast<std::size_t>(param_index - block.param_offset)],
        block.qa, block.qb);
    return cost.scale() * 2.0 * lambda.dot(chi_before).real();
}

/// Central finite differences; the bias oracle the shift rules are tested
/// against (error O(eps^2)).
inline Eigen::VectorXd finite_difference(const CircuitLayout &layout,
                                         const ParameterVector &theta,
                                         const StateVector &input,
                                         const CostFn &cost, double eps) {
    if (eps <= 0.0) {
        throw std::invalid_argument("finite_difference: eps must be > 0");
    }
    Eigen::VectorXd grad(layout.param_count());
    ParameterVector shifted = theta;
    for (int p = 0; p < layout.param_count(); ++p) {
        shifted(p) = theta(p) + eps;
        const double plus = cost(circuit_state(layout, shifted, input));
        shifted(p) = theta(p) - eps;
        const double minus = cost(circuit_state(layout, shifted, input));
        shifted(p) = theta(p);
        grad(p) = (plus - minus) / (2.0 * eps);
    }
    return grad;
}

} // namespace sunvqc
