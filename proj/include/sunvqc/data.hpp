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
 * Seeded benchmark inputs: Haar-random states, weakly entangled states,
 * two-moons samples, and the angle encoding into a 4-qubit register.
 *
 * Everything here is a pure function of (parameters, seed); see rng.hpp
 * for the generator.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "sunvqc/ansatz.hpp"
#include "sunvqc/rng.hpp"
#include "sunvqc/statevector.hpp"

namespace sunvqc {

/// Two-dimensional feature vector with a +/-1 class label.
struct LabeledSample {
    double x1 = 0.0;
    double x2 = 0.0;
    int label = 1;
};

namespace detail {

inline Eigen::VectorXcd gaussian_vector(Rng &rng, std::int64_t dim) {
    Eigen::VectorXcd v(dim);
    for (std::int64_t idx = 0; idx < dim; ++idx) {
        const double re = rng.normal();
        const double im = rng.normal();
        v(idx) = cxd(re, im);
    }
    return v;
}

} // namespace detail

/// Haar-random pure state: normalized vector of standard complex Gaussians.
inline StateVector haar_state(int n_qubits, std::uint64_t seed) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("haar_state: n_qubits out of range");
    }
    Rng rng(seed);
    Eigen::VectorXcd amps =
        detail::gaussian_vector(rng, std::int64_t{1} << n_qubits);
    amps /= amps.norm();
    return StateVector(n_qubits, std::move(amps));
}

/**
 * @brief 6-qubit state with Schmidt spectrum {1-eps, eps} across the 3|3
 * cut: sqrt(1-eps)|a>|b> + sqrt(eps)|a'>|b'> with <a|a'> = <b|b'> = 0 and
 * all four factors Haar-random on 3 qubits. Its schmidt_bound equals eps.
 */
inline StateVector weak_entangled_state(double eps, std::uint64_t seed) {
    if (eps < 0.0 || eps > 0.5) {
        throw std::invalid_argument("weak_entangled_state: eps must be in [0, 0.5]");
    }
    Rng rng(seed);
    auto orthonormal_pair = [&rng]() {
        Eigen::VectorXcd first = detail::gaussian_vector(rng, 8);
        first /= first.norm();
        Eigen::VectorXcd second = detail::gaussian_vector(rng, 8);
        second -= first * first.dot(second);
        second /= second.norm();
        return std::make_pair(first, second);
    };
    const auto [a, a_perp] = orthonormal_pair();
    const auto [b, b_perp] = orthonormal_pair();

    Eigen::VectorXcd amps(64);
    const double c0 = std::sqrt(1.0 - eps);
    const double c1 = std::sqrt(eps);
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            amps(8 * i + j) = c0 * a(i) * b(j) + c1 * a_perp(i) * b_perp(j);
        }
    }
    return StateVector(6, std::move(amps));
}

/**
 * @brief Two-moons samples: n/2 points on the upper arc
 * (cos phi, sin phi) labeled -1 and n/2 on the lower arc
 * (1 - cos phi, 0.5 - sin phi) labeled +1, phi uniform on [0, pi], plus
 * isotropic Gaussian noise of width sigma.
 */
inline std::vector<LabeledSample> two_moons(int n_samples, double noise_sigma,
                                            std::uint64_t seed) {
    if (n_samples <= 0 || n_samples % 2 != 0) {
        throw std::invalid_argument("two_moons: n_samples must be positive and even");
    }
    if (noise_sigma < 0.0) {
        throw std::invalid_argument("two_moons: noise must be >= 0");
    }
    constexpr double kPi = 3.14159265358979323846;
    Rng rng(seed);
    std::vector<LabeledSample> samples;
    samples.reserve(static_cast<std::size_t>(n_samples));
    for (int s = 0; s < n_samples / 2; ++s) {
        const double phi = kPi * rng.uniform();
        samples.push_back(LabeledSample{
            std::cos(phi) + noise_sigma * rng.normal(),
            std::sin(phi) + noise_sigma * rng.normal(), -1});
    }
    for (int s = 0; s < n_samples / 2; ++s) {
        const double phi = kPi * rng.uniform();
        samples.push_back(LabeledSample{
            1.0 - std::cos(phi) + noise_sigma * rng.normal(),
            0.5 - std::sin(phi) + noise_sigma * rng.normal(), 1});
    }
    return samples;
}

/**
 * @brief Min-max scaler to [-1, 1], fit on the training split only and
 * stored with the model config. Transform is linear (not clamped), so
 * test points slightly outside the training range extrapolate.
 */
struct FeatureScaler {
    double x1_lo = -1.0, x1_hi = 1.0;
    double x2_lo = -1.0, x2_hi = 1.0;

    static FeatureScaler fit(const std::vector<LabeledSample> &samples) {
        if (samples.empty()) {
            throw std::invalid_argument("FeatureScaler: empty training set");
        }
        FeatureScaler sc;
        sc.x1_lo = sc.x1_hi = samples.front().x1;
        sc.x2_lo = sc.x2_hi = samples.front().x2;
        for (const auto &s : samples) {
            sc.x1_lo = std::min(sc.x1_lo, s.x1);
            sc.x1_hi = std::max(sc.x1_hi, s.x1);
            sc.x2_lo = std::min(sc.x2_lo, s.x2);
            sc.x2_hi = std::max(sc.x2_hi, s.x2);
        }
        return sc;
    }

    std::pair<double, double> transform(double x1, double x2) const {
        auto scale = [](double v, double lo, double hi) {
            return hi > lo ? 2.0 * (v - lo) / (hi - lo) - 1.0 : 0.0;
        };
        return {scale(x1, x1_lo, x1_hi), scale(x2, x2_lo, x2_hi)};
    }
};

/**
 * @brief Angle encoding of scaled features into 4 qubits: starting from
 * |0000>, apply R_y(pi * x1) on qubits 0 and 2 and R_y(pi * x2) on
 * qubits 1 and 3, with R_y(t) = exp(i t Y / 2).
 */
inline StateVector angle_encode(double x1_scaled, double x2_scaled) {
    if (!std::isfinite(x1_scaled) || !std::isfinite(x2_scaled)) {
        throw std::invalid_argument("angle_encode: non-finite features");
    }
    constexpr double kPi = 3.14159265358979323846;
    StateVector state(4);
    const Eigen::Matrix2cd ry1 = detail::rot('Y', kPi * x1_scaled);
    const Eigen::Matrix2cd ry2 = detail::rot('Y', kPi * x2_scaled);
    detail::apply_1q_inplace(state.amps(), 4, ry1, 0);
    detail::apply_1q_inplace(state.amps(), 4, ry2, 1);
    detail::apply_1q_inplace(state.amps(), 4, ry1, 2);
    detail::apply_1q_inplace(state.amps(), 4, ry2, 3);
    return state;
}

} // namespace sunvqc
