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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "sunvqc/ansatz.hpp"
#include "sunvqc/data.hpp"
#include "sunvqc/rng.hpp"

using namespace sunvqc;

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::VectorXd random_params(const BlockSpec &spec, std::uint64_t seed,
                              double scale = 1.0) {
    Rng rng(seed);
    Eigen::VectorXd params(spec.param_count());
    for (int p = 0; p < params.size(); ++p) {
        params(p) = scale * rng.normal();
    }
    return params;
}

/// Schmidt rank proxy across the 2|2 realignment: sigma_2 of the
/// (a1,a2)x(b1,b2) reshuffle is ~0 exactly for tensor products.
double product_residual(const Eigen::Matrix4cd &w) {
    Eigen::Matrix4cd real;
    for (int a1 = 0; a1 < 2; ++a1) {
        for (int a2 = 0; a2 < 2; ++a2) {
            for (int b1 = 0; b1 < 2; ++b1) {
                for (int b2 = 0; b2 < 2; ++b2) {
                    real(2 * a1 + a2, 2 * b1 + b2) = w(2 * a1 + b1, 2 * a2 + b2);
                }
            }
        }
    }
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(real);
    return svd.singularValues()(1);
}

} // namespace

TEST_CASE("family parameter counts", "[ansatz]") {
    REQUIRE(param_count(BlockFamily::SUN) == 15);
    REQUIRE(param_count(BlockFamily::Cartan) == 15);
    REQUIRE(param_count(BlockFamily::PauliProduct) == 15);
    REQUIRE(param_count(BlockFamily::HardwareEfficient) == 6);
}

TEST_CASE("zero parameters give the identity, except the HE entangler",
          "[ansatz]") {
    for (const auto family : {BlockFamily::SUN, BlockFamily::Cartan,
                              BlockFamily::PauliProduct}) {
        const BlockSpec spec{family};
        const Eigen::Matrix4cd w =
            block_unitary(spec, Eigen::VectorXd::Zero(spec.param_count()));
        REQUIRE((w - Eigen::Matrix4cd::Identity()).norm() < 1e-13);
    }
    const BlockSpec he{BlockFamily::HardwareEfficient};
    const Eigen::Matrix4cd w =
        block_unitary(he, Eigen::VectorXd::Zero(he.param_count()));
    const Eigen::Matrix4cd cnot = (Eigen::Matrix4cd() << //
                                       1, 0, 0, 0,       //
                                   0, 1, 0, 0,           //
                                   0, 0, 0, 1,           //
                                   0, 0, 1, 0)
                                      .finished();
    REQUIRE((w - cnot).norm() < 1e-13);
}

TEST_CASE("PauliProduct single-angle block", "[ansatz]") {
    const BlockSpec spec{BlockFamily::PauliProduct};
    Eigen::VectorXd params = Eigen::VectorXd::Zero(15);
    params(14) = kPi / 2; // the ZZ word is last in canonical order
    const Eigen::Matrix4cd w = block_unitary(spec, params);
    Eigen::Matrix4cd expected = Eigen::Matrix4cd::Zero();
    expected(0, 0) = cxd(0, 1);
    expected(1, 1) = cxd(0, -1);
    expected(2, 2) = cxd(0, -1);
    expected(3, 3) = cxd(0, 1);
    REQUIRE((w - expected).norm() < 1e-13);
}

TEST_CASE("Cartan block factorizes into locals when alpha = 0", "[ansatz]") {
    const BlockSpec spec{BlockFamily::Cartan};
    Eigen::VectorXd params = random_params(spec, 31);
    params.segment(6, 3).setZero();
    const Eigen::Matrix4cd w = block_unitary(spec, params);
    REQUIRE(product_residual(w) < 1e-10);

    // generic alpha is entangling
    params = random_params(spec, 32);
    REQUIRE(product_residual(block_unitary(spec, params)) > 1e-3);
}

TEST_CASE("random blocks are unitary and generically entangling", "[ansatz]") {
    for (const auto family : {BlockFamily::SUN, BlockFamily::Cartan,
                              BlockFamily::PauliProduct,
                              BlockFamily::HardwareEfficient}) {
        const BlockSpec spec{family};
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            const Eigen::Matrix4cd w =
                block_unitary(spec, random_params(spec, 1000 * seed));
            REQUIRE((w.adjoint() * w - Eigen::Matrix4cd::Identity()).norm() <
                    1e-10);
        }
        // Schmidt rank of W|00> exceeds 1 for a generic draw
        const Eigen::Matrix4cd w = block_unitary(spec, random_params(spec, 99));
        StateVector bell_probe(2);
        detail::apply_2q_inplace(bell_probe.amps(), 2, w, 0, 1);
        const Eigen::VectorXd sigma = schmidt_singular_values(bell_probe, 1);
        REQUIRE(sigma(1) > 1e-4);
    }
}

TEST_CASE("wrong slice length is rejected", "[ansatz]") {
    REQUIRE_THROWS_AS(
        block_unitary(BlockSpec{BlockFamily::SUN}, Eigen::VectorXd::Zero(6)),
        std::invalid_argument);
    REQUIRE_THROWS_AS(block_unitary(BlockSpec{BlockFamily::HardwareEfficient},
                                    Eigen::VectorXd::Zero(15)),
                      std::invalid_argument);
}

TEST_CASE("brickwall_layout block placement", "[ansatz]") {
    SECTION("n=6 reps=2 periodic gives 12 blocks and 180 SUN parameters") {
        const CircuitLayout layout = brickwall_layout(
            6, 2, BlockSpec{BlockFamily::SUN}, Boundary::Periodic);
        REQUIRE(layout.block_count() == 12);
        REQUIRE(circuit_param_count(layout) == 180);
    }
    SECTION("n=4 reps=1 open gives (0,1), (2,3), (1,2)") {
        const CircuitLayout layout =
            brickwall_layout(4, 1, BlockSpec{BlockFamily::SUN}, Boundary::Open);
        REQUIRE(layout.block_count() == 3);
        REQUIRE(layout.block(0).qa == 0);
        REQUIRE(layout.block(0).qb == 1);
        REQUIRE(layout.block(1).qa == 2);
        REQUIRE(layout.block(1).qb == 3);
        REQUIRE(layout.block(2).qa == 1);
        REQUIRE(layout.block(2).qb == 2);
    }
    SECTION("n=6 reps=1 open gives 5 blocks") {
        const CircuitLayout layout =
            brickwall_layout(6, 1, BlockSpec{BlockFamily::SUN}, Boundary::Open);
        REQUIRE(layout.block_count() == 5);
    }
    SECTION("odd qubit count rejected") {
        REQUIRE_THROWS_AS(brickwall_layout(5, 1, BlockSpec{BlockFamily::SUN},
                                           Boundary::Open),
                          std::invalid_argument);
    }
    SECTION("parameter slices are contiguous and disjoint") {
        const CircuitLayout layout = brickwall_layout(
            6, 2, BlockSpec{BlockFamily::HardwareEfficient}, Boundary::Periodic);
        int expected_offset = 0;
        for (const auto &block : layout.blocks()) {
            REQUIRE(block.param_offset == expected_offset);
            expected_offset += block.spec.param_count();
        }
        REQUIRE(layout.param_count() == expected_offset);
    }
}

TEST_CASE("circuit_param_count", "[ansatz]") {
    REQUIRE(circuit_param_count(brickwall_layout(
                6, 2, BlockSpec{BlockFamily::SUN}, Boundary::Periodic)) == 180);
    const CircuitLayout empty(4, {}, BlockSpec{BlockFamily::SUN});
    REQUIRE(circuit_param_count(empty) == 0);
    const CircuitLayout he(
        6, {{0, 1}, {2, 3}, {4, 5}, {1, 2}, {3, 4}},
        BlockSpec{BlockFamily::HardwareEfficient});
    REQUIRE(circuit_param_count(he) == 30);
}

TEST_CASE("circuit_state", "[ansatz]") {
    SECTION("zero parameters act as the identity for SUN") {
        const CircuitLayout layout = brickwall_layout(
            6, 2, BlockSpec{BlockFamily::SUN}, Boundary::Periodic);
        const StateVector input = haar_state(6, 5);
        const StateVector out = circuit_state(
            layout, Eigen::VectorXd::Zero(layout.param_count()), input);
        REQUIRE((out.amps() - input.amps()).norm() < 1e-12);
    }
    SECTION("single-block layout equals the embedded block unitary") {
        const CircuitLayout layout(6, {{2, 3}}, BlockSpec{BlockFamily::SUN});
        const Eigen::VectorXd theta = random_params(layout.block(0).spec, 8);
        const StateVector input = haar_state(6, 9);
        const StateVector out = circuit_state(layout, theta, input);
        const Eigen::Matrix4cd w = block_unitary(layout.block(0).spec, theta);
        const Eigen::VectorXcd expected =
            oracles::embed_2q(w, 6, 2, 3) * input.amps();
        REQUIRE((out.amps() - expected).lpNorm<Eigen::Infinity>() < 1e-12);
    }
    SECTION("full circuit matches the dense 64x64 product oracle") {
        for (const auto family : {BlockFamily::SUN, BlockFamily::Cartan,
                                  BlockFamily::PauliProduct,
                                  BlockFamily::HardwareEfficient}) {
            const CircuitLayout layout = brickwall_layout(
                6, 1, BlockSpec{family}, Boundary::Periodic);
            Rng rng(13 + static_cast<std::uint64_t>(family));
            Eigen::VectorXd theta(layout.param_count());
            for (int p = 0; p < theta.size(); ++p) {
                theta(p) = rng.normal();
            }
            Eigen::MatrixXcd dense = Eigen::MatrixXcd::Identity(64, 64);
            for (const auto &block : layout.blocks()) {
                const Eigen::Matrix4cd w = block_unitary(
                    block.spec, theta.segment(block.param_offset,
                                              block.spec.param_count()));
                dense = oracles::embed_2q(w, 6, block.qa, block.qb) * dense;
            }
            const StateVector input = haar_state(6, 55);
            const StateVector out = circuit_state(layout, theta, input);
            const Eigen::VectorXcd expected = dense * input.amps();
            REQUIRE((out.amps() - expected).lpNorm<Eigen::Infinity>() < 1e-12);
            REQUIRE(std::abs(out.norm() - 1.0) < 1e-12);
        }
    }
    SECTION("parameter length mismatch rejected") {
        const CircuitLayout layout = brickwall_layout(
            4, 1, BlockSpec{BlockFamily::SUN}, Boundary::Open);
        REQUIRE_THROWS_AS(
            circuit_state(layout, Eigen::VectorXd::Zero(7), StateVector(4)),
            std::invalid_argument);
    }
}

TEST_CASE("SUN exponential map reaches Haar-random targets", "[ansatz]") {
    // Surjectivity probe: recover coordinates from the matrix log and
    // check the rebuilt block matches the target up to a global phase.
    Rng rng(2024);
    double worst = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
        Eigen::Matrix4cd v = oracles::random_unitary(4, rng);
        // strip global phase so v is special unitary
        v *= std::pow(v.determinant(), -0.25);
        Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(v);
        Eigen::Matrix4cd gen = Eigen::Matrix4cd::Zero();
        for (int j = 0; j < 4; ++j) {
            const double phase = std::arg(es.eigenvalues()(j));
            gen += phase * es.eigenvectors().col(j) *
                   es.eigenvectors().col(j).adjoint();
        }
        gen = 0.5 * (gen + gen.adjoint()).eval();
        const Eigen::VectorXd theta = hs_coefficients(gen, 2);
        const Eigen::Matrix4cd w =
            block_unitary(BlockSpec{BlockFamily::SUN}, theta);
        // the dropped trace piece is a global phase
        const cxd phase = (w.adjoint() * v).trace() / 4.0;
        worst = std::max(worst, (w * phase - v).norm());
    }
    REQUIRE(worst < 1e-6);
}
