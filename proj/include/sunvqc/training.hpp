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
 * Fixed-step gradient descent and the three experiment drivers
 * (ensemble autoencoder, two-moons classifier, barren-plateau scan).
 *
 * Seeding scheme: a driver's base seed is combined with the run index r
 * as run_seed = seed + r; independent streams inside a run (input state,
 * parameter init, datasets) come from derive_seed(run_seed, stream).
 * Ensemble members run in parallel; aggregation always happens in run
 * order, so results are byte-reproducible regardless of thread count.
 */
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "sunvqc/ansatz.hpp"
#include "sunvqc/data.hpp"
#include "sunvqc/gradients.hpp"
#include "sunvqc/objectives.hpp"
#include "sunvqc/rng.hpp"
#include "sunvqc/statevector.hpp"

namespace sunvqc {

namespace seed_stream {
inline constexpr std::uint64_t kInput = 0;
inline constexpr std::uint64_t kInit = 1;
inline constexpr std::uint64_t kTrainSet = 2;
inline constexpr std::uint64_t kTestSet = 3;
inline constexpr std::uint64_t kScanTheta = 4;
} // namespace seed_stream

/// Core optimizer/experiment settings shared by the drivers.
struct TrainConfig {
    double eta = 0.02;
    int iters = 3000;
    GradientMethod gradient = GradientMethod::exact();
    std::uint64_t seed = 1;
    BlockFamily ansatz = BlockFamily::SUN;
    int n_qubits = 6;
    int reps = 2;
    Boundary boundary = Boundary::Periodic;
    double sigma_init = 0.05;
    int threads = 1;

    void validate() const {
        if (eta <= 0.0) {
            throw std::invalid_argument("config: eta must be > 0");
        }
        if (iters < 0) {
            throw std::invalid_argument("config: iters must be >= 0");
        }
        if (sigma_init < 0.0) {
            throw std::invalid_argument("config: sigma_init must be >= 0");
        }
    }
};

/// Per-iteration record of a single optimization run.
struct TraceRecord {
    int iter = 0;
    double loss = 0.0;
    double grad_inf_norm = 0.0;
};

/// Loss/gradient history of one run, including iteration 0 (length T+1).
struct TrainingTrace {
    std::vector<TraceRecord> records;
    Eigen::VectorXd final_theta;
};

/// Differentiable scalar objective over a flat parameter vector.
class Objective {
  public:
    virtual ~Objective() = default;
    virtual double value(const Eigen::VectorXd &theta) const = 0;
    virtual double value_and_gradient(const Eigen::VectorXd &theta,
                                      Eigen::VectorXd &grad) const = 0;
};

/**
 * @brief Fixed-step gradient descent: theta_{t+1} = theta_t - eta * g_t.
 *
 * Records (loss, gradient infinity-norm) at every iterate including the
 * final one; aborts with a diagnostic if the loss or gradient turns
 * non-finite.
 */
inline TrainingTrace
gd_minimize(const Objective &objective, Eigen::VectorXd theta,
            double eta, int iters,
            const std::function<void(int, const Eigen::VectorXd &)> &callback =
                nullptr) {
    if (eta <= 0.0) {
        throw std::invalid_argument("gd_minimize: eta must be > 0");
    }
    if (iters < 0) {
        throw std::invalid_argument("gd_minimize: iters must be >= 0");
    }
    TrainingTrace trace;
    trace.records.reserve(static_cast<std::size_t>(iters) + 1);
    Eigen::VectorXd grad(theta.size());
    for (int t = 0; t <= iters; ++t) {
        const double loss = objective.value_and_gradient(theta, grad);
        const double gnorm = grad.size() > 0 ? grad.lpNorm<Eigen::Infinity>() : 0.0;
        if (!std::isfinite(loss) || !std::isfinite(gnorm)) {
            throw std::runtime_error("gd_minimize: non-finite loss or gradient at iteration " +
                                     std::to_string(t));
        }
        trace.records.push_back(TraceRecord{t, loss, gnorm});
        if (callback) {
            callback(t, theta);
        }
        if (t < iters) {
            theta -= eta * grad;
        }
    }
    trace.final_theta = std::move(theta);
    return trace;
}

/// i.i.d. Normal(0, sigma^2) initialization; sigma = 0.05 is a
/// near-identity start for every family.
inline Eigen::VectorXd param_init(const CircuitLayout &layout, double sigma,
                                  std::uint64_t seed) {
    if (sigma < 0.0) {
        throw std::invalid_argument("param_init: sigma must be >= 0");
    }
    Rng rng(seed);
    Eigen::VectorXd theta(layout.param_count());
    for (int p = 0; p < theta.size(); ++p) {
        theta(p) = sigma * rng.normal();
    }
    return theta;
}

namespace detail {

inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)> &body) {
    if (threads <= 0) {
        threads = static_cast<int>(std::thread::hardware_concurrency());
        if (threads <= 0) {
            threads = 1;
        }
    }
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    if (workers <= 1) {
        for (std::size_t idx = 0; idx < count; ++idx) {
            body(idx);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t idx = next.fetch_add(1); idx < count;
                 idx = next.fetch_add(1)) {
                try {
                    body(idx);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) {
                        first_error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

} // namespace detail

/// Circuit expectation cost as a differentiable objective over theta.
class CircuitObjective : public Objective {
  public:
    CircuitObjective(const CircuitLayout &layout, StateVector input,
                     const ExpectationCost &cost, GradientMethod method)
        : layout_(layout), input_(std::move(input)), cost_(cost),
          method_(method) {}

    double value(const Eigen::VectorXd &theta) const override {
        return cost_.value(circuit_state(layout_, theta, input_));
    }

    double value_and_gradient(const Eigen::VectorXd &theta,
                              Eigen::VectorXd &grad) const override {
        switch (method_.kind) {
        case GradientMethod::Kind::ExactAdjoint:
            return exact_value_and_gradient(layout_, theta, input_, cost_, grad);
        case GradientMethod::Kind::ShiftRule:
            grad = shift_gradient(layout_, theta, input_, cost_fn());
            return value(theta);
        case GradientMethod::Kind::FiniteDifference:
            grad = finite_difference(layout_, theta, input_, cost_fn(),
                                     method_.fd_eps);
            return value(theta);
        }
        throw std::logic_error("CircuitObjective: unreachable");
    }

    CostFn cost_fn() const {
        return [this](const StateVector &s) { return cost_.value(s); };
    }

  private:
    const CircuitLayout &layout_;
    StateVector input_;
    const ExpectationCost &cost_;
    GradientMethod method_;
};

/// What the autoencoder ensemble trains on.
struct InputSpec {
    enum class Kind { Haar, WeakEntangled };
    Kind kind = Kind::Haar;
    double eps = 0.01;

    static InputSpec haar() { return {Kind::Haar, 0.0}; }
    static InputSpec weak(double eps) { return {Kind::WeakEntangled, eps}; }
};

/// Aggregated ensemble results; mean/std are over runs, pointwise in t.
struct EnsembleStats {
    std::vector<TrainingTrace> runs;
    std::vector<double> run_bounds;
    Eigen::VectorXd mean_curve;
    Eigen::VectorXd std_curve;
    double mean_schmidt_bound = 0.0;
};

/**
 * @brief Trains the 6-qubit autoencoder on `ensemble` independent inputs.
 *
 * Run r uses seed + r: a fresh input state, a fresh initialization, and a
 * full gd_minimize on the trash infidelity. The sample standard deviation
 * (N - 1 denominator; 0 when N = 1) matches what the CSV emits.
 */
inline EnsembleStats ensemble_autoencode(const TrainConfig &config,
                                         int ensemble, InputSpec input_spec) {
    config.validate();
    if (ensemble < 1) {
        throw std::invalid_argument("ensemble_autoencode: ensemble must be >= 1");
    }
    if (config.n_qubits != 6) {
        throw std::invalid_argument("ensemble_autoencode: requires 6 qubits");
    }
    const CircuitLayout layout = brickwall_layout(
        config.n_qubits, config.reps, BlockSpec{config.ansatz}, config.boundary);
    const TrashInfidelityCost cost;

    EnsembleStats stats;
    stats.runs.resize(static_cast<std::size_t>(ensemble));
    stats.run_bounds.resize(static_cast<std::size_t>(ensemble));
    detail::parallel_for(
        static_cast<std::size_t>(ensemble), config.threads,
        [&](std::size_t r) {
            const std::uint64_t run_seed = config.seed + r;
            const StateVector input =
                input_spec.kind == InputSpec::Kind::Haar
                    ? haar_state(config.n_qubits,
                                 derive_seed(run_seed, seed_stream::kInput))
                    : weak_entangled_state(
                          input_spec.eps,
                          derive_seed(run_seed, seed_stream::kInput));
            const Eigen::VectorXd theta0 =
                param_init(layout, config.sigma_init,
                           derive_seed(run_seed, seed_stream::kInit));
            const CircuitObjective objective(layout, input, cost,
                                             config.gradient);
            stats.runs[r] = gd_minimize(objective, theta0, config.eta,
                                        config.iters);
            stats.run_bounds[r] = schmidt_bound(input);
        });

    const auto points = stats.runs.front().records.size();
    stats.mean_curve.resize(static_cast<Eigen::Index>(points));
    stats.std_curve.resize(static_cast<Eigen::Index>(points));
    for (std::size_t t = 0; t < points; ++t) {
        double mean = 0.0;
        for (const auto &run : stats.runs) {
            mean += run.records[t].loss;
        }
        mean /= static_cast<double>(ensemble);
        double var = 0.0;
        for (const auto &run : stats.runs) {
            const double d = run.records[t].loss - mean;
            var += d * d;
        }
        var = ensemble > 1 ? var / static_cast<double>(ensemble - 1) : 0.0;
        stats.mean_curve(static_cast<Eigen::Index>(t)) = mean;
        stats.std_curve(static_cast<Eigen::Index>(t)) = std::sqrt(var);
    }
    double bound = 0.0;
    for (double b : stats.run_bounds) {
        bound += b;
    }
    stats.mean_schmidt_bound = bound / static_cast<double>(ensemble);
    return stats;
}

enum class LossKind { Mse, CrossEntropy };

/// Full-batch classifier loss over encoded samples, differentiated by
/// chaining per-sample <Z_0> gradients through the outer loss.
class ClassifierObjective : public Objective {
  public:
    ClassifierObjective(const CircuitLayout &layout,
                        std::vector<StateVector> inputs,
                        std::vector<int> targets, LossKind loss,
                        GradientMethod method)
        : layout_(layout), inputs_(std::move(inputs)),
          targets_(std::move(targets)), loss_(loss), method_(method) {
        if (inputs_.empty() || inputs_.size() != targets_.size()) {
            throw std::invalid_argument("ClassifierObjective: bad batch");
        }
    }

    std::vector<double> outputs(const Eigen::VectorXd &theta) const {
        std::vector<double> out(inputs_.size());
        for (std::size_t s = 0; s < inputs_.size(); ++s) {
            out[s] = readout_.value(circuit_state(layout_, theta, inputs_[s]));
        }
        return out;
    }

    double value(const Eigen::VectorXd &theta) const override {
        return batch_loss(outputs(theta));
    }

    double value_and_gradient(const Eigen::VectorXd &theta,
                              Eigen::VectorXd &grad) const override {
        grad = Eigen::VectorXd::Zero(theta.size());
        Eigen::VectorXd sample_grad(theta.size());
        double loss = 0.0;
        const double inv_batch = 1.0 / static_cast<double>(inputs_.size());
        for (std::size_t s = 0; s < inputs_.size(); ++s) {
            double out;
            switch (method_.kind) {
            case GradientMethod::Kind::ExactAdjoint:
                out = exact_value_and_gradient(layout_, theta, inputs_[s],
                                               readout_, sample_grad);
                break;
            case GradientMethod::Kind::ShiftRule:
                sample_grad = shift_gradient(
                    layout_, theta, inputs_[s],
                    [this](const StateVector &st) { return readout_.value(st); });
                out = readout_.value(circuit_state(layout_, theta, inputs_[s]));
                break;
            case GradientMethod::Kind::FiniteDifference:
            default:
                sample_grad = finite_difference(
                    layout_, theta, inputs_[s],
                    [this](const StateVector &st) { return readout_.value(st); },
                    method_.fd_eps);
                out = readout_.value(circuit_state(layout_, theta, inputs_[s]));
                break;
            }
            loss += sample_term(out, targets_[s]) * inv_batch;
            grad += sample_chain(out, targets_[s]) * inv_batch * sample_grad;
        }
        return loss;
    }

  private:
    double batch_loss(const std::vector<double> &outs) const {
        double loss = 0.0;
        for (std::size_t s = 0; s < outs.size(); ++s) {
            loss += sample_term(outs[s], targets_[s]);
        }
        return loss / static_cast<double>(outs.size());
    }

    double sample_term(double out, int target) const {
        if (loss_ == LossKind::Mse) {
            const double d = out - static_cast<double>(target);
            return d * d;
        }
        const double p = clamp_prob(0.5 * (1.0 + out));
        const double y = 0.5 * (1.0 + static_cast<double>(target));
        return -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    }

    /// d(sample_term)/d(out)
    double sample_chain(double out, int target) const {
        if (loss_ == LossKind::Mse) {
            return 2.0 * (out - static_cast<double>(target));
        }
        const double p = clamp_prob(0.5 * (1.0 + out));
        const double y = 0.5 * (1.0 + static_cast<double>(target));
        return 0.5 * (p - y) / (p * (1.0 - p));
    }

    static double clamp_prob(double p) {
        constexpr double kEdge = 1e-12;
        return std::min(1.0 - kEdge, std::max(kEdge, p));
    }

    const CircuitLayout &layout_;
    std::vector<StateVector> inputs_;
    std::vector<int> targets_;
    LossKind loss_;
    GradientMethod method_;
    ZReadoutCost readout_{0};
};

struct ClassifierConfig {
    TrainConfig train; // eta defaults differ (0.05); iters = epochs
    int train_samples = 200;
    int test_samples = 200;
    double noise = 0.1;
    LossKind loss = LossKind::Mse;
};

struct ClassifierResult {
    std::vector<double> train_accuracy; // per epoch, length epochs + 1
    std::vector<double> test_accuracy;
    TrainingTrace trace;
    FeatureScaler scaler;
    std::vector<LabeledSample> train_set;
    std::vector<LabeledSample> test_set;
};

/**
 * @brief Trains the 4-qubit two-moons classifier, recording train/test
 * accuracy each epoch. The hardware-efficient baseline is depth-matched
 * by construction: every block family places one two-qubit block per
 * brick-wall slot, so equal reps means equal two-qubit depth.
 */
inline ClassifierResult train_classifier(const ClassifierConfig &config) {
    config.train.validate();
    if (config.train.n_qubits != 4) {
        throw std::invalid_argument("train_classifier: requires 4 qubits");
    }
    if (config.noise < 0.0) {
        throw std::invalid_argument("train_classifier: noise must be >= 0");
    }
    ClassifierResult result;
    result.train_set =
        two_moons(config.train_samples, config.noise,
                  derive_seed(config.train.seed, seed_stream::kTrainSet));
    result.test_set =
        two_moons(config.test_samples, config.noise,
                  derive_seed(config.train.seed, seed_stream::kTestSet));
    result.scaler = FeatureScaler::fit(result.train_set);

    auto encode_all = [&result](const std::vector<LabeledSample> &samples) {
        std::vector<StateVector> states;
        states.reserve(samples.size());
        for (const auto &s : samples) {
            const auto [x1, x2] = result.scaler.transform(s.x1, s.x2);
            states.push_back(angle_encode(x1, x2));
        }
        return states;
    };
    std::vector<StateVector> train_states = encode_all(result.train_set);
    std::vector<StateVector> test_states = encode_all(result.test_set);
    std::vector<int> train_targets, test_targets;
    for (const auto &s : result.train_set) {
        train_targets.push_back(s.label);
    }
    for (const auto &s : result.test_set) {
        test_targets.push_back(s.label);
    }

    const CircuitLayout layout =
        brickwall_layout(config.train.n_qubits, config.train.reps,
                         BlockSpec{config.train.ansatz}, config.train.boundary);
    const ClassifierObjective objective(layout, train_states, train_targets,
                                        config.loss, config.train.gradient);
    const Eigen::VectorXd theta0 =
        param_init(layout, config.train.sigma_init,
                   derive_seed(config.train.seed, seed_stream::kInit));

    auto batch_accuracy = [&layout](const Eigen::VectorXd &theta,
                                    const std::vector<StateVector> &states,
                                    const std::vector<int> &targets) {
        std::vector<double> outs(states.size());
        for (std::size_t s = 0; s < states.size(); ++s) {
            outs[s] = classifier_output(circuit_state(layout, theta, states[s]));
        }
        return accuracy(outs, targets);
    };

    result.trace = gd_minimize(
        objective, theta0, config.train.eta, config.train.iters,
        [&](int, const Eigen::VectorXd &theta) {
            result.train_accuracy.push_back(
                batch_accuracy(theta, train_states, train_targets));
            result.test_accuracy.push_back(
                batch_accuracy(theta, test_states, test_targets));
        });
    return result;
}

struct BpScanConfig {
    std::vector<int> qubit_counts = {4, 6, 8, 10};
    int samples = 200;
    BlockFamily ansatz = BlockFamily::SUN;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct BpScanRow {
    BlockFamily ansatz;
    int n_qubits = 0;
    double variance = 0.0;
    int samples = 0;
};

/**
 * @brief Sample variance of the first-parameter gradient of <Z_0> over
 * random (theta, Haar input) draws, per qubit count.
 *
 * Layouts: the hardware-efficient family uses the periodic brick-wall
 * (whose generators saturate the full algebra); the block-restricted
 * families use the block-local layout, keeping the dynamical Lie algebra
 * a direct sum of su(4) blocks. Both scale reps = n/2 so circuit depth
 * grows with width. Parameters are uniform on [-pi, pi).
 */
inline std::vector<BpScanRow> bp_scan(const BpScanConfig &config) {
    if (config.samples < 2) {
        throw std::invalid_argument("bp_scan: need at least 2 samples");
    }
    constexpr double kPi = 3.14159265358979323846;
    std::vector<BpScanRow> rows;
    for (std::size_t ni = 0; ni < config.qubit_counts.size(); ++ni) {
        const int n = config.qubit_counts[ni];
        if (n < 2 || n % 2 != 0 || n > kMaxQubits) {
            throw std::invalid_argument("bp_scan: qubit counts must be even and <= 14");
        }
        const int reps = std::max(1, n / 2);
        const CircuitLayout layout =
            config.ansatz == BlockFamily::HardwareEfficient
                ? brickwall_layout(n, reps, BlockSpec{config.ansatz},
                                   Boundary::Periodic)
                : block_local_layout(n, reps, BlockSpec{config.ansatz});
        const ZReadoutCost cost(0);

        std::vector<double> grads(static_cast<std::size_t>(config.samples));
        detail::parallel_for(
            static_cast<std::size_t>(config.samples), config.threads,
            [&](std::size_t s) {
                const std::uint64_t sample_seed = derive_seed(
                    config.seed + 1000003ULL * static_cast<std::uint64_t>(n), s);
                Rng rng(derive_seed(sample_seed, seed_stream::kScanTheta));
                Eigen::VectorXd theta(layout.param_count());
                for (int p = 0; p < theta.size(); ++p) {
                    theta(p) = rng.uniform(-kPi, kPi);
                }
                const StateVector input =
                    haar_state(n, derive_seed(sample_seed, seed_stream::kInput));
                grads[s] = exact_gradient_component(layout, theta, input, cost, 0);
            });

        double mean = 0.0;
        for (double g : grads) {
            mean += g;
        }
        mean /= static_cast<double>(config.samples);
        double var = 0.0;
        for (double g : grads) {
            var += (g - mean) * (g - mean);
        }
        var /= static_cast<double>(config.samples - 1);
        rows.push_back(BpScanRow{config.ansatz, n, var, config.samples});
    }
    return rows;
}

/// Count of 100-iteration windows with a net loss increase; the training
/// contract treats violations as a soft flag, not an error.
inline int count_increasing_windows(const TrainingTrace &trace,
                                    int window = 100) {
    int violations = 0;
    for (std::size_t t = 0; t + static_cast<std::size_t>(window) <
                            trace.records.size();
         t += static_cast<std::size_t>(window)) {
        if (trace.records[t + static_cast<std::size_t>(window)].loss >
            trace.records[t].loss) {
            ++violations;
        }
    }
    return violations;
}

} // namespace sunvqc
