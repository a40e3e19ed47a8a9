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
//
// Acceptance suite: every release-gating check as one pass/fail line.
// Run all criteria (default) or a single one with --criterion N.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sunvqc/sunvqc.hpp"

namespace {

using namespace sunvqc;
namespace fs = std::filesystem;

constexpr double kPi = 3.14159265358979323846;

int g_threads = 0; // 0 = hardware concurrency

Eigen::VectorXd uniform_theta(const CircuitLayout &layout, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::VectorXd theta(layout.param_count());
    for (int p = 0; p < theta.size(); ++p) {
        theta(p) = rng.uniform(-kPi, kPi);
    }
    return theta;
}

// --- criterion 1: shift rule vs exact adjoint vs finite differences ----

bool criterion_gradients(std::string &detail) {
    const int instances = 200;
    double max_shift_err = 0.0;
    double max_fd_err = 0.0;
    const TrashInfidelityCost cost;
    for (const auto family : {BlockFamily::SUN, BlockFamily::Cartan,
                              BlockFamily::PauliProduct,
                              BlockFamily::HardwareEfficient}) {
        const CircuitLayout layout =
            brickwall_layout(6, 1, BlockSpec{family}, Boundary::Open);
        std::vector<double> shift_err(instances), fd_err(instances);
        detail::parallel_for(
            instances, g_threads, [&](std::size_t inst) {
                const std::uint64_t base =
                    10'000 * (static_cast<std::uint64_t>(family) + 1) + inst;
                const StateVector input =
                    haar_state(6, derive_seed(base, seed_stream::kInput));
                const Eigen::VectorXd theta = uniform_theta(
                    layout, derive_seed(base, seed_stream::kScanTheta));
                const Eigen::VectorXd exact =
                    exact_gradient(layout, theta, input, cost);
                const Eigen::VectorXd shift = shift_gradient(
                    layout, theta, input,
                    [&](const StateVector &s) { return cost.value(s); });
                const Eigen::VectorXd fd = finite_difference(
                    layout, theta, input,
                    [&](const StateVector &s) { return cost.value(s); }, 1e-5);
                shift_err[inst] = (shift - exact).lpNorm<Eigen::Infinity>();
                fd_err[inst] = (exact - fd).lpNorm<Eigen::Infinity>();
            });
        max_shift_err = std::max(
            max_shift_err, *std::max_element(shift_err.begin(), shift_err.end()));
        max_fd_err = std::max(
            max_fd_err, *std::max_element(fd_err.begin(), fd_err.end()));
    }
    std::ostringstream ss;
    ss << "max|shift-exact|=" << format_real(max_shift_err)
       << " (<1e-8), max|exact-fd|=" << format_real(max_fd_err) << " (<1e-6)";
    detail = ss.str();
    return max_shift_err < 1e-8 && max_fd_err < 1e-6;
}

// --- criterion 2: unitarity and norm preservation ----------------------

bool criterion_unitarity(std::string &detail) {
    double worst_unitarity = 0.0;
    double worst_norm_drift = 0.0;
    for (const auto family : {BlockFamily::SUN, BlockFamily::Cartan,
                              BlockFamily::PauliProduct,
                              BlockFamily::HardwareEfficient}) {
        const BlockSpec spec{family};
        Rng rng(31 + static_cast<std::uint64_t>(family));
        for (int draw = 0; draw < 1000; ++draw) {
            Eigen::VectorXd params(spec.param_count());
            for (int p = 0; p < params.size(); ++p) {
                params(p) = rng.uniform(-kPi, kPi);
            }
            const Eigen::Matrix4cd w = block_unitary(spec, params);
            worst_unitarity = std::max(
                worst_unitarity,
                (w.adjoint() * w - Eigen::Matrix4cd::Identity()).norm());
        }
        // circuit application preserves the norm
        const CircuitLayout layout =
            brickwall_layout(6, 2, spec, Boundary::Periodic);
        for (std::uint64_t rep = 0; rep < 20; ++rep) {
            const StateVector input = haar_state(6, 400 + rep);
            const StateVector out = circuit_state(
                layout, uniform_theta(layout, 500 + rep), input);
            worst_norm_drift =
                std::max(worst_norm_drift, std::abs(out.norm() - 1.0));
        }
    }
    std::ostringstream ss;
    ss << "max||W'W-I||=" << format_real(worst_unitarity)
       << " (<1e-10), max|norm-1|=" << format_real(worst_norm_drift)
       << " (<1e-12)";
    detail = ss.str();
    return worst_unitarity < 1e-10 && worst_norm_drift < 1e-12;
}

// --- criterion 3: DLA dimensions ---------------------------------------

bool criterion_dla(std::string &detail) {
    const int su4 = lie_closure_dim(su_basis(2).words());

    const std::vector<PauliWord> he2 = {PauliWord("XI"), PauliWord("IX"),
                                        PauliWord("ZI"), PauliWord("IZ"),
                                        PauliWord("ZZ")};
    const std::vector<PauliWord> he3 = {
        PauliWord("XII"), PauliWord("IXI"), PauliWord("IIX"),
        PauliWord("ZII"), PauliWord("IZI"), PauliWord("IIZ"),
        PauliWord("ZZI"), PauliWord("IZZ")};
    const int dim2 = lie_closure_dim(he2);
    const int dim3 = lie_closure_dim(he3);

    // dense brute-force oracle over matrices
    auto dense_dim = [](const std::vector<PauliWord> &words) {
        std::vector<Eigen::MatrixXcd> mats;
        std::vector<Eigen::VectorXd> basis;
        auto flatten = [](const Eigen::MatrixXcd &m) {
            Eigen::VectorXd v(2 * m.size());
            Eigen::Index idx = 0;
            for (Eigen::Index r = 0; r < m.rows(); ++r) {
                for (Eigen::Index c = 0; c < m.cols(); ++c) {
                    v(idx++) = m(r, c).real();
                    v(idx++) = m(r, c).imag();
                }
            }
            return v;
        };
        auto try_add = [&](const Eigen::MatrixXcd &m) {
            Eigen::VectorXd v = flatten(m);
            for (const auto &b : basis) {
                v -= b.dot(v) * b;
            }
            if (v.norm() < 1e-9) {
                return false;
            }
            v.normalize();
            basis.push_back(v);
            mats.push_back(m);
            return true;
        };
        for (const auto &w : words) {
            try_add(cxd(0, 1) * pauli_matrix(w));
        }
        bool grew = true;
        while (grew) {
            grew = false;
            const std::size_t count = mats.size();
            for (std::size_t a = 0; a < count; ++a) {
                for (std::size_t b = a + 1; b < count; ++b) {
                    const Eigen::MatrixXcd comm =
                        mats[a] * mats[b] - mats[b] * mats[a];
                    if (comm.cwiseAbs().maxCoeff() > 1e-12 && try_add(comm)) {
                        grew = true;
                    }
                }
            }
        }
        return static_cast<int>(mats.size());
    };
    const int oracle2 = dense_dim(he2);
    const int oracle3 = dense_dim(he3);

    std::ostringstream ss;
    ss << "su(4)=" << su4 << " (=15), HE n=2: " << dim2 << "/oracle " << oracle2
       << " (=15), HE n=3: " << dim3 << "/oracle " << oracle3 << " (=63)";
    detail = ss.str();
    return su4 == 15 && dim2 == 15 && oracle2 == 15 && dim3 == 63 &&
           oracle3 == 63;
}

// --- criterion 4 / 9: the scaled learning-curve benchmark --------------

struct AutoencodeOutcome {
    double final_mean = 0.0;
    double mean_bound = 0.0;
};

AutoencodeOutcome run_autoencode_benchmark(BlockFamily family,
                                           const fs::path &out_dir) {
    TrainConfig config;
    config.eta = 0.02;
    config.iters = 3000;
    config.seed = 1; // runs use seeds 1..5
    config.ansatz = family;
    config.n_qubits = 6;
    config.reps = 2;
    config.boundary = Boundary::Periodic;
    config.sigma_init = 0.05;
    config.threads = g_threads;
    const EnsembleStats stats = ensemble_autoencode(config, 5, InputSpec::haar());

    fs::create_directories(out_dir);
    CsvWriter csv((out_dir / ("curve_" + family_name(family) + ".csv")).string());
    csv.header({"iter", "mean_loss", "std_loss", "schmidt_bound"});
    for (Eigen::Index t = 0; t < stats.mean_curve.size(); ++t) {
        csv.field(static_cast<int>(t));
        csv.field(stats.mean_curve(t));
        csv.field(stats.std_curve(t));
        csv.field(stats.mean_schmidt_bound);
        csv.end_row();
    }
    return AutoencodeOutcome{stats.mean_curve(stats.mean_curve.size() - 1),
                             stats.mean_schmidt_bound};
}

bool criterion_autoencoder_ordering(std::string &detail) {
    const fs::path out_dir = fs::temp_directory_path() / "sunvqc_acceptance_c4";
    const AutoencodeOutcome sun =
        run_autoencode_benchmark(BlockFamily::SUN, out_dir);
    const AutoencodeOutcome cartan =
        run_autoencode_benchmark(BlockFamily::Cartan, out_dir);
    const AutoencodeOutcome pauli =
        run_autoencode_benchmark(BlockFamily::PauliProduct, out_dir);
    const AutoencodeOutcome he =
        run_autoencode_benchmark(BlockFamily::HardwareEfficient, out_dir);

    const bool ordered = sun.final_mean < cartan.final_mean &&
                         cartan.final_mean < pauli.final_mean &&
                         pauli.final_mean < he.final_mean;
    const double ratio = he.final_mean / sun.final_mean;
    std::ostringstream ss;
    ss << "final mean L: sun=" << format_real(sun.final_mean)
       << " cartan=" << format_real(cartan.final_mean)
       << " pauli=" << format_real(pauli.final_mean)
       << " he=" << format_real(he.final_mean)
       << "; he/sun=" << format_real(ratio) << " (>=10)";
    detail = ss.str();
    return ordered && ratio >= 10.0;
}

// --- criterion 5: weak-entanglement threshold run ----------------------

bool criterion_threshold(std::string &detail) {
    TrainConfig config;
    config.eta = 0.02;
    config.iters = 5000;
    config.seed = 1;
    config.ansatz = BlockFamily::SUN;
    config.n_qubits = 6;
    config.reps = 2;
    config.boundary = Boundary::Periodic;
    config.sigma_init = 0.05;
    config.threads = g_threads;
    const EnsembleStats stats =
        ensemble_autoencode(config, 5, InputSpec::weak(0.01));
    const double final_mean = stats.mean_curve(stats.mean_curve.size() - 1);
    std::ostringstream ss;
    ss << "mean L(T=5000)=" << format_real(final_mean)
       << " (<=0.02), mean bound=" << format_real(stats.mean_schmidt_bound);
    detail = ss.str();
    return final_mean <= 2e-2;
}

// --- criterion 6: two-moons classifier ---------------------------------

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return 0.5 * (values[mid - 1] + values[mid]);
}

bool criterion_classifier(std::string &detail) {
    auto run_family = [&](BlockFamily family) {
        std::vector<double> final_test(5);
        detail::parallel_for(5, g_threads, [&](std::size_t s) {
            ClassifierConfig config;
            config.train.eta = 0.05;
            config.train.iters = 500;
            config.train.seed = 1 + s;
            config.train.ansatz = family;
            config.train.n_qubits = 4;
            config.train.reps = 2;
            config.train.boundary = Boundary::Open;
            config.train.sigma_init = 0.05;
            config.train_samples = 200;
            config.test_samples = 200;
            config.noise = 0.1;
            const ClassifierResult result = train_classifier(config);
            final_test[s] = result.test_accuracy.back();
        });
        return final_test;
    };
    const double sun_median = median(run_family(BlockFamily::SUN));
    const double he_median = median(run_family(BlockFamily::HardwareEfficient));
    std::ostringstream ss;
    ss << "median test acc: sun=" << format_real(sun_median)
       << " (>=0.95), he=" << format_real(he_median)
       << "; sun >= he - 0.01: " << (sun_median >= he_median - 0.01);
    detail = ss.str();
    return sun_median >= 0.95 && sun_median >= he_median - 0.01;
}

// --- criterion 7: barren-plateau slope separation -----------------------

double fit_slope(const std::vector<BpScanRow> &rows) {
    // least squares of log10(var) against n
    const double count = static_cast<double>(rows.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto &row : rows) {
        const double x = row.n_qubits;
        const double y = std::log10(row.variance);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}

bool criterion_bp_scan(std::string &detail) {
    BpScanConfig config;
    config.qubit_counts = {4, 6, 8, 10};
    config.samples = 200;
    config.seed = 1;
    config.threads = g_threads;

    config.ansatz = BlockFamily::SUN;
    const double sun_slope = fit_slope(bp_scan(config));
    config.ansatz = BlockFamily::HardwareEfficient;
    const double he_slope = fit_slope(bp_scan(config));

    std::ostringstream ss;
    ss << "log10-variance slope per qubit: sun=" << format_real(sun_slope)
       << " (>=-0.15), he=" << format_real(he_slope)
       << " (<=-0.35), |he|>=2|sun|: "
       << (std::abs(he_slope) >= 2.0 * std::abs(sun_slope));
    detail = ss.str();
    return he_slope <= -0.35 && sun_slope >= -0.15 &&
           std::abs(he_slope) >= 2.0 * std::abs(sun_slope);
}

// --- criterion 8: Schmidt-bound oracle ----------------------------------

bool criterion_schmidt_oracle(std::string &detail) {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
        const StateVector psi = haar_state(6, 7000 + seed);
        const DensityMatrix rho = partial_trace_keep(psi, {0, 1, 2});
        Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho);
        const double via_rho = 1.0 - es.eigenvalues().maxCoeff();
        worst = std::max(worst, std::abs(schmidt_bound(psi) - via_rho));
    }
    Eigen::VectorXcd ghz = Eigen::VectorXcd::Zero(64);
    ghz(0) = ghz(63) = 1.0 / std::sqrt(2.0);
    const double ghz_bound = schmidt_bound(StateVector(6, ghz));
    Eigen::VectorXcd maxent = Eigen::VectorXcd::Zero(64);
    for (int j = 0; j < 8; ++j) {
        maxent(8 * j + j) = 1.0 / std::sqrt(8.0);
    }
    const double maxent_bound = schmidt_bound(StateVector(6, maxent));

    std::ostringstream ss;
    ss << "max|bound - (1-max eig)|=" << format_real(worst)
       << " (<1e-10), GHZ=" << format_real(ghz_bound)
       << " (=0.5), maxent=" << format_real(maxent_bound) << " (=0.875)";
    detail = ss.str();
    return worst < 1e-10 && std::abs(ghz_bound - 0.5) < 1e-12 &&
           std::abs(maxent_bound - 0.875) < 1e-12;
}

// --- criterion 9: byte-identical reproducibility ------------------------

bool criterion_reproducibility(std::string &detail) {
    // the criterion-4 configuration, run twice into CSV bytes
    auto run_once = [&](const fs::path &dir) {
        TrainConfig config;
        config.eta = 0.02;
        config.iters = 3000;
        config.seed = 1;
        config.ansatz = BlockFamily::SUN;
        config.n_qubits = 6;
        config.reps = 2;
        config.boundary = Boundary::Periodic;
        config.sigma_init = 0.05;
        config.threads = g_threads;
        const EnsembleStats stats =
            ensemble_autoencode(config, 5, InputSpec::haar());
        fs::create_directories(dir);
        CsvWriter csv((dir / "curve.csv").string());
        csv.header({"iter", "mean_loss", "std_loss", "schmidt_bound"});
        for (Eigen::Index t = 0; t < stats.mean_curve.size(); ++t) {
            csv.field(static_cast<int>(t));
            csv.field(stats.mean_curve(t));
            csv.field(stats.std_curve(t));
            csv.field(stats.mean_schmidt_bound);
            csv.end_row();
        }
    };
    const fs::path base = fs::temp_directory_path() / "sunvqc_acceptance_c9";
    run_once(base / "a");
    run_once(base / "b");
    auto slurp = [](const fs::path &p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string first = slurp(base / "a" / "curve.csv");
    const std::string second = slurp(base / "b" / "curve.csv");
    std::ostringstream ss;
    ss << "curve.csv bytes: " << first.size() << " vs " << second.size()
       << ", identical: " << (first == second && !first.empty());
    detail = ss.str();
    return !first.empty() && first == second;
}

struct Criterion {
    int number;
    const char *name;
    std::function<bool(std::string &)> run;
};

} // namespace

int main(int argc, char **argv) {
    int only = 0;
    for (int a = 1; a < argc; ++a) {
        if (std::strcmp(argv[a], "--criterion") == 0 && a + 1 < argc) {
            only = std::atoi(argv[a + 1]);
            ++a;
        } else if (std::strcmp(argv[a], "--threads") == 0 && a + 1 < argc) {
            g_threads = std::atoi(argv[a + 1]);
            ++a;
        } else {
            std::cerr << "usage: sunvqc_acceptance [--criterion N] [--threads T]\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria = {
        {1, "gradient correctness across families", criterion_gradients},
        {2, "unitarity and norm preservation", criterion_unitarity},
        {3, "DLA dimensions vs brute force", criterion_dla},
        {4, "autoencoder ordering and ratio", criterion_autoencoder_ordering},
        {5, "weak-entanglement threshold run", criterion_threshold},
        {6, "two-moons classifier accuracy", criterion_classifier},
        {7, "barren-plateau slope separation", criterion_bp_scan},
        {8, "Schmidt-bound oracle agreement", criterion_schmidt_oracle},
        {9, "byte-identical reproducibility", criterion_reproducibility},
    };

    bool all_ok = true;
    for (const auto &criterion : criteria) {
        if (only != 0 && criterion.number != only) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = criterion.run(detail);
        } catch (const std::exception &e) {
            detail = std::string("exception: ") + e.what();
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion "
                  << criterion.number << " (" << criterion.name << "): "
                  << detail << " [" << static_cast<int>(seconds) << "s]"
                  << std::endl;
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
