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
// Command-line front end: autoencode, classify, bp-scan, grad-check and
// dla-dim subcommands, config resolution, CSV and manifest emission.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sunvqc/sunvqc.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sunvqc;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct ManifestWriter {
    fs::path path;
    RunConfig config;
    std::string command;
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();

    void write(const std::string &status,
               const std::vector<std::string> &outputs) const {
        std::ofstream out(path, std::ios::binary);
        out << "command=" << command << '\n';
        out << "version=" << kVersion << '\n';
        out << "status=" << status << '\n';
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        out << "wall_clock_s=" << format_real(wall) << '\n';
        std::string joined;
        for (const auto &o : outputs) {
            if (!joined.empty()) {
                joined += ',';
            }
            joined += o;
        }
        out << "outputs=" << joined << '\n';
        for (const auto &[key, value] : config.resolved()) {
            out << key << '=' << value << '\n';
        }
    }
};

void write_dataset_csv(const fs::path &path,
                       const std::vector<LabeledSample> &samples) {
    CsvWriter csv(path.string());
    csv.header({"x1", "x2", "label"});
    for (const auto &s : samples) {
        csv.field(s.x1);
        csv.field(s.x2);
        csv.field(s.label);
        csv.end_row();
    }
}

int run_autoencode(const RunConfig &config) {
    if (config.qubits != 6) {
        throw ConfigError("autoencode: qubits must be 6");
    }
    const fs::path out_dir(config.out);
    fs::create_directories(out_dir / "runs");
    ManifestWriter manifest{out_dir / "manifest.ini", config, "autoencode"};
    manifest.write("running", {});

    TrainConfig train;
    train.eta = config.eta;
    train.iters = config.iters;
    train.gradient = config.gradient_method();
    train.seed = config.seed;
    train.ansatz = config.ansatz_family();
    train.n_qubits = config.qubits;
    train.reps = config.reps;
    train.boundary = config.boundary_kind();
    train.sigma_init = config.sigma_init;
    train.threads = config.threads;

    const EnsembleStats stats =
        ensemble_autoencode(train, config.ensemble, config.input_spec());

    std::vector<std::string> outputs;
    const int stride = config.effective_log_every();
    {
        CsvWriter csv((out_dir / "curve.csv").string());
        csv.header({"iter", "mean_loss", "std_loss", "schmidt_bound"});
        const auto points = stats.runs.front().records.size();
        for (std::size_t t = 0; t < points; ++t) {
            const int iter = stats.runs.front().records[t].iter;
            if (iter % stride != 0 && t + 1 != points) {
                continue;
            }
            csv.field(iter);
            csv.field(stats.mean_curve(static_cast<Eigen::Index>(t)));
            csv.field(stats.std_curve(static_cast<Eigen::Index>(t)));
            csv.field(stats.mean_schmidt_bound);
            csv.end_row();
        }
        outputs.push_back("curve.csv");
    }
    for (std::size_t r = 0; r < stats.runs.size(); ++r) {
        const fs::path run_path =
            out_dir / "runs" / (std::to_string(r) + ".csv");
        CsvWriter csv(run_path.string());
        csv.header({"iter", "loss", "grad_inf_norm"});
        const auto &records = stats.runs[r].records;
        for (std::size_t t = 0; t < records.size(); ++t) {
            if (records[t].iter % stride != 0 && t + 1 != records.size()) {
                continue;
            }
            csv.field(records[t].iter);
            csv.field(records[t].loss);
            csv.field(records[t].grad_inf_norm);
            csv.end_row();
        }
        outputs.push_back("runs/" + std::to_string(r) + ".csv");
    }
    manifest.write("ok", outputs);

    const double final_mean = stats.mean_curve(stats.mean_curve.size() - 1);
    std::cout << "autoencode: ansatz=" << config.ansatz
              << " final_mean_infidelity=" << format_real(final_mean)
              << " mean_schmidt_bound="
              << format_real(stats.mean_schmidt_bound) << '\n';
    return kExitOk;
}

int run_classify(const RunConfig &config) {
    if (config.qubits != 4) {
        throw ConfigError("classify: qubits must be 4");
    }
    const fs::path out_dir(config.out);
    fs::create_directories(out_dir);
    ManifestWriter manifest{out_dir / "manifest.ini", config, "classify"};
    manifest.write("running", {});

    ClassifierConfig cc;
    cc.train.eta = config.eta;
    cc.train.iters = config.epochs;
    cc.train.gradient = config.gradient_method();
    cc.train.seed = config.seed;
    cc.train.ansatz = config.ansatz_family();
    cc.train.n_qubits = config.qubits;
    cc.train.reps = config.reps;
    cc.train.boundary = config.boundary_kind();
    cc.train.sigma_init = config.sigma_init;
    cc.train.threads = config.threads;
    cc.train_samples = config.train_samples;
    cc.test_samples = config.test_samples;
    cc.noise = config.noise;
    cc.loss = config.loss_kind();

    const ClassifierResult result = train_classifier(cc);

    write_dataset_csv(out_dir / "dataset.csv", result.train_set);
    write_dataset_csv(out_dir / "dataset_test.csv", result.test_set);
    {
        CsvWriter csv((out_dir / "classifier.csv").string());
        csv.header({"epoch", "train_acc", "test_acc", "loss"});
        for (std::size_t t = 0; t < result.trace.records.size(); ++t) {
            csv.field(result.trace.records[t].iter);
            csv.field(result.train_accuracy[t]);
            csv.field(result.test_accuracy[t]);
            csv.field(result.trace.records[t].loss);
            csv.end_row();
        }
    }
    manifest.write("ok", {"classifier.csv", "dataset.csv", "dataset_test.csv"});

    std::cout << "classify: ansatz=" << config.ansatz << " final_train_acc="
              << format_real(result.train_accuracy.back())
              << " final_test_acc="
              << format_real(result.test_accuracy.back()) << '\n';
    return kExitOk;
}

int run_bp_scan(const RunConfig &config) {
    const fs::path out_dir(config.out);
    fs::create_directories(out_dir);
    ManifestWriter manifest{out_dir / "manifest.ini", config, "bp-scan"};
    manifest.write("running", {});

    BpScanConfig sc;
    sc.qubit_counts = config.scan_qubit_list();
    sc.samples = config.samples;
    sc.ansatz = config.ansatz_family();
    sc.seed = config.seed;
    sc.threads = config.threads;
    const auto rows = bp_scan(sc);

    {
        CsvWriter csv((out_dir / "bpscan.csv").string());
        csv.header({"ansatz", "n", "variance", "samples"});
        for (const auto &row : rows) {
            csv.field(family_name(row.ansatz));
            csv.field(row.n_qubits);
            csv.field(row.variance);
            csv.field(row.samples);
            csv.end_row();
        }
    }
    manifest.write("ok", {"bpscan.csv"});
    for (const auto &row : rows) {
        std::cout << "bp-scan: ansatz=" << family_name(row.ansatz)
                  << " n=" << row.n_qubits
                  << " variance=" << format_real(row.variance) << '\n';
    }
    return kExitOk;
}

int run_grad_check(const RunConfig &config) {
    const BlockFamily family = config.ansatz_family();
    const CircuitLayout layout =
        brickwall_layout(config.qubits, config.reps, BlockSpec{family},
                         config.boundary_kind());
    const TrashInfidelityCost trash_cost;
    const ZReadoutCost z_cost(0);
    const ExpectationCost &cost =
        config.qubits == 6
            ? static_cast<const ExpectationCost &>(trash_cost)
            : static_cast<const ExpectationCost &>(z_cost);
    const CostFn cost_fn = [&cost](const StateVector &s) {
        return cost.value(s);
    };

    constexpr double kPi = 3.14159265358979323846;
    double max_diff = 0.0;
    for (int trial = 0; trial < config.trials; ++trial) {
        const std::uint64_t trial_seed = config.seed + static_cast<std::uint64_t>(trial);
        Rng rng(derive_seed(trial_seed, seed_stream::kScanTheta));
        Eigen::VectorXd theta(layout.param_count());
        for (int p = 0; p < theta.size(); ++p) {
            theta(p) = rng.uniform(-kPi, kPi);
        }
        const StateVector input = haar_state(
            config.qubits, derive_seed(trial_seed, seed_stream::kInput));
        const Eigen::VectorXd exact = exact_gradient(layout, theta, input, cost);
        const Eigen::VectorXd shift = shift_gradient(layout, theta, input, cost_fn);
        max_diff = std::max(max_diff, (exact - shift).lpNorm<Eigen::Infinity>());
    }
    std::cout << "grad-check: ansatz=" << config.ansatz
              << " trials=" << config.trials
              << " max|shift-exact|=" << format_real(max_diff) << '\n';
    return max_diff < 1e-8 ? kExitOk : kExitRuntime;
}

int run_dla_dim(const std::string &generators) {
    std::vector<PauliWord> words;
    std::stringstream ss(generators);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        const auto first = tok.find_first_not_of(" \t");
        const auto last = tok.find_last_not_of(" \t");
        if (first == std::string::npos) {
            continue;
        }
        words.emplace_back(tok.substr(first, last - first + 1));
    }
    if (words.empty()) {
        throw ConfigError("dla-dim: no generators given");
    }
    std::cout << lie_closure_dim(words) << '\n';
    return kExitOk;
}

void add_common_flags(CLI::App *cmd, RunConfig &config,
                      std::string &config_path) {
    cmd->add_option("--config", config_path, "key=value config file");
    cmd->add_option("--ansatz", config.ansatz, "sun|cartan|pauli|he");
    cmd->add_option("--qubits", config.qubits, "register width");
    cmd->add_option("--reps", config.reps, "brick-wall repetitions");
    cmd->add_option("--boundary", config.boundary, "open|periodic");
    cmd->add_option("--eta", config.eta, "learning rate");
    cmd->add_option("--iters", config.iters, "gradient-descent iterations");
    cmd->add_option("--ensemble", config.ensemble, "number of ensemble runs");
    cmd->add_option("--seed", config.seed, "base seed");
    cmd->add_option("--sigma-init", config.sigma_init,
                    "parameter init std deviation");
    cmd->add_option("--gradient", config.gradient, "exact|shift|fd:<eps>");
    cmd->add_option("--input", config.input, "haar|weak:<eps>");
    cmd->add_option("--loss", config.loss, "mse|xent");
    cmd->add_option("--epochs", config.epochs, "classifier epochs");
    cmd->add_option("--train-samples", config.train_samples,
                    "two-moons training samples");
    cmd->add_option("--test-samples", config.test_samples,
                    "two-moons test samples");
    cmd->add_option("--noise", config.noise, "two-moons noise sigma");
    cmd->add_option("--trials", config.trials, "grad-check trials");
    cmd->add_option("--samples", config.samples, "bp-scan samples per size");
    cmd->add_option("--scan-qubits", config.scan_qubits,
                    "bp-scan comma-separated qubit counts");
    cmd->add_option("--threads", config.threads,
                    "worker cap (0 = hardware concurrency)");
    cmd->add_option("--log-every", config.log_every,
                    "CSV row stride (0 = auto)");
    cmd->add_option("--out", config.out, "output directory");
}

RunConfig resolve_config(CLI::App *cmd, const RunConfig &flag_config,
                         const std::string &config_path) {
    if (config_path.empty()) {
        return flag_config;
    }
    RunConfig resolved;
    parse_config_file(config_path, resolved);
    // flags override file values
    auto restore = [&](const char *flag, auto member) {
        if (cmd->count(flag) > 0) {
            resolved.*member = flag_config.*member;
        }
    };
    restore("--ansatz", &RunConfig::ansatz);
    restore("--qubits", &RunConfig::qubits);
    restore("--reps", &RunConfig::reps);
    restore("--boundary", &RunConfig::boundary);
    restore("--eta", &RunConfig::eta);
    restore("--iters", &RunConfig::iters);
    restore("--ensemble", &RunConfig::ensemble);
    restore("--seed", &RunConfig::seed);
    restore("--sigma-init", &RunConfig::sigma_init);
    restore("--gradient", &RunConfig::gradient);
    restore("--input", &RunConfig::input);
    restore("--loss", &RunConfig::loss);
    restore("--epochs", &RunConfig::epochs);
    restore("--train-samples", &RunConfig::train_samples);
    restore("--test-samples", &RunConfig::test_samples);
    restore("--noise", &RunConfig::noise);
    restore("--trials", &RunConfig::trials);
    restore("--samples", &RunConfig::samples);
    restore("--scan-qubits", &RunConfig::scan_qubits);
    restore("--threads", &RunConfig::threads);
    restore("--log-every", &RunConfig::log_every);
    restore("--out", &RunConfig::out);
    return resolved;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"sunvqc: symmetry-restricted variational-circuit simulator"};
    app.require_subcommand(1);

    RunConfig config;
    if (const char *env_threads = std::getenv("SUNVQC_THREADS")) {
        try {
            config.threads = RunConfig::parse_int("SUNVQC_THREADS", env_threads);
        } catch (const ConfigError &e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitConfig;
        }
    }
    std::string config_path;
    std::string generators;

    CLI::App *autoencode =
        app.add_subcommand("autoencode", "train the 6-qubit autoencoder ensemble");
    add_common_flags(autoencode, config, config_path);
    CLI::App *classify =
        app.add_subcommand("classify", "train the 4-qubit two-moons classifier");
    add_common_flags(classify, config, config_path);
    CLI::App *bpscan =
        app.add_subcommand("bp-scan", "gradient-variance scan over qubit counts");
    add_common_flags(bpscan, config, config_path);
    CLI::App *gradcheck = app.add_subcommand(
        "grad-check", "compare shift-rule and exact gradients");
    add_common_flags(gradcheck, config, config_path);
    CLI::App *dladim =
        app.add_subcommand("dla-dim", "Lie-closure dimension of a generator set");
    dladim->add_option("--generators", generators,
                       "comma-separated Pauli words, e.g. XI,IX,ZZ")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        CLI::App *active = app.get_subcommands().front();
        if (active == dladim) {
            return run_dla_dim(generators);
        }
        const RunConfig resolved = resolve_config(active, config, config_path);
        resolved.validate();
        if (active == autoencode) {
            return run_autoencode(resolved);
        }
        if (active == classify) {
            return run_classify(resolved);
        }
        if (active == bpscan) {
            return run_bp_scan(resolved);
        }
        return run_grad_check(resolved);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
