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
 * Flat INI-style key=value run configuration. Command-line flags mirror
 * the keys one-to-one and override file values; unknown keys are
 * rejected.
 */
#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sunvqc/ansatz.hpp"
#include "sunvqc/gradients.hpp"
#include "sunvqc/training.hpp"

namespace sunvqc {

/// Raised for malformed or inconsistent configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Fully resolved run settings shared by all subcommands.
struct RunConfig {
    std::string ansatz = "sun";
    int qubits = 6;
    int reps = 2;
    std::string boundary = "periodic";
    double eta = 0.02;
    int iters = 3000;
    int ensemble = 5;
    std::uint64_t seed = 1;
    double sigma_init = 0.05;
    std::string gradient = "exact";
    std::string input = "haar";
    std::string loss = "mse";
    int epochs = 500;
    int train_samples = 200;
    int test_samples = 200;
    double noise = 0.1;
    int trials = 50;
    int samples = 200;
    std::string scan_qubits = "4,6,8,10";
    int threads = 0; // 0 = hardware concurrency
    int log_every = 0; // 0 = auto: 1 when iters <= 5000, else 10
    std::string out = "runs/out";

    BlockFamily ansatz_family() const { return family_from_name(ansatz); }

    Boundary boundary_kind() const {
        if (boundary == "open") {
            return Boundary::Open;
        }
        if (boundary == "periodic") {
            return Boundary::Periodic;
        }
        throw ConfigError("boundary must be open or periodic, got '" + boundary +
                          "'");
    }

    GradientMethod gradient_method() const {
        if (gradient == "exact") {
            return GradientMethod::exact();
        }
        if (gradient == "shift") {
            return GradientMethod::shift();
        }
        if (gradient.rfind("fd:", 0) == 0) {
            double eps = 0.0;
            try {
                eps = std::stod(gradient.substr(3));
            } catch (const std::exception &) {
                throw ConfigError("bad finite-difference step in '" + gradient + "'");
            }
            if (eps <= 0.0) {
                throw ConfigError("finite-difference step must be > 0");
            }
            return GradientMethod::finite_difference(eps);
        }
        throw ConfigError("gradient must be exact, shift, or fd:<eps>, got '" +
                          gradient + "'");
    }

    LossKind loss_kind() const {
        if (loss == "mse") {
            return LossKind::Mse;
        }
        if (loss == "xent") {
            return LossKind::CrossEntropy;
        }
        throw ConfigError("loss must be mse or xent, got '" + loss + "'");
    }

    int effective_log_every() const {
        if (log_every > 0) {
            return log_every;
        }
        return iters <= 5000 ? 1 : 10;
    }

    std::vector<int> scan_qubit_list() const {
        std::vector<int> out_list;
        std::stringstream ss(scan_qubits);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) {
                continue;
            }
            out_list.push_back(parse_int("scan_qubits", tok));
        }
        if (out_list.empty()) {
            throw ConfigError("scan_qubits is empty");
        }
        return out_list;
    }

    void validate() const {
        if (eta <= 0.0) {
            throw ConfigError("eta must be > 0");
        }
        if (iters < 0) {
            throw ConfigError("iters must be >= 0");
        }
        if (epochs < 0) {
            throw ConfigError("epochs must be >= 0");
        }
        if (ensemble < 1) {
            throw ConfigError("ensemble must be >= 1");
        }
        if (qubits < 2 || qubits > kMaxQubits) {
            throw ConfigError("qubits must be in [2, 14]");
        }
        if (reps < 1) {
            throw ConfigError("reps must be >= 1");
        }
        if (sigma_init < 0.0) {
            throw ConfigError("sigma_init must be >= 0");
        }
        if (noise < 0.0) {
            throw ConfigError("noise must be >= 0");
        }
        if (train_samples <= 0 || train_samples % 2 != 0 ||
            test_samples <= 0 || test_samples % 2 != 0) {
            throw ConfigError("train/test sample counts must be positive and even");
        }
        if (trials < 1) {
            throw ConfigError("trials must be >= 1");
        }
        if (samples < 2) {
            throw ConfigError("samples must be >= 2");
        }
        if (threads < 0) {
            throw ConfigError("threads must be >= 0");
        }
        if (log_every < 0) {
            throw ConfigError("log_every must be >= 0");
        }
        ansatz_family();
        boundary_kind();
        gradient_method();
        loss_kind();
        if (input != "haar" && input.rfind("weak:", 0) != 0) {
            throw ConfigError("input must be haar or weak:<eps>, got '" + input +
                              "'");
        }
        input_spec();
    }

    InputSpec input_spec() const {
        if (input == "haar") {
            return InputSpec::haar();
        }
        double eps = 0.0;
        try {
            eps = std::stod(input.substr(5));
        } catch (const std::exception &) {
            throw ConfigError("bad epsilon in '" + input + "'");
        }
        if (eps < 0.0 || eps > 0.5) {
            throw ConfigError("weak-entanglement eps must be in [0, 0.5]");
        }
        return InputSpec::weak(eps);
    }

    static int parse_int(const std::string &key, const std::string &value) {
        try {
            std::size_t pos = 0;
            const int parsed = std::stoi(value, &pos);
            if (pos != value.size()) {
                throw std::invalid_argument("trailing characters");
            }
            return parsed;
        } catch (const std::exception &) {
            throw ConfigError("key '" + key + "': expected integer, got '" +
                              value + "'");
        }
    }

    static double parse_real(const std::string &key, const std::string &value) {
        try {
            std::size_t pos = 0;
            const double parsed = std::stod(value, &pos);
            if (pos != value.size()) {
                throw std::invalid_argument("trailing characters");
            }
            return parsed;
        } catch (const std::exception &) {
            throw ConfigError("key '" + key + "': expected real, got '" + value +
                              "'");
        }
    }

    static std::uint64_t parse_seed(const std::string &key,
                                    const std::string &value) {
        try {
            std::size_t pos = 0;
            const std::uint64_t parsed = std::stoull(value, &pos);
            if (pos != value.size()) {
                throw std::invalid_argument("trailing characters");
            }
            return parsed;
        } catch (const std::exception &) {
            throw ConfigError("key '" + key + "': expected unsigned integer, got '" +
                              value + "'");
        }
    }

    /// Applies one key=value assignment; unknown keys are an error.
    void set(const std::string &key, const std::string &value) {
        if (key == "ansatz") {
            ansatz = value;
        } else if (key == "qubits") {
            qubits = parse_int(key, value);
        } else if (key == "reps") {
            reps = parse_int(key, value);
        } else if (key == "boundary") {
            boundary = value;
        } else if (key == "eta") {
            eta = parse_real(key, value);
        } else if (key == "iters") {
            iters = parse_int(key, value);
        } else if (key == "ensemble") {
            ensemble = parse_int(key, value);
        } else if (key == "seed") {
            seed = parse_seed(key, value);
        } else if (key == "sigma_init") {
            sigma_init = parse_real(key, value);
        } else if (key == "gradient") {
            gradient = value;
        } else if (key == "input") {
            input = value;
        } else if (key == "loss") {
            loss = value;
        } else if (key == "epochs") {
            epochs = parse_int(key, value);
        } else if (key == "train_samples") {
            train_samples = parse_int(key, value);
        } else if (key == "test_samples") {
            test_samples = parse_int(key, value);
        } else if (key == "noise") {
            noise = parse_real(key, value);
        } else if (key == "trials") {
            trials = parse_int(key, value);
        } else if (key == "samples") {
            samples = parse_int(key, value);
        } else if (key == "scan_qubits") {
            scan_qubits = value;
        } else if (key == "threads") {
            threads = parse_int(key, value);
        } else if (key == "log_every") {
            log_every = parse_int(key, value);
        } else if (key == "out") {
            out = value;
        } else {
            throw ConfigError("unknown config key: '" + key + "'");
        }
    }

    /// All keys with their resolved values, for manifests.
    std::map<std::string, std::string> resolved() const {
        std::map<std::string, std::string> kv;
        kv["ansatz"] = ansatz;
        kv["qubits"] = std::to_string(qubits);
        kv["reps"] = std::to_string(reps);
        kv["boundary"] = boundary;
        kv["eta"] = format_real_compat(eta);
        kv["iters"] = std::to_string(iters);
        kv["ensemble"] = std::to_string(ensemble);
        kv["seed"] = std::to_string(seed);
        kv["sigma_init"] = format_real_compat(sigma_init);
        kv["gradient"] = gradient;
        kv["input"] = input;
        kv["loss"] = loss;
        kv["epochs"] = std::to_string(epochs);
        kv["train_samples"] = std::to_string(train_samples);
        kv["test_samples"] = std::to_string(test_samples);
        kv["noise"] = format_real_compat(noise);
        kv["trials"] = std::to_string(trials);
        kv["samples"] = std::to_string(samples);
        kv["scan_qubits"] = scan_qubits;
        kv["threads"] = std::to_string(threads);
        kv["log_every"] = std::to_string(log_every);
        kv["out"] = out;
        return kv;
    }

  private:
    static std::string format_real_compat(double v) {
        std::ostringstream ss;
        ss.imbue(std::locale::classic());
        ss << v;
        return ss.str();
    }
};

/**
 * @brief Parses a key=value file into `config`. Lines starting with '#'
 * or ';' and blank lines are ignored; whitespace around keys and values
 * is trimmed.
 */
inline void parse_config_file(const std::string &path, RunConfig &config) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file: " + path);
    }
    std::string line;
    int line_no = 0;
    auto trim = [](std::string s) {
        const auto first = s.find_first_not_of(" \t\r");
        const auto last = s.find_last_not_of(" \t\r");
        if (first == std::string::npos) {
            return std::string();
        }
        return s.substr(first, last - first + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#' || trimmed[0] == ';') {
            continue;
        }
        const auto eq = trimmed.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected key=value");
        }
        const std::string key = trim(trimmed.substr(0, eq));
        const std::string value = trim(trimmed.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": empty key");
        }
        config.set(key, value);
    }
}

} // namespace sunvqc
