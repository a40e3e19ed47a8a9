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
 * Pauli-word basis of su(2^k): dense matrices, Hilbert-Schmidt
 * decomposition, and Lie-closure dimension over the symplectic
 * representation.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sunvqc/linalg.hpp"

namespace sunvqc {

/**
 * @brief Length-k string over {I, X, Y, Z}.
 *
 * Canonical ordering of words is lexicographic with I < X < Y < Z, which
 * plain string comparison already provides.
 */
class PauliWord {
  public:
    explicit PauliWord(std::string letters) : letters_(std::move(letters)) {
        if (letters_.empty()) {
            throw std::invalid_argument("PauliWord: empty word");
        }
        for (char c : letters_) {
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                throw std::invalid_argument(
                    "PauliWord: letters must be one of I, X, Y, Z");
            }
        }
    }

    int size() const { return static_cast<int>(letters_.size()); }
    char letter(int q) const { return letters_[static_cast<std::size_t>(q)]; }
    const std::string &str() const { return letters_; }
    bool is_identity() const {
        return letters_.find_first_not_of('I') == std::string::npos;
    }

    friend bool operator==(const PauliWord &a, const PauliWord &b) = default;
    friend auto operator<=>(const PauliWord &a, const PauliWord &b) = default;

  private:
    std::string letters_;
};

namespace detail {

inline const Eigen::Matrix2cd &pauli_1q(char letter) {
    static const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    static const Eigen::Matrix2cd x = (Eigen::Matrix2cd() << 0, 1, //
                                       1, 0)
                                          .finished();
    static const Eigen::Matrix2cd y =
        (Eigen::Matrix2cd() << 0, cxd(0, -1), cxd(0, 1), 0).finished();
    static const Eigen::Matrix2cd z = (Eigen::Matrix2cd() << 1, 0, //
                                       0, -1)
                                          .finished();
    switch (letter) {
    case 'I':
        return id;
    case 'X':
        return x;
    case 'Y':
        return y;
    default:
        return z;
    }
}

} // namespace detail

/// Dense 2^k x 2^k matrix of a Pauli word (qubit 0 is the first factor).
inline ComplexMatrix pauli_matrix(const PauliWord &w) {
    if (w.size() > 10) {
        throw std::invalid_argument("pauli_matrix: word too long for dense form");
    }
    ComplexMatrix m = detail::pauli_1q(w.letter(0));
    for (int q = 1; q < w.size(); ++q) {
        m = kron(m, detail::pauli_1q(w.letter(q))).eval();
    }
    return m;
}

/**
 * @brief The 4^k - 1 non-identity Pauli words on k qubits, canonically
 * ordered. These are the generators {Lambda_a} used by the SUN block.
 */
class GeneratorBasis {
  public:
    explicit GeneratorBasis(int k) : k_(k) {
        if (k < 1 || k > 3) {
            throw std::invalid_argument("GeneratorBasis: k must be in [1, 3]");
        }
        const int total = 1 << (2 * k);
        words_.reserve(static_cast<std::size_t>(total - 1));
        for (int v = 1; v < total; ++v) {
            std::string letters(static_cast<std::size_t>(k), 'I');
            static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
            for (int q = 0; q < k; ++q) {
                const int digit = (v >> (2 * (k - 1 - q))) & 3;
                letters[static_cast<std::size_t>(q)] = kLetters[digit];
            }
            words_.emplace_back(std::move(letters));
        }
    }

    int k() const { return k_; }
    int size() const { return static_cast<int>(words_.size()); }
    const PauliWord &word(int m) const {
        return words_[static_cast<std::size_t>(m)];
    }
    const std::vector<PauliWord> &words() const { return words_; }

    /// Dense matrices for every word, cached by the caller as needed.
    std::vector<ComplexMatrix> matrices() const {
        std::vector<ComplexMatrix> out;
        out.reserve(words_.size());
        for (const auto &w : words_) {
            out.push_back(pauli_matrix(w));
        }
        return out;
    }

  private:
    int k_;
    std::vector<PauliWord> words_;
};

inline GeneratorBasis su_basis(int k) { return GeneratorBasis(k); }

/**
 * @brief Hilbert-Schmidt coefficients of a Hermitian matrix in the Pauli
 * basis: omega_m = Tr(P_m M) / 2^k.
 *
 * The traceless part of M reconstructs as sum_m omega_m P_m.
 */
inline Eigen::VectorXd hs_coefficients(const ComplexMatrix &m, int k) {
    if (m.rows() != (1 << k) || m.cols() != (1 << k)) {
        throw std::invalid_argument("hs_coefficients: dimension mismatch");
    }
    if (!is_hermitian(m)) {
        throw std::invalid_argument("hs_coefficients: input is not Hermitian");
    }
    const GeneratorBasis basis(k);
    Eigen::VectorXd omega(basis.size());
    const double scale = 1.0 / static_cast<double>(1 << k);
    for (int idx = 0; idx < basis.size(); ++idx) {
        omega(idx) = (pauli_matrix(basis.word(idx)) * m).trace().real() * scale;
    }
    return omega;
}

/**
 * @brief Phase-free symplectic encoding of a Pauli word: X and Z bit
 * masks with qubit q at bit q. Y sets both bits.
 */
struct SymplecticWord {
    std::uint32_t x = 0;
    std::uint32_t z = 0;
    int n = 0;

    explicit SymplecticWord(const PauliWord &w) : n(w.size()) {
        for (int q = 0; q < n; ++q) {
            const char c = w.letter(q);
            if (c == 'X' || c == 'Y') {
                x |= 1u << q;
            }
            if (c == 'Z' || c == 'Y') {
                z |= 1u << q;
            }
        }
    }

    SymplecticWord(std::uint32_t x_bits, std::uint32_t z_bits, int n_qubits)
        : x(x_bits), z(z_bits), n(n_qubits) {}

    bool is_identity() const { return x == 0 && z == 0; }

    /// True iff the two words commute (symplectic form is even).
    bool commutes_with(const SymplecticWord &other) const {
        const int form = std::popcount(x & other.z) + std::popcount(z & other.x);
        return (form % 2) == 0;
    }

    /// Bracket product modulo phase; only meaningful when the words
    /// anticommute, in which case [P_a, P_b] is proportional to this word.
    SymplecticWord bracket(const SymplecticWord &other) const {
        return SymplecticWord(x ^ other.x, z ^ other.z, n);
    }

    PauliWord to_word() const {
        std::string letters(static_cast<std::size_t>(n), 'I');
        for (int q = 0; q < n; ++q) {
            const bool has_x = (x >> q) & 1u;
            const bool has_z = (z >> q) & 1u;
            if (has_x && has_z) {
                letters[static_cast<std::size_t>(q)] = 'Y';
            } else if (has_x) {
                letters[static_cast<std::size_t>(q)] = 'X';
            } else if (has_z) {
                letters[static_cast<std::size_t>(q)] = 'Z';
            }
        }
        return PauliWord(letters);
    }

    friend bool operator==(const SymplecticWord &a,
                           const SymplecticWord &b) = default;
    friend auto operator<=>(const SymplecticWord &a,
                            const SymplecticWord &b) = default;
};

/**
 * @brief Dimension of the real Lie algebra generated by {iP} for the seed
 * words, closed under commutation.
 *
 * Brackets of Pauli words are again Pauli words up to phase, so the
 * closure is computed over the symplectic representation: a worklist of
 * words is bracketed against the accumulated set until no new word
 * appears. Phases and the identity word are ignored; the dimension is the
 * number of distinct non-identity words reached (capped at 4^n - 1).
 */
inline int lie_closure_dim(const std::vector<PauliWord> &seed_words) {
    if (seed_words.empty()) {
        throw std::invalid_argument("lie_closure_dim: empty seed set");
    }
    const int n = seed_words.front().size();
    for (const auto &w : seed_words) {
        if (w.size() != n) {
            throw std::invalid_argument(
                "lie_closure_dim: seed words have mismatched lengths");
        }
    }
    const std::int64_t cap = (std::int64_t{1} << (2 * n)) - 1;

    std::set<std::pair<std::uint32_t, std::uint32_t>> reached;
    std::vector<SymplecticWord> members;
    std::vector<SymplecticWord> worklist;
    auto add = [&](const SymplecticWord &w) {
        if (w.is_identity()) {
            return;
        }
        if (reached.emplace(w.x, w.z).second) {
            members.push_back(w);
            worklist.push_back(w);
        }
    };
    for (const auto &w : seed_words) {
        add(SymplecticWord(w));
    }
    while (!worklist.empty() &&
           static_cast<std::int64_t>(members.size()) < cap) {
        const SymplecticWord current = worklist.back();
        worklist.pop_back();
        const std::size_t count = members.size();
        for (std::size_t j = 0; j < count; ++j) {
            const SymplecticWord &other = members[j];
            if (!current.commutes_with(other)) {
                add(current.bracket(other));
            }
        }
    }
    return static_cast<int>(members.size());
}

} // namespace sunvqc
