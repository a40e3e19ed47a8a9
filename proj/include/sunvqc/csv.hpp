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
 * Locale-free CSV emission: '.' decimal separator, 17 significant digits
 * for reals, byte-stable for identical inputs.
 */
#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sunvqc {

inline std::string format_real(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

class CsvWriter {
  public:
    explicit CsvWriter(const std::string &path) : out_(path, std::ios::binary) {
        if (!out_) {
            throw std::runtime_error("cannot open CSV for writing: " + path);
        }
    }

    void header(const std::vector<std::string> &columns) {
        write_row_strings(columns);
    }

    void field(const std::string &text) {
        if (!row_.empty()) {
            row_ += ',';
        }
        row_ += text;
    }
    void field(double value) { field(format_real(value)); }
    void field(int value) { field(std::to_string(value)); }
    void field(std::int64_t value) { field(std::to_string(value)); }

    void end_row() {
        out_ << row_ << '\n';
        row_.clear();
    }

    void close() { out_.close(); }

  private:
    void write_row_strings(const std::vector<std::string> &cells) {
        std::string line;
        for (std::size_t idx = 0; idx < cells.size(); ++idx) {
            if (idx > 0) {
                line += ',';
            }
            line += cells[idx];
        }
        out_ << line << '\n';
    }

    std::ofstream out_;
    std::string row_;
};

} // namespace sunvqc
