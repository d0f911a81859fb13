// Copyright 2026 The kicked-top Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Minimal CSV reading and writing. Numbers are written in shortest
// round-trip form with '.' as decimal separator.

#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "kicked_top/common.hpp"

namespace kicked_top::io {

inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

inline double parse_double(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(), "not a number: '" + std::string(s) + "'");
    return v;
}

inline std::int64_t parse_int(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && ptr == s.data() + s.size() && !s.empty(), "not an integer: '" + std::string(s) + "'");
    return v;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a named column, or -1.
    int column(std::string_view name) const {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }

    int require_column(std::string_view name) const {
        int c = column(name);
        require(c >= 0, "missing CSV column '" + std::string(name) + "'");
        return c;
    }
};

inline std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell.push_back(c);
        }
    }
    out.push_back(cell);
    for (auto &s : out) {
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
    }
    return out;
}

/// Header row plus data rows; blank lines and lines starting with '#' are skipped.
inline CsvTable read_csv(std::istream &in) {
    CsvTable t;
    std::string line;
    bool have_header = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r" || line[0] == '#') continue;
        auto cells = split_line(line);
        if (!have_header) {
            t.header = std::move(cells);
            have_header = true;
            continue;
        }
        require(cells.size() == t.header.size(), "CSV line " + std::to_string(line_no) + " has the wrong number of fields");
        t.rows.push_back(std::move(cells));
    }
    require(have_header, "CSV input has no header");
    return t;
}

class CsvWriter {
  public:
    CsvWriter(std::ostream &out, const std::vector<std::string> &header) : out_(out), width_(header.size()) {
        write_cells(header);
    }

    void row(const std::vector<std::string> &cells) {
        require(cells.size() == width_, "CSV row width differs from header");
        write_cells(cells);
    }

  private:
    void write_cells(const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::ostream &out_;
    std::size_t width_;
};

}  // namespace kicked_top::io
