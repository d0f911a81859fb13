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

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "kicked_top/io.hpp"

namespace kt = kicked_top;
namespace io = kicked_top::io;

TEST(Io, DoubleRoundTrip) {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        double v = u(rng) * std::pow(10.0, i % 40 - 20);
        EXPECT_EQ(io::parse_double(io::format_double(v)), v);
    }
    EXPECT_EQ(io::format_double(0.5), "0.5");
    EXPECT_EQ(io::parse_double(" 1.25\r"), 1.25);
    EXPECT_THROW(io::parse_double("1.2x"), kt::ValidationError);
    EXPECT_THROW(io::parse_double(""), kt::ValidationError);
}

TEST(Io, ReadCsv) {
    std::istringstream in("# comment\nstep,label,value\r\n0, XYZ ,0.5\n\n1,III,1\n");
    auto t = io::read_csv(in);
    ASSERT_EQ(t.header.size(), 3u);
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0][1], "XYZ");
    EXPECT_EQ(t.require_column("value"), 2);
    EXPECT_EQ(t.column("nope"), -1);
    EXPECT_THROW(t.require_column("nope"), kt::ValidationError);
    EXPECT_EQ(io::parse_int(t.rows[1][0]), 1);
}

TEST(Io, ReadCsvErrors) {
    std::istringstream empty("");
    EXPECT_THROW(io::read_csv(empty), kt::ValidationError);
    std::istringstream ragged("a,b\n1\n");
    EXPECT_THROW(io::read_csv(ragged), kt::ValidationError);
}

TEST(Io, Writer) {
    std::ostringstream out;
    io::CsvWriter w(out, {"a", "b"});
    w.row({"1", "2"});
    EXPECT_THROW(w.row({"1"}), kt::ValidationError);
    EXPECT_EQ(out.str(), "a,b\n1,2\n");
}
