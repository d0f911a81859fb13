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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace kt = kicked_top;
namespace cli = kicked_top::cli;
namespace io = kicked_top::io;
namespace fs = std::filesystem;

namespace {

io::CsvTable parse(const std::string &text) {
    std::istringstream in(text);
    return io::read_csv(in);
}

double cell(const io::CsvTable &t, std::size_t row, const std::string &col) {
    return io::parse_double(t.rows.at(row).at(t.require_column(col)));
}

class TempDir {
  public:
    TempDir() {
        path_ = fs::temp_directory_path() / ("kicked_top_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                             ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    std::string file(const std::string &name) const { return (path_ / name).string(); }

  private:
    fs::path path_;
};

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(CliEvolve, ThreeQubitClosedFormAgreement) {
    for (const char *state : {"zero", "plus_y"}) {
        cli::EvolveConfig cfg;
        cfg.kappa0 = 2.5;
        cfg.steps = 60;
        cfg.state.name = state;
        std::ostringstream out, log;
        cli::cmd_evolve(cfg, out, log);
        auto t = parse(out.str());
        ASSERT_EQ(t.rows.size(), 61u);
        for (std::size_t r = 0; r < t.rows.size(); ++r)
            EXPECT_NEAR(cell(t, r, "S_numeric"), cell(t, r, "S_closed"), 1e-10);
    }
}

TEST(CliEvolve, ZeroConcurrenceColumn) {
    cli::EvolveConfig cfg;
    cfg.kappa0 = 1.0;
    cfg.steps = 20;
    std::ostringstream out, log;
    cli::cmd_evolve(cfg, out, log);
    auto t = parse(out.str());
    for (std::size_t r = 0; r < t.rows.size(); ++r) EXPECT_NEAR(cell(t, r, "C_numeric"), cell(t, r, "C_closed"), 1e-9);
}

TEST(CliEvolve, NoTorsionStaysUnentangled) {
    cli::EvolveConfig cfg;
    cfg.kappa0 = 0.0;
    std::ostringstream out, log;
    cli::cmd_evolve(cfg, out, log);
    auto t = parse(out.str());
    for (std::size_t r = 0; r < t.rows.size(); ++r) EXPECT_NEAR(cell(t, r, "S_numeric"), 0.0, 1e-12);
}

TEST(CliEvolve, FourQubitStepPattern) {
    cli::EvolveConfig cfg;
    cfg.qubits = 4;
    cfg.kappa0 = 1.3;
    cfg.steps = 30;
    std::ostringstream out, log;
    cli::cmd_evolve(cfg, out, log);
    auto t = parse(out.str());
    for (std::size_t n = 1; n + 1 < t.rows.size(); n += 2) {
        EXPECT_NEAR(cell(t, n, "S_numeric"), cell(t, n + 1, "S_numeric"), 1e-12);
        EXPECT_NEAR(cell(t, n, "S_numeric"), cell(t, n, "S_closed"), 1e-10);
    }
}

TEST(CliEvolve, NoClosedColumnsBeyondFour) {
    cli::EvolveConfig cfg;
    cfg.qubits = 5;
    cfg.steps = 3;
    std::ostringstream out, log;
    cli::cmd_evolve(cfg, out, log);
    auto t = parse(out.str());
    EXPECT_EQ(t.column("S_closed"), -1);
    EXPECT_EQ(t.column("C_closed"), -1);
    EXPECT_GE(t.column("S_numeric"), 0);
    EXPECT_FALSE(log.str().empty());
}

TEST(CliSweep, ThreadCountDoesNotChangeOutput) {
    cli::SweepConfig cfg;
    cfg.kappa0_min = 0.5;
    cfg.kappa0_max = 2.0;
    cfg.kappa0_step = 0.5;
    cfg.horizon = 500;
    std::ostringstream a, b, log;
    cfg.threads = 1;
    cli::cmd_sweep(cfg, a, log);
    cfg.threads = 3;
    cli::cmd_sweep(cfg, b, log);
    EXPECT_EQ(a.str(), b.str());
    auto t = parse(a.str());
    EXPECT_EQ(t.rows.size(), 4u);
}

TEST(CliSweep, LargeRegisterTrendsTowardRandomStates) {
    cli::SweepConfig cfg;
    cfg.qubits = 7;
    cfg.state.name = "plus_y";
    cfg.kappa0_min = 1.0;
    cfg.kappa0_max = 3.0;
    cfg.kappa0_step = 2.0;
    cfg.horizon = 2000;
    std::ostringstream out, log;
    cli::cmd_sweep(cfg, out, log);
    auto t = parse(out.str());
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_LT(cell(t, 0, "S_rmt_normalized"), cell(t, 1, "S_rmt_normalized"));
    EXPECT_GT(cell(t, 1, "S_rmt_normalized"), 0.7);
}

TEST(CliSweep, ClosedAverageColumnForFeaturedStates) {
    cli::SweepConfig cfg;
    cfg.kappa0_min = 1.0;
    cfg.kappa0_max = 1.0;
    cfg.horizon = 20000;
    std::ostringstream out, log;
    cli::cmd_sweep(cfg, out, log);
    auto t = parse(out.str());
    EXPECT_NEAR(cell(t, 0, "S_avg_numeric"), cell(t, 0, "S_avg_closed"), 2e-3);
}

TEST(CliTunnel, ReportAndSeries) {
    cli::TunnelConfig cfg;
    cfg.samples = 11;
    std::ostringstream report, series;
    cli::cmd_tunnel(cfg, report, &series);
    EXPECT_NE(report.str().find("\"n_star_asymptotic_rounded\": 402124"), std::string::npos) << report.str();
    auto t = parse(series.str());
    EXPECT_EQ(t.rows.size(), 11u);
    EXPECT_NEAR(cell(t, 0, "overlap_minus_y"), 0.0, 1e-15);
    EXPECT_GE(cell(t, 5, "overlap_minus_y"), 0.95);  // midpoint is the tunneling time
}

TEST(CliClassical, MarkedSeeds) {
    cli::ClassicalConfig cfg;
    cfg.steps = 8;
    std::ostringstream out;
    cli::cmd_classical(cfg, out);
    auto t = parse(out.str());
    ASSERT_EQ(t.rows.size(), 18u);
    for (std::size_t r = 0; r < 9; ++r) EXPECT_NEAR(cell(t, r, "Y"), -1.0, 1e-15);
    EXPECT_NEAR(cell(t, 9 + 4, "Z"), 1.0, 1e-15);
    EXPECT_NEAR(cell(t, 9 + 8, "Z"), 1.0, 1e-15);
}

TEST(CliClassical, RegressionAgainstStoredPortrait) {
    cli::ClassicalConfig cfg;
    cfg.seeds = "lattice";
    cfg.lattice_theta = 4;
    cfg.lattice_phi = 6;
    cfg.steps = 50;
    std::ostringstream out;
    cli::cmd_classical(cfg, out);
    auto got = parse(out.str());
    std::ifstream ref_in(std::string(KICKED_TOP_DATA_DIR) + "/fixtures/classical_k0.5_lattice4x6.csv");
    ASSERT_TRUE(ref_in.good());
    auto ref = io::read_csv(ref_in);
    ASSERT_EQ(got.rows.size(), ref.rows.size());
    for (std::size_t r = 0; r < ref.rows.size(); ++r)
        for (const char *c : {"X", "Y", "Z"}) EXPECT_NEAR(cell(got, r, c), cell(ref, r, c), 1e-12);
}

TEST(CliHusimi, GridRows) {
    cli::HusimiConfig cfg;
    cfg.n_theta = 5;
    cfg.n_phi = 7;
    std::ostringstream out;
    cli::cmd_husimi(cfg, out);
    auto t = parse(out.str());
    EXPECT_EQ(t.rows.size(), 35u);
    EXPECT_NEAR(cell(t, 0, "Q"), 1.0, 1e-14);
}

TEST(CliTomo, SynthesizeAnalyzeRoundTrip) {
    cli::TomoConfig cfg;
    cfg.steps = 4;
    cfg.readout = kt::tomo::reference_readout_model();
    std::ostringstream e, p;
    cli::cmd_tomo_synthesize(cfg, e, p);
    std::istringstream ein(e.str()), pin(p.str());
    std::ostringstream out, log;
    cli::cmd_tomo(cfg, &ein, &pin, out, log);
    auto t = parse(out.str());
    ASSERT_EQ(t.rows.size(), 10u);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        EXPECT_NEAR(cell(t, r, "fidelity"), 1.0, 1e-9);
        EXPECT_NEAR(cell(t, r, "S_mean"), cell(t, r, "S_mean_truth"), 1e-9);
        EXPECT_NEAR(cell(t, r, "C_mean"), cell(t, r, "C_mean_truth"), 1e-7);
    }
}

TEST(CliTomo, StoredFixturesReproduceTruth) {
    const std::string dir = std::string(KICKED_TOP_DATA_DIR) + "/fixtures/";
    std::ifstream model_in(std::string(KICKED_TOP_DATA_DIR) + "/readout_model.json");
    ASSERT_TRUE(model_in.good());
    cli::TomoConfig cfg;
    cfg.readout = cli::load_readout_model(model_in);
    std::ifstream ein(dir + "tomo_expectations.csv"), pin(dir + "tomo_populations.csv");
    ASSERT_TRUE(ein.good() && pin.good());
    std::ostringstream out, log;
    cli::cmd_tomo(cfg, &ein, &pin, out, log);
    auto t = parse(out.str());
    EXPECT_FALSE(t.rows.empty());
    for (std::size_t r = 0; r < t.rows.size(); ++r) EXPECT_NEAR(cell(t, r, "fidelity"), 1.0, 1e-9);
}

TEST(CliTomo, NoisyExpectationsStayFaithful) {
    cli::TomoConfig cfg;
    cfg.steps = 5;
    cfg.noise = 0.01;
    cfg.seed = 7;
    std::ostringstream e, p;
    cli::cmd_tomo_synthesize(cfg, e, p);
    std::istringstream ein(e.str());
    std::ostringstream out, log;
    cli::cmd_tomo(cfg, &ein, nullptr, out, log);
    auto t = parse(out.str());
    ASSERT_EQ(t.rows.size(), 6u);
    for (std::size_t r = 0; r < t.rows.size(); ++r) EXPECT_GE(cell(t, r, "fidelity"), 0.98);
}

TEST(CliTomo, RejectsNoInput) {
    cli::TomoConfig cfg;
    std::ostringstream out, log;
    EXPECT_THROW(cli::cmd_tomo(cfg, nullptr, nullptr, out, log), kt::ValidationError);
}

TEST(CliRun, ExitCodes) {
    std::ostringstream log;
    EXPECT_EQ(cli::run({"evolve", "--qubits", "3", "--kappa0", "1", "--steps", "2", "--out", "-"}, log), cli::kExitOk);
    EXPECT_EQ(cli::run({"evolve", "--qubits", "1"}, log), cli::kExitValidation);
    EXPECT_EQ(cli::run({"evolve", "--kappa0", "nan"}, log), cli::kExitValidation);
    EXPECT_EQ(cli::run({"evolve", "--theta", "4"}, log), cli::kExitValidation);
    EXPECT_EQ(cli::run({"evolve", "--steps", "-1"}, log), cli::kExitValidation);
    EXPECT_EQ(cli::run({"tomo", "--qubits", "20", "--synthesize", "--expectations", "-", "--populations", "-"}, log),
              cli::kExitValidation);
    EXPECT_EQ(cli::run({"bogus"}, log), cli::kExitValidation);
    EXPECT_EQ(cli::run({}, log), cli::kExitValidation);
    EXPECT_EQ(cli::run({"tomo", "--expectations", "/nonexistent/e.csv"}, log), cli::kExitIo);
    EXPECT_EQ(cli::run({"evolve", "--out", "/nonexistent/dir/out.csv"}, log), cli::kExitIo);
    EXPECT_EQ(cli::run({"--config", "/nonexistent/c.json", "evolve"}, log), cli::kExitIo);
    EXPECT_EQ(cli::run({"--help"}, log), cli::kExitOk);
}

TEST(CliRun, ConfigFileAndFlagPrecedence) {
    TempDir tmp;
    {
        std::ofstream c(tmp.file("c.json"));
        c << R"({"evolve": {"qubits": 4, "kappa0": 0.7, "steps": 5}})";
    }
    std::ostringstream log;
    ASSERT_EQ(cli::run({"--config", tmp.file("c.json"), "evolve", "--out", tmp.file("a.csv")}, log), cli::kExitOk) << log.str();
    ASSERT_EQ(cli::run({"evolve", "--config", tmp.file("c.json"), "--steps", "2", "--out", tmp.file("b.csv")}, log),
              cli::kExitOk)
        << log.str();
    std::ifstream a_in(tmp.file("a.csv")), b_in(tmp.file("b.csv"));
    auto a = io::read_csv(a_in), b = io::read_csv(b_in);
    EXPECT_EQ(a.rows.size(), 6u);
    EXPECT_EQ(b.rows.size(), 3u);
    cli::EvolveConfig direct;
    direct.qubits = 4;
    direct.kappa0 = 0.7;
    direct.steps = 5;
    std::ostringstream expect, l2;
    cli::cmd_evolve(direct, expect, l2);
    EXPECT_EQ(slurp(tmp.file("a.csv")), expect.str());

    {
        std::ofstream c(tmp.file("bad.json"));
        c << "{not json";
    }
    EXPECT_EQ(cli::run({"--config", tmp.file("bad.json"), "evolve"}, log), cli::kExitValidation);
}

TEST(CliRun, ConfigArraysFeedRepeatedOptions) {
    TempDir tmp;
    {
        std::ofstream c(tmp.file("c.json"));
        c << R"({"classical": {"seeds": "none", "steps": 1, "point": [1.0, 0.5, 2.0, -1.0]}})";
    }
    std::ostringstream log;
    ASSERT_EQ(cli::run({"--config", tmp.file("c.json"), "classical", "--out", tmp.file("p.csv")}, log), cli::kExitOk)
        << log.str();
    std::ifstream in(tmp.file("p.csv"));
    auto t = io::read_csv(in);
    EXPECT_EQ(t.rows.size(), 4u);
    EXPECT_EQ(cli::run({"classical", "--seeds", "none", "--point", "1", "0.5", "2"}, log), cli::kExitValidation);
}

TEST(CliRun, RerunsAreByteIdentical) {
    TempDir tmp;
    std::ostringstream log;
    for (const char *name : {"a.csv", "b.csv"})
        ASSERT_EQ(cli::run({"sweep", "--qubits", "4", "--kappa0-min", "0.5", "--kappa0-max", "1.5", "--horizon", "200",
                            "--threads", "2", "--out", tmp.file(name)},
                           log),
                  cli::kExitOk)
            << log.str();
    EXPECT_EQ(slurp(tmp.file("a.csv")), slurp(tmp.file("b.csv")));
}

TEST(CliBinary, RunsAsProcess) {
    TempDir tmp;
    std::string cmd = std::string(KICKED_TOP_CLI_PATH) + " tunnel --kappa0 0.1 --out " + tmp.file("r.json") +
                      " 2>" + tmp.file("err.txt");
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    EXPECT_NE(slurp(tmp.file("r.json")).find("402124"), std::string::npos);
    std::string bad = std::string(KICKED_TOP_CLI_PATH) + " evolve --qubits 1 2>" + tmp.file("err.txt");
    int status = std::system(bad.c_str());
    EXPECT_EQ(WEXITSTATUS(status), cli::kExitValidation);
}
