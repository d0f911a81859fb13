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

// Command layer of the kicked-top tool. Each cmd_* function writes to streams
// so tests can drive it without touching the filesystem; run() handles
// argument parsing, files and exit codes.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kicked_top/kicked_top.hpp"

namespace kicked_top::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Named state ("zero", "plus_y", "minus_y") or explicit angles.
struct StateSpec {
    std::string name = "zero";
    std::optional<double> theta;
    std::optional<double> phi;

    BlochPoint point() const;
};

struct EvolveConfig {
    int qubits = 3;
    double kappa0 = 1.2;
    StateSpec state;
    std::int64_t steps = 40;
};

struct SweepConfig {
    int qubits = 3;
    StateSpec state;
    double kappa0_min = 0.1;
    double kappa0_max = 6.0;
    double kappa0_step = 0.1;
    std::int64_t horizon = 10000;  // N, kicks averaged over n = 0..N-1
    int threads = 1;
};

struct TunnelConfig {
    double kappa0 = 0.1;
    std::int64_t n_max = 0;  // 0: twice the tunneling time
    int samples = 201;
};

struct HusimiConfig {
    int qubits = 3;
    double kappa0 = 0.0;
    StateSpec state;
    std::int64_t steps = 0;
    int n_theta = kDefaultHusimiTheta;
    int n_phi = kDefaultHusimiPhi;
};

struct ClassicalConfig {
    double kappa0 = 0.5;
    std::int64_t steps = 200;
    std::string seeds = "marked";  // marked | lattice
    int lattice_theta = 8;
    int lattice_phi = 16;
    std::vector<double> points;  // extra seeds as theta,phi pairs
};

struct TomoConfig {
    int qubits = 3;
    double kappa0 = 2.5;
    StateSpec state;
    std::int64_t steps = 10;        // synthesis covers n = 0..steps
    double noise = 0.0;             // additive Gaussian noise on synthesized expectations
    std::uint64_t seed = 1;
    std::optional<tomo::ReadoutModel> readout;  // unset: ideal readout
};

void cmd_evolve(const EvolveConfig &cfg, std::ostream &out, std::ostream &log);
void cmd_sweep(const SweepConfig &cfg, std::ostream &out, std::ostream &log);
void cmd_tunnel(const TunnelConfig &cfg, std::ostream &report, std::ostream *series);
void cmd_husimi(const HusimiConfig &cfg, std::ostream &out);
void cmd_classical(const ClassicalConfig &cfg, std::ostream &out);

/// Writes noiseless (or noisy, seeded) fixtures for the kicked-top states
/// U^n psi0, n = 0..steps: Pauli expectations and readout-distorted populations
/// in all 3^L settings.
void cmd_tomo_synthesize(const TomoConfig &cfg, std::ostream &expectations, std::ostream &populations);

/// Per-step metrics from expectation and/or population files against the
/// kicked-top truth. Either stream may be null, not both.
void cmd_tomo(const TomoConfig &cfg, std::istream *expectations, std::istream *populations, std::ostream &out,
              std::ostream &log);

tomo::ReadoutModel load_readout_model(std::istream &in);

/// Parses args (without the program name), runs the subcommand and returns
/// the exit code. Messages go to `log`.
int run(const std::vector<std::string> &args, std::ostream &log);

}  // namespace kicked_top::cli
