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

#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace kicked_top::cli {

namespace {

// JSON config: top-level keys set global options, objects named after a
// subcommand set that subcommand's options. Keys may use '_' for '-'.
class JsonConfig : public CLI::Config {
  public:
    std::string to_config(const CLI::App *, bool, bool, std::string) const override { return "{}\n"; }

    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        nlohmann::json j;
        try {
            input >> j;
        } catch (const nlohmann::json::exception &e) {
            throw ValidationError(std::string("config is not valid JSON: ") + e.what());
        }
        require(j.is_object(), "config must be a JSON object");
        std::vector<CLI::ConfigItem> items;
        flatten(j, {}, items);
        return items;
    }

  private:
    static std::string scalar(const nlohmann::json &v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        if (v.is_number_float()) return io::format_double(v.get<double>());
        if (v.is_number()) return v.dump();
        throw ValidationError("config values must be strings, numbers, booleans or arrays of those");
    }

    static void flatten(const nlohmann::json &j, const std::vector<std::string> &parents,
                        std::vector<CLI::ConfigItem> &items) {
        for (const auto &[key, value] : j.items()) {
            std::string name = key;
            std::replace(name.begin(), name.end(), '_', '-');
            if (value.is_object()) {
                require(parents.empty(), "config sections nest one level deep");
                std::vector<std::string> sub = parents;
                sub.push_back(key);
                flatten(value, sub, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = name;
            if (value.is_array()) {
                for (const auto &e : value) item.inputs.push_back(scalar(e));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }
};

struct StateOptions {
    CLI::Option *theta = nullptr;
    CLI::Option *phi = nullptr;
};

StateOptions add_state(CLI::App *sub, StateSpec &spec, double &theta, double &phi) {
    sub->add_option("--state", spec.name, "Named initial state: zero, plus_y, minus_y")->capture_default_str();
    StateOptions o;
    o.theta = sub->add_option("--theta", theta, "Coherent-state polar angle in [0, pi]");
    o.phi = sub->add_option("--phi", phi, "Coherent-state azimuth in [-pi, pi]");
    return o;
}

void resolve_state(const StateOptions &o, StateSpec &spec, double theta, double phi) {
    if (o.theta->count() > 0) spec.theta = theta;
    if (o.phi->count() > 0) spec.phi = phi;
}

class Output {
  public:
    explicit Output(const std::string &path) {
        if (path.empty() || path == "-") return;
        file_.open(path, std::ios::binary);
        if (!file_) throw IoError("cannot open '" + path + "' for writing");
    }
    std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }
    void close() {
        if (!file_.is_open()) return;
        file_.close();
        if (!file_) throw IoError("failed writing output file");
    }

  private:
    std::ofstream file_;
};

std::unique_ptr<std::ifstream> open_input(const std::string &path) {
    auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*in) throw IoError("cannot open '" + path + "'");
    return in;
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &log) {
    CLI::App app{"Kicked-top simulation laboratory", "kicked-top"};
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON configuration file; command-line flags take precedence");

    std::uint64_t seed = 1;
    int threads = 1;
    app.add_option("--seed", seed, "Seed for randomized steps")->capture_default_str();
    app.add_option("--threads", threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

    std::string out_path;
    double theta = 0.0, phi = 0.0;

    EvolveConfig evolve_cfg;
    auto *evolve_cmd = app.add_subcommand("evolve", "Entanglement time series, numeric and closed form");
    evolve_cmd->add_option("--qubits", evolve_cfg.qubits, "Number of qubits 2j")->capture_default_str();
    evolve_cmd->add_option("--kappa0", evolve_cfg.kappa0, "Torsion strength")->capture_default_str();
    evolve_cmd->add_option("--steps", evolve_cfg.steps, "Last kick n")->capture_default_str();
    auto evolve_state = add_state(evolve_cmd, evolve_cfg.state, theta, phi);
    evolve_cmd->add_option("--out", out_path, "Output CSV ('-' for stdout)");

    SweepConfig sweep_cfg;
    auto *sweep_cmd = app.add_subcommand("sweep", "Long-time average entropy over a kappa0 grid");
    sweep_cmd->add_option("--qubits", sweep_cfg.qubits, "Number of qubits 2j")->capture_default_str();
    sweep_cmd->add_option("--kappa0-min", sweep_cfg.kappa0_min)->capture_default_str();
    sweep_cmd->add_option("--kappa0-max", sweep_cfg.kappa0_max)->capture_default_str();
    sweep_cmd->add_option("--kappa0-step", sweep_cfg.kappa0_step)->capture_default_str();
    sweep_cmd->add_option("--horizon", sweep_cfg.horizon, "Kicks N averaged over")->capture_default_str();
    auto sweep_state = add_state(sweep_cmd, sweep_cfg.state, theta, phi);
    sweep_cmd->add_option("--out", out_path, "Output CSV ('-' for stdout)");

    TunnelConfig tunnel_cfg;
    std::string series_path;
    auto *tunnel_cmd = app.add_subcommand("tunnel", "Four-qubit tunneling report and overlap series");
    tunnel_cmd->add_option("--kappa0", tunnel_cfg.kappa0)->capture_default_str();
    tunnel_cmd->add_option("--n-max", tunnel_cfg.n_max, "Last time of the series (0: twice the tunneling time)")
        ->capture_default_str();
    tunnel_cmd->add_option("--samples", tunnel_cfg.samples, "Series points")->capture_default_str();
    tunnel_cmd->add_option("--out", out_path, "Report JSON ('-' for stdout)");
    tunnel_cmd->add_option("--series", series_path, "Overlap series CSV");

    HusimiConfig husimi_cfg;
    auto *husimi_cmd = app.add_subcommand("husimi", "Coherent-state overlap grid of U^n psi0");
    husimi_cmd->add_option("--qubits", husimi_cfg.qubits)->capture_default_str();
    husimi_cmd->add_option("--kappa0", husimi_cfg.kappa0)->capture_default_str();
    husimi_cmd->add_option("--steps", husimi_cfg.steps, "Kicks applied before sampling")->capture_default_str();
    husimi_cmd->add_option("--n-theta", husimi_cfg.n_theta)->capture_default_str();
    husimi_cmd->add_option("--n-phi", husimi_cfg.n_phi)->capture_default_str();
    auto husimi_state = add_state(husimi_cmd, husimi_cfg.state, theta, phi);
    husimi_cmd->add_option("--out", out_path, "Output CSV ('-' for stdout)");

    ClassicalConfig classical_cfg;
    auto *classical_cmd = app.add_subcommand("classical", "Classical map trajectories");
    classical_cmd->add_option("--kappa0", classical_cfg.kappa0)->capture_default_str();
    classical_cmd->add_option("--steps", classical_cfg.steps)->capture_default_str();
    classical_cmd->add_option("--seeds", classical_cfg.seeds, "marked, lattice or none")->capture_default_str();
    classical_cmd->add_option("--lattice-theta", classical_cfg.lattice_theta)->capture_default_str();
    classical_cmd->add_option("--lattice-phi", classical_cfg.lattice_phi)->capture_default_str();
    classical_cmd->add_option("--point", classical_cfg.points, "Extra seeds as theta phi pairs")
        ->expected(2, CLI::detail::expected_max_vector_size);
    classical_cmd->add_option("--out", out_path, "Output CSV ('-' for stdout)");

    TomoConfig tomo_cfg;
    std::string readout_arg, expectations_path, populations_path;
    bool synthesize = false;
    auto *tomo_cmd = app.add_subcommand("tomo", "Tomography post-processing against the kicked-top truth");
    tomo_cmd->add_option("--qubits", tomo_cfg.qubits)->capture_default_str();
    tomo_cmd->add_option("--kappa0", tomo_cfg.kappa0)->capture_default_str();
    tomo_cmd->add_option("--steps", tomo_cfg.steps, "Last step synthesized")->capture_default_str();
    tomo_cmd->add_option("--noise", tomo_cfg.noise, "Gaussian noise on synthesized expectations")
        ->capture_default_str();
    tomo_cmd->add_option("--readout", readout_arg, "Readout model JSON, or 'reference'");
    tomo_cmd->add_flag("--synthesize", synthesize, "Write fixtures instead of analysing them");
    tomo_cmd->add_option("--expectations", expectations_path, "Expectations CSV (step,label,value)");
    tomo_cmd->add_option("--populations", populations_path, "Populations CSV (step,setting,p...)");
    auto tomo_state = add_state(tomo_cmd, tomo_cfg.state, theta, phi);
    tomo_cmd->add_option("--out", out_path, "Metrics CSV ('-' for stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::FileError &e) {
        log << e.what() << '\n';
        return kExitIo;
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, log, log);
        return code == 0 ? kExitOk : kExitValidation;
    } catch (const ValidationError &e) {
        log << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        Output out(out_path);
        if (evolve_cmd->parsed()) {
            resolve_state(evolve_state, evolve_cfg.state, theta, phi);
            cmd_evolve(evolve_cfg, out.stream(), log);
        } else if (sweep_cmd->parsed()) {
            resolve_state(sweep_state, sweep_cfg.state, theta, phi);
            sweep_cfg.threads = threads;
            cmd_sweep(sweep_cfg, out.stream(), log);
        } else if (tunnel_cmd->parsed()) {
            if (series_path.empty()) {
                cmd_tunnel(tunnel_cfg, out.stream(), nullptr);
            } else {
                Output series(series_path);
                cmd_tunnel(tunnel_cfg, out.stream(), &series.stream());
                series.close();
            }
        } else if (husimi_cmd->parsed()) {
            resolve_state(husimi_state, husimi_cfg.state, theta, phi);
            cmd_husimi(husimi_cfg, out.stream());
        } else if (classical_cmd->parsed()) {
            cmd_classical(classical_cfg, out.stream());
        } else if (tomo_cmd->parsed()) {
            resolve_state(tomo_state, tomo_cfg.state, theta, phi);
            tomo_cfg.seed = seed;
            if (readout_arg == "reference") {
                tomo_cfg.readout = tomo::reference_readout_model();
            } else if (!readout_arg.empty()) {
                tomo_cfg.readout = load_readout_model(*open_input(readout_arg));
            }
            if (synthesize) {
                require(!expectations_path.empty() && !populations_path.empty(),
                        "--synthesize needs --expectations and --populations output paths");
                Output e(expectations_path), p(populations_path);
                cmd_tomo_synthesize(tomo_cfg, e.stream(), p.stream());
                e.close();
                p.close();
            } else {
                std::unique_ptr<std::ifstream> e, p;
                if (!expectations_path.empty()) e = open_input(expectations_path);
                if (!populations_path.empty()) p = open_input(populations_path);
                cmd_tomo(tomo_cfg, e.get(), p.get(), out.stream(), log);
            }
        }
        out.close();
    } catch (const IoError &e) {
        log << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument &e) {
        log << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitOk;
}

}  // namespace kicked_top::cli
