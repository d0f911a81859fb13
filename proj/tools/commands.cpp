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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <thread>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace kicked_top::cli {

using io::format_double;

BlochPoint StateSpec::point() const {
    if (theta || phi) {
        require(theta.has_value() && phi.has_value(), "explicit state needs both theta and phi");
        return BlochPoint::checked(*theta, *phi);
    }
    if (name == "zero") return BlochPoint::north();
    if (name == "plus_y") return BlochPoint::plus_y();
    if (name == "minus_y") return BlochPoint::minus_y();
    throw ValidationError("unknown state '" + name + "' (expected zero, plus_y, minus_y or theta/phi)");
}

namespace {

enum class Featured { none, zero, plus_y };

Featured classify(const SymState &psi) {
    auto near = [&](BlochPoint p) {
        return std::abs(coherent_state(psi.spin(), p).overlap(psi)) >= 1.0 - 1e-12;
    };
    if (near(BlochPoint::north())) return Featured::zero;
    if (near(BlochPoint::plus_y())) return Featured::plus_y;
    return Featured::none;
}

Spin checked_register(int qubits, int max_qubits) {
    require(qubits >= 2 && qubits <= max_qubits,
            "qubit count must lie in [2, " + std::to_string(max_qubits) + "]");
    return Spin::qubits(qubits);
}

void check_stream(std::ostream &out) {
    if (!out) throw IoError("write failed");
}

// Pool over indices 0..count-1; results land by index, so output order does
// not depend on scheduling.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn &&fn) {
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto &t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::string bit_string(std::uint64_t b, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q)
        if ((b >> (n - 1 - q)) & 1u) s[q] = '1';
    return s;
}

std::vector<std::string> settings_of(int n) {
    std::vector<std::string> out;
    for (const std::string &label : tomo::pauli_labels(n)) {
        if (label.find('I') == std::string::npos) out.push_back(label);
    }
    return out;
}

DensityMatrix register_state(const SymState &psi) { return DensityMatrix::pure(symmetric_to_qubits(psi)); }

}  // namespace

void cmd_evolve(const EvolveConfig &cfg, std::ostream &out, std::ostream &log) {
    require_finite(cfg.kappa0, "kappa0");
    require(cfg.steps >= 0, "steps must be non-negative");
    const Spin spin = checked_register(cfg.qubits, 2000);
    const SymState psi0 = coherent_state(spin, cfg.state.point());
    const Featured featured = classify(psi0);

    const bool s_closed = cfg.qubits == 3 || (cfg.qubits == 4 && featured != Featured::none);
    const bool c_closed = cfg.qubits == 3 && featured == Featured::zero;
    if (!s_closed) {
        log << "warning: no closed-form entropy for " << cfg.qubits
            << " qubits with this state; S_closed omitted\n";
    }
    if (!c_closed) log << "warning: closed-form concurrence only for 3 qubits from |000>; C_closed omitted\n";

    std::vector<std::string> header{"n", "S_numeric"};
    if (s_closed) header.push_back("S_closed");
    header.push_back("C_numeric");
    if (c_closed) header.push_back("C_closed");
    io::CsvWriter csv(out, header);

    const exact3::GeneralState general3 =
        cfg.qubits == 3 ? exact3::GeneralState::from_symmetric(psi0) : exact3::GeneralState{};
    auto closed_entropy = [&](std::int64_t n) {
        if (cfg.qubits == 3) {
            if (featured == Featured::zero) return exact3::entropy_closed(exact3::FeaturedState::zero, n, cfg.kappa0);
            if (featured == Featured::plus_y) return exact3::entropy_closed(exact3::FeaturedState::plus_y, n, cfg.kappa0);
            return exact3::general_entropy(general3, n, cfg.kappa0);
        }
        auto id = featured == Featured::zero ? exact4::FeaturedState::zero : exact4::FeaturedState::plus_y;
        return exact4::entropy_closed(id, n, cfg.kappa0);
    };

    const UnitaryMatrix u = floquet(KickedTopParams::checked(spin, cfg.kappa0));
    evolve(u, psi0, cfg.steps, [&](std::int64_t n, const SymState &psi) {
        std::vector<std::string> row{std::to_string(n), format_double(linear_entropy(reduced_state(psi, 1)))};
        if (s_closed) row.push_back(format_double(closed_entropy(n)));
        row.push_back(format_double(concurrence(psi)));
        if (c_closed) row.push_back(format_double(exact3::concurrence_zero(n, cfg.kappa0)));
        csv.row(row);
    });
    check_stream(out);
}

void cmd_sweep(const SweepConfig &cfg, std::ostream &out, std::ostream &log) {
    require_finite(cfg.kappa0_min, "kappa0-min");
    require_finite(cfg.kappa0_max, "kappa0-max");
    require_finite(cfg.kappa0_step, "kappa0-step");
    require(cfg.kappa0_step > 0.0, "kappa0-step must be positive");
    require(cfg.kappa0_max >= cfg.kappa0_min, "kappa0-max must not be below kappa0-min");
    require(cfg.horizon >= 1, "horizon N must be positive");
    require(cfg.threads >= 1, "threads must be positive");
    const Spin spin = checked_register(cfg.qubits, 2000);
    const double span = (cfg.kappa0_max - cfg.kappa0_min) / cfg.kappa0_step;
    require(span <= 1e6, "too many sweep points");
    const std::size_t count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;

    const SymState psi0 = coherent_state(spin, cfg.state.point());
    const Featured featured = classify(psi0);
    const bool closed = (cfg.qubits == 3 || cfg.qubits == 4) && featured != Featured::none;
    if (!closed) log << "warning: no closed-form average for this register and state; S_avg_closed omitted\n";
    const double s_rmt = rmt_average(cfg.qubits);

    struct Point {
        double kappa0 = 0.0, numeric = 0.0, closed = 0.0;
        bool resonant = false;
    };
    std::vector<Point> points(count);
    parallel_for(count, cfg.threads, [&](std::size_t i) {
        Point &pt = points[i];
        pt.kappa0 = cfg.kappa0_min + static_cast<double>(i) * cfg.kappa0_step;
        const UnitaryMatrix u = floquet(KickedTopParams::checked(spin, pt.kappa0));
        double sum = 0.0;
        evolve(u, psi0, cfg.horizon - 1,
               [&](std::int64_t, const SymState &psi) { sum += linear_entropy(reduced_state(psi, 1)); });
        pt.numeric = sum / static_cast<double>(cfg.horizon);
        if (!closed) return;
        if (cfg.qubits == 3) {
            auto id = featured == Featured::zero ? exact3::FeaturedState::zero : exact3::FeaturedState::plus_y;
            auto avg = exact3::average_entropy(id, pt.kappa0);
            pt.closed = avg.value;
            pt.resonant = avg.resonant;
        } else {
            auto id = featured == Featured::zero ? exact4::FeaturedState::zero : exact4::FeaturedState::plus_y;
            auto avg = exact4::average_entropy(id, pt.kappa0);
            pt.closed = avg.value;
            pt.resonant = avg.resonant;
        }
    });

    std::vector<std::string> header{"kappa0", "S_avg_numeric"};
    if (closed) header.push_back("S_avg_closed");
    header.push_back("S_rmt_normalized");
    io::CsvWriter csv(out, header);
    for (const Point &pt : points) {
        if (pt.resonant) log << "note: kappa0 = " << format_double(pt.kappa0) << " is a resonance\n";
        std::vector<std::string> row{format_double(pt.kappa0), format_double(pt.numeric)};
        if (closed) row.push_back(format_double(pt.closed));
        row.push_back(format_double(pt.numeric / s_rmt));
        csv.row(row);
    }
    check_stream(out);
}

void cmd_tunnel(const TunnelConfig &cfg, std::ostream &report, std::ostream *series) {
    const exact4::TunnelingReport r = exact4::tunneling(cfg.kappa0);
    require(cfg.n_max >= 0, "n-max must be non-negative");
    require(cfg.samples >= 2, "samples must be at least 2");
    const std::int64_t n_round = std::llround(r.n_star);
    const std::int64_t n_half = std::llround(r.n_star / 2.0);

    nlohmann::ordered_json j;
    j["kappa0"] = r.kappa0;
    j["gamma_minus"] = r.gamma_minus;
    j["splitting"] = r.splitting;
    j["n_star"] = r.n_star;
    j["n_star_asymptotic"] = r.n_star_asymptotic;
    j["n_star_asymptotic_rounded"] = std::llround(r.n_star_asymptotic);
    j["ghz_time"] = r.ghz_time;
    j["overlap_minus_y_at_n_star"] = exact4::tunneling_overlap_series(cfg.kappa0, {n_round})[0];
    j["ghz_fidelity_at_ghz_time"] = exact4::tunneling_ghz_fidelity(cfg.kappa0, n_half);
    report << j.dump(2) << '\n';
    check_stream(report);

    if (!series) return;
    const std::int64_t n_max = cfg.n_max > 0 ? cfg.n_max : 2 * n_round;
    std::vector<std::int64_t> times;
    for (int i = 0; i < cfg.samples; ++i) {
        std::int64_t n = std::llround(static_cast<double>(n_max) * i / (cfg.samples - 1));
        if (times.empty() || n != times.back()) times.push_back(n);
    }
    std::vector<double> overlaps = exact4::tunneling_overlap_series(cfg.kappa0, times);
    io::CsvWriter csv(*series, {"n", "overlap_minus_y", "ghz_fidelity"});
    for (std::size_t i = 0; i < times.size(); ++i) {
        csv.row({std::to_string(times[i]), format_double(overlaps[i]),
                 format_double(exact4::tunneling_ghz_fidelity(cfg.kappa0, times[i]))});
    }
    check_stream(*series);
}

void cmd_husimi(const HusimiConfig &cfg, std::ostream &out) {
    require_finite(cfg.kappa0, "kappa0");
    require(cfg.steps >= 0, "steps must be non-negative");
    const Spin spin = checked_register(cfg.qubits, 2000);
    SymState psi = coherent_state(spin, cfg.state.point());
    if (cfg.steps > 0) psi = evolve(floquet(KickedTopParams::checked(spin, cfg.kappa0)), psi, cfg.steps);
    const SphereGrid g = husimi_grid(psi, cfg.n_theta, cfg.n_phi);
    io::CsvWriter csv(out, {"theta", "phi", "Q"});
    for (int i = 0; i < g.n_theta; ++i)
        for (int k = 0; k < g.n_phi; ++k)
            csv.row({format_double(g.theta(i)), format_double(g.phi(k)), format_double(g.values(i, k))});
    check_stream(out);
}

void cmd_classical(const ClassicalConfig &cfg, std::ostream &out) {
    using classical::ClassicalPoint;
    std::vector<ClassicalPoint> seeds;
    if (cfg.seeds == "marked") {
        seeds.push_back(classical::fixed_point());
        seeds.push_back(classical::period4_orbit().front());
    } else if (cfg.seeds == "lattice") {
        seeds = classical::seed_lattice(cfg.lattice_theta, cfg.lattice_phi);
    } else if (cfg.seeds != "none") {
        throw ValidationError("seeds must be marked, lattice or none");
    }
    require(cfg.points.size() % 2 == 0, "points must be theta,phi pairs");
    for (std::size_t i = 0; i < cfg.points.size(); i += 2) {
        seeds.push_back(ClassicalPoint::from_angles(BlochPoint::checked(cfg.points[i], cfg.points[i + 1])));
    }
    const auto rows = classical::portrait(seeds, cfg.kappa0, cfg.steps);
    io::CsvWriter csv(out, {"seed_index", "iteration", "X", "Y", "Z"});
    for (const auto &r : rows) {
        csv.row({std::to_string(r.seed_index), std::to_string(r.iteration), format_double(r.x), format_double(r.y),
                 format_double(r.z)});
    }
    check_stream(out);
}

void cmd_tomo_synthesize(const TomoConfig &cfg, std::ostream &expectations, std::ostream &populations) {
    require_finite(cfg.kappa0, "kappa0");
    require(cfg.steps >= 0, "steps must be non-negative");
    require(cfg.noise >= 0.0 && std::isfinite(cfg.noise), "noise must be a non-negative number");
    const Spin spin = checked_register(cfg.qubits, 6);
    const tomo::ReadoutModel readout = cfg.readout ? *cfg.readout : tomo::ReadoutModel::ideal(cfg.qubits);
    require(readout.qubits() == cfg.qubits, "readout model and register differ in qubit count");

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const std::string identity(static_cast<std::size_t>(cfg.qubits), 'I');

    io::CsvWriter ecsv(expectations, {"step", "label", "value"});
    std::vector<std::string> pheader{"step", "setting"};
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << cfg.qubits); ++b) pheader.push_back("p" + bit_string(b, cfg.qubits));
    io::CsvWriter pcsv(populations, pheader);

    const UnitaryMatrix u = floquet(KickedTopParams::checked(spin, cfg.kappa0));
    evolve(u, coherent_state(spin, cfg.state.point()), cfg.steps, [&](std::int64_t n, const SymState &psi) {
        const DensityMatrix rho = register_state(psi);
        for (const auto &[label, value] : tomo::expectations_from_state(rho)) {
            double v = value;
            if (label != identity && cfg.noise > 0.0) v = std::clamp(v + cfg.noise * normal(rng), -1.0, 1.0);
            if (label == identity) v = 1.0;
            ecsv.row({std::to_string(n), label, format_double(v)});
        }
        for (const std::string &setting : settings_of(cfg.qubits)) {
            Eigen::VectorXd p = readout.apply(tomo::setting_populations(rho, setting));
            std::vector<std::string> row{std::to_string(n), setting};
            for (Eigen::Index b = 0; b < p.size(); ++b) row.push_back(format_double(p(b)));
            pcsv.row(row);
        }
    });
    check_stream(expectations);
    check_stream(populations);
}

namespace {

std::map<std::int64_t, tomo::ExpectationTable> read_expectations(std::istream &in) {
    const io::CsvTable t = io::read_csv(in);
    const int cs = t.require_column("step"), cl = t.require_column("label"), cv = t.require_column("value");
    std::map<std::int64_t, tomo::ExpectationTable> out;
    for (const auto &row : t.rows) {
        auto &table = out[io::parse_int(row[cs])];
        require(table.emplace(row[cl], io::parse_double(row[cv])).second, "duplicate label " + row[cl]);
    }
    return out;
}

struct SettingPopulations {
    std::map<std::string, Eigen::VectorXd> settings;
    double min_corrected = 1.0;
};

std::map<std::int64_t, SettingPopulations> read_populations(std::istream &in, int qubits,
                                                            const tomo::ReadoutModel &readout) {
    const io::CsvTable t = io::read_csv(in);
    const int cs = t.require_column("step"), cset = t.require_column("setting");
    std::vector<int> cols;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << qubits); ++b) cols.push_back(t.require_column("p" + bit_string(b, qubits)));
    std::map<std::int64_t, SettingPopulations> out;
    for (const auto &row : t.rows) {
        Eigen::VectorXd p(static_cast<Eigen::Index>(cols.size()));
        for (std::size_t i = 0; i < cols.size(); ++i) p(static_cast<Eigen::Index>(i)) = io::parse_double(row[cols[i]]);
        require(std::abs(p.sum() - 1.0) <= 1e-6, "populations must sum to 1");
        Eigen::VectorXd corrected = readout.correct(p);
        auto &entry = out[io::parse_int(row[cs])];
        entry.min_corrected = std::min(entry.min_corrected, corrected.minCoeff());
        require(static_cast<int>(row[cset].size()) == qubits, "setting length must equal qubit count");
        require(entry.settings.emplace(row[cset], corrected).second, "duplicate setting " + row[cset]);
    }
    return out;
}

}  // namespace

void cmd_tomo(const TomoConfig &cfg, std::istream *expectations, std::istream *populations, std::ostream &out,
              std::ostream &log) {
    require(expectations || populations, "tomo needs an expectations or a populations file");
    require_finite(cfg.kappa0, "kappa0");
    const Spin spin = checked_register(cfg.qubits, 6);
    const tomo::ReadoutModel readout = cfg.readout ? *cfg.readout : tomo::ReadoutModel::ideal(cfg.qubits);
    require(readout.qubits() == cfg.qubits, "readout model and register differ in qubit count");

    struct Row {
        std::string source;
        DensityMatrix rho;
        std::optional<double> min_population;
    };
    std::map<std::int64_t, std::vector<Row>> rows;
    if (expectations) {
        for (const auto &[step, table] : read_expectations(*expectations)) {
            require(step >= 0, "steps must be non-negative");
            require(!table.empty() && static_cast<int>(table.begin()->first.size()) == cfg.qubits,
                    "labels must have one letter per qubit");
            rows[step].push_back({"expectations", tomo::reconstruct(table), std::nullopt});
        }
    }
    if (populations) {
        for (const auto &[step, pops] : read_populations(*populations, cfg.qubits, readout)) {
            require(step >= 0, "steps must be non-negative");
            if (pops.min_corrected < -1e-12) {
                log << "note: step " << step << " corrected populations reach " << format_double(pops.min_corrected)
                    << "\n";
            }
            rows[step].push_back(
                {"populations", tomo::reconstruct(tomo::expectations_from_settings(pops.settings)), pops.min_corrected});
        }
    }

    io::CsvWriter csv(out, {"step", "source", "fidelity", "S_mean", "C_mean", "S_mean_truth", "C_mean_truth",
                            "min_corrected_population"});
    const UnitaryMatrix u = floquet(KickedTopParams::checked(spin, cfg.kappa0));
    const std::int64_t last = rows.empty() ? 0 : rows.rbegin()->first;
    evolve(u, coherent_state(spin, cfg.state.point()), last, [&](std::int64_t n, const SymState &psi) {
        auto it = rows.find(n);
        if (it == rows.end()) return;
        const DensityMatrix truth = register_state(psi);
        const tomo::PipelineMetrics t = tomo::pipeline_metrics(truth, truth);
        for (const Row &r : it->second) {
            const tomo::PipelineMetrics m = tomo::pipeline_metrics(r.rho, truth);
            csv.row({std::to_string(n), r.source, format_double(m.fidelity), format_double(m.mean_entropy),
                     format_double(m.mean_concurrence), format_double(t.mean_entropy),
                     format_double(t.mean_concurrence), r.min_population ? format_double(*r.min_population) : ""});
        }
    });
    check_stream(out);
}

tomo::ReadoutModel load_readout_model(std::istream &in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("readout model is not valid JSON: ") + e.what());
    }
    require(j.is_object() && j.contains("f0") && j.contains("f1"), "readout model needs f0 and f1 arrays");
    try {
        return tomo::ReadoutModel::checked(j.at("f0").get<std::vector<double>>(), j.at("f1").get<std::vector<double>>());
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("readout model fields must be number arrays: ") + e.what());
    }
}

}  // namespace kicked_top::cli
