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

// Post-processing of few-qubit tomography data: readout-error correction,
// linear-inversion reconstruction from Pauli expectations, projection onto
// density matrices, and the averaged entanglement metrics.
//
// Labels are strings over {I, X, Y, Z}; character q acts on qubit q, and
// qubit 0 is the most significant bit of a register index.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "kicked_top/common.hpp"
#include "kicked_top/measures.hpp"

namespace kicked_top::tomo {

/// Per-qubit readout fidelities: f0 = P(read 0 | prepared 0), f1 = P(read 1 | prepared 1).
/// F_i = [[f0, 1-f1], [1-f0, f1]], F = F_0 (x) F_1 (x) ..., and measured
/// populations are corrected as p_int = F^{-1} p_m.
class ReadoutModel {
  public:
    static ReadoutModel checked(std::vector<double> f0, std::vector<double> f1) {
        require(!f0.empty() && f0.size() == f1.size(), "f0 and f1 must list one value per qubit");
        require(f0.size() <= 10, "readout model limited to 10 qubits");
        for (std::size_t i = 0; i < f0.size(); ++i) {
            require(std::isfinite(f0[i]) && std::isfinite(f1[i]), "fidelities must be finite");
            require(f0[i] > 0.0 && f0[i] <= 1.0 && f1[i] > 0.0 && f1[i] <= 1.0, "fidelities must lie in (0, 1]");
            require(f0[i] + f1[i] > 1.0, "readout matrix is singular (need f0 + f1 > 1)");
        }
        return ReadoutModel(std::move(f0), std::move(f1));
    }

    static ReadoutModel ideal(int qubits) {
        return checked(std::vector<double>(qubits, 1.0), std::vector<double>(qubits, 1.0));
    }

    int qubits() const { return static_cast<int>(f0_.size()); }
    const std::vector<double> &f0() const { return f0_; }
    const std::vector<double> &f1() const { return f1_; }

    Eigen::Matrix2d qubit_matrix(int q) const {
        Eigen::Matrix2d m;
        m << f0_[q], 1.0 - f1_[q], 1.0 - f0_[q], f1_[q];
        return m;
    }

    /// Dense F; for tests and small registers.
    Eigen::MatrixXd matrix() const {
        Eigen::MatrixXd f = Eigen::MatrixXd::Ones(1, 1);
        for (int q = 0; q < qubits(); ++q) {
            Eigen::MatrixXd next = Eigen::kroneckerProduct(f, qubit_matrix(q));
            f = std::move(next);
        }
        return f;
    }

    /// F p, one qubit factor at a time.
    Eigen::VectorXd apply(const Eigen::VectorXd &p) const { return apply_factors(p, false); }

    /// F^{-1} p, using the per-qubit 2x2 inverses. Entries may come out
    /// slightly negative; they are passed through.
    Eigen::VectorXd correct(const Eigen::VectorXd &p) const { return apply_factors(p, true); }

  private:
    ReadoutModel(std::vector<double> f0, std::vector<double> f1) : f0_(std::move(f0)), f1_(std::move(f1)) {}

    Eigen::VectorXd apply_factors(const Eigen::VectorXd &p, bool inverse) const {
        const int n = qubits();
        require(p.size() == (Eigen::Index{1} << n), "population vector length must be 2^qubits");
        Eigen::VectorXd out = p;
        for (int q = 0; q < n; ++q) {
            Eigen::Matrix2d m = inverse ? qubit_matrix(q).inverse().eval() : qubit_matrix(q);
            const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
            for (Eigen::Index i = 0; i < out.size(); ++i) {
                if (i & stride) continue;
                double a = out(i);
                double b = out(i + stride);
                out(i) = m(0, 0) * a + m(0, 1) * b;
                out(i + stride) = m(1, 0) * a + m(1, 1) * b;
            }
        }
        return out;
    }

    std::vector<double> f0_;
    std::vector<double> f1_;
};

/// Reference three-qubit readout fidelities (also data/readout_model.json).
inline ReadoutModel reference_readout_model() {
    return ReadoutModel::checked({0.98, 0.98, 0.96}, {0.92, 0.94, 0.87});
}

inline CMatrix2 pauli(char c) {
    CMatrix2 m;
    switch (c) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw ValidationError(std::string("unknown Pauli letter '") + c + "'");
    }
    return m;
}

inline CMatrix pauli_product(const std::string &label) {
    require(!label.empty(), "empty Pauli label");
    CMatrix out = CMatrix::Ones(1, 1);
    for (char c : label) {
        CMatrix next = Eigen::kroneckerProduct(out, pauli(c));
        out = std::move(next);
    }
    return out;
}

/// All 4^L labels in lexicographic I < X < Y < Z order.
inline std::vector<std::string> pauli_labels(int qubits) {
    require(qubits >= 1 && qubits <= 6, "label set limited to 6 qubits");
    static constexpr char letters[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<std::string> out;
    const std::size_t total = std::size_t{1} << (2 * qubits);
    out.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        std::string s(static_cast<std::size_t>(qubits), 'I');
        for (int q = 0; q < qubits; ++q) s[q] = letters[(code >> (2 * (qubits - 1 - q))) & 3u];
        out.push_back(std::move(s));
    }
    return out;
}

using ExpectationTable = std::map<std::string, double>;

inline int qubits_of_dim(Eigen::Index dim) {
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) ++n;
    require((Eigen::Index{1} << n) == dim && n >= 1, "matrix size must be a power of two");
    return n;
}

/// Tr(rho P) for every Pauli product.
inline ExpectationTable expectations_from_state(const DensityMatrix &rho) {
    const int n = qubits_of_dim(rho.dim());
    ExpectationTable table;
    for (const std::string &label : pauli_labels(n)) {
        table[label] = (rho.matrix() * pauli_product(label)).trace().real();
    }
    return table;
}

/// Nearest density matrix in the 2-norm: normalize the trace, then zero the
/// most negative eigenvalues and spread their weight uniformly over the rest
/// until the spectrum is non-negative.
inline DensityMatrix project_psd(const CMatrix &raw) {
    require(raw.rows() == raw.cols() && raw.rows() > 0, "matrix must be square");
    require((raw - raw.adjoint()).cwiseAbs().maxCoeff() <= 1e-8, "matrix must be Hermitian");
    CMatrix h = 0.5 * (raw + raw.adjoint());
    const double tr = h.trace().real();
    require(tr > 0.0, "matrix must have positive trace");
    h /= tr;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    Eigen::VectorXd mu = solver.eigenvalues();  // ascending
    const Eigen::Index d = mu.size();
    Eigen::Index lo = 0;
    double acc = 0.0;
    while (lo < d && mu(lo) + acc / static_cast<double>(d - lo) < 0.0) {
        acc += mu(lo);
        mu(lo) = 0.0;
        ++lo;
    }
    for (Eigen::Index i = lo; i < d; ++i) mu(i) += acc / static_cast<double>(d - lo);
    const CMatrix &v = solver.eigenvectors();
    CMatrix out = v * mu.cast<Complex>().asDiagonal() * v.adjoint();
    return DensityMatrix::trusted(0.5 * (out + out.adjoint()));
}

/// Baseline: zero negative eigenvalues and rescale the trace.
inline DensityMatrix clip_psd(const CMatrix &raw) {
    CMatrix h = 0.5 * (raw + raw.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    Eigen::VectorXd mu = solver.eigenvalues().cwiseMax(0.0);
    require(mu.sum() > 0.0, "matrix has no positive eigenvalue");
    mu /= mu.sum();
    const CMatrix &v = solver.eigenvectors();
    return DensityMatrix::trusted(v * mu.cast<Complex>().asDiagonal() * v.adjoint());
}

/// rho_raw = 2^-L sum_P <P> P over the complete label set, then project_psd.
inline DensityMatrix reconstruct(const ExpectationTable &table) {
    require(!table.empty(), "expectation table is empty");
    const int n = static_cast<int>(table.begin()->first.size());
    const std::vector<std::string> labels = pauli_labels(n);
    require(table.size() == labels.size(), "expectation table must list every Pauli product exactly once");
    const Eigen::Index dim = Eigen::Index{1} << n;
    CMatrix raw = CMatrix::Zero(dim, dim);
    for (const std::string &label : labels) {
        auto it = table.find(label);
        require(it != table.end(), "missing expectation for " + label);
        require(std::isfinite(it->second) && std::abs(it->second) <= 1.0 + 1e-12,
                "expectation of " + label + " must lie in [-1, 1]");
        raw += it->second * pauli_product(label);
    }
    require(std::abs(table.at(std::string(static_cast<std::size_t>(n), 'I')) - 1.0) <= 1e-9,
            "identity expectation must be 1");
    return project_psd(raw / static_cast<double>(dim));
}

/// Outcome probabilities when every qubit q is measured in the eigenbasis of
/// setting[q] (X, Y or Z). Outcome bit 0 means eigenvalue +1.
inline Eigen::VectorXd setting_populations(const DensityMatrix &rho, const std::string &setting) {
    const int n = qubits_of_dim(rho.dim());
    require(static_cast<int>(setting.size()) == n, "setting length must equal qubit count");
    const Eigen::Index dim = rho.dim();
    Eigen::VectorXd p(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        CMatrix proj = CMatrix::Ones(1, 1);
        for (int q = 0; q < n; ++q) {
            require(setting[q] == 'X' || setting[q] == 'Y' || setting[q] == 'Z', "setting letters must be X, Y or Z");
            double sign = ((b >> (n - 1 - q)) & 1) ? -1.0 : 1.0;
            CMatrix2 pq = 0.5 * (pauli('I') + sign * pauli(setting[q]));
            CMatrix next = Eigen::kroneckerProduct(proj, pq);
            proj = std::move(next);
        }
        p(b) = (rho.matrix() * proj).trace().real();
    }
    return p;
}

/// Pauli expectations from populations recorded in the full set of 3^L
/// settings. Each label is averaged over every setting that measures it.
inline ExpectationTable expectations_from_settings(const std::map<std::string, Eigen::VectorXd> &settings) {
    require(!settings.empty(), "no measurement settings");
    const int n = static_cast<int>(settings.begin()->first.size());
    require(settings.size() == static_cast<std::size_t>(std::pow(3, n)), "populations must cover all 3^L settings");
    ExpectationTable table;
    for (const std::string &label : pauli_labels(n)) {
        double sum = 0.0;
        int count = 0;
        for (const auto &[setting, p] : settings) {
            require(p.size() == (Eigen::Index{1} << n), "population vector length must be 2^qubits");
            bool compatible = true;
            for (int q = 0; q < n; ++q) compatible = compatible && (label[q] == 'I' || label[q] == setting[q]);
            if (!compatible) continue;
            double e = 0.0;
            for (Eigen::Index b = 0; b < p.size(); ++b) {
                int parity = 0;
                for (int q = 0; q < n; ++q)
                    if (label[q] != 'I') parity ^= static_cast<int>((b >> (n - 1 - q)) & 1);
                e += parity ? -p(b) : p(b);
            }
            sum += e;
            ++count;
        }
        table[label] = std::clamp(sum / count, -1.0, 1.0);
    }
    return table;
}

struct PipelineMetrics {
    double fidelity = 0.0;
    double mean_entropy = 0.0;      // over single-qubit marginals of rho_e
    double mean_concurrence = 0.0;  // over two-qubit marginals of rho_e
};

/// Averages over every single-qubit and every pair reduction, by explicit
/// partial trace; no permutation symmetry is assumed.
inline PipelineMetrics pipeline_metrics(const DensityMatrix &rho_e, const DensityMatrix &rho_t) {
    require(rho_e.dim() == rho_t.dim(), "experimental and theoretical states differ in size");
    const int n = qubits_of_dim(rho_e.dim());
    require(n >= 2, "metrics need at least two qubits");
    PipelineMetrics m;
    m.fidelity = fidelity(rho_t, rho_e);
    for (int q = 0; q < n; ++q) m.mean_entropy += linear_entropy(partial_trace(rho_e.matrix(), n, {q}));
    m.mean_entropy /= n;
    int pairs = 0;
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            m.mean_concurrence += concurrence(partial_trace(rho_e.matrix(), n, {a, b}));
            ++pairs;
        }
    }
    m.mean_concurrence /= pairs;
    return m;
}

}  // namespace kicked_top::tomo
