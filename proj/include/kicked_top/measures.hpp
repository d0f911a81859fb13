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

// Entanglement and comparison metrics: reduced states, linear entropy,
// concurrence, fidelity, time averages and the random-state baseline.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <thread>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "kicked_top/common.hpp"
#include "kicked_top/symspace.hpp"

namespace kicked_top {

/// Eigenvalues in [-kPsdTolerance, 0) count as zero.
inline constexpr double kPsdTolerance = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
  public:
    /// Validates Hermiticity and unit trace to `tol` and PSD to kPsdTolerance.
    static DensityMatrix checked(CMatrix m, double tol = 1e-12) {
        require(m.rows() == m.cols() && m.rows() > 0, "density matrix must be square");
        require((m - m.adjoint()).cwiseAbs().maxCoeff() <= tol, "density matrix must be Hermitian");
        require(std::abs(m.trace() - Complex(1.0)) <= tol, "density matrix must have unit trace");
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
        require(solver.eigenvalues().minCoeff() >= -kPsdTolerance, "density matrix must be PSD");
        return DensityMatrix(std::move(m));
    }

    /// No validation; for matrices built by construction (partial traces of states).
    static DensityMatrix trusted(CMatrix m) { return DensityMatrix(std::move(m)); }

    static DensityMatrix pure(const CVector &psi) {
        return DensityMatrix(psi * psi.adjoint() / psi.squaredNorm());
    }

    static DensityMatrix maximally_mixed(Eigen::Index dim) {
        return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
    }

    Eigen::Index dim() const { return m_.rows(); }
    const CMatrix &matrix() const { return m_; }
    Complex operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

  private:
    explicit DensityMatrix(CMatrix m) : m_(std::move(m)) {}
    CMatrix m_;
};

/// W with rho = W W^dagger for the one- or two-qubit marginal of a symmetric
/// state. Column l collects the amplitudes that leave l excitations on the
/// traced-out qubits, so no eigensolver is involved.
inline CMatrix reduced_factor(const SymState &psi, int keep) {
    require(keep == 1 || keep == 2, "keep must be 1 or 2");
    const std::int64_t n = psi.spin().twice();
    require(n >= keep, "cannot keep more qubits than the register holds");
    const double nn = static_cast<double>(n);
    if (keep == 1) {
        // D_k = sqrt((N-k)/N) |0> D'_k + sqrt(k/N) |1> D'_{k-1}
        CMatrix w = CMatrix::Zero(2, n);
        for (std::int64_t l = 0; l < n; ++l) {
            w(0, l) = psi[l] * std::sqrt((nn - l) / nn);
            w(1, l) = psi[l + 1] * std::sqrt((l + 1) / nn);
        }
        return w;
    }
    // Two kept qubits, basis |00>,|01>,|10>,|11>; the rest holds l excitations.
    const double denom = nn * (nn - 1.0);
    CMatrix w = CMatrix::Zero(4, n - 1);
    for (std::int64_t l = 0; l + 2 <= n; ++l) {
        double k0 = static_cast<double>(l);
        double k1 = static_cast<double>(l + 1);
        double k2 = static_cast<double>(l + 2);
        w(0, l) = psi[l] * std::sqrt((nn - k0) * (nn - k0 - 1.0) / denom);
        Complex one = psi[l + 1] * std::sqrt(k1 * (nn - k1) / denom);
        w(1, l) = one;
        w(2, l) = one;
        w(3, l) = psi[l + 2] * std::sqrt(k2 * (k2 - 1.0) / denom);
    }
    return w;
}

/// Single-qubit (keep = 1) or two-qubit (keep = 2) reduced state. Any choice of
/// qubits is equivalent by permutation symmetry.
inline DensityMatrix reduced_state(const SymState &psi, int keep) {
    CMatrix w = reduced_factor(psi, keep);
    return DensityMatrix::trusted(w * w.adjoint());
}

/// Explicit partial trace of a 2^n x 2^n register matrix onto `keep` (0-based
/// qubit positions, qubit 0 = most significant bit). The kept qubits appear in
/// the order given.
inline DensityMatrix partial_trace(const CMatrix &rho, int n_qubits, const std::vector<int> &keep) {
    require(n_qubits >= 1 && n_qubits <= 20, "qubit count out of range");
    const Eigen::Index full = Eigen::Index{1} << n_qubits;
    require(rho.rows() == full && rho.cols() == full, "matrix size must be 2^n");
    std::vector<int> rest;
    for (int q = 0; q < n_qubits; ++q) {
        require(std::count(keep.begin(), keep.end(), q) <= 1, "duplicate kept qubit");
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
    }
    require(!keep.empty() && rest.size() + keep.size() == static_cast<std::size_t>(n_qubits),
            "kept qubits out of range");
    auto compose = [&](std::uint64_t kept_bits, std::uint64_t rest_bits) {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < keep.size(); ++i) {
            std::uint64_t bit = (kept_bits >> (keep.size() - 1 - i)) & 1u;
            idx |= bit << (n_qubits - 1 - keep[i]);
        }
        for (std::size_t i = 0; i < rest.size(); ++i) {
            std::uint64_t bit = (rest_bits >> (rest.size() - 1 - i)) & 1u;
            idx |= bit << (n_qubits - 1 - rest[i]);
        }
        return static_cast<Eigen::Index>(idx);
    };
    const Eigen::Index dk = Eigen::Index{1} << keep.size();
    const std::uint64_t dr = std::uint64_t{1} << rest.size();
    CMatrix out = CMatrix::Zero(dk, dk);
    for (Eigen::Index a = 0; a < dk; ++a) {
        for (Eigen::Index b = 0; b < dk; ++b) {
            Complex sum = 0.0;
            for (std::uint64_t r = 0; r < dr; ++r) {
                sum += rho(compose(a, r), compose(b, r));
            }
            out(a, b) = sum;
        }
    }
    return DensityMatrix::trusted(std::move(out));
}

/// 1 - Tr(rho^2).
inline double linear_entropy(const DensityMatrix &rho) {
    return 1.0 - rho.matrix().cwiseAbs2().sum();
}

/// A with rho = A A^dagger, from the eigendecomposition with tiny negatives clipped.
inline CMatrix hermitian_factor(const CMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho);
    Eigen::VectorXd ev = solver.eigenvalues();
    require(ev.minCoeff() >= -kPsdTolerance, "matrix is not positive semidefinite");
    Eigen::VectorXd root = ev.cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * root.cast<Complex>().asDiagonal();
}

inline CMatrix sigma_y_sigma_y() {
    CMatrix yy = CMatrix::Zero(4, 4);
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    return yy;
}

/// Wootters concurrence of rho = W W^dagger. The square roots of the
/// eigenvalues of rho (yy) rho* (yy) are the singular values of W^T (yy) W,
/// which avoids taking square roots of near-zero eigenvalues.
inline double concurrence_from_factor(const CMatrix &w) {
    require(w.rows() == 4, "concurrence needs a two-qubit factor");
    CMatrix tau = w.transpose() * sigma_y_sigma_y() * w;
    Eigen::JacobiSVD<CMatrix> svd(tau);
    Eigen::VectorXd s = svd.singularValues();  // descending
    double c = s.size() > 0 ? s(0) : 0.0;
    for (Eigen::Index i = 1; i < s.size(); ++i) c -= s(i);
    return std::max(0.0, c);
}

/// General Wootters concurrence; conjugation in the computational basis.
inline double concurrence(const DensityMatrix &rho12) {
    require(rho12.dim() == 4, "concurrence needs a 4x4 density matrix");
    return concurrence_from_factor(hermitian_factor(rho12.matrix()));
}

/// Two-qubit concurrence of a symmetric pure state, via its reduced factor.
inline double concurrence(const SymState &psi) { return concurrence_from_factor(reduced_factor(psi, 2)); }

/// True when only the diagonal and anti-diagonal are nonzero (within tol).
inline bool is_x_state(const DensityMatrix &rho, double tol = 1e-12) {
    if (rho.dim() != 4) return false;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            if (r != c && r + c != 3 && std::abs(rho(r, c)) > tol) return false;
        }
    }
    return true;
}

/// Closed form for X states: 2 max(0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)).
inline double concurrence_x_state(const DensityMatrix &rho) {
    require(is_x_state(rho, 1e-10), "matrix is not an X state");
    auto diag = [&](int i) { return std::max(0.0, rho(i, i).real()); };
    double a = std::abs(rho(0, 3)) - std::sqrt(diag(1) * diag(2));
    double b = std::abs(rho(1, 2)) - std::sqrt(diag(0) * diag(3));
    return 2.0 * std::max({0.0, a, b});
}

/// Uhlmann fidelity Tr sqrt(sqrt(rt) re sqrt(rt)), computed as the nuclear norm
/// of A_t^dagger A_e for factors rho = A A^dagger.
inline double fidelity(const DensityMatrix &rho_t, const DensityMatrix &rho_e) {
    require(rho_t.dim() == rho_e.dim(), "fidelity needs equal dimensions");
    CMatrix m = hermitian_factor(rho_t.matrix()).adjoint() * hermitian_factor(rho_e.matrix());
    Eigen::JacobiSVD<CMatrix> svd(m);
    return std::clamp(svd.singularValues().sum(), 0.0, 1.0);
}

/// Mean of the first values.size() entries.
inline double time_average(std::span<const double> values) {
    require(!values.empty(), "time average of an empty series");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

/// Streaming mean of value(n) over n = 0..count-1 for which keep(n) holds.
/// The |000> 3-qubit average is taken over even n only (keep = n % 2 == 0);
/// the step rule makes the unfiltered mean agree to O(1/count).
inline double time_average(std::int64_t count, const std::function<double(std::int64_t)> &value,
                           const std::function<bool(std::int64_t)> &keep = {}) {
    require(count >= 1, "time average needs at least one sample");
    double sum = 0.0;
    std::int64_t used = 0;
    for (std::int64_t n = 0; n < count; ++n) {
        if (keep && !keep(n)) continue;
        sum += value(n);
        ++used;
    }
    require(used >= 1, "filter rejected every sample");
    return sum / static_cast<double>(used);
}

/// Ensemble-mean single-qubit linear entropy of random symmetric N-qubit states.
inline double rmt_average(std::int64_t n_qubits) {
    require(n_qubits >= 2, "random-state average needs N >= 2");
    return static_cast<double>(n_qubits - 1) / (2.0 * static_cast<double>(n_qubits));
}

inline constexpr std::int64_t kHaarChunk = 256;

/// Mean single-qubit linear entropy over `count` Haar-random states of the
/// symmetric subspace. Samples are drawn in fixed chunks, each seeded from
/// (seed, chunk index), so the result does not depend on `threads`.
inline double haar_symmetric_sample(Spin spin, std::int64_t count, std::uint64_t seed, int threads = 1) {
    require(count >= 1, "sample count must be positive");
    require(spin.twice() >= 2, "need at least two qubits");
    const std::int64_t chunks = (count + kHaarChunk - 1) / kHaarChunk;
    std::vector<double> sums(static_cast<std::size_t>(chunks), 0.0);
    auto run_chunk = [&](std::int64_t c) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal;
        const std::int64_t begin = c * kHaarChunk;
        const std::int64_t end = std::min(count, begin + kHaarChunk);
        double sum = 0.0;
        CVector v(spin.dim());
        for (std::int64_t i = begin; i < end; ++i) {
            for (Eigen::Index k = 0; k < v.size(); ++k) {
                double re = normal(rng);
                double im = normal(rng);
                v(k) = Complex(re, im);
            }
            sum += linear_entropy(reduced_state(SymState::normalized(spin, v), 1));
        }
        sums[static_cast<std::size_t>(c)] = sum;
    };
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(chunks)));
    if (workers == 1) {
        for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::int64_t c = w; c < chunks; c += workers) run_chunk(c);
            });
        }
        for (auto &t : pool) t.join();
    }
    double total = 0.0;
    for (double s : sums) total += s;
    return total / static_cast<double>(count);
}

}  // namespace kicked_top
