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

// Spin-j kicked top on the permutation-symmetric (Dicke) subspace.
//
// Basis convention: index k = 0..2j holds |j, m = j - k>, i.e. m descends from
// j and k counts the qubits in |1>. Jz |j,m> = m |j,m>, and |0> is spin up, so
// |j, j> is the all-zeros register.

#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "kicked_top/common.hpp"

namespace kicked_top {

struct KickedTopParams {
    Spin spin;
    double kappa0 = 0.0;
    double p = pi / 2;

    static KickedTopParams checked(Spin spin, double kappa0, double p = pi / 2) {
        require_finite(kappa0, "kappa0");
        require_finite(p, "p");
        return {spin, kappa0, p};
    }

    std::int64_t dim() const { return spin.dim(); }
};

/// Normalized amplitude vector over the Dicke basis.
class SymState {
  public:
    /// Validates length and normalization (|norm - 1| <= 1e-12).
    static SymState from_amplitudes(Spin spin, CVector amps) {
        require(amps.size() == spin.dim(), "amplitude vector length must be 2j+1");
        require(std::abs(amps.norm() - 1.0) <= 1e-12, "state must be normalized");
        return SymState(spin, std::move(amps));
    }

    /// Normalizes a nonzero vector.
    static SymState normalized(Spin spin, CVector amps) {
        require(amps.size() == spin.dim(), "amplitude vector length must be 2j+1");
        double norm = amps.norm();
        require(norm > 0.0 && std::isfinite(norm), "cannot normalize a zero vector");
        return SymState(spin, amps / norm);
    }

    /// Dicke state |j, j - k>.
    static SymState dicke(Spin spin, std::int64_t k) {
        require(k >= 0 && k < spin.dim(), "Dicke index out of range");
        CVector v = CVector::Zero(spin.dim());
        v(k) = 1.0;
        return SymState(spin, std::move(v));
    }

    Spin spin() const { return spin_; }
    std::int64_t dim() const { return spin_.dim(); }
    const CVector &amps() const { return amps_; }
    Complex operator[](std::int64_t k) const { return amps_(k); }

    /// |norm - 1|; evolution never renormalizes, so this is the accumulated drift.
    double norm_drift() const { return std::abs(amps_.norm() - 1.0); }

    Complex overlap(const SymState &other) const { return amps_.dot(other.amps_); }

  private:
    SymState(Spin spin, CVector amps) : spin_(spin), amps_(std::move(amps)) {}

    friend class UnitaryMatrix;

    Spin spin_;
    CVector amps_;
};

/// Dense unitary on the Dicke subspace.
class UnitaryMatrix {
  public:
    explicit UnitaryMatrix(CMatrix entries) : entries_(std::move(entries)) {
        require(entries_.rows() == entries_.cols(), "unitary must be square");
    }

    std::int64_t dim() const { return entries_.rows(); }
    const CMatrix &entries() const { return entries_; }

    /// ||U^dagger U - I||_F
    double unitarity_defect() const {
        return (entries_.adjoint() * entries_ - CMatrix::Identity(dim(), dim())).norm();
    }

    SymState apply(const SymState &psi) const {
        require(psi.dim() == dim(), "state and unitary dimensions differ");
        return SymState(psi.spin_, entries_ * psi.amps_);
    }

  private:
    CMatrix entries_;
};

struct CollectiveOps {
    CMatrix jx, jy, jz;
};

inline CollectiveOps collective_ops(Spin spin) {
    const std::int64_t d = spin.dim();
    const double j = spin.value();
    CMatrix jplus = CMatrix::Zero(d, d);
    // J+ |j,m> = sqrt(j(j+1) - m(m+1)) |j,m+1>; m+1 sits at index k-1.
    for (std::int64_t k = 1; k < d; ++k) {
        double m = spin.m_of_index(k);
        jplus(k - 1, k) = std::sqrt(j * (j + 1) - m * (m + 1));
    }
    CMatrix jminus = jplus.adjoint();
    CollectiveOps ops;
    ops.jx = 0.5 * (jplus + jminus);
    ops.jy = (jplus - jminus) / Complex(0.0, 2.0);
    ops.jz = CMatrix::Zero(d, d);
    for (std::int64_t k = 0; k < d; ++k) {
        ops.jz(k, k) = spin.m_of_index(k);
    }
    return ops;
}

/// exp(-i angle Jy) from one Hermitian eigendecomposition of Jy.
inline CMatrix rotation_y(Spin spin, double angle) {
    CollectiveOps ops = collective_ops(spin);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(ops.jy);
    const CMatrix &v = solver.eigenvectors();
    CVector phases = (-1i * angle * solver.eigenvalues().cast<Complex>()).array().exp();
    return v * phases.asDiagonal() * v.adjoint();
}

/// Floquet map U = exp(-i (kappa0 / 2j) Jz^2) exp(-i p Jy).
///
/// This is the qubit Ising form times the global phase floquet_global_phase(kappa0).
inline UnitaryMatrix floquet(const KickedTopParams &params) {
    const Spin spin = params.spin;
    CMatrix rot = rotation_y(spin, params.p);
    const double twist = params.kappa0 / (2.0 * spin.value());
    for (std::int64_t k = 0; k < spin.dim(); ++k) {
        double m = spin.m_of_index(k);
        rot.row(k) *= std::exp(Complex(0.0, -twist * m * m));
    }
    return UnitaryMatrix(std::move(rot));
}

/// Phase relating floquet() to exp(-i k0/4j sum_{l<l'} zz) exp(-i p/2 sum y).
inline Complex floquet_global_phase(double kappa0) { return std::exp(Complex(0.0, -kappa0 / 4.0)); }

/// SU(2) coherent state: tensor power of cos(theta0/2)|0> + e^{-i phi0} sin(theta0/2)|1>.
inline SymState coherent_state(Spin spin, BlochPoint point) {
    require_finite(point.theta0, "theta0");
    require_finite(point.phi0, "phi0");
    const std::int64_t n = spin.twice();
    const double c = std::cos(point.theta0 / 2);
    const double s = std::sin(point.theta0 / 2);
    CVector amps(spin.dim());
    const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
    for (std::int64_t k = 0; k < spin.dim(); ++k) {
        double log_binom = lg_n - std::lgamma(static_cast<double>(k) + 1.0) -
                           std::lgamma(static_cast<double>(n - k) + 1.0);
        double mag = std::exp(0.5 * log_binom) * std::pow(c, static_cast<double>(n - k)) *
                     std::pow(s, static_cast<double>(k));
        amps(k) = mag * std::exp(Complex(0.0, -point.phi0 * static_cast<double>(k)));
    }
    return SymState::normalized(spin, std::move(amps));
}

/// Returns U^n psi0. When `observer` is set it sees (n, psi_n) for n = 0..steps;
/// nothing beyond the current state is stored.
inline SymState evolve(const UnitaryMatrix &u, const SymState &psi0, std::int64_t steps,
                       const std::function<void(std::int64_t, const SymState &)> &observer = {}) {
    require(steps >= 0, "step count must be non-negative");
    require(psi0.dim() == u.dim(), "state and unitary dimensions differ");
    SymState psi = psi0;
    if (observer) observer(0, psi);
    for (std::int64_t n = 1; n <= steps; ++n) {
        psi = u.apply(psi);
        if (observer) observer(n, psi);
    }
    return psi;
}

/// Full trajectory psi_0..psi_steps, for callers that opt in to storing it.
inline std::vector<SymState> trajectory(const UnitaryMatrix &u, const SymState &psi0,
                                        std::int64_t steps) {
    std::vector<SymState> out;
    out.reserve(static_cast<std::size_t>(steps + 1));
    evolve(u, psi0, steps, [&](std::int64_t, const SymState &s) { out.push_back(s); });
    return out;
}

/// Parity operator (tensor power of sigma_y) in the Dicke basis:
/// maps |k> to i^{N-2k} |N-k> for N = 2j qubits.
inline CMatrix parity_operator(Spin spin) {
    const std::int64_t n = spin.twice();
    CMatrix pi_op = CMatrix::Zero(spin.dim(), spin.dim());
    for (std::int64_t k = 0; k <= n; ++k) {
        std::int64_t e = ((n - 2 * k) % 4 + 4) % 4;
        static constexpr Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        pi_op(n - k, k) = powers[e];
    }
    return pi_op;
}

inline double parity_expectation(const SymState &psi) {
    return psi.amps().dot(parity_operator(psi.spin()) * psi.amps()).real();
}

inline constexpr std::int64_t kMaxRegisterQubits = 14;

namespace detail {

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

}  // namespace detail

/// Expands a symmetric state into the 2^{2j} qubit register. Bit order: qubit 1
/// is the most significant bit of the basis index.
inline CVector symmetric_to_qubits(const SymState &psi) {
    const std::int64_t n = psi.spin().twice();
    if (n > kMaxRegisterQubits) {
        throw SizeLimitError("register expansion limited to 2j <= 14");
    }
    std::vector<double> norm(static_cast<std::size_t>(n + 1));
    for (std::int64_t k = 0; k <= n; ++k) {
        double binom = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
        norm[static_cast<std::size_t>(k)] = 1.0 / std::sqrt(std::round(binom));
    }
    const std::uint64_t size = std::uint64_t{1} << n;
    CVector out(static_cast<Eigen::Index>(size));
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        int k = detail::popcount(idx);
        out(static_cast<Eigen::Index>(idx)) = psi[k] * norm[static_cast<std::size_t>(k)];
    }
    return out;
}

/// Projects a register vector onto the Dicke basis (amplitude <D_k|v>), without
/// renormalizing. Inverse of symmetric_to_qubits on the symmetric subspace.
inline CVector qubits_to_symmetric(const CVector &register_amps, Spin spin) {
    const std::int64_t n = spin.twice();
    require(register_amps.size() == (Eigen::Index{1} << n), "register length must be 2^{2j}");
    CVector out = CVector::Zero(spin.dim());
    for (Eigen::Index idx = 0; idx < register_amps.size(); ++idx) {
        out(detail::popcount(static_cast<std::uint64_t>(idx))) += register_amps(idx);
    }
    for (std::int64_t k = 0; k <= n; ++k) {
        double binom = std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
        out(k) /= std::sqrt(binom);
    }
    return out;
}

}  // namespace kicked_top
