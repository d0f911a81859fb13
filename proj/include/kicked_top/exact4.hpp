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

// Closed-form four-qubit kicked top (p = pi/2).
//
// Parity basis of the five symmetric states:
//   phi1(+-) = (|W> -+ |Wbar>)/sqrt2      phi2(+-) = (|0000> +- |1111>)/sqrt2
//   phi3(+)  = |D_2>  (two excitations)
// The Floquet map splits as 1 + 2 + 2: phi1+ has eigenvalue -1 for every
// kappa0 (the singlet sector), U_+ acts on {phi2+, phi3+} and U_- on
// {phi1-, phi2-}. Here kappa = kappa0/2 and chi = sin(kappa)/2.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "kicked_top/chebyshev.hpp"
#include "kicked_top/common.hpp"
#include "kicked_top/symspace.hpp"

namespace kicked_top::exact4 {

enum class Sector { singlet, plus, minus };

enum class FeaturedState { zero, plus_y };

inline const Spin kSpin = Spin::qubits(4);

struct ParityBlockSpec {
    double kappa0 = 0.0;
    double kappa = 0.0;
    double chi = 0.0;

    static ParityBlockSpec from_kappa0(double kappa0) {
        require_finite(kappa0, "kappa0");
        return {kappa0, kappa0 / 2.0, std::sin(kappa0 / 2.0) / 2.0};
    }

    /// delta(n) = n (2 pi - kappa0) / 4
    double delta(std::int64_t n) const { return static_cast<double>(n) * (2.0 * pi - kappa0) / 4.0; }
};

/// U_+^n = e^{-in(pi + kappa)/2} [[alpha, i conj(beta)], [i beta, conj(alpha)]]
struct PlusPower {
    std::int64_t n = 0;
    Complex phase{1.0, 0.0};
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};

    CMatrix2 matrix() const {
        CMatrix2 m;
        m << alpha, 1i * std::conj(beta), 1i * beta, std::conj(alpha);
        return phase * m;
    }
};

inline PlusPower plus_power(double kappa0, std::int64_t n) {
    require(n >= 0, "block power needs n >= 0");
    const ParityBlockSpec spec = ParityBlockSpec::from_kappa0(kappa0);
    const ChebyshevPair c = chebyshev_pair(spec.chi, n);
    PlusPower p;
    p.n = n;
    p.phase = std::exp(Complex(0.0, -0.5 * static_cast<double>(n) * (pi + spec.kappa)));
    p.alpha = Complex(c.t, 0.5 * c.u_prev * std::cos(spec.kappa));
    p.beta = (std::sqrt(3.0) / 2.0) * c.u_prev * std::exp(Complex(0.0, spec.kappa));
    return p;
}

/// U_-^n: period two up to the phase e^{-3 i n kappa / 4}.
inline CMatrix2 minus_power(double kappa0, std::int64_t n) {
    require(n >= 0, "block power needs n >= 0");
    const double kappa = kappa0 / 2.0;
    // cos(n pi/2), sin(n pi/2) taken exactly from n mod 4.
    static constexpr double cos_q[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double sin_q[4] = {0.0, 1.0, 0.0, -1.0};
    const double c = cos_q[n % 4];
    const double s = sin_q[n % 4];
    const Complex e = std::exp(Complex(0.0, 0.75 * kappa));
    CMatrix2 m;
    m << c, e * s, -std::conj(e) * s, c;
    return std::exp(Complex(0.0, -0.75 * static_cast<double>(n) * kappa)) * m;
}

inline Complex singlet_power(std::int64_t n) {
    require(n >= 0, "block power needs n >= 0");
    return (n & 1) ? Complex(-1.0) : Complex(1.0);
}

/// n-th power restricted to one sector; 1x1 for the singlet.
inline CMatrix block_power(double kappa0, std::int64_t n, Sector sector) {
    switch (sector) {
        case Sector::singlet: {
            CMatrix m(1, 1);
            m(0, 0) = singlet_power(n);
            return m;
        }
        case Sector::plus:
            return plus_power(kappa0, n).matrix();
        case Sector::minus:
            return minus_power(kappa0, n);
    }
    throw ValidationError("unknown sector");
}

/// One-step blocks written out entry by entry (n = 1 reference forms).
inline CMatrix2 floquet_plus_block(double kappa0) {
    const double kappa = kappa0 / 2.0;
    const Complex em = std::exp(Complex(0.0, -kappa));
    const Complex ep = std::exp(Complex(0.0, kappa));
    const double h = std::sqrt(3.0) / 2.0;
    CMatrix2 m;
    m << 0.5i * em, 1i * h * em, 1i * h * ep, -0.5i * ep;
    return -1i * std::exp(Complex(0.0, -kappa / 2.0)) * m;
}

inline CMatrix2 floquet_minus_block(double kappa0) {
    const double kappa = kappa0 / 2.0;
    const Complex e = std::exp(Complex(0.0, 0.75 * kappa));
    CMatrix2 m;
    m << 0.0, e, -std::conj(e), 0.0;
    return std::exp(Complex(0.0, -0.75 * kappa)) * m;
}

/// Columns: phi1+, phi2+, phi3+, phi1-, phi2- in the Dicke basis.
inline CMatrix parity_basis() {
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix b = CMatrix::Zero(5, 5);
    b(1, 0) = r;
    b(3, 0) = -r;
    b(0, 1) = r;
    b(4, 1) = r;
    b(2, 2) = 1.0;
    b(1, 3) = r;
    b(3, 3) = r;
    b(0, 4) = r;
    b(4, 4) = -r;
    return b;
}

/// Closed-form U^n psi0 in the Dicke basis, same phase convention as floquet().
inline SymState evolve_closed(const SymState &psi0, std::int64_t n, double kappa0) {
    require(psi0.spin() == kSpin, "four-qubit state required");
    CVector c = parity_basis().adjoint() * psi0.amps();
    CMatrix2 up = plus_power(kappa0, n).matrix();
    CMatrix2 um = minus_power(kappa0, n);
    CVector out(5);
    out(0) = singlet_power(n) * c(0);
    out.segment<2>(1) = up * c.segment<2>(1);
    out.segment<2>(3) = um * c.segment<2>(3);
    Complex global = std::exp(Complex(0.0, -static_cast<double>(n) * kappa0 / 4.0));
    return SymState::normalized(kSpin, global * (parity_basis() * out));
}

/// Single-qubit linear entropy after n kicks. S(0) = 0.
///   zero:   S = (1 - xi_n^2)/2, xi_n = T_n cos(n k0/8) - U_{n-1} cos(k0/2) sin(n k0/8)/2
///           at even n, with S(2m-1) = S(2m)
///   plus_y: S = (1 - |xi'_n|^2)/2, xi'_n = -i (T_n cos delta + U_{n-1} sin delta cos(k0/2))
inline double entropy_closed(FeaturedState id, std::int64_t n, double kappa0) {
    require(n >= 0, "time must be non-negative");
    if (n == 0) return 0.0;
    const ParityBlockSpec spec = ParityBlockSpec::from_kappa0(kappa0);
    if (id == FeaturedState::zero) {
        const std::int64_t ne = n + (n & 1);
        const ChebyshevPair c = chebyshev_pair(spec.chi, ne);
        const double arg = static_cast<double>(ne) * kappa0 / 8.0;
        const double xi = c.t * std::cos(arg) - 0.5 * c.u_prev * std::cos(kappa0 / 2.0) * std::sin(arg);
        return 0.5 * (1.0 - xi * xi);
    }
    const ChebyshevPair c = chebyshev_pair(spec.chi, n);
    const double d = spec.delta(n);
    const double xi = c.t * std::cos(d) + c.u_prev * std::sin(d) * std::cos(kappa0 / 2.0);
    return 0.5 * (1.0 - xi * xi);
}

/// Infinite-time average; `resonant` marks kappa0 = 0 mod 2 pi where the
/// formulas are not derived (the formula is still returned there).
struct ClosedAverage {
    double value = 0.0;
    bool resonant = false;
};

inline ClosedAverage average_entropy(FeaturedState id, double kappa0) {
    require_finite(kappa0, "kappa0");
    const double c = std::cos(kappa0 / 2.0);
    const double c2 = c * c;
    const bool resonant = std::abs(std::sin(kappa0 / 2.0)) <= 1e-15;
    if (id == FeaturedState::zero) {
        if (resonant) return {0.0, true};
        return {(9.0 + 2.0 * c2) / (8.0 * (3.0 + c2)), false};
    }
    return {(9.0 - c2) / (8.0 * (3.0 + c2)), resonant};
}

/// Near-degeneracy of the singlet (eigenvalue -1) and the U_+ eigenvector
/// that continues from -1 at kappa0 = 0.
struct TunnelingReport {
    double kappa0 = 0.0;
    double gamma_minus = 0.0;       // kappa0/4 + pi - asin(sin(kappa0/2)/2)
    double splitting = 0.0;         // |pi - gamma_minus|
    double n_star = 0.0;            // pi / splitting
    double n_star_asymptotic = 0.0; // 128 pi / kappa0^3
    double ghz_time = 0.0;          // n_star / 2
};

inline TunnelingReport tunneling(double kappa0) {
    require_finite(kappa0, "kappa0");
    require(kappa0 > 0.0, "kappa0 must be positive");
    TunnelingReport r;
    r.kappa0 = kappa0;
    r.gamma_minus = kappa0 / 4.0 + pi - std::asin(0.5 * std::sin(kappa0 / 2.0));
    // pi - gamma_minus without cancellation: asin(sin(k0/2)/2) - k0/4
    r.splitting = std::abs(std::asin(0.5 * std::sin(kappa0 / 2.0)) - kappa0 / 4.0);
    r.n_star = pi / r.splitting;
    r.n_star_asymptotic = 128.0 * pi / (kappa0 * kappa0 * kappa0);
    r.ghz_time = r.n_star / 2.0;
    return r;
}

/// Amplitudes of U^n applied to the tensor power of |+>_y, in the parity basis,
/// in the block phase convention (no floquet_global_phase factor):
///   (-1)^n (i/sqrt2) phi1+  +  U_+^n (1/sqrt2) phi23+,  phi23+ = phi2+/2 - sqrt3 phi3+/2.
inline CVector tunneling_state(double kappa0, std::int64_t n) {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Vector2cd phi23(0.5, -std::sqrt(3.0) / 2.0);
    Eigen::Vector2cd plus = plus_power(kappa0, n).matrix() * phi23 * r;
    CVector v = CVector::Zero(5);
    v(0) = singlet_power(n) * Complex(0.0, r);
    v(1) = plus(0);
    v(2) = plus(1);
    return v;
}

/// Parity-basis amplitudes of the tensor power of |-+>_y:
/// (phi23+ - i phi1+)/sqrt2 for minus, (phi23+ + i phi1+)/sqrt2 for plus.
inline CVector y_polarized(bool plus) {
    const double r = 1.0 / std::sqrt(2.0);
    CVector v = CVector::Zero(5);
    v(0) = plus ? Complex(0.0, r) : Complex(0.0, -r);
    v(1) = r * 0.5;
    v(2) = -r * std::sqrt(3.0) / 2.0;
    return v;
}

/// |<(-)^4_y | psi_n>|^2 at each requested time.
inline std::vector<double> tunneling_overlap_series(double kappa0, const std::vector<std::int64_t> &times) {
    require_finite(kappa0, "kappa0");
    require(kappa0 > 0.0, "kappa0 must be positive");
    const CVector minus = y_polarized(false);
    std::vector<double> out;
    out.reserve(times.size());
    for (std::int64_t n : times) {
        require(n >= 0, "time must be non-negative");
        out.push_back(std::norm(minus.dot(tunneling_state(kappa0, n))));
    }
    return out;
}

/// |<GHZ | psi_n>|^2 with GHZ = ((+)^4_y - i (-)^4_y)/sqrt2.
inline double tunneling_ghz_fidelity(double kappa0, std::int64_t n) {
    require(kappa0 > 0.0, "kappa0 must be positive");
    CVector ghz = (y_polarized(true) - 1i * y_polarized(false)) / std::sqrt(2.0);
    return std::norm(ghz.dot(tunneling_state(kappa0, n)));
}

}  // namespace kicked_top::exact4
