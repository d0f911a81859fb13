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

// Closed-form three-qubit kicked top (p = pi/2).
//
// The up-down parity (tensor power of sigma_y) splits the four-dimensional
// symmetric space into two 2x2 blocks. In the parity basis
//   phi1(+-) = (|000> -+ i|111>)/sqrt2,   phi2(+-) = (|W> +- i|Wbar>)/sqrt2
// each block is an SU(2) rotation up to a phase, and its n-th power is
//   (+-1)^n e^{-in(+-pi/4 + kappa)} [[alpha_n, -+conj(beta_n)], [+-beta_n, conj(alpha_n)]]
// with kappa = kappa0/6, chi = sin(2 kappa)/2 and
//   alpha_n = T_n(chi) + (i/2) U_{n-1}(chi) cos(2 kappa)
//   beta_n  = (sqrt3/2) U_{n-1}(chi) e^{2 i kappa}.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "kicked_top/chebyshev.hpp"
#include "kicked_top/common.hpp"
#include "kicked_top/measures.hpp"
#include "kicked_top/symspace.hpp"

namespace kicked_top::exact3 {

enum class Parity { plus, minus };

enum class FeaturedState {
    zero,    // |000>, the period-4 orbit
    plus_y,  // tensor power of |+>_y, the fixed point
};

inline const Spin kSpin = Spin::qubits(3);

/// Block parameters derived from kappa0, including the rotation axis of U_+.
struct ParityBlockSpec {
    double kappa0 = 0.0;
    double kappa = 0.0;
    double chi = 0.0;
    double gamma = 0.0;
    double axis_theta = 0.0;
    double axis_phi = 0.0;

    static ParityBlockSpec from_kappa0(double kappa0) {
        require_finite(kappa0, "kappa0");
        ParityBlockSpec s;
        s.kappa0 = kappa0;
        s.kappa = kappa0 / 6.0;
        s.chi = std::sin(2.0 * s.kappa) / 2.0;
        s.gamma = std::acos(s.chi);
        // sin(theta) sin(gamma) = sqrt3/2, cos(theta) sin(gamma) = -cos(2 kappa)/2
        s.axis_theta = std::atan2(std::sqrt(3.0) / 2.0, -std::cos(2.0 * s.kappa) / 2.0);
        s.axis_phi = pi / 2 + 2.0 * s.kappa;
        return s;
    }
};

struct BlockPower {
    std::int64_t n = 0;
    Parity parity = Parity::plus;
    Complex phase{1.0, 0.0};
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};

    CMatrix2 matrix() const {
        const double s = parity == Parity::plus ? 1.0 : -1.0;
        CMatrix2 m;
        m << alpha, -s * std::conj(beta), s * beta, std::conj(alpha);
        return phase * m;
    }
};

namespace detail {

inline double sign_of(Parity p) { return p == Parity::plus ? 1.0 : -1.0; }

// alpha_n, beta_n from the Chebyshev pair at chi.
inline void alpha_beta(const ParityBlockSpec &spec, ChebyshevPair c, Complex &alpha, Complex &beta) {
    alpha = Complex(c.t, 0.5 * c.u_prev * std::cos(2.0 * spec.kappa));
    beta = (std::sqrt(3.0) / 2.0) * c.u_prev * std::exp(Complex(0.0, 2.0 * spec.kappa));
}

inline std::int64_t even_time(std::int64_t n) { return n + (n & 1); }

}  // namespace detail

/// One-step block U_+ or U_-, written out entry by entry.
inline CMatrix2 floquet_block(double kappa0, Parity parity) {
    const double s = detail::sign_of(parity);
    const double kappa = kappa0 / 6.0;
    const Complex em = std::exp(Complex(0.0, -2.0 * kappa));
    const Complex ep = std::exp(Complex(0.0, 2.0 * kappa));
    CMatrix2 m;
    m << 0.5i * em, -s * (std::sqrt(3.0) / 2.0) * em, s * (std::sqrt(3.0) / 2.0) * ep, -0.5i * ep;
    return s * std::exp(Complex(0.0, -s * pi / 4)) * std::exp(Complex(0.0, -kappa)) * m;
}

inline BlockPower block_power(double kappa0, std::int64_t n, Parity parity) {
    require(n >= 0, "block power needs n >= 0");
    const ParityBlockSpec spec = ParityBlockSpec::from_kappa0(kappa0);
    const double s = detail::sign_of(parity);
    BlockPower bp;
    bp.n = n;
    bp.parity = parity;
    const double sign_n = (parity == Parity::minus && (n & 1)) ? -1.0 : 1.0;
    bp.phase = sign_n * std::exp(Complex(0.0, -static_cast<double>(n) * (s * pi / 4 + spec.kappa)));
    detail::alpha_beta(spec, chebyshev_pair(spec.chi, n), bp.alpha, bp.beta);
    return bp;
}

/// Columns: phi1+, phi2+, phi1-, phi2- expressed in the Dicke basis.
inline CMatrix parity_basis() {
    const double r = 1.0 / std::sqrt(2.0);
    CMatrix b = CMatrix::Zero(4, 4);
    b(0, 0) = r;
    b(3, 0) = Complex(0.0, -r);
    b(1, 1) = r;
    b(2, 1) = Complex(0.0, r);
    b(0, 2) = r;
    b(3, 2) = Complex(0.0, r);
    b(1, 3) = r;
    b(2, 3) = Complex(0.0, -r);
    return b;
}

/// Amplitudes (a1, a2, b1, b2) on phi1+, phi2+, phi1-, phi2-.
struct GeneralState {
    Complex a1, a2, b1, b2;

    static GeneralState checked(Complex a1, Complex a2, Complex b1, Complex b2) {
        double norm2 = std::norm(a1) + std::norm(a2) + std::norm(b1) + std::norm(b2);
        require(std::abs(norm2 - 1.0) <= 1e-10, "three-qubit state must be normalized");
        return {a1, a2, b1, b2};
    }

    static GeneralState from_symmetric(const SymState &psi) {
        require(psi.spin() == kSpin, "three-qubit state required");
        CVector c = parity_basis().adjoint() * psi.amps();
        return checked(c(0), c(1), c(2), c(3));
    }

    static GeneralState featured(FeaturedState id) {
        const double r = 1.0 / std::sqrt(2.0);
        if (id == FeaturedState::zero) return {r, 0.0, r, 0.0};
        return {0.5, Complex(0.0, std::sqrt(3.0) / 2.0), 0.0, 0.0};
    }

    SymState to_symmetric() const {
        CVector c(4);
        c << a1, a2, b1, b2;
        return SymState::from_amplitudes(kSpin, parity_basis() * c);
    }
};

/// Closed-form U^n |psi0> in the Dicke basis, in the same phase convention as
/// floquet(): the block powers times floquet_global_phase(kappa0)^n.
inline SymState evolve_closed(const GeneralState &s, std::int64_t n, double kappa0) {
    CMatrix2 up = block_power(kappa0, n, Parity::plus).matrix();
    CMatrix2 um = block_power(kappa0, n, Parity::minus).matrix();
    Eigen::Vector2cd plus = up * Eigen::Vector2cd(s.a1, s.a2);
    Eigen::Vector2cd minus = um * Eigen::Vector2cd(s.b1, s.b2);
    CVector c(4);
    c << plus(0), plus(1), minus(0), minus(1);
    Complex global = std::exp(Complex(0.0, -static_cast<double>(n) * kappa0 / 4.0));
    return SymState::normalized(kSpin, global * (parity_basis() * c));
}

/// Single-qubit linear entropy S(n) of a featured state. S(0) = 0.
///   zero:   S = 2 lambda (1 - lambda), lambda = U_{2m-1}^2 / 2 at n = 2m, S(2m-1) = S(2m)
///   plus_y: S = 4 chi^2 U_{n-1}^2 (1 - 2 chi^2 U_{n-1}^2)
inline double entropy_closed(FeaturedState id, std::int64_t n, double kappa0) {
    require(n >= 0, "time must be non-negative");
    if (n == 0) return 0.0;
    const ParityBlockSpec spec = ParityBlockSpec::from_kappa0(kappa0);
    if (id == FeaturedState::zero) {
        const double u = chebyshev_pair(spec.chi, detail::even_time(n)).u_prev;
        const double lambda = 0.5 * u * u;
        return 2.0 * lambda * (1.0 - lambda);
    }
    const double u = chebyshev_pair(spec.chi, n).u_prev;
    const double x = 2.0 * spec.chi * spec.chi * u * u;
    return 2.0 * x * (1.0 - x);
}

/// Two-qubit concurrence of U^n |000>:
/// |U| * | |U|/2 - sqrt(1 - 3U^2/4) | with U = U_{n-1}(chi) at even n, C(2m-1) = C(2m).
inline double concurrence_zero(std::int64_t n, double kappa0) {
    require(n >= 0, "time must be non-negative");
    if (n == 0) return 0.0;
    const ParityBlockSpec spec = ParityBlockSpec::from_kappa0(kappa0);
    const double u = std::abs(chebyshev_pair(spec.chi, detail::even_time(n)).u_prev);
    const double root = std::sqrt(std::max(0.0, 1.0 - 0.75 * u * u));
    return u * std::abs(0.5 * u - root);
}

/// Closed-form infinite-time average. `resonant` marks the excluded points
/// gamma in {0, pi/2, pi}, which for |chi| <= 1/2 means sin(kappa0/3) = 0
/// (kappa0 a multiple of 3 pi). Both featured states stay unentangled
/// there, so the returned average is 0.
struct ClosedAverage {
    double value = 0.0;
    bool resonant = false;
};

inline ClosedAverage average_entropy(FeaturedState id, double kappa0) {
    require_finite(kappa0, "kappa0");
    const double s = std::sin(kappa0 / 3.0);
    if (std::abs(s) <= 1e-15) return {0.0, true};
    const double s2 = s * s;
    const double d = (4.0 - s2) * (4.0 - s2);
    if (id == FeaturedState::zero) return {(5.0 - 2.0 * s2) / d, false};
    return {s2 * (8.0 - 5.0 * s2) / d, false};
}

/// Average entropy of an arbitrary coherent state at kappa0 = 3 pi / 2:
/// [15 + cos 4t + (1 + 3 cos 2t) sin^4 t sin^2 2p] / 48, a value in [7/24, 1/3].
inline double average_entropy_3pi2(BlochPoint point) {
    const double t = point.theta0;
    const double p = point.phi0;
    const double s = std::sin(t);
    const double s2p = std::sin(2.0 * p);
    return (15.0 + std::cos(4.0 * t) + (1.0 + 3.0 * std::cos(2.0 * t)) * s * s * s * s * s2p * s2p) / 48.0;
}

/// Estimates of when U^n |000> first becomes nearly maximally entangled.
struct MaxEntanglementTime {
    std::int64_t first = 0;        // floor(3 pi / kappa0)
    std::int64_t refined = 0;      // 2 floor(3 pi / (2 kappa0) - 1/2) + 1, always odd
    std::int64_t disentangle = 0;  // ~ 2 * first
};

inline MaxEntanglementTime n_star_zero(double kappa0) {
    require_finite(kappa0, "kappa0");
    require(kappa0 > 0.0, "kappa0 must be positive");
    MaxEntanglementTime t;
    t.first = static_cast<std::int64_t>(std::floor(3.0 * pi / kappa0));
    t.refined = 2 * static_cast<std::int64_t>(std::floor(3.0 * pi / (2.0 * kappa0) - 0.5)) + 1;
    t.disentangle = 2 * t.first;
    return t;
}

/// Linear entropy of an arbitrary three-qubit symmetric state after n kicks,
/// from the evolved parity-basis coefficients: S = 2 [r (1 - r) - |s|^2].
inline double general_entropy(const GeneralState &st, std::int64_t n, double kappa0) {
    require(n >= 0, "time must be non-negative");
    const GeneralState s0 = GeneralState::checked(st.a1, st.a2, st.b1, st.b2);
    const ParityBlockSpec spec = ParityBlockSpec::from_kappa0(kappa0);
    Complex alpha, beta;
    detail::alpha_beta(spec, chebyshev_pair(spec.chi, n), alpha, beta);
    static constexpr Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex in = i_pow[n % 4];
    const Complex a1n = s0.a1 * alpha - s0.a2 * std::conj(beta);
    const Complex a2n = s0.a1 * beta + s0.a2 * std::conj(alpha);
    const Complex b1n = in * (s0.b1 * alpha + s0.b2 * std::conj(beta));
    const Complex b2n = in * (s0.b2 * std::conj(alpha) - s0.b1 * beta);
    const double rt3 = std::sqrt(3.0);
    const double r = 0.5 + (a1n * std::conj(b1n) + a2n * std::conj(b2n) / 3.0).real();
    const Complex s = (a1n * std::conj(b2n) + b1n * std::conj(a2n)).real() / rt3 +
                      1i * (a1n * std::conj(a2n) + b1n * std::conj(b2n)).imag() / rt3 -
                      (1i / 3.0) * (a2n + b2n) * (std::conj(a2n) - std::conj(b2n));
    return 2.0 * (r * (1.0 - r) - std::norm(s));
}

}  // namespace kicked_top::exact3
