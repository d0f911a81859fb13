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

// Classical limit of the kicked top (p = pi/2), a map of the unit sphere:
//   X' =  Z cos(k X) + Y sin(k X)
//   Y' = -Z sin(k X) + Y cos(k X)
//   Z' = -X

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "kicked_top/common.hpp"

namespace kicked_top::classical {

inline constexpr double kSphereTolerance = 1e-6;

struct ClassicalPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    static ClassicalPoint checked(double x, double y, double z) {
        require(std::isfinite(x) && std::isfinite(y) && std::isfinite(z), "point must be finite");
        ClassicalPoint p{x, y, z};
        require(std::abs(p.norm() - 1.0) <= kSphereTolerance, "point must lie on the unit sphere");
        return p;
    }

    /// Direction of a coherent state centred at (theta0, phi0).
    static ClassicalPoint from_angles(BlochPoint b) {
        return {std::sin(b.theta0) * std::cos(b.phi0), std::sin(b.theta0) * std::sin(b.phi0), std::cos(b.theta0)};
    }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    Eigen::Vector3d vec() const { return {x, y, z}; }
};

/// One kick; no renormalization.
inline ClassicalPoint step_unchecked(const ClassicalPoint &p, double kappa0) {
    const double c = std::cos(kappa0 * p.x);
    const double s = std::sin(kappa0 * p.x);
    return {p.z * c + p.y * s, -p.z * s + p.y * c, -p.x};
}

inline ClassicalPoint step(const ClassicalPoint &p, double kappa0) {
    require_finite(kappa0, "kappa0");
    require(std::abs(p.norm() - 1.0) <= kSphereTolerance, "point must lie on the unit sphere");
    return step_unchecked(p, kappa0);
}

/// Derivative of the update in ambient coordinates.
inline Eigen::Matrix3d jacobian(const ClassicalPoint &p, double kappa0) {
    const double c = std::cos(kappa0 * p.x);
    const double s = std::sin(kappa0 * p.x);
    Eigen::Matrix3d j;
    j << kappa0 * (-p.z * s + p.y * c), s, c,
         kappa0 * (-p.z * c - p.y * s), c, -s,
         -1.0, 0.0, 0.0;
    return j;
}

/// Orthonormal pair spanning the tangent plane at p.
inline Eigen::Matrix<double, 3, 2> tangent_basis(const ClassicalPoint &p) {
    Eigen::Vector3d n = p.vec().normalized();
    Eigen::Vector3d helper = std::abs(n.y()) < 0.9 ? Eigen::Vector3d::UnitY() : Eigen::Vector3d::UnitX();
    Eigen::Vector3d e1 = helper.cross(n).normalized();
    Eigen::Vector3d e2 = n.cross(e1);
    Eigen::Matrix<double, 3, 2> b;
    b << e1, e2;
    return b;
}

/// Linearization of the map over `period` kicks starting at p, expressed in the
/// tangent bases at p and at its image. For a closed orbit both bases coincide
/// and the eigenvalues are the stability multipliers.
inline Eigen::Matrix2d tangent_map(const ClassicalPoint &p, double kappa0, int period = 1) {
    require(period >= 1, "period must be positive");
    ClassicalPoint cur = p;
    Eigen::Matrix3d acc = Eigen::Matrix3d::Identity();
    for (int i = 0; i < period; ++i) {
        acc = jacobian(cur, kappa0) * acc;
        cur = step_unchecked(cur, kappa0);
    }
    return tangent_basis(cur).transpose() * acc * tangent_basis(p);
}

/// Largest multiplier modulus of the tangent map of a closed orbit.
inline double spectral_radius(const Eigen::Matrix2d &m) {
    return m.eigenvalues().cwiseAbs().maxCoeff();
}

/// Fixed point (0, -1, 0), the centre of the coherent state at (pi/2, -pi/2).
inline ClassicalPoint fixed_point() { return {0.0, -1.0, 0.0}; }

/// Period-4 orbit through the north pole.
inline std::vector<ClassicalPoint> period4_orbit() {
    return {{0.0, 0.0, 1.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, -1.0}, {-1.0, 0.0, 0.0}};
}

/// Finite-time largest Lyapunov exponent from tangent-vector growth,
/// renormalizing the tangent vector after every kick.
inline double lyapunov_estimate(const ClassicalPoint &p, double kappa0, int steps) {
    require(steps >= 1, "step count must be positive");
    ClassicalPoint cur = p;
    Eigen::Vector3d v = tangent_basis(p).col(0);
    double sum = 0.0;
    for (int i = 0; i < steps; ++i) {
        v = jacobian(cur, kappa0) * v;
        cur = step_unchecked(cur, kappa0);
        // Drop the radial part so only on-sphere stretching counts.
        Eigen::Vector3d n = cur.vec();
        v -= n.dot(v) * n;
        double len = v.norm();
        sum += std::log(len);
        v /= len;
    }
    return sum / steps;
}

struct PortraitRow {
    std::int64_t seed_index = 0;
    std::int64_t iteration = 0;
    double x = 0.0, y = 0.0, z = 0.0;
};

/// Iterates every seed n times; rows ordered by seed then iteration,
/// seeds.size() * (n + 1) rows including iteration 0.
inline std::vector<PortraitRow> portrait(const std::vector<ClassicalPoint> &seeds, double kappa0, std::int64_t n) {
    require(!seeds.empty(), "portrait needs at least one seed");
    require(n >= 1, "iteration count must be positive");
    require_finite(kappa0, "kappa0");
    std::vector<PortraitRow> rows;
    rows.reserve(seeds.size() * static_cast<std::size_t>(n + 1));
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        ClassicalPoint p = ClassicalPoint::checked(seeds[s].x, seeds[s].y, seeds[s].z);
        for (std::int64_t i = 0; i <= n; ++i) {
            rows.push_back({static_cast<std::int64_t>(s), i, p.x, p.y, p.z});
            p = step_unchecked(p, kappa0);
        }
    }
    return rows;
}

/// Seeds on a theta x phi lattice, poles excluded.
inline std::vector<ClassicalPoint> seed_lattice(int n_theta, int n_phi) {
    require(n_theta >= 1 && n_phi >= 1, "lattice needs at least one node per axis");
    std::vector<ClassicalPoint> out;
    out.reserve(static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_phi));
    for (int i = 0; i < n_theta; ++i) {
        double theta = pi * (i + 0.5) / n_theta;
        for (int k = 0; k < n_phi; ++k) {
            double phi = -pi + 2.0 * pi * (k + 0.5) / n_phi;
            out.push_back(ClassicalPoint::from_angles({theta, phi}));
        }
    }
    return out;
}

}  // namespace kicked_top::classical
