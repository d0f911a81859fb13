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

#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "kicked_top/common.hpp"
#include "kicked_top/symspace.hpp"

namespace kicked_top {

/// Raw coherent-state overlaps |<theta,phi|psi>|^2 on a closed grid.
/// theta_i = pi i/(n_theta-1) includes both poles; phi_k = -pi + 2 pi k/(n_phi-1)
/// repeats the phi = +-pi seam.
struct SphereGrid {
    int n_theta = 0;
    int n_phi = 0;
    Eigen::MatrixXd values;  // n_theta x n_phi

    double theta(int i) const { return pi * i / (n_theta - 1); }
    double phi(int k) const { return -pi + 2.0 * pi * k / (n_phi - 1); }
};

inline constexpr int kDefaultHusimiTheta = 101;
inline constexpr int kDefaultHusimiPhi = 201;

inline SphereGrid husimi_grid(const SymState &psi, int n_theta = kDefaultHusimiTheta, int n_phi = kDefaultHusimiPhi) {
    require(n_theta >= 2 && n_phi >= 2, "husimi grid needs at least 2 nodes per axis");
    SphereGrid g{n_theta, n_phi, Eigen::MatrixXd(n_theta, n_phi)};
    const Spin spin = psi.spin();
    for (int i = 0; i < n_theta; ++i) {
        for (int k = 0; k < n_phi; ++k) {
            SymState cs = coherent_state(spin, {g.theta(i), g.phi(k)});
            g.values(i, k) = std::clamp(std::norm(cs.overlap(psi)), 0.0, 1.0);
        }
    }
    return g;
}

/// (2j+1)/4pi times the trapezoid integral of the grid over the sphere;
/// close to 1 for a normalized state on a fine grid.
inline double husimi_normalization(const SphereGrid &g, Spin spin) {
    const double dt = pi / (g.n_theta - 1);
    const double dp = 2.0 * pi / (g.n_phi - 1);
    double sum = 0.0;
    for (int i = 0; i < g.n_theta; ++i) {
        double wt = (i == 0 || i == g.n_theta - 1) ? 0.5 : 1.0;
        double row = 0.0;
        for (int k = 0; k < g.n_phi; ++k) {
            double wp = (k == 0 || k == g.n_phi - 1) ? 0.5 : 1.0;
            row += wp * g.values(i, k);
        }
        sum += wt * std::sin(g.theta(i)) * row;
    }
    return sum * dt * dp * static_cast<double>(spin.dim()) / (4.0 * pi);
}

}  // namespace kicked_top
