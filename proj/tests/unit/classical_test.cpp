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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "kicked_top/classical.hpp"

namespace kt = kicked_top;
namespace cl = kicked_top::classical;
using kt::pi;

namespace {

void expect_point(const cl::ClassicalPoint &a, double x, double y, double z, double tol = 1e-15) {
    EXPECT_NEAR(a.x, x, tol);
    EXPECT_NEAR(a.y, y, tol);
    EXPECT_NEAR(a.z, z, tol);
}

// Separation growth of a shadow trajectory, renormalized back to d0 each kick.
double shadow_lyapunov(cl::ClassicalPoint p, double k0, int steps) {
    const double d0 = 1e-8;
    cl::ClassicalPoint q{p.x + d0, p.y, p.z};
    double n = q.norm();
    q = {q.x / n, q.y / n, q.z / n};
    double sum = 0.0;
    for (int i = 0; i < steps; ++i) {
        p = cl::step_unchecked(p, k0);
        q = cl::step_unchecked(q, k0);
        Eigen::Vector3d d = q.vec() - p.vec();
        double len = d.norm();
        sum += std::log(len / d0);
        Eigen::Vector3d qn = (p.vec() + d * (d0 / len)).normalized();
        q = {qn.x(), qn.y(), qn.z()};
    }
    return sum / steps;
}

}  // namespace

TEST(ClassicalMap, FixedPoint) {
    for (double k0 : {0.0, 0.5, 2.0, 3.3, 6.0}) expect_point(cl::step(cl::fixed_point(), k0), 0, -1, 0);
}

TEST(ClassicalMap, PeriodFourOrbitThroughPole) {
    for (double k0 : {0.0, 0.5, 2.5, 3.14, 9.0}) {
        auto orbit = cl::period4_orbit();
        cl::ClassicalPoint p{0, 0, 1};
        for (int i = 1; i <= 8; ++i) {
            p = cl::step(p, k0);
            const auto &e = orbit[i % 4];
            expect_point(p, e.x, e.y, e.z);
        }
    }
}

TEST(ClassicalMap, ZeroTorsionHasPeriodFour) {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> ut(0, pi), up(-pi, pi);
    for (int i = 0; i < 20; ++i) {
        auto p0 = cl::ClassicalPoint::from_angles({ut(rng), up(rng)});
        auto p = p0;
        for (int k = 0; k < 4; ++k) p = cl::step(p, 0.0);
        expect_point(p, p0.x, p0.y, p0.z, 1e-12);
        auto q = cl::step(p0, 0.0);
        EXPECT_NEAR(q.z, -p0.x, 1e-15);
        EXPECT_NEAR(std::abs(q.norm() - 1.0), 0.0, 1e-15);
    }
}

TEST(ClassicalMap, SphereDriftOverManySteps) {
    auto p = cl::ClassicalPoint::from_angles({1.0, 0.3});
    for (int i = 0; i < 1000000; ++i) p = cl::step_unchecked(p, 2.5);
    EXPECT_LE(std::abs(p.norm() - 1.0), 1e-9);
}

TEST(ClassicalMap, RejectsOffSphere) {
    EXPECT_THROW(cl::step({0.0, 0.0, 1.1}, 1.0), kt::ValidationError);
    EXPECT_THROW(cl::ClassicalPoint::checked(1, 1, 1), kt::ValidationError);
    EXPECT_NO_THROW(cl::step({0.0, 0.0, 1.0 + 5e-7}, 1.0));
}

TEST(ClassicalMap, JacobianMatchesFiniteDifferences) {
    auto p = cl::ClassicalPoint::from_angles({1.1, -0.4});
    const double k0 = 2.3, h = 1e-6;
    Eigen::Matrix3d j = cl::jacobian(p, k0);
    for (int c = 0; c < 3; ++c) {
        Eigen::Vector3d dp = Eigen::Vector3d::Zero();
        dp(c) = h;
        cl::ClassicalPoint a{p.x + dp.x(), p.y + dp.y(), p.z + dp.z()};
        cl::ClassicalPoint b{p.x - dp.x(), p.y - dp.y(), p.z - dp.z()};
        Eigen::Vector3d fd = (cl::step_unchecked(a, k0).vec() - cl::step_unchecked(b, k0).vec()) / (2 * h);
        EXPECT_LT((fd - j.col(c)).norm(), 1e-8);
    }
}

TEST(ClassicalMap, FixedPointLosesStabilityNearTwo) {
    // Multipliers stay on the unit circle below the onset and leave it above.
    for (double k0 : {0.5, 1.0, 1.9, 1.99}) EXPECT_NEAR(cl::spectral_radius(cl::tangent_map(cl::fixed_point(), k0)), 1.0, 1e-7);
    for (double k0 : {2.01, 2.1, 3.0}) EXPECT_GT(cl::spectral_radius(cl::tangent_map(cl::fixed_point(), k0)), 1.0 + 1e-3);
    Eigen::Matrix2d t = cl::tangent_map(cl::fixed_point(), 1.5);
    EXPECT_NEAR(std::abs(t.trace()), 1.5, 1e-12);
    EXPECT_NEAR(t.determinant(), 1.0, 1e-12);
}

TEST(ClassicalMap, LyapunovPositiveInChaosAndAgreesWithShadow) {
    auto p = cl::ClassicalPoint::from_angles({0.3, 0.2});
    double tangent = cl::lyapunov_estimate(p, 2.5, 1000);
    double shadow = shadow_lyapunov(p, 2.5, 1000);
    EXPECT_GT(tangent, 0.05);
    EXPECT_NEAR(tangent, shadow, 0.05);
    EXPECT_LT(std::abs(cl::lyapunov_estimate(cl::fixed_point(), 0.5, 1000)), 1e-2);
}

TEST(Portrait, RowCountsAndOrder) {
    auto rows = cl::portrait({cl::ClassicalPoint{0, 0, 1}}, 0.5, 10);
    EXPECT_EQ(rows.size(), 11u);
    EXPECT_EQ(rows.front().iteration, 0);
    EXPECT_EQ(rows.back().iteration, 10);
    auto many = cl::portrait(cl::seed_lattice(3, 4), 0.5, 5);
    EXPECT_EQ(many.size(), 12u * 6u);
    EXPECT_EQ(many[6].seed_index, 1);
    EXPECT_THROW(cl::portrait({}, 0.5, 5), kt::ValidationError);
    EXPECT_THROW(cl::portrait({cl::ClassicalPoint{0, 0, 1}}, 0.5, 0), kt::ValidationError);
}

TEST(Portrait, RegularRegimeStaysOnClosedCurves) {
    // At k0 = 0.5 orbits near the fixed point stay within a small cap; in the
    // chaotic regime the same seed wanders over the sphere.
    auto seed = cl::ClassicalPoint::from_angles({pi / 2 - 0.2, -pi / 2});
    auto spread = [&](double k0) {
        double min_dot = 1.0;
        for (const auto &r : cl::portrait({seed}, k0, 2000)) min_dot = std::min(min_dot, -r.y);
        return min_dot;
    };
    EXPECT_GT(spread(0.5), 0.9);
    EXPECT_LT(spread(4.0), 0.0);
}
