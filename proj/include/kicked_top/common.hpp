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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace kicked_top {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using CMatrix2 = Eigen::Matrix2cd;

using namespace std::complex_literals;

inline constexpr double pi = std::numbers::pi;

/// Thrown when an input violates a documented precondition.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a request would exceed a hard size guard (e.g. the 2^{2j} qubit register).
class SizeLimitError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw ValidationError(message);
    }
}

inline void require_finite(double value, const char *name) {
    if (!std::isfinite(value)) {
        throw ValidationError(std::string(name) + " must be finite");
    }
}

/// Spin quantum number j, stored as the integer 2j so half-integers are exact.
/// For a register of qubits, 2j is the qubit count.
class Spin {
  public:
    constexpr Spin() = default;

    static Spin from_twice(std::int64_t twice_j) {
        require(twice_j >= 1, "spin requires 2j >= 1");
        Spin s;
        s.twice_j_ = twice_j;
        return s;
    }

    static Spin qubits(std::int64_t count) { return from_twice(count); }

    /// Accepts j only if 2j is a positive integer (within 1e-12).
    static Spin from_value(double j) {
        require_finite(j, "j");
        double twice = 2.0 * j;
        double rounded = std::round(twice);
        require(std::abs(twice - rounded) <= 1e-12, "j must be a half-integer");
        return from_twice(static_cast<std::int64_t>(rounded));
    }

    constexpr std::int64_t twice() const { return twice_j_; }
    constexpr double value() const { return 0.5 * static_cast<double>(twice_j_); }
    constexpr std::int64_t dim() const { return twice_j_ + 1; }

    /// Jz eigenvalue of Dicke index k (k = number of excited qubits): m = j - k.
    constexpr double m_of_index(std::int64_t k) const { return value() - static_cast<double>(k); }

    friend constexpr bool operator==(Spin, Spin) = default;

  private:
    std::int64_t twice_j_ = 1;
};

/// Point on the sphere of coherent-state labels.
struct BlochPoint {
    double theta0 = 0.0;  // polar angle in [0, pi]
    double phi0 = 0.0;    // azimuth in [-pi, pi]

    static BlochPoint checked(double theta0, double phi0) {
        require_finite(theta0, "theta0");
        require_finite(phi0, "phi0");
        require(theta0 >= 0.0 && theta0 <= pi, "theta0 must lie in [0, pi]");
        require(phi0 >= -pi && phi0 <= pi, "phi0 must lie in [-pi, pi]");
        return {theta0, phi0};
    }

    static BlochPoint north() { return {0.0, 0.0}; }
    /// Centre of the +y island, the tensor power of |+>_y.
    static BlochPoint plus_y() { return {pi / 2, -pi / 2}; }
    static BlochPoint minus_y() { return {pi / 2, pi / 2}; }
};

}  // namespace kicked_top
