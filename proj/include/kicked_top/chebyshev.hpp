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

#include <cstdint>

#include "kicked_top/common.hpp"

namespace kicked_top {

/// T_n(x) together with U_{n-1}(x), the pair every SU(2) block power needs.
struct ChebyshevPair {
    double t = 1.0;       // T_n
    double u_prev = 0.0;  // U_{n-1}
};

/// Advances T_n and U_{n-1} one degree at a time with the three-term recurrence
/// p_{n+1} = 2x p_n - p_{n-1}. Starts at n = 0 (T_0 = 1, U_{-1} = 0).
class ChebyshevSequence {
  public:
    explicit ChebyshevSequence(double x) : x_(x) {}

    std::int64_t degree() const { return n_; }
    ChebyshevPair value() const { return {t_, u_}; }

    void advance() {
        double t_next = (n_ == 0) ? x_ : 2.0 * x_ * t_ - t_before_;
        double u_next = (n_ == 0) ? 1.0 : 2.0 * x_ * u_ - u_before_;
        t_before_ = t_;
        u_before_ = u_;
        t_ = t_next;
        u_ = u_next;
        ++n_;
    }

  private:
    double x_;
    std::int64_t n_ = 0;
    double t_ = 1.0;          // T_n
    double t_before_ = 0.0;   // T_{n-1}
    double u_ = 0.0;          // U_{n-1}
    double u_before_ = 0.0;   // U_{n-2}
};

namespace detail {

// Above this degree the recurrence matrix is raised by repeated squaring.
inline constexpr std::int64_t kLinearRecurrenceLimit = 1 << 14;

struct Mat2 {
    double a, b, c, d;
    Mat2 operator*(const Mat2 &o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
};

}  // namespace detail

/// T_n(x) and U_{n-1}(x) for n >= 0.
///
/// Degrees up to 2^14 use the plain recurrence. Larger degrees apply the same
/// recurrence in companion-matrix form, [[2x, -1], [1, 0]]^n, by binary powering,
/// so very long times (tunneling at n ~ 4e5) stay O(log n).
inline ChebyshevPair chebyshev_pair(double x, std::int64_t n) {
    require(n >= 0, "Chebyshev degree must be non-negative");
    if (n <= detail::kLinearRecurrenceLimit) {
        ChebyshevSequence seq(x);
        for (std::int64_t i = 0; i < n; ++i) {
            seq.advance();
        }
        return seq.value();
    }
    // [p_{n}, p_{n-1}]^T = M^n [p_0, p_{-1}]^T for both kinds.
    detail::Mat2 result{1.0, 0.0, 0.0, 1.0};
    detail::Mat2 base{2.0 * x, -1.0, 1.0, 0.0};
    for (std::int64_t e = n; e > 0; e >>= 1) {
        if (e & 1) {
            result = result * base;
        }
        base = base * base;
    }
    // T: p_0 = 1, p_{-1} = T_{-1} = x.  U shifted by one: U_{n-1} from U_{-1} = 0, U_{-2} = -1.
    double t = result.a * 1.0 + result.b * x;
    double u_prev = result.a * 0.0 + result.b * (-1.0);
    return {t, u_prev};
}

}  // namespace kicked_top
