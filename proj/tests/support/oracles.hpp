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

// Reference computations for the tests. Everything here works on the full
// 2^N qubit register with textbook formulas and shares no code with the
// library beyond the Eigen type aliases.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

inline Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Vec kron(const Vec &a, const Vec &b) {
    Vec out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

inline Mat sigma_y() {
    Mat m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

/// exp(-i k0/(2N) sum_{l<l'} z_l z_l') (x)^N exp(-i p/2 sigma_y), qubit 0 = MSB.
inline Mat ising_floquet(int n, double kappa0, double p) {
    Mat ry(2, 2);
    ry << std::cos(p / 2), -std::sin(p / 2), std::sin(p / 2), std::cos(p / 2);
    Mat rot = Mat::Ones(1, 1);
    for (int q = 0; q < n; ++q) rot = kron(rot, ry);
    const Eigen::Index dim = Eigen::Index{1} << n;
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        double zz = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                double za = ((idx >> (n - 1 - a)) & 1) ? -1.0 : 1.0;
                double zb = ((idx >> (n - 1 - b)) & 1) ? -1.0 : 1.0;
                zz += za * zb;
            }
        rot.row(idx) *= std::exp(Complex(0.0, -kappa0 / (2.0 * n) * zz));
    }
    return rot;
}

/// Tensor power of cos(t/2)|0> + e^{-i p} sin(t/2)|1>.
inline Vec product_state(int n, double theta, double phi) {
    Vec q(2);
    q << std::cos(theta / 2), std::exp(Complex(0.0, -phi)) * std::sin(theta / 2);
    Vec out = Vec::Ones(1);
    for (int i = 0; i < n; ++i) out = kron(out, q);
    return out;
}

/// Reduced density matrix of qubits `keep` (ascending, qubit 0 = MSB).
inline Mat reduce(const Vec &psi, int n, const std::vector<int> &keep) {
    const int k = static_cast<int>(keep.size());
    Mat rho = Mat::Zero(Eigen::Index{1} << k, Eigen::Index{1} << k);
    auto sub_index = [&](Eigen::Index idx) {
        Eigen::Index s = 0;
        for (int q : keep) s = (s << 1) | ((idx >> (n - 1 - q)) & 1);
        return s;
    };
    auto rest_index = [&](Eigen::Index idx) {
        Eigen::Index r = 0;
        for (int q = 0; q < n; ++q)
            if (std::find(keep.begin(), keep.end(), q) == keep.end()) r = (r << 1) | ((idx >> (n - 1 - q)) & 1);
        return r;
    };
    const Eigen::Index dim = psi.size();
    for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b)
            if (rest_index(a) == rest_index(b)) rho(sub_index(a), sub_index(b)) += psi(a) * std::conj(psi(b));
    return rho;
}

inline Mat reduce_matrix(const Mat &full, int n, const std::vector<int> &keep) {
    Eigen::SelfAdjointEigenSolver<Mat> es(full);
    Mat out = Mat::Zero(Eigen::Index{1} << keep.size(), Eigen::Index{1} << keep.size());
    for (Eigen::Index i = 0; i < full.rows(); ++i) {
        double w = es.eigenvalues()(i);
        if (w > 0) out += w * reduce(es.eigenvectors().col(i), n, keep);
    }
    return out;
}

inline double linear_entropy(const Mat &rho) { return 1.0 - (rho * rho).trace().real(); }

/// Wootters concurrence. The square roots of the eigenvalues of rho rho~ are
/// the singular values of W^T (sy x sy) W for any factor rho = W W^dagger;
/// W comes from the eigendecomposition of rho, which avoids square roots of
/// tiny eigenvalues.
inline double concurrence(const Mat &rho) {
    Mat yy = kron(sigma_y(), sigma_y());
    Eigen::SelfAdjointEigenSolver<Mat> es(rho);
    Mat w = es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    Eigen::JacobiSVD<Mat> svd(w.transpose() * yy * w);
    Eigen::VectorXd l = svd.singularValues();  // decreasing
    return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

inline Mat matrix_power(const Mat &m, int n) {
    Mat out = Mat::Identity(m.rows(), m.cols());
    for (int i = 0; i < n; ++i) out = out * m;
    return out;
}

inline Vec random_vector(Eigen::Index dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Vec v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex(g(rng), g(rng));
    return v.normalized();
}

/// Register vector of a symmetric state given Dicke amplitudes, by summing
/// explicit basis strings with k ones.
inline Vec dicke_register(const Vec &amps, int n) {
    Vec out = Vec::Zero(Eigen::Index{1} << n);
    std::vector<double> count(n + 1, 0.0);
    for (Eigen::Index idx = 0; idx < out.size(); ++idx) count[__builtin_popcountll(idx)] += 1.0;
    for (Eigen::Index idx = 0; idx < out.size(); ++idx) {
        int k = __builtin_popcountll(idx);
        out(idx) = amps(k) / std::sqrt(count[k]);
    }
    return out;
}

}  // namespace oracle
