// Copyright 2026 The ssbe Authors
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
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ssbe/error.hpp"
#include "ssbe/rng.hpp"

namespace ssbe {

using Matrix = Eigen::MatrixXd;

/// The constant sqrt(pi^2 - 1) / pi. Scaling diagonal entries by it keeps
/// every arcsin argument inside [0, c], where (1/pi) arcsin is 1-Lipschitz.
inline const double kArcsinScale = std::sqrt(std::numbers::pi * std::numbers::pi - 1.0) / std::numbers::pi;

inline bool is_power_of_two(std::size_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline int log2_exact(std::size_t x) {
    int n = 0;
    while ((std::size_t{1} << n) < x) ++n;
    return n;
}

/// Symmetric matrix S(u, v) with S[i][j] = u_max(i,j) * v_min(i,j), i.e.
/// u_i v_j on and below the diagonal. This is the convention for which
/// S = D_u L Delta_z L^T D_u with L lower triangular: L Delta_z L^T has
/// entries z_min(i,j).
///
/// Only the generators are stored; dense() materializes the matrix for
/// reference computations.
class OnePairMatrix {
   public:
    OnePairMatrix(int n, std::vector<double> u, std::vector<double> v) : n_(n), u_(std::move(u)), v_(std::move(v)) {
        if (n < 1 || n > 30) {
            throw Error(ErrorCode::kInvalidArgument, "one-pair matrix needs 1 <= n <= 30, got " + std::to_string(n));
        }
        const std::size_t size = std::size_t{1} << n;
        if (u_.size() != size || v_.size() != size) {
            throw Error(ErrorCode::kDimensionMismatch, "generators must have length 2^n = " + std::to_string(size));
        }
        for (std::size_t i = 0; i < size; ++i) {
            if (!std::isfinite(u_[i]) || !std::isfinite(v_[i])) {
                throw Error(ErrorCode::kInvalidArgument, "generator entry " + std::to_string(i) + " is not finite", i);
            }
        }
    }

    int n() const { return n_; }
    std::size_t size() const { return u_.size(); }
    std::span<const double> u() const { return u_; }
    std::span<const double> v() const { return v_; }

    double operator()(std::size_t i, std::size_t j) const { return i >= j ? u_[i] * v_[j] : u_[j] * v_[i]; }

   private:
    int n_;
    std::vector<double> u_;
    std::vector<double> v_;
};

/// S = diag(d_u) L diag(delta_z) L^T diag(d_u), L the lower-triangular all-ones matrix.
struct Factorization {
    std::vector<double> d_u;
    std::vector<double> delta_z;
    std::vector<double> z;
};

struct GeneratorStats {
    double max_u = 0.0;
    double min_u = 0.0;
    double max_v = 0.0;
    double min_v = 0.0;
    double c = kArcsinScale;

    static GeneratorStats of(const OnePairMatrix &one_pair) {
        GeneratorStats stats;
        auto abs_less = [](double a, double b) { return std::abs(a) < std::abs(b); };
        const auto [umin, umax] = std::minmax_element(one_pair.u().begin(), one_pair.u().end(), abs_less);
        const auto [vmin, vmax] = std::minmax_element(one_pair.v().begin(), one_pair.v().end(), abs_less);
        stats.max_u = std::abs(*umax);
        stats.min_u = std::abs(*umin);
        stats.max_v = std::abs(*vmax);
        stats.min_v = std::abs(*vmin);
        return stats;
    }
};

inline Matrix dense(const OnePairMatrix &one_pair) {
    const auto size = static_cast<Eigen::Index>(one_pair.size());
    Matrix s(size, size);
    const auto u = one_pair.u();
    const auto v = one_pair.v();
    for (Eigen::Index j = 0; j < size; ++j) {
        for (Eigen::Index i = j; i < size; ++i) {
            const double entry = u[i] * v[j];
            s(i, j) = entry;
            s(j, i) = entry;
        }
    }
    return s;
}

inline Factorization factorize(const OnePairMatrix &one_pair) {
    const auto u = one_pair.u();
    const auto v = one_pair.v();
    Factorization f;
    f.d_u.assign(u.begin(), u.end());
    f.z.resize(u.size());
    f.delta_z.resize(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0.0) throw zero_generator(i);
        f.z[i] = v[i] / u[i];
        f.delta_z[i] = i == 0 ? f.z[0] : f.z[i] - f.z[i - 1];
    }
    return f;
}

inline Matrix lower_ones(std::size_t size) {
    const auto s = static_cast<Eigen::Index>(size);
    return Matrix::Ones(s, s).triangularView<Eigen::Lower>();
}

/// Dense diag(d_u) L diag(delta_z) L^T diag(d_u).
inline Matrix assemble(const Factorization &f) {
    const auto size = static_cast<Eigen::Index>(f.d_u.size());
    const Eigen::Map<const Eigen::VectorXd> du(f.d_u.data(), size);
    const Eigen::Map<const Eigen::VectorXd> dz(f.delta_z.data(), size);
    const Matrix l = lower_ones(f.d_u.size());
    return du.asDiagonal() * l * dz.asDiagonal() * l.transpose() * du.asDiagonal();
}

/// Largest singular value. Symmetric input (within 1e-12 relative to its
/// largest entry) goes through the symmetric eigensolver, anything else
/// through SVD.
inline double spectral_norm(const Matrix &a) {
    if (a.rows() == 0 || a.cols() == 0) {
        throw Error(ErrorCode::kDimensionMismatch, "spectral_norm of an empty matrix");
    }
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    if (a.rows() == a.cols() && (a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
        const Matrix sym = 0.5 * (a + a.transpose());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::BDCSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

inline double frobenius_norm(const Matrix &a) { return a.norm(); }

/// Both a-priori bounds on ||S||_2: the factored-form bound
/// 8 N^2 M_u^2 M_v / (pi^2 m_u) and the entrywise bound M_u M_v N.
struct NormBounds {
    double factored = 0.0;
    double entrywise = 0.0;
};

inline NormBounds norm_bound(const GeneratorStats &stats, int n) {
    const double size = std::ldexp(1.0, n);
    NormBounds b;
    b.factored = 8.0 * size * size * stats.max_u * stats.max_u * stats.max_v /
                 (std::numbers::pi * std::numbers::pi * stats.min_u);
    b.entrywise = stats.max_u * stats.max_v * size;
    return b;
}

/// Entries with |i - j| <= 1 kept, everything else zeroed.
inline Matrix tridiag(const Matrix &a) {
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = std::max<Eigen::Index>(0, j - 1); i <= std::min(a.rows() - 1, j + 1); ++i) {
            out(i, j) = a(i, j);
        }
    }
    return out;
}

/// Draws u and v from N(0, 1) and rescales both to unit max-norm. Raw draws
/// of u with magnitude below 1e-6 are redrawn so that min |u_i| stays away
/// from zero.
inline OnePairMatrix random_one_pair(int n, std::uint64_t seed) {
    if (n < 1 || n > 30) throw Error(ErrorCode::kInvalidArgument, "random_one_pair needs 1 <= n <= 30");
    Rng rng(seed);
    const std::size_t size = std::size_t{1} << n;
    std::vector<double> u(size), v(size);
    for (auto &x : u) {
        do {
            x = rng.normal();
        } while (std::abs(x) < 1e-6);
    }
    for (auto &x : v) x = rng.normal();
    auto normalize = [](std::vector<double> &x) {
        double m = 0.0;
        for (double e : x) m = std::max(m, std::abs(e));
        if (m > 0.0)
            for (double &e : x) e /= m;
    };
    normalize(u);
    normalize(v);
    return OnePairMatrix(n, std::move(u), std::move(v));
}

}  // namespace ssbe
