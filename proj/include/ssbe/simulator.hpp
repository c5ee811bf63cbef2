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

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "ssbe/circuit.hpp"
#include "ssbe/error.hpp"

namespace ssbe {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;
using ComplexMatrix = Eigen::MatrixXcd;

namespace detail {

inline std::uint64_t qubit_bit(int width, int q) { return std::uint64_t{1} << (width - 1 - q); }

inline std::uint64_t control_mask(const Gate &g, int width, std::uint64_t &value) {
    std::uint64_t mask = 0;
    value = 0;
    for (const Control &c : g.controls) {
        const std::uint64_t b = qubit_bit(width, c.qubit);
        mask |= b;
        if (c.on_one) value |= b;
    }
    return mask;
}

/// Calls fn(i) for every index whose bits under `fixed` equal `value`;
/// the remaining bits of [0, dim) are enumerated as submasks.
template <typename Fn>
inline void for_each_index(std::uint64_t dim, std::uint64_t fixed, std::uint64_t value, Fn &&fn) {
    const std::uint64_t free = (dim - 1) & ~fixed;
    std::uint64_t s = 0;
    do {
        fn(s | value);
        s = (s - free) & free;
    } while (s != 0);
}

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Complex &x) { return x.real() == 0.0 && x.imag() == 0.0; }

}  // namespace detail

/// In-place statevector kernels. T is double for real-amplitude runs or
/// std::complex<double>; every gate in the IR has a real matrix.
template <typename T>
class Simulator {
   public:
    void apply(const Gate &g, std::span<T> psi, int width) {
        const std::uint64_t dim = psi.size();
        std::uint64_t cval = 0;
        const std::uint64_t cmask = detail::control_mask(g, width, cval);
        switch (g.kind) {
            case GateKind::kX: {
                const std::uint64_t t = detail::qubit_bit(width, g.targets[0]);
                detail::for_each_index(dim, cmask | t, cval, [&](std::uint64_t i) { std::swap(psi[i], psi[i | t]); });
                break;
            }
            case GateKind::kZ: {
                const std::uint64_t t = detail::qubit_bit(width, g.targets[0]);
                detail::for_each_index(dim, cmask | t, cval | t, [&](std::uint64_t i) { psi[i] = -psi[i]; });
                break;
            }
            case GateKind::kH: {
                const double r = std::numbers::sqrt2 / 2.0;
                apply_mat2(psi, width, g.targets[0], cmask, cval, Mat2{r, r, r, -r});
                break;
            }
            case GateKind::kRy: {
                const double c = std::cos(g.theta / 2.0);
                const double s = std::sin(g.theta / 2.0);
                apply_mat2(psi, width, g.targets[0], cmask, cval, Mat2{c, -s, s, c});
                break;
            }
            case GateKind::kSwap: {
                const std::uint64_t a = detail::qubit_bit(width, g.targets[0]);
                const std::uint64_t b = detail::qubit_bit(width, g.targets[1]);
                detail::for_each_index(dim, cmask | a | b, cval | a, [&](std::uint64_t i) { std::swap(psi[i], psi[(i & ~a) | b]); });
                break;
            }
            case GateKind::kMultiplexed:
                apply_multiplexed(g, psi, width, cmask, cval);
                break;
            case GateKind::kPermutation:
                apply_permutation(g, psi, width, cmask, cval);
                break;
        }
    }

    void run(const Circuit &circuit, std::span<T> psi) {
        if (psi.size() != (std::uint64_t{1} << circuit.width())) {
            throw Error(ErrorCode::kDimensionMismatch, "state length must be 2^width");
        }
        for (const Gate &g : circuit.gates()) apply(g, psi, circuit.width());
    }

   private:
    static void apply_mat2(std::span<T> psi, int width, int target, std::uint64_t cmask, std::uint64_t cval,
                           const Mat2 &m) {
        const std::uint64_t t = detail::qubit_bit(width, target);
        detail::for_each_index(psi.size(), cmask | t, cval, [&](std::uint64_t i0) {
            const T a = psi[i0];
            const T b = psi[i0 | t];
            if (detail::is_zero(a) && detail::is_zero(b)) return;
            psi[i0] = m[0] * a + m[1] * b;
            psi[i0 | t] = m[2] * a + m[3] * b;
        });
    }

    static void apply_multiplexed(const Gate &g, std::span<T> psi, int width, std::uint64_t cmask, std::uint64_t cval) {
        const std::uint64_t t = detail::qubit_bit(width, g.targets[0]);
        std::vector<std::uint64_t> sel_bits;
        sel_bits.reserve(g.selectors.size());
        for (int q : g.selectors) sel_bits.push_back(detail::qubit_bit(width, q));
        const auto &table = g.multiplexor->table;
        detail::for_each_index(psi.size(), cmask | t, cval, [&](std::uint64_t i0) {
            const T a = psi[i0];
            const T b = psi[i0 | t];
            if (detail::is_zero(a) && detail::is_zero(b)) return;
            std::uint64_t sel = 0;
            for (std::uint64_t bit : sel_bits) sel = (sel << 1) | ((i0 & bit) ? 1u : 0u);
            const Mat2 &m = table[sel];
            if (g.adjoint) {
                psi[i0] = m[0] * a + m[2] * b;
                psi[i0 | t] = m[1] * a + m[3] * b;
            } else {
                psi[i0] = m[0] * a + m[1] * b;
                psi[i0 | t] = m[2] * a + m[3] * b;
            }
        });
    }

    void apply_permutation(const Gate &g, std::span<T> psi, int width, std::uint64_t cmask, std::uint64_t cval) {
        std::vector<std::uint64_t> bits;
        std::uint64_t tmask = 0;
        for (int q : g.targets) {
            bits.push_back(detail::qubit_bit(width, q));
            tmask |= bits.back();
        }
        const std::uint64_t limit = std::uint64_t{1} << bits.size();
        const auto &fn = g.adjoint ? g.permutation->inverse : g.permutation->forward;
        scratch_.assign(psi.size(), T{});
        for (std::uint64_t i = 0; i < psi.size(); ++i) {
            if (detail::is_zero(psi[i])) continue;
            if ((i & cmask) != cval) {
                scratch_[i] = psi[i];
                continue;
            }
            std::uint64_t sub = 0;
            for (std::uint64_t b : bits) sub = (sub << 1) | ((i & b) ? 1u : 0u);
            const std::uint64_t image = fn(sub);
            if (image >= limit) {
                throw Error(ErrorCode::kInvalidArgument, "permutation " + g.permutation->name + " left its register");
            }
            std::uint64_t j = i & ~tmask;
            for (std::size_t k = 0; k < bits.size(); ++k) {
                if ((image >> (bits.size() - 1 - k)) & 1u) j |= bits[k];
            }
            if (!detail::is_zero(scratch_[j])) {
                throw Error(ErrorCode::kInvalidArgument, "permutation " + g.permutation->name + " is not injective");
            }
            scratch_[j] = psi[i];
        }
        std::copy(scratch_.begin(), scratch_.end(), psi.begin());
    }

    std::vector<T> scratch_;
};

/// Returns U * state, gates applied in list order.
inline StateVector apply(const Circuit &circuit, StateVector state) {
    Simulator<Complex> sim;
    sim.run(circuit, state);
    return state;
}

inline constexpr int kMaxDenseWidth = 14;

/// Dense circuit unitary; column j is apply(circuit, |j>).
inline ComplexMatrix unitary(const Circuit &circuit) {
    if (circuit.width() > kMaxDenseWidth) {
        throw Error(ErrorCode::kResourceLimit, "dense unitary limited to width " + std::to_string(kMaxDenseWidth));
    }
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << circuit.width());
    ComplexMatrix u(dim, dim);
    Simulator<Complex> sim;
    StateVector col(static_cast<std::size_t>(dim));
    for (Eigen::Index j = 0; j < dim; ++j) {
        std::fill(col.begin(), col.end(), Complex{});
        col[static_cast<std::size_t>(j)] = 1.0;
        sim.run(circuit, col);
        for (Eigen::Index i = 0; i < dim; ++i) u(i, j) = col[static_cast<std::size_t>(i)];
    }
    return u;
}

/// Real-arithmetic unitary. Valid for every circuit in this IR since all
/// gate matrices are real.
inline Eigen::MatrixXd real_unitary(const Circuit &circuit) {
    if (circuit.width() > kMaxDenseWidth) {
        throw Error(ErrorCode::kResourceLimit, "dense unitary limited to width " + std::to_string(kMaxDenseWidth));
    }
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << circuit.width());
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(dim, dim);
    Simulator<double> sim;
    for (Eigen::Index j = 0; j < dim; ++j) {
        u(j, j) = 1.0;
        sim.run(circuit, std::span<double>(u.col(j).data(), static_cast<std::size_t>(dim)));
    }
    return u;
}

/// ||U^T U - I||_F, an upper bound on the spectral-norm defect.
inline double unitarity_defect(const Circuit &circuit) {
    const Eigen::MatrixXd u = real_unitary(circuit);
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(u.cols(), u.cols());
    gram.selfadjointView<Eigen::Lower>().rankUpdate(u.transpose());
    gram.diagonal().array() -= 1.0;
    // Only the lower triangle is populated; off-diagonal terms count twice.
    const Eigen::MatrixXd lower = gram.triangularView<Eigen::StrictlyLower>();
    return std::sqrt(gram.diagonal().squaredNorm() + 2.0 * lower.squaredNorm());
}

/// Checks that a permutation gate's evaluator is a bijection with a
/// consistent inverse on its full register (small registers only).
inline bool is_bijective(const Permutation &p, int bits) {
    if (bits > 24) throw Error(ErrorCode::kResourceLimit, "bijection check limited to 24 bits");
    const std::uint64_t size = std::uint64_t{1} << bits;
    std::vector<bool> hit(size, false);
    for (std::uint64_t x = 0; x < size; ++x) {
        const std::uint64_t y = p.forward(x);
        if (y >= size || hit[y] || p.inverse(y) != x) return false;
        hit[y] = true;
    }
    return true;
}

}  // namespace ssbe
