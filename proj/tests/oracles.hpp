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

// Reference implementations used only by the tests. They are written
// independently of the library kernels (no shared code paths) so that a
// bug in one shows up as a disagreement.

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "ssbe/circuit.hpp"
#include "ssbe/rng.hpp"

namespace ssbe::testing {

/// Basis-state image of `gate` on index b as a list of (index, amplitude).
inline std::vector<std::pair<std::uint64_t, double>> gate_column(const Gate &g, int width, std::uint64_t b) {
    auto bit = [&](int q) { return (b >> (width - 1 - q)) & 1u; };
    auto flip = [&](std::uint64_t x, int q) { return x ^ (std::uint64_t{1} << (width - 1 - q)); };
    for (const Control &c : g.controls) {
        if ((bit(c.qubit) == 1u) != c.on_one) return {{b, 1.0}};
    }
    const int t = g.targets[0];
    const double r = std::numbers::sqrt2 / 2.0;
    switch (g.kind) {
        case GateKind::kX:
            return {{flip(b, t), 1.0}};
        case GateKind::kZ:
            return {{b, bit(t) ? -1.0 : 1.0}};
        case GateKind::kH:
            return bit(t) ? std::vector<std::pair<std::uint64_t, double>>{{flip(b, t), r}, {b, -r}}
                          : std::vector<std::pair<std::uint64_t, double>>{{b, r}, {flip(b, t), r}};
        case GateKind::kRy: {
            const double co = std::cos(g.theta / 2.0), si = std::sin(g.theta / 2.0);
            if (bit(t)) return {{flip(b, t), -si}, {b, co}};
            return {{b, co}, {flip(b, t), si}};
        }
        case GateKind::kSwap: {
            const int u = g.targets[1];
            if (bit(t) == bit(u)) return {{b, 1.0}};
            return {{flip(flip(b, t), u), 1.0}};
        }
        case GateKind::kPermutation: {
            std::uint64_t x = 0;
            for (int q : g.targets) x = (x << 1) | bit(q);
            const std::uint64_t y = g.adjoint ? g.permutation->inverse(x) : g.permutation->forward(x);
            std::uint64_t out = b;
            const std::size_t k = g.targets.size();
            for (std::size_t i = 0; i < k; ++i) {
                const int q = g.targets[i];
                const std::uint64_t want = (y >> (k - 1 - i)) & 1u;
                if (((out >> (width - 1 - q)) & 1u) != want) out = flip(out, q);
            }
            return {{out, 1.0}};
        }
        case GateKind::kMultiplexed: {
            std::uint64_t sel = 0;
            for (int q : g.selectors) sel = (sel << 1) | bit(q);
            const Mat2 &m = g.multiplexor->table[sel];
            // Column bit(t) of m (or of its transpose).
            const int col = static_cast<int>(bit(t));
            const double top = g.adjoint ? m[2 * col + 0] : m[col];
            const double bottom = g.adjoint ? m[2 * col + 1] : m[2 + col];
            const std::uint64_t b0 = bit(t) ? flip(b, t) : b;
            return {{b0, top}, {flip(b0, t), bottom}};
        }
    }
    return {};
}

inline Eigen::MatrixXd dense_gate(const Gate &g, int width) {
    const std::uint64_t dim = std::uint64_t{1} << width;
    Eigen::MatrixXd u = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        for (auto [row, amp] : gate_column(g, width, b)) u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(b)) += amp;
    }
    return u;
}

/// Product of per-gate dense matrices, last gate leftmost.
inline Eigen::MatrixXd dense_unitary(const Circuit &c) {
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << c.width());
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(dim, dim);
    for (const Gate &g : c.gates()) u = dense_gate(g, c.width()) * u;
    return u;
}

/// Random circuit over every gate kind, with random (anti-)controls.
inline Circuit random_circuit(int width, int gates, Rng &rng) {
    Circuit c(width);
    auto pick = [&](int k) { return static_cast<int>(rng.next() % static_cast<std::uint64_t>(k)); };
    auto distinct = [&](int count) {
        std::vector<int> all(static_cast<std::size_t>(width));
        for (int q = 0; q < width; ++q) all[static_cast<std::size_t>(q)] = q;
        for (int i = 0; i < count; ++i) std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(i + pick(width - i))]);
        all.resize(static_cast<std::size_t>(count));
        return all;
    };
    for (int k = 0; k < gates; ++k) {
        int kind = pick(7);
        if (kind == 4 && width < 2) kind = 0;
        const int need = kind == 4 ? 2 : (kind >= 5 ? std::min(width, 3) : 1);
        const int extra = std::min(width - need, pick(3));
        auto qs = distinct(need + extra);
        std::vector<Control> controls;
        for (int i = need; i < need + extra; ++i) controls.push_back({qs[static_cast<std::size_t>(i)], (rng.next() & 1u) != 0});
        switch (kind) {
            case 0: c.h(qs[0], controls); break;
            case 1: c.x(qs[0], controls); break;
            case 2: c.z(qs[0], controls); break;
            case 3: c.ry(qs[0], 2.0 * std::numbers::pi * rng.uniform() - std::numbers::pi, controls); break;
            case 4: c.swap(qs[0], qs[1], controls); break;
            case 5: {
                const int k2 = need;
                const std::uint64_t size = std::uint64_t{1} << k2;
                std::vector<std::uint64_t> perm(size);
                for (std::uint64_t i = 0; i < size; ++i) perm[i] = i;
                for (std::uint64_t i = size - 1; i > 0; --i) std::swap(perm[i], perm[rng.next() % (i + 1)]);
                std::vector<std::uint64_t> inv(size);
                for (std::uint64_t i = 0; i < size; ++i) inv[perm[i]] = i;
                auto p = std::make_shared<Permutation>(Permutation{
                    "rand", [perm](std::uint64_t x) { return perm[x]; }, [inv](std::uint64_t x) { return inv[x]; }});
                c.permutation(std::vector<int>(qs.begin(), qs.begin() + k2), p, controls);
                if (rng.next() & 1u) c.add(c.gates().back().inverse());
                break;
            }
            default: {
                auto m = std::make_shared<Multiplexor>();
                m->name = "rand";
                const int sel = need - 1;
                for (int i = 0; i < (1 << sel); ++i) {
                    const double a = 2.0 * std::numbers::pi * rng.uniform();
                    const double s = (rng.next() & 1u) ? 1.0 : -1.0;
                    m->table.push_back({std::cos(a), -s * std::sin(a), std::sin(a), s * std::cos(a)});
                }
                c.multiplexed(std::vector<int>(qs.begin() + 1, qs.begin() + need), qs[0], m, controls);
                if (rng.next() & 1u) c.add(c.gates().back().inverse());
                break;
            }
        }
    }
    return c;
}

/// Naive O(L^2) form of the Gray-ordered Walsh-Hadamard angle transform.
inline std::vector<double> naive_wht_gray(const std::vector<double> &theta) {
    const std::size_t size = theta.size();
    std::vector<double> out(size, 0.0);
    for (std::size_t i = 0; i < size; ++i) {
        const std::size_t g = i ^ (i >> 1);
        for (std::size_t x = 0; x < size; ++x) {
            const int parity = __builtin_popcountll(g & x) & 1;
            out[i] += (parity ? -1.0 : 1.0) * theta[x];
        }
        out[i] /= static_cast<double>(size);
    }
    return out;
}

/// Dense Z_block = sum_h |h><h| (x) Z_{2N}^h on n + (n + 1) qubits, the
/// h register most significant.
inline Eigen::MatrixXd dense_z_block(int n) {
    const std::uint64_t size = std::uint64_t{1} << n;
    const std::uint64_t reg = 2 * size;
    const auto dim = static_cast<Eigen::Index>(size * reg);
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(dim, dim);
    for (std::uint64_t h = 0; h < size; ++h) {
        for (std::uint64_t x = 0; x < reg; ++x) {
            z(static_cast<Eigen::Index>(h * reg + (x + h) % reg), static_cast<Eigen::Index>(h * reg + x)) = 1.0;
        }
    }
    return z;
}

/// Kronecker product of dense matrices.
inline Eigen::MatrixXd kron(const Eigen::MatrixXd &a, const Eigen::MatrixXd &b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Eigen::MatrixXd hadamard_power(int n) {
    Eigen::MatrixXd h(2, 2);
    h << 1, 1, 1, -1;
    h /= std::numbers::sqrt2;
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
    for (int i = 0; i < n; ++i) out = kron(out, h);
    return out;
}

}  // namespace ssbe::testing
