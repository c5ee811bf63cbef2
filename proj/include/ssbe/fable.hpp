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
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "ssbe/block_encoding.hpp"
#include "ssbe/circuit.hpp"
#include "ssbe/error.hpp"
#include "ssbe/sepcore.hpp"

namespace ssbe {

/// Compression settings; at most one of the three may be set. With none
/// set only exactly-zero transformed angles are dropped.
struct FableConfig {
    std::optional<double> cutoff;            // drop |theta_hat| <= cutoff
    std::optional<double> compression_rate;  // drop floor(rate * L) smallest
    std::optional<std::size_t> drop_smallest;

    void validate() const {
        const int set = cutoff.has_value() + compression_rate.has_value() + drop_smallest.has_value();
        if (set > 1) throw Error(ErrorCode::kInvalidArgument, "FABLE compression modes are mutually exclusive");
        if (cutoff && !(*cutoff >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "FABLE cutoff must be >= 0");
        if (compression_rate && !(*compression_rate >= 0.0 && *compression_rate < 1.0)) {
            throw Error(ErrorCode::kInvalidArgument, "FABLE compression rate must lie in [0, 1)");
        }
    }
};

struct FableEncoding {
    BlockEncoding encoding;
    std::size_t retained_rotations = 0;
    double prescale = 1.0;
    double effective_cutoff = 0.0;  // largest dropped |theta_hat|
};

inline std::uint64_t gray_code(std::uint64_t i) { return i ^ (i >> 1); }

/// Unnormalized fast Walsh-Hadamard transform in natural order. Applying
/// it twice multiplies by the length.
inline void walsh_hadamard(std::vector<double> &x) {
    if (!is_power_of_two(x.size())) throw Error(ErrorCode::kDimensionMismatch, "transform length must be 2^k");
    for (std::size_t h = 1; h < x.size(); h <<= 1) {
        for (std::size_t i = 0; i < x.size(); i += 2 * h) {
            for (std::size_t j = i; j < i + h; ++j) {
                const double a = x[j];
                const double b = x[j + h];
                x[j] = a + b;
                x[j + h] = a - b;
            }
        }
    }
}

/// Rotation angles of a Gray-code uniformly controlled Ry: entry i is
/// (1/L) sum_x (-1)^{popcount(x & gray(i))} angles[x]. Length must be a
/// power of four.
inline std::vector<double> walsh_hadamard_gray(std::vector<double> angles) {
    const std::size_t size = angles.size();
    if (!is_power_of_two(size) || (log2_exact(size) % 2) != 0) {
        throw Error(ErrorCode::kDimensionMismatch, "angle vector length must be a power of four");
    }
    walsh_hadamard(angles);
    std::vector<double> out(size);
    const double scale = 1.0 / static_cast<double>(size);
    for (std::size_t i = 0; i < size; ++i) out[i] = angles[gray_code(i)] * scale;
    return out;
}

/// FABLE encoding of a real N x N matrix at scale N (times the prescale
/// applied when max |a_ij| > 1).
///
/// Wires: ancilla 0, row register [1, n+1), column/system register
/// [n+1, 2n+1). Circuit: H on the row register, the uniformly controlled
/// Ry(2 arcsin a_ij) on the ancilla controlled by (row, column), X on the
/// ancilla, SWAP of the two registers, H on the row register.
inline FableEncoding fable_encode(const Matrix &a, const FableConfig &config = {}) {
    config.validate();
    if (a.rows() != a.cols() || !is_power_of_two(static_cast<std::size_t>(a.rows()))) {
        throw Error(ErrorCode::kDimensionMismatch, "FABLE needs a square matrix of size 2^n");
    }
    const int n = log2_exact(static_cast<std::size_t>(a.rows()));
    if (n < 1 || n > 12) throw Error(ErrorCode::kResourceLimit, "FABLE size out of range");
    const std::size_t dim = std::size_t{1} << n;
    const std::size_t count = dim * dim;

    FableEncoding out;
    const double peak = a.cwiseAbs().maxCoeff();
    out.prescale = peak > 1.0 ? peak : 1.0;

    std::vector<double> theta(count);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t col = 0; col < dim; ++col) {
            const double entry = a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(col)) / out.prescale;
            theta[(r << n) | col] = 2.0 * std::asin(std::clamp(entry, -1.0, 1.0));
        }
    }
    const std::vector<double> hat = walsh_hadamard_gray(std::move(theta));

    std::vector<bool> keep(count, true);
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return std::abs(hat[x]) < std::abs(hat[y]); });
    std::size_t drop = 0;
    if (config.compression_rate) {
        drop = static_cast<std::size_t>(std::floor(*config.compression_rate * static_cast<double>(count)));
    } else if (config.drop_smallest) {
        drop = std::min(*config.drop_smallest, count);
    } else {
        const double cut = config.cutoff.value_or(0.0);
        for (std::size_t i : order) {
            if (std::abs(hat[i]) > cut) break;
            ++drop;
        }
    }
    for (std::size_t k = 0; k < drop; ++k) {
        keep[order[k]] = false;
        out.effective_cutoff = std::max(out.effective_cutoff, std::abs(hat[order[k]]));
    }

    const int width = 2 * n + 1;
    Circuit c(width);
    for (int q = 1; q <= n; ++q) c.h(q);
    // Bit b of the control index (row << n | column) lives on wire 2n - b.
    std::uint64_t pending = 0;
    auto flush = [&] {
        for (int b = 0; b < 2 * n; ++b) {
            if ((pending >> b) & 1u) c.cx(2 * n - b, 0);
        }
        pending = 0;
    };
    for (std::size_t i = 0; i < count; ++i) {
        if (keep[i]) {
            flush();
            c.ry(0, hat[i]);
            ++out.retained_rotations;
        }
        pending ^= gray_code(i) ^ gray_code((i + 1) % count);
    }
    flush();
    c.x(0);
    for (int q = 0; q < n; ++q) c.swap(1 + q, n + 1 + q);
    for (int q = 1; q <= n; ++q) c.h(q);
    c.add_register("ancilla", 0, n + 1);
    c.add_register("system", n + 1, n);

    BlockEncoding &be = out.encoding;
    be.circuit = std::move(c);
    be.n = n;
    be.m = n + 1;
    be.alpha = static_cast<double>(dim) * out.prescale;
    be.eps_budget = std::pow(static_cast<double>(dim), 3) * out.effective_cutoff * out.prescale;
    be.validate();
    return out;
}

}  // namespace ssbe
