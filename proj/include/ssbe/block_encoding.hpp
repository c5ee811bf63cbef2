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
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ssbe/circuit.hpp"
#include "ssbe/error.hpp"
#include "ssbe/sepcore.hpp"
#include "ssbe/simulator.hpp"

namespace ssbe {

/// Circuit U together with the (alpha, m, eps) metadata of a block
/// encoding: ||A - alpha * (<0^m| (x) I) U (|0^m> (x) I)|| <= eps.
///
/// Wire layout is fixed: persistent ancillas on [0, m), freed oracle
/// workspace on [m, m + workspace), system register on the last n wires.
/// Workspace wires start and end in |0> and are not part of m.
struct BlockEncoding {
    Circuit circuit;
    int n = 0;
    int m = 0;
    int workspace = 0;
    // Width of the oracle registers the encoding borrows, whether or not
    // they are simulated (see Workspace::kContracted).
    int oracle_register = 0;
    double alpha = 1.0;
    double eps_budget = 0.0;

    std::size_t dim() const { return std::size_t{1} << n; }
    int system_first() const { return m + workspace; }

    void validate() const {
        if (circuit.width() != n + m + workspace) {
            throw Error(ErrorCode::kInvalidArgument, "block encoding width must equal n + m + workspace");
        }
        if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
        if (!(eps_budget >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps budget must be non-negative");
    }
};

inline void add_standard_registers(Circuit &c, int m, int workspace, int n) {
    if (m) c.add_register("ancilla", 0, m);
    if (workspace) c.add_register("workspace", m, workspace);
    c.add_register("system", m + workspace, n);
}

/// Wraps a bare n-qubit unitary as a (1, 0, 0) encoding.
inline BlockEncoding trivial_encoding(Circuit circuit) {
    BlockEncoding be;
    be.n = circuit.width();
    be.circuit = std::move(circuit);
    be.validate();
    return be;
}

struct ExtractOptions {
    int threads = 0;  // 0: hardware concurrency
    int max_width = 26;
};

struct BlockExtraction {
    Matrix block;
    // Largest per-column probability mass found with a nonzero workspace.
    double workspace_leak = 0.0;
};

namespace detail {

template <typename Fn>
void parallel_columns(std::size_t count, int threads, Fn &&fn) {
    unsigned workers = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
    if (workers <= 1) {
        for (std::size_t j = 0; j < count; ++j) fn(j);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t j = w; j < count; j += workers) fn(j);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool) t.join();
    for (auto &e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace detail

/// Simulates every column |0^m>|0^w>|j> and reads the |0^m>|0^w>|i>
/// amplitudes. All gates are real, so the simulation runs in real
/// arithmetic and the block carries no imaginary part.
inline BlockExtraction extract_block_checked(const BlockEncoding &be, const ExtractOptions &opts = {}) {
    be.validate();
    if (be.circuit.width() > opts.max_width) {
        throw Error(ErrorCode::kResourceLimit, "extract_block: width " + std::to_string(be.circuit.width()) +
                                                   " exceeds the simulator cap " + std::to_string(opts.max_width));
    }
    const std::size_t dim = be.dim();
    const std::uint64_t total = std::uint64_t{1} << be.circuit.width();
    const std::uint64_t ws_mask = ((std::uint64_t{1} << be.workspace) - 1) << be.n;
    const std::uint64_t anc_mask = ((std::uint64_t{1} << be.m) - 1) << (be.n + be.workspace);
    BlockExtraction out;
    out.block = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    std::vector<double> leaks(dim, 0.0);
    detail::parallel_columns(dim, opts.threads, [&](std::size_t j) {
        std::vector<double> psi(total, 0.0);
        psi[j] = 1.0;
        Simulator<double> sim;
        sim.run(be.circuit, psi);
        for (std::size_t i = 0; i < dim; ++i) {
            out.block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = psi[i];
        }
        if (ws_mask) {
            double leak = 0.0;
            for (std::uint64_t k = 0; k < total; ++k) {
                if ((k & ws_mask) && !(k & anc_mask)) leak += psi[k] * psi[k];
            }
            leaks[j] = leak;
        }
    });
    out.workspace_leak = *std::max_element(leaks.begin(), leaks.end());
    return out;
}

inline Matrix extract_block(const BlockEncoding &be, const ExtractOptions &opts = {}) {
    return extract_block_checked(be, opts).block;
}

/// Encoding of second_matrix * first_matrix: `first` runs first, its
/// ancillas are swapped away from the wires `second` will use, then
/// `second` runs on fresh ancillas. With a = second.m <= b = first.m the
/// swap layer is SWAP(i, b + i) for i < a. Metadata follows the product
/// rule (alpha_A alpha_B, a + b, alpha_A eps_B + alpha_B eps_A).
inline BlockEncoding compose(const BlockEncoding &first, const BlockEncoding &second) {
    if (first.n != second.n) throw Error(ErrorCode::kDimensionMismatch, "compose: system sizes differ");
    const int a = second.m;
    const int b = first.m;
    const int w = std::max(first.workspace, second.workspace);
    const int n = first.n;
    BlockEncoding out;
    out.n = n;
    out.m = a + b;
    out.workspace = w;
    out.oracle_register = std::max(first.oracle_register, second.oracle_register);
    out.circuit = Circuit(a + b + w + n);

    std::vector<int> map_first;
    for (int q = 0; q < b; ++q) map_first.push_back(a + q);
    for (int q = 0; q < first.workspace; ++q) map_first.push_back(a + b + q);
    for (int q = 0; q < n; ++q) map_first.push_back(a + b + w + q);
    out.circuit.append(first.circuit, map_first);

    const int lo = std::min(a, b);
    const int hi = std::max(a, b);
    for (int i = 0; i < lo; ++i) out.circuit.swap(i, hi + i);

    std::vector<int> map_second;
    for (int q = 0; q < a; ++q) map_second.push_back(b + q);
    for (int q = 0; q < second.workspace; ++q) map_second.push_back(a + b + q);
    for (int q = 0; q < n; ++q) map_second.push_back(a + b + w + q);
    out.circuit.append(second.circuit, map_second);

    add_standard_registers(out.circuit, out.m, w, n);
    out.alpha = first.alpha * second.alpha;
    out.eps_budget = second.alpha * first.eps_budget + first.alpha * second.eps_budget;
    out.validate();
    return out;
}

/// U^dagger encodes the transpose of the (real) block of U.
inline BlockEncoding adjoint(const BlockEncoding &be) {
    BlockEncoding out = be;
    out.circuit = be.circuit.adjoint();
    return out;
}

namespace detail {

inline BlockEncoding lcu_combine(const BlockEncoding &a, const BlockEncoding &b, bool subtract) {
    if (a.n != b.n) throw Error(ErrorCode::kDimensionMismatch, "LCU: system sizes differ");
    if (a.m != b.m) throw Error(ErrorCode::kDimensionMismatch, "LCU: ancilla counts differ");
    if (std::abs(a.alpha - b.alpha) > 1e-12 * std::max(a.alpha, b.alpha)) {
        throw Error(ErrorCode::kScaleMismatch, "LCU with uniform weights needs equal scales");
    }
    const int w = std::max(a.workspace, b.workspace);
    BlockEncoding out;
    out.n = a.n;
    out.m = a.m + 1;
    out.workspace = w;
    out.oracle_register = std::max(a.oracle_register, b.oracle_register);
    out.circuit = Circuit(out.m + w + a.n);
    auto wires = [&](const BlockEncoding &e) {
        std::vector<int> map;
        for (int q = 0; q < e.m; ++q) map.push_back(1 + q);
        for (int q = 0; q < e.workspace; ++q) map.push_back(out.m + q);
        for (int q = 0; q < e.n; ++q) map.push_back(out.m + w + q);
        return map;
    };
    out.circuit.h(0);
    const Control anti{0, false};
    const Control plain{0, true};
    out.circuit.append(a.circuit, wires(a), std::span<const Control>(&anti, 1));
    out.circuit.append(b.circuit, wires(b), std::span<const Control>(&plain, 1));
    out.circuit.h(0);
    if (subtract) out.circuit.x(0);
    add_standard_registers(out.circuit, out.m, w, out.n);
    out.alpha = 2.0 * a.alpha;
    out.eps_budget = a.eps_budget + b.eps_budget;
    out.validate();
    return out;
}

}  // namespace detail

/// Encodes A + B at scale 2 alpha (equal-scale components only).
inline BlockEncoding lcu_sum(const BlockEncoding &a, const BlockEncoding &b) { return detail::lcu_combine(a, b, false); }

/// Encodes A - B at scale 2 alpha: Hadamard, anti-controlled U_A,
/// controlled U_B, Hadamard, X.
inline BlockEncoding lcu_difference(const BlockEncoding &a, const BlockEncoding &b) {
    return detail::lcu_combine(a, b, true);
}

}  // namespace ssbe
