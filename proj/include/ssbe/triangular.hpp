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

#include <vector>

#include "ssbe/block_encoding.hpp"
#include "ssbe/circuit.hpp"
#include "ssbe/error.hpp"

namespace ssbe {

/// Cyclic increment x -> x + 1 mod 2^width, wire 0 most significant.
/// Each bit flips when every less significant bit is set; the cascade runs
/// from the top bit down so the controls still hold their input values.
inline Circuit build_shift_circuit(int width) {
    if (width < 1) throw Error(ErrorCode::kInvalidArgument, "shift width must be at least 1");
    Circuit c(width);
    for (int k = 0; k + 1 < width; ++k) {
        std::vector<Control> controls;
        for (int q = k + 1; q < width; ++q) controls.push_back({q, true});
        c.x(k, std::move(controls));
    }
    c.x(width - 1);
    return c;
}

/// (N, n + 1, 0) encoding of the lower-triangular all-ones matrix L.
///
/// Wires: Hadamard register [0, n), overflow qubit n, system [n+1, 2n+1).
/// The Hadamard qubit of weight 2^p adds 2^p to the (n+1)-qubit register
/// [n, 2n+1) by incrementing its top n + 1 - p qubits, so the middle layer
/// maps |h>|x> to |h>|x + h mod 2N>. Post-selecting the Hadamard register
/// and the overflow qubit on zero leaves sum_{h} |x + h>/N restricted to
/// x + h < N, i.e. L/N.
inline BlockEncoding build_L_encoding(int n) {
    if (n < 1 || n > 20) throw Error(ErrorCode::kInvalidArgument, "L encoding needs 1 <= n <= 20");
    BlockEncoding be;
    be.n = n;
    be.m = n + 1;
    be.alpha = static_cast<double>(std::size_t{1} << n);
    be.eps_budget = 0.0;
    be.circuit = Circuit(2 * n + 1);
    for (int q = 0; q < n; ++q) be.circuit.h(q);
    for (int p = 0; p < n; ++p) {
        const int span = n + 1 - p;
        std::vector<int> map;
        for (int q = 0; q < span; ++q) map.push_back(n + q);
        const Control control{n - 1 - p, true};
        be.circuit.append(build_shift_circuit(span), map, std::span<const Control>(&control, 1));
    }
    for (int q = 0; q < n; ++q) be.circuit.h(q);
    add_standard_registers(be.circuit, n + 1, 0, n);
    be.validate();
    return be;
}

}  // namespace ssbe
