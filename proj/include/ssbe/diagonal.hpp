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
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssbe/block_encoding.hpp"
#include "ssbe/circuit.hpp"
#include "ssbe/error.hpp"
#include "ssbe/sepcore.hpp"

namespace ssbe {

/// Fixed-point format of the oracle registers: one sign qubit plus t + 1
/// fractional digits.
struct FixedPointSpec {
    int t = 12;
    bool includes_sign = true;
    double c = kArcsinScale;

    int register_width() const { return t + 2; }
    void validate() const {
        if (t < 1 || t > 40) throw Error(ErrorCode::kInvalidArgument, "precision t must be in [1, 40]");
        if (!(c > 0.0 && c < 1.0)) throw Error(ErrorCode::kInvalidArgument, "c must lie in (0, 1)");
    }
};

/// Whether the oracle workspace is simulated qubit by qubit or folded into
/// the single-ancilla rotation it produces. Both give the same block; the
/// contracted form keeps full encodings within simulator reach.
enum class Workspace { kContracted, kExpanded };

enum class DiagMode { kForward, kInverse };

/// Round-to-nearest, ties away from zero, of x in [0, 1) to `digits`
/// fractional binary digits. Saturates at the largest representable code.
inline std::uint64_t quantize(double x, int digits) {
    const double scaled = std::round(std::ldexp(x, digits));
    const double top = std::ldexp(1.0, digits) - 1.0;
    if (scaled <= 0.0) return 0;
    return static_cast<std::uint64_t>(std::min(scaled, top));
}

inline double dequantize(std::uint64_t code, int digits) { return std::ldexp(static_cast<double>(code), -digits); }

/// Smallest k >= 0 with 2^k >= mu.
inline int ceil_log2(double mu) {
    int k = 0;
    while (std::ldexp(1.0, k) < mu * (1.0 - 1e-15)) ++k;
    return k;
}

/// U_theta on t + 3 wires: ancilla 0, sign 1, digits 2..t+2 (most
/// significant first). Maps |0>|s>|theta> to
/// (-1)^s (sin(pi theta)|0> + cos(pi theta)|1>) |s>|theta>.
inline Circuit build_theta_cascade(const FixedPointSpec &spec) {
    spec.validate();
    Circuit c(spec.t + 3);
    if (spec.includes_sign) c.z(1);
    for (int k = 0; k <= spec.t; ++k) c.ry(0, std::numbers::pi / std::ldexp(1.0, k), {{2 + k, true}});
    c.x(0);
    c.add_register("ancilla", 0, 1);
    c.add_register("sign", 1, 1);
    c.add_register("angle", 2, spec.t + 1);
    return c;
}

/// Classical content of O_D and of the arcsin oracle for one diagonal.
struct DiagonalOracle {
    DiagMode mode = DiagMode::kForward;
    FixedPointSpec spec;
    int t_prime = 0;  // O_D writes t_prime + 1 digits
    double max_abs = 0.0;
    double min_abs = 0.0;
    double mu = 1.0;
    std::vector<bool> negative;
    std::vector<std::uint64_t> value;  // quantized c |D_ii| / M
    std::vector<std::uint64_t> angle;  // quantized arcsin output, t + 1 digits

    std::size_t size() const { return value.size(); }
    int value_digits() const { return t_prime + 1; }
    int angle_digits() const { return spec.t + 1; }
    int register_width() const { return t_prime + 2; }
    double angle_of(std::size_t i) const { return dequantize(angle[i], angle_digits()); }

    /// Amplitude (-1)^sgn sin(pi theta_i) the circuit writes on |0>|i>.
    double encoded_entry(std::size_t i) const {
        const double s = std::sin(std::numbers::pi * angle_of(i));
        return negative[i] ? -s : s;
    }

    double alpha() const {
        return mode == DiagMode::kForward ? max_abs / spec.c : 1.0 / (spec.c * min_abs);
    }

    double eps() const {
        const double step = std::numbers::pi / std::ldexp(spec.c, spec.t);
        return mode == DiagMode::kForward ? max_abs * step : step / min_abs;
    }
};

struct DiagScale {
    std::optional<double> max_abs;  // forward: override M
    std::optional<double> min_abs;  // inverse: override m
};

/// Quantizes the oracle tables. Forward: theta_i ~ arcsin(c|D_ii|/M)/pi.
/// Inverse: with y_i ~ c|D_ii|/M on t' + 1 digits, t' = t + ceil(log2 mu),
/// omega_i ~ arcsin(c^2 / (mu y_i))/pi, i.e. sin(pi omega_i) ~ c m/|D_ii|.
inline DiagonalOracle make_diag_oracle(std::span<const double> entries, DiagMode mode, const FixedPointSpec &spec,
                                       const DiagScale &scale = {}) {
    spec.validate();
    if (entries.empty() || !is_power_of_two(entries.size())) {
        throw Error(ErrorCode::kDimensionMismatch, "diagonal length must be a power of two");
    }
    DiagonalOracle o;
    o.mode = mode;
    o.spec = spec;
    double big = 0.0;
    double small = std::abs(entries[0]);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!std::isfinite(entries[i])) throw Error(ErrorCode::kInvalidArgument, "diagonal entries must be finite", i);
        big = std::max(big, std::abs(entries[i]));
        small = std::min(small, std::abs(entries[i]));
        if (mode == DiagMode::kInverse && entries[i] == 0.0) throw zero_generator(i);
    }
    o.max_abs = scale.max_abs.value_or(big);
    o.min_abs = scale.min_abs.value_or(small);
    if (!(o.max_abs > 0.0)) throw Error(ErrorCode::kInvalidArgument, "diagonal is identically zero");
    if (o.max_abs < big) throw Error(ErrorCode::kInvalidArgument, "scale override below the largest entry");
    if (mode == DiagMode::kInverse && !(o.min_abs > 0.0 && o.min_abs <= small)) {
        throw Error(ErrorCode::kInvalidArgument, "inverse scale override must lie in (0, min |D_ii|]");
    }
    o.mu = mode == DiagMode::kInverse ? o.max_abs / o.min_abs : 1.0;
    o.t_prime = spec.t + (mode == DiagMode::kInverse ? ceil_log2(o.mu) : 0);
    if (o.register_width() > 60) throw Error(ErrorCode::kResourceLimit, "oracle register too wide");

    const double c = spec.c;
    for (double d : entries) {
        o.negative.push_back(d < 0.0);
        const std::uint64_t v = quantize(c * std::abs(d) / o.max_abs, o.value_digits());
        o.value.push_back(v);
        const double y = dequantize(v, o.value_digits());
        double arg = y;
        if (mode == DiagMode::kInverse) arg = y > 0.0 ? std::min(1.0, c * c / (o.mu * y)) : 1.0;
        o.angle.push_back(quantize(std::asin(arg) / std::numbers::pi, o.angle_digits()));
    }
    return o;
}

namespace detail {

inline std::shared_ptr<const Permutation> xor_table(std::string name, std::vector<std::uint64_t> codes, int n) {
    const std::uint64_t low = (std::uint64_t{1} << n) - 1;
    auto fn = [codes = std::move(codes), n, low](std::uint64_t x) { return x ^ (codes[x & low] << n); };
    return std::make_shared<Permutation>(Permutation{std::move(name), fn, fn});
}

}  // namespace detail

/// Builds the diagonal (or diagonal inverse) encoding from its oracle
/// tables. Expanded layout: ancilla 0, sign 1, value digits [2, t'+3),
/// system last; gates O_D, arcsin oracle, U_theta, their inverses.
inline BlockEncoding build_diag_encoding(const DiagonalOracle &oracle, Workspace mode = Workspace::kContracted) {
    const int n = log2_exact(oracle.size());
    BlockEncoding be;
    be.n = n;
    be.m = 1;
    be.oracle_register = oracle.register_width();
    be.alpha = oracle.alpha();
    be.eps_budget = oracle.eps();
    const bool inverse = oracle.mode == DiagMode::kInverse;
    if (mode == Workspace::kContracted) {
        auto table = std::make_shared<Multiplexor>();
        table->name = inverse ? "U_Dinv" : "U_D";
        for (std::size_t i = 0; i < oracle.size(); ++i) {
            const double s = std::sin(std::numbers::pi * oracle.angle_of(i));
            const double co = std::cos(std::numbers::pi * oracle.angle_of(i));
            const double sg = oracle.negative[i] ? -1.0 : 1.0;
            table->table.push_back({sg * s, sg * co, sg * co, -sg * s});
        }
        be.circuit = Circuit(1 + n);
        std::vector<int> selectors;
        for (int q = 0; q < n; ++q) selectors.push_back(1 + q);
        be.circuit.multiplexed(selectors, 0, std::move(table));
        add_standard_registers(be.circuit, 1, 0, n);
        be.validate();
        return be;
    }

    const int w = oracle.register_width();
    const int vd = oracle.value_digits();
    be.workspace = w;
    be.circuit = Circuit(1 + w + n);
    std::vector<std::uint64_t> od_codes, arc_codes;
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        od_codes.push_back((oracle.negative[i] ? std::uint64_t{1} << vd : 0) | oracle.value[i]);
        arc_codes.push_back(oracle.value[i] ^ (oracle.angle[i] << (oracle.t_prime - oracle.spec.t)));
    }
    auto od = detail::xor_table("O_D", std::move(od_codes), n);
    auto arc = detail::xor_table(inverse ? "InverseArcsinOracle" : "ArcsinOracle", std::move(arc_codes), n);

    std::vector<int> od_wires, arc_wires;
    for (int q = 1; q < 1 + w + n; ++q) od_wires.push_back(q);
    for (int q = 2; q < 1 + w + n; ++q) arc_wires.push_back(q);
    be.circuit.permutation(od_wires, od);
    be.circuit.permutation(arc_wires, arc);
    std::vector<int> cascade_map{0, 1};
    for (int k = 0; k <= oracle.spec.t; ++k) cascade_map.push_back(2 + k);
    be.circuit.append(build_theta_cascade(oracle.spec), cascade_map);
    const Gate od_gate = be.circuit.gates()[0];
    const Gate arc_gate = be.circuit.gates()[1];
    be.circuit.add(arc_gate.inverse());
    be.circuit.add(od_gate.inverse());
    add_standard_registers(be.circuit, 1, w, n);
    be.validate();
    return be;
}

/// (M/c, 1, M pi / (c 2^t)) encoding of diag(entries).
inline BlockEncoding build_diag_encoding(std::span<const double> entries, const FixedPointSpec &spec,
                                         Workspace mode = Workspace::kContracted, const DiagScale &scale = {}) {
    return build_diag_encoding(make_diag_oracle(entries, DiagMode::kForward, spec, scale), mode);
}

/// (1/(c m), 1, pi / (c m 2^t)) encoding of diag(entries)^{-1}.
inline BlockEncoding build_diag_inverse_encoding(std::span<const double> entries, const FixedPointSpec &spec,
                                                 Workspace mode = Workspace::kContracted,
                                                 const DiagScale &scale = {}) {
    return build_diag_encoding(make_diag_oracle(entries, DiagMode::kInverse, spec, scale), mode);
}

}  // namespace ssbe
