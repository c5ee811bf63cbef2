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
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ssbe/error.hpp"
#include "ssbe/io.hpp"

namespace ssbe {

// Qubit 0 is the top wire of a circuit diagram and the most significant bit
// of a basis-state index: on a width-w circuit, qubit q is bit (w - 1 - q).

enum class GateKind { kH, kX, kZ, kRy, kSwap, kPermutation, kMultiplexed };

struct Control {
    int qubit = 0;
    bool on_one = true;  // false: anti-control (fires on |0>)
};

/// Classical reversible map on the integer spelled by a gate's target
/// qubits, first target most significant.
struct Permutation {
    std::string name;
    std::function<std::uint64_t(std::uint64_t)> forward;
    std::function<std::uint64_t(std::uint64_t)> inverse;
};

/// Row-major real 2x2 matrix.
using Mat2 = std::array<double, 4>;

/// Uniformly controlled single-qubit gate: the value of the selector
/// register picks which table entry acts on the target.
struct Multiplexor {
    std::string name;
    std::vector<Mat2> table;
};

struct Gate {
    GateKind kind = GateKind::kH;
    std::vector<int> targets;
    std::vector<Control> controls;
    std::vector<int> selectors;  // kMultiplexed only
    double theta = 0.0;          // kRy only
    std::shared_ptr<const Permutation> permutation;
    std::shared_ptr<const Multiplexor> multiplexor;
    bool adjoint = false;  // permutation/multiplexor applied in inverse form

    Gate inverse() const {
        Gate g = *this;
        if (kind == GateKind::kRy) g.theta = -theta;
        if (kind == GateKind::kPermutation || kind == GateKind::kMultiplexed) g.adjoint = !adjoint;
        return g;
    }
};

struct Register {
    std::string name;
    int first = 0;
    int size = 0;
};

class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(int width) : width_(width) {
        if (width < 0 || width > 62) throw Error(ErrorCode::kResourceLimit, "circuit width must be in [0, 62]");
    }

    int width() const { return width_; }
    const std::vector<Gate> &gates() const { return gates_; }
    const std::vector<Register> &registers() const { return registers_; }
    std::size_t size() const { return gates_.size(); }

    void add(Gate g) {
        validate(g);
        gates_.push_back(std::move(g));
    }

    Circuit &h(int q, std::vector<Control> controls = {}) { return single(GateKind::kH, q, std::move(controls)); }
    Circuit &x(int q, std::vector<Control> controls = {}) { return single(GateKind::kX, q, std::move(controls)); }
    Circuit &z(int q, std::vector<Control> controls = {}) { return single(GateKind::kZ, q, std::move(controls)); }
    Circuit &ry(int q, double theta, std::vector<Control> controls = {}) {
        Gate g;
        g.kind = GateKind::kRy;
        g.targets = {q};
        g.controls = std::move(controls);
        g.theta = theta;
        add(std::move(g));
        return *this;
    }
    Circuit &cx(int control, int target) { return x(target, {{control, true}}); }
    Circuit &toffoli(int c0, int c1, int target) { return x(target, {{c0, true}, {c1, true}}); }
    Circuit &swap(int a, int b, std::vector<Control> controls = {}) {
        Gate g;
        g.kind = GateKind::kSwap;
        g.targets = {a, b};
        g.controls = std::move(controls);
        add(std::move(g));
        return *this;
    }
    Circuit &permutation(std::vector<int> targets, std::shared_ptr<const Permutation> p,
                         std::vector<Control> controls = {}) {
        Gate g;
        g.kind = GateKind::kPermutation;
        g.targets = std::move(targets);
        g.controls = std::move(controls);
        g.permutation = std::move(p);
        add(std::move(g));
        return *this;
    }
    Circuit &multiplexed(std::vector<int> selectors, int target, std::shared_ptr<const Multiplexor> m,
                         std::vector<Control> controls = {}) {
        Gate g;
        g.kind = GateKind::kMultiplexed;
        g.targets = {target};
        g.selectors = std::move(selectors);
        g.controls = std::move(controls);
        g.multiplexor = std::move(m);
        add(std::move(g));
        return *this;
    }

    void add_register(std::string name, int first, int size) {
        if (first < 0 || size < 0 || first + size > width_) {
            throw Error(ErrorCode::kInvalidArgument, "register " + name + " does not fit the circuit");
        }
        for (const auto &r : registers_) {
            if (first < r.first + r.size && r.first < first + size) {
                throw Error(ErrorCode::kInvalidArgument, "register " + name + " overlaps " + r.name);
            }
        }
        registers_.push_back({std::move(name), first, size});
    }

    /// Appends `sub` with its qubit q relabelled to wire_map[q]; every
    /// appended gate additionally carries `extra_controls`.
    void append(const Circuit &sub, std::span<const int> wire_map, std::span<const Control> extra_controls = {}) {
        if (wire_map.size() != static_cast<std::size_t>(sub.width())) {
            throw Error(ErrorCode::kDimensionMismatch, "wire map size differs from sub-circuit width");
        }
        for (const Gate &src : sub.gates()) {
            Gate g = src;
            for (int &q : g.targets) q = wire_map[q];
            for (int &q : g.selectors) q = wire_map[q];
            for (Control &c : g.controls) c.qubit = wire_map[c.qubit];
            g.controls.insert(g.controls.begin(), extra_controls.begin(), extra_controls.end());
            add(std::move(g));
        }
    }

    Circuit adjoint() const {
        Circuit out(width_);
        out.registers_ = registers_;
        out.gates_.reserve(gates_.size());
        for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
        return out;
    }

    std::size_t count(GateKind kind) const {
        return static_cast<std::size_t>(
            std::count_if(gates_.begin(), gates_.end(), [kind](const Gate &g) { return g.kind == kind; }));
    }

   private:
    Circuit &single(GateKind kind, int q, std::vector<Control> controls) {
        Gate g;
        g.kind = kind;
        g.targets = {q};
        g.controls = std::move(controls);
        add(std::move(g));
        return *this;
    }

    void validate(const Gate &g) const {
        std::vector<int> used = g.targets;
        used.insert(used.end(), g.selectors.begin(), g.selectors.end());
        for (const Control &c : g.controls) used.push_back(c.qubit);
        for (int q : used) {
            if (q < 0 || q >= width_) {
                throw Error(ErrorCode::kInvalidArgument,
                            "qubit index " + std::to_string(q) + " outside width " + std::to_string(width_));
            }
        }
        std::sort(used.begin(), used.end());
        if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
            throw Error(ErrorCode::kInvalidArgument, "gate uses a qubit more than once");
        }
        switch (g.kind) {
            case GateKind::kH:
            case GateKind::kX:
            case GateKind::kZ:
                if (g.targets.size() != 1) throw Error(ErrorCode::kInvalidArgument, "single-qubit gate needs one target");
                break;
            case GateKind::kRy:
                if (g.targets.size() != 1) throw Error(ErrorCode::kInvalidArgument, "Ry needs one target");
                if (!std::isfinite(g.theta)) throw Error(ErrorCode::kInvalidArgument, "Ry angle is not finite");
                break;
            case GateKind::kSwap:
                if (g.targets.size() != 2) throw Error(ErrorCode::kInvalidArgument, "SWAP needs two targets");
                break;
            case GateKind::kPermutation:
                if (!g.permutation || !g.permutation->forward || !g.permutation->inverse) {
                    throw Error(ErrorCode::kInvalidArgument, "permutation gate without evaluator");
                }
                if (g.targets.empty()) throw Error(ErrorCode::kInvalidArgument, "permutation gate without targets");
                break;
            case GateKind::kMultiplexed:
                if (!g.multiplexor || g.targets.size() != 1) {
                    throw Error(ErrorCode::kInvalidArgument, "multiplexed gate needs a table and one target");
                }
                if (g.multiplexor->table.size() != (std::size_t{1} << g.selectors.size())) {
                    throw Error(ErrorCode::kDimensionMismatch, "multiplexor table size must be 2^selectors");
                }
                break;
        }
    }

    int width_ = 0;
    std::vector<Gate> gates_;
    std::vector<Register> registers_;
};

namespace detail {

inline std::string qubit_list(std::span<const int> qs) {
    std::string out = "[";
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (i) out += ',';
        out += 'q' + std::to_string(qs[i]);
    }
    return out + "]";
}

inline std::string control_prefix(const Gate &g) {
    std::string out;
    for (const Control &c : g.controls) {
        out += ' ';
        if (!c.on_one) out += '!';
        out += 'q' + std::to_string(c.qubit);
    }
    return out;
}

}  // namespace detail

/// Plain-text netlist, one gate per line. Controls precede "->", an
/// anti-control is written with a leading '!'. Examples:
///   H q3
///   CRY q0 -> q5 theta=0.78539816339744828
///   TOFF q0 q1 -> q2
///   BBOX oracle_v qs=[q1,q2,q3]
///   UCG diag_u qs=[q5,q6] -> q0
inline std::string to_netlist(const Circuit &circuit) {
    std::string out = "# width=" + std::to_string(circuit.width()) + "\n";
    for (const Register &r : circuit.registers()) {
        out += "# register " + r.name + " q" + std::to_string(r.first) + "..q" + std::to_string(r.first + r.size - 1) +
               "\n";
    }
    for (const Gate &g : circuit.gates()) {
        const std::size_t nc = g.controls.size();
        const bool plain_controls =
            std::all_of(g.controls.begin(), g.controls.end(), [](const Control &c) { return c.on_one; });
        auto prefixed = [&](const std::string &base) {
            if (nc == 0) return base;
            if (nc == 1) return "C" + base;
            return "MC" + base;
        };
        std::string line;
        switch (g.kind) {
            case GateKind::kH:
            case GateKind::kX:
            case GateKind::kZ:
            case GateKind::kRy: {
                std::string base = g.kind == GateKind::kH ? "H" : g.kind == GateKind::kX ? "X" : g.kind == GateKind::kZ ? "Z" : "RY";
                if (g.kind == GateKind::kX && nc == 2 && plain_controls) {
                    line = "TOFF";
                } else {
                    line = prefixed(base);
                }
                if (nc) line += detail::control_prefix(g) + " ->";
                line += " q" + std::to_string(g.targets[0]);
                if (g.kind == GateKind::kRy) line += " theta=" + format_double(g.theta);
                break;
            }
            case GateKind::kSwap:
                line = prefixed("SWAP");
                if (nc) line += detail::control_prefix(g) + " ->";
                line += " q" + std::to_string(g.targets[0]) + " q" + std::to_string(g.targets[1]);
                break;
            case GateKind::kPermutation:
                line = "BBOX " + g.permutation->name + (g.adjoint ? "_dg" : "");
                if (nc) line += detail::control_prefix(g) + " ->";
                line += " qs=" + detail::qubit_list(g.targets);
                break;
            case GateKind::kMultiplexed:
                line = "UCG " + g.multiplexor->name + (g.adjoint ? "_dg" : "");
                if (nc) line += detail::control_prefix(g) + " :";
                line += " qs=" + detail::qubit_list(g.selectors) + " -> q" + std::to_string(g.targets[0]);
                break;
        }
        out += line + "\n";
    }
    return out;
}

}  // namespace ssbe
