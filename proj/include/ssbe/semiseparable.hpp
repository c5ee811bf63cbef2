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
#include <numbers>
#include <vector>

#include "ssbe/block_encoding.hpp"
#include "ssbe/diagonal.hpp"
#include "ssbe/sepcore.hpp"
#include "ssbe/triangular.hpp"

namespace ssbe {

/// Per-factor error budgets at precision t: eps_v for D_v and eps_u shared
/// by D_u and D_u^{-1}.
struct ErrorScales {
    double eps_u = 0.0;
    double eps_v = 0.0;
};

inline ErrorScales error_scales(const GeneratorStats &stats, const FixedPointSpec &spec) {
    const double step = std::numbers::pi / std::ldexp(spec.c, spec.t);
    ErrorScales e;
    e.eps_v = stats.max_v * step;
    e.eps_u = std::max(stats.max_u, 1.0 / stats.min_u) * step;
    return e;
}

/// Scale of the Delta_z encoding: 2 M_v / (c^2 m_u).
inline double delta_z_alpha(const GeneratorStats &stats) {
    return 2.0 * stats.max_v / (stats.c * stats.c * stats.min_u);
}

/// Scale of the full encoding: 2 N^2 M_u^2 M_v / (c^4 m_u).
inline double semiseparable_alpha(const GeneratorStats &stats, int n) {
    const double size = std::ldexp(1.0, n);
    const double c2 = stats.c * stats.c;
    return 2.0 * size * size * stats.max_u * stats.max_u * stats.max_v / (c2 * c2 * stats.min_u);
}

/// Encoding of Delta_z as the LCU difference of D_v D_u^{-1} and
/// D_{v_down} D_{u_down}^{-1}, with v_down = (0, v_0, ..., v_{N-2}) and
/// u_down = (u_{N-1}, u_0, ..., u_{N-2}). Both branches use the global
/// M_v and m_u so their scales agree. Entry (i, i) of the block is
/// c^2 m_u (z_i - z_{i-1}) / (2 M_v) with z_{-1} = 0.
inline BlockEncoding build_delta_z_encoding(const OnePairMatrix &one_pair, const FixedPointSpec &spec,
                                            Workspace mode = Workspace::kContracted) {
    const auto u = one_pair.u();
    const auto v = one_pair.v();
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u[i] == 0.0) throw zero_generator(i);
    const GeneratorStats stats = GeneratorStats::of(one_pair);
    const DiagScale v_scale{stats.max_v, std::nullopt};
    const DiagScale u_scale{std::nullopt, stats.min_u};

    std::vector<double> v_down(v.size(), 0.0);
    std::vector<double> u_down(u.size());
    u_down[0] = u[u.size() - 1];
    for (std::size_t i = 1; i < v.size(); ++i) {
        v_down[i] = v[i - 1];
        u_down[i] = u[i - 1];
    }
    const BlockEncoding branch0 =
        compose(build_diag_encoding(v, spec, mode, v_scale), build_diag_inverse_encoding(u, spec, mode, u_scale));
    const BlockEncoding branch1 = compose(build_diag_encoding(v_down, spec, mode, v_scale),
                                          build_diag_inverse_encoding(u_down, spec, mode, u_scale));
    return lcu_difference(branch0, branch1);
}

/// Encoding of S = D_u L Delta_z L^T D_u with 2n + 7 ancillas. Factors are
/// applied right to left: D_u, L^T (U_L run in reverse), Delta_z, L, D_u.
inline BlockEncoding build_semiseparable_encoding(const OnePairMatrix &one_pair, const FixedPointSpec &spec,
                                                  Workspace mode = Workspace::kContracted) {
    const BlockEncoding du = build_diag_encoding(one_pair.u(), spec, mode);
    const BlockEncoding l = build_L_encoding(one_pair.n());
    const BlockEncoding lt = adjoint(l);
    const BlockEncoding dz = build_delta_z_encoding(one_pair, spec, mode);
    return compose(compose(compose(compose(du, lt), dz), l), du);
}

/// Closed-form error bound of the full encoding in its printed form,
/// (2 N^2 M_u M_v / (c^2 m_u)) ((M_u/M_v) eps_v + (M_u m_u + 2c) eps_u),
/// and the single-eps form gamma N^2 eps (M_u/M_v + M_u m_u + 2c) with
/// gamma = 2 M_u M_v / (c^2 m_u) and eps = max(eps_u, eps_v).
struct TheoreticalBound {
    double value = 0.0;
    double simplified = 0.0;
};

inline TheoreticalBound theoretical_bound(const GeneratorStats &stats, int n, double eps_u, double eps_v) {
    const double size = std::ldexp(1.0, n);
    const double c = stats.c;
    const double gamma = 2.0 * stats.max_u * stats.max_v / (c * c * stats.min_u);
    const double mix = stats.max_u * stats.min_u + 2.0 * c;
    TheoreticalBound b;
    b.value = gamma * size * size * ((stats.max_u / stats.max_v) * eps_v + mix * eps_u);
    b.simplified = gamma * size * size * std::max(eps_u, eps_v) * (stats.max_u / stats.max_v + mix);
    return b;
}

}  // namespace ssbe
