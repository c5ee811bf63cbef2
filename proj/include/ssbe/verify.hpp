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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "ssbe/block_encoding.hpp"
#include "ssbe/diagonal.hpp"
#include "ssbe/error.hpp"
#include "ssbe/fable.hpp"
#include "ssbe/rng.hpp"
#include "ssbe/semiseparable.hpp"
#include "ssbe/sepcore.hpp"

namespace ssbe {

struct EncodingReport {
    int n = 0;
    std::size_t size = 0;
    std::uint64_t seed = 0;
    int t = 0;
    double alpha = 0.0;
    int m = 0;
    double eps_theoretical = 0.0;
    double eps_measured = 0.0;
    double sym_defect = 0.0;
    double runtime_ms = 0.0;
    double eps_budget = 0.0;  // Lemma-by-lemma propagated budget
    double workspace_leak = 0.0;
    int width = 0;

    bool within_bound() const { return eps_measured <= eps_theoretical; }
};

struct VerifyOptions {
    Workspace workspace = Workspace::kContracted;
    int max_n = 5;
    int threads = 0;
    bool timing = false;
    bool count_workspace = false;  // report m including the oracle register
};

/// Builds the full encoding, extracts S_hat and measures ||S - alpha S_hat||_2.
inline EncodingReport verify_encoding(const OnePairMatrix &one_pair, const FixedPointSpec &spec,
                                      std::uint64_t seed = 0, const VerifyOptions &opts = {},
                                      Matrix *block_out = nullptr) {
    if (one_pair.n() > opts.max_n) {
        throw Error(ErrorCode::kResourceLimit, "n = " + std::to_string(one_pair.n()) + " exceeds the cap --max-n " +
                                                   std::to_string(opts.max_n));
    }
    const auto start = std::chrono::steady_clock::now();
    const BlockEncoding be = build_semiseparable_encoding(one_pair, spec, opts.workspace);
    ExtractOptions eo;
    eo.threads = opts.threads;
    const BlockExtraction ex = extract_block_checked(be, eo);
    const Matrix s = dense(one_pair);
    const GeneratorStats stats = GeneratorStats::of(one_pair);
    const ErrorScales scales = error_scales(stats, spec);

    EncodingReport r;
    r.n = one_pair.n();
    r.size = one_pair.size();
    r.seed = seed;
    r.t = spec.t;
    r.alpha = be.alpha;
    r.m = be.m + (opts.count_workspace ? be.oracle_register : 0);
    r.width = be.circuit.width();
    r.eps_theoretical = theoretical_bound(stats, one_pair.n(), scales.eps_u, scales.eps_v).value;
    r.eps_measured = spectral_norm(s - be.alpha * ex.block);
    r.sym_defect = (ex.block - ex.block.transpose()).norm();
    r.eps_budget = be.eps_budget;
    r.workspace_leak = ex.workspace_leak;
    if (opts.timing) {
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    if (block_out) *block_out = ex.block;
    return r;
}

inline void check_within_bound(const EncodingReport &r) {
    if (!r.within_bound()) {
        throw Error(ErrorCode::kBoundViolation, "measured error exceeds the theoretical bound");
    }
}

struct NormRow {
    std::size_t size = 0;
    double mean_norm2 = 0.0;
    double mean_norminf = 0.0;
    int trials = 0;
    double max_norm2_over_n = 0.0;  // largest ||S||_2 / N among the samples
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

/// Ordinary least squares y ~ slope x + intercept.
inline LinearFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::kInvalidArgument, "fit needs two or more points");
    Eigen::MatrixXd design(static_cast<Eigen::Index>(x.size()), 2);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(x.size()));
    for (std::size_t i = 0; i < x.size(); ++i) {
        design(static_cast<Eigen::Index>(i), 0) = x[i];
        design(static_cast<Eigen::Index>(i), 1) = 1.0;
        rhs(static_cast<Eigen::Index>(i)) = y[i];
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
    LinearFit fit;
    fit.slope = coef(0);
    fit.intercept = coef(1);
    const double mean = rhs.mean();
    const double ss_res = (design * coef - rhs).squaredNorm();
    const double ss_tot = (rhs.array() - mean).square().sum();
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

struct NormStudy {
    std::vector<NormRow> rows;
    LinearFit fit;
};

inline double inf_norm(const Matrix &a) { return a.cwiseAbs().rowwise().sum().maxCoeff(); }

/// Mean ||S||_2 and ||S||_inf over `trials` normalized random generators
/// per size 2^n, n in `sizes`. Sample seeds are drawn from one master
/// stream in (size, trial) order, so results do not depend on threading.
inline NormStudy norm_study(const std::vector<int> &sizes, int trials, std::uint64_t seed, int threads = 0) {
    if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials must be at least 1");
    Rng master(seed);
    NormStudy study;
    std::vector<double> xs, ys;
    for (int n : sizes) {
        if (n < 1 || n > 14) throw Error(ErrorCode::kResourceLimit, "norm study sizes must satisfy 1 <= n <= 14");
        std::vector<std::uint64_t> seeds(static_cast<std::size_t>(trials));
        for (auto &s : seeds) s = master.next();
        std::vector<double> norm2(seeds.size()), norminf(seeds.size());
        detail::parallel_columns(seeds.size(), threads, [&](std::size_t k) {
            const Matrix s = dense(random_one_pair(n, seeds[k]));
            norm2[k] = spectral_norm(s);
            norminf[k] = inf_norm(s);
        });
        NormRow row;
        row.size = std::size_t{1} << n;
        row.trials = trials;
        for (std::size_t k = 0; k < seeds.size(); ++k) {
            row.mean_norm2 += norm2[k];
            row.mean_norminf += norminf[k];
            row.max_norm2_over_n = std::max(row.max_norm2_over_n, norm2[k] / static_cast<double>(row.size));
        }
        row.mean_norm2 /= trials;
        row.mean_norminf /= trials;
        study.rows.push_back(row);
        xs.push_back(static_cast<double>(row.size));
        ys.push_back(row.mean_norm2);
    }
    if (xs.size() >= 2) study.fit = fit_line(xs, ys);
    return study;
}

struct InverseReport {
    std::string encoder;
    double inv_error = 0.0;
    double off_tridiag = 0.0;
};

inline constexpr double kConditionLimit = 1e12;

inline double condition_number(const Matrix &a) {
    Eigen::BDCSVD<Matrix> svd(a);
    const auto &sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    return smallest > 0.0 ? sv(0) / smallest : INFINITY;
}

/// Compares S^{-1} with (alpha S_hat)^{-1} and measures how far S_hat^{-1}
/// is from tridiagonal, scaled by 1/alpha.
inline InverseReport inverse_metrics(std::string encoder, const Matrix &s, double alpha, const Matrix &block) {
    if (s.rows() != block.rows() || s.cols() != block.cols()) {
        throw Error(ErrorCode::kDimensionMismatch, "inverse metrics: matrix sizes differ");
    }
    if (condition_number(s) > kConditionLimit) {
        throw Error(ErrorCode::kIllConditioned, "S has condition number above 1e12");
    }
    if (condition_number(block) > kConditionLimit) {
        throw Error(ErrorCode::kIllConditioned, "encoded block of " + encoder + " has condition number above 1e12");
    }
    const Matrix s_inv = s.partialPivLu().inverse();
    const Matrix block_inv = block.partialPivLu().inverse();
    InverseReport r;
    r.encoder = std::move(encoder);
    r.inv_error = spectral_norm(s_inv - block_inv / alpha);
    r.off_tridiag = (block_inv - tridiag(block_inv)).norm() / alpha;
    return r;
}

struct NamedFable {
    std::string name;
    FableConfig config;
};

/// Default FABLE variants: uncompressed, 10 % of rotations removed, and the
/// single smallest rotation removed.
inline std::vector<NamedFable> default_fable_variants() {
    std::vector<NamedFable> v;
    v.push_back({"fable", {}});
    FableConfig rate;
    rate.compression_rate = 0.10;
    v.push_back({"fable-10%", rate});
    FableConfig one;
    one.drop_smallest = 1;
    v.push_back({"fable-1", one});
    return v;
}

}  // namespace ssbe
