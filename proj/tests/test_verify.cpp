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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "ssbe/verify.hpp"

namespace ssbe {
namespace {

TEST(VerifyEncoding, OnesGenerators) {
    const OnePairMatrix op(2, {1, 1, 1, 1}, {1, 1, 1, 1});
    Matrix block;
    const EncodingReport r = verify_encoding(op, FixedPointSpec{12}, 0, {}, &block);
    EXPECT_TRUE(r.within_bound());
    EXPECT_LE(r.sym_defect, 1e-12);
    EXPECT_EQ(r.size, 4u);
    EXPECT_EQ(r.m, 11);
    EXPECT_EQ(r.width, 13);
    EXPECT_EQ(r.runtime_ms, 0.0);
    EXPECT_EQ(block.rows(), 4);
}

TEST(VerifyEncoding, FieldsAreConsistent) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const OnePairMatrix op = random_one_pair(3, seed);
        VerifyOptions opts;
        opts.timing = true;
        const EncodingReport r = verify_encoding(op, FixedPointSpec{12}, seed, opts);
        EXPECT_EQ(r.n, 3);
        EXPECT_EQ(r.seed, seed);
        EXPECT_EQ(r.t, 12);
        EXPECT_GT(r.runtime_ms, 0.0);
        EXPECT_GE(r.eps_measured, 0.0);
        EXPECT_LE(r.eps_measured, r.eps_theoretical);
        EXPECT_LE(r.eps_measured, r.eps_budget);
        EXPECT_NEAR(r.alpha, semiseparable_alpha(GeneratorStats::of(op), 3), 1e-12 * r.alpha);
        EXPECT_NO_THROW(check_within_bound(r));
    }
}

TEST(VerifyEncoding, PrecisionSweep) {
    const OnePairMatrix op = random_one_pair(3, 2);
    const double coarse = verify_encoding(op, FixedPointSpec{6}).eps_measured;
    const double fine = verify_encoding(op, FixedPointSpec{14}).eps_measured;
    EXPECT_LE(fine, coarse + std::ldexp(1.0, -5));
}

TEST(VerifyEncoding, CountWorkspaceAddsOracleRegister) {
    VerifyOptions opts;
    opts.count_workspace = true;
    const EncodingReport r = verify_encoding(random_one_pair(2, 0), FixedPointSpec{10}, 0, opts);
    EXPECT_GE(r.m, 11 + 12);
}

TEST(VerifyEncoding, ResourceCap) {
    try {
        verify_encoding(random_one_pair(6, 0), FixedPointSpec{8});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kResourceLimit);
    }
}

TEST(VerifyEncoding, ZeroGenerator) {
    try {
        verify_encoding(OnePairMatrix(1, {0, 1}, {1, 1}), FixedPointSpec{8});
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kZeroGenerator);
    }
}

TEST(VerifyEncoding, BoundViolationIsReported) {
    EncodingReport r;
    r.eps_measured = 2.0;
    r.eps_theoretical = 1.0;
    try {
        check_within_bound(r);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kBoundViolation);
    }
}

TEST(Fit, RecoversExactLine) {
    const LinearFit f = fit_line({1, 2, 4, 8}, {5.5, 6.0, 7.0, 9.0});
    EXPECT_NEAR(f.slope, 0.5, 1e-12);
    EXPECT_NEAR(f.intercept, 5.0, 1e-12);
    EXPECT_NEAR(f.r2, 1.0, 1e-12);
    EXPECT_THROW(fit_line({1}, {1}), Error);
}

TEST(NormStudy, DeterministicAndBounded) {
    const NormStudy a = norm_study({1, 2, 3, 4, 5, 6}, 100, 7, 1);
    const NormStudy b = norm_study({1, 2, 3, 4, 5, 6}, 100, 7, 2);
    ASSERT_EQ(a.rows.size(), 6u);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(a.rows[i].mean_norm2, b.rows[i].mean_norm2);
        EXPECT_EQ(a.rows[i].mean_norminf, b.rows[i].mean_norminf);
        EXPECT_LE(a.rows[i].max_norm2_over_n, 1.0 + 1e-12);
        EXPECT_EQ(a.rows[i].trials, 100);
        EXPECT_LE(a.rows[i].mean_norm2, a.rows[i].mean_norminf * (1.0 + 1e-12));
        if (i > 0) {
            EXPECT_GE(a.rows[i].mean_norm2, a.rows[i - 1].mean_norm2);
        }
    }
    EXPECT_GT(a.fit.slope, 0.0);
}

TEST(NormStudy, RejectsZeroTrials) { EXPECT_THROW(norm_study({2}, 0, 0), Error); }

TEST(Inverse, ExactMatrixIsTridiagonalInverse) {
    const Matrix s = dense(random_one_pair(3, 0));
    const InverseReport r = inverse_metrics("exact", s, 1.0, s);
    EXPECT_LE(r.inv_error, 1e-10 * s.inverse().norm());
    EXPECT_LE(r.off_tridiag, 1e-8 * s.inverse().norm());
}

TEST(Inverse, IllConditionedIsRejected) {
    Matrix s = Matrix::Identity(4, 4);
    s(3, 3) = 1e-14;
    try {
        inverse_metrics("x", s, 1.0, Matrix::Identity(4, 4));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kIllConditioned);
    }
    EXPECT_THROW(inverse_metrics("x", Matrix::Identity(4, 4), 1.0, s), Error);
    EXPECT_THROW(inverse_metrics("x", Matrix::Identity(4, 4), 1.0, Matrix::Identity(2, 2)), Error);
}

TEST(Inverse, StructuredBeatsCompressedFable) {
    const OnePairMatrix op = random_one_pair(3, 0);
    const Matrix s = dense(op);
    Matrix block;
    const EncodingReport r = verify_encoding(op, FixedPointSpec{14}, 0, {}, &block);
    const InverseReport ours = inverse_metrics("ours", s, r.alpha, block);
    FableConfig cfg;
    cfg.compression_rate = 0.10;
    const FableEncoding fe = fable_encode(s, cfg);
    const InverseReport fable = inverse_metrics("fable-10%", s, fe.encoding.alpha, extract_block(fe.encoding));
    EXPECT_LT(ours.off_tridiag, fable.off_tridiag);
}

TEST(Inverse, SeedZeroSizeSixteenIsFinite) {
    const OnePairMatrix op = random_one_pair(4, 0);
    Matrix block;
    const EncodingReport r = verify_encoding(op, FixedPointSpec{14}, 0, {}, &block);
    const InverseReport ours = inverse_metrics("ours", dense(op), r.alpha, block);
    EXPECT_TRUE(std::isfinite(ours.inv_error));
    EXPECT_TRUE(std::isfinite(ours.off_tridiag));
}

TEST(Inverse, DefaultVariants) {
    const auto v = default_fable_variants();
    ASSERT_EQ(v.size(), 3u);
    EXPECT_EQ(v[0].name, "fable");
    EXPECT_TRUE(v[1].config.compression_rate.has_value());
    EXPECT_EQ(v[2].config.drop_smallest.value_or(0), 1u);
}

}  // namespace
}  // namespace ssbe
