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

#include "oracles.hpp"
#include "ssbe/fable.hpp"
#include "ssbe/semiseparable.hpp"

namespace ssbe {
namespace {

Matrix random_matrix(int size, std::uint64_t seed, double scale = 1.0) {
    Rng rng(seed);
    Matrix a(size, size);
    for (Eigen::Index i = 0; i < size; ++i)
        for (Eigen::Index j = 0; j < size; ++j) a(i, j) = scale * (2.0 * rng.uniform() - 1.0);
    return a;
}

double fable_error(const Matrix &a, const FableEncoding &fe) {
    return spectral_norm(a - fe.encoding.alpha * extract_block(fe.encoding));
}

TEST(WalshHadamard, ConstantVectorHasOneCoefficient) {
    const std::vector<double> out = walsh_hadamard_gray(std::vector<double>(16, 0.7));
    EXPECT_NEAR(out[0], 0.7, 1e-15);
    for (std::size_t i = 1; i < out.size(); ++i) EXPECT_EQ(out[i], 0.0);
}

TEST(WalshHadamard, TwiceWithNormalizationIsIdentity) {
    Rng rng(4);
    std::vector<double> x(64);
    for (double &e : x) e = rng.normal();
    std::vector<double> y = x;
    walsh_hadamard(y);
    walsh_hadamard(y);
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(y[i] / 64.0, x[i], 1e-14);
}

TEST(WalshHadamard, MatchesNaiveTransform) {
    for (std::size_t size : {4u, 16u, 64u}) {
        Rng rng(size);
        std::vector<double> x(size);
        for (double &e : x) e = rng.normal();
        const std::vector<double> fast = walsh_hadamard_gray(x);
        const std::vector<double> slow = testing::naive_wht_gray(x);
        for (std::size_t i = 0; i < size; ++i) EXPECT_NEAR(fast[i], slow[i], 1e-14);
    }
}

TEST(WalshHadamard, RejectsBadLength) {
    EXPECT_THROW(walsh_hadamard_gray(std::vector<double>(8)), Error);
    EXPECT_THROW(walsh_hadamard_gray(std::vector<double>(12)), Error);
}

TEST(Fable, ZeroMatrix) {
    const FableEncoding fe = fable_encode(Matrix::Zero(4, 4));
    EXPECT_EQ(fe.retained_rotations, 0u);
    EXPECT_EQ(fe.encoding.circuit.count(GateKind::kRy), 0u);
    EXPECT_EQ(extract_block(fe.encoding).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Fable, UncompressedIsExact) {
    for (int n = 1; n <= 4; ++n) {
        const int size = 1 << n;
        for (std::uint64_t seed = 0; seed < 3; ++seed) {
            const Matrix a = random_matrix(size, seed);
            const FableEncoding fe = fable_encode(a);
            EXPECT_EQ(fe.retained_rotations, static_cast<std::size_t>(size) * static_cast<std::size_t>(size));
            EXPECT_EQ(fe.encoding.m, n + 1);
            EXPECT_EQ(fe.encoding.alpha, size);
            EXPECT_LE(fable_error(a, fe), 1e-8);
            EXPECT_LE(fable_error(dense(random_one_pair(n, seed)), fable_encode(dense(random_one_pair(n, seed)))),
                      1e-8);
        }
    }
}

TEST(Fable, PrescalesLargeEntries) {
    const Matrix a = random_matrix(8, 3, 4.0);
    const FableEncoding fe = fable_encode(a);
    EXPECT_DOUBLE_EQ(fe.prescale, a.cwiseAbs().maxCoeff());
    EXPECT_DOUBLE_EQ(fe.encoding.alpha, 8.0 * fe.prescale);
    EXPECT_LE(fable_error(a, fe), 1e-8);
}

TEST(Fable, CompressionRateCount) {
    const Matrix a = dense(random_one_pair(3, 1));
    for (double rate : {0.0, 0.1, 0.25, 0.5, 0.9}) {
        FableConfig cfg;
        cfg.compression_rate = rate;
        const FableEncoding fe = fable_encode(a, cfg);
        EXPECT_EQ(fe.retained_rotations, 64u - static_cast<std::size_t>(std::floor(rate * 64.0))) << rate;
        EXPECT_EQ(fe.encoding.circuit.count(GateKind::kRy), fe.retained_rotations);
    }
}

TEST(Fable, DropSmallestOne) {
    FableConfig cfg;
    cfg.drop_smallest = 1;
    const Matrix a = dense(random_one_pair(3, 2));
    const FableEncoding fe = fable_encode(a, cfg);
    EXPECT_EQ(fe.retained_rotations, 63u);
    EXPECT_GT(fable_error(a, fe), 0.0);
}

TEST(Fable, CutoffErrorWithinCubicBound) {
    const Matrix a = dense(random_one_pair(3, 5));
    for (double cut : {1e-4, 1e-3, 1e-2, 5e-2}) {
        FableConfig cfg;
        cfg.cutoff = cut;
        const FableEncoding fe = fable_encode(a, cfg);
        EXPECT_LE(fable_error(a, fe), 512.0 * cut) << cut;
        EXPECT_LE(fable_error(a, fe), fe.encoding.eps_budget + 1e-12);
        EXPECT_LE(fe.effective_cutoff, cut);
    }
}

TEST(Fable, CompressedErrorExceedsStructuredError) {
    const OnePairMatrix op = random_one_pair(4, 0);
    const Matrix a = dense(op);
    FableConfig cfg;
    cfg.compression_rate = 0.10;
    const double fable_err = fable_error(a, fable_encode(a, cfg));
    const BlockEncoding ours = build_semiseparable_encoding(op, FixedPointSpec{14});
    EXPECT_GT(fable_err, spectral_norm(a - ours.alpha * extract_block(ours)));
}

TEST(Fable, ConfigValidation) {
    FableConfig both;
    both.cutoff = 0.1;
    both.drop_smallest = 2;
    EXPECT_THROW(fable_encode(Matrix::Identity(2, 2), both), Error);
    FableConfig rate;
    rate.compression_rate = 1.0;
    EXPECT_THROW(fable_encode(Matrix::Identity(2, 2), rate), Error);
    EXPECT_THROW(fable_encode(Matrix::Identity(3, 3)), Error);
    EXPECT_THROW(fable_encode(Matrix::Identity(2, 4)), Error);
}

TEST(Fable, MatchesDenseOracleUnitary) {
    const FableEncoding fe = fable_encode(random_matrix(4, 9));
    EXPECT_LE((real_unitary(fe.encoding.circuit) - testing::dense_unitary(fe.encoding.circuit)).cwiseAbs().maxCoeff(),
              1e-12);
}

}  // namespace
}  // namespace ssbe
