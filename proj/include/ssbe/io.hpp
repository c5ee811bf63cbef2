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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "ssbe/error.hpp"
#include "ssbe/sepcore.hpp"

namespace ssbe {

/// Shortest-round-trip-safe text form: 17 significant digits.
inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

/// Parses { "n": int, "u": [floats], "v": [floats] }.
inline OnePairMatrix parse_generators(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorCode::kSchemaViolation, std::string("generator file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::kSchemaViolation, "generator file must hold a JSON object");
    for (const char *key : {"n", "u", "v"}) {
        if (!doc.contains(key)) throw Error(ErrorCode::kSchemaViolation, std::string("missing key \"") + key + "\"");
    }
    if (!doc["n"].is_number_integer()) throw Error(ErrorCode::kSchemaViolation, "\"n\" must be an integer");
    auto read_vector = [&](const char *key) {
        const auto &arr = doc[key];
        if (!arr.is_array()) throw Error(ErrorCode::kSchemaViolation, std::string("\"") + key + "\" must be an array");
        std::vector<double> out;
        out.reserve(arr.size());
        for (const auto &x : arr) {
            if (!x.is_number()) {
                throw Error(ErrorCode::kSchemaViolation, std::string("\"") + key + "\" must contain only numbers");
            }
            out.push_back(x.get<double>());
        }
        return out;
    };
    const auto n = doc["n"].get<long long>();
    if (n < 1 || n > 30) throw Error(ErrorCode::kSchemaViolation, "\"n\" must be in [1, 30]");
    auto u = read_vector("u");
    auto v = read_vector("v");
    try {
        return OnePairMatrix(static_cast<int>(n), std::move(u), std::move(v));
    } catch (const Error &e) {
        throw Error(ErrorCode::kSchemaViolation, e.what());
    }
}

inline OnePairMatrix read_generators(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open generator file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_generators(buf.str());
}

inline std::string generators_to_json(const OnePairMatrix &one_pair) {
    std::string out = "{\"n\": " + std::to_string(one_pair.n()) + ", \"u\": [";
    auto emit = [&](std::span<const double> x) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) out += ", ";
            out += format_double(x[i]);
        }
    };
    emit(one_pair.u());
    out += "], \"v\": [";
    emit(one_pair.v());
    out += "]}\n";
    return out;
}

/// Row-major CSV, 17 significant digits, no header.
inline std::string matrix_to_csv(const Matrix &a) {
    std::string out;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (j) out += ',';
            out += format_double(a(i, j));
        }
        out += '\n';
    }
    return out;
}

inline void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kFileNotFound, "cannot write " + path.string());
    out << text;
}

}  // namespace ssbe
