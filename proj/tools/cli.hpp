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

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ssbe/block_encoding.hpp"
#include "ssbe/diagonal.hpp"
#include "ssbe/error.hpp"
#include "ssbe/fable.hpp"
#include "ssbe/io.hpp"
#include "ssbe/semiseparable.hpp"
#include "ssbe/sepcore.hpp"
#include "ssbe/triangular.hpp"
#include "ssbe/verify.hpp"

namespace ssbe::cli {

struct InputOptions {
    std::string input;
    bool random = false;
    std::uint64_t seed = 0;
    int n = 3;
    int t = 12;
};

struct FableOptions {
    std::optional<double> cutoff;
    std::optional<double> rate;
    std::optional<std::size_t> drop;

    bool any() const { return cutoff || rate || drop; }
    FableConfig config() const {
        FableConfig c;
        c.cutoff = cutoff;
        c.compression_rate = rate;
        c.drop_smallest = drop;
        return c;
    }
    std::string name() const {
        if (cutoff) return "fable-cutoff-" + format_double(*cutoff);
        if (rate) return "fable-rate-" + format_double(*rate);
        if (drop) return "fable-drop-" + std::to_string(*drop);
        return "fable";
    }
};

inline void add_input(CLI::App *cmd, InputOptions &in, int default_t) {
    in.t = default_t;
    auto *file = cmd->add_option("--input", in.input, "Generator JSON file {\"n\": int, \"u\": [..], \"v\": [..]}");
    auto *rnd = cmd->add_flag("--random", in.random, "Draw normalized N(0,1) generators instead of reading a file");
    file->excludes(rnd);
    cmd->add_option("--seed", in.seed, "Seed of the mt19937_64 generator stream (default 0)");
    cmd->add_option("--n", in.n, "System qubits for --random, N = 2^n (default 3)")->check(CLI::Range(1, 14));
    cmd->add_option("--t", in.t, "Fractional digits of the oracle registers")->check(CLI::Range(1, 40));
}

inline OnePairMatrix load(const InputOptions &in) {
    if (in.random == !in.input.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "give exactly one of --input or --random");
    }
    if (in.random) return random_one_pair(in.n, in.seed);
    return read_generators(in.input);
}

inline void add_fable(CLI::App *cmd, FableOptions &f) {
    auto *cut = cmd->add_option("--fable-cutoff", f.cutoff, "FABLE: drop transformed angles with |angle| <= cutoff");
    auto *rate = cmd->add_option("--fable-rate", f.rate, "FABLE: drop this fraction of the smallest angles");
    auto *drop = cmd->add_option("--drop-smallest", f.drop, "FABLE: drop exactly k smallest angles");
    cut->excludes(rate)->excludes(drop);
    rate->excludes(drop);
}

inline void emit(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty()) {
        out << text;
    } else {
        write_text(path, text);
    }
}

inline std::string report_csv(const std::vector<EncodingReport> &rows) {
    std::string s = "n,N,seed,t,alpha,m,eps_theory,eps_measured,sym_defect,runtime_ms\n";
    for (const auto &r : rows) {
        s += std::to_string(r.n) + ',' + std::to_string(r.size) + ',' + std::to_string(r.seed) + ',' +
             std::to_string(r.t) + ',' + format_double(r.alpha) + ',' + std::to_string(r.m) + ',' +
             format_double(r.eps_theoretical) + ',' + format_double(r.eps_measured) + ',' +
             format_double(r.sym_defect) + ',' + format_double(r.runtime_ms) + '\n';
    }
    return s;
}

inline std::string escape(std::string s) {
    for (char &ch : s) {
        if (ch == '"' || ch == '\n') ch = '\'';
    }
    return s;
}

inline int fail(std::ostream &err, ErrorCode code, const std::string &message, std::optional<std::size_t> index = {}) {
    err << "error code=" << error_code_name(code) << " status=" << static_cast<int>(code);
    if (index) err << " index=" << *index;
    err << " message=\"" << escape(message) << "\"\n";
    return static_cast<int>(code);
}

/// Entry point shared by the executable and the tests. Returns the process
/// exit status: 0 on success, the ErrorCode value on failure.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Block encodings of one-pair semiseparable matrices", "ssbe"};
    app.require_subcommand(1);

    InputOptions in;
    FableOptions fable;
    std::string out_path;
    std::string dump_path;
    std::string component = "S";
    int max_n = 5;
    int threads = 0;
    int trials = 100;
    int min_n = 1;
    bool no_free = false;
    bool timing = false;
    bool expanded = false;

    auto *encode = app.add_subcommand("encode", "Build the full encoding and print its metadata");
    add_input(encode, in, 12);
    encode->add_option("--out", out_path, "Write the key=value summary here instead of stdout");
    encode->add_option("--dump-circuit", dump_path, "Write the gate netlist to this file");
    encode->add_flag("--no-free-workspace", no_free, "Count the oracle workspace register in m");
    encode->add_flag("--expanded", expanded, "Simulate oracle workspaces as explicit qubits");

    auto *verify = app.add_subcommand("verify", "Build, simulate and check the full encoding against S");
    add_input(verify, in, 12);
    verify->add_option("--out", out_path, "Encoding report CSV (stdout if omitted)");
    verify->add_option("--max-n", max_n, "Largest n simulated (default 5, N = 32)")->check(CLI::Range(1, 8));
    verify->add_option("--threads", threads, "Worker threads for column simulation (0: all cores)");
    verify->add_flag("--no-free-workspace", no_free, "Count the oracle workspace register in m");
    verify->add_flag("--timing", timing, "Record runtime_ms (otherwise 0, keeping output deterministic)");

    auto *norms = app.add_subcommand("norm-study", "Mean ||S||_2 and ||S||_inf of random normalized matrices");
    norms->add_option("--seed", in.seed, "Master seed (default 0)");
    norms->add_option("--trials", trials, "Samples per size (default 100)")->check(CLI::Range(1, 100000));
    norms->add_option("--min-n", min_n, "Smallest n (default 1)")->check(CLI::Range(1, 14));
    norms->add_option("--max-n", max_n, "Largest n (default 10)")->check(CLI::Range(1, 14));
    norms->add_option("--threads", threads, "Worker threads (0: all cores)");
    norms->add_option("--out", out_path, "Norm study CSV (stdout if omitted)");

    auto *compare = app.add_subcommand("compare-fable", "Errors of the structured and FABLE encodings");
    add_input(compare, in, 14);
    add_fable(compare, fable);
    compare->add_option("--max-n", max_n, "Largest n simulated (default 5)")->check(CLI::Range(1, 8));
    compare->add_option("--out", out_path, "Comparison CSV (stdout if omitted)");

    auto *inverse = app.add_subcommand("inverse-study", "Inverse error and tridiagonal defect per encoder");
    add_input(inverse, in, 14);
    add_fable(inverse, fable);
    inverse->add_option("--max-n", max_n, "Largest n simulated (default 5)")->check(CLI::Range(1, 8));
    inverse->add_option("--out", out_path, "Inverse study CSV (stdout if omitted)");

    auto *dump = app.add_subcommand("dump-circuit", "Print the netlist of one encoding circuit");
    add_input(dump, in, 12);
    dump->add_option("--component", component, "S, L, Dz, Du, Duinv, shift, cascade or fable (default S)")
        ->check(CLI::IsMember({"S", "L", "Dz", "Du", "Duinv", "shift", "cascade", "fable"}));
    dump->add_flag("--expanded", expanded, "Simulate oracle workspaces as explicit qubits");
    dump->add_option("--out", out_path, "Netlist file (stdout if omitted)");
    add_fable(dump, fable);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        if (app.get_subcommands().empty()) {
            out << app.help("", CLI::AppFormatMode::All);
            return 0;
        }
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        return fail(err, ErrorCode::kInvalidArgument, e.what());
    }

    const Workspace ws = expanded ? Workspace::kExpanded : Workspace::kContracted;
    const FixedPointSpec spec{in.t};
    try {
        if (*encode) {
            const OnePairMatrix op = load(in);
            const BlockEncoding be = build_semiseparable_encoding(op, spec, ws);
            const GeneratorStats stats = GeneratorStats::of(op);
            const ErrorScales scales = error_scales(stats, spec);
            std::ostringstream s;
            s << "n=" << op.n() << "\nN=" << op.size() << "\nwidth=" << be.circuit.width()
              << "\nm=" << be.m + (no_free ? be.oracle_register : 0) << "\noracle_register=" << be.oracle_register
              << "\nworkspace=" << be.workspace << "\nalpha=" << format_double(be.alpha)
              << "\neps_theory=" << format_double(theoretical_bound(stats, op.n(), scales.eps_u, scales.eps_v).value)
              << "\neps_budget=" << format_double(be.eps_budget) << "\ngates=" << be.circuit.size() << '\n';
            emit(out_path, s.str(), out);
            if (!dump_path.empty()) write_text(dump_path, to_netlist(be.circuit));
        } else if (*verify) {
            const OnePairMatrix op = load(in);
            VerifyOptions opts;
            opts.max_n = max_n;
            opts.threads = threads;
            opts.timing = timing;
            opts.count_workspace = no_free;
            const EncodingReport r = verify_encoding(op, spec, in.random ? in.seed : 0, opts);
            emit(out_path, report_csv({r}), out);
            check_within_bound(r);
        } else if (*norms) {
            if (norms->count("--max-n") == 0) max_n = 10;
            if (min_n > max_n) throw Error(ErrorCode::kInvalidArgument, "--min-n exceeds --max-n");
            std::vector<int> sizes;
            for (int n = min_n; n <= max_n; ++n) sizes.push_back(n);
            const NormStudy study = norm_study(sizes, trials, in.seed, threads);
            std::string s = "N,mean_norm2,mean_norminf,trials\n";
            for (const auto &r : study.rows) {
                s += std::to_string(r.size) + ',' + format_double(r.mean_norm2) + ',' + format_double(r.mean_norminf) +
                     ',' + std::to_string(r.trials) + '\n';
            }
            emit(out_path, s, out);
            if (sizes.size() >= 2) {
                (out_path.empty() ? err : out) << "fit slope=" << format_double(study.fit.slope)
                                               << " intercept=" << format_double(study.fit.intercept)
                                               << " r2=" << format_double(study.fit.r2) << '\n';
            }
        } else if (*compare || *inverse) {
            const OnePairMatrix op = load(in);
            if (op.n() > max_n) {
                throw Error(ErrorCode::kResourceLimit, "n exceeds the cap --max-n " + std::to_string(max_n));
            }
            const Matrix s = dense(op);
            const std::uint64_t seed = in.random ? in.seed : 0;
            std::vector<NamedFable> variants;
            variants.push_back({"fable", {}});
            if (fable.any()) {
                variants.push_back({fable.name(), fable.config()});
            } else {
                auto defaults = default_fable_variants();
                variants.insert(variants.end(), defaults.begin() + 1, defaults.end());
            }
            VerifyOptions opts;
            opts.max_n = max_n;
            Matrix ours_block;
            const EncodingReport ours = verify_encoding(op, spec, seed, opts, &ours_block);
            const std::string size = std::to_string(op.size());
            std::string text;
            if (*compare) {
                const BlockEncoding be = build_semiseparable_encoding(op, spec);
                auto rotations = [](const Circuit &c) { return c.count(GateKind::kRy) + c.count(GateKind::kMultiplexed); };
                text = "encoder,N,seed,alpha,m,eps_measured,gates,rotations\n";
                text += "ours," + size + ',' + std::to_string(seed) + ',' + format_double(ours.alpha) + ',' +
                        std::to_string(ours.m) + ',' + format_double(ours.eps_measured) + ',' +
                        std::to_string(be.circuit.size()) + ',' + std::to_string(rotations(be.circuit)) + '\n';
                for (const auto &v : variants) {
                    const FableEncoding fe = fable_encode(s, v.config);
                    const Matrix blk = extract_block(fe.encoding);
                    text += v.name + ',' + size + ',' + std::to_string(seed) + ',' + format_double(fe.encoding.alpha) +
                            ',' + std::to_string(fe.encoding.m) + ',' +
                            format_double(spectral_norm(s - fe.encoding.alpha * blk)) + ',' +
                            std::to_string(fe.encoding.circuit.size()) + ',' + std::to_string(fe.retained_rotations) +
                            '\n';
                }
            } else {
                text = "encoder,N,seed,inv_error,off_tridiag\n";
                auto row = [&](const InverseReport &r) {
                    text += r.encoder + ',' + size + ',' + std::to_string(seed) + ',' + format_double(r.inv_error) +
                            ',' + format_double(r.off_tridiag) + '\n';
                };
                row(inverse_metrics("ours", s, ours.alpha, ours_block));
                for (const auto &v : variants) {
                    const FableEncoding fe = fable_encode(s, v.config);
                    row(inverse_metrics(v.name, s, fe.encoding.alpha, extract_block(fe.encoding)));
                }
            }
            emit(out_path, text, out);
        } else if (*dump) {
            Circuit c;
            if (component == "shift") {
                c = build_shift_circuit(in.n);
            } else if (component == "cascade") {
                c = build_theta_cascade(spec);
            } else if (component == "L") {
                c = build_L_encoding(in.input.empty() ? in.n : load(in).n()).circuit;
            } else {
                const OnePairMatrix op = load(in);
                if (component == "S") c = build_semiseparable_encoding(op, spec, ws).circuit;
                if (component == "Dz") c = build_delta_z_encoding(op, spec, ws).circuit;
                if (component == "Du") c = build_diag_encoding(op.u(), spec, ws).circuit;
                if (component == "Duinv") c = build_diag_inverse_encoding(op.u(), spec, ws).circuit;
                if (component == "fable") c = fable_encode(dense(op), fable.config()).encoding.circuit;
            }
            emit(out_path, to_netlist(c), out);
        }
    } catch (const Error &e) {
        return fail(err, e.code(), e.what(), e.index());
    } catch (const std::exception &e) {
        return fail(err, ErrorCode::kInvalidArgument, e.what());
    }
    return 0;
}

}  // namespace ssbe::cli
