// Copyright 2026 The qfarith Authors
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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "qfarith/arith.hpp"
#include "qfarith/harness.hpp"
#include "qfarith/noise.hpp"

namespace qfarith::cli {

namespace {

constexpr const char *kDepthHelp =
    "Depth d keeps the controlled rotations R_2..R_d, i.e. at most d-1 per qubit; 'full' keeps all.\n"
    "--paper-depth accepts the alternate labeling p = rotations kept per qubit:\n"
    "  label 1 -> depth 2, label 2 -> depth 3, label 3 -> depth 4, label 4 -> depth 5, full -> full.";

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DepthFlags {
    std::string depth = "full";
    std::string paper_depth;

    void add(CLI::App *cmd) {
        auto *d = cmd->add_option("--depth", depth, "Approximation depth: 'full' or a positive integer")
                      ->capture_default_str();
        auto *p = cmd->add_option("--paper-depth", paper_depth, "Depth in the alternate labeling (see footer)");
        d->excludes(p);
    }

    Depth get() const {
        return paper_depth.empty() ? Depth::parse(depth) : Depth::from_table_label(paper_depth);
    }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t> &flag, std::uint64_t fallback) {
    if (flag) {
        return *flag;
    }
    if (const char *env = std::getenv("QFARITH_SEED"); env && *env) {
        std::uint64_t v = 0;
        std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw UsageError("QFARITH_SEED must be a non-negative integer, got '" + std::string(s) + "'");
        }
        return v;
    }
    return fallback;
}

ArithOp make_op(const std::string &op, std::uint32_t n, std::optional<std::uint32_t> m, bool modular) {
    if (op == "qfa") {
        return ArithOp::add(n, modular);
    }
    if (op == "qfm") {
        return ArithOp::multiply(n, m.value_or(n));
    }
    throw UsageError("--op must be qfa or qfm here, got '" + op + "'");
}

std::string pct(double reference, double value) {
    std::ostringstream s;
    s << std::showpos << std::fixed << std::setprecision(1) << 100.0 * (value - reference) / reference << "%";
    return s.str();
}

// ---------------------------------------------------------------- build

struct BuildArgs {
    std::string op = "qfa";
    std::uint32_t n = 0;
    std::optional<std::uint32_t> m;
    bool modular = true;
    bool logical = false;
    DepthFlags depth;
    std::string output;
};

int cmd_build(const BuildArgs &a, std::ostream &out) {
    const Depth depth = a.depth.get();
    Circuit logical(1);
    if (a.op == "qft") {
        logical = build_qft(a.n, depth);
    } else if (a.op == "iqft") {
        logical = build_iqft(a.n, depth);
    } else {
        logical = build_arith(make_op(a.op, a.n, a.m, a.modular), depth);
    }
    const Circuit basis = decompose_to_basis(logical);
    std::ofstream file(a.output, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot write " + a.output);
    }
    write_circuit(file, a.logical ? logical : basis);
    if (!file.flush()) {
        throw IoError("cannot write " + a.output);
    }
    const GateCounts c = gate_counts(basis);
    out << "width=" << basis.width() << " depth=" << depth.label() << " 1q=" << c.one_qubit
        << " 2q=" << c.two_qubit << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- counts

struct CountsArgs {
    std::string op = "qfa";
    std::uint32_t n = 0;
    std::optional<std::uint32_t> m;
    bool modular = true;
    std::vector<std::string> depths;
    std::vector<std::string> paper_depths;
};

int cmd_counts(const CountsArgs &a, std::ostream &out) {
    const ArithOp op = make_op(a.op, a.n, a.m, a.modular);
    const auto refs = reference_counts(op);

    std::vector<std::pair<Depth, std::string>> rows;  // depth, alternate label
    auto alt_label = [](const Depth &d) { return d.is_full() ? std::string("full") : std::to_string(d.value() - 1); };
    for (const auto &s : a.depths) {
        const Depth d = Depth::parse(s);
        rows.emplace_back(d, alt_label(d));
    }
    for (const auto &s : a.paper_depths) {
        rows.emplace_back(Depth::from_table_label(s), s);
    }
    if (rows.empty()) {
        if (!refs.empty()) {
            for (const auto &r : refs) {
                rows.emplace_back(Depth::from_table_label(r.depth_label), r.depth_label);
            }
        } else {
            const std::uint32_t widest = op.kind == OpKind::Add ? op.m : std::min(op.m + 1, op.z_width());
            for (std::uint32_t d = 1; d < widest; ++d) {
                rows.emplace_back(Depth::limited(static_cast<int>(d)), std::to_string(d - 1));
            }
            rows.emplace_back(Depth::full(), "full");
        }
    }

    out << "op=" << a.op << " n=" << op.n;
    if (op.kind == OpKind::Multiply) {
        out << " m=" << op.m;
    } else {
        out << " modular=" << (op.modular ? "true" : "false");
    }
    out << "\n";
    out << std::left << std::setw(7) << "depth" << std::setw(7) << "label" << std::setw(8) << "1q" << std::setw(8)
        << "2q";
    if (!refs.empty()) {
        out << std::setw(8) << "ref_1q" << std::setw(8) << "ref_2q" << std::setw(9) << "diff_1q" << "diff_2q";
    }
    out << "\n";
    for (const auto &[depth, label] : rows) {
        const GateCounts c = gate_counts(decompose_to_basis(build_arith(op, depth)));
        out << std::left << std::setw(7) << depth.label() << std::setw(7) << label << std::setw(8) << c.one_qubit
            << std::setw(8) << c.two_qubit;
        if (!refs.empty()) {
            auto it = std::find_if(refs.begin(), refs.end(), [&](const ReferenceCounts &r) {
                return r.depth_label == label;
            });
            if (it != refs.end()) {
                out << std::setw(8) << it->one_qubit << std::setw(8) << it->two_qubit << std::setw(9)
                    << pct(static_cast<double>(it->one_qubit), static_cast<double>(c.one_qubit))
                    << pct(static_cast<double>(it->two_qubit), static_cast<double>(c.two_qubit));
            } else {
                out << std::setw(8) << "-" << std::setw(8) << "-" << std::setw(9) << "-" << "-";
            }
        }
        out << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------- run

struct RunArgs {
    std::string op = "qfa";
    std::string x;
    std::string y;
    bool modular = true;
    DepthFlags depth;
    double p1 = 0;
    double p2 = 0;
    bool rz_noisy = true;
    std::uint64_t shots = 2048;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
};

int cmd_run(const RunArgs &a, std::ostream &out) {
    QInteger x = QInteger::basis(1, 0);
    QInteger y = QInteger::basis(1, 0);
    try {
        x = parse_qinteger(a.x);
        y = parse_qinteger(a.y);
    } catch (const std::invalid_argument &e) {
        throw UsageError(std::string("operand: ") + e.what());
    }
    const Depth depth = a.depth.get();
    NoiseModel noise{a.p1, a.p2, a.rz_noisy};
    try {
        noise.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    if (a.op == "qfa" && x.width() != y.width()) {
        throw UsageError("adder operands need equal widths, got " + std::to_string(x.width()) + " and " +
                         std::to_string(y.width()));
    }
    const ArithOp op = make_op(a.op, x.width(), y.width(), a.modular);
    const std::uint64_t seed = resolve_seed(a.seed, 0);

    const Circuit circuit = decompose_to_basis(build_arith(op, depth));
    const Statevector init = prepare_operands(op, x, y);
    const CountsMap counts = simulate_shots(circuit, init, noise, a.shots, seed, a.workers);
    const auto expected = expected_outputs(op, x, y);
    const InstanceResult r = evaluate_instance(counts, expected);

    std::vector<std::pair<std::uint64_t, std::uint64_t>> sorted(counts.begin(), counts.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto &l, const auto &r) { return l.second > r.second; });
    out << "counts:\n";
    for (const auto &[k, v] : sorted) {
        out << "  " << format_outcome(op, k) << " " << v << (expected.count(k) ? "" : " *") << "\n";
    }
    out << "expected:";
    for (std::uint64_t e : expected) {
        out << " " << format_outcome(op, e);
    }
    out << "\n";
    out << "success: " << (r.success ? "true" : "false") << "\n";
    out << "min_diff: " << r.min_diff << (r.saturated ? " (saturated)" : "") << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    std::string config;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    bool resume = false;
};

int cmd_sweep(const SweepArgs &a, std::ostream &out, std::ostream &err) {
    ExperimentConfig config = load_config(a.config);
    bool file_has_seed = false;
    {
        std::ifstream in(a.config);
        std::stringstream ss;
        ss << in.rdbuf();
        auto doc = nlohmann::json::parse(ss.str(), nullptr, false);
        file_has_seed = doc.is_object() && doc.contains("seed");
    }
    if (a.seed || !file_has_seed) {
        config.seed = resolve_seed(a.seed, config.seed);
    }
    std::filesystem::path dir = a.out_dir.empty()
                                    ? std::filesystem::path("results") / std::filesystem::path(a.config).stem()
                                    : std::filesystem::path(a.out_dir);
    SweepOptions opts;
    opts.workers = a.workers;
    opts.resume = a.resume;
    opts.progress = [&err](const std::string &line) { err << line << "\n" << std::flush; };
    const auto rows = run_sweep(config, dir, opts);
    out << kSummaryHeader << "\n";
    std::ifstream summary(dir / "summary.csv");
    std::string line;
    std::getline(summary, line);
    while (std::getline(summary, line)) {
        out << line << "\n";
    }
    (void)rows;
    return kExitOk;
}

// ---------------------------------------------------------------- plot-data

struct PlotArgs {
    std::string results;
    std::string out_dir;
};

int cmd_plot_data(const PlotArgs &a, std::ostream &out) {
    const std::filesystem::path out_dir = a.out_dir.empty() ? std::filesystem::path(a.results) / "plot"
                                                             : std::filesystem::path(a.out_dir);
    for (const auto &p : write_plot_data(a.results, out_dir)) {
        out << p.string() << "\n";
    }
    return kExitOk;
}

void add_op_flags(CLI::App *cmd, std::string &op, std::uint32_t &n, std::optional<std::uint32_t> &m, bool &modular,
                  bool allow_transform) {
    std::vector<std::string> ops{"qfa", "qfm"};
    if (allow_transform) {
        ops.insert(ops.begin(), {"qft", "iqft"});
    }
    cmd->add_option("--op", op, "Operation")->check(CLI::IsMember(ops))->capture_default_str();
    cmd->add_option("--n", n, "Width of x (or of the transform register)")->required()->check(CLI::Range(1u, 26u));
    cmd->add_option("--m", m, "Width of y for qfm (default n)")->check(CLI::Range(1u, 26u));
    cmd->add_flag("--modular,!--non-modular", modular, "Adder keeps n sum bits (default) or n + 1");
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Fourier-basis quantum arithmetic under gate noise", "qfarith"};
    app.footer(kDepthHelp);
    app.require_subcommand(1);

    BuildArgs build;
    auto *build_cmd = app.add_subcommand("build", "Write a basis-decomposed circuit and print its gate counts");
    add_op_flags(build_cmd, build.op, build.n, build.m, build.modular, true);
    build.depth.add(build_cmd);
    build_cmd->add_option("-o,--output", build.output, "Circuit file to write")->required();
    build_cmd->add_flag("--logical", build.logical, "Write the undecomposed circuit instead");

    CountsArgs counts;
    auto *counts_cmd = app.add_subcommand("counts", "Gate counts per depth, with reference comparison when available");
    add_op_flags(counts_cmd, counts.op, counts.n, counts.m, counts.modular, false);
    auto *cd = counts_cmd->add_option("--depth", counts.depths, "Depths to report (repeatable)");
    auto *cp = counts_cmd->add_option("--paper-depth", counts.paper_depths, "Depths in the alternate labeling");
    cd->excludes(cp);

    RunArgs runa;
    auto *run_cmd = app.add_subcommand("run", "Simulate one instance and evaluate it");
    run_cmd->add_option("--op", runa.op, "Operation")->check(CLI::IsMember({"qfa", "qfm"}))->capture_default_str();
    run_cmd->add_option("--x", runa.x, "x operand literal, e.g. 3:1,2")->required();
    run_cmd->add_option("--y", runa.y, "y operand literal, e.g. 3:5")->required();
    run_cmd->add_flag("--modular,!--non-modular", runa.modular, "Adder keeps n sum bits (default) or n + 1");
    runa.depth.add(run_cmd);
    run_cmd->add_option("--p1", runa.p1, "One-qubit depolarizing rate")->check(CLI::Range(0.0, 1.0));
    run_cmd->add_option("--p2", runa.p2, "Two-qubit depolarizing rate")->check(CLI::Range(0.0, 1.0));
    run_cmd->add_flag("--rz-noisy,!--rz-noiseless", runa.rz_noisy, "Whether RZ gates carry one-qubit noise");
    run_cmd->add_option("--shots", runa.shots, "Trajectories")->check(CLI::PositiveNumber)->capture_default_str();
    run_cmd->add_option("--seed", runa.seed, "Seed (falls back to QFARITH_SEED, then 0)");
    run_cmd->add_option("--workers", runa.workers, "Threads")->check(CLI::PositiveNumber);

    SweepArgs sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Run a configured success-rate sweep");
    sweep_cmd->add_option("config,--config", sweep.config, "Config JSON file")->required();
    sweep_cmd->add_option("-o,--out", sweep.out_dir, "Results directory (default results/<config name>)");
    sweep_cmd->add_option("--seed", sweep.seed, "Overrides the config seed (QFARITH_SEED if the config has none)");
    sweep_cmd->add_option("--workers", sweep.workers, "Threads (default: logical cores)")->check(CLI::PositiveNumber);
    sweep_cmd->add_flag("--resume", sweep.resume, "Keep completed points from a previous run");

    PlotArgs plot;
    auto *plot_cmd = app.add_subcommand("plot-data", "Per-panel CSV files from a sweep summary");
    plot_cmd->add_option("results,--results", plot.results, "Results directory of a sweep")->required();
    plot_cmd->add_option("-o,--out", plot.out_dir, "Output directory (default <results>/plot)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        if (!app.get_subcommands().empty() && e.get_exit_code() != 0) {
            err << "run with --help for usage\n";
        }
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (build_cmd->parsed()) {
            return cmd_build(build, out);
        }
        if (counts_cmd->parsed()) {
            return cmd_counts(counts, out);
        }
        if (run_cmd->parsed()) {
            return cmd_run(runa, out);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(sweep, out, err);
        }
        if (plot_cmd->parsed()) {
            return cmd_plot_data(plot, out);
        }
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace qfarith::cli
