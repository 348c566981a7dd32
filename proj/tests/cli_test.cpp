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

#ifdef QFARITH_HAVE_CLI

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qfarith/circuit.hpp"
#include "qfarith/harness.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = qfarith::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string &name) {
    fs::path p = fs::temp_directory_path() / ("qfarith_cli_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::uint64_t field(const std::string &text, const std::string &key) {
    const auto at = text.find(key + "=");
    return std::stoull(text.substr(at + key.size() + 1));
}

}  // namespace

TEST(Cli, BuildAdderReportsCounts) {
    const fs::path dir = scratch("build");
    const Result r = run({"build", "--op", "qfa", "--n", "8", "--depth", "full", "--modular", "-o",
                          (dir / "qfa.txt").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto two_q = static_cast<double>(field(r.out, "2q"));
    EXPECT_NEAR(two_q, 182.0, 0.05 * 182);
    const qfarith::Circuit c = qfarith::from_text(slurp(dir / "qfa.txt"));
    EXPECT_TRUE(qfarith::is_basis_circuit(c));
    EXPECT_EQ(static_cast<double>(qfarith::gate_counts(c).two_qubit), two_q);
    fs::remove_all(dir);
}

TEST(Cli, BuildMultiplierWithinTolerance) {
    const fs::path dir = scratch("build_qfm");
    const Result r = run({"build", "--op", "qfm", "--n", "4", "--m", "4", "--depth", "full", "-o",
                          (dir / "qfm.txt").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(static_cast<double>(field(r.out, "2q")), 1128.0, 0.15 * 1128);
    fs::remove_all(dir);
}

TEST(Cli, BuildSingleQubitTransform) {
    const fs::path dir = scratch("build_qft");
    const Result r = run({"build", "--op", "qft", "--n", "1", "--logical", "-o", (dir / "qft.txt").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(dir / "qft.txt"), "width=1\nH 0\n");
    fs::remove_all(dir);
}

TEST(Cli, PaperDepthMapsToInternalDepth) {
    const fs::path dir = scratch("paper_depth");
    const Result a = run({"build", "--op", "qfa", "--n", "8", "--paper-depth", "2", "-o", (dir / "a").string()});
    const Result b = run({"build", "--op", "qfa", "--n", "8", "--depth", "3", "-o", (dir / "b").string()});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const Result both = run({"build", "--op", "qfa", "--n", "8", "--depth", "3", "--paper-depth", "2", "-o",
                             (dir / "c").string()});
    EXPECT_EQ(both.code, 2);
    fs::remove_all(dir);
}

TEST(Cli, CountsReportComparesAgainstReference) {
    const Result r = run({"counts", "--op", "qfa", "--n", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("ref_2q"), std::string::npos);
    EXPECT_NE(r.out.find("182"), std::string::npos);
    EXPECT_NE(r.out.find("full"), std::string::npos);
    const Result q = run({"counts", "--op", "qfm", "--n", "4", "--depth", "2", "--depth", "full"});
    ASSERT_EQ(q.code, 0) << q.err;
    EXPECT_NE(q.out.find("1128"), std::string::npos);
}

TEST(Cli, RunNoiselessAdder) {
    const Result r = run({"run", "--op", "qfa", "--x", "3:3", "--y", "3:5", "--depth", "full", "--p2", "0",
                          "--shots", "100"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("success: true"), std::string::npos);
    EXPECT_NE(r.out.find("3|0 100"), std::string::npos);
    EXPECT_TRUE(r.err.empty());
}

TEST(Cli, RunMultiplierSuperposition) {
    const Result r = run({"run", "--op", "qfm", "--x", "2:1,2", "--y", "2:3", "--p2", "0", "--depth", "full",
                          "--seed", "7"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto a = r.out.find("1|3|3 ");
    const auto b = r.out.find("2|3|6 ");
    ASSERT_NE(a, std::string::npos);
    ASSERT_NE(b, std::string::npos);
    const auto ca = std::stoi(r.out.substr(a + 6));
    const auto cb = std::stoi(r.out.substr(b + 6));
    EXPECT_EQ(ca + cb, 2048);
    EXPECT_NEAR(ca, 1024, 150);
    EXPECT_EQ(run({"run", "--op", "qfm", "--x", "2:1,2", "--y", "2:3", "--p2", "0", "--seed", "7"}).out, r.out);
}

TEST(Cli, SeedDeterminesNoisyRun) {
    const std::vector<std::string> args{"run", "--op", "qfa", "--x", "4:3,9", "--y", "4:5", "--p2", "0.05",
                                        "--shots", "300", "--seed", "7"};
    const Result a = run(args);
    const Result b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    setenv("QFARITH_SEED", "7", 1);
    std::vector<std::string> no_seed(args.begin(), args.end() - 2);
    EXPECT_EQ(run(no_seed).out, a.out);
    setenv("QFARITH_SEED", "seven", 1);
    EXPECT_EQ(run(no_seed).code, 2);
    unsetenv("QFARITH_SEED");
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"run", "--op", "qfa", "--x", "3:9", "--y", "3:1"}).code, 2);
    EXPECT_EQ(run({"run", "--op", "qfa", "--x", "3:1", "--y", "4:1"}).code, 2);
    EXPECT_EQ(run({"run", "--op", "qfa", "--x", "3:1", "--y", "3:1", "--p2", "2"}).code, 2);
    EXPECT_EQ(run({"build", "--op", "qfa", "--n", "3", "--depth", "zero", "-o", "/tmp/x"}).code, 2);
    const Result help = run({"--help"});
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("label 1 -> depth 2"), std::string::npos);
}

TEST(Cli, IoErrorsExitThree) {
    EXPECT_EQ(run({"build", "--op", "qfa", "--n", "2", "-o", "/nonexistent/dir/c.txt"}).code, 3);
    EXPECT_EQ(run({"sweep", "/nonexistent/config.json"}).code, 3);
    EXPECT_EQ(run({"plot-data", "/nonexistent/results"}).code, 3);
}

TEST(Cli, SweepConfigErrorsListPaths) {
    const fs::path dir = scratch("bad_config");
    {
        std::ofstream out(dir / "bad.json");
        out << R"({"op": "qfa", "n": 2, "depths": ["full", "x"], "shots": -1})";
    }
    const Result r = run({"sweep", (dir / "bad.json").string(), "-o", (dir / "out").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("$.depths[1]"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("$.shots"), std::string::npos) << r.err;
    fs::remove_all(dir);
}

TEST(Cli, SweepResumeAndPlotData) {
    const fs::path dir = scratch("sweep");
    {
        std::ofstream out(dir / "cfg.json");
        out << R"({"op": "qfa", "n": 2, "patterns": ["1:1", "2:2"], "depths": ["full"],
                   "error_axes": ["1q", "2q"], "error_rates": [0.02], "instances": 4, "shots": 50, "seed": 5})";
    }
    const Result first = run({"sweep", (dir / "cfg.json").string(), "-o", (dir / "r").string(), "--workers", "2"});
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(first.out.substr(0, first.out.find('\n')),
              "error_axis,error_rate,depth,pattern,success_rate,sigma,lower_bar,upper_bar,instances,shots");
    const std::string jsonl = slurp(dir / "r" / "instances.jsonl");
    const Result again =
        run({"sweep", (dir / "cfg.json").string(), "-o", (dir / "r").string(), "--resume", "--workers", "1"});
    ASSERT_EQ(again.code, 0) << again.err;
    EXPECT_EQ(again.out, first.out);
    EXPECT_EQ(slurp(dir / "r" / "instances.jsonl"), jsonl);
    EXPECT_NE(again.err.find("(kept)"), std::string::npos);

    const Result plot = run({"plot-data", (dir / "r").string()});
    ASSERT_EQ(plot.code, 0) << plot.err;
    EXPECT_EQ(std::count(plot.out.begin(), plot.out.end(), '\n'), 4);
    fs::remove_all(dir);
}

TEST(Cli, ZeroRateSmokeConfigIsPerfect) {
    const fs::path dir = scratch("smoke");
    {
        std::ofstream out(dir / "zero.json");
        out << R"({"op": "qfa", "n": 4, "patterns": ["1:1", "1:2", "2:2"], "instances": 10, "shots": 256})";
    }
    const Result r = run({"sweep", (dir / "zero.json").string(), "-o", (dir / "r").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        EXPECT_NE(line.find(",100,"), std::string::npos) << line;
    }
    EXPECT_EQ(rows, 3);
    fs::remove_all(dir);
}

TEST(Cli, BundledSmokeConfigParses) {
    const fs::path cfg = fs::path(QFARITH_SOURCE_DIR) / "configs" / "qfa_n4_smoke.json";
    ASSERT_TRUE(fs::exists(cfg));
    std::ifstream in(cfg);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_NO_THROW(qfarith::parse_config(ss.str()));
}

#endif  // QFARITH_HAVE_CLI
