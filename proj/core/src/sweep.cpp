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

#include <atomic>
#include <chrono>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "qfarith/harness.hpp"

#include "json.hpp"

namespace qfarith {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct StoredInstance {
    InstanceResult result;
    std::string line;
};

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomically(const fs::path &path, const std::string &content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out || !(out << content) || !out.flush()) {
            throw IoError("cannot write " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        throw IoError("cannot replace " + path.string() + ": " + ec.message());
    }
}

std::string instance_line(const PointKey &key, std::uint32_t index, const Instance &inst, const InstanceResult &r) {
    json j;
    j["point_id"] = key.id();
    j["pattern"] = key.pattern.label();
    j["depth"] = key.depth.label();
    j["error_axis"] = std::string(axis_label(key.axis));
    j["error_rate"] = key.rate;
    j["instance"] = index;
    j["operands"] = {{"x", format_qinteger(inst.x)}, {"y", format_qinteger(inst.y)}};
    j["success"] = r.success;
    j["min_diff"] = r.min_diff;
    j["saturated"] = r.saturated;
    return j.dump();
}

// Complete points from a previous run, keyed by point id. Unparseable lines
// (e.g. one cut short by an interruption) and partial points are dropped.
std::map<std::string, std::vector<StoredInstance>> load_complete_points(
    const fs::path &path, std::uint32_t instances) {
    std::map<std::string, std::map<std::uint32_t, StoredInstance>> partial;
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        try {
            json j = json::parse(line);
            StoredInstance s;
            s.result.success = j.at("success").get<bool>();
            s.result.min_diff = j.at("min_diff").get<std::int64_t>();
            s.result.saturated = j.at("saturated").get<bool>();
            s.line = line;
            partial[j.at("point_id").get<std::string>()][j.at("instance").get<std::uint32_t>()] = std::move(s);
        } catch (const json::exception &) {
            continue;
        }
    }
    std::map<std::string, std::vector<StoredInstance>> out;
    for (auto &[id, by_index] : partial) {
        if (by_index.size() != instances || by_index.rbegin()->first != instances - 1) {
            continue;
        }
        auto &v = out[id];
        for (auto &[_, s] : by_index) {
            v.push_back(std::move(s));
        }
    }
    return out;
}

std::string summary_row(const PointKey &key, const PointResult &p, std::uint64_t shots) {
    return std::string(axis_label(key.axis)) + "," + format_double(key.rate) + "," + key.depth.label() + "," +
           key.pattern.label() + "," + format_double(p.success_rate) + "," + format_double(p.sigma) + "," +
           std::to_string(p.lower_bar) + "," + std::to_string(p.upper_bar) + "," + std::to_string(p.instances) + "," +
           std::to_string(shots);
}

std::vector<InstanceResult> run_point(
    const ExperimentConfig &config, const PointKey &key, const Circuit &circuit, const std::vector<Instance> &instances,
    unsigned workers) {
    const NoiseModel noise = axis_noise(key.axis, key.rate, config.rz_noisy);
    const std::uint64_t point_seed = derive_seed(derive_seed(config.seed, hash_label("points")), hash_label(key.id().c_str()));
    std::vector<InstanceResult> results(instances.size());
    auto job = [&](std::size_t i) {
        results[i] = run_instance(config.op, circuit, instances[i], noise, config.shots, derive_seed(point_seed, i));
    };
    const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), instances.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < instances.size(); ++i) {
            job(i);
        }
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next++; i < instances.size(); i = next++) {
                    job(i);
                }
            } catch (...) {
                failures[t] = std::current_exception();
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    for (auto &f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }
    return results;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig &config, const fs::path &dir, const SweepOptions &options) {
    config.validate();
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create " + dir.string() + ": " + ec.message());
    }
    const fs::path config_path = dir / "config.json";
    const fs::path jsonl_path = dir / "instances.jsonl";
    const fs::path timing_path = dir / "timing.jsonl";
    const fs::path summary_path = dir / "summary.csv";
    const std::string config_text = config_to_json(config);

    std::map<std::string, std::vector<StoredInstance>> done;
    if (options.resume && fs::exists(config_path)) {
        if (read_file(config_path) != config_text) {
            throw ConfigError({"$: configuration differs from the one recorded in " + config_path.string()});
        }
        if (fs::exists(jsonl_path)) {
            done = load_complete_points(jsonl_path, config.instances);
        }
    }
    write_file_atomically(config_path, config_text);

    const auto points = sweep_points(config);
    // Rewrite the stream with just the kept points before appending new ones.
    {
        std::string kept;
        for (const auto &key : points) {
            if (auto it = done.find(key.id()); it != done.end()) {
                for (const auto &s : it->second) {
                    kept += s.line + "\n";
                }
            }
        }
        write_file_atomically(jsonl_path, kept);
    }
    std::ofstream stream(jsonl_path, std::ios::binary | std::ios::app);
    std::ofstream timing(timing_path, std::ios::binary | (options.resume ? std::ios::app : std::ios::trunc));
    if (!stream || !timing) {
        throw IoError("cannot open result files in " + dir.string());
    }

    std::map<Pattern, std::vector<Instance>> instances;
    std::map<Depth, Circuit> circuits;
    std::vector<SweepRow> rows;
    std::string all_lines;
    std::size_t index = 0;
    for (const auto &key : points) {
        ++index;
        const std::string id = key.id();
        if (!instances.count(key.pattern)) {
            instances.emplace(key.pattern, sweep_instances(config, key.pattern));
        }
        const auto &insts = instances.at(key.pattern);
        std::vector<InstanceResult> results;
        if (auto it = done.find(id); it != done.end()) {
            for (const auto &s : it->second) {
                results.push_back(s.result);
                all_lines += s.line + "\n";
            }
            if (options.progress) {
                options.progress("[" + std::to_string(index) + "/" + std::to_string(points.size()) + "] " + id + " (kept)");
            }
        } else {
            if (!circuits.count(key.depth)) {
                circuits.emplace(key.depth, decompose_to_basis(build_arith(config.op, key.depth)));
            }
            const auto t0 = std::chrono::steady_clock::now();
            results = run_point(config, key, circuits.at(key.depth), insts, options.workers);
            const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            std::string lines;
            for (std::uint32_t i = 0; i < results.size(); ++i) {
                lines += instance_line(key, i, insts[i], results[i]) + "\n";
            }
            all_lines += lines;
            if (!(stream << lines) || !stream.flush()) {
                throw IoError("cannot append to " + jsonl_path.string());
            }
            json t;
            t["point_id"] = id;
            t["wall_ms"] = ms;
            t["trajectories"] = static_cast<std::uint64_t>(results.size()) * config.shots;
            t["gates"] = circuits.at(key.depth).size();
            if (!(timing << t.dump() << "\n") || !timing.flush()) {
                throw IoError("cannot append to " + timing_path.string());
            }
            if (options.progress) {
                options.progress(
                    "[" + std::to_string(index) + "/" + std::to_string(points.size()) + "] " + id + " " +
                    format_double(std::round(ms) / 1000) + " s");
            }
        }
        rows.push_back({key, aggregate_point(results)});
    }
    stream.close();
    write_file_atomically(jsonl_path, all_lines);

    std::string summary = std::string(kSummaryHeader) + "\n";
    for (const auto &row : rows) {
        summary += summary_row(row.key, row.result, config.shots) + "\n";
    }
    write_file_atomically(summary_path, summary);
    return rows;
}

}  // namespace qfarith
