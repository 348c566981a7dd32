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

#include "qfarith/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace qfarith {

using json = nlohmann::ordered_json;

namespace {

std::string join_problems(const std::vector<std::string> &problems) {
    std::string s = "invalid configuration";
    for (const auto &p : problems) {
        s += "\n  " + p;
    }
    return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::invalid_argument(join_problems(problems)), problems_(std::move(problems)) {}

// ---------------------------------------------------------------- labels

Pattern Pattern::parse(std::string_view text) {
    if (text == "1:1") {
        return {1, 1};
    }
    if (text == "1:2") {
        return {1, 2};
    }
    if (text == "2:2") {
        return {2, 2};
    }
    throw std::invalid_argument("pattern must be 1:1, 1:2 or 2:2, got '" + std::string(text) + "'");
}

std::string Pattern::label() const {
    return std::to_string(x_order) + ":" + std::to_string(y_order);
}

ErrorAxis parse_error_axis(std::string_view text) {
    if (text == "1q") {
        return ErrorAxis::OneQubit;
    }
    if (text == "2q") {
        return ErrorAxis::TwoQubit;
    }
    throw std::invalid_argument("error axis must be 1q or 2q, got '" + std::string(text) + "'");
}

std::string_view axis_label(ErrorAxis axis) {
    return axis == ErrorAxis::OneQubit ? "1q" : "2q";
}

NoiseModel axis_noise(ErrorAxis axis, double rate, bool rz_noisy) {
    NoiseModel m;
    m.rz_noisy = rz_noisy;
    (axis == ErrorAxis::OneQubit ? m.p1 : m.p2) = rate;
    return m;
}

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc{}) {
        throw std::logic_error("to_chars failed");
    }
    return std::string(buf, ptr);
}

// ---------------------------------------------------------------- config

void ExperimentConfig::validate() const {
    std::vector<std::string> problems;
    if (op.kind == OpKind::Add && op.total_width() > 26) {
        problems.push_back("$.n: adder of width " + std::to_string(op.n) + " exceeds the 26-qubit simulation limit");
    }
    if (op.kind == OpKind::Multiply && op.total_width() > 26) {
        problems.push_back("$.n: multiplier needs " + std::to_string(op.total_width()) + " qubits, limit is 26");
    }
    if (patterns.empty()) {
        problems.push_back("$.patterns: at least one pattern is required");
    }
    if (depths.empty()) {
        problems.push_back("$.depths: at least one depth is required");
    }
    if (error_axes.empty()) {
        problems.push_back("$.error_axes: at least one error axis is required");
    }
    for (const auto &[axis, rates] : error_rates) {
        for (std::size_t i = 0; i < rates.size(); ++i) {
            if (!(rates[i] >= 0.0 && rates[i] <= 1.0)) {
                problems.push_back(
                    "$.error_rates." + std::string(axis_label(axis)) + "[" + std::to_string(i) +
                    "]: rate must lie in [0, 1]");
            }
        }
    }
    if (instances < 2) {
        problems.push_back("$.instances: at least 2 instances are needed to aggregate a point");
    }
    if (shots < 1) {
        problems.push_back("$.shots: must be at least 1");
    }
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const double space = instance_space(op, patterns[i]);
        if (space < instances) {
            problems.push_back(
                "$.patterns[" + std::to_string(i) + "]: pattern " + patterns[i].label() + " admits only " +
                format_double(space) + " distinct instances, " + std::to_string(instances) + " requested");
        }
    }
    if (!problems.empty()) {
        throw ConfigError(std::move(problems));
    }
}

std::vector<double> ExperimentConfig::rates_for(ErrorAxis axis) const {
    std::vector<double> r{0.0};
    if (auto it = error_rates.find(axis); it != error_rates.end()) {
        r.insert(r.end(), it->second.begin(), it->second.end());
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

namespace {

class ConfigReader {
  public:
    std::vector<std::string> problems;

    void fail(const std::string &path, const std::string &message) {
        problems.push_back(path + ": " + message);
    }

    std::optional<std::uint64_t> uint(const json &v, const std::string &path, std::uint64_t min) {
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
            fail(path, "expected a non-negative integer");
            return std::nullopt;
        }
        auto x = v.get<std::uint64_t>();
        if (x < min) {
            fail(path, "must be at least " + std::to_string(min));
            return std::nullopt;
        }
        return x;
    }

    std::optional<bool> boolean(const json &v, const std::string &path) {
        if (!v.is_boolean()) {
            fail(path, "expected true or false");
            return std::nullopt;
        }
        return v.get<bool>();
    }

    std::vector<double> rates(const json &v, const std::string &path) {
        std::vector<double> out;
        if (!v.is_array()) {
            fail(path, "expected an array of rates");
            return out;
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string p = path + "[" + std::to_string(i) + "]";
            if (!v[i].is_number()) {
                fail(p, "expected a number");
            } else if (double r = v[i].get<double>(); !(r >= 0.0 && r <= 1.0)) {
                fail(p, "rate must lie in [0, 1]");
            } else {
                out.push_back(r);
            }
        }
        return out;
    }

    // Accepts either `plural` (array) or `singular` (scalar).
    std::vector<std::pair<json, std::string>> list(const json &doc, const char *plural, const char *singular) {
        std::vector<std::pair<json, std::string>> out;
        const bool has_plural = doc.contains(plural);
        const bool has_singular = doc.contains(singular);
        if (has_plural && has_singular) {
            fail(std::string("$.") + singular, std::string("conflicts with $.") + plural);
            return out;
        }
        if (has_singular) {
            out.emplace_back(doc[singular], std::string("$.") + singular);
        } else if (has_plural) {
            const json &arr = doc[plural];
            if (!arr.is_array() || arr.empty()) {
                fail(std::string("$.") + plural, "expected a non-empty array");
                return out;
            }
            for (std::size_t i = 0; i < arr.size(); ++i) {
                out.emplace_back(arr[i], std::string("$.") + plural + "[" + std::to_string(i) + "]");
            }
        }
        return out;
    }
};

const std::set<std::string> &known_keys() {
    static const std::set<std::string> keys{
        "op",         "n",           "m",           "modular",   "pattern", "patterns", "depths",
        "error_axis", "error_axes",  "error_rates", "instances", "shots",   "seed",     "rz_noisy"};
    return keys;
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError({std::string("$: malformed JSON (") + e.what() + ")"});
    }
    if (!doc.is_object()) {
        throw ConfigError({"$: expected a JSON object"});
    }
    ConfigReader r;
    for (const auto &[key, _] : doc.items()) {
        if (!known_keys().count(key)) {
            r.fail("$." + key, "unknown field");
        }
    }

    ExperimentConfig c;
    std::optional<OpKind> kind;
    if (!doc.contains("op")) {
        r.fail("$.op", "required");
    } else if (!doc["op"].is_string()) {
        r.fail("$.op", "expected \"qfa\" or \"qfm\"");
    } else if (doc["op"] == "qfa") {
        kind = OpKind::Add;
    } else if (doc["op"] == "qfm") {
        kind = OpKind::Multiply;
    } else {
        r.fail("$.op", "expected \"qfa\" or \"qfm\", got " + doc["op"].dump());
    }
    std::optional<std::uint64_t> n;
    if (!doc.contains("n")) {
        r.fail("$.n", "required");
    } else {
        n = r.uint(doc["n"], "$.n", 1);
    }
    std::optional<std::uint64_t> m;
    if (doc.contains("m")) {
        m = r.uint(doc["m"], "$.m", 1);
        if (kind == OpKind::Add) {
            r.fail("$.m", "only multipliers take a separate y width");
        }
    }
    bool modular = true;
    if (doc.contains("modular")) {
        if (auto b = r.boolean(doc["modular"], "$.modular")) {
            modular = *b;
        }
        if (kind == OpKind::Multiply) {
            r.fail("$.modular", "only adders have a modular variant");
        }
    }
    const std::uint64_t width_cap = 26;
    if (n && *n > width_cap) {
        r.fail("$.n", "operand width above " + std::to_string(width_cap));
        n.reset();
    }
    if (m && *m > width_cap) {
        r.fail("$.m", "operand width above " + std::to_string(width_cap));
        m.reset();
    }
    bool have_op = false;
    if (kind && n) {
        c.op = *kind == OpKind::Add ? ArithOp::add(static_cast<std::uint32_t>(*n), modular)
                                    : ArithOp::multiply(static_cast<std::uint32_t>(*n),
                                                        static_cast<std::uint32_t>(m.value_or(*n)));
        have_op = true;
    }

    auto patterns = r.list(doc, "patterns", "pattern");
    if (!patterns.empty()) {
        c.patterns.clear();
    }
    for (const auto &[v, path] : patterns) {
        try {
            if (!v.is_string()) {
                throw std::invalid_argument("expected \"1:1\", \"1:2\" or \"2:2\"");
            }
            Pattern p = Pattern::parse(v.get<std::string>());
            if (std::find(c.patterns.begin(), c.patterns.end(), p) != c.patterns.end()) {
                r.fail(path, "duplicate pattern");
            } else {
                c.patterns.push_back(p);
            }
        } catch (const std::invalid_argument &e) {
            r.fail(path, e.what());
        }
    }

    if (doc.contains("depths")) {
        const json &arr = doc["depths"];
        if (!arr.is_array() || arr.empty()) {
            r.fail("$.depths", "expected a non-empty array");
        } else {
            c.depths.clear();
            for (std::size_t i = 0; i < arr.size(); ++i) {
                const std::string path = "$.depths[" + std::to_string(i) + "]";
                try {
                    Depth d = arr[i].is_string() ? Depth::parse(arr[i].get<std::string>())
                              : arr[i].is_number_integer() ? Depth::limited(arr[i].get<int>())
                                                           : throw std::invalid_argument("expected \"full\" or an integer");
                    if (std::find(c.depths.begin(), c.depths.end(), d) != c.depths.end()) {
                        r.fail(path, "duplicate depth");
                    } else {
                        c.depths.push_back(d);
                    }
                } catch (const std::invalid_argument &e) {
                    r.fail(path, e.what());
                }
            }
        }
    }

    auto axes = r.list(doc, "error_axes", "error_axis");
    if (!axes.empty()) {
        c.error_axes.clear();
    }
    for (const auto &[v, path] : axes) {
        try {
            if (!v.is_string()) {
                throw std::invalid_argument("expected \"1q\" or \"2q\"");
            }
            ErrorAxis a = parse_error_axis(v.get<std::string>());
            if (std::find(c.error_axes.begin(), c.error_axes.end(), a) != c.error_axes.end()) {
                r.fail(path, "duplicate axis");
            } else {
                c.error_axes.push_back(a);
            }
        } catch (const std::invalid_argument &e) {
            r.fail(path, e.what());
        }
    }

    if (doc.contains("error_rates")) {
        const json &er = doc["error_rates"];
        if (er.is_array()) {
            auto rates = r.rates(er, "$.error_rates");
            for (ErrorAxis a : c.error_axes) {
                c.error_rates[a] = rates;
            }
        } else if (er.is_object()) {
            for (const auto &[key, v] : er.items()) {
                const std::string path = "$.error_rates." + key;
                if (key != "1q" && key != "2q") {
                    r.fail(path, "expected key 1q or 2q");
                    continue;
                }
                c.error_rates[parse_error_axis(key)] = r.rates(v, path);
            }
        } else {
            r.fail("$.error_rates", "expected an array or an object keyed by 1q/2q");
        }
    }

    if (doc.contains("instances")) {
        if (auto v = r.uint(doc["instances"], "$.instances", 2)) {
            if (*v > std::numeric_limits<std::uint32_t>::max()) {
                r.fail("$.instances", "too large");
            } else {
                c.instances = static_cast<std::uint32_t>(*v);
            }
        }
    }
    if (doc.contains("shots")) {
        if (auto v = r.uint(doc["shots"], "$.shots", 1)) {
            c.shots = *v;
        }
    }
    if (doc.contains("seed")) {
        if (auto v = r.uint(doc["seed"], "$.seed", 0)) {
            c.seed = *v;
        }
    }
    if (doc.contains("rz_noisy")) {
        if (auto v = r.boolean(doc["rz_noisy"], "$.rz_noisy")) {
            c.rz_noisy = *v;
        }
    }

    if (!r.problems.empty()) {
        throw ConfigError(std::move(r.problems));
    }
    if (!have_op) {
        throw ConfigError({"$: no operation"});
    }
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string config_to_json(const ExperimentConfig &c) {
    json doc;
    doc["op"] = c.op.kind == OpKind::Add ? "qfa" : "qfm";
    doc["n"] = c.op.n;
    if (c.op.kind == OpKind::Multiply) {
        doc["m"] = c.op.m;
    } else {
        doc["modular"] = c.op.modular;
    }
    doc["patterns"] = json::array();
    for (const auto &p : c.patterns) {
        doc["patterns"].push_back(p.label());
    }
    doc["depths"] = json::array();
    for (const auto &d : c.depths) {
        if (d.is_full()) {
            doc["depths"].push_back("full");
        } else {
            doc["depths"].push_back(d.value());
        }
    }
    doc["error_axes"] = json::array();
    for (ErrorAxis a : c.error_axes) {
        doc["error_axes"].push_back(std::string(axis_label(a)));
    }
    doc["error_rates"] = json::object();
    for (const auto &[a, rates] : c.error_rates) {
        doc["error_rates"][std::string(axis_label(a))] = rates;
    }
    doc["instances"] = c.instances;
    doc["shots"] = c.shots;
    doc["seed"] = c.seed;
    doc["rz_noisy"] = c.rz_noisy;
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- instances

namespace {

double choose(double n, double k) {
    double r = 1;
    for (double i = 0; i < k; ++i) {
        r *= (n - i) / (i + 1);
    }
    return r;
}

std::vector<std::uint64_t> draw_distinct(std::uint32_t width, std::uint32_t order, Rng &rng) {
    std::set<std::uint64_t> values;
    while (values.size() < order) {
        values.insert(uniform_below(rng, std::uint64_t{1} << width));
    }
    return {values.begin(), values.end()};
}

}  // namespace

double instance_space(const ArithOp &op, const Pattern &pattern) {
    const double nx = std::ldexp(1.0, static_cast<int>(op.n));
    const double ny = std::ldexp(1.0, static_cast<int>(op.y_operand_width()));
    return choose(nx, pattern.x_order) * choose(ny, pattern.y_order);
}

std::vector<Instance> generate_instances(const ArithOp &op, const Pattern &pattern, std::uint32_t count, Rng &rng) {
    const double space = instance_space(op, pattern);
    if (space < count) {
        throw std::invalid_argument(
            "pattern " + pattern.label() + " admits only " + format_double(space) + " distinct instances");
    }
    std::set<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> seen;
    std::vector<Instance> out;
    out.reserve(count);
    while (out.size() < count) {
        auto xs = draw_distinct(op.n, pattern.x_order, rng);
        auto ys = draw_distinct(op.y_operand_width(), pattern.y_order, rng);
        if (!seen.emplace(xs, ys).second) {
            continue;
        }
        out.push_back({QInteger::uniform(op.n, std::move(xs)), QInteger::uniform(op.y_operand_width(), std::move(ys))});
    }
    return out;
}

std::vector<Instance> sweep_instances(const ExperimentConfig &config, const Pattern &pattern) {
    Rng rng = make_rng(derive_seed(config.seed, hash_label("instances")), hash_label(pattern.label().c_str()));
    return generate_instances(config.op, pattern, config.instances, rng);
}

// ---------------------------------------------------------------- metric

InstanceResult evaluate_instance(const CountsMap &counts, const std::set<std::uint64_t> &expected) {
    if (counts.empty()) {
        throw std::invalid_argument("no counts to evaluate");
    }
    if (expected.empty()) {
        throw std::invalid_argument("expected outcome set is empty");
    }
    std::uint64_t min_expected = std::numeric_limits<std::uint64_t>::max();
    for (std::uint64_t e : expected) {
        auto it = counts.find(e);
        min_expected = std::min(min_expected, it == counts.end() ? 0 : it->second);
    }
    std::optional<std::uint64_t> max_incorrect;
    for (const auto &[k, v] : counts) {
        if (!expected.count(k) && v > 0) {
            max_incorrect = std::max(max_incorrect.value_or(0), v);
        }
    }
    InstanceResult r;
    r.saturated = !max_incorrect;
    r.min_diff = static_cast<std::int64_t>(min_expected) - static_cast<std::int64_t>(max_incorrect.value_or(0));
    r.success = r.min_diff > 0;
    return r;
}

PointResult aggregate_point(const std::vector<InstanceResult> &results) {
    if (results.size() < 2) {
        throw std::invalid_argument("a point needs at least two instances");
    }
    const auto n = static_cast<double>(results.size());
    double mean = 0;
    std::uint32_t successes = 0;
    for (const auto &r : results) {
        mean += static_cast<double>(r.min_diff);
        successes += r.success;
    }
    mean /= n;
    double var = 0;
    for (const auto &r : results) {
        const double d = static_cast<double>(r.min_diff) - mean;
        var += d * d;
    }
    PointResult p;
    p.instances = static_cast<std::uint32_t>(results.size());
    p.success_rate = 100.0 * successes / n;
    p.sigma = std::sqrt(var / n);
    for (const auto &r : results) {
        const auto d = static_cast<double>(r.min_diff);
        if (r.success && d < p.sigma) {
            ++p.lower_bar;
        }
        if (!r.success && d > -p.sigma) {
            ++p.upper_bar;
        }
    }
    return p;
}

InstanceResult run_instance(
    const ArithOp &op, const Circuit &basis_circuit, const Instance &instance, const NoiseModel &noise,
    std::uint64_t shots, std::uint64_t seed, unsigned workers) {
    const Statevector init = prepare_operands(op, instance.x, instance.y);
    const CountsMap counts = simulate_shots(basis_circuit, init, noise, shots, seed, workers);
    return evaluate_instance(counts, expected_outputs(op, instance.x, instance.y));
}

// ---------------------------------------------------------------- points

std::string PointKey::id() const {
    return pattern.label() + "/" + std::string(axis_label(axis)) + "/" + format_double(rate) + "/" + depth.label();
}

std::vector<PointKey> sweep_points(const ExperimentConfig &config) {
    std::vector<PointKey> out;
    for (const Pattern &p : config.patterns) {
        for (ErrorAxis a : config.error_axes) {
            for (double rate : config.rates_for(a)) {
                for (const Depth &d : config.depths) {
                    out.push_back({p, a, rate, d});
                }
            }
        }
    }
    return out;
}

std::vector<ReferenceCounts> reference_counts(const ArithOp &op) {
    if (op.kind == OpKind::Add && op.n == 8 && op.modular) {
        return {{"1", 163, 98}, {"2", 199, 122}, {"3", 229, 142}, {"4", 253, 158}, {"full", 289, 182}};
    }
    if (op.kind == OpKind::Multiply && op.n == 4 && op.m == 4) {
        return {{"1", 1032, 744}, {"2", 1248, 936}, {"full", 1464, 1128}};
    }
    return {};
}

}  // namespace qfarith
