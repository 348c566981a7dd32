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

// Success-rate experiments: random operand instances, the plurality success
// metric, per-point aggregation, and sweeps over depth and error rate.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qfarith/arith.hpp"
#include "qfarith/noise.hpp"
#include "qfarith/qinteger.hpp"
#include "qfarith/rng.hpp"

namespace qfarith {

/// Invalid configuration. `problems` lists every violation as "path: message".
class ConfigError : public std::invalid_argument {
  public:
    explicit ConfigError(std::vector<std::string> problems);
    const std::vector<std::string> &problems() const { return problems_; }

  private:
    std::vector<std::string> problems_;
};

/// Unreadable, unwritable or corrupt result files.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Orders of the x and y operands.
struct Pattern {
    std::uint32_t x_order = 1;
    std::uint32_t y_order = 1;

    /// "1:1", "1:2" or "2:2".
    static Pattern parse(std::string_view text);
    std::string label() const;
    bool operator==(const Pattern &) const = default;
    auto operator<=>(const Pattern &) const = default;
};

enum class ErrorAxis { OneQubit, TwoQubit };

/// "1q" or "2q".
ErrorAxis parse_error_axis(std::string_view text);
std::string_view axis_label(ErrorAxis axis);
/// Noise with `rate` on the chosen axis and zero on the other.
NoiseModel axis_noise(ErrorAxis axis, double rate, bool rz_noisy = true);

/// Shortest decimal text that reads back as `value`.
std::string format_double(double value);

struct ExperimentConfig {
    ArithOp op = ArithOp::add(4, true);
    std::vector<Pattern> patterns{Pattern{}};
    std::vector<Depth> depths{Depth::full()};
    std::vector<ErrorAxis> error_axes{ErrorAxis::TwoQubit};
    /// Rates per axis. Zero is always swept in addition to these.
    std::map<ErrorAxis, std::vector<double>> error_rates;
    std::uint32_t instances = 200;
    std::uint64_t shots = 2048;
    std::uint64_t seed = 0;
    bool rz_noisy = true;

    /// Throws ConfigError listing every problem.
    void validate() const;
    /// Sorted, de-duplicated rates for `axis` including 0.
    std::vector<double> rates_for(ErrorAxis axis) const;
};

/// Parses a JSON config document (snake_case keys). Throws ConfigError with
/// JSON paths such as "$.depths[2]".
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path &path);
/// Canonical JSON form; parse_config(config_to_json(c)) reproduces c.
std::string config_to_json(const ExperimentConfig &config);

struct Instance {
    QInteger x;
    QInteger y;
};

/// Number of distinct operand tuples available for `pattern`.
double instance_space(const ArithOp &op, const Pattern &pattern);

/// `count` distinct operand tuples. Values within an operand are drawn
/// uniformly without replacement and sorted; amplitudes are equal. Throws
/// std::invalid_argument if the pattern cannot supply that many tuples.
std::vector<Instance> generate_instances(const ArithOp &op, const Pattern &pattern, std::uint32_t count, Rng &rng);

/// Instances of one (op, pattern) for a master seed; shared by every depth
/// and error axis of a sweep.
std::vector<Instance> sweep_instances(const ExperimentConfig &config, const Pattern &pattern);

struct InstanceResult {
    bool success = false;
    /// Smallest expected count minus the largest observed unexpected count.
    std::int64_t min_diff = 0;
    /// No unexpected output was observed; min_diff is the smallest expected count.
    bool saturated = false;
    bool operator==(const InstanceResult &) const = default;
};

/// Plurality metric: success iff every expected outcome is counted strictly
/// more often than every other outcome. Throws for empty counts or expected.
InstanceResult evaluate_instance(const CountsMap &counts, const std::set<std::uint64_t> &expected);

struct PointResult {
    double success_rate = 0;  // percent
    double sigma = 0;         // population std of min_diff
    std::uint32_t lower_bar = 0;  // successes with min_diff < sigma
    std::uint32_t upper_bar = 0;  // failures with min_diff > -sigma
    std::uint32_t instances = 0;
    bool operator==(const PointResult &) const = default;
};

/// Throws std::invalid_argument for fewer than two results.
PointResult aggregate_point(const std::vector<InstanceResult> &results);

/// Seeds and evaluates one instance at one noise setting.
InstanceResult run_instance(
    const ArithOp &op, const Circuit &basis_circuit, const Instance &instance, const NoiseModel &noise,
    std::uint64_t shots, std::uint64_t seed, unsigned workers = 1);

/// One (pattern, axis, rate, depth) cell of a sweep.
struct PointKey {
    Pattern pattern;
    ErrorAxis axis = ErrorAxis::TwoQubit;
    double rate = 0;
    Depth depth = Depth::full();

    std::string id() const;
};

/// Points in the canonical sweep order: pattern, axis, rate, depth.
std::vector<PointKey> sweep_points(const ExperimentConfig &config);

struct SweepOptions {
    unsigned workers = 1;
    bool resume = false;
    /// Progress lines; may be null.
    std::function<void(const std::string &)> progress;
};

struct SweepRow {
    PointKey key;
    PointResult result;
};

/// Runs every point and writes into `dir`:
///   config.json      canonical copy of the configuration
///   instances.jsonl  one record per instance, canonical point order
///   timing.jsonl     wall-clock and trajectory counts per computed point
///   summary.csv      one row per point
/// With `resume`, complete points already in instances.jsonl are kept and
/// the config must match. Output is independent of `workers`.
std::vector<SweepRow> run_sweep(
    const ExperimentConfig &config, const std::filesystem::path &dir, const SweepOptions &options = {});

/// Header of summary.csv.
inline constexpr std::string_view kSummaryHeader =
    "error_axis,error_rate,depth,pattern,success_rate,sigma,lower_bar,upper_bar,instances,shots";

/// Writes one CSV per (axis, pattern) found in dir/summary.csv into `out_dir`
/// and returns their paths. Throws IoError on missing or corrupt input.
std::vector<std::filesystem::path> write_plot_data(
    const std::filesystem::path &results_dir, const std::filesystem::path &out_dir);

/// Published two-qubit and one-qubit counts to compare against; labels use
/// the alternate depth labeling (see Depth::from_table_label).
struct ReferenceCounts {
    std::string depth_label;
    std::uint64_t one_qubit;
    std::uint64_t two_qubit;
};
std::vector<ReferenceCounts> reference_counts(const ArithOp &op);

}  // namespace qfarith
