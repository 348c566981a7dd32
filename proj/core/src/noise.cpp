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

#include "qfarith/noise.hpp"

#include <algorithm>
#include <exception>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

#include "qfarith/split_state.hpp"

namespace qfarith {

void NoiseModel::validate() const {
    if (!(p1 >= 0.0 && p1 <= 1.0)) {
        throw std::invalid_argument("p1 must lie in [0, 1]");
    }
    if (!(p2 >= 0.0 && p2 <= 1.0)) {
        throw std::invalid_argument("p2 must lie in [0, 1]");
    }
}

double NoiseModel::rate_for(const Gate &gate) const {
    switch (gate.kind) {
        case GateKind::Id:
            return 0.0;
        case GateKind::RZ:
            return rz_noisy ? p1 : 0.0;
        case GateKind::X:
        case GateKind::SX:
        case GateKind::H:
            return p1;
        case GateKind::CX:
        case GateKind::CP:
        case GateKind::CH:
            return p2;
        case GateKind::CCP:
            break;
    }
    throw std::invalid_argument("no depolarizing rate defined for " + std::string(name(gate.kind)));
}

PauliError PauliError::from_index(std::uint32_t index, std::uint8_t arity) {
    const std::uint32_t limit = 1u << (2 * arity);
    if (arity < 1 || arity > 2 || index == 0 || index >= limit) {
        throw std::invalid_argument("pauli index out of range");
    }
    PauliError e;
    e.arity = arity;
    for (std::uint8_t k = 0; k < arity; ++k) {
        e.paulis[k] = static_cast<Pauli>((index >> (2 * k)) & 3);
    }
    return e;
}

double emission_probability(double p, std::size_t k) {
    const double d = std::ldexp(1.0, static_cast<int>(2 * k));
    return p * (d - 1) / d;
}

namespace {

// Decision for one noisy gate given its uniform draw; 0 means no error.
std::uint32_t pauli_index_for(double u, double emit, std::size_t k) {
    if (!(u < emit)) {
        return 0;
    }
    const std::uint32_t choices = (1u << (2 * k)) - 1;
    auto idx = static_cast<std::uint32_t>(u / emit * choices);
    return std::min(idx, choices - 1) + 1;
}

void require_basis(const Circuit &circuit) {
    if (!is_basis_circuit(circuit)) {
        throw std::invalid_argument("noisy simulation needs a basis-decomposed circuit");
    }
}

}  // namespace

std::optional<PauliError> maybe_sample_error(const Gate &gate, const NoiseModel &model, Rng &rng) {
    if (!is_basis(gate.kind)) {
        throw std::invalid_argument("errors are sampled for basis gates only, got " + std::string(name(gate.kind)));
    }
    const double p = model.rate_for(gate);
    if (p <= 0.0) {
        return std::nullopt;
    }
    const std::size_t k = gate.size();
    const std::uint32_t idx = pauli_index_for(uniform01(rng), emission_probability(p, k), k);
    if (idx == 0) {
        return std::nullopt;
    }
    return PauliError::from_index(idx, static_cast<std::uint8_t>(k));
}

std::uint64_t run_trajectory(const Circuit &circuit, const Statevector &init, const NoiseModel &model, Rng &rng) {
    require_basis(circuit);
    if (circuit.width() != init.width()) {
        throw std::invalid_argument("circuit and state widths differ");
    }
    model.validate();
    Statevector state = init;
    for (const Gate &g : circuit.gates()) {
        state.apply(g);
        if (auto err = maybe_sample_error(g, model, rng)) {
            apply_error(state, g, *err);
        }
    }
    const std::vector<double> probs = state.probabilities();
    return sample_index(probs, uniform01(rng));
}

namespace {

// One sampled error: gate position in the upper bits, Pauli index in the low byte.
using ErrorEvent = std::uint64_t;
using Pattern = std::vector<ErrorEvent>;

struct PatternGroup {
    Pattern pattern;
    std::vector<double> draws;  // measurement variates of the shots sharing this pattern
};

void tally(const SplitState &state, const std::vector<double> &draws, CountsMap &counts) {
    const auto weights = state.weights();
    std::vector<double> cdf(weights.size());
    double acc = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        acc += weights[k].second;
        cdf[k] = acc;
    }
    if (!(acc > 0)) {
        throw std::runtime_error("trajectory collapsed to a zero-norm state");
    }
    for (double u : draws) {
        const double target = u * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
        std::size_t k = it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
        ++counts[weights[k].first];
    }
}

// Runs groups[begin, end), whose patterns are non-empty and sorted by first
// error position, sharing one error-free cursor that only moves forward.
void run_groups(
    const SplitProgram &program, const SplitState &start, const std::vector<PatternGroup> &groups,
    std::size_t begin, std::size_t end, CountsMap &counts) {
    const auto &gates = program.circuit().gates();
    SplitState cursor = start;
    std::size_t applied = 0;
    for (std::size_t gi = begin; gi < end; ++gi) {
        const Pattern &pattern = groups[gi].pattern;
        const std::size_t first = static_cast<std::size_t>(pattern.front() >> 8);
        cursor.run(program, applied, first + 1);
        applied = first + 1;
        SplitState state = cursor;
        std::size_t pos = first + 1;
        for (std::size_t e = 0; e < pattern.size(); ++e) {
            const std::size_t at = static_cast<std::size_t>(pattern[e] >> 8);
            state.run(program, pos, at + 1);
            pos = at + 1;
            const Gate &g = gates[at];
            apply_error(state, g, PauliError::from_index(pattern[e] & 0xFF, static_cast<std::uint8_t>(g.size())));
        }
        state.run(program, pos, gates.size());
        tally(state, groups[gi].draws, counts);
    }
}

}  // namespace

CountsMap simulate_shots(
    const Circuit &circuit, const Statevector &init, const NoiseModel &model, std::uint64_t shots,
    std::uint64_t seed, unsigned workers) {
    require_basis(circuit);
    if (circuit.width() != init.width()) {
        throw std::invalid_argument("circuit and state widths differ");
    }
    if (shots == 0) {
        throw std::invalid_argument("shots must be at least 1");
    }
    model.validate();

    const auto &gates = circuit.gates();
    struct NoisyGate {
        std::uint32_t index;
        double emit;
        std::size_t arity;
    };
    std::vector<NoisyGate> noisy;
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const double p = model.rate_for(gates[i]);
        if (p > 0.0) {
            noisy.push_back({static_cast<std::uint32_t>(i), emission_probability(p, gates[i].size()), gates[i].size()});
        }
    }

    // Same draw sequence as run_trajectory: one variate per noisy gate, then the measurement.
    std::map<Pattern, std::vector<double>> grouped;
    Pattern pattern;
    for (std::uint64_t s = 0; s < shots; ++s) {
        Rng rng = make_rng(seed, s);
        pattern.clear();
        for (const NoisyGate &ng : noisy) {
            const std::uint32_t idx = pauli_index_for(uniform01(rng), ng.emit, ng.arity);
            if (idx) {
                pattern.push_back((static_cast<ErrorEvent>(ng.index) << 8) | idx);
            }
        }
        grouped[pattern].push_back(uniform01(rng));
    }

    const SplitProgram program(circuit, SplitState::classical_qubits(circuit));
    const SplitState start(init, program.classical_mask());
    CountsMap counts;

    std::vector<PatternGroup> groups;
    groups.reserve(grouped.size());
    for (auto &[p, draws] : grouped) {
        if (p.empty()) {
            SplitState clean = start;
            clean.run(program, 0, gates.size());
            tally(clean, draws, counts);
        } else {
            groups.push_back({p, std::move(draws)});
        }
    }
    if (groups.empty()) {
        return counts;
    }

    const std::size_t chunks = std::clamp<std::size_t>(workers, 1, groups.size());
    if (chunks == 1) {
        run_groups(program, start, groups, 0, groups.size(), counts);
        return counts;
    }
    std::vector<CountsMap> partial(chunks);
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> failures(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t begin = groups.size() * c / chunks;
        const std::size_t end = groups.size() * (c + 1) / chunks;
        threads.emplace_back([&, c, begin, end] {
            try {
                run_groups(program, start, groups, begin, end, partial[c]);
            } catch (...) {
                failures[c] = std::current_exception();
            }
        });
    }
    for (auto &t : threads) {
        t.join();
    }
    for (std::size_t c = 0; c < chunks; ++c) {
        if (failures[c]) {
            std::rethrow_exception(failures[c]);
        }
        for (const auto &[k, v] : partial[c]) {
            counts[k] += v;
        }
    }
    return counts;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("distributions differ in size");
    }
    double total = 0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        total += std::abs(p[k] - q[k]);
    }
    return total / 2;
}

std::vector<double> empirical_distribution(const CountsMap &counts, std::uint32_t width) {
    std::vector<double> dist(std::size_t{1} << width, 0.0);
    std::uint64_t total = 0;
    for (const auto &[k, v] : counts) {
        if (k >= dist.size()) {
            throw std::out_of_range("outcome exceeds register width");
        }
        total += v;
    }
    if (total == 0) {
        return dist;
    }
    for (const auto &[k, v] : counts) {
        dist[k] = static_cast<double>(v) / static_cast<double>(total);
    }
    return dist;
}

}  // namespace qfarith
