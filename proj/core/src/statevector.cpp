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

#include "qfarith/statevector.hpp"

#include <algorithm>
#include <stdexcept>

#include "qfarith/kernels.hpp"

namespace qfarith {

Statevector::Statevector(std::uint32_t width) : width_(width) {
    if (width > 30) {
        throw std::invalid_argument("dense statevector limited to 30 qubits");
    }
    amps_.assign(std::size_t{1} << width, amp_t{});
    amps_[0] = 1.0;
}

Statevector Statevector::basis(std::uint32_t width, std::uint64_t index) {
    Statevector s(width);
    if (index >= s.dimension()) {
        throw std::out_of_range("basis index out of range");
    }
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

Statevector Statevector::from_amplitudes(std::uint32_t width, std::vector<amp_t> amplitudes) {
    if (width > 30 || amplitudes.size() != (std::size_t{1} << width)) {
        throw std::invalid_argument("amplitude count must be 2^width");
    }
    Statevector s(0);
    s.width_ = width;
    s.amps_ = std::move(amplitudes);
    return s;
}

double Statevector::norm_squared() const {
    double total = 0;
    for (const amp_t &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

std::vector<double> Statevector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t k = 0; k < amps_.size(); ++k) {
        p[k] = std::norm(amps_[k]);
    }
    return p;
}

void Statevector::apply(const Gate &gate) {
    validate_gate(gate, width_);
    const auto &q = gate.qubits;
    std::span<amp_t> a(amps_);
    switch (gate.kind) {
        case GateKind::Id:
            return;
        case GateKind::X:
            kernels::apply_x(a, q[0]);
            return;
        case GateKind::SX:
            kernels::apply_sx(a, q[0]);
            return;
        case GateKind::RZ:
            kernels::apply_rz(a, q[0], gate.angle);
            return;
        case GateKind::H:
            kernels::apply_h(a, q[0]);
            return;
        case GateKind::CX:
            kernels::apply_cx(a, q[0], q[1]);
            return;
        case GateKind::CP:
            kernels::apply_cp(a, q[0], q[1], std::polar(1.0, gate.angle));
            return;
        case GateKind::CCP:
            kernels::apply_ccp(a, q[0], q[1], q[2], std::polar(1.0, gate.angle));
            return;
        case GateKind::CH:
            kernels::apply_ch(a, q[0], q[1]);
            return;
    }
    throw std::invalid_argument("unknown gate kind");
}

void Statevector::apply_pauli(Qubit q, Pauli p) {
    if (q >= width_) {
        throw std::out_of_range("pauli qubit out of range");
    }
    std::span<amp_t> a(amps_);
    switch (p) {
        case Pauli::I:
            return;
        case Pauli::X:
            kernels::apply_x(a, q);
            return;
        case Pauli::Y:
            kernels::apply_y(a, q);
            return;
        case Pauli::Z:
            kernels::apply_z(a, q);
            return;
    }
}

Statevector run_noiseless(const Circuit &circuit, Statevector init) {
    if (circuit.width() != init.width()) {
        throw std::invalid_argument(
            "circuit width " + std::to_string(circuit.width()) + " does not match state width " +
            std::to_string(init.width()));
    }
    for (const Gate &g : circuit.gates()) {
        init.apply(g);
    }
    return init;
}

std::uint64_t sample_index(std::span<const double> weights, double u) {
    double total = 0;
    for (double w : weights) {
        total += w;
    }
    if (!(total > 0)) {
        throw std::invalid_argument("cannot sample from a zero-norm state");
    }
    const double target = u * total;
    double acc = 0;
    std::uint64_t last_nonzero = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] <= 0) {
            continue;
        }
        acc += weights[k];
        last_nonzero = k;
        if (target < acc) {
            return k;
        }
    }
    return last_nonzero;
}

CountsMap sample_counts(const Statevector &state, std::uint64_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be at least 1");
    }
    std::vector<double> probs = state.probabilities();
    // Prefix sums once, then binary search per shot.
    std::vector<double> cdf(probs.size());
    double acc = 0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += probs[k];
        cdf[k] = acc;
    }
    if (!(acc > 0)) {
        throw std::invalid_argument("cannot sample from a zero-norm state");
    }
    CountsMap counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        double target = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
        std::size_t k = it == cdf.end() ? cdf.size() - 1 : static_cast<std::size_t>(it - cdf.begin());
        // upper_bound can land on a zero-probability tail only if target == acc.
        while (k > 0 && probs[k] == 0) {
            --k;
        }
        ++counts[k];
    }
    return counts;
}

std::string to_bitstring(std::uint64_t index, std::uint32_t width) {
    std::string s(width, '0');
    for (std::uint32_t q = 0; q < width; ++q) {
        if ((index >> q) & 1) {
            s[width - 1 - q] = '1';
        }
    }
    return s;
}

}  // namespace qfarith
