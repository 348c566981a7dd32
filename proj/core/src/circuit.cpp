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

#include "qfarith/circuit.hpp"

#include <stdexcept>

namespace qfarith {

namespace {

constexpr std::array<std::string_view, 9> kGateNames = {"Id", "X", "SX", "RZ", "H", "CX", "CP", "CCP", "CH"};

Gate make(GateKind kind, std::initializer_list<Qubit> qubits, double angle = 0.0) {
    Gate g;
    g.kind = kind;
    std::size_t k = 0;
    for (Qubit q : qubits) {
        g.qubits[k++] = q;
    }
    g.angle = angle;
    return g;
}

}  // namespace

std::size_t arity(GateKind kind) {
    switch (kind) {
        case GateKind::Id:
        case GateKind::X:
        case GateKind::SX:
        case GateKind::RZ:
        case GateKind::H:
            return 1;
        case GateKind::CX:
        case GateKind::CP:
        case GateKind::CH:
            return 2;
        case GateKind::CCP:
            return 3;
    }
    throw std::invalid_argument("unknown gate kind");
}

bool has_angle(GateKind kind) {
    return kind == GateKind::RZ || kind == GateKind::CP || kind == GateKind::CCP;
}

bool is_basis(GateKind kind) {
    switch (kind) {
        case GateKind::Id:
        case GateKind::X:
        case GateKind::SX:
        case GateKind::RZ:
        case GateKind::CX:
            return true;
        default:
            return false;
    }
}

std::string_view name(GateKind kind) {
    return kGateNames.at(static_cast<std::size_t>(kind));
}

GateKind parse_gate_kind(std::string_view text) {
    for (std::size_t k = 0; k < kGateNames.size(); ++k) {
        if (kGateNames[k] == text) {
            return static_cast<GateKind>(k);
        }
    }
    throw std::invalid_argument("unknown gate kind '" + std::string(text) + "'");
}

Gate Gate::id(Qubit q) { return make(GateKind::Id, {q}); }
Gate Gate::x(Qubit q) { return make(GateKind::X, {q}); }
Gate Gate::sx(Qubit q) { return make(GateKind::SX, {q}); }
Gate Gate::rz(Qubit q, double theta) { return make(GateKind::RZ, {q}, theta); }
Gate Gate::h(Qubit q) { return make(GateKind::H, {q}); }
Gate Gate::cx(Qubit control, Qubit target) { return make(GateKind::CX, {control, target}); }
Gate Gate::cp(Qubit control, Qubit target, double lambda) {
    return make(GateKind::CP, {control, target}, lambda);
}
Gate Gate::ccp(Qubit c0, Qubit c1, Qubit target, double lambda) {
    return make(GateKind::CCP, {c0, c1, target}, lambda);
}
Gate Gate::ch(Qubit control, Qubit target) { return make(GateKind::CH, {control, target}); }

bool Gate::operator==(const Gate &other) const {
    if (kind != other.kind) {
        return false;
    }
    for (std::size_t k = 0; k < size(); ++k) {
        if (qubits[k] != other.qubits[k]) {
            return false;
        }
    }
    return !has_angle(kind) || angle == other.angle;
}

Gate controlled(const Gate &gate, Qubit control) {
    switch (gate.kind) {
        case GateKind::H:
            return Gate::ch(control, gate.qubits[0]);
        case GateKind::CP:
            return Gate::ccp(control, gate.qubits[0], gate.qubits[1], gate.angle);
        default:
            throw std::invalid_argument("no controlled form for gate " + std::string(name(gate.kind)));
    }
}

Gate inverse(const Gate &gate) {
    switch (gate.kind) {
        case GateKind::SX:
            throw std::invalid_argument("SX has no adjoint in the gate set");
        case GateKind::RZ:
        case GateKind::CP:
        case GateKind::CCP: {
            Gate g = gate;
            g.angle = -gate.angle;
            return g;
        }
        default:
            return gate;
    }
}

std::vector<Qubit> QubitRange::qubits() const {
    std::vector<Qubit> out(size);
    for (std::uint32_t k = 0; k < size; ++k) {
        out[k] = first + k;
    }
    return out;
}

bool QubitRange::overlaps(const QubitRange &other) const {
    if (size == 0 || other.size == 0) {
        return false;
    }
    return first < other.first + other.size && other.first < first + size;
}

void validate_gate(const Gate &gate, std::uint32_t width) {
    std::size_t n = gate.size();
    for (std::size_t a = 0; a < n; ++a) {
        if (gate.qubits[a] >= width) {
            throw std::out_of_range(
                std::string(name(gate.kind)) + " qubit " + std::to_string(gate.qubits[a]) +
                " out of range for width " + std::to_string(width));
        }
        for (std::size_t b = 0; b < a; ++b) {
            if (gate.qubits[a] == gate.qubits[b]) {
                throw std::invalid_argument(
                    std::string(name(gate.kind)) + " uses qubit " + std::to_string(gate.qubits[a]) + " twice");
            }
        }
    }
}

Circuit::Circuit(std::uint32_t width) : width_(width) {
    if (width > 62) {
        throw std::invalid_argument("circuit width " + std::to_string(width) + " exceeds 62 qubits");
    }
}

Circuit &Circuit::append(const Gate &gate) {
    validate_gate(gate, width_);
    gates_.push_back(gate);
    return *this;
}

Circuit &Circuit::append(std::span<const Gate> gates) {
    for (const Gate &g : gates) {
        append(g);
    }
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.width_ > width_) {
        throw std::invalid_argument("appended circuit is wider than the destination");
    }
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
}

Circuit &Circuit::label(const std::string &name, QubitRange range) {
    if (range.first + range.size > width_) {
        throw std::out_of_range("register '" + name + "' exceeds circuit width");
    }
    for (const auto &[other_name, other] : labels_) {
        if (other_name != name && other.overlaps(range)) {
            throw std::invalid_argument("register '" + name + "' overlaps '" + other_name + "'");
        }
    }
    labels_[name] = range;
    return *this;
}

const QubitRange &Circuit::label(const std::string &name) const {
    auto it = labels_.find(name);
    if (it == labels_.end()) {
        throw std::out_of_range("no register named '" + name + "'");
    }
    return it->second;
}

bool Circuit::operator==(const Circuit &other) const {
    return width_ == other.width_ && gates_ == other.gates_ && labels_ == other.labels_;
}

bool is_basis_circuit(const Circuit &circuit) {
    for (const Gate &g : circuit.gates()) {
        if (!is_basis(g.kind)) {
            return false;
        }
    }
    return true;
}

GateCounts gate_counts(const Circuit &circuit) {
    GateCounts counts;
    for (const Gate &g : circuit.gates()) {
        switch (g.kind) {
            case GateKind::Id:
                break;
            case GateKind::X:
            case GateKind::SX:
            case GateKind::RZ:
                ++counts.one_qubit;
                break;
            case GateKind::CX:
                ++counts.two_qubit;
                break;
            default:
                throw std::invalid_argument(
                    "gate_counts needs a basis-decomposed circuit; found " + std::string(name(g.kind)));
        }
    }
    return counts;
}

}  // namespace qfarith
