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

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "qfarith/circuit.hpp"

namespace qfarith {

namespace {

constexpr double kPi = std::numbers::pi;

// Canonical representative of an RZ angle modulo 2*pi (RZ(2*pi) is -I, a global phase).
double wrap_angle(double theta) {
    double r = std::remainder(theta, 2 * kPi);
    if (r <= -kPi) {
        r += 2 * kPi;
    }
    return r;
}

bool is_trivial_rz(double theta) {
    return std::abs(wrap_angle(theta)) < 1e-12;
}

void expand(const Gate &g, std::vector<Gate> &out);

void expand_cp(Qubit c, Qubit t, double lambda, std::vector<Gate> &out) {
    out.push_back(Gate::rz(c, lambda / 2));
    out.push_back(Gate::cx(c, t));
    out.push_back(Gate::rz(t, -lambda / 2));
    out.push_back(Gate::cx(c, t));
    out.push_back(Gate::rz(t, lambda / 2));
}

// RY(theta) == SX . RZ(theta + pi) . SX . RZ(pi) in time order, up to global phase.
void expand_ry(Qubit q, double theta, std::vector<Gate> &out) {
    out.push_back(Gate::sx(q));
    out.push_back(Gate::rz(q, theta + kPi));
    out.push_back(Gate::sx(q));
    out.push_back(Gate::rz(q, kPi));
}

void expand(const Gate &g, std::vector<Gate> &out) {
    const auto &q = g.qubits;
    switch (g.kind) {
        case GateKind::Id:
        case GateKind::X:
        case GateKind::SX:
        case GateKind::RZ:
        case GateKind::CX:
            out.push_back(g);
            return;
        case GateKind::H:
            out.push_back(Gate::rz(q[0], kPi / 2));
            out.push_back(Gate::sx(q[0]));
            out.push_back(Gate::rz(q[0], kPi / 2));
            return;
        case GateKind::CP:
            expand_cp(q[0], q[1], g.angle, out);
            return;
        case GateKind::CCP: {
            double half = g.angle / 2;
            expand_cp(q[1], q[2], half, out);
            out.push_back(Gate::cx(q[0], q[1]));
            expand_cp(q[1], q[2], -half, out);
            out.push_back(Gate::cx(q[0], q[1]));
            expand_cp(q[0], q[2], half, out);
            return;
        }
        case GateKind::CH:
            expand_ry(q[1], -kPi / 4, out);
            expand_cp(q[0], q[1], kPi, out);
            expand_ry(q[1], kPi / 4, out);
            return;
    }
    throw std::invalid_argument("cannot decompose unknown gate kind");
}

}  // namespace

Circuit merge_rotations(const Circuit &circuit) {
    std::vector<Gate> merged;
    merged.reserve(circuit.size());
    // Index into `merged` of the most recent gate touching each qubit.
    std::vector<std::optional<std::size_t>> last(circuit.width());
    for (const Gate &g : circuit.gates()) {
        if (g.kind == GateKind::Id) {
            continue;
        }
        if (g.kind == GateKind::RZ) {
            auto &prev = last[g.qubits[0]];
            if (prev && merged[*prev].kind == GateKind::RZ) {
                merged[*prev].angle += g.angle;
                continue;
            }
        }
        for (Qubit q : g.targets()) {
            last[q] = merged.size();
        }
        merged.push_back(g);
    }

    Circuit out(circuit.width());
    for (const auto &[reg, range] : circuit.labels()) {
        out.label(reg, range);
    }
    for (Gate &g : merged) {
        if (g.kind == GateKind::RZ) {
            if (is_trivial_rz(g.angle)) {
                continue;
            }
            g.angle = wrap_angle(g.angle);
        }
        out.append(g);
    }
    return out;
}

Circuit decompose_to_basis(const Circuit &circuit) {
    Circuit expanded(circuit.width());
    for (const auto &[reg, range] : circuit.labels()) {
        expanded.label(reg, range);
    }
    std::vector<Gate> buffer;
    for (const Gate &g : circuit.gates()) {
        buffer.clear();
        expand(g, buffer);
        expanded.append(buffer);
    }
    return merge_rotations(expanded);
}

}  // namespace qfarith
