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

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "qfarith/circuit.hpp"
#include "qfarith/rng.hpp"
#include "qfarith/statevector.hpp"
#include "qfarith/unitary.hpp"

namespace qfarith::testing {

inline Statevector random_state(std::uint32_t width, Rng &rng) {
    std::vector<amp_t> a(std::size_t{1} << width);
    double norm = 0;
    for (auto &v : a) {
        v = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
        norm += std::norm(v);
    }
    for (auto &v : a) {
        v /= std::sqrt(norm);
    }
    return Statevector::from_amplitudes(width, std::move(a));
}

inline double random_angle(Rng &rng) {
    return (2 * uniform01(rng) - 1) * std::numbers::pi;
}

/// Distinct qubits q[0..k) drawn from [0, width).
inline std::array<Qubit, 3> distinct_qubits(std::uint32_t width, std::size_t k, Rng &rng) {
    std::array<Qubit, 3> q{};
    for (std::size_t i = 0; i < k; ++i) {
        bool fresh;
        do {
            q[i] = static_cast<Qubit>(uniform_below(rng, width));
            fresh = true;
            for (std::size_t j = 0; j < i; ++j) {
                fresh = fresh && q[j] != q[i];
            }
        } while (!fresh);
    }
    return q;
}

/// Random gate of any kind that fits `width`.
inline Gate random_gate(std::uint32_t width, Rng &rng, bool basis_only) {
    static const GateKind all[] = {GateKind::Id, GateKind::X,  GateKind::SX,  GateKind::RZ, GateKind::H,
                                   GateKind::CX, GateKind::CP, GateKind::CCP, GateKind::CH};
    static const GateKind basis[] = {GateKind::Id, GateKind::X, GateKind::SX, GateKind::RZ, GateKind::CX};
    while (true) {
        const GateKind k = basis_only ? basis[uniform_below(rng, 5)] : all[uniform_below(rng, 9)];
        if (arity(k) > width) {
            continue;
        }
        const auto q = distinct_qubits(width, arity(k), rng);
        const double a = random_angle(rng);
        switch (k) {
            case GateKind::Id:
                return Gate::id(q[0]);
            case GateKind::X:
                return Gate::x(q[0]);
            case GateKind::SX:
                return Gate::sx(q[0]);
            case GateKind::RZ:
                return Gate::rz(q[0], a);
            case GateKind::H:
                return Gate::h(q[0]);
            case GateKind::CX:
                return Gate::cx(q[0], q[1]);
            case GateKind::CP:
                return Gate::cp(q[0], q[1], a);
            case GateKind::CCP:
                return Gate::ccp(q[0], q[1], q[2], a);
            case GateKind::CH:
                return Gate::ch(q[0], q[1]);
        }
    }
}

inline Circuit random_circuit(std::uint32_t width, std::size_t gates, Rng &rng, bool basis_only) {
    Circuit c(width);
    for (std::size_t i = 0; i < gates; ++i) {
        c.append(random_gate(width, rng, basis_only));
    }
    return c;
}

/// Dense matrix-vector reference for applying a circuit.
inline Eigen::VectorXcd reference_run(const Circuit &c, const Statevector &init) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(init.dimension()));
    for (std::size_t i = 0; i < init.dimension(); ++i) {
        v(static_cast<Eigen::Index>(i)) = init[i];
    }
    for (const Gate &g : c.gates()) {
        v = embed(gate_matrix(g), g.targets(), c.width()) * v;
    }
    return v;
}

inline double max_deviation(const Statevector &s, const Eigen::VectorXcd &v) {
    double d = 0;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        d = std::max(d, std::abs(s[i] - v(static_cast<Eigen::Index>(i))));
    }
    return d;
}

inline double max_deviation(const Statevector &a, const Statevector &b) {
    double d = 0;
    for (std::size_t i = 0; i < a.dimension(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

}  // namespace qfarith::testing
