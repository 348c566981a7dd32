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

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qfarith {

using Qubit = std::uint32_t;

enum class GateKind : std::uint8_t { Id, X, SX, RZ, H, CX, CP, CCP, CH };

/// Number of qubits a gate of this kind acts on.
std::size_t arity(GateKind kind);
bool has_angle(GateKind kind);
/// True for the hardware basis {Id, X, SX, RZ, CX}.
bool is_basis(GateKind kind);
std::string_view name(GateKind kind);
/// Inverse of name(); throws std::invalid_argument on unknown text.
GateKind parse_gate_kind(std::string_view text);

/// One gate record. Controls come first in `qubits`, the target last.
struct Gate {
    GateKind kind = GateKind::Id;
    std::array<Qubit, 3> qubits{};
    double angle = 0.0;

    std::size_t size() const { return arity(kind); }
    std::span<const Qubit> targets() const { return {qubits.data(), size()}; }
    Qubit target() const { return qubits[size() - 1]; }

    static Gate id(Qubit q);
    static Gate x(Qubit q);
    static Gate sx(Qubit q);
    static Gate rz(Qubit q, double theta);
    static Gate h(Qubit q);
    static Gate cx(Qubit control, Qubit target);
    static Gate cp(Qubit control, Qubit target, double lambda);
    static Gate ccp(Qubit c0, Qubit c1, Qubit target, double lambda);
    static Gate ch(Qubit control, Qubit target);

    bool operator==(const Gate &other) const;
};

/// Same gate with one extra control: H -> CH, CP -> CCP. Throws for other kinds.
Gate controlled(const Gate &gate, Qubit control);
/// Adjoint gate (negated angle for rotations; SX has no basis adjoint and throws).
Gate inverse(const Gate &gate);

/// Contiguous qubit range [first, first + size).
struct QubitRange {
    Qubit first = 0;
    std::uint32_t size = 0;

    Qubit operator[](std::size_t k) const { return first + static_cast<Qubit>(k); }
    std::vector<Qubit> qubits() const;
    bool overlaps(const QubitRange &other) const;
    bool operator==(const QubitRange &) const = default;
};

class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(std::uint32_t width);

    std::uint32_t width() const { return width_; }
    const std::vector<Gate> &gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }
    const std::map<std::string, QubitRange> &labels() const { return labels_; }

    /// Validates the gate against this circuit's width and appends it.
    /// Throws std::out_of_range on a bad index, std::invalid_argument on duplicates.
    Circuit &append(const Gate &gate);
    Circuit &append(std::span<const Gate> gates);
    /// Appends every gate of `other`, which must not be wider than this circuit.
    Circuit &append(const Circuit &other);

    /// Names a register. Ranges must stay inside the width and be pairwise disjoint.
    Circuit &label(const std::string &name, QubitRange range);
    const QubitRange &label(const std::string &name) const;

    bool operator==(const Circuit &other) const;

  private:
    std::uint32_t width_ = 0;
    std::vector<Gate> gates_;
    std::map<std::string, QubitRange> labels_;
};

/// Throws if the gate is malformed for a circuit of the given width.
void validate_gate(const Gate &gate, std::uint32_t width);

struct GateCounts {
    std::uint64_t one_qubit = 0;
    std::uint64_t two_qubit = 0;

    GateCounts &operator+=(const GateCounts &o) {
        one_qubit += o.one_qubit;
        two_qubit += o.two_qubit;
        return *this;
    }
    friend GateCounts operator+(GateCounts a, const GateCounts &b) { return a += b; }
    bool operator==(const GateCounts &) const = default;
};

/// Tallies a basis-decomposed circuit. Id is not counted. Throws
/// std::invalid_argument if a non-basis gate is present.
GateCounts gate_counts(const Circuit &circuit);

bool is_basis_circuit(const Circuit &circuit);

/// Rewrites every gate into {X, SX, RZ, CX} (Id and zero-angle RZ dropped,
/// adjacent RZ on a qubit merged). Equal to the input up to global phase.
Circuit decompose_to_basis(const Circuit &circuit);

/// Merges runs of RZ on the same qubit and drops Id and trivial RZ.
Circuit merge_rotations(const Circuit &circuit);

/// Line-oriented text form: `width=N` then `KIND q0[,q1[,q2]][;angle]` per gate.
void write_circuit(std::ostream &out, const Circuit &circuit);
std::string to_text(const Circuit &circuit);
/// Throws std::invalid_argument with the offending line number on malformed input.
Circuit read_circuit(std::istream &in);
Circuit from_text(std::string_view text);

}  // namespace qfarith
