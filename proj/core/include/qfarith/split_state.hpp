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

#include <cstdint>
#include <utility>
#include <vector>

#include "qfarith/circuit.hpp"
#include "qfarith/statevector.hpp"

namespace qfarith {

/// A basis circuit bound to one classical mask, lowered for SplitState.
///
/// "CX(c, t) RZ(t) CX(c, t)" with a quantum target is diagonal. A maximal run
/// of such triples and RZ gates collapses into one diagonal: a product of
/// per-qubit phases that depend on the block key, times a key-independent
/// table for triples between two quantum qubits. Applying it costs a few passes
/// over a block instead of one pass per gate; amplitudes agree with gate-by-gate
/// application to rounding.
class SplitProgram {
  public:
    SplitProgram(const Circuit &basis_circuit, std::uint64_t classical_mask);

    const Circuit &circuit() const { return circuit_; }
    std::uint64_t classical_mask() const { return cmask_; }

  private:
    friend class SplitState;

    Circuit circuit_;
    std::uint64_t cmask_;
    struct Rz {
        amp_t p0;    // e^{-i theta/2}
        amp_t p1;    // e^{i theta/2}
        amp_t rel;   // e^{i theta}
    };
    struct Factor {
        enum Kind : std::uint8_t { QuantumRz, ClassicalRz, ClassicalTriple, QuantumTriple } kind;
        Qubit control;
        Qubit target;
        Rz rz;
    };
    struct Run {
        std::uint32_t begin;  // gate range [begin, end)
        std::uint32_t end;
        std::vector<Factor> factors;
        std::vector<amp_t> parity;  // product of QuantumTriple phases per block index; empty if none
    };

    std::vector<Rz> phases_;  // RZ gates only
    std::vector<bool> triple_;  // gate i starts a CX RZ CX triple
    std::vector<Run> runs_;
    std::vector<std::int32_t> run_at_;  // run starting at gate i, or -1
};

/// Statevector split along "classical" qubits that no gate ever takes out of
/// the computational basis (they only see diagonal gates, X, and CX with a
/// classical control). The classical bits become sparse keys and each key owns
/// a dense block over the remaining qubits. Blocks never mix, so each carries
/// its global phase separately; probabilities agree with the dense simulator
/// to rounding.
///
/// Operand registers of the adders and multipliers are classical in this sense,
/// so a state with order-j operands stores j (or j*k) blocks instead of 2^n.
class SplitState {
  public:
    /// Partitions `dense` with the qubits in `classical_mask` as keys.
    SplitState(const Statevector &dense, std::uint64_t classical_mask);

    /// Largest qubit set that the basis circuit keeps classical: qubits never
    /// hit by SX, and never a CX target under a non-classical control.
    /// Throws if the circuit is not basis-decomposed.
    static std::uint64_t classical_qubits(const Circuit &basis_circuit);

    std::uint32_t width() const { return width_; }
    std::uint64_t classical_mask() const { return cmask_; }
    std::size_t block_count() const { return keys_.size(); }
    std::size_t block_size() const { return block_size_; }

    /// Basis gates only (Id, X, SX, RZ, CX). SX must not target a classical
    /// qubit; CX must not have a quantum control with a classical target.
    void apply(const Gate &gate);
    void apply_pauli(Qubit q, Pauli p);

    /// Applies gates [from, to) of `program`, whose mask must match this state.
    void run(const SplitProgram &program, std::size_t from, std::size_t to);

    /// (global basis index, probability) for every stored amplitude, ascending by index.
    std::vector<std::pair<std::uint64_t, double>> weights() const;

    Statevector to_dense() const;

  private:
    std::span<amp_t> block(std::size_t k) {
        return {data_.data() + k * block_size_, block_size_};
    }
    std::span<const amp_t> block(std::size_t k) const {
        return {data_.data() + k * block_size_, block_size_};
    }
    bool is_classical(Qubit q) const { return (cmask_ >> q) & 1; }
    void apply_rz(Qubit q, amp_t p0, amp_t p1, amp_t rel);
    void apply_controlled_rz(Qubit c, Qubit t, amp_t p0, amp_t rel);
    void apply_run(const SplitProgram::Run &run);

    std::uint32_t width_;
    std::uint64_t cmask_;
    std::size_t block_size_;
    std::vector<unsigned> local_;        // qubit -> bit position inside a block (quantum qubits only)
    std::vector<std::uint64_t> scatter_; // block index -> global bits
    bool classical_below_quantum_;
    std::vector<std::uint64_t> keys_;
    std::vector<amp_t> phase_;           // global phase of each block, kept out of the amplitudes
    std::vector<amp_t> diag_;            // scratch for apply_run
    std::vector<amp_t> data_;
};

}  // namespace qfarith
