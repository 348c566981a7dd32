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

#include "qfarith/split_state.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <stdexcept>

#include "qfarith/kernels.hpp"

namespace qfarith {

namespace {

// A run costs about three passes over a block (four with parity phases); each
// factor it replaces costs half a pass.
constexpr std::size_t kMinRunFactors = 6;

}  // namespace

SplitProgram::SplitProgram(const Circuit &basis_circuit, std::uint64_t classical_mask)
    : circuit_(basis_circuit), cmask_(classical_mask) {
    phases_.resize(circuit_.size());
    for (std::size_t i = 0; i < circuit_.size(); ++i) {
        const Gate &g = circuit_.gates()[i];
        validate_gate(g, circuit_.width());
        if (g.kind == GateKind::RZ) {
            phases_[i] = {std::polar(1.0, -g.angle / 2), std::polar(1.0, g.angle / 2), std::polar(1.0, g.angle)};
        }
    }
    const auto &gates = circuit_.gates();
    triple_.assign(gates.size(), false);
    for (std::size_t i = 0; i + 2 < gates.size(); ++i) {
        const Gate &a = gates[i];
        const Gate &b = gates[i + 1];
        const Gate &c = gates[i + 2];
        const bool quantum_target = a.kind == GateKind::CX && !((cmask_ >> a.qubits[1]) & 1);
        triple_[i] = quantum_target && c.kind == GateKind::CX && c.qubits == a.qubits && b.kind == GateKind::RZ &&
                     b.qubits[0] == a.qubits[1];
    }

    std::vector<unsigned> local(circuit_.width(), 0);
    unsigned quantum = 0;
    for (Qubit q = 0; q < circuit_.width(); ++q) {
        if (!((cmask_ >> q) & 1)) {
            local[q] = quantum++;
        }
    }
    run_at_.assign(gates.size(), -1);
    for (std::size_t i = 0; i < gates.size();) {
        Run run{static_cast<std::uint32_t>(i), 0, {}, {}};
        bool any_parity = false;
        std::size_t j = i;
        while (j < gates.size()) {
            const Gate &g = gates[j];
            if (triple_[j]) {
                const bool cc = (cmask_ >> g.qubits[0]) & 1;
                any_parity = any_parity || !cc;
                run.factors.push_back({cc ? Factor::ClassicalTriple : Factor::QuantumTriple, g.qubits[0],
                                       g.qubits[1], phases_[j + 1]});
                j += 3;
            } else if (g.kind == GateKind::RZ) {
                const bool cc = (cmask_ >> g.qubits[0]) & 1;
                run.factors.push_back({cc ? Factor::ClassicalRz : Factor::QuantumRz, 0, g.qubits[0], phases_[j]});
                ++j;
            } else {
                break;
            }
        }
        const auto work = static_cast<std::size_t>(std::count_if(
            run.factors.begin(), run.factors.end(), [](const Factor &f) { return f.kind != Factor::ClassicalRz; }));
        if (work <= kMinRunFactors + (any_parity ? 2 : 0)) {
            i = std::max(j, i + 1);
            continue;
        }
        run.end = static_cast<std::uint32_t>(j);
        if (any_parity) {
            run.parity.assign(std::size_t{1} << quantum, amp_t{1.0});
            for (const Factor &f : run.factors) {
                if (f.kind != Factor::QuantumTriple) {
                    continue;
                }
                const std::size_t cb = std::size_t{1} << local[f.control];
                const std::size_t tb = std::size_t{1} << local[f.target];
                for (std::size_t l = 0; l < run.parity.size(); ++l) {
                    if (((l & cb) != 0) != ((l & tb) != 0)) {
                        run.parity[l] = kernels::mul(f.rz.rel, run.parity[l]);
                    }
                }
            }
        }
        run_at_[i] = static_cast<std::int32_t>(runs_.size());
        runs_.push_back(std::move(run));
        i = j;
    }
}

SplitState::SplitState(const Statevector &dense, std::uint64_t classical_mask)
    : width_(dense.width()), cmask_(classical_mask & ((std::uint64_t{1} << dense.width()) - 1)) {
    local_.assign(width_, 0);
    std::vector<Qubit> quantum;
    Qubit max_classical = 0;
    bool any_classical = false;
    for (Qubit q = 0; q < width_; ++q) {
        if (is_classical(q)) {
            max_classical = q;
            any_classical = true;
        } else {
            local_[q] = static_cast<unsigned>(quantum.size());
            quantum.push_back(q);
        }
    }
    classical_below_quantum_ = !any_classical || quantum.empty() || max_classical < quantum.front();
    block_size_ = std::size_t{1} << quantum.size();
    scatter_.resize(block_size_);
    for (std::size_t l = 0; l < block_size_; ++l) {
        std::uint64_t g = 0;
        for (std::size_t j = 0; j < quantum.size(); ++j) {
            g |= static_cast<std::uint64_t>((l >> j) & 1) << quantum[j];
        }
        scatter_[l] = g;
    }

    // Every global index is key | scatter_[l] for exactly one (key, l).
    std::map<std::uint64_t, std::vector<amp_t>> blocks;
    auto amps = dense.amplitudes();
    for (std::uint64_t key = cmask_;; key = (key - 1) & cmask_) {
        std::vector<amp_t> b(block_size_);
        bool nonzero = false;
        for (std::size_t l = 0; l < block_size_; ++l) {
            b[l] = amps[key | scatter_[l]];
            nonzero = nonzero || b[l] != amp_t{};
        }
        if (nonzero) {
            blocks.emplace(key, std::move(b));
        }
        if (key == 0) {
            break;
        }
    }
    for (auto &[key, b] : blocks) {
        keys_.push_back(key);
        phase_.push_back(1.0);
        data_.insert(data_.end(), b.begin(), b.end());
    }
}

std::uint64_t SplitState::classical_qubits(const Circuit &basis_circuit) {
    if (basis_circuit.width() > 63) {
        throw std::invalid_argument("circuit too wide");
    }
    std::uint64_t mask = basis_circuit.width() == 0 ? 0 : (std::uint64_t{1} << basis_circuit.width()) - 1;
    for (const Gate &g : basis_circuit.gates()) {
        if (!is_basis(g.kind)) {
            throw std::invalid_argument("classical_qubits needs a basis-decomposed circuit");
        }
        if (g.kind == GateKind::SX) {
            mask &= ~(std::uint64_t{1} << g.qubits[0]);
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Gate &g : basis_circuit.gates()) {
            if (g.kind != GateKind::CX) {
                continue;
            }
            std::uint64_t cbit = std::uint64_t{1} << g.qubits[0];
            std::uint64_t tbit = std::uint64_t{1} << g.qubits[1];
            if (!(mask & cbit) && (mask & tbit)) {
                mask &= ~tbit;
                changed = true;
            }
        }
    }
    return mask;
}

void SplitState::apply(const Gate &gate) {
    validate_gate(gate, width_);
    const auto &q = gate.qubits;
    switch (gate.kind) {
        case GateKind::Id:
            return;
        case GateKind::X:
            if (is_classical(q[0])) {
                for (auto &key : keys_) {
                    key ^= std::uint64_t{1} << q[0];
                }
            } else {
                for (std::size_t k = 0; k < keys_.size(); ++k) {
                    kernels::apply_x(block(k), local_[q[0]]);
                }
            }
            return;
        case GateKind::SX:
            if (is_classical(q[0])) {
                throw std::logic_error("SX on a classical qubit");
            }
            for (std::size_t k = 0; k < keys_.size(); ++k) {
                kernels::apply_sx(block(k), local_[q[0]]);
            }
            return;
        case GateKind::RZ:
            apply_rz(q[0], std::polar(1.0, -gate.angle / 2), std::polar(1.0, gate.angle / 2),
                     std::polar(1.0, gate.angle));
            return;
        case GateKind::CX: {
            const bool cc = is_classical(q[0]);
            const bool tc = is_classical(q[1]);
            if (cc && tc) {
                for (auto &key : keys_) {
                    if ((key >> q[0]) & 1) {
                        key ^= std::uint64_t{1} << q[1];
                    }
                }
            } else if (cc) {
                for (std::size_t k = 0; k < keys_.size(); ++k) {
                    if ((keys_[k] >> q[0]) & 1) {
                        kernels::apply_x(block(k), local_[q[1]]);
                    }
                }
            } else if (!tc) {
                for (std::size_t k = 0; k < keys_.size(); ++k) {
                    kernels::apply_cx(block(k), local_[q[0]], local_[q[1]]);
                }
            } else {
                throw std::logic_error("CX from a quantum control onto a classical target");
            }
            return;
        }
        default:
            throw std::invalid_argument(
                "SplitState applies basis gates only; got " + std::string(name(gate.kind)));
    }
}

// Blocks never mix, so a phase common to a block only matters for to_dense().
// RZ = p0 * diag(1, rel): p0 goes to the block phase, diag(1, rel) touches half
// the block.
void SplitState::apply_rz(Qubit q, amp_t p0, amp_t p1, amp_t rel) {
    if (is_classical(q)) {
        for (std::size_t k = 0; k < keys_.size(); ++k) {
            phase_[k] = kernels::mul((keys_[k] >> q) & 1 ? p1 : p0, phase_[k]);
        }
        return;
    }
    for (std::size_t k = 0; k < keys_.size(); ++k) {
        phase_[k] = kernels::mul(p0, phase_[k]);
        kernels::apply_phase(block(k), local_[q], rel);
    }
}

// CX(c, t) RZ(t) CX(c, t) with a quantum target.
void SplitState::apply_controlled_rz(Qubit c, Qubit t, amp_t p0, amp_t rel) {
    const unsigned lt = local_[t];
    for (std::size_t k = 0; k < keys_.size(); ++k) {
        phase_[k] = kernels::mul(p0, phase_[k]);
        if (!is_classical(c)) {
            kernels::apply_parity_phase(block(k), local_[c], lt, rel);
        } else if ((keys_[k] >> c) & 1) {
            auto a = block(k);
            kernels::for_each_pair(
                a.size(), lt, [&](std::size_t i0, std::size_t) { a[i0] = kernels::mul(rel, a[i0]); });
        } else {
            kernels::apply_phase(block(k), lt, rel);
        }
    }
}

void SplitState::apply_run(const SplitProgram::Run &run) {
    using Factor = SplitProgram::Factor;
    const std::size_t nq = static_cast<std::size_t>(std::countr_zero(block_size_));
    std::vector<amp_t> d0(nq);
    std::vector<amp_t> d1(nq);
    diag_.resize(block_size_);
    for (std::size_t k = 0; k < keys_.size(); ++k) {
        std::fill(d0.begin(), d0.end(), amp_t{1.0});
        std::fill(d1.begin(), d1.end(), amp_t{1.0});
        amp_t global = phase_[k];
        for (const Factor &f : run.factors) {
            switch (f.kind) {
                case Factor::QuantumRz:
                    global = kernels::mul(f.rz.p0, global);
                    d1[local_[f.target]] = kernels::mul(f.rz.rel, d1[local_[f.target]]);
                    break;
                case Factor::ClassicalRz:
                    global = kernels::mul((keys_[k] >> f.target) & 1 ? f.rz.p1 : f.rz.p0, global);
                    break;
                case Factor::ClassicalTriple: {
                    global = kernels::mul(f.rz.p0, global);
                    amp_t &d = ((keys_[k] >> f.control) & 1 ? d0 : d1)[local_[f.target]];
                    d = kernels::mul(f.rz.rel, d);
                    break;
                }
                case Factor::QuantumTriple:
                    global = kernels::mul(f.rz.p0, global);
                    break;
            }
        }
        phase_[k] = global;
        diag_[0] = 1.0;
        for (std::size_t j = 0, size = 1; j < nq; ++j, size <<= 1) {
            if (d0[j] == 1.0 && d1[j] == 1.0) {
                std::copy_n(diag_.begin(), size, diag_.begin() + static_cast<std::ptrdiff_t>(size));
                continue;
            }
            for (std::size_t i = 0; i < size; ++i) {
                diag_[i + size] = kernels::mul(d1[j], diag_[i]);
                diag_[i] = kernels::mul(d0[j], diag_[i]);
            }
        }
        auto a = block(k);
        if (run.parity.empty()) {
            for (std::size_t l = 0; l < a.size(); ++l) {
                a[l] = kernels::mul(diag_[l], a[l]);
            }
        } else {
            for (std::size_t l = 0; l < a.size(); ++l) {
                a[l] = kernels::mul(kernels::mul(diag_[l], run.parity[l]), a[l]);
            }
        }
    }
}

void SplitState::run(const SplitProgram &program, std::size_t from, std::size_t to) {
    if (program.cmask_ != cmask_ || program.circuit_.width() != width_) {
        throw std::invalid_argument("program was lowered for a different partition");
    }
    const auto &gates = program.circuit_.gates();
    if (from > to || to > gates.size()) {
        throw std::out_of_range("gate range out of bounds");
    }
    for (; from < to; ++from) {
        const Gate &g = gates[from];
        if (const std::int32_t r = program.run_at_[from]; r >= 0 && program.runs_[r].end <= to) {
            apply_run(program.runs_[r]);
            from = program.runs_[r].end - 1;
        } else if (program.triple_[from] && from + 3 <= to) {
            const auto &rz = program.phases_[from + 1];
            apply_controlled_rz(g.qubits[0], g.qubits[1], rz.p0, rz.rel);
            from += 2;
        } else if (g.kind == GateKind::RZ) {
            const auto &rz = program.phases_[from];
            apply_rz(g.qubits[0], rz.p0, rz.p1, rz.rel);
        } else {
            apply(g);
        }
    }
}

void SplitState::apply_pauli(Qubit q, Pauli p) {
    if (q >= width_) {
        throw std::out_of_range("pauli qubit out of range");
    }
    if (p == Pauli::I) {
        return;
    }
    if (!is_classical(q)) {
        for (std::size_t k = 0; k < keys_.size(); ++k) {
            switch (p) {
                case Pauli::X:
                    kernels::apply_x(block(k), local_[q]);
                    break;
                case Pauli::Y:
                    kernels::apply_y(block(k), local_[q]);
                    break;
                case Pauli::Z:
                    kernels::apply_z(block(k), local_[q]);
                    break;
                case Pauli::I:
                    break;
            }
        }
        return;
    }
    const std::uint64_t bit = std::uint64_t{1} << q;
    for (std::size_t k = 0; k < keys_.size(); ++k) {
        const bool set = keys_[k] & bit;
        if (p == Pauli::Z) {
            if (set) {
                phase_[k] = -phase_[k];
            }
            continue;
        }
        if (p == Pauli::Y) {
            // Y|0> = i|1>, Y|1> = -i|0>
            phase_[k] = kernels::mul(set ? amp_t{0, -1} : amp_t{0, 1}, phase_[k]);
        }
        keys_[k] ^= bit;
    }
}

std::vector<std::pair<std::uint64_t, double>> SplitState::weights() const {
    std::vector<std::pair<std::uint64_t, double>> out;
    out.reserve(keys_.size() * block_size_);
    std::vector<std::size_t> order(keys_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return keys_[a] < keys_[b]; });
    if (classical_below_quantum_) {
        for (std::size_t l = 0; l < block_size_; ++l) {
            for (std::size_t k : order) {
                double p = std::norm(data_[k * block_size_ + l]);
                if (p > 0) {
                    out.emplace_back(keys_[k] | scatter_[l], p);
                }
            }
        }
        return out;
    }
    for (std::size_t k : order) {
        for (std::size_t l = 0; l < block_size_; ++l) {
            double p = std::norm(data_[k * block_size_ + l]);
            if (p > 0) {
                out.emplace_back(keys_[k] | scatter_[l], p);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Statevector SplitState::to_dense() const {
    std::vector<amp_t> amps(std::size_t{1} << width_);
    for (std::size_t k = 0; k < keys_.size(); ++k) {
        for (std::size_t l = 0; l < block_size_; ++l) {
            amps[keys_[k] | scatter_[l]] = kernels::mul(phase_[k], data_[k * block_size_ + l]);
        }
    }
    return Statevector::from_amplitudes(width_, std::move(amps));
}

}  // namespace qfarith
