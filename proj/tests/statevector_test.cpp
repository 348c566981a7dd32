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

#include <gtest/gtest.h>

#include "qfarith/arith.hpp"
#include "qfarith/split_state.hpp"
#include "qfarith/statevector.hpp"
#include "test_util.hpp"

using namespace qfarith;
using namespace qfarith::testing;

TEST(Statevector, BasisAndWidthLimits) {
    Statevector s = Statevector::basis(3, 5);
    EXPECT_EQ(s[5], amp_t(1));
    EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
    EXPECT_THROW(Statevector::basis(3, 8), std::out_of_range);
    EXPECT_THROW(Statevector::from_amplitudes(2, std::vector<amp_t>(3)), std::invalid_argument);
}

TEST(Statevector, KernelsMatchMatrixReference) {
    Rng rng(21);
    for (std::uint32_t width : {1u, 2u, 3u, 5u}) {
        for (int trial = 0; trial < 20; ++trial) {
            const Circuit c = random_circuit(width, 30, rng, false);
            const Statevector init = random_state(width, rng);
            EXPECT_LT(max_deviation(run_noiseless(c, init), reference_run(c, init)), 1e-12);
        }
    }
}

TEST(Statevector, PaulisMatchMatrices) {
    Rng rng(5);
    const Statevector init = random_state(3, rng);
    Matrix y(2, 2);
    y << 0, amp_t(0, -1), amp_t(0, 1), 0;
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    const Qubit q = 1;
    for (auto [p, m] : {std::pair{Pauli::Y, y}, {Pauli::Z, z}}) {
        Statevector s = init;
        s.apply_pauli(q, p);
        Eigen::VectorXcd v(8);
        for (int i = 0; i < 8; ++i) {
            v(i) = init[static_cast<std::uint64_t>(i)];
        }
        const Qubit qs[] = {q};
        v = embed(m, qs, 3) * v;
        EXPECT_LT(max_deviation(s, v), 1e-15);
    }
    Statevector s = init;
    s.apply_pauli(q, Pauli::X);
    Statevector t = init;
    t.apply(Gate::x(q));
    EXPECT_EQ(s, t);
}

TEST(Statevector, HadamardTwiceIsIdentityBitwise) {
    Rng rng(2);
    const Statevector init = random_state(4, rng);
    Statevector s = init;
    s.apply(Gate::h(2));
    s.apply(Gate::h(2));
    EXPECT_LT(max_deviation(s, reference_run(Circuit(4), init)), 1e-15);
}

TEST(Sampling, SampleIndexIsInverseCdf) {
    const std::vector<double> w{0.0, 0.25, 0.0, 0.5, 0.25};
    EXPECT_EQ(sample_index(w, 0.0), 1u);
    EXPECT_EQ(sample_index(w, 0.2499), 1u);
    EXPECT_EQ(sample_index(w, 0.25), 3u);
    EXPECT_EQ(sample_index(w, 0.75), 4u);
    EXPECT_EQ(sample_index(w, 0.999999), 4u);
    // Unnormalized weights are rescaled.
    EXPECT_EQ(sample_index(std::vector<double>{2, 2}, 0.6), 1u);
    EXPECT_THROW(sample_index(std::vector<double>{0, 0}, 0.5), std::invalid_argument);
}

TEST(Sampling, CountsFollowProbabilities) {
    Statevector s(2);
    s.apply(Gate::h(0));
    Rng rng(99);
    const CountsMap counts = sample_counts(s, 20000, rng);
    ASSERT_EQ(counts.size(), 2u);
    EXPECT_NEAR(static_cast<double>(counts.at(0)), 10000, 400);
    EXPECT_NEAR(static_cast<double>(counts.at(1)), 10000, 400);
    Rng again(99);
    EXPECT_EQ(sample_counts(s, 20000, again), counts);
}

TEST(Sampling, Bitstring) {
    EXPECT_EQ(to_bitstring(6, 4), "0110");
    EXPECT_EQ(to_bitstring(1, 1), "1");
}

TEST(SplitState, ClassicalQubitsOfAdder) {
    const ArithOp op = ArithOp::add(4, true);
    const Circuit c = decompose_to_basis(build_arith(op, Depth::full()));
    EXPECT_EQ(SplitState::classical_qubits(c), 0x0Fu);
    const ArithOp mul = ArithOp::multiply(2, 2);
    const Circuit cm = decompose_to_basis(build_arith(mul, Depth::full()));
    EXPECT_EQ(SplitState::classical_qubits(cm), 0x0Fu);
}

TEST(SplitState, ClassicalClosureFollowsCx) {
    Circuit c(3);
    c.append(Gate::sx(0));
    c.append(Gate::cx(0, 1));
    c.append(Gate::cx(2, 1));
    EXPECT_EQ(SplitState::classical_qubits(c), 0b100u);
}

TEST(SplitState, MatchesDense) {
    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        const std::uint32_t width = 5;
        // Random basis circuit that leaves qubits 0 and 3 classical.
        Circuit c(width);
        while (c.size() < 60) {
            Gate g = random_gate(width, rng, true);
            const bool hits_classical_sx = g.kind == GateKind::SX && (g.qubits[0] == 0 || g.qubits[0] == 3);
            const bool quantum_to_classical = g.kind == GateKind::CX && g.qubits[0] != 0 && g.qubits[0] != 3 &&
                                              (g.qubits[1] == 0 || g.qubits[1] == 3);
            if (!hits_classical_sx && !quantum_to_classical) {
                c.append(g);
            }
        }
        Statevector init = random_state(width, rng);
        const std::uint64_t mask = SplitState::classical_qubits(c);
        EXPECT_EQ(mask & 0b01001u, 0b01001u);
        SplitState split(init, mask);
        Statevector dense = init;
        for (const Gate &g : c.gates()) {
            split.apply(g);
            dense.apply(g);
        }
        split.apply_pauli(0, Pauli::Y);
        dense.apply_pauli(0, Pauli::Y);
        split.apply_pauli(2, Pauli::Z);
        dense.apply_pauli(2, Pauli::Z);
        EXPECT_LT(max_deviation(split.to_dense(), dense), 1e-13);
        const auto w = split.weights();
        const auto p = dense.probabilities();
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            nonzero += p[i] > 0;
        }
        ASSERT_EQ(w.size(), nonzero);
        for (std::size_t k = 0; k < w.size(); ++k) {
            EXPECT_NEAR(w[k].second, p[w[k].first], 1e-13);
            if (k > 0) {
                EXPECT_LT(w[k - 1].first, w[k].first);
            }
        }
    }
}

TEST(SplitState, RefusesGatesThatBreakThePartition) {
    SplitState s(Statevector(2), 0b01);
    EXPECT_THROW(s.apply(Gate::sx(0)), std::logic_error);
    EXPECT_THROW(s.apply(Gate::cx(1, 0)), std::logic_error);
    EXPECT_THROW(s.apply(Gate::h(1)), std::invalid_argument);
}

TEST(SplitState, StoresOnlyOccupiedKeys) {
    const ArithOp op = ArithOp::add(8, true);
    const Statevector init = prepare_operands(op, QInteger::uniform(8, {3, 9}), QInteger::basis(8, 1));
    const Circuit c = decompose_to_basis(build_arith(op, Depth::full()));
    SplitState s(init, SplitState::classical_qubits(c));
    EXPECT_EQ(s.block_count(), 2u);
    EXPECT_EQ(s.block_size(), 256u);
}

TEST(SplitProgram, RangedRunsMatchGateByGate) {
    Rng rng(17);
    const ArithOp op = ArithOp::add(5, true);
    const Circuit c = decompose_to_basis(build_arith(op, Depth::limited(3)));
    const Statevector init = prepare_operands(op, QInteger::uniform(5, {3, 17}), QInteger::uniform(5, {1, 30}));
    const SplitProgram program(c, SplitState::classical_qubits(c));
    for (int trial = 0; trial < 20; ++trial) {
        SplitState ranged(init, program.classical_mask());
        SplitState single = ranged;
        std::size_t pos = 0;
        while (pos < c.size()) {
            const std::size_t next = std::min(c.size(), pos + 1 + uniform_below(rng, 12));
            ranged.run(program, pos, next);
            pos = next;
        }
        for (const Gate &g : c.gates()) {
            single.apply(g);
        }
        EXPECT_LT(max_deviation(ranged.to_dense(), single.to_dense()), 1e-12);
    }
    SplitState other(init, 0);
    EXPECT_THROW(other.run(program, 0, 1), std::invalid_argument);
    SplitState same(init, program.classical_mask());
    EXPECT_THROW(same.run(program, 0, c.size() + 1), std::out_of_range);
}
