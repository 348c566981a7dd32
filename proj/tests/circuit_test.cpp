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

#include <sstream>

#include "qfarith/circuit.hpp"
#include "qfarith/unitary.hpp"
#include "test_util.hpp"

using namespace qfarith;
using qfarith::testing::random_circuit;

namespace {

const amp_t I1{0, 1};
const double kPi = std::numbers::pi;

// Hand-written local matrices; index bit j is gate.qubits[j].
Matrix expected_local(const Gate &g) {
    const double r = 1 / std::sqrt(2.0);
    Matrix m;
    switch (g.kind) {
        case GateKind::Id:
            m = Matrix::Identity(2, 2);
            break;
        case GateKind::X:
            m.resize(2, 2);
            m << 0, 1, 1, 0;
            break;
        case GateKind::SX:
            m.resize(2, 2);
            m << amp_t(0.5, 0.5), amp_t(0.5, -0.5), amp_t(0.5, -0.5), amp_t(0.5, 0.5);
            break;
        case GateKind::RZ:
            m = Matrix::Zero(2, 2);
            m(0, 0) = std::exp(-I1 * g.angle / 2.0);
            m(1, 1) = std::exp(I1 * g.angle / 2.0);
            break;
        case GateKind::H:
            m.resize(2, 2);
            m << r, r, r, -r;
            break;
        case GateKind::CX:
            m = Matrix::Zero(4, 4);
            m(0, 0) = m(2, 2) = 1;
            m(1, 3) = m(3, 1) = 1;
            break;
        case GateKind::CP:
            m = Matrix::Identity(4, 4);
            m(3, 3) = std::exp(I1 * g.angle);
            break;
        case GateKind::CCP:
            m = Matrix::Identity(8, 8);
            m(7, 7) = std::exp(I1 * g.angle);
            break;
        case GateKind::CH:
            m = Matrix::Identity(4, 4);
            m(1, 1) = r;
            m(1, 3) = r;
            m(3, 1) = r;
            m(3, 3) = -r;
            break;
    }
    return m;
}

}  // namespace

TEST(Gate, ArityAndNames) {
    EXPECT_EQ(arity(GateKind::RZ), 1u);
    EXPECT_EQ(arity(GateKind::CH), 2u);
    EXPECT_EQ(arity(GateKind::CCP), 3u);
    for (GateKind k : {GateKind::Id, GateKind::X, GateKind::SX, GateKind::RZ, GateKind::H, GateKind::CX,
                       GateKind::CP, GateKind::CCP, GateKind::CH}) {
        EXPECT_EQ(parse_gate_kind(name(k)), k);
    }
    EXPECT_TRUE(is_basis(GateKind::SX));
    EXPECT_FALSE(is_basis(GateKind::H));
    EXPECT_THROW(parse_gate_kind("U3"), std::invalid_argument);
}

TEST(Gate, ValidateRejectsBadQubits) {
    EXPECT_THROW(validate_gate(Gate::cx(1, 1), 3), std::invalid_argument);
    EXPECT_THROW(validate_gate(Gate::x(3), 3), std::out_of_range);
    EXPECT_NO_THROW(validate_gate(Gate::ccp(0, 1, 2, 0.3), 3));
    Circuit c(2);
    EXPECT_ANY_THROW(c.append(Gate::ccp(0, 1, 2, 0.1)));
}

TEST(Gate, ControlledAndInverse) {
    EXPECT_EQ(controlled(Gate::h(1), 4), Gate::ch(4, 1));
    EXPECT_EQ(controlled(Gate::cp(0, 1, 0.5), 3), Gate::ccp(3, 0, 1, 0.5));
    EXPECT_THROW(controlled(Gate::ccp(0, 1, 2, 0.5), 3), std::invalid_argument);
    EXPECT_EQ(inverse(Gate::cp(0, 1, 0.5)).angle, -0.5);
    EXPECT_EQ(inverse(Gate::h(2)), Gate::h(2));
}

TEST(Unitary, GateMatricesMatchHandWrittenForms) {
    for (const Gate &g : {Gate::id(0), Gate::x(0), Gate::sx(0), Gate::rz(0, 0.7), Gate::h(0), Gate::cx(0, 1),
                          Gate::cp(0, 1, 1.1), Gate::ccp(0, 1, 2, -0.4), Gate::ch(0, 1)}) {
        EXPECT_LT((gate_matrix(g) - expected_local(g)).cwiseAbs().maxCoeff(), 1e-12) << name(g.kind);
    }
}

TEST(Unitary, EmbedPlacesQubitsByIndexBit) {
    // CX with control 2, target 0 on three qubits: |100> <-> |101>.
    Gate g = Gate::cx(2, 0);
    Matrix u = embed(gate_matrix(g), g.targets(), 3);
    for (int col = 0; col < 8; ++col) {
        int row = (col & 4) ? col ^ 1 : col;
        EXPECT_EQ(u(row, col), amp_t(1)) << col;
    }
}

TEST(Unitary, EqualUpToPhase) {
    Matrix a = gate_matrix(Gate::rz(0, 0.8));
    Matrix b = a * std::exp(I1 * 0.3);
    EXPECT_TRUE(equal_up_to_phase(a, b));
    EXPECT_FALSE(equal_up_to_phase(a, gate_matrix(Gate::rz(0, 0.9))));
}

TEST(Decompose, EveryCompositeGateIsEquivalent) {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = qfarith::testing::random_angle(rng);
        for (const Gate &g : {Gate::h(1), Gate::cp(2, 0, a), Gate::cp(0, 2, a), Gate::ccp(1, 2, 0, a),
                              Gate::ccp(2, 0, 1, a), Gate::ch(0, 2), Gate::ch(2, 1), Gate::sx(0), Gate::rz(1, a)}) {
            Circuit c(3);
            c.append(g);
            Circuit d = decompose_to_basis(c);
            ASSERT_TRUE(is_basis_circuit(d));
            EXPECT_TRUE(equal_up_to_phase(circuit_unitary(c), circuit_unitary(d))) << name(g.kind);
        }
    }
}

TEST(Decompose, TwoQubitCostsOfCompositeGates) {
    auto two_q = [](const Gate &g) {
        Circuit c(3);
        c.append(g);
        return gate_counts(decompose_to_basis(c)).two_qubit;
    };
    EXPECT_EQ(two_q(Gate::cp(0, 1, 0.3)), 2u);
    EXPECT_EQ(two_q(Gate::ch(0, 1)), 2u);
    EXPECT_EQ(two_q(Gate::ccp(0, 1, 2, 0.3)), 8u);
    EXPECT_EQ(two_q(Gate::h(0)), 0u);
}

TEST(Decompose, RandomCircuitsPreserveUnitary) {
    Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        Circuit c = random_circuit(4, 25, rng, false);
        Circuit d = decompose_to_basis(c);
        EXPECT_TRUE(is_basis_circuit(d));
        EXPECT_TRUE(equal_up_to_phase(circuit_unitary(c), circuit_unitary(d)));
    }
}

TEST(Decompose, MergeRotationsFoldsAdjacentRz) {
    Circuit c(2);
    c.append(Gate::rz(0, 0.25));
    c.append(Gate::rz(1, 1.0));
    c.append(Gate::rz(0, 0.5));
    c.append(Gate::id(1));
    c.append(Gate::rz(1, -1.0));
    c.append(Gate::cx(0, 1));
    c.append(Gate::rz(0, 2 * kPi));
    Circuit m = merge_rotations(c);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m.gates()[0].kind, GateKind::RZ);
    EXPECT_NEAR(m.gates()[0].angle, 0.75, 1e-15);
    EXPECT_EQ(m.gates()[1], Gate::cx(0, 1));
    EXPECT_TRUE(equal_up_to_phase(circuit_unitary(c), circuit_unitary(m)));
}

TEST(Decompose, MergeDoesNotCrossTwoQubitGates) {
    Circuit c(2);
    c.append(Gate::rz(1, 0.3));
    c.append(Gate::cx(0, 1));
    c.append(Gate::rz(1, 0.3));
    EXPECT_EQ(merge_rotations(c).size(), 3u);
}

TEST(GateCounts, CountsBasisGatesAndSkipsId) {
    Circuit c(2);
    c.append(Gate::x(0));
    c.append(Gate::id(1));
    c.append(Gate::sx(1));
    c.append(Gate::cx(1, 0));
    c.append(Gate::rz(0, 0.1));
    EXPECT_EQ(gate_counts(c), (GateCounts{3, 1}));
    c.append(Gate::h(0));
    EXPECT_THROW(gate_counts(c), std::invalid_argument);
}

TEST(CircuitText, RoundTripIsExact) {
    Rng rng(3);
    Circuit c = random_circuit(5, 40, rng, false);
    Circuit back = from_text(to_text(c));
    EXPECT_EQ(back, c);
}

TEST(CircuitText, Format) {
    Circuit c(2);
    c.append(Gate::h(0));
    c.append(Gate::cp(0, 1, 0.5));
    EXPECT_EQ(to_text(c), "width=2\nH 0\nCP 0,1;0.5\n");
}

TEST(CircuitText, ErrorsCarryLineNumbers) {
    try {
        from_text("width=2\nH 0\nCX 0,5\n");
        FAIL();
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
    }
    EXPECT_THROW(from_text("H 0\n"), std::invalid_argument);
    EXPECT_THROW(from_text("width=2\nFOO 0\n"), std::invalid_argument);
    EXPECT_THROW(from_text("width=2\nRZ 0\n"), std::invalid_argument);
}

TEST(Circuit, LabelsMustBeDisjoint) {
    Circuit c(6);
    c.label("x", {0, 3});
    EXPECT_THROW(c.label("y", {2, 2}), std::invalid_argument);
    EXPECT_THROW(c.label("z", {5, 2}), std::out_of_range);
    c.label("y", {3, 3});
    EXPECT_EQ(c.label("y").first, 3u);
}
