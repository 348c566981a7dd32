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

#include <chrono>
#include <thread>

#include "qfarith/arith.hpp"
#include "qfarith/noise.hpp"
#include "test_util.hpp"

using namespace qfarith;
using namespace qfarith::testing;

namespace {

CountsMap sum_of_trajectories(
    const Circuit &c, const Statevector &init, const NoiseModel &m, std::uint64_t shots, std::uint64_t seed) {
    CountsMap counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        Rng rng = make_rng(seed, s);
        ++counts[run_trajectory(c, init, m, rng)];
    }
    return counts;
}

}  // namespace

TEST(PauliError, DecodesTwoBitsPerQubit) {
    EXPECT_EQ(PauliError::from_index(1, 1).paulis[0], Pauli::X);
    EXPECT_EQ(PauliError::from_index(3, 1).paulis[0], Pauli::Z);
    const PauliError e = PauliError::from_index(6, 2);
    EXPECT_EQ(e.paulis[0], Pauli::Y);
    EXPECT_EQ(e.paulis[1], Pauli::X);
    const PauliError f = PauliError::from_index(12, 2);
    EXPECT_EQ(f.paulis[0], Pauli::I);
    EXPECT_EQ(f.paulis[1], Pauli::Z);
    EXPECT_THROW(PauliError::from_index(0, 1), std::invalid_argument);
    EXPECT_THROW(PauliError::from_index(4, 1), std::invalid_argument);
    EXPECT_THROW(PauliError::from_index(16, 2), std::invalid_argument);
}

TEST(NoiseModel, RatesPerGate) {
    NoiseModel m{0.01, 0.02, true};
    EXPECT_EQ(m.rate_for(Gate::id(0)), 0.0);
    EXPECT_EQ(m.rate_for(Gate::x(0)), 0.01);
    EXPECT_EQ(m.rate_for(Gate::sx(0)), 0.01);
    EXPECT_EQ(m.rate_for(Gate::rz(0, 1)), 0.01);
    EXPECT_EQ(m.rate_for(Gate::cx(0, 1)), 0.02);
    m.rz_noisy = false;
    EXPECT_EQ(m.rate_for(Gate::rz(0, 1)), 0.0);
    EXPECT_THROW(m.rate_for(Gate::ccp(0, 1, 2, 0.1)), std::invalid_argument);
    EXPECT_THROW((NoiseModel{-0.1, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((NoiseModel{0, 1.5}.validate()), std::invalid_argument);
    EXPECT_DOUBLE_EQ(emission_probability(0.04, 1), 0.03);
    EXPECT_DOUBLE_EQ(emission_probability(0.16, 2), 0.15);
}

TEST(SampleError, ZeroRateDrawsNothing) {
    Rng rng(4);
    Rng copy = rng;
    NoiseModel m{0.0, 0.5};
    EXPECT_FALSE(maybe_sample_error(Gate::x(0), m, rng).has_value());
    EXPECT_EQ(rng, copy);
    maybe_sample_error(Gate::cx(0, 1), m, rng);
    EXPECT_NE(rng, copy);
    EXPECT_THROW(maybe_sample_error(Gate::h(0), m, rng), std::invalid_argument);
}

TEST(SampleError, FullDepolarizingIsUniformOverPaulis) {
    Rng rng(12);
    NoiseModel m{1.0, 1.0};
    const int draws = 64000;
    std::array<int, 4> one{};
    std::array<int, 16> two{};
    for (int i = 0; i < draws; ++i) {
        auto e = maybe_sample_error(Gate::sx(0), m, rng);
        ++one[e ? static_cast<int>(e->paulis[0]) : 0];
        auto f = maybe_sample_error(Gate::cx(0, 1), m, rng);
        ++two[f ? static_cast<int>(f->paulis[0]) | (static_cast<int>(f->paulis[1]) << 2) : 0];
    }
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(one[k] / double(draws), 0.25, 0.01) << k;
    }
    for (int k = 0; k < 16; ++k) {
        EXPECT_NEAR(two[k] / double(draws), 1.0 / 16, 0.005) << k;
    }
}

TEST(Trajectories, GroupedShotsEqualIndividualTrajectories) {
    Rng rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        const Circuit c = random_circuit(4, 40, rng, true);
        const Statevector init = random_state(4, rng);
        const NoiseModel m{0.05, 0.08};
        const CountsMap expected = sum_of_trajectories(c, init, m, 400, 1000 + trial);
        EXPECT_EQ(simulate_shots(c, init, m, 400, 1000 + trial), expected);
        EXPECT_EQ(simulate_shots(c, init, m, 400, 1000 + trial, 3), expected);
    }
}

TEST(Trajectories, GroupedShotsEqualIndividualOnArithmetic) {
    const ArithOp op = ArithOp::add(3, true);
    const Circuit c = decompose_to_basis(build_arith(op, Depth::limited(2)));
    const Statevector init = prepare_operands(op, QInteger::uniform(3, {1, 6}), QInteger::uniform(3, {0, 5}));
    for (const NoiseModel &m : {NoiseModel{0.02, 0.0}, NoiseModel{0.0, 0.03}, NoiseModel{0.01, 0.01, false}}) {
        const CountsMap expected = sum_of_trajectories(c, init, m, 500, 77);
        EXPECT_EQ(simulate_shots(c, init, m, 500, 77), expected);
        EXPECT_EQ(simulate_shots(c, init, m, 500, 77, 4), expected);
    }
}

TEST(Trajectories, NoiselessShotsFollowTheIdealDistribution) {
    const ArithOp op = ArithOp::multiply(2, 2);
    const Circuit c = decompose_to_basis(build_arith(op, Depth::full()));
    const Statevector init = prepare_operands(op, QInteger::uniform(2, {1, 2}), QInteger::basis(2, 3));
    const CountsMap counts = simulate_shots(c, init, NoiseModel::none(), 4000, 5);
    ASSERT_EQ(counts.size(), 2u);
    EXPECT_NEAR(static_cast<double>(counts.at(1 | (3 << 2) | (3 << 4))), 2000, 150);
    EXPECT_NEAR(static_cast<double>(counts.at(2 | (3 << 2) | (6 << 4))), 2000, 150);
}

TEST(Trajectories, RequireBasisCircuitAndMatchingWidth) {
    Circuit c(2);
    c.append(Gate::h(0));
    EXPECT_THROW(simulate_shots(c, Statevector(2), NoiseModel::none(), 10, 1), std::invalid_argument);
    Circuit b(2);
    b.append(Gate::x(0));
    EXPECT_THROW(simulate_shots(b, Statevector(3), NoiseModel::none(), 10, 1), std::invalid_argument);
    EXPECT_THROW(simulate_shots(b, Statevector(2), NoiseModel::none(), 0, 1), std::invalid_argument);
}

TEST(Trajectories, NoiselessRzOptionSuppressesErrors) {
    Circuit c(1);
    for (int i = 0; i < 10; ++i) {
        c.append(Gate::rz(0, 0.3));
    }
    const CountsMap counts = simulate_shots(c, Statevector(1), NoiseModel{1.0, 0.0, false}, 100, 3);
    EXPECT_EQ(counts, (CountsMap{{0, 100}}));
}

TEST(DensityOracle, HadamardUnderFullDepolarizingIsUniform) {
    Circuit c(1);
    c.append(Gate::h(0));
    const auto d = density_matrix_oracle(c, Statevector(1), NoiseModel{1.0, 0.0});
    EXPECT_NEAR(d[0], 0.5, 1e-12);
    EXPECT_NEAR(d[1], 0.5, 1e-12);
}

TEST(DensityOracle, BitFlipProbabilityOfDepolarizedX) {
    // After X on |0>: (1 - p)|1><1| + p I / 2, so P(0) = p / 2.
    for (double p : {0.0, 0.1, 0.37, 1.0}) {
        Circuit c(1);
        c.append(Gate::x(0));
        const auto d = density_matrix_oracle(c, Statevector(1), NoiseModel{p, 0.0});
        EXPECT_NEAR(d[0], p / 2, 1e-12);
    }
}

TEST(DensityOracle, TwoQubitChannelMixesBothQubits) {
    Circuit c(3);
    c.append(Gate::cx(0, 2));
    const auto d = density_matrix_oracle(c, Statevector(3), NoiseModel{0.0, 1.0});
    for (std::uint64_t i = 0; i < 8; ++i) {
        EXPECT_NEAR(d[i], (i & 0b010) ? 0.0 : 0.25, 1e-12) << i;
    }
    EXPECT_THROW(density_matrix_oracle(Circuit(7), Statevector(7), NoiseModel::none()), std::invalid_argument);
}

TEST(DensityOracle, AgreesWithTrajectoryAverage) {
    Rng rng(404);
    for (int trial = 0; trial < 3; ++trial) {
        const Circuit c = random_circuit(3, 30, rng, true);
        const Statevector init = random_state(3, rng);
        const NoiseModel m{0.05, 0.05};
        const auto exact = density_matrix_oracle(c, init, m);
        const auto sampled = empirical_distribution(simulate_shots(c, init, m, 20000, 9 + trial), 3);
        EXPECT_LT(total_variation(exact, sampled), 0.03);
    }
}

TEST(Distributions, TotalVariationAndEmpirical) {
    const std::vector<double> p{0.5, 0.5, 0, 0};
    const std::vector<double> q{0.25, 0.25, 0.25, 0.25};
    EXPECT_DOUBLE_EQ(total_variation(p, q), 0.5);
    EXPECT_THROW(total_variation(p, std::vector<double>{1.0}), std::invalid_argument);
    const auto e = empirical_distribution(CountsMap{{1, 3}, {2, 1}}, 2);
    EXPECT_EQ(e, (std::vector<double>{0, 0.75, 0.25, 0}));
    EXPECT_THROW(empirical_distribution(CountsMap{{4, 1}}, 2), std::out_of_range);
}

// Throughput budget: trajectory-gate applications per millisecond of wall time
// on the 16-qubit modular adder (n = 8) at the lowest nonzero 2q rate of the
// default sweep grid. Best of three runs.
TEST(Throughput, SixteenQubitAdderShots) {
    const ArithOp op = ArithOp::add(8, true);
    const Circuit c = decompose_to_basis(build_arith(op, Depth::full()));
    ASSERT_EQ(c.width(), 16u);
    const Statevector init = prepare_operands(op, QInteger::uniform(8, {3, 77}), QInteger::uniform(8, {5, 200}));
    const std::uint64_t shots = 1024;
    const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    double best = 0;
    for (int rep = 0; rep < 3; ++rep) {
        const auto t0 = std::chrono::steady_clock::now();
        simulate_shots(c, init, NoiseModel{0.0, 0.005}, shots, 50 + rep, workers);
        const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        best = std::max(best, static_cast<double>(shots * c.size()) / ms);
    }
    RecordProperty("gate_apps_per_ms", std::to_string(best));
    EXPECT_GE(best, 1e4);
}
