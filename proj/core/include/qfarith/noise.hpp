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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qfarith/circuit.hpp"
#include "qfarith/rng.hpp"
#include "qfarith/statevector.hpp"

namespace qfarith {

/// Depolarizing gate noise: rho -> (1 - p) rho + p I / 2^k on the k qubits
/// of each gate, applied right after the gate. p1 follows X, SX and (when
/// rz_noisy) RZ; p2 follows CX. Id is always noiseless.
struct NoiseModel {
    double p1 = 0.0;
    double p2 = 0.0;
    bool rz_noisy = true;

    static NoiseModel none() { return {}; }
    /// Throws std::invalid_argument unless both rates lie in [0, 1].
    void validate() const;
    bool is_noiseless() const { return p1 == 0.0 && p2 == 0.0; }

    /// Depolarizing parameter that applies after `gate`. Throws for non-basis gates.
    double rate_for(const Gate &gate) const;
};

/// A non-identity Pauli on the qubits of the gate it follows.
struct PauliError {
    std::array<Pauli, 2> paulis{Pauli::I, Pauli::I};
    std::uint8_t arity = 1;

    /// Decodes k-qubit Pauli index 1..4^k-1 (two bits per qubit, first qubit lowest).
    static PauliError from_index(std::uint32_t index, std::uint8_t arity);
    bool operator==(const PauliError &) const = default;
};

/// Probability that the trajectory realization emits an error for a k-qubit
/// depolarizing channel with parameter p: p (4^k - 1) / 4^k.
double emission_probability(double p, std::size_t k);

/// Draws at most one uniform variate from `rng` (none when the rate is zero)
/// and returns the sampled Pauli, if any. Throws for non-basis gates.
std::optional<PauliError> maybe_sample_error(const Gate &gate, const NoiseModel &model, Rng &rng);

/// Applies the error to `state` on the gate's qubits.
template <typename State>
void apply_error(State &state, const Gate &gate, const PauliError &err) {
    for (std::size_t k = 0; k < err.arity; ++k) {
        state.apply_pauli(gate.qubits[k], err.paulis[k]);
    }
}

/// One noisy execution of a basis circuit on the dense state, ending in one
/// measurement sample drawn with a final uniform variate from `rng`.
std::uint64_t run_trajectory(const Circuit &circuit, const Statevector &init, const NoiseModel &model, Rng &rng);

/// `shots` independent trajectories; shot s uses make_rng(seed, s). The
/// result equals summing run_trajectory over those generators, but
/// trajectories that sample the same error pattern share one simulation,
/// and operand registers that stay in the computational basis are split out.
/// `workers` > 1 distributes distinct error patterns over threads; the
/// counts do not depend on it.
CountsMap simulate_shots(
    const Circuit &circuit, const Statevector &init, const NoiseModel &model, std::uint64_t shots,
    std::uint64_t seed, unsigned workers = 1);

/// Exact distribution over basis states after evolving the density matrix
/// through the circuit with the depolarizing channel after each noisy gate.
/// Width is limited to 6 qubits.
std::vector<double> density_matrix_oracle(const Circuit &circuit, const Statevector &init, const NoiseModel &model);

/// Total variation distance between two distributions over the same index set.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Counts normalized into a distribution over 2^width outcomes.
std::vector<double> empirical_distribution(const CountsMap &counts, std::uint32_t width);

}  // namespace qfarith
