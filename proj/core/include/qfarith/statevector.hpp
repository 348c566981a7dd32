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

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qfarith/circuit.hpp"
#include "qfarith/rng.hpp"

namespace qfarith {

using amp_t = std::complex<double>;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Basis index -> shots observed. Bit q of the key is qubit q.
using CountsMap = std::map<std::uint64_t, std::uint64_t>;

/// Dense 2^width amplitude array.
class Statevector {
  public:
    /// |0...0> on `width` qubits.
    explicit Statevector(std::uint32_t width);
    static Statevector basis(std::uint32_t width, std::uint64_t index);
    /// Takes ownership of `amplitudes`, whose length must be 2^width. No normalization check.
    static Statevector from_amplitudes(std::uint32_t width, std::vector<amp_t> amplitudes);

    std::uint32_t width() const { return width_; }
    std::size_t dimension() const { return amps_.size(); }
    std::span<const amp_t> amplitudes() const { return amps_; }
    std::span<amp_t> amplitudes() { return amps_; }
    amp_t operator[](std::uint64_t index) const { return amps_[index]; }

    double norm_squared() const;
    std::vector<double> probabilities() const;

    /// Applies any gate kind. Throws std::out_of_range on bad indices.
    void apply(const Gate &gate);
    void apply_pauli(Qubit q, Pauli p);

    bool operator==(const Statevector &) const = default;

  private:
    std::uint32_t width_;
    std::vector<amp_t> amps_;
};

/// Applies the circuit's gates in order to `init`.
Statevector run_noiseless(const Circuit &circuit, Statevector init);

/// Index sampled by inverse CDF at uniform `u` in [0, 1). The cumulative sum
/// runs over `weights` in index order and is rescaled by its total.
std::uint64_t sample_index(std::span<const double> weights, double u);

/// `shots` i.i.d. samples from |amplitude|^2. Throws on zero norm or zero shots.
CountsMap sample_counts(const Statevector &state, std::uint64_t shots, Rng &rng);

/// `width`-character binary string, most significant qubit first.
std::string to_bitstring(std::uint64_t index, std::uint32_t width);

}  // namespace qfarith
