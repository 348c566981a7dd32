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

// Fourier-basis arithmetic circuits.
//
// Register layout: qubit 0 of every register is its least significant bit.
// Registers are packed from qubit 0 upward in the order they are listed:
//
//   adder       x[0, n)  y[n, n + m)                 m = n or n + 1
//   multiplier  x[0, n)  y[n, n + m)  z[n + m, 2(n + m))
//
// The (inverse) transform omits the terminal swap layer, so in the Fourier
// domain the qubit at register position j carries the phase of output bit
// (w - 1 - j). Adders undo that ordering themselves; only a bare transform
// looks bit-reversed.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "qfarith/circuit.hpp"
#include "qfarith/qinteger.hpp"
#include "qfarith/statevector.hpp"

namespace qfarith {

/// Approximation depth of the Fourier transform. Depth d keeps the
/// controlled rotations R_2..R_d, so each qubit carries at most d - 1 of
/// them. Full keeps everything.
class Depth {
  public:
    static Depth full() { return Depth(); }
    /// Throws std::invalid_argument for d < 1.
    static Depth limited(int d);
    /// "full" or a positive integer.
    static Depth parse(std::string_view text);
    /// Alternate labeling in which label p keeps p rotations per qubit
    /// (internal depth p + 1); "full" stays full.
    static Depth from_table_label(std::string_view text);

    bool is_full() const { return !d_; }
    int value() const { return d_.value(); }
    /// Effective rotation limit for a register of `width` qubits.
    std::uint32_t effective(std::uint32_t width) const;
    std::string label() const;

    bool operator==(const Depth &) const = default;
    auto operator<=>(const Depth &other) const {
        // full sorts after every finite depth
        int a = d_.value_or(1 << 30);
        int b = other.d_.value_or(1 << 30);
        return a <=> b;
    }

  private:
    Depth() = default;
    explicit Depth(int d) : d_(d) {}
    std::optional<int> d_;
};

enum class OpKind { Add, Multiply };

/// Operand widths and register sizing for one arithmetic operation.
struct ArithOp {
    OpKind kind = OpKind::Add;
    std::uint32_t n = 1;   // x width
    std::uint32_t m = 1;   // y width (Add: n or n + 1 by `modular`)
    bool modular = true;   // Add only

    static ArithOp add(std::uint32_t n, bool modular);
    static ArithOp multiply(std::uint32_t n, std::uint32_t m);

    /// Width of the operand register y as supplied by the caller (Add: n).
    std::uint32_t y_operand_width() const;
    /// Width of the register holding y inside the circuit (Add non-modular: n + 1).
    std::uint32_t y_register_width() const;
    /// Product register width (Multiply only; 0 otherwise).
    std::uint32_t z_width() const;
    std::uint32_t total_width() const;

    QubitRange x_range() const;
    QubitRange y_range() const;
    /// Multiply only.
    QubitRange z_range() const;
};

// --- transform and adder building blocks over explicit qubit lists ---

/// Appends the (approximate) transform on `reg` (LSB first). With `control`
/// every gate gains that control (H -> CH, CP -> CCP).
void append_qft(Circuit &c, std::span<const Qubit> reg, Depth depth, std::optional<Qubit> control = {});
void append_iqft(Circuit &c, std::span<const Qubit> reg, Depth depth, std::optional<Qubit> control = {});
/// Fourier-domain addition of `x` into `target`; target.size() is x.size() or x.size() + 1.
void append_add_step(
    Circuit &c, std::span<const Qubit> x, std::span<const Qubit> target, std::optional<Qubit> control = {});
/// Transform, addition step, inverse transform on `target`.
void append_qfa(
    Circuit &c, std::span<const Qubit> x, std::span<const Qubit> target, Depth depth,
    std::optional<Qubit> control = {});

// --- whole-circuit builders in the standard layout ---

/// Transform on qubits [0, width). Throws for width 0.
Circuit build_qft(std::uint32_t width, Depth depth);
/// Gate-by-gate reverse of build_qft with negated angles.
Circuit build_iqft(std::uint32_t width, Depth depth);
/// Addition step on x[0, n) and target[n, n + m); m must be n or n + 1.
Circuit build_add_step(std::uint32_t n, std::uint32_t m);
/// |x>|y> -> |x>|(x + y) mod 2^m> with m = n (modular) or n + 1.
Circuit build_qfa(std::uint32_t n, bool modular, Depth depth);
/// Controlled adder on x[0, n), y[n, n + m); the control qubit must lie outside
/// both registers. Width is max(n + m, control + 1).
Circuit build_cqfa(std::uint32_t n, std::uint32_t m, Qubit control, Depth depth);
/// |x>|y>|0> -> |x>|y>|x * y> with z of n + m qubits.
Circuit build_qfm(std::uint32_t n, std::uint32_t m, Depth depth);
/// Adder or multiplier for `op` in the standard layout.
Circuit build_arith(const ArithOp &op, Depth depth);

/// Number of CP gates (pre-decomposition) in a transform of `width` qubits at `depth`.
std::uint64_t rotation_count(std::uint32_t width, Depth depth);

// --- state preparation and classical expectations ---

/// Writes `q` into `range` of `state`. The register must currently be |0>
/// and unentangled from the rest, i.e. every nonzero amplitude has zeros in
/// `range`. Result is the tensor product.
Statevector encode_qinteger(const QInteger &q, Statevector state, QubitRange range);

/// Noise-free initial state of an operation: x and y encoded, everything else |0>.
Statevector prepare_operands(const ArithOp &op, const QInteger &x, const QInteger &y);

/// Full-register basis indices that the noise-free operation can produce.
std::set<std::uint64_t> expected_outputs(const ArithOp &op, const QInteger &x, const QInteger &y);

/// Per-register decimal values of a full-register index, e.g. "3|0" or "1|3|3".
std::string format_outcome(const ArithOp &op, std::uint64_t index);

}  // namespace qfarith
