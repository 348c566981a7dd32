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

#include "qfarith/arith.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfarith {

namespace {

/// Angle of R_l: 2*pi / 2^l.
double rotation_angle(std::uint32_t l) {
    return 2 * std::numbers::pi / std::ldexp(1.0, static_cast<int>(l));
}

void emit(Circuit &c, const Gate &g, std::optional<Qubit> control) {
    c.append(control ? controlled(g, *control) : g);
}

std::vector<Qubit> range_qubits(QubitRange r) {
    return r.qubits();
}

}  // namespace

// ---------------------------------------------------------------- Depth

Depth Depth::limited(int d) {
    if (d < 1) {
        throw std::invalid_argument("depth must be at least 1, got " + std::to_string(d));
    }
    return Depth(d);
}

Depth Depth::parse(std::string_view text) {
    if (text == "full" || text == "Full" || text == "FULL") {
        return full();
    }
    int d = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), d);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("depth must be 'full' or a positive integer, got '" + std::string(text) + "'");
    }
    return limited(d);
}

Depth Depth::from_table_label(std::string_view text) {
    Depth d = parse(text);
    return d.is_full() ? d : limited(d.value() + 1);
}

std::uint32_t Depth::effective(std::uint32_t width) const {
    if (!d_) {
        return width;
    }
    return std::min<std::uint32_t>(static_cast<std::uint32_t>(*d_), width);
}

std::string Depth::label() const {
    return d_ ? std::to_string(*d_) : std::string("full");
}

// ---------------------------------------------------------------- ArithOp

ArithOp ArithOp::add(std::uint32_t n, bool modular) {
    if (n < 1) {
        throw std::invalid_argument("operand width must be at least 1");
    }
    return ArithOp{OpKind::Add, n, modular ? n : n + 1, modular};
}

ArithOp ArithOp::multiply(std::uint32_t n, std::uint32_t m) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("operand widths must be at least 1");
    }
    return ArithOp{OpKind::Multiply, n, m, false};
}

std::uint32_t ArithOp::y_operand_width() const {
    return kind == OpKind::Add ? n : m;
}

std::uint32_t ArithOp::y_register_width() const {
    return m;
}

std::uint32_t ArithOp::z_width() const {
    return kind == OpKind::Multiply ? n + m : 0;
}

std::uint32_t ArithOp::total_width() const {
    return n + m + z_width();
}

QubitRange ArithOp::x_range() const {
    return {0, n};
}

QubitRange ArithOp::y_range() const {
    return {n, m};
}

QubitRange ArithOp::z_range() const {
    if (kind != OpKind::Multiply) {
        throw std::logic_error("only multipliers have a product register");
    }
    return {n + m, n + m};
}

// ---------------------------------------------------------------- blocks

void append_qft(Circuit &c, std::span<const Qubit> reg, Depth depth, std::optional<Qubit> control) {
    const auto w = static_cast<std::uint32_t>(reg.size());
    const std::uint32_t d = depth.effective(w);
    // Most significant qubit first; each picks up R_2.. from the qubits below it.
    for (std::uint32_t j = w; j-- > 0;) {
        emit(c, Gate::h(reg[j]), control);
        const std::uint32_t top = std::min(j + 1, d);
        for (std::uint32_t l = 2; l <= top; ++l) {
            emit(c, Gate::cp(reg[j - l + 1], reg[j], rotation_angle(l)), control);
        }
    }
}

void append_iqft(Circuit &c, std::span<const Qubit> reg, Depth depth, std::optional<Qubit> control) {
    Circuit forward(c.width());
    append_qft(forward, reg, depth, control);
    const auto &gates = forward.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        c.append(inverse(*it));
    }
}

void append_add_step(
    Circuit &c, std::span<const Qubit> x, std::span<const Qubit> target, std::optional<Qubit> control) {
    const auto n = static_cast<std::uint32_t>(x.size());
    const auto m = static_cast<std::uint32_t>(target.size());
    if (n < 1 || (m != n && m != n + 1)) {
        throw std::invalid_argument(
            "addition step needs target width n or n + 1 (n=" + std::to_string(n) + ", m=" + std::to_string(m) +
            ")");
    }
    // Target bit q (1-based) picks up x_k / 2^(q - k + 1) for every k <= q.
    for (std::uint32_t q = m; q >= 1; --q) {
        for (std::uint32_t k = std::min(n, q); k >= 1; --k) {
            emit(c, Gate::cp(x[k - 1], target[q - 1], rotation_angle(q - k + 1)), control);
        }
    }
}

void append_qfa(
    Circuit &c, std::span<const Qubit> x, std::span<const Qubit> target, Depth depth, std::optional<Qubit> control) {
    append_qft(c, target, depth, control);
    append_add_step(c, x, target, control);
    append_iqft(c, target, depth, control);
}

// ---------------------------------------------------------------- builders

Circuit build_qft(std::uint32_t width, Depth depth) {
    if (width < 1) {
        throw std::invalid_argument("transform width must be at least 1");
    }
    Circuit c(width);
    c.label("y", {0, width});
    append_qft(c, range_qubits({0, width}), depth);
    return c;
}

Circuit build_iqft(std::uint32_t width, Depth depth) {
    if (width < 1) {
        throw std::invalid_argument("transform width must be at least 1");
    }
    Circuit c(width);
    c.label("y", {0, width});
    append_iqft(c, range_qubits({0, width}), depth);
    return c;
}

Circuit build_add_step(std::uint32_t n, std::uint32_t m) {
    if (n < 1 || (m != n && m != n + 1)) {
        throw std::invalid_argument("addition step needs m = n or m = n + 1");
    }
    Circuit c(n + m);
    c.label("x", {0, n});
    c.label("y", {n, m});
    append_add_step(c, range_qubits({0, n}), range_qubits({n, m}));
    return c;
}

Circuit build_qfa(std::uint32_t n, bool modular, Depth depth) {
    ArithOp op = ArithOp::add(n, modular);
    return build_arith(op, depth);
}

Circuit build_cqfa(std::uint32_t n, std::uint32_t m, Qubit control, Depth depth) {
    if (n < 1 || (m != n && m != n + 1)) {
        throw std::invalid_argument("controlled adder needs m = n or m = n + 1");
    }
    if (control < n + m) {
        throw std::invalid_argument(
            "control qubit " + std::to_string(control) + " overlaps the x/y registers [0, " + std::to_string(n + m) +
            ")");
    }
    Circuit c(std::max(n + m, control + 1));
    c.label("x", {0, n});
    c.label("y", {n, m});
    c.label("c", {control, 1});
    append_qfa(c, range_qubits({0, n}), range_qubits({n, m}), depth, control);
    return c;
}

Circuit build_qfm(std::uint32_t n, std::uint32_t m, Depth depth) {
    return build_arith(ArithOp::multiply(n, m), depth);
}

Circuit build_arith(const ArithOp &op, Depth depth) {
    Circuit c(op.total_width());
    c.label("x", op.x_range());
    c.label("y", op.y_range());
    const auto x = range_qubits(op.x_range());
    const auto y = range_qubits(op.y_range());
    if (op.kind == OpKind::Add) {
        append_qfa(c, x, y, depth);
        return c;
    }
    c.label("z", op.z_range());
    const auto z = range_qubits(op.z_range());
    // Step i adds x_i * 2^i * y into the (m + 1)-qubit window of z starting at bit i.
    for (std::uint32_t i = 0; i < op.n; ++i) {
        const std::uint32_t window = std::min<std::uint32_t>(op.m + 1, op.z_width() - i);
        std::span<const Qubit> target(z.data() + i, window);
        append_qfa(c, y, target, depth, x[i]);
    }
    return c;
}

std::uint64_t rotation_count(std::uint32_t width, Depth depth) {
    const std::uint32_t d = depth.effective(width);
    std::uint64_t total = 0;
    for (std::uint32_t j = 0; j < width; ++j) {
        total += std::min(j, d - 1);
    }
    return total;
}

// ---------------------------------------------------------------- states

Statevector encode_qinteger(const QInteger &q, Statevector state, QubitRange range) {
    if (range.size != q.width()) {
        throw std::invalid_argument(
            "register of " + std::to_string(range.size) + " qubits cannot hold a " + std::to_string(q.width()) +
            "-bit qinteger");
    }
    if (range.first + range.size > state.width()) {
        throw std::out_of_range("register exceeds state width");
    }
    const std::uint64_t mask = ((std::uint64_t{1} << range.size) - 1) << range.first;
    auto amps = state.amplitudes();
    std::vector<amp_t> out(amps.size());
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        if (amps[i] == amp_t{}) {
            continue;
        }
        if (i & mask) {
            throw std::invalid_argument("target register is not in |0>");
        }
        for (const auto &t : q.terms()) {
            out[i | (t.value << range.first)] += amps[i] * t.amplitude;
        }
    }
    return Statevector::from_amplitudes(state.width(), std::move(out));
}

Statevector prepare_operands(const ArithOp &op, const QInteger &x, const QInteger &y) {
    if (x.width() != op.n) {
        throw std::invalid_argument(
            "x operand has width " + std::to_string(x.width()) + ", expected " + std::to_string(op.n));
    }
    if (y.width() != op.y_operand_width() && y.width() != op.y_register_width()) {
        throw std::invalid_argument(
            "y operand has width " + std::to_string(y.width()) + ", expected " +
            std::to_string(op.y_operand_width()));
    }
    Statevector s(op.total_width());
    s = encode_qinteger(x, std::move(s), op.x_range());
    s = encode_qinteger(y.widened(op.y_register_width()), std::move(s), op.y_range());
    return s;
}

std::set<std::uint64_t> expected_outputs(const ArithOp &op, const QInteger &x, const QInteger &y) {
    std::set<std::uint64_t> out;
    for (const auto &xt : x.terms()) {
        for (const auto &yt : y.terms()) {
            if (op.kind == OpKind::Add) {
                const std::uint64_t sum = (xt.value + yt.value) & ((std::uint64_t{1} << op.m) - 1);
                out.insert(xt.value | (sum << op.n));
            } else {
                const std::uint64_t product = xt.value * yt.value;
                out.insert(xt.value | (yt.value << op.n) | (product << (op.n + op.m)));
            }
        }
    }
    return out;
}

std::string format_outcome(const ArithOp &op, std::uint64_t index) {
    auto field = [&](QubitRange r) { return (index >> r.first) & ((std::uint64_t{1} << r.size) - 1); };
    std::string s = std::to_string(field(op.x_range())) + "|" + std::to_string(field(op.y_range()));
    if (op.kind == OpKind::Multiply) {
        s += "|" + std::to_string(field(op.z_range()));
    }
    return s;
}

}  // namespace qfarith
