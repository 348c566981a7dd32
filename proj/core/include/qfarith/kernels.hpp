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

// In-place gate kernels over a dense amplitude block. Bit q of an index is
// qubit q. Every kernel visits only the amplitudes its gate can change.
//
// Complex products are written out by hand: std::complex operator* goes
// through the C99 Annex G NaN/inf recovery path, which is several times
// slower and buys nothing for unit-modulus gate entries.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace qfarith::kernels {

using amp_t = std::complex<double>;

inline amp_t mul(amp_t a, amp_t b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

/// Spreads the bits of `i` around a zero at bit position `b`.
inline std::size_t insert_zero(std::size_t i, unsigned b) {
    const std::size_t low = (std::size_t{1} << b) - 1;
    return ((i & ~low) << 1) | (i & low);
}

/// Calls body(i0, i1) for every index pair differing only in bit `q` (i0 has it clear).
template <typename Body>
inline void for_each_pair(std::size_t n, unsigned q, Body body) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t base = 0; base < n; base += 2 * stride) {
        for (std::size_t k = base; k < base + stride; ++k) {
            body(k, k + stride);
        }
    }
}

inline void apply_matrix(std::span<amp_t> a, unsigned q, amp_t m00, amp_t m01, amp_t m10, amp_t m11) {
    for_each_pair(a.size(), q, [&](std::size_t i0, std::size_t i1) {
        amp_t v0 = a[i0];
        amp_t v1 = a[i1];
        a[i0] = mul(m00, v0) + mul(m01, v1);
        a[i1] = mul(m10, v0) + mul(m11, v1);
    });
}

inline void apply_x(std::span<amp_t> a, unsigned q) {
    for_each_pair(a.size(), q, [&](std::size_t i0, std::size_t i1) { std::swap(a[i0], a[i1]); });
}

/// Pauli Y = [[0, -i], [i, 0]].
inline void apply_y(std::span<amp_t> a, unsigned q) {
    for_each_pair(a.size(), q, [&](std::size_t i0, std::size_t i1) {
        amp_t v0 = a[i0];
        amp_t v1 = a[i1];
        a[i0] = {v1.imag(), -v1.real()};
        a[i1] = {-v0.imag(), v0.real()};
    });
}

inline void apply_z(std::span<amp_t> a, unsigned q) {
    for_each_pair(a.size(), q, [&](std::size_t, std::size_t i1) { a[i1] = -a[i1]; });
}

/// diag(p0, p1) on qubit q.
inline void apply_diag(std::span<amp_t> a, unsigned q, amp_t p0, amp_t p1) {
    for_each_pair(a.size(), q, [&](std::size_t i0, std::size_t i1) {
        a[i0] = mul(p0, a[i0]);
        a[i1] = mul(p1, a[i1]);
    });
}

/// diag(1, p1) on qubit q.
inline void apply_phase(std::span<amp_t> a, unsigned q, amp_t p1) {
    for_each_pair(a.size(), q, [&](std::size_t, std::size_t i1) { a[i1] = mul(p1, a[i1]); });
}

inline void apply_rz(std::span<amp_t> a, unsigned q, double theta) {
    apply_diag(a, q, std::polar(1.0, -theta / 2), std::polar(1.0, theta / 2));
}

inline void apply_sx(std::span<amp_t> a, unsigned q) {
    apply_matrix(a, q, {0.5, 0.5}, {0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5});
}

inline void apply_h(std::span<amp_t> a, unsigned q) {
    const double s = 1 / std::sqrt(2.0);
    for_each_pair(a.size(), q, [&](std::size_t i0, std::size_t i1) {
        amp_t v0 = a[i0];
        amp_t v1 = a[i1];
        a[i0] = (v0 + v1) * s;
        a[i1] = (v0 - v1) * s;
    });
}

inline void apply_cx(std::span<amp_t> a, unsigned c, unsigned t) {
    const unsigned lo = std::min(c, t);
    const unsigned hi = std::max(c, t);
    const std::size_t cbit = std::size_t{1} << c;
    const std::size_t tbit = std::size_t{1} << t;
    const std::size_t quarter = a.size() >> 2;
    for (std::size_t i = 0; i < quarter; ++i) {
        std::size_t idx = insert_zero(insert_zero(i, lo), hi) | cbit;
        std::swap(a[idx], a[idx | tbit]);
    }
}

inline void apply_cp(std::span<amp_t> a, unsigned c, unsigned t, amp_t phase) {
    const unsigned lo = std::min(c, t);
    const unsigned hi = std::max(c, t);
    const std::size_t both = (std::size_t{1} << c) | (std::size_t{1} << t);
    const std::size_t quarter = a.size() >> 2;
    for (std::size_t i = 0; i < quarter; ++i) {
        std::size_t idx = insert_zero(insert_zero(i, lo), hi) | both;
        a[idx] = mul(phase, a[idx]);
    }
}

/// Multiplies by `phase` every amplitude whose bits c and t differ. Same
/// products as CX(c, t) diag_t(1, phase) CX(c, t).
inline void apply_parity_phase(std::span<amp_t> a, unsigned c, unsigned t, amp_t phase) {
    const unsigned lo = std::min(c, t);
    const unsigned hi = std::max(c, t);
    const std::size_t cbit = std::size_t{1} << c;
    const std::size_t tbit = std::size_t{1} << t;
    const std::size_t quarter = a.size() >> 2;
    for (std::size_t i = 0; i < quarter; ++i) {
        const std::size_t idx = insert_zero(insert_zero(i, lo), hi);
        a[idx | cbit] = mul(phase, a[idx | cbit]);
        a[idx | tbit] = mul(phase, a[idx | tbit]);
    }
}

inline void apply_ccp(std::span<amp_t> a, unsigned q0, unsigned q1, unsigned q2, amp_t phase) {
    unsigned b[3] = {q0, q1, q2};
    std::sort(b, b + 3);
    const std::size_t all = (std::size_t{1} << q0) | (std::size_t{1} << q1) | (std::size_t{1} << q2);
    const std::size_t eighth = a.size() >> 3;
    for (std::size_t i = 0; i < eighth; ++i) {
        std::size_t idx = insert_zero(insert_zero(insert_zero(i, b[0]), b[1]), b[2]) | all;
        a[idx] = mul(phase, a[idx]);
    }
}

inline void apply_ch(std::span<amp_t> a, unsigned c, unsigned t) {
    const double s = 1 / std::sqrt(2.0);
    const unsigned lo = std::min(c, t);
    const unsigned hi = std::max(c, t);
    const std::size_t cbit = std::size_t{1} << c;
    const std::size_t tbit = std::size_t{1} << t;
    const std::size_t quarter = a.size() >> 2;
    for (std::size_t i = 0; i < quarter; ++i) {
        std::size_t i0 = insert_zero(insert_zero(i, lo), hi) | cbit;
        std::size_t i1 = i0 | tbit;
        amp_t v0 = a[i0];
        amp_t v1 = a[i1];
        a[i0] = (v0 + v1) * s;
        a[i1] = (v0 - v1) * s;
    }
}

inline void scale(std::span<amp_t> a, amp_t factor) {
    for (amp_t &v : a) {
        v = mul(factor, v);
    }
}

}  // namespace qfarith::kernels
