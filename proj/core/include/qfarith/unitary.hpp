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

// Dense matrix views of gates and circuits. These are built by explicit
// basis enumeration and never touch the statevector kernels, so they serve
// as an independent reference for small widths.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "qfarith/circuit.hpp"

namespace qfarith {

using Matrix = Eigen::MatrixXcd;

/// Local 2^k x 2^k matrix of a gate. Row/column index bit j corresponds to
/// gate.qubits[j] (little-endian in the gate's own qubit list).
Matrix gate_matrix(const Gate &gate);

/// Lifts a local matrix on `qubits` to the full 2^width space.
/// Bit q of a full basis index is qubit q.
Matrix embed(const Matrix &local, std::span<const Qubit> qubits, std::uint32_t width);

/// Product of all gate matrices in circuit order. Refuses widths above 10.
Matrix circuit_unitary(const Circuit &circuit);

/// Largest elementwise deviation after aligning global phase on the first
/// element of `a` whose magnitude exceeds 1e-12.
double phase_aligned_distance(const Matrix &a, const Matrix &b);

inline bool equal_up_to_phase(const Matrix &a, const Matrix &b, double tol = 1e-9) {
    return phase_aligned_distance(a, b) < tol;
}

}  // namespace qfarith
