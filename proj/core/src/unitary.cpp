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

#include "qfarith/unitary.hpp"

#include <cmath>
#include <stdexcept>

namespace qfarith {

namespace {

using cd = std::complex<double>;

Matrix hadamard() {
    Matrix m(2, 2);
    double s = 1 / std::sqrt(2.0);
    m << s, s, s, -s;
    return m;
}

}  // namespace

Matrix gate_matrix(const Gate &gate) {
    const cd i(0, 1);
    switch (gate.kind) {
        case GateKind::Id:
            return Matrix::Identity(2, 2);
        case GateKind::X: {
            Matrix m(2, 2);
            m << 0, 1, 1, 0;
            return m;
        }
        case GateKind::SX: {
            Matrix m(2, 2);
            m << cd(0.5, 0.5), cd(0.5, -0.5), cd(0.5, -0.5), cd(0.5, 0.5);
            return m;
        }
        case GateKind::RZ: {
            Matrix m = Matrix::Zero(2, 2);
            m(0, 0) = std::exp(-i * gate.angle / 2.0);
            m(1, 1) = std::exp(i * gate.angle / 2.0);
            return m;
        }
        case GateKind::H:
            return hadamard();
        case GateKind::CX: {
            // index = control + 2 * target
            Matrix m = Matrix::Zero(4, 4);
            m(0, 0) = 1;
            m(2, 2) = 1;
            m(3, 1) = 1;
            m(1, 3) = 1;
            return m;
        }
        case GateKind::CP: {
            Matrix m = Matrix::Identity(4, 4);
            m(3, 3) = std::exp(i * gate.angle);
            return m;
        }
        case GateKind::CCP: {
            Matrix m = Matrix::Identity(8, 8);
            m(7, 7) = std::exp(i * gate.angle);
            return m;
        }
        case GateKind::CH: {
            Matrix m = Matrix::Identity(4, 4);
            Matrix h = hadamard();
            // control set: indices 1 (t=0) and 3 (t=1)
            m(1, 1) = h(0, 0);
            m(1, 3) = h(0, 1);
            m(3, 1) = h(1, 0);
            m(3, 3) = h(1, 1);
            return m;
        }
    }
    throw std::invalid_argument("unknown gate kind");
}

Matrix embed(const Matrix &local, std::span<const Qubit> qubits, std::uint32_t width) {
    const std::size_t dim = std::size_t{1} << width;
    const std::size_t k = qubits.size();
    const std::size_t local_dim = std::size_t{1} << k;
    if (static_cast<std::size_t>(local.rows()) != local_dim) {
        throw std::invalid_argument("embed: local matrix size does not match qubit count");
    }
    std::size_t mask = 0;
    for (Qubit q : qubits) {
        mask |= std::size_t{1} << q;
    }
    Matrix full = Matrix::Zero(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
        std::size_t lc = 0;
        for (std::size_t j = 0; j < k; ++j) {
            lc |= ((col >> qubits[j]) & 1) << j;
        }
        for (std::size_t lr = 0; lr < local_dim; ++lr) {
            cd v = local(lr, lc);
            if (v == cd(0)) {
                continue;
            }
            std::size_t row = col & ~mask;
            for (std::size_t j = 0; j < k; ++j) {
                row |= ((lr >> j) & 1) << qubits[j];
            }
            full(row, col) = v;
        }
    }
    return full;
}

Matrix circuit_unitary(const Circuit &circuit) {
    if (circuit.width() > 10) {
        throw std::invalid_argument("circuit_unitary limited to 10 qubits");
    }
    const std::size_t dim = std::size_t{1} << circuit.width();
    Matrix u = Matrix::Identity(dim, dim);
    for (const Gate &g : circuit.gates()) {
        u = embed(gate_matrix(g), g.targets(), circuit.width()) * u;
    }
    return u;
}

double phase_aligned_distance(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("phase_aligned_distance: shape mismatch");
    }
    cd phase(1, 0);
    bool found = false;
    for (Eigen::Index c = 0; c < a.cols() && !found; ++c) {
        for (Eigen::Index r = 0; r < a.rows(); ++r) {
            if (std::abs(a(r, c)) > 1e-12) {
                if (std::abs(b(r, c)) < 1e-12) {
                    return std::abs(a(r, c));
                }
                cd ratio = a(r, c) / b(r, c);
                phase = ratio / std::abs(ratio);
                found = true;
                break;
            }
        }
    }
    return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace qfarith
