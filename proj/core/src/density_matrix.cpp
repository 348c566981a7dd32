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

#include <stdexcept>

#include "qfarith/noise.hpp"
#include "qfarith/unitary.hpp"

namespace qfarith {

namespace {

Matrix pauli_matrix(Pauli p) {
    Matrix m = Matrix::Zero(2, 2);
    const amp_t i{0, 1};
    switch (p) {
        case Pauli::I:
            m << 1, 0, 0, 1;
            break;
        case Pauli::X:
            m << 0, 1, 1, 0;
            break;
        case Pauli::Y:
            m << 0, -i, i, 0;
            break;
        case Pauli::Z:
            m << 1, 0, 0, -1;
            break;
    }
    return m;
}

// Full-width operators for every non-identity Pauli string on `qubits`.
std::vector<Matrix> pauli_strings(std::span<const Qubit> qubits, std::uint32_t width) {
    const std::size_t k = qubits.size();
    std::vector<Matrix> out;
    for (std::uint32_t idx = 1; idx < (1u << (2 * k)); ++idx) {
        Matrix local = Matrix::Identity(1, 1);
        // Local ordering is little-endian: qubit 0 of the gate is the low bit,
        // so it is the right factor of the Kronecker product.
        for (std::size_t j = 0; j < k; ++j) {
            Matrix p = pauli_matrix(static_cast<Pauli>((idx >> (2 * j)) & 3));
            Matrix next(p.rows() * local.rows(), p.cols() * local.cols());
            for (Eigen::Index r = 0; r < p.rows(); ++r) {
                for (Eigen::Index c = 0; c < p.cols(); ++c) {
                    next.block(r * local.rows(), c * local.cols(), local.rows(), local.cols()) = p(r, c) * local;
                }
            }
            local = std::move(next);
        }
        out.push_back(embed(local, qubits, width));
    }
    return out;
}

}  // namespace

std::vector<double> density_matrix_oracle(const Circuit &circuit, const Statevector &init, const NoiseModel &model) {
    if (circuit.width() != init.width()) {
        throw std::invalid_argument("circuit and state widths differ");
    }
    if (circuit.width() > 6) {
        throw std::invalid_argument("density matrix oracle is limited to 6 qubits");
    }
    model.validate();
    const std::uint32_t width = circuit.width();
    const Eigen::Index dim = Eigen::Index{1} << width;

    Eigen::VectorXcd psi(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        psi(i) = init[static_cast<std::uint64_t>(i)];
    }
    Matrix rho = psi * psi.adjoint();

    for (const Gate &g : circuit.gates()) {
        const auto qubits = g.targets();
        const Matrix u = embed(gate_matrix(g), qubits, width);
        rho = u * rho * u.adjoint();
        const double p = model.rate_for(g);
        if (p <= 0.0) {
            continue;
        }
        const double d = static_cast<double>(1u << (2 * qubits.size()));
        Matrix mixed = Matrix::Zero(dim, dim);
        for (const Matrix &s : pauli_strings(qubits, width)) {
            mixed += s * rho * s.adjoint();
        }
        rho = (1 - p * (d - 1) / d) * rho + (p / d) * mixed;
    }

    std::vector<double> out(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        out[static_cast<std::size_t>(i)] = rho(i, i).real();
    }
    return out;
}

}  // namespace qfarith
