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
#include <string>
#include <string_view>
#include <vector>

namespace qfarith {

/// A superposition of integers held in an n-bit register. Values are stored
/// as unsigned register contents in [0, 2^n); signed() gives the
/// two's-complement reading. The order is the number of terms.
class QInteger {
  public:
    struct Term {
        std::uint64_t value = 0;
        std::complex<double> amplitude;
        bool operator==(const Term &) const = default;
    };

    /// Throws std::invalid_argument unless values are distinct, in range,
    /// non-empty, and the squared amplitudes sum to 1 within 1e-9.
    QInteger(std::uint32_t width, std::vector<Term> terms);

    /// Order-1 qinteger holding `value`.
    static QInteger basis(std::uint32_t width, std::uint64_t value);
    /// Equal-amplitude superposition over distinct `values`.
    static QInteger uniform(std::uint32_t width, std::vector<std::uint64_t> values);

    std::uint32_t width() const { return width_; }
    const std::vector<Term> &terms() const { return terms_; }
    std::size_t order() const { return terms_.size(); }
    std::vector<std::uint64_t> values() const;

    /// Same terms in a register of `new_width >= width()` bits (zero-extended).
    QInteger widened(std::uint32_t new_width) const;

    bool operator==(const QInteger &) const = default;

  private:
    std::uint32_t width_;
    std::vector<Term> terms_;
};

std::int64_t to_signed(std::uint64_t value, std::uint32_t width);

/// Parses `width:val[@amp][,val[@amp]...]`. Negative values are read as
/// two's complement. If no amplitudes are given they are equal; if any are
/// given, all must be, and they are renormalized.
QInteger parse_qinteger(std::string_view literal);

/// Literal form accepted by parse_qinteger. Amplitudes are omitted when equal.
std::string format_qinteger(const QInteger &q);

}  // namespace qfarith
