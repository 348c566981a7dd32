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

#include "qfarith/qinteger.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace qfarith {

namespace {

[[noreturn]] void bad_literal(std::string_view literal, const std::string &why) {
    throw std::invalid_argument("bad qinteger literal '" + std::string(literal) + "': " + why);
}

std::int64_t parse_int(std::string_view literal, std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        bad_literal(literal, "expected integer, got '" + std::string(s) + "'");
    }
    return v;
}

double parse_amp(std::string_view literal, std::string_view s) {
    std::string tmp(s);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(tmp, &used);
    } catch (const std::exception &) {
        bad_literal(literal, "bad amplitude '" + tmp + "'");
    }
    if (used != tmp.size()) {
        bad_literal(literal, "bad amplitude '" + tmp + "'");
    }
    return v;
}

}  // namespace

QInteger::QInteger(std::uint32_t width, std::vector<Term> terms) : width_(width), terms_(std::move(terms)) {
    if (width == 0 || width > 62) {
        throw std::invalid_argument("qinteger width must be in [1, 62]");
    }
    if (terms_.empty()) {
        throw std::invalid_argument("qinteger needs at least one term");
    }
    const std::uint64_t limit = std::uint64_t{1} << width;
    if (terms_.size() > limit) {
        throw std::invalid_argument("qinteger order exceeds 2^width");
    }
    std::set<std::uint64_t> seen;
    double norm = 0;
    for (const Term &t : terms_) {
        if (t.value >= limit) {
            throw std::invalid_argument(
                "qinteger value " + std::to_string(t.value) + " does not fit in " + std::to_string(width) + " bits");
        }
        if (!seen.insert(t.value).second) {
            throw std::invalid_argument("qinteger value " + std::to_string(t.value) + " repeated");
        }
        norm += std::norm(t.amplitude);
    }
    if (std::abs(norm - 1.0) > 1e-9) {
        throw std::invalid_argument("qinteger amplitudes are not normalized");
    }
}

QInteger QInteger::basis(std::uint32_t width, std::uint64_t value) {
    return QInteger(width, {Term{value, 1.0}});
}

QInteger QInteger::uniform(std::uint32_t width, std::vector<std::uint64_t> values) {
    std::vector<Term> terms;
    terms.reserve(values.size());
    const double amp = values.empty() ? 0.0 : 1.0 / std::sqrt(static_cast<double>(values.size()));
    for (std::uint64_t v : values) {
        terms.push_back({v, amp});
    }
    return QInteger(width, std::move(terms));
}

std::vector<std::uint64_t> QInteger::values() const {
    std::vector<std::uint64_t> out;
    out.reserve(terms_.size());
    for (const Term &t : terms_) {
        out.push_back(t.value);
    }
    return out;
}

QInteger QInteger::widened(std::uint32_t new_width) const {
    if (new_width < width_) {
        throw std::invalid_argument("cannot narrow a qinteger");
    }
    return QInteger(new_width, terms_);
}

std::int64_t to_signed(std::uint64_t value, std::uint32_t width) {
    const std::uint64_t half = std::uint64_t{1} << (width - 1);
    if (value >= half) {
        return static_cast<std::int64_t>(value) - static_cast<std::int64_t>(half << 1);
    }
    return static_cast<std::int64_t>(value);
}

QInteger parse_qinteger(std::string_view literal) {
    std::size_t colon = literal.find(':');
    if (colon == std::string_view::npos) {
        bad_literal(literal, "missing 'width:'");
    }
    std::int64_t width = parse_int(literal, literal.substr(0, colon));
    if (width < 1 || width > 62) {
        bad_literal(literal, "width must be in [1, 62]");
    }
    const std::int64_t limit = std::int64_t{1} << width;

    std::vector<std::uint64_t> values;
    std::vector<double> amps;
    std::string_view rest = literal.substr(colon + 1);
    if (rest.empty()) {
        bad_literal(literal, "no values");
    }
    while (true) {
        std::size_t comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        std::size_t at = item.find('@');
        std::int64_t v = parse_int(literal, item.substr(0, at));
        if (v < -(limit / 2) || v >= limit) {
            bad_literal(literal, "value " + std::to_string(v) + " out of range");
        }
        values.push_back(static_cast<std::uint64_t>(v < 0 ? v + limit : v));
        if (at != std::string_view::npos) {
            amps.push_back(parse_amp(literal, item.substr(at + 1)));
        }
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
    }

    if (amps.empty()) {
        std::set<std::uint64_t> distinct(values.begin(), values.end());
        if (distinct.size() != values.size()) {
            bad_literal(literal, "repeated value");
        }
        return QInteger::uniform(static_cast<std::uint32_t>(width), values);
    }
    if (amps.size() != values.size()) {
        bad_literal(literal, "give an amplitude for every value or for none");
    }
    double norm = 0;
    for (double a : amps) {
        norm += a * a;
    }
    if (norm <= 0) {
        bad_literal(literal, "amplitudes are all zero");
    }
    std::vector<QInteger::Term> terms;
    for (std::size_t k = 0; k < values.size(); ++k) {
        terms.push_back({values[k], amps[k] / std::sqrt(norm)});
    }
    try {
        return QInteger(static_cast<std::uint32_t>(width), std::move(terms));
    } catch (const std::invalid_argument &e) {
        bad_literal(literal, e.what());
    }
}

std::string format_qinteger(const QInteger &q) {
    std::string out = std::to_string(q.width()) + ":";
    bool equal = true;
    for (const auto &t : q.terms()) {
        if (std::abs(t.amplitude - q.terms().front().amplitude) > 1e-12) {
            equal = false;
        }
    }
    bool first = true;
    for (const auto &t : q.terms()) {
        if (!first) {
            out += ',';
        }
        first = false;
        out += std::to_string(t.value);
        if (!equal) {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "@%.17g", t.amplitude.real());
            out += buf;
        }
    }
    return out;
}

}  // namespace qfarith
