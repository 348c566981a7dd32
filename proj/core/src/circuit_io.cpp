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

#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qfarith/circuit.hpp"

namespace qfarith {

namespace {

std::string format_angle(double angle) {
    // %.17g round-trips every double.
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", angle);
    return buf;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void fail(std::size_t line_no, const std::string &what) {
    throw std::invalid_argument("circuit text line " + std::to_string(line_no) + ": " + what);
}

std::uint32_t parse_uint(std::string_view s, std::size_t line_no) {
    s = trim(s);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        fail(line_no, "expected unsigned integer, got '" + std::string(s) + "'");
    }
    return v;
}

double parse_double(std::string_view s, std::size_t line_no) {
    std::string tmp(trim(s));
    if (tmp.empty()) {
        fail(line_no, "missing angle");
    }
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(tmp, &used);
    } catch (const std::exception &) {
        fail(line_no, "bad angle '" + tmp + "'");
    }
    if (used != tmp.size()) {
        fail(line_no, "bad angle '" + tmp + "'");
    }
    return v;
}

}  // namespace

void write_circuit(std::ostream &out, const Circuit &circuit) {
    out << "width=" << circuit.width() << '\n';
    for (const Gate &g : circuit.gates()) {
        out << name(g.kind) << ' ';
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (k) {
                out << ',';
            }
            out << g.qubits[k];
        }
        if (has_angle(g.kind)) {
            out << ';' << format_angle(g.angle);
        }
        out << '\n';
    }
}

std::string to_text(const Circuit &circuit) {
    std::ostringstream ss;
    write_circuit(ss, circuit);
    return ss.str();
}

Circuit read_circuit(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<Circuit> circuit;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') {
            continue;
        }
        if (!circuit) {
            if (!view.starts_with("width=")) {
                fail(line_no, "expected 'width=N' header");
            }
            circuit.emplace(parse_uint(view.substr(6), line_no));
            continue;
        }

        std::size_t space = view.find(' ');
        if (space == std::string_view::npos) {
            fail(line_no, "expected 'KIND qubits'");
        }
        Gate g;
        try {
            g.kind = parse_gate_kind(view.substr(0, space));
        } catch (const std::invalid_argument &e) {
            fail(line_no, e.what());
        }
        std::string_view rest = trim(view.substr(space + 1));
        std::string_view angle_text;
        if (std::size_t semi = rest.find(';'); semi != std::string_view::npos) {
            angle_text = rest.substr(semi + 1);
            rest = rest.substr(0, semi);
        }
        std::size_t count = 0;
        while (!rest.empty()) {
            std::size_t comma = rest.find(',');
            std::string_view item = rest.substr(0, comma);
            if (count >= 3) {
                fail(line_no, "too many qubits");
            }
            g.qubits[count++] = parse_uint(item, line_no);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        if (count != arity(g.kind)) {
            fail(line_no, std::string(name(g.kind)) + " expects " + std::to_string(arity(g.kind)) + " qubits");
        }
        if (has_angle(g.kind)) {
            g.angle = parse_double(angle_text, line_no);
        } else if (!trim(angle_text).empty()) {
            fail(line_no, std::string(name(g.kind)) + " takes no angle");
        }
        try {
            circuit->append(g);
        } catch (const std::exception &e) {
            fail(line_no, e.what());
        }
    }
    if (!circuit) {
        throw std::invalid_argument("circuit text: missing 'width=N' header");
    }
    return std::move(*circuit);
}

Circuit from_text(std::string_view text) {
    std::istringstream ss{std::string(text)};
    return read_circuit(ss);
}

}  // namespace qfarith
