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

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "qfarith/harness.hpp"

namespace qfarith {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

double parse_rate(const std::string &text, std::size_t line_no) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw IoError("summary.csv line " + std::to_string(line_no) + ": bad error rate '" + text + "'");
    }
    return v;
}

struct Cell {
    std::string success_rate;
    std::string lower_bar;
    std::string upper_bar;
};

struct Panel {
    std::set<Depth> depths;
    // rate -> (text, depth -> cell)
    std::map<double, std::pair<std::string, std::map<Depth, Cell>>> rows;
};

}  // namespace

std::vector<fs::path> write_plot_data(const fs::path &results_dir, const fs::path &out_dir) {
    const fs::path summary = results_dir / "summary.csv";
    std::ifstream in(summary, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + summary.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != kSummaryHeader) {
        throw IoError(summary.string() + ": unexpected header");
    }

    std::map<std::pair<std::string, std::string>, Panel> panels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv(line);
        if (f.size() != 10) {
            throw IoError(summary.string() + " line " + std::to_string(line_no) + ": expected 10 fields");
        }
        Depth depth = Depth::full();
        Pattern pattern;
        try {
            parse_error_axis(f[0]);
            depth = Depth::parse(f[2]);
            pattern = Pattern::parse(f[3]);
        } catch (const std::invalid_argument &e) {
            throw IoError(summary.string() + " line " + std::to_string(line_no) + ": " + e.what());
        }
        const double rate = parse_rate(f[1], line_no);
        Panel &panel = panels[{f[0], pattern.label()}];
        panel.depths.insert(depth);
        auto &row = panel.rows[rate];
        row.first = f[1];
        row.second[depth] = {f[4], f[6], f[7]};
    }
    if (panels.empty()) {
        throw IoError(summary.string() + ": no data rows");
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
    }
    std::vector<fs::path> written;
    for (const auto &[key, panel] : panels) {
        std::string name = key.second;
        std::replace(name.begin(), name.end(), ':', '-');
        const fs::path path = out_dir / ("panel_" + key.first + "_" + name + ".csv");
        std::string text = "error_rate";
        for (const Depth &d : panel.depths) {
            const std::string p = "depth_" + d.label();
            text += "," + p + "_success_rate," + p + "_lower_bar," + p + "_upper_bar";
        }
        text += "\n";
        for (const auto &[rate, row] : panel.rows) {
            text += row.first;
            for (const Depth &d : panel.depths) {
                if (auto it = row.second.find(d); it != row.second.end()) {
                    text += "," + it->second.success_rate + "," + it->second.lower_bar + "," + it->second.upper_bar;
                } else {
                    text += ",,,";
                }
            }
            text += "\n";
        }
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out || !(out << text) || !out.flush()) {
            throw IoError("cannot write " + path.string());
        }
        written.push_back(path);
    }
    return written;
}

}  // namespace qfarith
