// Copyright 2026 The lindet Authors
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

#include "lindet/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace lindet::cli {

namespace {

std::string non_finite(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    return x > 0 ? "inf" : "-inf";
}

std::string printf_double(const char* format, double x) {
    if (!std::isfinite(x)) {
        return non_finite(x);
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, x);
    return buf;
}

}  // namespace

void TextReport::section(const std::string& title) {
    if (!text_.empty()) {
        text_ += "\n";
    }
    text_ += "== " + title + " ==\n";
}

void TextReport::line(const std::string& text) { text_ += text + "\n"; }

void TextReport::field(const std::string& key, const std::string& value) {
    std::string k = key.empty() ? key : key + ":";
    if (k.size() < 28) {
        k.resize(28, ' ');
    } else {
        k += " ";
    }
    text_ += "  " + k + value + "\n";
}

std::string fmt(double x) { return printf_double("%.10g", x == 0.0 ? 0.0 : x); }

std::string fmt(cplx z) {
    const double re = z.real() == 0.0 ? 0.0 : z.real();
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    if (im == 0.0) {
        return fmt(re);
    }
    if (re == 0.0) {
        return fmt(im) + "i";
    }
    return fmt(re) + (im < 0 || std::isnan(im) ? " - " : " + ") + fmt(std::abs(im)) + "i";
}

std::string with_unit(double x, const std::string& unit) { return fmt(x) + " " + unit; }

std::string csv_number(double x) { return printf_double("%.17g", x == 0.0 ? 0.0 : x); }

Json json_number(double x) {
    if (!std::isfinite(x)) {
        return non_finite(x);
    }
    return x;
}

Json json_quantity(double x, const std::string& unit) {
    return Json{{"value", json_number(x)}, {"unit", unit}};
}

void CsvTable::row(const std::vector<std::string>& cells) {
    for (size_t k = 0; k < cells.size(); ++k) {
        if (k) {
            text_ += ",";
        }
        text_ += cells[k];
    }
    text_ += "\n";
}

std::string normalization_note() {
    return "absolute sigma_NN and SNR prefactors depend on the spectral normalization "
           "convention (one-sided integral of |G|^2 dW/2pi with unit vacuum density); "
           "published passive-cavity and expander constants differ from this convention by "
           "constant factors. Ratios, gamma-independence and divergence locations do not "
           "depend on it.";
}

void write_outputs(const std::filesystem::path& dir, const JobOutput& out) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw InvalidArgument("cannot create output directory '" + dir.string() +
                              "': " + ec.message());
    }
    std::map<std::string, std::string> files = out.files;
    files["report.txt"] = out.report_text;
    files["report.json"] = out.report_json.dump(2) + "\n";

    std::vector<std::pair<fs::path, fs::path>> staged;
    for (const auto& [name, content] : files) {
        const fs::path final_path = dir / name;
        const fs::path tmp = dir / ("." + name + ".tmp");
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        f << content;
        f.close();
        if (!f) {
            for (const auto& s : staged) {
                fs::remove(s.first, ec);
            }
            fs::remove(tmp, ec);
            throw InvalidArgument("cannot write '" + final_path.string() + "'");
        }
        staged.emplace_back(tmp, final_path);
    }
    for (const auto& [tmp, final_path] : staged) {
        fs::rename(tmp, final_path);
    }
}

}  // namespace lindet::cli
