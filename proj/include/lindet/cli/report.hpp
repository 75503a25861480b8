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

// Text, JSON and CSV output of CLI jobs.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lindet/cli/config.hpp"

namespace lindet::cli {

// Plain-text report builder with aligned "key: value" lines.
class TextReport {
   public:
    void section(const std::string& title);
    void line(const std::string& text);
    void field(const std::string& key, const std::string& value);
    const std::string& str() const { return text_; }

   private:
    std::string text_;
};

// %.10g, with "inf"/"-inf"/"nan" spelled out.
std::string fmt(double x);
std::string fmt(cplx z);
// fmt(x) + " " + unit.
std::string with_unit(double x, const std::string& unit);

// Round-trip precision (17 significant digits) for CSV.
std::string csv_number(double x);

// Non-finite numbers become the strings "inf", "-inf", "nan".
Json json_number(double x);

// {"value": x, "unit": unit}.
Json json_quantity(double x, const std::string& unit);

class CsvTable {
   public:
    explicit CsvTable(std::string header) : text_(std::move(header) + "\n") {}
    void row(const std::vector<std::string>& cells);
    const std::string& str() const { return text_; }

   private:
    std::string text_;
};

// Shown wherever absolute SNR constants are printed.
std::string normalization_note();

struct JobOutput {
    std::string report_text;
    Json report_json;
    std::map<std::string, std::string> files;  // extra files by name
};

// Writes every file to a temporary name in `dir`, then renames them into
// place.
void write_outputs(const std::filesystem::path& dir, const JobOutput& out);

}  // namespace lindet::cli
