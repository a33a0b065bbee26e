// Copyright 2026 The tabxform Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// File plumbing: RFC 4180 CSV, whole-file reads and writes, and SHA-256
// digests for run manifests.

#ifndef TABXFORM_IO_HPP_
#define TABXFORM_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tabxform/core.hpp"

namespace tabxform {

using CsvRow = std::vector<std::string>;

// Accepts CRLF or LF record terminators and an optional final terminator.
// Throws Error(kParse) on a stray quote or an unterminated quoted field.
std::vector<CsvRow> ParseCsv(std::string_view text);

// CRLF terminators; fields are quoted when they contain a comma, quote, CR
// or LF, and lone empty fields are written as "" so the row survives.
std::string FormatCsv(const std::vector<CsvRow>& rows);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, std::string_view content);

// Single column with header `value`.
std::vector<CellValue> ReadColumnCsv(const std::filesystem::path& path);
void WriteColumnCsv(const std::filesystem::path& path,
                    const std::vector<CellValue>& cells);

// Two columns with header `source,target`.
ExampleSet ReadExamplesCsv(const std::filesystem::path& path);
void WriteExamplesCsv(const std::filesystem::path& path, const ExampleSet& examples);

// Data rows of a CSV whose header contains every name in `columns`, each
// reduced to those fields in `columns` order.
std::vector<std::vector<std::string>> ReadCsvColumns(
    const std::filesystem::path& path, const std::vector<std::string>& columns);

std::string Sha256Hex(std::string_view bytes);
std::string Sha256File(const std::filesystem::path& path);

}  // namespace tabxform

#endif  // TABXFORM_IO_HPP_
