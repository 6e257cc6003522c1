// Copyright 2026 The Anonmine Authors
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

// RFC-4180 CSV reading and writing. Output always carries a header row and
// uses "\n" record separators; input accepts "\n" or "\r\n".

#ifndef ANONMINE_CSV_H_
#define ANONMINE_CSV_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace anonmine {

using CsvRow = std::vector<std::string>;

// Quotes the field when it contains a comma, quote, CR or LF.
std::string csv_escape(std::string_view field);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void write_row(const CsvRow& fields);

 private:
  std::ostream& out_;
};

struct CsvTable {
  CsvRow header;
  std::vector<CsvRow> rows;

  // Index of the named column; throws FormatError when absent.
  std::size_t column(std::string_view name) const;
};

// Parses a whole CSV document; the first record is the header. Every record
// must have as many fields as the header.
CsvTable parse_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

// Writes header + rows to `path`, creating parent directories.
void write_csv(const std::filesystem::path& path, const CsvRow& header,
               const std::vector<CsvRow>& rows);

// Shortest round-trippable decimal representation; inf, -inf or nan otherwise.
std::string format_double(double value);
// Fixed number of digits after the decimal point.
std::string format_fixed(double value, int digits);

double parse_double(std::string_view text);
std::int64_t parse_int(std::string_view text);

}  // namespace anonmine

#endif  // ANONMINE_CSV_H_
