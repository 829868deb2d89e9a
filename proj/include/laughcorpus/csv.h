// Copyright (c) 2026 The laughcorpus Authors
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

#ifndef LAUGHCORPUS_CSV_H_
#define LAUGHCORPUS_CSV_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace laughcorpus {

// Quotes a field per RFC 4180 when it contains a comma, quote, CR or LF.
std::string CsvEscape(std::string_view field);

// Joins escaped fields with commas and terminates the record with '\n'.
std::string CsvRow(std::span<const std::string> fields);

// Parses RFC 4180 text (LF or CRLF record separators). Throws ParseError
// with a 1-based line number on an unterminated quoted field or stray quote.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text);

// Shortest decimal representation that round-trips to the same double.
std::string FormatDouble(double value);

}  // namespace laughcorpus

#endif  // LAUGHCORPUS_CSV_H_
