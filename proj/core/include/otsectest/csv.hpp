/*
 * Copyright 2026 the otsectest authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace otsectest::csv {

/// Comma-separated rows; fields may be double-quoted to embed commas,
/// quotes ("" inside a quoted field) and newlines. First row is the header.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Throws Error{MalformedRow} on an unterminated quote or stray quote.
Table read(std::string_view content);

std::string write(const Table& table);

std::string quote_field(std::string_view field);

}  // namespace otsectest::csv
