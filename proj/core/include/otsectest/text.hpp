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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace otsectest::text {

std::string_view trim(std::string_view s) noexcept;
std::string to_lower(std::string_view s);

/// Lowercase, trimmed, internal whitespace runs collapsed to single spaces.
/// Shared by case-insensitive identifier and product-token comparisons.
std::string normalize(std::string_view s);

std::vector<std::string> split(std::string_view s, char delim);
std::vector<std::string> split_lines(std::string_view s);

/// List-field encoding for table cells: elements joined by `delim`, with
/// backslash escaping for the delimiter and backslash itself.
std::string join_escaped(const std::vector<std::string>& parts, char delim);
std::vector<std::string> split_escaped(std::string_view s, char delim);

bool starts_with_ci(std::string_view s, std::string_view prefix) noexcept;

/// Shortest decimal form that parses back to the same double ("0.02", "700").
std::string format_double(double value);
std::optional<double> parse_double(std::string_view s) noexcept;
std::optional<long long> parse_int(std::string_view s) noexcept;

std::string xml_escape_attr(std::string_view s);
std::string xml_escape_text(std::string_view s);
std::string xml_unescape(std::string_view s);

}  // namespace otsectest::text
