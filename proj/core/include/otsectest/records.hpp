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
#include <utility>
#include <vector>

namespace otsectest::records {

/// One `key: value` block of a .rec file. Key order is preserved; a value
/// continues on following lines indented by two spaces (joined with '\n').
struct Record {
    std::vector<std::pair<std::string, std::string>> fields;

    std::optional<std::string> get(std::string_view key) const;
    std::string get_or(std::string_view key, std::string_view fallback) const;
    void set(std::string_view key, std::string_view value);
};

/// Blocks separated by blank lines; full lines starting with '#' are comments.
std::vector<Record> read(std::string_view content);

std::string write(const std::vector<Record>& recs);

}  // namespace otsectest::records
