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
#include "otsectest/records.hpp"

#include "otsectest/error.hpp"
#include "otsectest/text.hpp"

namespace otsectest::records {

std::optional<std::string> Record::get(std::string_view key) const {
    for (const auto& [k, v] : fields) {
        if (k == key) return v;
    }
    return std::nullopt;
}

std::string Record::get_or(std::string_view key, std::string_view fallback) const {
    auto v = get(key);
    return v ? *v : std::string(fallback);
}

void Record::set(std::string_view key, std::string_view value) {
    fields.emplace_back(std::string(key), std::string(value));
}

std::vector<Record> read(std::string_view content) {
    std::vector<Record> out;
    Record current;
    bool open = false;
    size_t lineno = 0;

    auto flush = [&] {
        if (open) {
            out.push_back(std::move(current));
            current = Record{};
            open = false;
        }
    };

    for (const std::string& line : text::split_lines(content)) {
        ++lineno;
        if (open && !current.fields.empty() && line.rfind("  ", 0) == 0) {
            // continuation of the previous value (may be an empty segment)
            current.fields.back().second += "\n" + line.substr(2);
            continue;
        }
        if (line.empty() || text::trim(line).empty()) {
            flush();
            continue;
        }
        if (line[0] == '#') continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos || colon == 0)
            throw Error(ErrorKind::MalformedRow,
                        "record line " + std::to_string(lineno) + ": expected 'key: value'");
        std::string key(text::trim(std::string_view(line).substr(0, colon)));
        std::string_view rest = std::string_view(line).substr(colon + 1);
        if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
        current.fields.emplace_back(std::move(key), std::string(rest));
        open = true;
    }
    flush();
    return out;
}

std::string write(const std::vector<Record>& recs) {
    std::string out;
    for (size_t r = 0; r < recs.size(); ++r) {
        if (r) out.push_back('\n');
        for (const auto& [key, value] : recs[r].fields) {
            out += key;
            out += ": ";
            bool first = true;
            for (const auto& part : text::split(value, '\n')) {
                if (!first) out += "  ";
                out += part;
                out.push_back('\n');
                first = false;
            }
        }
    }
    return out;
}

}  // namespace otsectest::records
