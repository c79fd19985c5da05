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
#include "otsectest/csv.hpp"

#include "otsectest/error.hpp"

namespace otsectest::csv {

Table read(std::string_view content) {
    Table table;
    std::vector<std::string> row;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool row_has_data = false;
    size_t line = 1;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_row = [&] {
        end_field();
        if (table.header.empty()) {
            table.header = std::move(row);
        } else {
            table.rows.push_back(std::move(row));
        }
        row.clear();
        row_has_data = false;
    };

    for (size_t i = 0; i < content.size(); ++i) {
        char c = content[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < content.size() && content[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty() || field_was_quoted)
                throw Error(ErrorKind::MalformedRow,
                            "line " + std::to_string(line) + ": quote inside unquoted field");
            in_quotes = true;
            field_was_quoted = true;
            row_has_data = true;
            break;
        case ',':
            end_field();
            row_has_data = true;
            break;
        case '\r':
            break;
        case '\n':
            ++line;
            if (row_has_data || !field.empty() || !row.empty()) end_row();
            break;
        default:
            field.push_back(c);
            row_has_data = true;
        }
    }
    if (in_quotes)
        throw Error(ErrorKind::MalformedRow, "line " + std::to_string(line) + ": unterminated quote");
    if (row_has_data || !field.empty() || !row.empty()) end_row();
    return table;
}

std::string quote_field(std::string_view field) {
    bool needs_quotes = false;
    for (char c : field) {
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs_quotes = true;
            break;
        }
    }
    if (!field.empty() && (field.front() == ' ' || field.back() == ' ')) needs_quotes = true;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string write(const Table& table) {
    std::string out;
    auto write_row = [&](const std::vector<std::string>& row) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += quote_field(row[i]);
        }
        out.push_back('\n');
    };
    write_row(table.header);
    for (const auto& row : table.rows) write_row(row);
    return out;
}

}  // namespace otsectest::csv
