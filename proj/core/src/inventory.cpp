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
#include "otsectest/inventory.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "otsectest/csv.hpp"
#include "otsectest/error.hpp"
#include "otsectest/records.hpp"
#include "otsectest/text.hpp"

namespace otsectest::inventory {

std::string_view to_string(AssetType t) noexcept {
    return t == AssetType::Hardware ? "Hardware" : "Software";
}

std::string_view to_string(MethodKind k) noexcept {
    switch (k) {
    case MethodKind::NumericRange: return "NumericRange";
    case MethodKind::PseudoCode: return "PseudoCode";
    case MethodKind::Textual: return "Textual";
    }
    return "Textual";
}

std::string_view to_string(PolicyType t) noexcept {
    switch (t) {
    case PolicyType::Safety: return "Safety";
    case PolicyType::Security: return "Security";
    case PolicyType::SafetySecurity: return "SafetySecurity";
    }
    return "Safety";
}

std::string_view to_string(TableKind k) noexcept {
    switch (k) {
    case TableKind::Assets: return "assets";
    case TableKind::Connections: return "connections";
    case TableKind::Methods: return "methods";
    case TableKind::Policies: return "policies";
    case TableKind::TestCases: return "testcases";
    }
    return "assets";
}

const Asset* Inventory::find_asset(std::string_view id) const noexcept {
    for (const auto& a : assets)
        if (a.id == id) return &a;
    return nullptr;
}

// -- endpoint and range grammars --------------------------------------------

std::set<std::string> parse_endpoint(std::string_view token) {
    std::set<std::string> out;
    for (const auto& part : text::split(token, '+')) {
        std::string id(text::trim(part));
        if (id.empty())
            throw Error(ErrorKind::EmptyComponent,
                        "empty component in endpoint '" + std::string(token) + "'");
        out.insert(std::move(id));
    }
    return out;
}

std::string format_endpoint(const std::set<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) {
        if (!out.empty()) out.push_back('+');
        out += id;
    }
    return out;
}

namespace {

// SI prefix factors tried when two range units differ. Longest prefix wins
// so "dabar" resolves to deca, not deci.
const std::pair<std::string_view, double> kSiPrefixes[] = {
    {"da", 1e1}, {"G", 1e9},  {"M", 1e6},  {"k", 1e3},   {"h", 1e2},
    {"d", 1e-1}, {"c", 1e-2}, {"m", 1e-3}, {"\xc2\xb5", 1e-6},  // µ
    {"u", 1e-6}, {"n", 1e-9},
};

struct UnitParts {
    std::string_view prefix;
    double factor = 1.0;
    std::string_view base;
};

std::vector<UnitParts> unit_readings(std::string_view unit) {
    std::vector<UnitParts> out;
    out.push_back({"", 1.0, unit});  // the unit may itself be a base unit
    for (const auto& [prefix, factor] : kSiPrefixes) {
        if (unit.size() > prefix.size() && unit.substr(0, prefix.size()) == prefix)
            out.push_back({prefix, factor, unit.substr(prefix.size())});
    }
    return out;
}

}  // namespace

NumericRange parse_numeric_range(std::string_view body) {
    std::vector<std::string> tokens;
    for (const auto& t : text::split(std::string(text::trim(body)), ' ')) {
        if (!t.empty()) tokens.push_back(t);
    }
    if (tokens.size() != 6 || text::to_lower(tokens[0]) != "from" ||
        text::to_lower(tokens[3]) != "to")
        throw Error(ErrorKind::NotARange, "expected 'from <number> <unit> to <number> <unit>'");

    auto low_val = text::parse_double(tokens[1]);
    auto high_val = text::parse_double(tokens[4]);
    if (!low_val || !high_val)
        throw Error(ErrorKind::NotARange, "range bounds are not numbers");

    const std::string& low_unit = tokens[2];
    const std::string& high_unit = tokens[5];

    NumericRange range;
    if (low_unit == high_unit) {
        range = {*low_val, *high_val, high_unit};
    } else {
        // Find the reading pair with the longest common base unit.
        const UnitParts* best_low = nullptr;
        const UnitParts* best_high = nullptr;
        auto lows = unit_readings(low_unit);
        auto highs = unit_readings(high_unit);
        for (const auto& l : lows) {
            for (const auto& h : highs) {
                if (l.base.empty() || l.base != h.base) continue;
                if (!best_low || l.base.size() > best_low->base.size()) {
                    best_low = &l;
                    best_high = &h;
                }
            }
        }
        if (!best_low)
            throw Error(ErrorKind::UnitMismatch,
                        "'" + low_unit + "' and '" + high_unit + "' have no common base unit");
        // Normalize to the larger-magnitude unit as stated.
        if (best_low->factor >= best_high->factor) {
            range = {*low_val, *high_val * best_high->factor / best_low->factor,
                     low_unit};
        } else {
            range = {*low_val * best_low->factor / best_high->factor, *high_val,
                     high_unit};
        }
    }
    if (!(range.low < range.high))
        throw Error(ErrorKind::NotARange, "range bounds do not increase");
    return range;
}

// -- mitigation entry grammar ------------------------------------------------

Mitigation parse_mitigation(std::string_view entry) {
    std::string_view s = text::trim(entry);
    auto take_word = [&](std::string_view word) {
        if (!text::starts_with_ci(s, word)) return false;
        std::string_view rest = s.substr(word.size());
        if (!rest.empty() && rest.front() != ' ') return false;
        s = text::trim(rest);
        return true;
    };
    if (take_word("patch")) {
        size_t arrow = s.rfind("->");
        if (arrow == std::string_view::npos)
            throw Error(ErrorKind::MalformedRow, "patch entry needs '<product> -> <version>'");
        std::string product(text::trim(s.substr(0, arrow)));
        std::string_view rest = text::trim(s.substr(arrow + 2));
        std::optional<std::string> digest;
        size_t digest_pos = rest.find("sha256=");
        if (digest_pos != std::string_view::npos) {
            digest = std::string(text::trim(rest.substr(digest_pos + 7)));
            rest = text::trim(rest.substr(0, digest_pos));
            if (digest->size() != 64)
                throw Error(ErrorKind::MalformedRow, "sha256 digest must be 64 hex characters");
        }
        if (product.empty())
            throw Error(ErrorKind::MalformedRow, "patch entry has an empty product");
        return PatchUpdate{std::move(product), assessment::parse_version(rest), std::move(digest)};
    }
    if (take_word("network")) return NetworkRestriction{std::string(s)};
    if (take_word("procedure")) return ProcedureCheck{std::string(s)};
    throw Error(ErrorKind::MalformedRow,
                "mitigation entry must start with patch/network/procedure: '" +
                    std::string(entry) + "'");
}

std::string format_mitigation(const Mitigation& m) {
    if (const auto* p = std::get_if<PatchUpdate>(&m)) {
        std::string out = "patch " + p->product + " -> " + p->fixed_version.raw;
        if (p->sha256) out += " sha256=" + *p->sha256;
        return out;
    }
    if (const auto* n = std::get_if<NetworkRestriction>(&m)) return "network " + n->text;
    return "procedure " + std::get<ProcedureCheck>(m).text;
}

// -- field-level parsers -----------------------------------------------------

namespace {

AssetType parse_asset_type(std::string_view s, std::string_view record_id) {
    std::string v = text::to_lower(text::trim(s));
    if (v == "hardware") return AssetType::Hardware;
    if (v == "software") return AssetType::Software;
    throw Error(ErrorKind::UnknownEnumValue,
                "asset '" + std::string(record_id) + "': asset_type '" + std::string(s) +
                    "' is not Hardware or Software");
}

PolicyType parse_policy_type(std::string_view s, std::string_view record_id) {
    std::string v = text::normalize(s);
    if (v == "safety") return PolicyType::Safety;
    if (v == "security") return PolicyType::Security;
    if (v == "safetysecurity" || v == "safety & security" || v == "safety security" ||
        v == "safety&security")
        return PolicyType::SafetySecurity;
    throw Error(ErrorKind::UnknownEnumValue,
                "record '" + std::string(record_id) + "': policy type '" + std::string(s) +
                    "' is not Safety, Security or SafetySecurity");
}

MethodKind parse_method_kind(std::string_view s, std::string_view record_id) {
    std::string v = text::to_lower(text::trim(s));
    if (v == "numericrange" || v == "range") return MethodKind::NumericRange;
    if (v == "pseudocode" || v == "code") return MethodKind::PseudoCode;
    if (v == "textual" || v == "text") return MethodKind::Textual;
    throw Error(ErrorKind::UnknownEnumValue,
                "method for '" + std::string(record_id) + "': kind '" + std::string(s) +
                    "' is not NumericRange, PseudoCode or Textual");
}

// A generic row view so CSV rows and .rec blocks share one record builder.
struct FieldView {
    std::map<std::string, std::string> fields;

    std::optional<std::string> get(const std::string& key) const {
        auto it = fields.find(key);
        if (it == fields.end()) return std::nullopt;
        return it->second;
    }
    std::string get_or(const std::string& key) const { return get(key).value_or(""); }
};

std::string require(const FieldView& row, const std::string& key, size_t index) {
    auto v = row.get(key);
    if (!v || text::trim(*v).empty())
        throw Error(ErrorKind::MalformedRow,
                    "record " + std::to_string(index) + ": missing required field '" + key + "'");
    return *v;
}

std::vector<FieldView> rows_from_csv(std::string_view content,
                                     const std::vector<std::string>& columns,
                                     size_t required_columns) {
    csv::Table table = csv::read(content);
    std::vector<FieldView> out;
    if (table.header.empty() && table.rows.empty()) return out;
    if (table.header.size() < required_columns)
        throw Error(ErrorKind::MalformedRow, "header row has too few columns");
    for (size_t c = 0; c < table.header.size() && c < columns.size(); ++c) {
        if (text::normalize(table.header[c]) != columns[c])
            throw Error(ErrorKind::MalformedRow, "header column " + std::to_string(c + 1) +
                                                     ": expected '" + columns[c] + "', got '" +
                                                     table.header[c] + "'");
    }
    for (size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() < required_columns || row.size() > columns.size())
            throw Error(ErrorKind::MalformedRow,
                        "record " + std::to_string(r + 1) + ": expected " +
                            std::to_string(required_columns) + ".." +
                            std::to_string(columns.size()) + " fields, got " +
                            std::to_string(row.size()));
        FieldView view;
        for (size_t c = 0; c < row.size(); ++c) view.fields[columns[c]] = row[c];
        out.push_back(std::move(view));
    }
    return out;
}

std::vector<FieldView> rows_from_records(std::string_view content) {
    std::vector<FieldView> out;
    for (const auto& rec : records::read(content)) {
        FieldView view;
        for (const auto& [k, v] : rec.fields) view.fields[text::normalize(k)] = v;
        out.push_back(std::move(view));
    }
    return out;
}

std::vector<FieldView> table_rows(std::string_view content, TableFormat format,
                                  const std::vector<std::string>& columns,
                                  size_t required_columns) {
    return format == TableFormat::Csv ? rows_from_csv(content, columns, required_columns)
                                      : rows_from_records(content);
}

void check_unique(const std::string& id, std::unordered_set<std::string>& seen,
                  std::string_view what) {
    if (!seen.insert(id).second)
        throw Error(ErrorKind::DuplicateId, std::string(what) + " id '" + id + "' appears twice");
}

const std::vector<std::string> kAssetColumns = {"id",      "asset_type", "name",
                                                "product", "version",    "purdue_level"};
const std::vector<std::string> kConnectionColumns = {"id", "source", "destination", "protocol"};
const std::vector<std::string> kMethodColumns = {"asset_id", "name", "body", "kind", "language"};
const std::vector<std::string> kPolicyColumns = {"id",          "name",     "constraint",
                                                 "policy_type", "mitigations", "cve_refs",
                                                 "stored_score"};
const std::vector<std::string> kTestCaseColumns = {"id",  "name",   "target", "criteria",
                                                   "pre", "action", "post",   "expected"};

}  // namespace

// -- per-table parsers --------------------------------------------------------

std::vector<Asset> parse_assets(std::string_view content, TableFormat format) {
    std::vector<Asset> out;
    std::unordered_set<std::string> seen;
    size_t index = 0;
    for (const auto& row : table_rows(content, format, kAssetColumns, 3)) {
        ++index;
        Asset a;
        a.id = text::trim(require(row, "id", index));
        check_unique(a.id, seen, "asset");
        a.type = parse_asset_type(require(row, "asset_type", index), a.id);
        a.name = row.get_or("name");
        if (auto p = row.get("product"); p && !text::trim(*p).empty())
            a.product = std::string(text::trim(*p));
        if (auto v = row.get("version"); v && !text::trim(*v).empty())
            a.version = assessment::parse_version(*v);
        if (auto l = row.get("purdue_level"); l && !text::trim(*l).empty()) {
            auto value = text::parse_int(*l);
            if (!value || *value < 0 || *value > 5)
                throw Error(ErrorKind::MalformedRow,
                            "asset '" + a.id + "': purdue_level must be an integer in [0,5]");
            a.purdue_level = static_cast<int>(*value);
        }
        out.push_back(std::move(a));
    }
    return out;
}

std::vector<Connection> parse_connections(std::string_view content, TableFormat format) {
    std::vector<Connection> out;
    std::unordered_set<std::string> seen;
    size_t index = 0;
    for (const auto& row : table_rows(content, format, kConnectionColumns, 4)) {
        ++index;
        Connection c;
        c.id = text::trim(require(row, "id", index));
        check_unique(c.id, seen, "connection");
        c.source = parse_endpoint(require(row, "source", index));
        c.destination = parse_endpoint(require(row, "destination", index));
        c.protocol = text::trim(require(row, "protocol", index));
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<MethodOperation> parse_methods(std::string_view content, TableFormat format) {
    std::vector<MethodOperation> out;
    size_t index = 0;
    for (const auto& row : table_rows(content, format, kMethodColumns, 3)) {
        ++index;
        MethodOperation m;
        m.asset_id = text::trim(require(row, "asset_id", index));
        m.name = require(row, "name", index);
        m.body = row.get_or("body");
        if (auto lang = row.get("language"); lang && !text::trim(*lang).empty())
            m.language = std::string(text::trim(*lang));

        if (auto kind = row.get("kind"); kind && !text::trim(*kind).empty()) {
            m.kind = parse_method_kind(*kind, m.asset_id);
        } else if (m.language) {
            m.kind = MethodKind::PseudoCode;
        } else {
            // Infer: a body matching the range pattern is a numeric range.
            try {
                parse_numeric_range(m.body);
                m.kind = MethodKind::NumericRange;
            } catch (const Error&) {
                m.kind = MethodKind::Textual;
            }
        }
        if (m.kind == MethodKind::NumericRange) {
            try {
                m.range = parse_numeric_range(m.body);
            } catch (const Error& e) {
                throw Error(ErrorKind::MalformedRow, "method '" + m.name + "' for '" + m.asset_id +
                                                         "': " + e.what());
            }
            if (m.range->unit.empty())
                throw Error(ErrorKind::MalformedRow,
                            "method '" + m.name + "': numeric range unit is empty");
        }
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Policy> parse_policies(std::string_view content, TableFormat format) {
    std::vector<Policy> out;
    std::unordered_set<std::string> seen;
    size_t index = 0;
    for (const auto& row : table_rows(content, format, kPolicyColumns, 4)) {
        ++index;
        Policy p;
        p.id = text::trim(require(row, "id", index));
        check_unique(p.id, seen, "policy");
        p.name = row.get_or("name");
        p.constraint_text = row.get_or("constraint");
        p.policy_type = parse_policy_type(require(row, "policy_type", index), p.id);
        if (auto m = row.get("mitigations"); m && !m->empty()) {
            for (const auto& entry : text::split_escaped(*m, '|')) {
                if (text::trim(entry).empty()) continue;
                p.mitigations.push_back(parse_mitigation(entry));
            }
        }
        if (auto refs = row.get("cve_refs"); refs) {
            for (const auto& tok : text::split(*refs, ' ')) {
                std::string id(text::trim(tok));
                if (!id.empty()) p.cve_refs.push_back(std::move(id));
            }
        }
        if (auto s = row.get("stored_score"); s && !text::trim(*s).empty()) {
            auto value = text::parse_double(*s);
            if (!value || *value < 0.0 || *value > 10.0)
                throw Error(ErrorKind::MalformedRow,
                            "policy '" + p.id + "': stored_score must be in [0.0, 10.0]");
            p.stored_score = *value;
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<TestCase> parse_testcases(std::string_view content, TableFormat format) {
    std::vector<TestCase> out;
    std::unordered_set<std::string> seen;
    size_t index = 0;
    for (const auto& row : table_rows(content, format, kTestCaseColumns, 8)) {
        ++index;
        TestCase tc;
        tc.id = text::trim(require(row, "id", index));
        check_unique(tc.id, seen, "test case");
        tc.name = row.get_or("name");
        tc.target = parse_endpoint(require(row, "target", index));
        tc.criteria = parse_policy_type(require(row, "criteria", index), tc.id);
        tc.pre = require(row, "pre", index);
        for (auto& tok : text::split_escaped(row.get_or("action"), ';')) {
            std::string t(text::trim(tok));
            if (!t.empty()) tc.action.push_back(std::move(t));
        }
        tc.post = require(row, "post", index);
        tc.expected = require(row, "expected", index);
        out.push_back(std::move(tc));
    }
    return out;
}

TableRecords parse_table(TableKind kind, std::string_view content, TableFormat format) {
    switch (kind) {
    case TableKind::Assets: return parse_assets(content, format);
    case TableKind::Connections: return parse_connections(content, format);
    case TableKind::Methods: return parse_methods(content, format);
    case TableKind::Policies: return parse_policies(content, format);
    case TableKind::TestCases: return parse_testcases(content, format);
    }
    throw Error(ErrorKind::Config, "unknown table kind");
}

// -- serialization -------------------------------------------------------------

namespace {

using Cells = std::vector<std::pair<std::string, std::string>>;

std::string cells_to_format(const std::vector<Cells>& rows,
                            const std::vector<std::string>& columns, size_t required_columns,
                            TableFormat format) {
    if (format == TableFormat::StructuredRecords) {
        std::vector<records::Record> recs;
        for (const auto& row : rows) {
            records::Record rec;
            for (const auto& [key, value] : row) rec.set(key, value);
            recs.push_back(std::move(rec));
        }
        return records::write(recs);
    }
    // CSV: fixed column order, optional tail columns kept only when used.
    size_t width = required_columns;
    for (const auto& row : rows) {
        for (size_t c = required_columns; c < columns.size(); ++c) {
            for (const auto& [key, value] : row) {
                if (key == columns[c] && !value.empty()) width = std::max(width, c + 1);
            }
        }
    }
    csv::Table table;
    table.header.assign(columns.begin(), columns.begin() + static_cast<long>(width));
    for (const auto& row : rows) {
        std::vector<std::string> out(width);
        for (const auto& [key, value] : row) {
            auto it = std::find(columns.begin(), columns.end(), key);
            size_t c = static_cast<size_t>(it - columns.begin());
            if (c < width) out[c] = value;
        }
        table.rows.push_back(std::move(out));
    }
    return csv::write(table);
}

}  // namespace

std::string serialize_assets(const std::vector<Asset>& assets, TableFormat format) {
    std::vector<Cells> rows;
    for (const auto& a : assets) {
        Cells row{{"id", a.id}, {"asset_type", std::string(to_string(a.type))}, {"name", a.name}};
        if (a.product) row.emplace_back("product", *a.product);
        if (a.version) row.emplace_back("version", a.version->raw);
        if (a.purdue_level) row.emplace_back("purdue_level", std::to_string(*a.purdue_level));
        rows.push_back(std::move(row));
    }
    return cells_to_format(rows, kAssetColumns, 3, format);
}

std::string serialize_connections(const std::vector<Connection>& connections,
                                  TableFormat format) {
    std::vector<Cells> rows;
    for (const auto& c : connections) {
        rows.push_back(Cells{{"id", c.id},
                             {"source", format_endpoint(c.source)},
                             {"destination", format_endpoint(c.destination)},
                             {"protocol", c.protocol}});
    }
    return cells_to_format(rows, kConnectionColumns, 4, format);
}

std::string serialize_methods(const std::vector<MethodOperation>& methods, TableFormat format) {
    std::vector<Cells> rows;
    for (const auto& m : methods) {
        Cells row{{"asset_id", m.asset_id},
                  {"name", m.name},
                  {"body", m.body},
                  {"kind", std::string(to_string(m.kind))}};
        if (m.language) row.emplace_back("language", *m.language);
        rows.push_back(std::move(row));
    }
    return cells_to_format(rows, kMethodColumns, 3, format);
}

std::string serialize_policies(const std::vector<Policy>& policies, TableFormat format) {
    std::vector<Cells> rows;
    for (const auto& p : policies) {
        Cells row{{"id", p.id},
                  {"name", p.name},
                  {"constraint", p.constraint_text},
                  {"policy_type", std::string(to_string(p.policy_type))}};
        if (!p.mitigations.empty()) {
            std::vector<std::string> entries;
            for (const auto& m : p.mitigations) entries.push_back(format_mitigation(m));
            row.emplace_back("mitigations", text::join_escaped(entries, '|'));
        }
        if (!p.cve_refs.empty()) {
            std::string refs;
            for (const auto& r : p.cve_refs) {
                if (!refs.empty()) refs.push_back(' ');
                refs += r;
            }
            row.emplace_back("cve_refs", refs);
        }
        if (p.stored_score) row.emplace_back("stored_score", text::format_double(*p.stored_score));
        rows.push_back(std::move(row));
    }
    return cells_to_format(rows, kPolicyColumns, 4, format);
}

std::string serialize_testcases(const std::vector<TestCase>& testcases, TableFormat format) {
    std::vector<Cells> rows;
    for (const auto& tc : testcases) {
        rows.push_back(Cells{{"id", tc.id},
                             {"name", tc.name},
                             {"target", format_endpoint(tc.target)},
                             {"criteria", std::string(to_string(tc.criteria))},
                             {"pre", tc.pre},
                             {"action", text::join_escaped(tc.action, ';')},
                             {"post", tc.post},
                             {"expected", tc.expected}});
    }
    return cells_to_format(rows, kTestCaseColumns, 8, format);
}

std::string serialize_table(const TableRecords& records, TableFormat format) {
    return std::visit(
        [&](const auto& list) {
            using T = std::decay_t<decltype(list)>;
            if constexpr (std::is_same_v<T, std::vector<Asset>>)
                return serialize_assets(list, format);
            else if constexpr (std::is_same_v<T, std::vector<Connection>>)
                return serialize_connections(list, format);
            else if constexpr (std::is_same_v<T, std::vector<MethodOperation>>)
                return serialize_methods(list, format);
            else if constexpr (std::is_same_v<T, std::vector<Policy>>)
                return serialize_policies(list, format);
            else
                return serialize_testcases(list, format);
        },
        records);
}

// -- validation -----------------------------------------------------------------

std::vector<Diagnostic> validate_inventory(const Inventory& inv) {
    std::vector<Diagnostic> diags;
    std::unordered_set<std::string> asset_ids;
    for (const auto& a : inv.assets) asset_ids.insert(a.id);

    std::unordered_set<std::string> connected;
    for (const auto& c : inv.connections) {
        for (const auto& endpoint : {c.source, c.destination}) {
            for (const auto& id : endpoint) {
                connected.insert(id);
                if (!asset_ids.count(id))
                    diags.push_back({Severity::Error, TableKind::Connections, c.id,
                                     "dangling reference " + id});
            }
        }
    }
    for (const auto& m : inv.methods) {
        if (!asset_ids.count(m.asset_id))
            diags.push_back({Severity::Error, TableKind::Methods, m.asset_id,
                             "method '" + m.name + "' references unknown asset " + m.asset_id});
    }
    for (const auto& tc : inv.testcases) {
        for (const auto& id : tc.target) {
            if (!asset_ids.count(id))
                diags.push_back({Severity::Error, TableKind::TestCases, tc.id,
                                 "target references unknown asset " + id});
        }
    }
    for (const auto& a : inv.assets) {
        if (!connected.count(a.id))
            diags.push_back({Severity::Warning, TableKind::Assets, a.id,
                             "asset is not referenced by any connection"});
    }
    for (const auto& p : inv.policies) {
        if (p.mitigations.empty())
            diags.push_back(
                {Severity::Warning, TableKind::Policies, p.id, "policy has no mitigations"});
    }

    std::sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return std::tie(a.table, a.record_id, a.message) <
               std::tie(b.table, b.record_id, b.message);
    });
    return diags;
}

std::string format_diagnostic(const Diagnostic& d) {
    std::string out = d.severity == Severity::Error ? "error" : "warning";
    out += " [";
    out += to_string(d.table);
    out += "/";
    out += d.record_id;
    out += "] ";
    out += d.message;
    return out;
}

}  // namespace otsectest::inventory
