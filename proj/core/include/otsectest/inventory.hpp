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
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "otsectest/version.hpp"

namespace otsectest::inventory {

enum class AssetType { Hardware, Software };
enum class MethodKind { NumericRange, PseudoCode, Textual };
enum class PolicyType { Safety, Security, SafetySecurity };
enum class TableKind { Assets, Connections, Methods, Policies, TestCases };
enum class TableFormat { Csv, StructuredRecords };

std::string_view to_string(AssetType t) noexcept;
std::string_view to_string(MethodKind k) noexcept;
std::string_view to_string(PolicyType t) noexcept;
std::string_view to_string(TableKind k) noexcept;

struct Asset {
    std::string id;
    AssetType type = AssetType::Hardware;
    std::string name;
    std::optional<std::string> product;  // CVE match key, decoupled from name
    std::optional<assessment::Version> version;
    std::optional<int> purdue_level;  // 0..5

    bool operator==(const Asset&) const = default;
};

struct Connection {
    std::string id;
    std::set<std::string> source;       // composite endpoints: "S01+S02+H10"
    std::set<std::string> destination;
    std::string protocol;  // open token set: HART, ETHERNET, ETHERCAT, ...

    bool operator==(const Connection&) const = default;
};

struct NumericRange {
    double low = 0;
    double high = 0;
    std::string unit;

    bool operator==(const NumericRange&) const = default;
};

struct MethodOperation {
    std::string asset_id;
    std::string name;
    MethodKind kind = MethodKind::Textual;
    std::string body;
    std::optional<NumericRange> range;   // populated when kind == NumericRange
    std::optional<std::string> language;

    bool operator==(const MethodOperation&) const = default;
};

struct PatchUpdate {
    std::string product;
    assessment::Version fixed_version;
    std::optional<std::string> sha256;  // hex digest of "<product>\n<version raw>"

    bool operator==(const PatchUpdate&) const = default;
};

struct NetworkRestriction {
    std::string text;
    bool operator==(const NetworkRestriction&) const = default;
};

struct ProcedureCheck {
    std::string text;
    bool operator==(const ProcedureCheck&) const = default;
};

using Mitigation = std::variant<PatchUpdate, NetworkRestriction, ProcedureCheck>;

struct Policy {
    std::string id;
    std::string name;
    std::string constraint_text;
    PolicyType policy_type = PolicyType::Safety;
    std::vector<Mitigation> mitigations;
    std::vector<std::string> cve_refs;
    std::optional<double> stored_score;  // 0.0..10.0

    bool operator==(const Policy&) const = default;
};

struct TestCase {
    std::string id;
    std::string name;
    std::set<std::string> target;
    PolicyType criteria = PolicyType::Safety;
    std::string pre;       // condition-expression text (engine grammar)
    std::vector<std::string> action;
    std::string post;
    std::string expected;

    bool operator==(const TestCase&) const = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    Severity severity = Severity::Error;
    TableKind table = TableKind::Assets;
    std::string record_id;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

struct Inventory {
    std::vector<Asset> assets;
    std::vector<Connection> connections;
    std::vector<MethodOperation> methods;
    std::vector<Policy> policies;
    std::vector<TestCase> testcases;

    const Asset* find_asset(std::string_view id) const noexcept;
};

// -- parsing ---------------------------------------------------------------

/// Splits a composite endpoint token on '+', trims components, returns the
/// id set. Throws Error{EmptyComponent} on empty components ("H07++H09").
std::set<std::string> parse_endpoint(std::string_view token);

std::string format_endpoint(const std::set<std::string>& ids);

/// Parses "from <number> <unit> to <number> <unit>". Bounds are normalized
/// to the larger-magnitude unit when the units differ by an SI prefix on
/// the same base unit (20 mbar / 700 bar -> 0.02 / 700 bar).
/// Throws NotARange when the pattern fails or bounds do not increase,
/// UnitMismatch when the units are not convertible.
NumericRange parse_numeric_range(std::string_view body);

using TableRecords = std::variant<std::vector<Asset>, std::vector<Connection>,
                                  std::vector<MethodOperation>, std::vector<Policy>,
                                  std::vector<TestCase>>;

/// Parses one table file. Records come back in file order with all
/// per-record invariants checked; cross-table checks belong to
/// validate_inventory. Errors: MalformedRow (with the record index and a
/// reason), DuplicateId within the file, UnknownEnumValue.
TableRecords parse_table(TableKind kind, std::string_view content, TableFormat format);

std::string serialize_table(const TableRecords& records, TableFormat format);

std::vector<Asset> parse_assets(std::string_view content, TableFormat format);
std::vector<Connection> parse_connections(std::string_view content, TableFormat format);
std::vector<MethodOperation> parse_methods(std::string_view content, TableFormat format);
std::vector<Policy> parse_policies(std::string_view content, TableFormat format);
std::vector<TestCase> parse_testcases(std::string_view content, TableFormat format);

std::string serialize_assets(const std::vector<Asset>& records, TableFormat format);
std::string serialize_connections(const std::vector<Connection>& records, TableFormat format);
std::string serialize_methods(const std::vector<MethodOperation>& records, TableFormat format);
std::string serialize_policies(const std::vector<Policy>& records, TableFormat format);
std::string serialize_testcases(const std::vector<TestCase>& records, TableFormat format);

/// Mitigation cell grammar: entries are
///   patch <product> -> <version> [sha256=<64 hex>]
///   network <text>
///   procedure <text>
Mitigation parse_mitigation(std::string_view entry);
std::string format_mitigation(const Mitigation& m);

// -- validation ------------------------------------------------------------

/// Cross-table referential checks. Errors: dangling asset references from
/// connections, methods and test-case targets. Warnings: assets with no
/// connections, policies with no mitigations. Result is sorted by
/// (table kind, record id, message); an empty Error set means consistent.
std::vector<Diagnostic> validate_inventory(const Inventory& inv);

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

std::string format_diagnostic(const Diagnostic& d);

}  // namespace otsectest::inventory
