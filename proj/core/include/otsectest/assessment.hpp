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

#include "otsectest/inventory.hpp"
#include "otsectest/version.hpp"

namespace otsectest::assessment {

// CVSS v3.1 base metrics.
enum class AttackVector { Network, Adjacent, Local, Physical };
enum class AttackComplexity { Low, High };
enum class PrivilegesRequired { None, Low, High };
enum class UserInteraction { None, Required };
enum class Scope { Unchanged, Changed };
enum class ImpactMetric { None, Low, High };

struct CvssVector {
    AttackVector av = AttackVector::Network;
    AttackComplexity ac = AttackComplexity::Low;
    PrivilegesRequired pr = PrivilegesRequired::None;
    UserInteraction ui = UserInteraction::None;
    Scope scope = Scope::Unchanged;
    ImpactMetric c = ImpactMetric::None;
    ImpactMetric i = ImpactMetric::None;
    ImpactMetric a = ImpactMetric::None;

    bool operator==(const CvssVector&) const = default;
};

/// Parses a `CVSS:3.1/AV:_/AC:_/PR:_/UI:_/S:_/C:_/I:_/A:_` string. Metrics may
/// appear in any order; the `CVSS:3.1` tag itself is optional on input.
CvssVector parse_cvss_vector(std::string_view text);

/// Canonical form, always tagged and in the standard metric order.
std::string format_cvss_vector(const CvssVector& v);

/// Base score per the v3.1 equations, rounded up to one decimal.
double base_score(const CvssVector& v) noexcept;

enum class SeverityRating { None, Low, Medium, High, Critical };

std::string_view to_string(SeverityRating r) noexcept;

/// Qualitative rating for a base score. Throws OutOfRange outside [0, 10].
SeverityRating severity_rating(double score);

struct CveRecord {
    std::string cve_id;
    std::string product;
    Version affected_low;
    Version affected_high;  // exclusive
    std::optional<CvssVector> vector;
    std::optional<double> stored_score;
    std::string summary;
    std::string mitigation;

    bool operator==(const CveRecord&) const = default;
};

struct CveMatch {
    CveRecord record;
    double effective_score = 0.0;
    /// Set when both a stored and a computed score exist and differ by > 0.5.
    bool score_divergence = false;

    bool operator==(const CveMatch&) const = default;
};

/// Loads a CVE snapshot from its record-block form (fields: cve, product,
/// affected_low, affected_high, vector, score, summary, mitigation).
std::vector<CveRecord> parse_cve_snapshot(std::string_view content);

std::string serialize_cve_snapshot(const std::vector<CveRecord>& db);

/// True when the two product names refer to the same product: compared
/// case- and whitespace-insensitively, the shorter must be a whole-word
/// prefix of the longer ("SIMATIC IT" covers "SIMATIC IT Production Suite",
/// "SIMATIC ITX" does not).
bool product_matches(std::string_view a, std::string_view b);

/// Records affecting the asset's product at its current version. Matches on
/// the normalized product token (either name a prefix of the other) and the
/// half-open interval [affected_low, affected_high). Sorted by effective
/// score descending, then id. An asset without product or version yields no
/// matches; when `diags` is given, a warning explains why.
std::vector<CveMatch> match_cves(const inventory::Asset& asset,
                                 const std::vector<CveRecord>& db,
                                 std::vector<inventory::Diagnostic>* diags = nullptr);

}  // namespace otsectest::assessment
