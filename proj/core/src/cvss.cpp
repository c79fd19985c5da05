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
#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "otsectest/assessment.hpp"
#include "otsectest/error.hpp"
#include "otsectest/text.hpp"

namespace otsectest::assessment {

namespace {

template <typename E>
E decode(std::string_view metric, std::string_view code,
         std::initializer_list<std::pair<std::string_view, E>> table) {
    for (const auto& [key, value] : table)
        if (code == key) return value;
    throw Error(ErrorKind::MalformedVector, "metric " + std::string(metric) +
                                                " has no value '" + std::string(code) + "'");
}

}  // namespace

CvssVector parse_cvss_vector(std::string_view input) {
    std::string_view s = text::trim(input);
    if (text::starts_with_ci(s, "CVSS:3.1/"))
        s = s.substr(9);
    else if (text::starts_with_ci(s, "CVSS:"))
        throw Error(ErrorKind::MalformedVector, "only CVSS:3.1 vectors are supported");

    CvssVector v;
    std::set<std::string> seen;
    for (const auto& part : text::split(s, '/')) {
        size_t colon = part.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 >= part.size())
            throw Error(ErrorKind::MalformedVector, "expected METRIC:VALUE, got '" + part + "'");
        std::string metric = text::to_lower(part.substr(0, colon));
        std::string code = part.substr(colon + 1);
        if (!seen.insert(metric).second)
            throw Error(ErrorKind::DuplicateMetric,
                        "metric " + part.substr(0, colon) + " appears twice");
        if (metric == "av")
            v.av = decode<AttackVector>("AV", code,
                                        {{"N", AttackVector::Network},
                                         {"A", AttackVector::Adjacent},
                                         {"L", AttackVector::Local},
                                         {"P", AttackVector::Physical}});
        else if (metric == "ac")
            v.ac = decode<AttackComplexity>(
                "AC", code, {{"L", AttackComplexity::Low}, {"H", AttackComplexity::High}});
        else if (metric == "pr")
            v.pr = decode<PrivilegesRequired>("PR", code,
                                              {{"N", PrivilegesRequired::None},
                                               {"L", PrivilegesRequired::Low},
                                               {"H", PrivilegesRequired::High}});
        else if (metric == "ui")
            v.ui = decode<UserInteraction>(
                "UI", code, {{"N", UserInteraction::None}, {"R", UserInteraction::Required}});
        else if (metric == "s")
            v.scope = decode<Scope>("S", code, {{"U", Scope::Unchanged}, {"C", Scope::Changed}});
        else if (metric == "c" || metric == "i" || metric == "a") {
            auto value = decode<ImpactMetric>(
                part.substr(0, colon), code,
                {{"N", ImpactMetric::None}, {"L", ImpactMetric::Low}, {"H", ImpactMetric::High}});
            (metric == "c" ? v.c : metric == "i" ? v.i : v.a) = value;
        } else {
            throw Error(ErrorKind::MalformedVector,
                        "unknown metric '" + part.substr(0, colon) + "'");
        }
    }
    for (std::string_view metric : {"av", "ac", "pr", "ui", "s", "c", "i", "a"}) {
        if (!seen.count(std::string(metric))) {
            std::string upper(metric);
            for (auto& ch : upper) ch = static_cast<char>(std::toupper(ch));
            throw Error(ErrorKind::MissingMetric, "metric " + upper + " is missing");
        }
    }
    return v;
}

std::string format_cvss_vector(const CvssVector& v) {
    auto impact = [](ImpactMetric m) {
        return m == ImpactMetric::None ? "N" : m == ImpactMetric::Low ? "L" : "H";
    };
    std::string out = "CVSS:3.1/AV:";
    out += v.av == AttackVector::Network    ? "N"
           : v.av == AttackVector::Adjacent ? "A"
           : v.av == AttackVector::Local    ? "L"
                                            : "P";
    out += "/AC:";
    out += v.ac == AttackComplexity::Low ? "L" : "H";
    out += "/PR:";
    out += v.pr == PrivilegesRequired::None ? "N" : v.pr == PrivilegesRequired::Low ? "L" : "H";
    out += "/UI:";
    out += v.ui == UserInteraction::None ? "N" : "R";
    out += "/S:";
    out += v.scope == Scope::Unchanged ? "U" : "C";
    out += "/C:";
    out += impact(v.c);
    out += "/I:";
    out += impact(v.i);
    out += "/A:";
    out += impact(v.a);
    return out;
}

namespace {

// Final rounding: up to one decimal. Scaling to 1e5 and rounding to the
// nearest integer first absorbs representation error, so 8.6000000001 stays
// at 8.6 instead of bumping to 8.7.
double round_up(double x) noexcept {
    long long scaled = std::llround(x * 100000.0);
    if (scaled % 10000 == 0) return static_cast<double>(scaled) / 100000.0;
    return (std::floor(static_cast<double>(scaled) / 10000.0) + 1.0) / 10.0;
}

double impact_weight(ImpactMetric m) noexcept {
    switch (m) {
    case ImpactMetric::None: return 0.0;
    case ImpactMetric::Low: return 0.22;
    case ImpactMetric::High: return 0.56;
    }
    return 0.0;
}

}  // namespace

double base_score(const CvssVector& v) noexcept {
    const double av = v.av == AttackVector::Network    ? 0.85
                      : v.av == AttackVector::Adjacent ? 0.62
                      : v.av == AttackVector::Local    ? 0.55
                                                       : 0.2;
    const double ac = v.ac == AttackComplexity::Low ? 0.77 : 0.44;
    const bool changed = v.scope == Scope::Changed;
    const double pr = v.pr == PrivilegesRequired::None  ? 0.85
                      : v.pr == PrivilegesRequired::Low ? (changed ? 0.68 : 0.62)
                                                        : (changed ? 0.5 : 0.27);
    const double ui = v.ui == UserInteraction::None ? 0.85 : 0.62;

    const double iss = 1.0 - (1.0 - impact_weight(v.c)) * (1.0 - impact_weight(v.i)) *
                                 (1.0 - impact_weight(v.a));
    const double impact = changed
                              ? 7.52 * (iss - 0.029) - 3.25 * std::pow(iss - 0.02, 15.0)
                              : 6.42 * iss;
    if (impact <= 0.0) return 0.0;

    const double exploitability = 8.22 * av * ac * pr * ui;
    const double raw = changed ? std::min(1.08 * (impact + exploitability), 10.0)
                               : std::min(impact + exploitability, 10.0);
    return round_up(raw);
}

std::string_view to_string(SeverityRating r) noexcept {
    switch (r) {
    case SeverityRating::None: return "None";
    case SeverityRating::Low: return "Low";
    case SeverityRating::Medium: return "Medium";
    case SeverityRating::High: return "High";
    case SeverityRating::Critical: return "Critical";
    }
    return "None";
}

SeverityRating severity_rating(double score) {
    if (!(score >= 0.0 && score <= 10.0))
        throw Error(ErrorKind::OutOfRange,
                    "score " + text::format_double(score) + " is outside [0.0, 10.0]");
    if (score == 0.0) return SeverityRating::None;
    if (score < 4.0) return SeverityRating::Low;
    if (score < 7.0) return SeverityRating::Medium;
    if (score < 9.0) return SeverityRating::High;
    return SeverityRating::Critical;
}

}  // namespace otsectest::assessment
