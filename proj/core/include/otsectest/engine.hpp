// Copyright 2026 The otsectest Authors
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

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "otsectest/assessment.hpp"
#include "otsectest/inventory.hpp"
#include "otsectest/model.hpp"

namespace otsectest::engine {

enum class Verdict { Pass, Fail, Error };

std::string_view to_string(Verdict v) noexcept;

/// Outcome of one test case. `observed` renders each identifier of the
/// post condition as "Name = value" after the actions ran. A Pass never
/// carries recommendations, and deltas only come from recommended policies.
/// `note` explains Error verdicts and records non-fatal faults (for example
/// a patch whose digest check failed).
struct TestReport {
    std::string test_id;
    Verdict verdict = Verdict::Error;
    bool pre_held = false;
    std::vector<std::string> observed;
    bool expected_held = false;
    std::vector<std::string> recommended;    // policy ids
    std::vector<std::string> matched_cves;   // cve ids, strongest first
    std::vector<model::ModelDelta> deltas;
    std::string note;

    bool operator==(const TestReport&) const = default;
};

/// Policies to suggest after a failed test: every policy whose type equals
/// the test's criteria, plus every SafetySecurity policy, ordered by id.
/// Empty for a Pass.
std::vector<std::string> recommend(const inventory::TestCase& tc, Verdict verdict,
                                   const std::vector<inventory::Policy>& policies);

/// Model changes a recommended policy implies for the test's target assets.
/// A patch mitigation becomes SetVersion on each target whose product
/// matches and whose version is missing or behind the fix; network and
/// procedure mitigations become Annotate on every target. Patch entries
/// carrying a digest are verified first (DigestMismatch on failure). Each
/// delta's provenance is the policy id.
std::vector<model::ModelDelta> derive_deltas(const inventory::Policy& policy,
                                             const inventory::TestCase& tc,
                                             const model::SystemModel& m);

/// Executes one test case against the model: binds the target's attributes
/// and behavior into an environment, checks the precondition, performs the
/// action tokens (machine inputs step the behavior machine; named checks
/// like "Current Version Check" bind derived values; stub behaviors absorb
/// anything else), then evaluates the expected condition. Pass iff it holds.
/// On Fail the report carries recommended policies and their deltas; when
/// any recommended policy yields a patch delta, only the patch-bearing
/// policies are kept. Faults (unknown asset, undefined action, unbound
/// names, unmet precondition) yield an Error verdict with a note instead of
/// throwing.
TestReport run_test(const inventory::TestCase& tc, const model::SystemModel& m,
                    const std::vector<inventory::Policy>& policies,
                    const std::vector<assessment::CveRecord>& cve_db);

/// Runs every test concurrently against the shared immutable model and
/// returns the reports sorted by test id.
std::vector<TestReport> run_all(const std::vector<inventory::TestCase>& tests,
                                const model::SystemModel& m,
                                const std::vector<inventory::Policy>& policies,
                                const std::vector<assessment::CveRecord>& cve_db);

enum class ReportFormat { Text, Records };

/// One block per report with fields test, verdict, observed, expected,
/// recommended, cves, deltas (and note when present). The Records variant
/// is machine-readable; Text is for people.
std::string format_reports(const std::vector<TestReport>& reports, ReportFormat format);

/// Style lint for pseudo-code method bodies: flags lines over 120
/// characters (warning) and unbalanced IF/END_IF pairs (error).
std::vector<inventory::Diagnostic> lint_pseudocode(const inventory::MethodOperation& method);

}  // namespace otsectest::engine
