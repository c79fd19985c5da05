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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "otsectest/assessment.hpp"
#include "otsectest/engine.hpp"
#include "otsectest/inventory.hpp"

namespace otsectest::pipeline {

struct RunConfig {
    std::string inventory_dir = ".";
    std::string cve_snapshot;  // empty: no snapshot loaded
    std::string output_dir = "out";
    int max_path_len = 8;
    int state_budget = 64;
    engine::ReportFormat report_format = engine::ReportFormat::Text;
};

/// Applies one `key = value` setting (keys: inventory, cve-snapshot, out,
/// format, max-path-len, state-budget). Returns false for unknown keys,
/// throws Error{Config} on bad values.
bool set_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

/// Merges a config file of `key = value` lines (# comments, blank lines
/// allowed) into `cfg`. Throws Error{Io} when unreadable, Error{Config} on
/// malformed lines or unknown keys.
void load_config_file(RunConfig& cfg, const std::string& path);

/// Loads the inventory tables from cfg.inventory_dir. Each table reads from
/// <name>.csv or <name>.rec; assets is required, the other tables default
/// to empty when absent.
inventory::Inventory load_inventory(const RunConfig& cfg);

/// Loads cfg.cve_snapshot; an unset path yields an empty database.
std::vector<assessment::CveRecord> load_cve_snapshot(const RunConfig& cfg);

// Subcommand drivers. Each prints progress and diagnostics to `out` and
// returns a process exit code: 0 ok, 1 test failures, 2 faults.

/// Checks the inventory: referential integrity, condition syntax in test
/// cases, pseudo-code lint. Exit 0 without errors, 2 otherwise.
int cmd_validate(const RunConfig& cfg, std::ostream& out);

/// Builds the model and writes <out>/model.aml. With both endpoints given,
/// also lists attack paths between them (bounded by max_path_len).
int cmd_model(const RunConfig& cfg, std::ostream& out, const std::string& paths_from = "",
              const std::string& paths_to = "");

/// Writes state-cover and transition-tour sequences for every machine
/// behavior to <out>/sequences.txt.
int cmd_testgen(const RunConfig& cfg, std::ostream& out);

/// Runs all test cases and writes <out>/reports.txt (or .rec). Exit 0
/// when everything passes, 1 on failures, 2 on error verdicts.
int cmd_run(const RunConfig& cfg, std::ostream& out);

/// Matches every asset against the CVE snapshot and writes
/// <out>/assessment.txt (or .rec).
int cmd_assess(const RunConfig& cfg, std::ostream& out);

/// Full chain: validate, model, testgen, run, assess; applies derived
/// deltas and writes <out>/model.rev1.aml when any test produced them.
int cmd_pipeline(const RunConfig& cfg, std::ostream& out);

}  // namespace otsectest::pipeline
