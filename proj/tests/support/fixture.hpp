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

#include <string>

#include "otsectest/assessment.hpp"
#include "otsectest/inventory.hpp"
#include "otsectest/model.hpp"

namespace testsupport {

/// Directory holding the checked-in test data (compile-time constant).
std::string data_dir();

/// The sample plant fixture: a fifteen-asset inventory with two test cases.
std::string usecase_dir();

otsectest::inventory::Inventory load_usecase();
std::vector<otsectest::assessment::CveRecord> load_usecase_cves();
otsectest::model::SystemModel build_usecase_model();

/// Fresh empty directory under the system temp root, unique per call.
std::string temp_dir(const std::string& label);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
bool file_exists(const std::string& path);

/// Copies every regular file of `from` into a fresh temp dir and returns it.
std::string copy_dir(const std::string& from, const std::string& label);

struct CliResult {
    int exit_code = -1;
    std::string output;  // stdout and stderr, interleaved
};

/// Runs the installed CLI binary with `args` appended (shell-quoted by the
/// caller where needed). `env` entries of the form NAME=value are exported
/// for the child; NAME= alone unsets.
CliResult run_cli(const std::string& args, const std::vector<std::string>& env = {});

}  // namespace testsupport
