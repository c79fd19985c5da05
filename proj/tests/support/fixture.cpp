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
#include "support/fixture.hpp"

#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "otsectest/model.hpp"
#include "otsectest/pipeline.hpp"

namespace fs = std::filesystem;

namespace testsupport {

std::string data_dir() { return OTSECTEST_DATA_DIR; }

std::string usecase_dir() { return data_dir() + "/usecase"; }

otsectest::inventory::Inventory load_usecase() {
    otsectest::pipeline::RunConfig cfg;
    cfg.inventory_dir = usecase_dir();
    return otsectest::pipeline::load_inventory(cfg);
}

std::vector<otsectest::assessment::CveRecord> load_usecase_cves() {
    otsectest::pipeline::RunConfig cfg;
    cfg.cve_snapshot = usecase_dir() + "/cve_snapshot.rec";
    return otsectest::pipeline::load_cve_snapshot(cfg);
}

otsectest::model::SystemModel build_usecase_model() {
    return otsectest::model::build_model(load_usecase());
}

std::string temp_dir(const std::string& label) {
    static std::atomic<unsigned> counter{0};
    fs::path dir = fs::temp_directory_path() /
                   ("otsectest-" + label + "-" + std::to_string(::getpid()) + "-" +
                    std::to_string(counter.fetch_add(1)));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

bool file_exists(const std::string& path) { return fs::exists(path); }

std::string copy_dir(const std::string& from, const std::string& label) {
    std::string to = temp_dir(label);
    for (const auto& entry : fs::directory_iterator(from)) {
        if (entry.is_regular_file())
            fs::copy_file(entry.path(), fs::path(to) / entry.path().filename());
    }
    return to;
}

CliResult run_cli(const std::string& args, const std::vector<std::string>& env) {
    std::string capture = temp_dir("cli-capture") + "/output.txt";
    std::string command;
    for (const auto& setting : env) {
        auto eq = setting.find('=');
        if (eq != std::string::npos && eq + 1 == setting.size())
            command += "unset " + setting.substr(0, eq) + "; ";
        else
            command += "export " + setting + "; ";
    }
    command += std::string(OTSECTEST_CLI_PATH) + " " + args + " > '" + capture + "' 2>&1";
    int status = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.output = read_file(capture);
    return result;
}

}  // namespace testsupport
