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

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "otsectest/error.hpp"
#include "otsectest/pipeline.hpp"

namespace {

struct Flags {
    std::string config;
    std::string inventory;
    std::string cve_snapshot;
    std::string out;
    std::string format;
    std::string paths_from;
    std::string paths_to;
    int max_path_len = 0;
    int state_budget = 0;
};

CLI::App* add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "config file of 'key = value' lines");
    sub->add_option("--inventory", f.inventory, "directory holding the inventory tables");
    sub->add_option("--cve-snapshot", f.cve_snapshot, "CVE snapshot records file");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--format", f.format, "report format")
        ->check(CLI::IsMember({"text", "records"}));
    sub->add_option("--max-path-len", f.max_path_len, "attack path length bound (edges)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--state-budget", f.state_budget, "machine unfolding state budget")
        ->check(CLI::PositiveNumber);
    return sub;
}

}  // namespace

int main(int argc, char** argv) {
    using otsectest::pipeline::RunConfig;

    CLI::App app{"model-based security testing for operational technology"};
    app.require_subcommand(1);
    Flags f;

    CLI::App* validate =
        add_common(app.add_subcommand("validate", "check the inventory tables"), f);
    CLI::App* model =
        add_common(app.add_subcommand("model", "build and export the system model"), f);
    model->add_option("--paths-from", f.paths_from, "attack path start asset");
    model->add_option("--paths-to", f.paths_to, "attack path goal asset");
    CLI::App* testgen =
        add_common(app.add_subcommand("testgen", "generate machine test sequences"), f);
    CLI::App* run = add_common(app.add_subcommand("run", "execute the test cases"), f);
    CLI::App* assess =
        add_common(app.add_subcommand("assess", "match assets against the CVE snapshot"), f);
    CLI::App* pipe =
        add_common(app.add_subcommand("pipeline", "full flow from validation to assessment"), f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    RunConfig cfg;
    try {
        if (sub->count("--config")) {
            otsectest::pipeline::load_config_file(cfg, f.config);
        } else if (const char* env = std::getenv("OTSECTEST_CONFIG"); env && *env) {
            otsectest::pipeline::load_config_file(cfg, env);
        }
        if (sub->count("--inventory")) cfg.inventory_dir = f.inventory;
        if (sub->count("--cve-snapshot")) cfg.cve_snapshot = f.cve_snapshot;
        if (sub->count("--out")) cfg.output_dir = f.out;
        if (sub->count("--format"))
            otsectest::pipeline::set_config_value(cfg, "format", f.format);
        if (sub->count("--max-path-len")) cfg.max_path_len = f.max_path_len;
        if (sub->count("--state-budget")) cfg.state_budget = f.state_budget;

        if (sub == validate) return otsectest::pipeline::cmd_validate(cfg, std::cout);
        if (sub == model)
            return otsectest::pipeline::cmd_model(cfg, std::cout, f.paths_from, f.paths_to);
        if (sub == testgen) return otsectest::pipeline::cmd_testgen(cfg, std::cout);
        if (sub == run) return otsectest::pipeline::cmd_run(cfg, std::cout);
        if (sub == assess) return otsectest::pipeline::cmd_assess(cfg, std::cout);
        if (sub == pipe) return otsectest::pipeline::cmd_pipeline(cfg, std::cout);
    } catch (const otsectest::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;  // unreachable: require_subcommand guarantees a match
}
