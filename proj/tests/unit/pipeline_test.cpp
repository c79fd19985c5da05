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
#include <doctest.h>

#include <sstream>

#include "support/fixture.hpp"
#include "otsectest/error.hpp"
#include "otsectest/pipeline.hpp"
#include "otsectest/records.hpp"

using namespace otsectest;
using namespace otsectest::pipeline;

namespace {

RunConfig usecase_config(const std::string& label) {
    RunConfig cfg;
    cfg.inventory_dir = testsupport::usecase_dir();
    cfg.cve_snapshot = testsupport::usecase_dir() + "/cve_snapshot.rec";
    cfg.output_dir = testsupport::temp_dir(label);
    return cfg;
}

/// Minimal inventory directory: a header-only asset table, nothing else.
std::string empty_inventory_dir(const std::string& label) {
    std::string dir = testsupport::temp_dir(label);
    testsupport::write_file(dir + "/assets.csv", "id,asset_type,name\n");
    return dir;
}

}  // namespace

TEST_SUITE("pipeline") {
    TEST_CASE("every config key is settable; unknown keys are reported, not fatal") {
        RunConfig cfg;
        CHECK(set_config_value(cfg, "inventory", "plant"));
        CHECK(cfg.inventory_dir == "plant");
        CHECK(set_config_value(cfg, "cve-snapshot", "snap.rec"));
        CHECK(cfg.cve_snapshot == "snap.rec");
        CHECK(set_config_value(cfg, "out", "results"));
        CHECK(cfg.output_dir == "results");
        CHECK(set_config_value(cfg, "format", "records"));
        CHECK(cfg.report_format == engine::ReportFormat::Records);
        CHECK(set_config_value(cfg, "format", "Text"));
        CHECK(cfg.report_format == engine::ReportFormat::Text);
        CHECK(set_config_value(cfg, "max-path-len", "5"));
        CHECK(cfg.max_path_len == 5);
        CHECK(set_config_value(cfg, "state-budget", "128"));
        CHECK(cfg.state_budget == 128);

        CHECK_FALSE(set_config_value(cfg, "colour", "red"));
        CHECK_THROWS_AS(set_config_value(cfg, "format", "xml"), Error);
        CHECK_THROWS_AS(set_config_value(cfg, "max-path-len", "0"), Error);
        CHECK_THROWS_AS(set_config_value(cfg, "state-budget", "many"), Error);
        try {
            set_config_value(cfg, "state-budget", "many");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Config);
        }
    }

    TEST_CASE("a config file merges key = value lines and skips comments") {
        std::string dir = testsupport::temp_dir("pipeline-config");
        std::string path = dir + "/run.conf";
        testsupport::write_file(path,
                                "# sample run\n"
                                "\n"
                                "inventory = plant\n"
                                "max-path-len = 4\n");
        RunConfig cfg;
        load_config_file(cfg, path);
        CHECK(cfg.inventory_dir == "plant");
        CHECK(cfg.max_path_len == 4);
        CHECK(cfg.state_budget == 64);  // untouched default

        testsupport::write_file(path, "inventory = plant\nwat = 1\n");
        CHECK_THROWS_WITH_AS(load_config_file(cfg, path),
                             doctest::Contains(":2: unknown key 'wat'"), Error);
        testsupport::write_file(path, "just words\n");
        CHECK_THROWS_WITH_AS(load_config_file(cfg, path),
                             doctest::Contains("expected 'key = value'"), Error);
        CHECK_THROWS_AS(load_config_file(cfg, dir + "/absent.conf"), Error);
    }

    TEST_CASE("the sample inventory loads from mixed table formats") {
        RunConfig cfg;
        cfg.inventory_dir = testsupport::usecase_dir();
        inventory::Inventory inv = load_inventory(cfg);
        CHECK(inv.assets.size() == 15);
        CHECK(inv.connections.size() == 11);
        CHECK(inv.methods.size() == 4);
        CHECK(inv.policies.size() == 3);
        CHECK(inv.testcases.size() == 2);
    }

    TEST_CASE("only the asset table is mandatory") {
        RunConfig cfg;
        cfg.inventory_dir = empty_inventory_dir("pipeline-optional");
        inventory::Inventory inv = load_inventory(cfg);
        CHECK(inv.assets.empty());
        CHECK(inv.connections.empty());
        CHECK(inv.testcases.empty());

        cfg.inventory_dir = testsupport::temp_dir("pipeline-missing");
        CHECK_THROWS_WITH_AS(load_inventory(cfg), doctest::Contains("file not found"), Error);
    }

    TEST_CASE("an unset snapshot path yields an empty database") {
        RunConfig cfg;
        CHECK(load_cve_snapshot(cfg).empty());
        cfg.cve_snapshot = testsupport::usecase_dir() + "/cve_snapshot.rec";
        CHECK(load_cve_snapshot(cfg).size() == 3);
    }

    TEST_CASE("validation passes the sample plant with two warnings") {
        RunConfig cfg = usecase_config("pipeline-validate");
        std::ostringstream out;
        CHECK(cmd_validate(cfg, out) == 0);
        CHECK(out.str().find("validation: 0 error(s), 2 warning(s)") != std::string::npos);
    }

    TEST_CASE("validation reports condition syntax errors per test case") {
        std::string dir = testsupport::copy_dir(testsupport::usecase_dir(), "pipeline-badpre");
        std::string tests = testsupport::read_file(dir + "/testcases.rec");
        testsupport::write_file(dir + "/testcases.rec",
                                tests.replace(tests.find("pre: Asset Type = \"Hardware\""),
                                              std::string("pre: Asset Type = \"Hardware\"").size(),
                                              "pre: = 5"));
        RunConfig cfg;
        cfg.inventory_dir = dir;
        cfg.output_dir = testsupport::temp_dir("pipeline-badpre-out");
        std::ostringstream out;
        CHECK(cmd_validate(cfg, out) == 2);
        CHECK(out.str().find("error [testcases/T01] pre: ") != std::string::npos);
    }

    TEST_CASE("validation fails on dangling references") {
        std::string dir = testsupport::copy_dir(testsupport::usecase_dir(), "pipeline-dangling");
        std::string conns = testsupport::read_file(dir + "/connections.csv");
        testsupport::write_file(dir + "/connections.csv", conns + "C99,H01,H99,MODBUS\n");
        RunConfig cfg;
        cfg.inventory_dir = dir;
        std::ostringstream out;
        CHECK(cmd_validate(cfg, out) == 2);
        CHECK(out.str().find("dangling reference H99") != std::string::npos);
    }

    TEST_CASE("the model command exports the plant and lists attack paths") {
        RunConfig cfg = usecase_config("pipeline-model");
        std::ostringstream out;
        CHECK(cmd_model(cfg, out, "H10", "H07") == 0);
        CHECK(out.str().find("model: 12 node(s), 11 edge(s)") != std::string::npos);
        CHECK(out.str().find("attack paths H10 -> H07 (max 8 edges): 1") != std::string::npos);
        CHECK(out.str().find("H10+S01+S02 -C09(PROFINET)- H09 -C07(PROFINET)- H07") !=
              std::string::npos);
        CHECK(testsupport::read_file(cfg.output_dir + "/model.aml").find("<InstanceHierarchy") !=
              std::string::npos);
    }

    TEST_CASE("generated sequences cover both machine behaviors completely") {
        RunConfig cfg = usecase_config("pipeline-testgen");
        std::ostringstream out;
        CHECK(cmd_testgen(cfg, out) == 0);
        CHECK(out.str().find("sequences for 2 machine(s)") != std::string::npos);
        CHECK(testsupport::read_file(cfg.output_dir + "/sequences.txt") ==
              "machine H04\n"
              "  states: 3, transitions: 3\n"
              "  cover run@cycle=0: (empty)\n"
              "  cover run@cycle=1: scan\n"
              "  cover run@cycle=2: scan scan\n"
              "  tour: scan scan halt\n"
              "  coverage: 1\n"
              "\n"
              "machine H07\n"
              "  states: 2, transitions: 4\n"
              "  cover normal: (empty)\n"
              "  cover tripped: shutdown\n"
              "  tour: reset shutdown reset shutdown shutdown\n"
              "  coverage: 1\n");
    }

    TEST_CASE("the run command reports one failing test") {
        RunConfig cfg = usecase_config("pipeline-run");
        std::ostringstream out;
        CHECK(cmd_run(cfg, out) == 1);
        CHECK(out.str().find("T01: Pass") != std::string::npos);
        CHECK(out.str().find("T02: Fail") != std::string::npos);
        CHECK(out.str().find("2 report(s)") != std::string::npos);
        CHECK(testsupport::read_file(cfg.output_dir + "/reports.txt")
                  .find("recommended: P02") != std::string::npos);
    }

    TEST_CASE("the assessment lists findings in inventory order") {
        RunConfig cfg = usecase_config("pipeline-assess");
        std::ostringstream out;
        CHECK(cmd_assess(cfg, out) == 0);
        CHECK(out.str().find("assessment: 2 finding(s) across 15 asset(s)") !=
              std::string::npos);
        std::string doc = testsupport::read_file(cfg.output_dir + "/assessment.txt");
        CHECK(doc.find("CVE-2019-10943 7.5 High") != std::string::npos);
        CHECK(doc.find("CVE-2019-6568 7.5 High") != std::string::npos);
        CHECK(doc.find("S02 (SIMATIC IT Production Suite V7.0): no known vulnerabilities") !=
              std::string::npos);
        CHECK(doc.find("H01: skipped (no product or version)") != std::string::npos);
        // Ordering matches the asset table.
        CHECK(doc.find("H01:") < doc.find("H04 ("));
        CHECK(doc.find("H04 (") < doc.find("S01 ("));
    }

    TEST_CASE("the full pipeline chains every stage and persists the revised model") {
        RunConfig cfg = usecase_config("pipeline-full");
        std::ostringstream out;
        CHECK(cmd_pipeline(cfg, out) == 1);
        for (const char* name : {"model.aml", "sequences.txt", "reports.txt",
                                 "assessment.txt", "model.rev1.aml"})
            CHECK(testsupport::file_exists(cfg.output_dir + "/" + name));
        CHECK(out.str().find("applied 1 delta(s)") != std::string::npos);
        std::string revised = testsupport::read_file(cfg.output_dir + "/model.rev1.aml");
        CHECK(revised.find("revision=\"1\"") != std::string::npos);
        CHECK(revised.find("V7.1 Upd3") != std::string::npos);
        // The original export still shows the lagging version.
        CHECK(testsupport::read_file(cfg.output_dir + "/model.aml").find("V7.1 Upd3") ==
              std::string::npos);
    }

    TEST_CASE("identical inputs produce byte-identical outputs") {
        RunConfig first = usecase_config("pipeline-repeat-a");
        RunConfig second = usecase_config("pipeline-repeat-b");
        std::ostringstream out_a, out_b;
        CHECK(cmd_pipeline(first, out_a) == 1);
        CHECK(cmd_pipeline(second, out_b) == 1);
        for (const char* name : {"model.aml", "sequences.txt", "reports.txt",
                                 "assessment.txt", "model.rev1.aml"})
            CHECK(testsupport::read_file(first.output_dir + "/" + name) ==
                  testsupport::read_file(second.output_dir + "/" + name));
    }

    TEST_CASE("an empty inventory runs the pipeline cleanly") {
        RunConfig cfg;
        cfg.inventory_dir = empty_inventory_dir("pipeline-empty");
        cfg.output_dir = testsupport::temp_dir("pipeline-empty-out");
        std::ostringstream out;
        CHECK(cmd_pipeline(cfg, out) == 0);
        CHECK(out.str().find("validation: 0 error(s), 0 warning(s)") != std::string::npos);
        CHECK(out.str().find("0 report(s)") != std::string::npos);
        CHECK_FALSE(testsupport::file_exists(cfg.output_dir + "/model.rev1.aml"));
    }

    TEST_CASE("the records format writes machine-readable reports and findings") {
        RunConfig cfg = usecase_config("pipeline-records");
        cfg.report_format = engine::ReportFormat::Records;
        std::ostringstream out;
        CHECK(cmd_pipeline(cfg, out) == 1);
        auto reports = records::read(testsupport::read_file(cfg.output_dir + "/reports.rec"));
        REQUIRE(reports.size() == 2);
        CHECK(reports[1].get_or("verdict", "") == "Fail");
        auto findings =
            records::read(testsupport::read_file(cfg.output_dir + "/assessment.rec"));
        REQUIRE(findings.size() == 2);
        CHECK(findings[0].get_or("asset", "") == "H04");
        CHECK(findings[0].get_or("cve", "") == "CVE-2019-10943");
        CHECK(findings[0].get_or("score", "") == "7.5");
        CHECK(findings[0].get_or("severity", "") == "High");
        CHECK(findings[1].get_or("asset", "") == "S01");
    }

    TEST_CASE("after the patch is taken the pipeline exits cleanly") {
        // Rewrite the asset table with the archive server at the fixed
        // version, as an operator would after applying the update.
        std::string dir = testsupport::copy_dir(testsupport::usecase_dir(), "pipeline-patched");
        RunConfig cfg;
        cfg.inventory_dir = dir;
        inventory::Inventory inv = load_inventory(cfg);
        for (auto& asset : inv.assets)
            if (asset.id == "S02") asset.version = assessment::parse_version("V7.1 Upd3");
        testsupport::write_file(
            dir + "/assets.csv",
            inventory::serialize_assets(inv.assets, inventory::TableFormat::Csv));

        cfg.cve_snapshot = testsupport::usecase_dir() + "/cve_snapshot.rec";
        cfg.output_dir = testsupport::temp_dir("pipeline-patched-out");
        std::ostringstream out;
        CHECK(cmd_pipeline(cfg, out) == 0);
        CHECK(out.str().find("T02: Pass") != std::string::npos);
        CHECK_FALSE(testsupport::file_exists(cfg.output_dir + "/model.rev1.aml"));
    }
}
