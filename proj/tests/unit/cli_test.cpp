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

#include "support/fixture.hpp"

using testsupport::run_cli;

namespace {

std::string quoted(const std::string& path) { return "\"" + path + "\""; }

/// Arguments pointing the subcommand at the sample plant.
std::string usecase_args(const std::string& out_dir) {
    return "--inventory " + quoted(testsupport::usecase_dir()) + " --cve-snapshot " +
           quoted(testsupport::usecase_dir() + "/cve_snapshot.rec") + " --out " +
           quoted(out_dir);
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("help prints the synopsis and exits cleanly") {
        auto r = run_cli("--help");
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("model-based security testing") != std::string::npos);
        for (const char* name : {"validate", "model", "testgen", "run", "assess", "pipeline"})
            CHECK(r.output.find(name) != std::string::npos);
    }

    TEST_CASE("usage errors exit with the fault code") {
        CHECK(run_cli("").exit_code == 2);             // a subcommand is required
        CHECK(run_cli("frobnicate").exit_code == 2);   // unknown subcommand
        CHECK(run_cli("validate --wat").exit_code == 2);
        CHECK(run_cli("run --max-path-len 0").exit_code == 2);
        CHECK(run_cli("run --format xml").exit_code == 2);
    }

    TEST_CASE("validate checks the sample plant") {
        auto r = run_cli("validate --inventory " + quoted(testsupport::usecase_dir()),
                         {"OTSECTEST_CONFIG="});
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("validation: 0 error(s), 2 warning(s)") != std::string::npos);
    }

    TEST_CASE("a missing inventory is a fault") {
        auto r = run_cli("validate --inventory " + quoted(testsupport::temp_dir("cli-missing")),
                         {"OTSECTEST_CONFIG="});
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("file not found") != std::string::npos);
    }

    TEST_CASE("the pipeline subcommand surfaces the failing test in its exit code") {
        std::string out = testsupport::temp_dir("cli-pipeline");
        auto r = run_cli("pipeline --inventory " + quoted(testsupport::usecase_dir()) +
                             " --cve-snapshot " +
                             quoted(testsupport::usecase_dir() + "/cve_snapshot.rec") +
                             " --out " + quoted(out),
                         {"OTSECTEST_CONFIG="});
        CHECK(r.exit_code == 1);
        CHECK(r.output.find("T02: Fail") != std::string::npos);
        for (const char* name : {"model.aml", "sequences.txt", "reports.txt",
                                 "assessment.txt", "model.rev1.aml"})
            CHECK(testsupport::file_exists(out + "/" + name));
    }

    TEST_CASE("model lists attack paths between endpoints") {
        auto r = run_cli("model " + usecase_args(testsupport::temp_dir("cli-model")) +
                             " --paths-from H10 --paths-to H07",
                         {"OTSECTEST_CONFIG="});
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("attack paths H10 -> H07 (max 8 edges): 1") != std::string::npos);
        CHECK(r.output.find("H10+S01+S02 -C09(PROFINET)- H09 -C07(PROFINET)- H07") !=
              std::string::npos);
    }

    TEST_CASE("a config file stands in for the flags") {
        std::string dir = testsupport::temp_dir("cli-config");
        std::string conf = dir + "/run.conf";
        testsupport::write_file(conf, "inventory = " + testsupport::usecase_dir() + "\n");
        auto r = run_cli("validate --config " + quoted(conf), {"OTSECTEST_CONFIG="});
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("0 error(s)") != std::string::npos);
    }

    TEST_CASE("the environment names a default config, flags still win") {
        std::string dir = testsupport::temp_dir("cli-envconfig");
        std::string good = dir + "/good.conf";
        testsupport::write_file(good, "inventory = " + testsupport::usecase_dir() + "\n");
        std::string bad = dir + "/bad.conf";
        testsupport::write_file(bad, "inventory = " + dir + "/nowhere\n");

        // The env default is honored…
        CHECK(run_cli("validate", {"OTSECTEST_CONFIG=" + good}).exit_code == 0);
        // …an explicit --config takes precedence over it…
        CHECK(run_cli("validate --config " + quoted(good), {"OTSECTEST_CONFIG=" + bad})
                  .exit_code == 0);
        // …and a direct flag overrides the config file's value.
        auto r = run_cli("validate --inventory " + quoted(testsupport::usecase_dir()),
                         {"OTSECTEST_CONFIG=" + bad});
        CHECK(r.exit_code == 0);
    }

    TEST_CASE("the records format switches the report file names") {
        std::string out = testsupport::temp_dir("cli-records");
        auto r = run_cli("run " + usecase_args(out) + " --format records",
                         {"OTSECTEST_CONFIG="});
        CHECK(r.exit_code == 1);
        CHECK(testsupport::file_exists(out + "/reports.rec"));
        CHECK_FALSE(testsupport::file_exists(out + "/reports.txt"));
    }

    TEST_CASE("run exits zero once every test passes") {
        // Point the run at a patched copy of the plant.
        std::string dir = testsupport::copy_dir(testsupport::usecase_dir(), "cli-patched");
        std::string assets = testsupport::read_file(dir + "/assets.csv");
        std::string lagging = "S02,Software,Manufacturing Execution System,"
                              "SIMATIC IT Production Suite,V7.0,3";
        std::string fixed = "S02,Software,Manufacturing Execution System,"
                            "SIMATIC IT Production Suite,V7.1 Upd3,3";
        REQUIRE(assets.find(lagging) != std::string::npos);
        testsupport::write_file(dir + "/assets.csv",
                                assets.replace(assets.find(lagging), lagging.size(), fixed));
        auto r = run_cli("run --inventory " + quoted(dir) + " --out " +
                             quoted(testsupport::temp_dir("cli-patched-out")),
                         {"OTSECTEST_CONFIG="});
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("T01: Pass") != std::string::npos);
        CHECK(r.output.find("T02: Pass") != std::string::npos);
    }
}
