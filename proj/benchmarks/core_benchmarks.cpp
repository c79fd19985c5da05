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
#include <benchmark/benchmark.h>

#include <cstddef>
#include <string>
#include <vector>

#include "otsectest/assessment.hpp"
#include "otsectest/inventory.hpp"
#include "otsectest/model.hpp"
#include "otsectest/testgen.hpp"

using namespace otsectest;

namespace {

std::string zero_padded(std::size_t n) {
    std::string digits = std::to_string(n);
    return digits.size() < 4 ? std::string(4 - digits.size(), '0') + digits : digits;
}

/// An asset table of `n` rows, half of them with product and version.
std::string asset_csv(std::size_t n) {
    std::string csv = "id,asset_type,name,product,version,purdue_level\n";
    for (std::size_t i = 0; i < n; ++i) {
        csv += "H" + zero_padded(i) + ",Hardware,Pump Station " + std::to_string(i);
        csv += i % 2 ? ",ACME Controller,V1." + std::to_string(i % 7) + ",1\n" : ",,,1\n";
    }
    return csv;
}

/// A chain of `n` assets with two parallel links per hop, so end-to-end
/// enumeration walks 2^(n-1) simple paths.
inventory::Inventory chain_inventory(std::size_t n) {
    inventory::Inventory inv;
    for (std::size_t i = 0; i < n; ++i) {
        inventory::Asset a;
        a.id = "H" + zero_padded(i);
        a.type = inventory::AssetType::Hardware;
        a.name = "Pump Station " + std::to_string(i);
        inv.assets.push_back(a);
    }
    std::size_t next_conn = 1;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (int lane = 0; lane < 2; ++lane) {
            inventory::Connection conn;
            conn.id = "C" + zero_padded(next_conn++);
            conn.source = {"H" + zero_padded(i)};
            conn.destination = {"H" + zero_padded(i + 1)};
            conn.protocol = lane ? "ETHERNET" : "PROFINET";
            inv.connections.push_back(conn);
        }
    }
    return inv;
}

/// A strongly connected machine: input k advances a ring by k+1 states.
testgen::Fsm ring_machine(std::size_t states, std::size_t inputs) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < states; ++i) names.push_back("s" + std::to_string(i));
    std::vector<testgen::FsmTransition> transitions;
    for (std::size_t i = 0; i < states; ++i)
        for (std::size_t k = 0; k < inputs; ++k)
            transitions.push_back({names[i], "in" + std::to_string(k),
                                   names[(i + k + 1) % states], std::nullopt});
    return testgen::make_fsm(names, names[0], std::move(transitions));
}

void parse_asset_table(benchmark::State& state) {
    std::string content = asset_csv(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto assets = inventory::parse_assets(content, inventory::TableFormat::Csv);
        benchmark::DoNotOptimize(assets);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(parse_asset_table)->Arg(100)->Arg(1000);

void severity_base_score(benchmark::State& state) {
    std::vector<assessment::CvssVector> vectors;
    for (const char* text :
         {"CVSS:3.1/AV:N/AC:L/PR:N/UI:N/S:U/C:H/I:H/A:H",
          "CVSS:3.1/AV:L/AC:L/PR:L/UI:N/S:C/C:H/I:H/A:H",
          "CVSS:3.1/AV:N/AC:L/PR:N/UI:R/S:C/C:L/I:L/A:N",
          "CVSS:3.1/AV:A/AC:H/PR:H/UI:R/S:U/C:L/I:N/A:N",
          "CVSS:3.1/AV:P/AC:H/PR:H/UI:R/S:U/C:N/I:N/A:N"})
        vectors.push_back(assessment::parse_cvss_vector(text));
    std::size_t i = 0;
    for (auto _ : state) {
        double score = assessment::base_score(vectors[i++ % vectors.size()]);
        benchmark::DoNotOptimize(score);
    }
}
BENCHMARK(severity_base_score);

void machine_transition_tour(benchmark::State& state) {
    testgen::Fsm fsm = ring_machine(static_cast<std::size_t>(state.range(0)), 4);
    for (auto _ : state) {
        auto tour = testgen::generate_transition_tour(fsm);
        benchmark::DoNotOptimize(tour);
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<int64_t>(fsm.transitions.size()));
}
BENCHMARK(machine_transition_tour)->Arg(16)->Arg(64);

void attack_path_enumeration(benchmark::State& state) {
    auto n = static_cast<std::size_t>(state.range(0));
    model::SystemModel m = model::build_model(chain_inventory(n));
    std::string from = "H" + zero_padded(0);
    std::string to = "H" + zero_padded(n - 1);
    for (auto _ : state) {
        auto paths = model::attack_paths(m, from, to, n);
        benchmark::DoNotOptimize(paths);
    }
}
BENCHMARK(attack_path_enumeration)->Arg(8)->Arg(12);

void model_document_export(benchmark::State& state) {
    model::SystemModel m =
        model::build_model(chain_inventory(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        std::string doc = model::export_caex(m);
        benchmark::DoNotOptimize(doc);
    }
}
BENCHMARK(model_document_export)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
