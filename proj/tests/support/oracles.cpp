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
#include "support/oracles.hpp"

#include <algorithm>
#include <deque>

#include "otsectest/version.hpp"

using otsectest::testgen::Fsm;
using otsectest::testgen::FsmTransition;

namespace testsupport::oracle {

std::map<std::string, std::size_t> bfs_distances(const Fsm& fsm) {
    std::map<std::string, std::size_t> dist;
    std::deque<std::string> frontier;
    dist[fsm.initial] = 0;
    frontier.push_back(fsm.initial);
    while (!frontier.empty()) {
        std::string state = frontier.front();
        frontier.pop_front();
        for (const auto& t : fsm.transitions) {
            if (t.from != state || dist.count(t.to)) continue;
            dist[t.to] = dist[state] + 1;
            frontier.push_back(t.to);
        }
    }
    return dist;
}

std::optional<std::set<std::size_t>> replay(const Fsm& fsm,
                                            const std::vector<std::string>& inputs) {
    std::set<std::size_t> covered;
    std::string state = fsm.initial;
    for (const auto& token : inputs) {
        bool stepped = false;
        for (std::size_t i = 0; i < fsm.transitions.size(); ++i) {
            if (fsm.transitions[i].from != state || fsm.transitions[i].input != token) continue;
            covered.insert(i);
            state = fsm.transitions[i].to;
            stepped = true;
            break;
        }
        if (!stepped) return std::nullopt;
    }
    return covered;
}

namespace {

void extend_paths(const std::vector<GraphEdge>& edges, const std::string& at,
                  const std::string& to, std::size_t max_len, std::set<std::string>& visited,
                  std::vector<std::string>& trail,
                  std::vector<std::vector<std::string>>& found) {
    if (at == to) {
        found.push_back(trail);
        return;  // leaving and returning would visit `to` twice
    }
    if (trail.size() == max_len) return;
    for (const auto& e : edges) {
        std::string other;
        if (e.a == at)
            other = e.b;
        else if (e.b == at)
            other = e.a;
        else
            continue;
        if (visited.count(other)) continue;
        visited.insert(other);
        trail.push_back(e.id);
        extend_paths(edges, other, to, max_len, visited, trail, found);
        trail.pop_back();
        visited.erase(other);
    }
}

}  // namespace

std::vector<std::vector<std::string>> simple_paths(const std::vector<GraphEdge>& edges,
                                                   const std::string& from,
                                                   const std::string& to, std::size_t max_len) {
    std::vector<std::vector<std::string>> found;
    std::set<std::string> visited{from};
    std::vector<std::string> trail;
    extend_paths(edges, from, to, max_len, visited, trail, found);
    std::sort(found.begin(), found.end());
    return found;
}

Fsm random_fsm(std::mt19937_64& rng, std::size_t max_states, std::size_t max_inputs) {
    std::uniform_int_distribution<std::size_t> state_count(1, max_states);
    std::uniform_int_distribution<std::size_t> input_count(1, max_inputs);
    std::size_t n = state_count(rng);
    std::size_t k = input_count(rng);

    std::vector<std::string> states;
    for (std::size_t i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
    std::vector<std::string> alphabet;
    for (std::size_t i = 0; i < k; ++i) alphabet.push_back(std::string(1, char('a' + i)));

    std::uniform_int_distribution<std::size_t> pick_input(0, k - 1);
    std::uniform_int_distribution<std::size_t> pick_state(0, n - 1);
    std::uniform_int_distribution<int> coin(0, 99);

    // One cycle through every state keeps the machine strongly connected, so
    // every added transition stays reachable and a covering walk exists.
    std::set<std::pair<std::string, std::string>> used;
    std::vector<FsmTransition> transitions;
    for (std::size_t i = 0; i < n; ++i) {
        FsmTransition t;
        t.from = states[i];
        t.to = states[(i + 1) % n];
        t.input = alphabet[pick_input(rng)];
        if (coin(rng) < 50) t.output = "o" + std::to_string(pick_input(rng));
        used.emplace(t.from, t.input);
        transitions.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (used.count({states[i], alphabet[j]}) || coin(rng) >= 40) continue;
            FsmTransition t;
            t.from = states[i];
            t.input = alphabet[j];
            t.to = states[pick_state(rng)];
            if (coin(rng) < 50) t.output = "o" + std::to_string(pick_input(rng));
            used.emplace(t.from, t.input);
            transitions.push_back(std::move(t));
        }
    }
    return otsectest::testgen::make_fsm(states, states[pick_state(rng)], transitions);
}

std::vector<GraphEdge> random_graph(std::mt19937_64& rng, std::size_t max_nodes,
                                    std::vector<std::string>& nodes_out) {
    std::uniform_int_distribution<std::size_t> node_count(2, max_nodes);
    std::size_t n = node_count(rng);
    nodes_out.clear();
    for (std::size_t i = 0; i < n; ++i) nodes_out.push_back("n" + std::to_string(i));

    auto edge_id = [](std::size_t i) {
        std::string num = std::to_string(i + 1);
        return "E" + std::string(num.size() < 2 ? 1 : 0, '0') + num;
    };

    std::vector<GraphEdge> edges;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> earlier(0, i - 1);
        edges.push_back({edge_id(edges.size()), nodes_out[i], nodes_out[earlier(rng)]});
    }
    std::uniform_int_distribution<std::size_t> extra_count(0, n);
    std::size_t extras = extra_count(rng);
    for (std::size_t i = 0; i < extras; ++i) {
        std::size_t a = pick(rng), b = pick(rng);
        if (a == b) continue;
        edges.push_back({edge_id(edges.size()), nodes_out[a], nodes_out[b]});
    }
    return edges;
}

namespace {

otsectest::assessment::Version random_version(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> small(0, 9);
    int major = small(rng), minor = small(rng), update = small(rng) < 4 ? small(rng) : 0;
    std::string raw = "V" + std::to_string(major) + "." + std::to_string(minor);
    if (update > 0) raw += " Upd" + std::to_string(update);
    return otsectest::assessment::parse_version(raw);
}

std::string pick_text(std::mt19937_64& rng) {
    static const std::vector<std::string> pool = {
        "Pressure Transmitter",
        "valve, fail-safe",
        "says \"stop\" twice",
        "pipe|fitting",
        "back\\slash path",
        "archive;rotate",
        "plain words",
    };
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    return pool[pick(rng)];
}

}  // namespace

otsectest::inventory::Inventory random_inventory(std::mt19937_64& rng) {
    using namespace otsectest::inventory;
    std::uniform_int_distribution<int> coin(0, 99);
    std::uniform_int_distribution<std::size_t> asset_count(1, 12);
    Inventory inv;

    std::size_t assets = asset_count(rng);
    for (std::size_t i = 0; i < assets; ++i) {
        Asset a;
        a.id = "A" + std::to_string(10 + i);
        a.type = coin(rng) < 50 ? AssetType::Hardware : AssetType::Software;
        a.name = pick_text(rng);
        if (coin(rng) < 60) a.product = "Product Line " + std::to_string(coin(rng) % 5);
        if (coin(rng) < 60) a.version = random_version(rng);
        if (coin(rng) < 70) a.purdue_level = coin(rng) % 6;
        inv.assets.push_back(std::move(a));
    }

    auto pick_asset = [&](std::mt19937_64& r) {
        std::uniform_int_distribution<std::size_t> pick(0, inv.assets.size() - 1);
        return inv.assets[pick(r)].id;
    };
    auto pick_endpoint = [&](std::mt19937_64& r) {
        std::set<std::string> endpoint{pick_asset(r)};
        while (coin(r) < 35) endpoint.insert(pick_asset(r));
        return endpoint;
    };

    static const std::vector<std::string> protocols = {"HART", "ETHERNET", "ETHERCAT",
                                                       "MODBUS", "PROFINET", "opc-ua"};
    std::uniform_int_distribution<std::size_t> conn_count(0, 10);
    std::size_t conns = conn_count(rng);
    for (std::size_t i = 0; i < conns; ++i) {
        Connection c;
        c.id = "C" + std::to_string(10 + i);
        c.source = pick_endpoint(rng);
        c.destination = pick_endpoint(rng);
        c.protocol = protocols[coin(rng) % protocols.size()];
        inv.connections.push_back(std::move(c));
    }

    std::uniform_int_distribution<std::size_t> method_count(0, 5);
    std::size_t methods = method_count(rng);
    for (std::size_t i = 0; i < methods; ++i) {
        MethodOperation m;
        m.asset_id = pick_asset(rng);
        m.name = "operation " + std::to_string(i);
        switch (coin(rng) % 3) {
        case 0:
            m.kind = MethodKind::NumericRange;
            m.body = "from " + std::to_string(coin(rng)) + " mbar to " +
                     std::to_string(100 + coin(rng)) + " bar";
            m.range = parse_numeric_range(m.body);
            break;
        case 1:
            m.kind = MethodKind::PseudoCode;
            m.body = "state idle initial\ntrans idle -poll-> idle";
            if (coin(rng) < 50) m.language = "st";
            break;
        default:
            m.kind = MethodKind::Textual;
            m.body = pick_text(rng);
            break;
        }
        inv.methods.push_back(std::move(m));
    }

    std::uniform_int_distribution<std::size_t> policy_count(0, 4);
    std::size_t policies = policy_count(rng);
    for (std::size_t i = 0; i < policies; ++i) {
        Policy p;
        p.id = "P" + std::to_string(10 + i);
        p.name = "policy " + std::to_string(i);
        p.constraint_text = pick_text(rng);
        p.policy_type = static_cast<PolicyType>(coin(rng) % 3);
        if (coin(rng) < 70) {
            PatchUpdate patch;
            patch.product = "Product Line " + std::to_string(coin(rng) % 5);
            patch.fixed_version = random_version(rng);
            if (coin(rng) < 50) patch.sha256 = std::string(64, 'a' + char(coin(rng) % 6));
            p.mitigations.emplace_back(std::move(patch));
        }
        if (coin(rng) < 40) p.mitigations.emplace_back(NetworkRestriction{pick_text(rng)});
        if (coin(rng) < 40) p.mitigations.emplace_back(ProcedureCheck{pick_text(rng)});
        if (coin(rng) < 50) p.cve_refs.push_back("CVE-2020-" + std::to_string(1000 + coin(rng)));
        if (coin(rng) < 50) p.stored_score = double(coin(rng)) / 10.0;
        inv.policies.push_back(std::move(p));
    }

    std::uniform_int_distribution<std::size_t> test_count(0, 4);
    std::size_t tests = test_count(rng);
    for (std::size_t i = 0; i < tests; ++i) {
        TestCase tc;
        tc.id = "T" + std::to_string(10 + i);
        tc.name = pick_text(rng);
        tc.target = pick_endpoint(rng);
        tc.criteria = static_cast<PolicyType>(coin(rng) % 3);
        tc.pre = "Asset Type = \"Hardware\"";
        tc.action = {"probe", "yield " + std::to_string(coin(rng)), "multi;token"};
        tc.post = "Output value > 0";
        tc.expected = "Output value in [0, 100]";
        inv.testcases.push_back(std::move(tc));
    }
    return inv;
}

}  // namespace testsupport::oracle
