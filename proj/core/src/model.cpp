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
#include "otsectest/model.hpp"

#include <algorithm>

#include "otsectest/error.hpp"

namespace otsectest::model {

std::string node_id(const std::set<std::string>& members) {
    std::string out;
    for (const auto& m : members) {  // std::set iterates in sorted order
        if (!out.empty()) out.push_back('+');
        out += m;
    }
    return out;
}

const DeploymentNode* SystemViewpoint::node_of(std::string_view asset_id) const noexcept {
    for (const auto& node : nodes)
        if (node.members.count(std::string(asset_id))) return &node;
    return nullptr;
}

SystemViewpoint build_system_viewpoint(const std::vector<inventory::Asset>& assets,
                                       const std::vector<inventory::Connection>& connections) {
    std::set<std::string> known;
    for (const auto& a : assets) known.insert(a.id);

    std::set<std::set<std::string>> endpoint_sets;
    std::set<std::string> in_composite;
    for (const auto& c : connections) {
        for (const auto& endpoint : {c.source, c.destination}) {
            for (const auto& id : endpoint) {
                if (!known.count(id))
                    throw Error(ErrorKind::DanglingReference,
                                "connection " + c.id + " references unknown asset " + id);
                if (endpoint.size() > 1) in_composite.insert(id);
            }
            endpoint_sets.insert(endpoint);
        }
    }
    for (const auto& a : assets) {
        if (!in_composite.count(a.id)) endpoint_sets.insert({a.id});
    }

    SystemViewpoint vp;
    for (const auto& members : endpoint_sets) vp.nodes.push_back({node_id(members), members});
    std::sort(vp.nodes.begin(), vp.nodes.end(),
              [](const DeploymentNode& a, const DeploymentNode& b) { return a.id < b.id; });

    for (const auto& c : connections)
        vp.edges.push_back({c.id, node_id(c.source), node_id(c.destination), c.protocol});
    std::sort(vp.edges.begin(), vp.edges.end(),
              [](const ModelEdge& a, const ModelEdge& b) { return a.id < b.id; });
    return vp;
}

ControlViewpoint build_control_viewpoint(const std::vector<inventory::Asset>& assets,
                                         const std::vector<inventory::MethodOperation>& methods) {
    ControlViewpoint vp;
    for (const auto& m : methods) {
        if (vp.behaviors.count(m.asset_id)) continue;  // first method row wins
        switch (m.kind) {
        case inventory::MethodKind::NumericRange:
            vp.behaviors.emplace(m.asset_id, RangeGuard{*m.range});
            break;
        case inventory::MethodKind::PseudoCode:
            try {
                vp.behaviors.emplace(m.asset_id, Machine{testgen::parse_machine(m.body)});
            } catch (const Error&) {
                vp.behaviors.emplace(m.asset_id, OpaqueStub{m.body});
            }
            break;
        case inventory::MethodKind::Textual:
            vp.behaviors.emplace(m.asset_id, OpaqueStub{m.body});
            break;
        }
    }
    for (const auto& a : assets)
        vp.behaviors.emplace(a.id, OpaqueStub{"no behavior specified"});
    return vp;
}

SystemModel build_model(const inventory::Inventory& inv) {
    SystemModel model;
    for (const auto& a : inv.assets) {
        if (!model.assets.emplace(a.id, a).second)
            throw Error(ErrorKind::DuplicateId, "asset id '" + a.id + "' appears twice");
    }
    model.system = build_system_viewpoint(inv.assets, inv.connections);
    model.control = build_control_viewpoint(inv.assets, inv.methods);
    return model;
}

// -- attack paths -----------------------------------------------------------------

namespace {

struct PathSearch {
    // adjacency: node id -> (edge id, neighbor node id), sorted by edge id
    std::map<std::string, std::vector<std::pair<std::string, std::string>>> adjacency;
    std::map<std::string, const DeploymentNode*> by_id;
    std::string goal;
    std::size_t max_len = 0;
    std::vector<AttackPath> found;

    AttackPath current;
    std::set<std::string> visited_assets;

    // Depth-first in edge-id order emits paths in lexicographic order of
    // their edge sequences (a path is recorded before any longer extension).
    void visit(const std::string& node) {
        current.nodes.push_back(node);
        if (node == goal) found.push_back(current);
        if (current.edges.size() < max_len) {
            auto it = adjacency.find(node);
            if (it != adjacency.end()) {
                for (const auto& [edge, next] : it->second) {
                    if (asset_overlap(next)) continue;
                    mark(next, true);
                    current.edges.push_back(edge);
                    visit(next);
                    current.edges.pop_back();
                    mark(next, false);
                }
            }
        }
        current.nodes.pop_back();
    }

    // Two nodes sharing an asset are the same location for simplicity
    // purposes; revisiting any already-seen asset is blocked. This also
    // keeps the goal node from being entered twice.
    bool asset_overlap(const std::string& node) const {
        auto it = by_id.find(node);
        if (it == by_id.end()) return true;  // unknown node: treat as blocked
        for (const auto& member : it->second->members)
            if (visited_assets.count(member)) return true;
        return false;
    }

    void mark(const std::string& node, bool on) {
        for (const auto& member : by_id.at(node)->members) {
            if (on)
                visited_assets.insert(member);
            else
                visited_assets.erase(member);
        }
    }
};

}  // namespace

std::vector<AttackPath> attack_paths(const SystemModel& model, std::string_view from,
                                     std::string_view to, std::size_t max_len) {
    for (std::string_view asset : {from, to}) {
        if (!model.assets.count(std::string(asset)))
            throw Error(ErrorKind::UnknownAsset,
                        "asset '" + std::string(asset) + "' is not in the model");
    }
    const DeploymentNode* start = model.system.node_of(from);
    const DeploymentNode* goal = model.system.node_of(to);
    if (!start || !goal) return {};  // asset placed in no node: nowhere to walk

    PathSearch search;
    search.goal = goal->id;
    search.max_len = max_len;
    for (const auto& n : model.system.nodes) search.by_id[n.id] = &n;
    for (const auto& e : model.system.edges) {
        search.adjacency[e.from].emplace_back(e.id, e.to);
        if (e.to != e.from) search.adjacency[e.to].emplace_back(e.id, e.from);
    }
    for (auto& [node, edges] : search.adjacency) {
        (void)node;
        std::sort(edges.begin(), edges.end());
    }
    search.mark(start->id, true);
    search.visit(start->id);
    return std::move(search.found);
}

std::vector<AttackPath> attack_paths(const SystemModel& model, std::string_view from,
                                     std::string_view to) {
    return attack_paths(model, from, to, model.system.nodes.size());
}

std::string format_attack_path(const SystemModel& model, const AttackPath& path) {
    std::map<std::string, std::string> protocol;
    for (const auto& e : model.system.edges) protocol[e.id] = e.protocol;
    std::string out;
    for (std::size_t i = 0; i < path.nodes.size(); ++i) {
        if (i > 0) {
            const std::string& edge = path.edges[i - 1];
            out += " -" + edge;
            auto it = protocol.find(edge);
            if (it != protocol.end()) out += "(" + it->second + ")";
            out += "- ";
        }
        out += path.nodes[i];
    }
    return out;
}

// -- deltas -----------------------------------------------------------------------

std::string format_delta(const ModelDelta& delta) {
    std::string out = std::visit(
        [](const auto& change) -> std::string {
            using T = std::decay_t<decltype(change)>;
            if constexpr (std::is_same_v<T, SetVersion>)
                return "SetVersion(" + change.asset_id + ", " + change.version.raw + ")";
            else if constexpr (std::is_same_v<T, Annotate>)
                return "Annotate(" + change.asset_id + ", " + change.text + ")";
            else
                return "AddPolicyBinding(" + change.asset_id + ", " + change.policy_id + ")";
        },
        delta.change);
    if (!delta.provenance.empty()) out += " [" + delta.provenance + "]";
    return out;
}

SystemModel apply_delta(const SystemModel& model, const ModelDelta& delta) {
    const std::string& asset_id = std::visit(
        [](const auto& change) -> const std::string& { return change.asset_id; }, delta.change);
    if (!model.assets.count(asset_id))
        throw Error(ErrorKind::UnknownAsset, "delta references unknown asset " + asset_id);

    SystemModel next = model;
    std::visit(
        [&](const auto& change) {
            using T = std::decay_t<decltype(change)>;
            if constexpr (std::is_same_v<T, SetVersion>)
                next.assets.at(change.asset_id).version = change.version;
            else if constexpr (std::is_same_v<T, Annotate>)
                next.annotations[change.asset_id].push_back(change.text);
            else
                next.policy_bindings[change.asset_id].push_back(change.policy_id);
        },
        delta.change);
    next.revision = model.revision + 1;
    return next;
}

}  // namespace otsectest::model
