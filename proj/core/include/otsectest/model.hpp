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

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "otsectest/fsm.hpp"
#include "otsectest/inventory.hpp"

namespace otsectest::model {

/// A deployment unit: one or more co-located assets. The id is the sorted
/// member list joined with '+', so equal member sets get equal ids.
struct DeploymentNode {
    std::string id;
    std::set<std::string> members;

    bool operator==(const DeploymentNode&) const = default;
};

std::string node_id(const std::set<std::string>& members);

struct ModelEdge {
    std::string id;  // connection id
    std::string from;
    std::string to;
    std::string protocol;

    bool operator==(const ModelEdge&) const = default;
};

struct SystemViewpoint {
    std::vector<DeploymentNode> nodes;  // sorted by id
    std::vector<ModelEdge> edges;       // sorted by id

    bool operator==(const SystemViewpoint&) const = default;

    const DeploymentNode* node_of(std::string_view asset_id) const noexcept;
};

// Control-viewpoint behavior attached to one asset.
struct RangeGuard {
    inventory::NumericRange range;

    bool operator==(const RangeGuard&) const = default;
};

struct Machine {
    testgen::Efsm machine;

    bool operator==(const Machine&) const = default;
};

struct OpaqueStub {
    std::string text;

    bool operator==(const OpaqueStub&) const = default;
};

using Behavior = std::variant<RangeGuard, Machine, OpaqueStub>;

struct ControlViewpoint {
    std::map<std::string, Behavior> behaviors;  // asset id -> behavior

    bool operator==(const ControlViewpoint&) const = default;
};

struct SystemModel {
    std::map<std::string, inventory::Asset> assets;
    SystemViewpoint system;
    ControlViewpoint control;
    std::map<std::string, std::vector<std::string>> annotations;      // asset -> notes
    std::map<std::string, std::vector<std::string>> policy_bindings;  // asset -> policy ids
    int revision = 0;

    bool operator==(const SystemModel&) const = default;
};

/// One deployment node per distinct connection endpoint set, plus a singleton
/// node for every asset that sits in no composite endpoint; one edge per
/// connection. Nodes and edges come out sorted by id. Throws
/// DanglingReference on endpoints naming unknown assets.
SystemViewpoint build_system_viewpoint(const std::vector<inventory::Asset>& assets,
                                       const std::vector<inventory::Connection>& connections);

/// Behavior per asset from its first method row: numeric ranges become
/// RangeGuards, pseudo-code that parses as a machine description becomes a
/// Machine, everything else an OpaqueStub. Assets without methods get
/// OpaqueStub("no behavior specified").
ControlViewpoint build_control_viewpoint(const std::vector<inventory::Asset>& assets,
                                         const std::vector<inventory::MethodOperation>& methods);

/// Both viewpoints plus the asset map, at revision 0.
SystemModel build_model(const inventory::Inventory& inv);

struct AttackPath {
    std::vector<std::string> nodes;  // traversed node ids, length = edges + 1
    std::vector<std::string> edges;  // traversed connection ids

    bool operator==(const AttackPath&) const = default;
};

/// All simple undirected paths between the nodes holding `from` and `to`,
/// with at most `max_len` edges, ordered lexicographically by edge-id
/// sequence. Two nodes sharing an asset count as one location: no path
/// visits the same asset twice. Throws UnknownAsset.
std::vector<AttackPath> attack_paths(const SystemModel& model, std::string_view from,
                                     std::string_view to, std::size_t max_len);

/// attack_paths with the number of nodes as the length bound.
std::vector<AttackPath> attack_paths(const SystemModel& model, std::string_view from,
                                     std::string_view to);

/// "A –C01(HART)– B" rendering for reports.
std::string format_attack_path(const SystemModel& model, const AttackPath& path);

// Mitigation-driven model changes.
struct SetVersion {
    std::string asset_id;
    assessment::Version version;

    bool operator==(const SetVersion&) const = default;
};

struct Annotate {
    std::string asset_id;
    std::string text;

    bool operator==(const Annotate&) const = default;
};

struct AddPolicyBinding {
    std::string asset_id;
    std::string policy_id;

    bool operator==(const AddPolicyBinding&) const = default;
};

struct ModelDelta {
    std::variant<SetVersion, Annotate, AddPolicyBinding> change;
    std::string provenance;  // policy id that produced the delta

    bool operator==(const ModelDelta&) const = default;
};

std::string format_delta(const ModelDelta& delta);

/// Applies one change, returning a new model with revision + 1. The input is
/// left untouched. Throws UnknownAsset.
SystemModel apply_delta(const SystemModel& model, const ModelDelta& delta);

/// The document form: 2-space indented XML with a ModelRoot element. Output
/// is byte-stable for equal models.
std::string export_caex(const SystemModel& model);

/// Inverse of export_caex. Throws SchemaViolation naming the element path.
SystemModel import_caex(std::string_view document);

}  // namespace otsectest::model
