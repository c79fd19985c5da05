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
#include <algorithm>
#include <cctype>

#include "otsectest/error.hpp"
#include "otsectest/model.hpp"
#include "otsectest/text.hpp"

// Reads and writes the model document: a small fixed XML dialect, hand-rolled
// on both sides so output stays byte-stable.

namespace otsectest::model {

namespace {

// -- writer ----------------------------------------------------------------

using Attrs = std::vector<std::pair<std::string_view, std::string>>;

void open_tag(std::string& out, int depth, std::string_view name, const Attrs& attrs,
              bool self_close) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += "<";
    out += name;
    for (const auto& [key, value] : attrs) {
        out += " ";
        out += key;
        out += "=\"";
        out += text::xml_escape_attr(value);
        out += "\"";
    }
    out += self_close ? "/>\n" : ">\n";
}

void text_element(std::string& out, int depth, std::string_view name, const Attrs& attrs,
                  std::string_view content) {
    if (content.empty()) {
        open_tag(out, depth, name, attrs, true);
        return;
    }
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += "<";
    out += name;
    for (const auto& [key, value] : attrs) {
        out += " ";
        out += key;
        out += "=\"";
        out += text::xml_escape_attr(value);
        out += "\"";
    }
    out += ">";
    out += text::xml_escape_text(content);
    out += "</";
    out += name;
    out += ">\n";
}

void close_tag(std::string& out, int depth, std::string_view name) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += "</";
    out += name;
    out += ">\n";
}

void write_asset(std::string& out, const inventory::Asset& a) {
    Attrs attrs{{"id", a.id}, {"type", std::string(to_string(a.type))}};
    if (!a.name.empty()) attrs.emplace_back("name", a.name);
    if (a.product) attrs.emplace_back("product", *a.product);
    if (a.version) attrs.emplace_back("version", a.version->raw);
    if (a.purdue_level) attrs.emplace_back("purdue_level", std::to_string(*a.purdue_level));
    open_tag(out, 3, "Asset", attrs, true);
}

void write_behavior(std::string& out, const std::string& asset_id, const Behavior& behavior) {
    if (const auto* guard = std::get_if<RangeGuard>(&behavior)) {
        open_tag(out, 3, "Behavior",
                 {{"asset", asset_id},
                  {"kind", "RangeGuard"},
                  {"low", text::format_double(guard->range.low)},
                  {"high", text::format_double(guard->range.high)},
                  {"unit", guard->range.unit}},
                 true);
    } else if (const auto* machine = std::get_if<Machine>(&behavior)) {
        text_element(out, 3, "Behavior", {{"asset", asset_id}, {"kind", "Machine"}},
                     testgen::serialize_machine(machine->machine));
    } else {
        text_element(out, 3, "Behavior", {{"asset", asset_id}, {"kind", "Stub"}},
                     std::get<OpaqueStub>(behavior).text);
    }
}

}  // namespace

std::string export_caex(const SystemModel& model) {
    // An asset deployed in several nodes is written in full once, in its
    // lexicographically smallest node; other placements carry a reference.
    std::map<std::string, std::string> primary_node;
    for (const auto& node : model.system.nodes) {
        for (const auto& member : node.members) {
            auto [it, fresh] = primary_node.emplace(member, node.id);
            if (!fresh && node.id < it->second) it->second = node.id;
        }
    }

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    open_tag(out, 0, "ModelRoot", {{"revision", std::to_string(model.revision)}}, false);
    if (model.system.nodes.empty() && model.system.edges.empty()) {
        open_tag(out, 1, "InstanceHierarchy", {}, true);
    } else {
        open_tag(out, 1, "InstanceHierarchy", {}, false);
        for (const auto& node : model.system.nodes) {
            open_tag(out, 2, "InternalElement", {{"id", node.id}}, false);
            for (const auto& member : node.members) {
                if (primary_node.at(member) != node.id) {
                    open_tag(out, 3, "AssetRef", {{"id", member}}, true);
                    continue;
                }
                auto asset = model.assets.find(member);
                if (asset != model.assets.end()) write_asset(out, asset->second);
                auto behavior = model.control.behaviors.find(member);
                if (behavior != model.control.behaviors.end())
                    write_behavior(out, member, behavior->second);
                if (auto notes = model.annotations.find(member);
                    notes != model.annotations.end()) {
                    for (const auto& note : notes->second)
                        text_element(out, 3, "Annotation", {{"asset", member}}, note);
                }
                if (auto bindings = model.policy_bindings.find(member);
                    bindings != model.policy_bindings.end()) {
                    for (const auto& policy : bindings->second)
                        open_tag(out, 3, "PolicyBinding",
                                 {{"asset", member}, {"policy", policy}}, true);
                }
            }
            close_tag(out, 2, "InternalElement");
        }
        for (const auto& edge : model.system.edges) {
            open_tag(out, 2, "InternalLink",
                     {{"id", edge.id},
                      {"from", edge.from},
                      {"to", edge.to},
                      {"protocol", edge.protocol}},
                     true);
        }
        close_tag(out, 1, "InstanceHierarchy");
    }
    close_tag(out, 0, "ModelRoot");
    return out;
}

// -- reader ----------------------------------------------------------------

namespace {

struct XmlElement {
    std::string name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<XmlElement> children;
    std::string content;  // character data; empty for elements with children

    const std::string* attr(std::string_view key) const {
        for (const auto& [k, v] : attrs)
            if (k == key) return &v;
        return nullptr;
    }
};

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::SchemaViolation, path + ": " + what);
}

struct XmlParser {
    std::string_view s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool consume(std::string_view token) {
        if (s.substr(pos, token.size()) != token) return false;
        pos += token.size();
        return true;
    }

    void skip_misc() {
        // XML declaration and comments may precede or separate elements.
        while (true) {
            skip_ws();
            if (consume("<?")) {
                std::size_t end = s.find("?>", pos);
                if (end == std::string_view::npos) schema_fail("document", "unterminated <?...?>");
                pos = end + 2;
            } else if (consume("<!--")) {
                std::size_t end = s.find("-->", pos);
                if (end == std::string_view::npos) schema_fail("document", "unterminated comment");
                pos = end + 3;
            } else {
                return;
            }
        }
    }

    std::string name_token(const std::string& path) {
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
            ++pos;
        }
        if (start == pos) schema_fail(path, "expected a name");
        return std::string(s.substr(start, pos - start));
    }

    XmlElement element(const std::string& parent_path) {
        skip_misc();
        if (!consume("<")) schema_fail(parent_path, "expected an element");
        XmlElement el;
        el.name = name_token(parent_path);
        std::string path = parent_path.empty() ? el.name : parent_path + "/" + el.name;

        while (true) {
            skip_ws();
            if (consume("/>")) return el;
            if (consume(">")) break;
            std::string key = name_token(path);
            skip_ws();
            if (!consume("=")) schema_fail(path, "attribute " + key + " lacks '='");
            skip_ws();
            if (!consume("\"")) schema_fail(path, "attribute " + key + " lacks quotes");
            std::size_t end = s.find('"', pos);
            if (end == std::string_view::npos)
                schema_fail(path, "attribute " + key + " is unterminated");
            for (const auto& [existing, value] : el.attrs) {
                (void)value;
                if (existing == key) schema_fail(path, "attribute " + key + " repeats");
            }
            el.attrs.emplace_back(key, text::xml_unescape(s.substr(pos, end - pos)));
            pos = end + 1;
        }

        // Children and character data up to the closing tag.
        std::string chunks;
        bool non_ws_text = false;
        while (true) {
            if (pos >= s.size()) schema_fail(path, "unterminated element");
            if (s[pos] == '<') {
                if (s.substr(pos, 2) == "</") {
                    pos += 2;
                    std::string closing = name_token(path);
                    skip_ws();
                    if (!consume(">")) schema_fail(path, "malformed closing tag");
                    if (closing != el.name)
                        schema_fail(path, "closed by </" + closing + ">");
                    break;
                }
                if (s.substr(pos, 4) == "<!--") {
                    std::size_t end = s.find("-->", pos);
                    if (end == std::string_view::npos) schema_fail(path, "unterminated comment");
                    pos = end + 3;
                    continue;
                }
                el.children.push_back(element(path));
                continue;
            }
            std::size_t next = s.find('<', pos);
            if (next == std::string_view::npos) schema_fail(path, "unterminated element");
            std::string_view chunk = s.substr(pos, next - pos);
            if (!text::trim(chunk).empty()) non_ws_text = true;
            chunks += chunk;
            pos = next;
        }
        if (el.children.empty()) {
            el.content = text::xml_unescape(chunks);
        } else if (non_ws_text) {
            schema_fail(path, "mixed element and character content");
        }
        return el;
    }
};

const std::string* require_attr(const XmlElement& el, const std::string& path,
                                std::string_view key) {
    const std::string* value = el.attr(key);
    if (!value) schema_fail(path, "missing attribute " + std::string(key));
    return value;
}

void allow_attrs(const XmlElement& el, const std::string& path,
                 std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : el.attrs) {
        (void)value;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            schema_fail(path, "unexpected attribute " + key);
    }
}

inventory::Asset read_asset(const XmlElement& el, const std::string& path) {
    allow_attrs(el, path, {"id", "type", "name", "product", "version", "purdue_level"});
    inventory::Asset a;
    a.id = *require_attr(el, path, "id");
    const std::string& type = *require_attr(el, path, "type");
    if (type == "Hardware")
        a.type = inventory::AssetType::Hardware;
    else if (type == "Software")
        a.type = inventory::AssetType::Software;
    else
        schema_fail(path, "unknown asset type '" + type + "'");
    if (const auto* name = el.attr("name")) a.name = *name;
    if (const auto* product = el.attr("product")) a.product = *product;
    try {
        if (const auto* version = el.attr("version")) a.version = assessment::parse_version(*version);
    } catch (const Error& e) {
        schema_fail(path, e.what());
    }
    if (const auto* level = el.attr("purdue_level")) {
        auto value = text::parse_int(*level);
        if (!value || *value < 0 || *value > 5) schema_fail(path, "bad purdue_level");
        a.purdue_level = static_cast<int>(*value);
    }
    return a;
}

Behavior read_behavior(const XmlElement& el, const std::string& path) {
    const std::string& kind = *require_attr(el, path, "kind");
    try {
        if (kind == "RangeGuard") {
            allow_attrs(el, path, {"asset", "kind", "low", "high", "unit"});
            auto low = text::parse_double(*require_attr(el, path, "low"));
            auto high = text::parse_double(*require_attr(el, path, "high"));
            if (!low || !high) schema_fail(path, "range bounds are not numbers");
            return RangeGuard{{*low, *high, *require_attr(el, path, "unit")}};
        }
        allow_attrs(el, path, {"asset", "kind"});
        if (kind == "Machine") return Machine{testgen::parse_machine(el.content)};
        if (kind == "Stub") return OpaqueStub{el.content};
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SchemaViolation) throw;
        schema_fail(path, e.what());
    }
    schema_fail(path, "unknown behavior kind '" + kind + "'");
}

}  // namespace

SystemModel import_caex(std::string_view document) {
    XmlParser parser{document};
    XmlElement root = parser.element("");
    parser.skip_misc();
    if (parser.pos != document.size()) schema_fail("document", "content after the root element");
    if (root.name != "ModelRoot") schema_fail(root.name, "expected ModelRoot as root element");
    allow_attrs(root, "ModelRoot", {"revision"});

    SystemModel model;
    auto revision = text::parse_int(*require_attr(root, "ModelRoot", "revision"));
    if (!revision || *revision < 0) schema_fail("ModelRoot", "bad revision");
    model.revision = static_cast<int>(*revision);

    if (root.children.size() != 1 || root.children[0].name != "InstanceHierarchy")
        schema_fail("ModelRoot", "expected exactly one InstanceHierarchy");
    const XmlElement& hierarchy = root.children[0];
    allow_attrs(hierarchy, "ModelRoot/InstanceHierarchy", {});

    for (const XmlElement& child : hierarchy.children) {
        std::string path = "ModelRoot/InstanceHierarchy/" + child.name;
        if (child.name == "InternalElement") {
            allow_attrs(child, path, {"id"});
            const std::string& id = *require_attr(child, path, "id");
            path += "[" + id + "]";
            DeploymentNode node;
            for (const XmlElement& item : child.children) {
                std::string item_path = path + "/" + item.name;
                if (item.name == "Asset") {
                    inventory::Asset a = read_asset(item, item_path);
                    if (!model.assets.emplace(a.id, a).second)
                        schema_fail(item_path, "asset " + a.id + " defined twice");
                    node.members.insert(a.id);
                } else if (item.name == "AssetRef") {
                    allow_attrs(item, item_path, {"id"});
                    node.members.insert(*require_attr(item, item_path, "id"));
                } else if (item.name == "Behavior") {
                    const std::string& asset = *require_attr(item, item_path, "asset");
                    if (!model.control.behaviors.emplace(asset, read_behavior(item, item_path))
                             .second)
                        schema_fail(item_path, "asset " + asset + " has two behaviors");
                } else if (item.name == "Annotation") {
                    allow_attrs(item, item_path, {"asset"});
                    model.annotations[*require_attr(item, item_path, "asset")].push_back(
                        item.content);
                } else if (item.name == "PolicyBinding") {
                    allow_attrs(item, item_path, {"asset", "policy"});
                    model.policy_bindings[*require_attr(item, item_path, "asset")].push_back(
                        *require_attr(item, item_path, "policy"));
                } else {
                    schema_fail(item_path, "unexpected element");
                }
            }
            if (node.members.empty()) schema_fail(path, "node has no members");
            node.id = node_id(node.members);
            if (node.id != id)
                schema_fail(path, "id does not match members (expected " + node.id + ")");
            model.system.nodes.push_back(std::move(node));
        } else if (child.name == "InternalLink") {
            allow_attrs(child, path, {"id", "from", "to", "protocol"});
            model.system.edges.push_back({*require_attr(child, path, "id"),
                                          *require_attr(child, path, "from"),
                                          *require_attr(child, path, "to"),
                                          *require_attr(child, path, "protocol")});
        } else {
            schema_fail(path, "unexpected element");
        }
    }

    std::sort(model.system.nodes.begin(), model.system.nodes.end(),
              [](const DeploymentNode& a, const DeploymentNode& b) { return a.id < b.id; });
    std::sort(model.system.edges.begin(), model.system.edges.end(),
              [](const ModelEdge& a, const ModelEdge& b) { return a.id < b.id; });
    return model;
}

}  // namespace otsectest::model
