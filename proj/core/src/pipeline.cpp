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

#include "otsectest/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <tuple>
#include <variant>

#include "otsectest/condition.hpp"
#include "otsectest/error.hpp"
#include "otsectest/model.hpp"
#include "otsectest/records.hpp"
#include "otsectest/testgen.hpp"
#include "otsectest/text.hpp"

namespace fs = std::filesystem;

namespace otsectest::pipeline {

namespace {

std::string read_file(const fs::path& path) {
    if (!fs::exists(path)) throw Error(ErrorKind::Io, "file not found: " + path.string());
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot read file: " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

void write_file(const fs::path& path, std::string_view content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write file: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorKind::Io, "write failed: " + path.string());
}

int positive_setting(std::string_view key, std::string_view value) {
    auto n = text::parse_int(value);
    if (!n || *n < 1)
        throw Error(ErrorKind::Config,
                    std::string(key) + " must be a positive integer, got '" +
                        std::string(value) + "'");
    return static_cast<int>(*n);
}

struct TableSource {
    inventory::TableKind kind;
    const char* name;
};

constexpr TableSource kTables[] = {
    {inventory::TableKind::Assets, "assets"},
    {inventory::TableKind::Connections, "connections"},
    {inventory::TableKind::Methods, "methods"},
    {inventory::TableKind::Policies, "policies"},
    {inventory::TableKind::TestCases, "testcases"},
};

/// Inventory integrity plus the checks only the engine can do: condition
/// syntax in test cases and pseudo-code style.
std::vector<inventory::Diagnostic> collect_diagnostics(const inventory::Inventory& inv) {
    std::vector<inventory::Diagnostic> diags = inventory::validate_inventory(inv);
    for (const auto& method : inv.methods)
        for (auto& d : engine::lint_pseudocode(method)) diags.push_back(std::move(d));
    for (const auto& tc : inv.testcases) {
        auto check = [&](const char* label, const std::string& cond) {
            if (text::trim(cond).empty()) return;
            try {
                condition::parse_condition(cond);
            } catch (const Error& e) {
                diags.push_back({inventory::Severity::Error, inventory::TableKind::TestCases,
                                 tc.id, std::string(label) + ": " + e.what()});
            }
        };
        check("pre", tc.pre);
        check("post", tc.post);
        check("expected", tc.expected);
    }
    std::sort(diags.begin(), diags.end(),
              [](const inventory::Diagnostic& a, const inventory::Diagnostic& b) {
                  return std::tuple(a.table, a.record_id, a.message) <
                         std::tuple(b.table, b.record_id, b.message);
              });
    return diags;
}

int print_diagnostics(const std::vector<inventory::Diagnostic>& diags, std::ostream& out) {
    std::size_t errors = 0;
    std::size_t warnings = 0;
    for (const auto& d : diags) {
        out << inventory::format_diagnostic(d) << "\n";
        (d.severity == inventory::Severity::Error ? errors : warnings) += 1;
    }
    out << "validation: " << errors << " error(s), " << warnings << " warning(s)\n";
    return errors ? 2 : 0;
}

std::string render_inputs(const std::vector<std::string>& inputs) {
    if (inputs.empty()) return "(empty)";
    std::string out;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (i) out += ' ';
        out += inputs[i];
    }
    return out;
}

/// State-cover and transition-tour listing for every machine behavior.
std::string render_sequences(const model::SystemModel& m, int state_budget,
                             std::size_t& machines) {
    std::string doc;
    machines = 0;
    for (const auto& [asset_id, behavior] : m.control.behaviors) {
        const auto* mach = std::get_if<model::Machine>(&behavior);
        if (!mach) continue;
        ++machines;
        testgen::Fsm flat =
            testgen::to_fsm(mach->machine, static_cast<std::size_t>(state_budget));
        if (!doc.empty()) doc += "\n";
        doc += "machine " + asset_id + "\n";
        doc += "  states: " + std::to_string(flat.states.size()) +
               ", transitions: " + std::to_string(flat.transitions.size()) + "\n";
        for (const auto& [state, seq] : testgen::generate_state_cover(flat))
            doc += "  cover " + state + ": " + render_inputs(seq.inputs) + "\n";
        testgen::TestSequence tour = testgen::generate_transition_tour(flat);
        doc += "  tour: " + render_inputs(tour.inputs) + "\n";
        doc += "  coverage: " + text::format_double(testgen::coverage(flat, {tour})) + "\n";
    }
    return doc;
}

/// Vulnerability findings for every asset, in inventory order.
std::string render_assessment(const inventory::Inventory& inv,
                              const std::vector<assessment::CveRecord>& db,
                              engine::ReportFormat format, std::size_t& findings) {
    findings = 0;
    if (format == engine::ReportFormat::Records) {
        std::vector<records::Record> blocks;
        for (const auto& asset : inv.assets) {
            for (const auto& match : assessment::match_cves(asset, db)) {
                ++findings;
                records::Record rec;
                rec.set("asset", asset.id);
                rec.set("cve", match.record.cve_id);
                rec.set("score", text::format_double(match.effective_score));
                rec.set("severity",
                        std::string(to_string(assessment::severity_rating(
                            match.effective_score))));
                if (match.score_divergence) rec.set("divergence", "yes");
                blocks.push_back(std::move(rec));
            }
        }
        return records::write(blocks);
    }
    std::string doc;
    for (const auto& asset : inv.assets) {
        doc += asset.id;
        if (asset.product) {
            doc += " (" + *asset.product;
            if (asset.version) doc += " " + asset.version->raw;
            doc += ")";
        }
        if (!asset.product || !asset.version) {
            doc += ": skipped (no product or version)\n";
            continue;
        }
        auto matches = assessment::match_cves(asset, db);
        if (matches.empty()) {
            doc += ": no known vulnerabilities\n";
            continue;
        }
        doc += ": " + std::to_string(matches.size()) + " finding(s)\n";
        for (const auto& match : matches) {
            ++findings;
            doc += "  " + match.record.cve_id + " " +
                   text::format_double(match.effective_score) + " " +
                   std::string(to_string(assessment::severity_rating(match.effective_score)));
            if (match.score_divergence) doc += " (stored score differs from vector)";
            doc += "\n";
        }
    }
    return doc;
}

const char* report_file_name(engine::ReportFormat format) {
    return format == engine::ReportFormat::Records ? "reports.rec" : "reports.txt";
}

const char* assessment_file_name(engine::ReportFormat format) {
    return format == engine::ReportFormat::Records ? "assessment.rec" : "assessment.txt";
}

int verdict_exit(const std::vector<engine::TestReport>& reports) {
    bool any_fail = false;
    for (const auto& r : reports) {
        if (r.verdict == engine::Verdict::Error) return 2;
        any_fail = any_fail || r.verdict == engine::Verdict::Fail;
    }
    return any_fail ? 1 : 0;
}

}  // namespace

bool set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
    std::string k = text::normalize(key);
    std::string v(text::trim(value));
    if (k == "inventory") {
        cfg.inventory_dir = v;
    } else if (k == "cve-snapshot") {
        cfg.cve_snapshot = v;
    } else if (k == "out") {
        cfg.output_dir = v;
    } else if (k == "format") {
        std::string f = text::to_lower(v);
        if (f == "text")
            cfg.report_format = engine::ReportFormat::Text;
        else if (f == "records")
            cfg.report_format = engine::ReportFormat::Records;
        else
            throw Error(ErrorKind::Config, "format must be 'text' or 'records', got '" + v + "'");
    } else if (k == "max-path-len") {
        cfg.max_path_len = positive_setting(k, v);
    } else if (k == "state-budget") {
        cfg.state_budget = positive_setting(k, v);
    } else {
        return false;
    }
    return true;
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::string content = read_file(path);
    int lineno = 0;
    for (const auto& line : text::split_lines(content)) {
        ++lineno;
        auto body = text::trim(line);
        if (body.empty() || body[0] == '#') continue;
        auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorKind::Config,
                        path + ":" + std::to_string(lineno) + ": expected 'key = value'");
        auto key = text::trim(body.substr(0, eq));
        auto value = text::trim(body.substr(eq + 1));
        if (key.empty())
            throw Error(ErrorKind::Config,
                        path + ":" + std::to_string(lineno) + ": empty key");
        if (!set_config_value(cfg, key, value))
            throw Error(ErrorKind::Config, path + ":" + std::to_string(lineno) +
                                               ": unknown key '" + std::string(key) + "'");
    }
}

inventory::Inventory load_inventory(const RunConfig& cfg) {
    inventory::Inventory inv;
    for (const auto& table : kTables) {
        fs::path csv = fs::path(cfg.inventory_dir) / (std::string(table.name) + ".csv");
        fs::path rec = fs::path(cfg.inventory_dir) / (std::string(table.name) + ".rec");
        std::string content;
        inventory::TableFormat format = inventory::TableFormat::Csv;
        if (fs::exists(csv)) {
            content = read_file(csv);
        } else if (fs::exists(rec)) {
            content = read_file(rec);
            format = inventory::TableFormat::StructuredRecords;
        } else if (table.kind == inventory::TableKind::Assets) {
            throw Error(ErrorKind::Io, "file not found: " + csv.string());
        } else {
            continue;  // optional table
        }
        auto parsed = inventory::parse_table(table.kind, content, format);
        switch (table.kind) {
            case inventory::TableKind::Assets:
                inv.assets = std::get<std::vector<inventory::Asset>>(std::move(parsed));
                break;
            case inventory::TableKind::Connections:
                inv.connections =
                    std::get<std::vector<inventory::Connection>>(std::move(parsed));
                break;
            case inventory::TableKind::Methods:
                inv.methods =
                    std::get<std::vector<inventory::MethodOperation>>(std::move(parsed));
                break;
            case inventory::TableKind::Policies:
                inv.policies = std::get<std::vector<inventory::Policy>>(std::move(parsed));
                break;
            case inventory::TableKind::TestCases:
                inv.testcases = std::get<std::vector<inventory::TestCase>>(std::move(parsed));
                break;
        }
    }
    return inv;
}

std::vector<assessment::CveRecord> load_cve_snapshot(const RunConfig& cfg) {
    if (cfg.cve_snapshot.empty()) return {};
    return assessment::parse_cve_snapshot(read_file(cfg.cve_snapshot));
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
    try {
        return print_diagnostics(collect_diagnostics(load_inventory(cfg)), out);
    } catch (const Error& e) {
        out << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_model(const RunConfig& cfg, std::ostream& out, const std::string& paths_from,
              const std::string& paths_to) {
    try {
        model::SystemModel m = model::build_model(load_inventory(cfg));
        fs::path path = fs::path(cfg.output_dir) / "model.aml";
        write_file(path, model::export_caex(m));
        out << "model: " << m.system.nodes.size() << " node(s), " << m.system.edges.size()
            << " edge(s) -> " << path.string() << "\n";
        if (!paths_from.empty() && !paths_to.empty()) {
            auto paths = model::attack_paths(m, paths_from, paths_to,
                                             static_cast<std::size_t>(cfg.max_path_len));
            out << "attack paths " << paths_from << " -> " << paths_to << " (max "
                << cfg.max_path_len << " edges): " << paths.size() << "\n";
            for (const auto& p : paths) out << "  " << model::format_attack_path(m, p) << "\n";
        }
        return 0;
    } catch (const Error& e) {
        out << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_testgen(const RunConfig& cfg, std::ostream& out) {
    try {
        model::SystemModel m = model::build_model(load_inventory(cfg));
        std::size_t machines = 0;
        std::string doc = render_sequences(m, cfg.state_budget, machines);
        fs::path path = fs::path(cfg.output_dir) / "sequences.txt";
        write_file(path, doc);
        out << "sequences for " << machines << " machine(s) -> " << path.string() << "\n";
        return 0;
    } catch (const Error& e) {
        out << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_run(const RunConfig& cfg, std::ostream& out) {
    try {
        inventory::Inventory inv = load_inventory(cfg);
        model::SystemModel m = model::build_model(inv);
        auto db = load_cve_snapshot(cfg);
        auto reports = engine::run_all(inv.testcases, m, inv.policies, db);
        for (const auto& r : reports)
            out << r.test_id << ": " << engine::to_string(r.verdict) << "\n";
        fs::path path = fs::path(cfg.output_dir) / report_file_name(cfg.report_format);
        write_file(path, engine::format_reports(reports, cfg.report_format));
        out << reports.size() << " report(s) -> " << path.string() << "\n";
        return verdict_exit(reports);
    } catch (const Error& e) {
        out << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_assess(const RunConfig& cfg, std::ostream& out) {
    try {
        inventory::Inventory inv = load_inventory(cfg);
        auto db = load_cve_snapshot(cfg);
        std::size_t findings = 0;
        std::string doc = render_assessment(inv, db, cfg.report_format, findings);
        fs::path path = fs::path(cfg.output_dir) / assessment_file_name(cfg.report_format);
        write_file(path, doc);
        out << "assessment: " << findings << " finding(s) across " << inv.assets.size()
            << " asset(s) -> " << path.string() << "\n";
        return 0;
    } catch (const Error& e) {
        out << "error: " << e.what() << "\n";
        return 2;
    }
}

int cmd_pipeline(const RunConfig& cfg, std::ostream& out) {
    try {
        inventory::Inventory inv = load_inventory(cfg);
        if (print_diagnostics(collect_diagnostics(inv), out) != 0) return 2;

        model::SystemModel m = model::build_model(inv);
        fs::path model_path = fs::path(cfg.output_dir) / "model.aml";
        write_file(model_path, model::export_caex(m));
        out << "model: " << m.system.nodes.size() << " node(s), " << m.system.edges.size()
            << " edge(s) -> " << model_path.string() << "\n";

        std::size_t machines = 0;
        std::string sequences = render_sequences(m, cfg.state_budget, machines);
        fs::path seq_path = fs::path(cfg.output_dir) / "sequences.txt";
        write_file(seq_path, sequences);
        out << "sequences for " << machines << " machine(s) -> " << seq_path.string() << "\n";

        auto db = load_cve_snapshot(cfg);
        auto reports = engine::run_all(inv.testcases, m, inv.policies, db);
        for (const auto& r : reports)
            out << r.test_id << ": " << engine::to_string(r.verdict) << "\n";
        fs::path rep_path = fs::path(cfg.output_dir) / report_file_name(cfg.report_format);
        write_file(rep_path, engine::format_reports(reports, cfg.report_format));
        out << reports.size() << " report(s) -> " << rep_path.string() << "\n";

        std::size_t findings = 0;
        std::string assessed = render_assessment(inv, db, cfg.report_format, findings);
        fs::path assess_path = fs::path(cfg.output_dir) / assessment_file_name(cfg.report_format);
        write_file(assess_path, assessed);
        out << "assessment: " << findings << " finding(s) -> " << assess_path.string() << "\n";

        // Treat derived deltas as fulfilled mitigations: apply each distinct
        // one and persist the revised model for a re-run.
        std::vector<model::ModelDelta> deltas;
        for (const auto& r : reports)
            for (const auto& d : r.deltas)
                if (std::find(deltas.begin(), deltas.end(), d) == deltas.end())
                    deltas.push_back(d);
        if (!deltas.empty()) {
            model::SystemModel revised = m;
            for (const auto& d : deltas) revised = model::apply_delta(revised, d);
            fs::path rev_path = fs::path(cfg.output_dir) / "model.rev1.aml";
            write_file(rev_path, model::export_caex(revised));
            out << "applied " << deltas.size() << " delta(s) -> " << rev_path.string() << "\n";
        }
        return verdict_exit(reports);
    } catch (const Error& e) {
        out << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace otsectest::pipeline
