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

#include "otsectest/engine.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <set>
#include <variant>

#include "otsectest/condition.hpp"
#include "otsectest/digest.hpp"
#include "otsectest/error.hpp"
#include "otsectest/fsm.hpp"
#include "otsectest/records.hpp"
#include "otsectest/text.hpp"

namespace otsectest::engine {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Pass: return "Pass";
        case Verdict::Fail: return "Fail";
        case Verdict::Error: return "Error";
    }
    return "Error";
}

namespace {

/// Mutable control state of one behavior machine while a test runs.
struct MachineRun {
    const testgen::Efsm* efsm = nullptr;
    std::string state;
    std::map<std::string, long long> vals;
};

struct Execution {
    condition::Environment env;
    std::map<std::string, MachineRun> machines;  // target asset id -> run
    bool has_stub = false;
};

void bind_if_absent(condition::Environment& env, std::string_view name,
                    condition::Value value) {
    if (!env.find(name)) env.bind(name, std::move(value));
}

const inventory::Asset& target_asset(const model::SystemModel& m, const std::string& id) {
    auto it = m.assets.find(id);
    if (it == m.assets.end())
        throw Error(ErrorKind::UnknownAsset, "test targets unknown asset '" + id + "'");
    return it->second;
}

/// Seeds the environment with the target's attributes and behaviors. When
/// several targets define the same attribute, the lexicographically first
/// asset wins.
Execution setup(const inventory::TestCase& tc, const model::SystemModel& m) {
    Execution ex;
    ex.env.bind("Target", inventory::format_endpoint(tc.target));
    for (const auto& id : tc.target) {
        const inventory::Asset& a = target_asset(m, id);
        bind_if_absent(ex.env, "Asset Name", a.name);
        bind_if_absent(ex.env, "Asset Type", std::string(inventory::to_string(a.type)));
        if (a.product) bind_if_absent(ex.env, "Product", *a.product);
        if (a.version) bind_if_absent(ex.env, "Current Version", *a.version);
        if (a.purdue_level)
            bind_if_absent(ex.env, "Purdue Level", static_cast<double>(*a.purdue_level));

        auto bit = m.control.behaviors.find(id);
        if (bit == m.control.behaviors.end()) continue;
        if (const auto* rg = std::get_if<model::RangeGuard>(&bit->second)) {
            bind_if_absent(ex.env, "Range low", rg->range.low);
            bind_if_absent(ex.env, "Range high", rg->range.high);
            bind_if_absent(ex.env, "Range unit", rg->range.unit);
        } else if (const auto* mach = std::get_if<model::Machine>(&bit->second)) {
            MachineRun run;
            run.efsm = &mach->machine;
            run.state = mach->machine.initial;
            for (const auto& [name, spec] : mach->machine.variables) {
                run.vals[name] = spec.init;
                bind_if_absent(ex.env, name, static_cast<double>(spec.init));
            }
            bind_if_absent(ex.env, "State", run.state);
            ex.machines.emplace(id, std::move(run));
        } else {
            ex.has_stub = true;
        }
    }
    return ex;
}

bool machine_accepts(const MachineRun& run, const std::string& norm_input) {
    for (const auto& t : run.efsm->transitions)
        if (text::normalize(t.input) == norm_input) return true;
    return false;
}

/// One machine step: among transitions out of the current state on this
/// input, exactly one may have its guard hold with all updates staying in
/// range. Updates read the pre-step valuation.
void step_machine(Execution& ex, MachineRun& run, const std::string& token,
                  const std::string& norm_input) {
    const testgen::EfsmTransition* chosen = nullptr;
    std::map<std::string, long long> next;
    for (const auto& t : run.efsm->transitions) {
        if (t.from != run.state || text::normalize(t.input) != norm_input) continue;
        if (!testgen::holds(t.guard, run.vals)) continue;
        auto cand = run.vals;
        bool in_range = true;
        for (const auto& u : t.updates) {
            long long v = testgen::evaluate(u.expr, run.vals);
            const auto& spec = run.efsm->variables.at(u.var);
            if (v < spec.min || v > spec.max) {
                in_range = false;
                break;
            }
            cand[u.var] = v;
        }
        if (!in_range) continue;
        if (chosen)
            throw Error(ErrorKind::NondeterministicMachine,
                        "state '" + run.state + "' enables two transitions on '" + token + "'");
        chosen = &t;
        next = std::move(cand);
    }
    if (!chosen)
        throw Error(ErrorKind::UndefinedInput,
                    "state '" + run.state + "' has no enabled transition on '" + token + "'");
    run.state = chosen->to;
    run.vals = std::move(next);
    ex.env.bind("State", run.state);
    for (const auto& [name, val] : run.vals) ex.env.bind(name, static_cast<double>(val));
    if (chosen->output) ex.env.bind("Output", *chosen->output);
}

/// Binds Current Version from the first target asset that has product and
/// version, and Updated Version to the newest fix offered by any policy
/// patch for that product (the current version when nothing newer exists).
void current_version_check(Execution& ex, const inventory::TestCase& tc,
                           const model::SystemModel& m,
                           const std::vector<inventory::Policy>& policies,
                           const std::string& token) {
    const inventory::Asset* subject = nullptr;
    for (const auto& id : tc.target) {
        const inventory::Asset& a = target_asset(m, id);
        if (a.product && a.version) {
            subject = &a;
            break;
        }
    }
    if (!subject)
        throw Error(ErrorKind::UndefinedAction,
                    "'" + token + "' needs a target asset with product and version");
    assessment::Version updated = *subject->version;
    for (const auto& p : policies)
        for (const auto& mit : p.mitigations)
            if (const auto* patch = std::get_if<inventory::PatchUpdate>(&mit))
                if (assessment::product_matches(*subject->product, patch->product) &&
                    compare_versions(updated, patch->fixed_version) ==
                        assessment::Ordering::Less)
                    updated = patch->fixed_version;
    ex.env.bind("Current Version", *subject->version);
    ex.env.bind("Updated Version", updated);
}

/// Action dispatch, in order: machine input, named check, number for a
/// range guard, stub absorption. Anything else is undefined.
void perform(Execution& ex, const inventory::TestCase& tc, const model::SystemModel& m,
             const std::vector<inventory::Policy>& policies, const std::string& token) {
    std::string norm = text::normalize(token);
    for (auto& [id, run] : ex.machines) {
        if (!machine_accepts(run, norm)) continue;
        step_machine(ex, run, token, norm);
        return;
    }
    if (norm == "current version check") {
        current_version_check(ex, tc, m, policies, token);
        return;
    }
    if (norm.rfind("yield ", 0) == 0) {
        auto num = text::parse_double(text::trim(norm.substr(6)));
        if (!num)
            throw Error(ErrorKind::UndefinedAction,
                        "'" + token + "': yield needs a numeric value");
        ex.env.bind("Output value", *num);
        return;
    }
    if (ex.env.find("Range low") != nullptr) {
        // A bare number against a range-guarded behavior is a measured output.
        if (auto num = text::parse_double(text::trim(token))) {
            ex.env.bind("Output value", *num);
            return;
        }
    }
    if (ex.has_stub) return;  // sandboxed behavior absorbs the action
    throw Error(ErrorKind::UndefinedAction, "no behavior accepts action '" + token + "'");
}

std::vector<std::string> known_names(const condition::Environment& env) {
    std::vector<std::string> names;
    names.reserve(env.bindings.size());
    for (const auto& [key, binding] : env.bindings) names.push_back(binding.display);
    return names;
}

std::string display_name(const condition::Environment& env, const std::string& name) {
    auto it = env.bindings.find(text::normalize(name));
    return it == env.bindings.end() ? name : it->second.display;
}

void append_note(TestReport& rep, const std::string& line) {
    if (!rep.note.empty()) rep.note += "; ";
    rep.note += line;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

std::vector<std::string> recommend(const inventory::TestCase& tc, Verdict verdict,
                                   const std::vector<inventory::Policy>& policies) {
    std::vector<std::string> out;
    if (verdict == Verdict::Pass) return out;
    for (const auto& p : policies)
        if (p.policy_type == tc.criteria ||
            p.policy_type == inventory::PolicyType::SafetySecurity)
            out.push_back(p.id);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<model::ModelDelta> derive_deltas(const inventory::Policy& policy,
                                             const inventory::TestCase& tc,
                                             const model::SystemModel& m) {
    std::vector<model::ModelDelta> out;
    for (const auto& mit : policy.mitigations) {
        if (const auto* patch = std::get_if<inventory::PatchUpdate>(&mit)) {
            if (patch->sha256) {
                std::string canon = patch->product + "\n" + patch->fixed_version.raw;
                if (text::to_lower(*patch->sha256) != digest::sha256_hex(canon))
                    throw Error(ErrorKind::DigestMismatch,
                                "policy " + policy.id + " patch for '" + patch->product +
                                    "' fails its integrity check");
            }
            for (const auto& id : tc.target) {
                const inventory::Asset& a = target_asset(m, id);
                if (!a.product || !assessment::product_matches(*a.product, patch->product))
                    continue;
                if (a.version && compare_versions(*a.version, patch->fixed_version) !=
                                     assessment::Ordering::Less)
                    continue;  // already at or past the fix
                out.push_back({model::SetVersion{id, patch->fixed_version}, policy.id});
            }
        } else if (const auto* net = std::get_if<inventory::NetworkRestriction>(&mit)) {
            for (const auto& id : tc.target)
                out.push_back({model::Annotate{id, net->text}, policy.id});
        } else if (const auto* proc = std::get_if<inventory::ProcedureCheck>(&mit)) {
            for (const auto& id : tc.target)
                out.push_back({model::Annotate{id, proc->text}, policy.id});
        }
    }
    return out;
}

TestReport run_test(const inventory::TestCase& tc, const model::SystemModel& m,
                    const std::vector<inventory::Policy>& policies,
                    const std::vector<assessment::CveRecord>& cve_db) {
    TestReport rep;
    rep.test_id = tc.id;
    try {
        Execution ex = setup(tc, m);

        std::set<std::string> seen;
        for (const auto& id : tc.target)
            for (const auto& match : assessment::match_cves(m.assets.at(id), cve_db))
                if (seen.insert(match.record.cve_id).second)
                    rep.matched_cves.push_back(match.record.cve_id);

        rep.pre_held = true;
        if (!text::trim(tc.pre).empty()) {
            auto pre = condition::parse_condition(tc.pre, known_names(ex.env));
            rep.pre_held = condition::evaluate(pre, ex.env);
        }
        if (!rep.pre_held) {
            rep.verdict = Verdict::Error;
            rep.note = "precondition not met";
            return rep;
        }

        for (const auto& token : tc.action) perform(ex, tc, m, policies, token);

        if (!text::trim(tc.post).empty()) {
            auto post = condition::parse_condition(tc.post, known_names(ex.env));
            for (const auto& name : post.identifiers()) {
                const condition::Value* v = ex.env.find(name);
                if (!v)
                    throw Error(ErrorKind::UnboundIdentifier,
                                "'" + name + "' is not bound after the actions");
                rep.observed.push_back(display_name(ex.env, name) + " = " +
                                       condition::render_value(*v));
            }
        }

        rep.expected_held = true;
        if (!text::trim(tc.expected).empty()) {
            auto expected = condition::parse_condition(tc.expected, known_names(ex.env));
            rep.expected_held = condition::evaluate(expected, ex.env);
        }
        rep.verdict = rep.expected_held ? Verdict::Pass : Verdict::Fail;
        if (rep.verdict == Verdict::Pass) return rep;

        // Suggest mitigations; when any policy contributes a concrete patch,
        // narrow the list to the patch-bearing ones.
        struct Derived {
            std::string policy_id;
            std::vector<model::ModelDelta> deltas;
            bool has_patch = false;
        };
        std::vector<Derived> derived;
        bool any_patch = false;
        for (const auto& pid : recommend(tc, rep.verdict, policies)) {
            auto pit = std::find_if(policies.begin(), policies.end(),
                                    [&](const inventory::Policy& p) { return p.id == pid; });
            Derived d;
            d.policy_id = pid;
            try {
                d.deltas = derive_deltas(*pit, tc, m);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DigestMismatch) throw;
                append_note(rep, e.what());
                d.deltas.clear();
            }
            for (const auto& delta : d.deltas)
                if (std::holds_alternative<model::SetVersion>(delta.change)) d.has_patch = true;
            any_patch = any_patch || d.has_patch;
            derived.push_back(std::move(d));
        }
        for (const auto& d : derived) {
            if (any_patch && !d.has_patch) continue;
            rep.recommended.push_back(d.policy_id);
            rep.deltas.insert(rep.deltas.end(), d.deltas.begin(), d.deltas.end());
        }
        return rep;
    } catch (const Error& e) {
        rep.verdict = Verdict::Error;
        rep.recommended.clear();
        rep.deltas.clear();
        append_note(rep, e.what());
        return rep;
    }
}

std::vector<TestReport> run_all(const std::vector<inventory::TestCase>& tests,
                                const model::SystemModel& m,
                                const std::vector<inventory::Policy>& policies,
                                const std::vector<assessment::CveRecord>& cve_db) {
    std::vector<std::future<TestReport>> futures;
    futures.reserve(tests.size());
    for (const auto& tc : tests)
        futures.push_back(std::async(std::launch::async, [&tc, &m, &policies, &cve_db] {
            return run_test(tc, m, policies, cve_db);
        }));
    std::vector<TestReport> out;
    out.reserve(futures.size());
    for (auto& f : futures) out.push_back(f.get());
    std::sort(out.begin(), out.end(),
              [](const TestReport& a, const TestReport& b) { return a.test_id < b.test_id; });
    return out;
}

std::string format_reports(const std::vector<TestReport>& reports, ReportFormat format) {
    std::vector<std::string> delta_lines;
    if (format == ReportFormat::Records) {
        std::vector<records::Record> blocks;
        for (const auto& r : reports) {
            delta_lines.clear();
            for (const auto& d : r.deltas) delta_lines.push_back(model::format_delta(d));
            records::Record rec;
            rec.set("test", r.test_id);
            rec.set("verdict", std::string(to_string(r.verdict)));
            rec.set("observed", join(r.observed, "; "));
            rec.set("expected", r.expected_held ? "held" : "not held");
            rec.set("recommended", join(r.recommended, " "));
            rec.set("cves", join(r.matched_cves, " "));
            rec.set("deltas", join(delta_lines, "; "));
            if (!r.note.empty()) rec.set("note", r.note);
            blocks.push_back(std::move(rec));
        }
        return records::write(blocks);
    }
    std::string out;
    for (const auto& r : reports) {
        if (!out.empty()) out += "\n";
        out += "test " + r.test_id + ": " + std::string(to_string(r.verdict)) + "\n";
        delta_lines.clear();
        for (const auto& d : r.deltas) delta_lines.push_back(model::format_delta(d));
        auto field = [&](const char* name, const std::string& value) {
            out += "  ";
            out += name;
            out += ": ";
            out += value.empty() ? "(none)" : value;
            out += "\n";
        };
        field("observed", join(r.observed, "; "));
        field("expected", r.expected_held ? "held" : "not held");
        field("recommended", join(r.recommended, " "));
        field("cves", join(r.matched_cves, " "));
        field("deltas", join(delta_lines, "; "));
        if (!r.note.empty()) field("note", r.note);
    }
    return out;
}

std::vector<inventory::Diagnostic> lint_pseudocode(const inventory::MethodOperation& method) {
    std::vector<inventory::Diagnostic> out;
    if (method.kind != inventory::MethodKind::PseudoCode) return out;
    int depth = 0;
    int lineno = 0;
    for (const auto& line : text::split_lines(method.body)) {
        ++lineno;
        if (line.size() > 120)
            out.push_back({inventory::Severity::Warning, inventory::TableKind::Methods,
                           method.asset_id,
                           "line " + std::to_string(lineno) + " exceeds 120 characters"});
        for (const auto& word : text::split(std::string(text::trim(line)), ' ')) {
            if (word == "IF") ++depth;
            if (word == "END_IF") --depth;
            if (depth < 0) {
                out.push_back({inventory::Severity::Error, inventory::TableKind::Methods,
                               method.asset_id,
                               "line " + std::to_string(lineno) + ": END_IF without IF"});
                depth = 0;
            }
        }
    }
    if (depth > 0)
        out.push_back({inventory::Severity::Error, inventory::TableKind::Methods,
                       method.asset_id, "unclosed IF block"});
    return out;
}

}  // namespace otsectest::engine
