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
#include "otsectest/testgen.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include "otsectest/error.hpp"

namespace otsectest::testgen {

namespace {

// Outgoing transition indices per state, ordered by input token so that every
// breadth-first walk below explores lexicographically smaller inputs first.
std::unordered_map<std::string, std::vector<std::size_t>> outgoing_sorted(const Fsm& fsm) {
    std::unordered_map<std::string, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < fsm.transitions.size(); ++i)
        out[fsm.transitions[i].from].push_back(i);
    for (auto& [state, indices] : out) {
        (void)state;
        std::sort(indices.begin(), indices.end(), [&](std::size_t a, std::size_t b) {
            return fsm.transitions[a].input < fsm.transitions[b].input;
        });
    }
    return out;
}

}  // namespace

std::vector<Step> run_inputs(const Fsm& fsm, const std::vector<std::string>& inputs) {
    std::unordered_map<std::string, std::unordered_map<std::string, std::size_t>> table;
    for (std::size_t i = 0; i < fsm.transitions.size(); ++i)
        table[fsm.transitions[i].from][fsm.transitions[i].input] = i;

    std::vector<Step> steps;
    std::string state = fsm.initial;
    for (std::size_t step = 0; step < inputs.size(); ++step) {
        auto fail = [&] {
            return Error(ErrorKind::UndefinedInput, "step " + std::to_string(step + 1) +
                                                        ": state '" + state +
                                                        "' has no transition on '" +
                                                        inputs[step] + "'");
        };
        auto row = table.find(state);
        if (row == table.end()) throw fail();
        auto cell = row->second.find(inputs[step]);
        if (cell == row->second.end()) throw fail();
        const FsmTransition& t = fsm.transitions[cell->second];
        steps.push_back({cell->second, t.to, t.output});
        state = t.to;
    }
    return steps;
}

std::map<std::string, TestSequence> generate_state_cover(const Fsm& fsm) {
    auto outgoing = outgoing_sorted(fsm);

    // Breadth-first from the initial state. Per level the queue holds states
    // in lexicographic order of their discovered sequences, so the first
    // arrival at a state carries the smallest shortest input sequence.
    std::map<std::string, TestSequence> cover;
    std::deque<std::string> queue;
    cover[fsm.initial] = {};
    queue.push_back(fsm.initial);
    while (!queue.empty()) {
        std::string state = std::move(queue.front());
        queue.pop_front();
        const TestSequence& here = cover[state];
        auto it = outgoing.find(state);
        if (it == outgoing.end()) continue;
        for (std::size_t index : it->second) {
            const FsmTransition& t = fsm.transitions[index];
            if (cover.count(t.to)) continue;
            TestSequence next = here;
            next.inputs.push_back(t.input);
            next.expected_outputs.push_back(t.output);
            next.covered.insert(index);
            cover[t.to] = std::move(next);
            queue.push_back(t.to);
        }
    }
    return cover;
}

TestSequence generate_transition_tour(const Fsm& fsm) {
    auto outgoing = outgoing_sorted(fsm);

    TestSequence tour;
    std::string current = fsm.initial;
    const std::size_t total = fsm.transitions.size();

    while (tour.covered.size() < total) {
        // Nearest uncovered transition: breadth-first over states, scanning
        // each state's outgoing edges in input order. The walk that reaches
        // it is appended wholesale (it may re-traverse covered edges).
        std::map<std::string, std::vector<std::size_t>> walk_to;  // state -> transition indices
        std::deque<std::string> queue;
        walk_to[current] = {};
        queue.push_back(current);
        std::vector<std::size_t> found;
        bool done = false;
        while (!queue.empty() && !done) {
            std::string state = std::move(queue.front());
            queue.pop_front();
            auto it = outgoing.find(state);
            if (it == outgoing.end()) continue;
            for (std::size_t index : it->second) {
                if (!tour.covered.count(index)) {
                    found = walk_to[state];
                    found.push_back(index);
                    done = true;
                    break;
                }
            }
            if (done) break;
            for (std::size_t index : it->second) {
                const std::string& to = fsm.transitions[index].to;
                if (walk_to.count(to)) continue;
                auto walk = walk_to[state];
                walk.push_back(index);
                walk_to[to] = std::move(walk);
                queue.push_back(to);
            }
        }
        if (!done) {
            std::string remaining;
            for (std::size_t i = 0; i < total; ++i) {
                if (tour.covered.count(i)) continue;
                if (!remaining.empty()) remaining += ", ";
                const FsmTransition& t = fsm.transitions[i];
                remaining += t.from + " -" + t.input + "-> " + t.to;
            }
            throw Error(ErrorKind::UnreachableTransition,
                        "no walk from '" + current + "' reaches: " + remaining);
        }
        for (std::size_t index : found) {
            const FsmTransition& t = fsm.transitions[index];
            tour.inputs.push_back(t.input);
            tour.expected_outputs.push_back(t.output);
            tour.covered.insert(index);
            current = t.to;
        }
    }
    return tour;
}

namespace {

std::string render_product_state(const std::string& control,
                                 const std::map<std::string, long long>& valuation) {
    std::string out = control + "@";
    bool first = true;
    for (const auto& [var, value] : valuation) {
        if (!first) out += ",";
        first = false;
        out += var + "=" + std::to_string(value);
    }
    return out;
}

}  // namespace

Fsm unfold_efsm(const Efsm& efsm, std::size_t state_budget) {
    if (state_budget == 0) throw Error(ErrorKind::OutOfRange, "state budget must be at least 1");

    std::map<std::string, long long> init_valuation;
    for (const auto& [name, spec] : efsm.variables) init_valuation[name] = spec.init;

    using Config = std::pair<std::string, std::map<std::string, long long>>;
    Config start{efsm.initial, init_valuation};

    std::map<Config, std::string> names;
    names[start] = render_product_state(start.first, start.second);

    std::vector<std::string> states{names[start]};
    std::vector<FsmTransition> transitions;
    std::deque<Config> queue{start};

    while (!queue.empty()) {
        Config config = std::move(queue.front());
        queue.pop_front();
        const std::string& from_name = names[config];

        std::map<std::string, std::size_t> enabled;  // input -> source transition
        for (std::size_t i = 0; i < efsm.transitions.size(); ++i) {
            const EfsmTransition& t = efsm.transitions[i];
            if (t.from != config.first || !holds(t.guard, config.second)) continue;

            auto next_valuation = config.second;
            bool in_range = true;
            for (const auto& upd : t.updates) {
                long long value = evaluate(upd.expr, config.second);
                const VariableSpec& spec = efsm.variables.at(upd.var);
                if (value < spec.min || value > spec.max) {
                    in_range = false;
                    break;
                }
                next_valuation[upd.var] = value;
            }
            if (!in_range) continue;  // declared range doubles as a guard

            auto [it, fresh] = enabled.emplace(t.input, i);
            if (!fresh)
                throw Error(ErrorKind::NondeterministicMachine,
                            "state '" + from_name + "': guards of two transitions on '" +
                                t.input + "' both hold");

            Config next{t.to, std::move(next_valuation)};
            auto [name_it, inserted] = names.emplace(next, "");
            if (inserted) {
                if (names.size() > state_budget)
                    throw Error(ErrorKind::BudgetExceeded,
                                "expansion exceeds the state budget of " +
                                    std::to_string(state_budget));
                name_it->second = render_product_state(next.first, next.second);
                states.push_back(name_it->second);
                queue.push_back(next);
            }
            transitions.push_back({from_name, t.input, name_it->second, t.output});
        }
    }
    return make_fsm(std::move(states), names[start], std::move(transitions));
}

Fsm to_fsm(const Efsm& efsm, std::size_t state_budget) {
    bool plain = efsm.variables.empty();
    for (const EfsmTransition& t : efsm.transitions)
        plain = plain && t.guard.empty() && t.updates.empty();
    if (!plain) return unfold_efsm(efsm, state_budget);
    std::vector<FsmTransition> transitions;
    transitions.reserve(efsm.transitions.size());
    for (const EfsmTransition& t : efsm.transitions)
        transitions.push_back({t.from, t.input, t.to, t.output});
    return make_fsm(efsm.states, efsm.initial, std::move(transitions));
}

double coverage(const Fsm& fsm, const std::vector<TestSequence>& sequences) {
    if (fsm.transitions.empty()) return 1.0;
    std::set<std::size_t> covered;
    for (std::size_t s = 0; s < sequences.size(); ++s) {
        try {
            for (const Step& step : run_inputs(fsm, sequences[s].inputs))
                covered.insert(step.transition);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::UndefinedInput) throw;
            throw Error(ErrorKind::UndefinedInput,
                        "sequence " + std::to_string(s + 1) + ", " + e.what());
        }
    }
    return static_cast<double>(covered.size()) / static_cast<double>(fsm.transitions.size());
}

}  // namespace otsectest::testgen
