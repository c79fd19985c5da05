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

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "otsectest/fsm.hpp"

namespace otsectest::testgen {

struct TestSequence {
    std::vector<std::string> inputs;
    std::vector<std::optional<std::string>> expected_outputs;  // one per input
    std::set<std::size_t> covered;  // indices into Fsm::transitions

    bool operator==(const TestSequence&) const = default;
};

/// One step of a machine run.
struct Step {
    std::size_t transition = 0;  // index into Fsm::transitions
    std::string state;           // state after the step
    std::optional<std::string> output;
};

/// Replays `inputs` from the initial state. Throws UndefinedInput when a state
/// has no transition for the next token.
std::vector<Step> run_inputs(const Fsm& fsm, const std::vector<std::string>& inputs);

/// Shortest input sequence from the initial state to each reachable state;
/// ties broken lexicographically. Unreachable states are absent.
std::map<std::string, TestSequence> generate_state_cover(const Fsm& fsm);

/// One sequence from the initial state traversing every transition at least
/// once: repeatedly walk to the nearest uncovered transition, preferring
/// lexicographically smaller input tokens. Throws UnreachableTransition when
/// uncovered transitions remain but none is reachable any more.
TestSequence generate_transition_tour(const Fsm& fsm);

/// Explicit-state expansion of an EFSM: control states get paired with every
/// reachable variable valuation, rendered "state@x=0,y=1". A transition is
/// enabled when its guard holds and the update keeps every variable inside
/// its declared range. Throws BudgetExceeded past `state_budget` states and
/// NondeterministicMachine when two guards overlap on a reachable valuation.
Fsm unfold_efsm(const Efsm& efsm, std::size_t state_budget);

/// Plain-machine view used by sequence generation: a machine without
/// variables, guards, or updates converts directly (state names kept),
/// anything else goes through unfold_efsm with the budget.
Fsm to_fsm(const Efsm& efsm, std::size_t state_budget);

/// Fraction of transitions traversed by replaying `sequences` from the
/// initial state. A machine without transitions counts as fully covered.
double coverage(const Fsm& fsm, const std::vector<TestSequence>& sequences);

}  // namespace otsectest::testgen
