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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace otsectest::testgen {

struct FsmTransition {
    std::string from;
    std::string input;
    std::string to;
    std::optional<std::string> output;

    bool operator==(const FsmTransition&) const = default;
};

/// A deterministic finite-state machine. Build through make_fsm so the
/// determinism and endpoint invariants hold.
struct Fsm {
    std::vector<std::string> states;
    std::vector<std::string> inputs;  // sorted, deduplicated alphabet
    std::string initial;
    std::vector<FsmTransition> transitions;

    bool operator==(const Fsm&) const = default;
};

/// Validates and completes an FSM: derives the input alphabet, rejects
/// duplicate states, transitions with endpoints outside `states`, an initial
/// state not in `states`, and two transitions sharing (from, input).
Fsm make_fsm(std::vector<std::string> states, std::string initial,
             std::vector<FsmTransition> transitions);

// Guards and updates: integer linear expressions over declared variables.
enum class CmpOp { Lt, Le, Eq, Ne, Ge, Gt };

struct LinExpr {
    long long constant = 0;
    std::vector<std::pair<std::string, long long>> terms;  // (variable, coefficient)

    bool operator==(const LinExpr&) const = default;
};

struct Comparison {
    LinExpr lhs;
    CmpOp op = CmpOp::Eq;
    LinExpr rhs;

    bool operator==(const Comparison&) const = default;
};

using Guard = std::vector<Comparison>;  // conjunction; empty means true

struct Assignment {
    std::string var;
    LinExpr expr;

    bool operator==(const Assignment&) const = default;
};

struct VariableSpec {
    long long min = 0;
    long long max = 0;
    long long init = 0;

    bool operator==(const VariableSpec&) const = default;
};

struct EfsmTransition {
    std::string from;
    std::string input;
    std::string to;
    std::optional<std::string> output;
    Guard guard;
    std::vector<Assignment> updates;

    bool operator==(const EfsmTransition&) const = default;
};

/// An extended FSM: the control skeleton plus bounded integer variables.
struct Efsm {
    std::vector<std::string> states;
    std::string initial;
    std::map<std::string, VariableSpec> variables;
    std::vector<EfsmTransition> transitions;

    bool operator==(const Efsm&) const = default;
};

/// Validates an EFSM: endpoint/initial checks as for make_fsm, every variable
/// init within [min, max], and guards/updates referencing declared variables
/// only. Two transitions on the same (from, input) are allowed when guards
/// can tell them apart; unconditional duplicates are rejected.
Efsm make_efsm(std::vector<std::string> states, std::string initial,
               std::map<std::string, VariableSpec> variables,
               std::vector<EfsmTransition> transitions);

LinExpr parse_linexpr(std::string_view text);
Guard parse_guard(std::string_view text);
std::vector<Assignment> parse_updates(std::string_view text);

std::string format_linexpr(const LinExpr& e);
std::string format_guard(const Guard& g);
std::string format_updates(const std::vector<Assignment>& updates);

long long evaluate(const LinExpr& e, const std::map<std::string, long long>& valuation);
bool holds(const Guard& g, const std::map<std::string, long long>& valuation);

/// Line-oriented machine description:
///   state <id> [initial]
///   var <name> <min> <max> <init>
///   trans <from> -<input>[/<output>]-> <to> [if <guard>] [do <updates>]
/// Blank lines and `#` comments are skipped. A description without var lines
/// is a plain FSM held in an Efsm with no variables.
Efsm parse_machine(std::string_view text);

std::string serialize_machine(const Efsm& machine);

}  // namespace otsectest::testgen
