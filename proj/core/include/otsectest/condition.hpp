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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "otsectest/version.hpp"

namespace otsectest::condition {

using Value = std::variant<double, assessment::Version, std::string>;

std::string render_value(const Value& v);

/// Name -> value bindings with case- and whitespace-insensitive lookup.
/// The display spelling of the first bind wins; rebinding replaces the value.
struct Environment {
    struct Binding {
        std::string display;
        Value value;

        bool operator==(const Binding&) const = default;
    };
    std::map<std::string, Binding> bindings;  // keyed by normalized name

    void bind(std::string_view name, Value value);
    const Value* find(std::string_view name) const noexcept;

    bool operator==(const Environment&) const = default;
};

enum class CondOp { Eq, Ne, Lt, Le, Gt, Ge };

/// A comparison operand: literal number, version or string, or a name to be
/// looked up at evaluation time.
struct Term {
    enum class Kind { Number, Version, String, Ident };
    Kind kind = Kind::Number;
    double number = 0.0;
    assessment::Version version;
    std::string text;  // string literal or identifier name

    bool operator==(const Term&) const = default;
};

struct Comparison {
    std::string ident;
    CondOp op = CondOp::Eq;
    Term rhs;

    bool operator==(const Comparison&) const = default;
};

struct RangeCheck {
    std::string ident;
    Term low;
    Term high;  // inclusive bounds

    bool operator==(const RangeCheck&) const = default;
};

using Clause = std::variant<Comparison, RangeCheck>;

/// Conjunction of clauses, in source order.
struct ConditionExpr {
    std::vector<Clause> clauses;

    bool operator==(const ConditionExpr&) const = default;

    /// Identifiers in first-appearance order: clause subjects first, then
    /// identifier operands.
    std::vector<std::string> identifiers() const;
};

/// Grammar: `ident OP term`, `ident in [term, term]`, clauses joined by AND.
/// Identifiers are phrases — spaces allowed — so a subject is recognized
/// greedily against `known_names` first, falling back to everything before
/// the first operator. Throws SyntaxError with a 1-based position.
ConditionExpr parse_condition(std::string_view text,
                              const std::vector<std::string>& known_names = {});

/// Standard semantics; Version ordering via compare_versions; comparing
/// different types throws TypeMismatch rather than returning false. Unknown
/// names throw UnboundIdentifier.
bool evaluate(const ConditionExpr& expr, const Environment& env);

}  // namespace otsectest::condition
