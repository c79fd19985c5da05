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
#include "otsectest/fsm.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

#include "otsectest/error.hpp"
#include "otsectest/text.hpp"

namespace otsectest::testgen {

namespace {

void check_states(const std::vector<std::string>& states, const std::string& initial) {
    std::unordered_set<std::string> seen;
    for (const auto& s : states) {
        if (s.empty()) throw Error(ErrorKind::EmptyComponent, "empty state id");
        if (!seen.insert(s).second)
            throw Error(ErrorKind::DuplicateId, "state '" + s + "' declared twice");
    }
    if (!seen.count(initial))
        throw Error(ErrorKind::DanglingReference,
                    "initial state '" + initial + "' is not declared");
}

template <typename Transition>
void check_endpoints(const std::vector<std::string>& states,
                     const std::vector<Transition>& transitions) {
    std::unordered_set<std::string> known(states.begin(), states.end());
    for (const auto& t : transitions) {
        if (t.input.empty())
            throw Error(ErrorKind::EmptyComponent, "transition with an empty input token");
        for (const std::string* endpoint : {&t.from, &t.to}) {
            if (!known.count(*endpoint))
                throw Error(ErrorKind::DanglingReference,
                            "transition endpoint '" + *endpoint + "' is not a declared state");
        }
    }
}

}  // namespace

Fsm make_fsm(std::vector<std::string> states, std::string initial,
             std::vector<FsmTransition> transitions) {
    check_states(states, initial);
    check_endpoints(states, transitions);
    std::set<std::pair<std::string, std::string>> keys;
    std::set<std::string> alphabet;
    for (const auto& t : transitions) {
        if (!keys.insert({t.from, t.input}).second)
            throw Error(ErrorKind::NondeterministicMachine,
                        "state '" + t.from + "' has two transitions on '" + t.input + "'");
        alphabet.insert(t.input);
    }
    Fsm fsm;
    fsm.states = std::move(states);
    fsm.inputs.assign(alphabet.begin(), alphabet.end());
    fsm.initial = std::move(initial);
    fsm.transitions = std::move(transitions);
    return fsm;
}

Efsm make_efsm(std::vector<std::string> states, std::string initial,
               std::map<std::string, VariableSpec> variables,
               std::vector<EfsmTransition> transitions) {
    check_states(states, initial);
    check_endpoints(states, transitions);
    for (const auto& [name, spec] : variables) {
        if (name.empty()) throw Error(ErrorKind::EmptyComponent, "empty variable name");
        if (spec.min > spec.max)
            throw Error(ErrorKind::NotARange, "variable '" + name + "': min exceeds max");
        if (spec.init < spec.min || spec.init > spec.max)
            throw Error(ErrorKind::OutOfRange,
                        "variable '" + name + "': init outside [min, max]");
    }
    auto check_vars = [&](const LinExpr& e, const std::string& where) {
        for (const auto& [var, coeff] : e.terms) {
            (void)coeff;
            if (!variables.count(var))
                throw Error(ErrorKind::UnboundIdentifier,
                            where + " references undeclared variable '" + var + "'");
        }
    };
    std::set<std::pair<std::string, std::string>> unconditional;
    for (const auto& t : transitions) {
        std::string where = "transition " + t.from + " -" + t.input + "-> " + t.to;
        for (const auto& cmp : t.guard) {
            check_vars(cmp.lhs, where);
            check_vars(cmp.rhs, where);
        }
        for (const auto& upd : t.updates) {
            if (!variables.count(upd.var))
                throw Error(ErrorKind::UnboundIdentifier,
                            where + " assigns undeclared variable '" + upd.var + "'");
            check_vars(upd.expr, where);
        }
        if (t.guard.empty() && !unconditional.insert({t.from, t.input}).second)
            throw Error(ErrorKind::NondeterministicMachine,
                        "state '" + t.from + "' has two unguarded transitions on '" + t.input +
                            "'");
    }
    Efsm efsm;
    efsm.states = std::move(states);
    efsm.initial = std::move(initial);
    efsm.variables = std::move(variables);
    efsm.transitions = std::move(transitions);
    return efsm;
}

// -- expression grammar --------------------------------------------------------

namespace {

bool is_ident_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_';
}

// term := [<integer> '*'] <ident> | <integer>
// expr := ['-'] term (('+'|'-') term)*
struct ExprParser {
    std::string_view s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && s[pos] == ' ') ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    long long integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        auto value = text::parse_int(s.substr(start, pos - start));
        if (!value)
            throw Error(ErrorKind::SyntaxError,
                        "expected a number at position " + std::to_string(start + 1) + " in '" +
                            std::string(s) + "'");
        return *value;
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && is_ident_char(s[pos])) ++pos;
        if (start == pos)
            throw Error(ErrorKind::SyntaxError,
                        "expected a variable at position " + std::to_string(start + 1) + " in '" +
                            std::string(s) + "'");
        return std::string(s.substr(start, pos - start));
    }

    void term(LinExpr& out, long long sign) {
        skip_ws();
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            long long value = integer();
            if (peek() == '*') {
                ++pos;
                out.terms.emplace_back(ident(), sign * value);
            } else {
                out.constant += sign * value;
            }
        } else {
            out.terms.emplace_back(ident(), sign);
        }
    }
};

void fold_terms(LinExpr& e) {
    std::map<std::string, long long> folded;
    for (const auto& [var, coeff] : e.terms) folded[var] += coeff;
    e.terms.clear();
    for (const auto& [var, coeff] : folded)
        if (coeff != 0) e.terms.emplace_back(var, coeff);
}

}  // namespace

LinExpr parse_linexpr(std::string_view input) {
    ExprParser p{input};
    LinExpr out;
    long long sign = 1;
    if (p.peek() == '-') {
        ++p.pos;
        sign = -1;
    }
    p.term(out, sign);
    while (!p.eof()) {
        char op = p.peek();
        if (op != '+' && op != '-')
            throw Error(ErrorKind::SyntaxError, "expected + or - at position " +
                                                    std::to_string(p.pos + 1) + " in '" +
                                                    std::string(input) + "'");
        ++p.pos;
        p.term(out, op == '+' ? 1 : -1);
    }
    fold_terms(out);
    return out;
}

namespace {

const std::pair<std::string_view, CmpOp> kCmpOps[] = {
    {"<=", CmpOp::Le}, {">=", CmpOp::Ge}, {"!=", CmpOp::Ne},
    {"==", CmpOp::Eq}, {"<", CmpOp::Lt},  {">", CmpOp::Gt},
    {"=", CmpOp::Eq},
};

std::string_view cmp_token(CmpOp op) {
    switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
    }
    return "=";
}

Comparison parse_comparison(std::string_view clause) {
    for (const auto& [token, op] : kCmpOps) {
        size_t at = clause.find(token);
        if (at == std::string_view::npos) continue;
        // "<=" must not be found as the "<" of "<="; ordered tokens handle it.
        Comparison cmp;
        cmp.lhs = parse_linexpr(clause.substr(0, at));
        cmp.op = op;
        cmp.rhs = parse_linexpr(clause.substr(at + token.size()));
        return cmp;
    }
    throw Error(ErrorKind::SyntaxError,
                "guard clause '" + std::string(clause) + "' has no comparison operator");
}

// Splits on a lowercase word boundary token (" and " style separators).
std::vector<std::string_view> split_word(std::string_view s, std::string_view word) {
    std::vector<std::string_view> out;
    std::string lowered = text::to_lower(s);
    std::string needle = " " + std::string(word) + " ";
    size_t start = 0;
    while (true) {
        size_t at = lowered.find(needle, start);
        if (at == std::string::npos) break;
        out.push_back(s.substr(start, at - start));
        start = at + needle.size();
    }
    out.push_back(s.substr(start));
    return out;
}

}  // namespace

Guard parse_guard(std::string_view input) {
    Guard out;
    if (text::trim(input).empty()) return out;
    for (const auto& clause : split_word(input, "and")) out.push_back(parse_comparison(clause));
    return out;
}

std::vector<Assignment> parse_updates(std::string_view input) {
    std::vector<Assignment> out;
    if (text::trim(input).empty()) return out;
    for (const auto& part : text::split(input, ',')) {
        size_t at = part.find(":=");
        if (at == std::string::npos)
            throw Error(ErrorKind::SyntaxError, "update '" + part + "' lacks ':='");
        Assignment a;
        a.var = std::string(text::trim(part.substr(0, at)));
        if (a.var.empty() || !std::all_of(a.var.begin(), a.var.end(), is_ident_char))
            throw Error(ErrorKind::SyntaxError,
                        "update '" + part + "' does not assign a variable");
        a.expr = parse_linexpr(part.substr(at + 2));
        out.push_back(std::move(a));
    }
    return out;
}

std::string format_linexpr(const LinExpr& e) {
    std::string out;
    for (const auto& [var, coeff] : e.terms) {
        if (coeff >= 0 && !out.empty()) out += " + ";
        if (coeff < 0) out += out.empty() ? "-" : " - ";
        long long magnitude = coeff < 0 ? -coeff : coeff;
        if (magnitude != 1) {
            out += std::to_string(magnitude);
            out += "*";
        }
        out += var;
    }
    if (e.constant != 0 || out.empty()) {
        if (e.constant >= 0 && !out.empty()) out += " + ";
        if (e.constant < 0) out += out.empty() ? "-" : " - ";
        out += std::to_string(e.constant < 0 ? -e.constant : e.constant);
    }
    return out;
}

std::string format_guard(const Guard& g) {
    std::string out;
    for (const auto& cmp : g) {
        if (!out.empty()) out += " and ";
        out += format_linexpr(cmp.lhs);
        out += " ";
        out += cmp_token(cmp.op);
        out += " ";
        out += format_linexpr(cmp.rhs);
    }
    return out;
}

std::string format_updates(const std::vector<Assignment>& updates) {
    std::string out;
    for (const auto& a : updates) {
        if (!out.empty()) out += ", ";
        out += a.var;
        out += " := ";
        out += format_linexpr(a.expr);
    }
    return out;
}

long long evaluate(const LinExpr& e, const std::map<std::string, long long>& valuation) {
    long long value = e.constant;
    for (const auto& [var, coeff] : e.terms) {
        auto it = valuation.find(var);
        if (it == valuation.end())
            throw Error(ErrorKind::UnboundIdentifier, "variable '" + var + "' has no value");
        value += coeff * it->second;
    }
    return value;
}

bool holds(const Guard& g, const std::map<std::string, long long>& valuation) {
    for (const auto& cmp : g) {
        long long lhs = evaluate(cmp.lhs, valuation);
        long long rhs = evaluate(cmp.rhs, valuation);
        bool ok = cmp.op == CmpOp::Lt   ? lhs < rhs
                  : cmp.op == CmpOp::Le ? lhs <= rhs
                  : cmp.op == CmpOp::Eq ? lhs == rhs
                  : cmp.op == CmpOp::Ne ? lhs != rhs
                  : cmp.op == CmpOp::Ge ? lhs >= rhs
                                        : lhs > rhs;
        if (!ok) return false;
    }
    return true;
}

// -- machine text format ---------------------------------------------------------

Efsm parse_machine(std::string_view content) {
    std::vector<std::string> states;
    std::string initial;
    std::map<std::string, VariableSpec> variables;
    std::vector<EfsmTransition> transitions;

    size_t line_no = 0;
    for (const auto& raw : text::split_lines(content)) {
        ++line_no;
        std::string_view line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        auto fail = [&](const std::string& what) -> Error {
            return Error(ErrorKind::SyntaxError,
                         "line " + std::to_string(line_no) + ": " + what);
        };

        if (line.rfind("state ", 0) == 0) {
            std::vector<std::string> words;
            for (const auto& w : text::split(std::string(line), ' '))
                if (!w.empty()) words.push_back(w);
            if (words.size() < 2 || words.size() > 3)
                throw fail("expected 'state <id> [initial]'");
            if (words.size() == 3) {
                if (words[2] != "initial") throw fail("expected 'initial', got '" + words[2] + "'");
                if (!initial.empty()) throw fail("a second state is marked initial");
                initial = words[1];
            }
            states.push_back(words[1]);
        } else if (line.rfind("var ", 0) == 0) {
            std::vector<std::string> words;
            for (const auto& w : text::split(std::string(line), ' '))
                if (!w.empty()) words.push_back(w);
            if (words.size() != 5) throw fail("expected 'var <name> <min> <max> <init>'");
            auto lo = text::parse_int(words[2]);
            auto hi = text::parse_int(words[3]);
            auto init = text::parse_int(words[4]);
            if (!lo || !hi || !init) throw fail("variable bounds must be integers");
            if (variables.count(words[1])) throw fail("variable '" + words[1] + "' declared twice");
            variables[words[1]] = {*lo, *hi, *init};
        } else if (line.rfind("trans ", 0) == 0) {
            std::string_view rest = text::trim(line.substr(6));
            size_t arrow = rest.find("->");
            if (arrow == std::string_view::npos) throw fail("transition lacks '->'");

            std::string_view left = text::trim(rest.substr(0, arrow));
            size_t dash = left.find(" -");
            if (dash == std::string_view::npos)
                throw fail("expected '<from> -<input>[/<output>]->'");
            EfsmTransition t;
            t.from = std::string(text::trim(left.substr(0, dash)));
            std::string_view label = text::trim(left.substr(dash + 2));
            size_t slash = label.find('/');
            if (slash == std::string_view::npos) {
                t.input = std::string(label);
            } else {
                t.input = std::string(text::trim(label.substr(0, slash)));
                t.output = std::string(text::trim(label.substr(slash + 1)));
            }
            if (t.from.empty() || t.input.empty()) throw fail("transition lacks source or input");

            std::string_view right = text::trim(rest.substr(arrow + 2));
            size_t to_end = right.find(' ');
            t.to = std::string(right.substr(0, to_end));
            std::string_view tail =
                to_end == std::string_view::npos ? std::string_view{} : right.substr(to_end + 1);
            tail = text::trim(tail);
            if (!tail.empty()) {
                std::string_view guard_text, update_text;
                if (tail.rfind("if ", 0) == 0) {
                    std::string lowered = text::to_lower(tail);
                    size_t do_at = lowered.find(" do ");
                    if (do_at == std::string::npos) {
                        guard_text = tail.substr(3);
                    } else {
                        guard_text = tail.substr(3, do_at - 3);
                        update_text = tail.substr(do_at + 4);
                    }
                } else if (tail.rfind("do ", 0) == 0) {
                    update_text = tail.substr(3);
                } else {
                    throw fail("expected 'if <guard>' or 'do <updates>' after target state");
                }
                t.guard = parse_guard(guard_text);
                t.updates = parse_updates(update_text);
            }
            transitions.push_back(std::move(t));
        } else {
            throw fail("unrecognized line '" + std::string(line) + "'");
        }
    }
    if (states.empty()) throw Error(ErrorKind::SyntaxError, "machine has no states");
    if (initial.empty()) initial = states.front();
    return make_efsm(std::move(states), std::move(initial), std::move(variables),
                     std::move(transitions));
}

std::string serialize_machine(const Efsm& machine) {
    std::string out;
    for (const auto& s : machine.states) {
        out += "state ";
        out += s;
        if (s == machine.initial) out += " initial";
        out += "\n";
    }
    for (const auto& [name, spec] : machine.variables) {
        out += "var " + name + " " + std::to_string(spec.min) + " " + std::to_string(spec.max) +
               " " + std::to_string(spec.init) + "\n";
    }
    for (const auto& t : machine.transitions) {
        out += "trans " + t.from + " -" + t.input;
        if (t.output) out += "/" + *t.output;
        out += "-> " + t.to;
        if (!t.guard.empty()) out += " if " + format_guard(t.guard);
        if (!t.updates.empty()) out += " do " + format_updates(t.updates);
        out += "\n";
    }
    return out;
}

}  // namespace otsectest::testgen
