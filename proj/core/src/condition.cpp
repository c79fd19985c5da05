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
#include "otsectest/condition.hpp"

#include <algorithm>
#include <cctype>

#include "otsectest/error.hpp"
#include "otsectest/text.hpp"

namespace otsectest::condition {

std::string render_value(const Value& v) {
    if (const auto* number = std::get_if<double>(&v)) return text::format_double(*number);
    if (const auto* version = std::get_if<assessment::Version>(&v)) return version->raw;
    return std::get<std::string>(v);
}

void Environment::bind(std::string_view name, Value value) {
    std::string key = text::normalize(name);
    auto it = bindings.find(key);
    if (it == bindings.end())
        bindings.emplace(std::move(key), Binding{std::string(text::trim(name)), std::move(value)});
    else
        it->second.value = std::move(value);
}

const Value* Environment::find(std::string_view name) const noexcept {
    auto it = bindings.find(text::normalize(name));
    return it == bindings.end() ? nullptr : &it->second.value;
}

std::vector<std::string> ConditionExpr::identifiers() const {
    std::vector<std::string> out;
    std::vector<std::string> seen;
    auto add = [&](const std::string& name) {
        std::string key = text::normalize(name);
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) return;
        seen.push_back(key);
        out.push_back(name);
    };
    for (const auto& clause : clauses) {
        if (const auto* cmp = std::get_if<Comparison>(&clause)) {
            add(cmp->ident);
            if (cmp->rhs.kind == Term::Kind::Ident) add(cmp->rhs.text);
        } else {
            const auto& range = std::get<RangeCheck>(clause);
            add(range.ident);
            if (range.low.kind == Term::Kind::Ident) add(range.low.text);
            if (range.high.kind == Term::Kind::Ident) add(range.high.text);
        }
    }
    return out;
}

namespace {

[[noreturn]] void fail(std::size_t pos, const std::string& what) {
    throw Error(ErrorKind::SyntaxError, "position " + std::to_string(pos + 1) + ": " + what);
}

// A span of the source text, carrying its offset for error positions.
struct Span {
    std::string_view s;
    std::size_t offset = 0;

    Span trimmed() const {
        std::size_t lead = 0;
        while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
        std::string_view t = text::trim(s);
        return {t, offset + lead};
    }
};

// Splits the condition into clauses on the standalone word AND, honoring
// quoted strings (brackets cannot nest, so no depth tracking is needed).
std::vector<Span> split_clauses(std::string_view s) {
    std::vector<Span> out;
    std::size_t start = 0;
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (quoted) continue;
        if (s.compare(i, 3, "AND") != 0) continue;
        bool left_ok = i == 0 || std::isspace(static_cast<unsigned char>(s[i - 1]));
        bool right_ok = i + 3 == s.size() || std::isspace(static_cast<unsigned char>(s[i + 3]));
        if (!left_ok || !right_ok || i == start) continue;
        out.push_back({s.substr(start, i - start), start});
        start = i + 3;
    }
    out.push_back({s.substr(start), start});
    return out;
}

Term parse_term(Span span) {
    Span t = span.trimmed();
    if (t.s.empty()) fail(t.offset, "expected a value");
    Term term;
    if (t.s.front() == '"') {
        if (t.s.size() < 2 || t.s.back() != '"')
            fail(t.offset, "unterminated string literal");
        term.kind = Term::Kind::String;
        term.text = std::string(t.s.substr(1, t.s.size() - 2));
        return term;
    }
    if (auto number = text::parse_double(t.s)) {
        term.kind = Term::Kind::Number;
        term.number = *number;
        return term;
    }
    if (assessment::is_version(t.s)) {
        term.kind = Term::Kind::Version;
        term.version = assessment::parse_version(t.s);
        return term;
    }
    for (char forbidden : {'=', '<', '>', '!', '[', ']', ',', '"'}) {
        if (t.s.find(forbidden) != std::string_view::npos)
            fail(t.offset, "'" + std::string(t.s) + "' is not a value or identifier");
    }
    term.kind = Term::Kind::Ident;
    term.text = std::string(t.s);
    return term;
}

struct OperatorHit {
    std::size_t at = std::string_view::npos;  // offset of the operator
    std::size_t len = 0;
    CondOp op = CondOp::Eq;
    bool range = false;  // the "in [" form
};

// First operator occurrence outside quotes: one of = != < <= > >= or the
// word "in" directly followed by a bracket.
OperatorHit find_operator(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        if (quoted) continue;
        switch (s[i]) {
        case '!':
            if (i + 1 < s.size() && s[i + 1] == '=') return {i, 2, CondOp::Ne, false};
            break;
        case '<':
            if (i + 1 < s.size() && s[i + 1] == '=') return {i, 2, CondOp::Le, false};
            return {i, 1, CondOp::Lt, false};
        case '>':
            if (i + 1 < s.size() && s[i + 1] == '=') return {i, 2, CondOp::Ge, false};
            return {i, 1, CondOp::Gt, false};
        case '=': return {i, 1, CondOp::Eq, false};
        case 'i':
            if ((i == 0 || std::isspace(static_cast<unsigned char>(s[i - 1]))) &&
                s.compare(i, 2, "in") == 0) {
                std::size_t next = i + 2;
                while (next < s.size() && std::isspace(static_cast<unsigned char>(s[next])))
                    ++next;
                // A bracket right after (spaces allowed) separates the range
                // form from words like "index".
                if (next < s.size() && s[next] == '[') return {i, 2, CondOp::Eq, true};
            }
            break;
        default: break;
        }
    }
    return {};
}

Clause parse_clause(Span span, const std::vector<std::string>& known_names) {
    Span clause = span.trimmed();
    if (clause.s.empty()) fail(clause.offset, "empty clause");

    // Subject: longest known binding name the clause starts with — provided
    // an operator follows directly — otherwise everything before the first
    // operator.
    std::string ident;
    std::size_t rest_at = 0;
    std::string normalized = text::normalize(clause.s);
    std::size_t best = 0;
    for (const auto& name : known_names) {
        std::string key = text::normalize(name);
        if (key.empty() || key.size() <= best) continue;
        if (normalized.compare(0, key.size(), key) != 0) continue;
        if (normalized.size() > key.size() && normalized[key.size()] != ' ') continue;
        best = key.size();
    }
    if (best > 0) {
        // Map the normalized match length back onto the raw text: consume
        // word by word.
        std::size_t words = static_cast<std::size_t>(
            std::count(normalized.begin(), normalized.begin() + static_cast<long>(best), ' '));
        std::size_t i = 0, seen_gaps = 0;
        while (i < clause.s.size()) {
            if (std::isspace(static_cast<unsigned char>(clause.s[i]))) {
                while (i + 1 < clause.s.size() &&
                       std::isspace(static_cast<unsigned char>(clause.s[i + 1])))
                    ++i;
                if (seen_gaps == words) break;
                ++seen_gaps;
            }
            ++i;
        }
        OperatorHit after = find_operator(clause.s.substr(i));
        if (after.at != std::string_view::npos &&
            text::trim(clause.s.substr(i, after.at)).empty()) {
            ident = std::string(text::trim(clause.s.substr(0, i)));
            rest_at = i;
        } else {
            best = 0;  // known name is not the subject here; fall back
        }
    }
    if (best == 0) {
        OperatorHit hit = find_operator(clause.s);
        if (hit.at == std::string_view::npos)
            fail(clause.offset, "no comparison operator in '" + std::string(clause.s) + "'");
        ident = std::string(text::trim(clause.s.substr(0, hit.at)));
        rest_at = hit.at;
    }
    if (ident.empty()) fail(clause.offset, "missing identifier before operator");
    for (char forbidden : {'=', '<', '>', '!', '[', ']', ',', '"'}) {
        if (ident.find(forbidden) != std::string::npos)
            fail(clause.offset, "'" + ident + "' is not an identifier");
    }

    Span rest{clause.s.substr(rest_at), clause.offset + rest_at};
    OperatorHit hit = find_operator(rest.s);
    if (hit.at == std::string_view::npos)
        fail(rest.offset, "expected a comparison operator after '" + ident + "'");
    if (!text::trim(rest.s.substr(0, hit.at)).empty())
        fail(rest.offset, "unexpected text before the operator");

    if (!hit.range) {
        Comparison cmp;
        cmp.ident = std::move(ident);
        cmp.op = hit.op;
        cmp.rhs = parse_term({rest.s.substr(hit.at + hit.len), rest.offset + hit.at + hit.len});
        return cmp;
    }

    // ident in [low, high]
    std::string_view tail = rest.s.substr(hit.at + hit.len);
    std::size_t tail_off = rest.offset + hit.at + hit.len;
    std::size_t open = tail.find('[');
    std::size_t close = tail.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        fail(tail_off, "expected [low, high] after 'in'");
    if (!text::trim(tail.substr(close + 1)).empty())
        fail(tail_off + close + 1, "unexpected text after ']'");
    std::string_view inner = tail.substr(open + 1, close - open - 1);

    // Split on the comma outside quotes.
    std::size_t comma = std::string_view::npos;
    bool quoted = false;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        if (inner[i] == '"') quoted = !quoted;
        if (!quoted && inner[i] == ',') {
            comma = i;
            break;
        }
    }
    if (comma == std::string_view::npos) fail(tail_off + open, "expected two range bounds");

    RangeCheck range;
    range.ident = std::move(ident);
    range.low = parse_term({inner.substr(0, comma), tail_off + open + 1});
    range.high = parse_term({inner.substr(comma + 1), tail_off + open + 1 + comma + 1});
    return range;
}

}  // namespace

ConditionExpr parse_condition(std::string_view input,
                              const std::vector<std::string>& known_names) {
    if (text::trim(input).empty()) fail(0, "empty condition");
    ConditionExpr expr;
    for (const Span& clause : split_clauses(input))
        expr.clauses.push_back(parse_clause(clause, known_names));
    return expr;
}

// -- evaluation -------------------------------------------------------------

namespace {

const Value& resolve_ident(const Environment& env, const std::string& name) {
    const Value* value = env.find(name);
    if (!value)
        throw Error(ErrorKind::UnboundIdentifier, "'" + name + "' is not bound");
    return *value;
}

Value resolve_term(const Environment& env, const Term& term) {
    switch (term.kind) {
    case Term::Kind::Number: return term.number;
    case Term::Kind::Version: return term.version;
    case Term::Kind::String: return term.text;
    case Term::Kind::Ident: return resolve_ident(env, term.text);
    }
    return term.number;
}

[[noreturn]] void type_mismatch(const Value& left, const Value& right) {
    auto name = [](const Value& v) {
        return std::holds_alternative<double>(v)               ? "number"
               : std::holds_alternative<assessment::Version>(v) ? "version"
                                                                 : "string";
    };
    throw Error(ErrorKind::TypeMismatch, "cannot compare " + std::string(name(left)) + " '" +
                                             render_value(left) + "' with " + name(right) +
                                             " '" + render_value(right) + "'");
}

// Three-way comparison with strict type agreement.
int compare_values(const Value& left, const Value& right) {
    if (const auto* l = std::get_if<double>(&left)) {
        const auto* r = std::get_if<double>(&right);
        if (!r) type_mismatch(left, right);
        return *l < *r ? -1 : *l > *r ? 1 : 0;
    }
    if (const auto* l = std::get_if<assessment::Version>(&left)) {
        const auto* r = std::get_if<assessment::Version>(&right);
        if (!r) type_mismatch(left, right);
        auto ord = assessment::compare_versions(*l, *r);
        return ord == assessment::Ordering::Less      ? -1
               : ord == assessment::Ordering::Greater ? 1
                                                      : 0;
    }
    const auto& l = std::get<std::string>(left);
    const auto* r = std::get_if<std::string>(&right);
    if (!r) type_mismatch(left, right);
    return l < *r ? -1 : l > *r ? 1 : 0;
}

}  // namespace

bool evaluate(const ConditionExpr& expr, const Environment& env) {
    for (const auto& clause : expr.clauses) {
        bool ok;
        if (const auto* cmp = std::get_if<Comparison>(&clause)) {
            int order = compare_values(resolve_ident(env, cmp->ident),
                                       resolve_term(env, cmp->rhs));
            switch (cmp->op) {
            case CondOp::Eq: ok = order == 0; break;
            case CondOp::Ne: ok = order != 0; break;
            case CondOp::Lt: ok = order < 0; break;
            case CondOp::Le: ok = order <= 0; break;
            case CondOp::Gt: ok = order > 0; break;
            case CondOp::Ge: ok = order >= 0; break;
            }
        } else {
            const auto& range = std::get<RangeCheck>(clause);
            const Value value = resolve_ident(env, range.ident);
            ok = compare_values(value, resolve_term(env, range.low)) >= 0 &&
                 compare_values(value, resolve_term(env, range.high)) <= 0;
        }
        if (!ok) return false;
    }
    return true;
}

}  // namespace otsectest::condition
