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
#include "otsectest/version.hpp"

#include <cctype>
#include <tuple>

#include "otsectest/error.hpp"
#include "otsectest/text.hpp"

namespace otsectest::assessment {

namespace {

bool parse_into(std::string_view text, Version& out) noexcept {
    std::string_view s = text::trim(text);
    if (s.size() < 4) return false;  // shortest form "V0.0"
    size_t i = 0;
    if (s[i] != 'V' && s[i] != 'v') return false;
    ++i;
    auto read_number = [&](int& value) {
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        long long acc = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            acc = acc * 10 + (s[i] - '0');
            if (acc > 1'000'000'000) return false;
            ++i;
        }
        value = static_cast<int>(acc);
        return true;
    };
    if (!read_number(out.major)) return false;
    if (i >= s.size() || s[i] != '.') return false;
    ++i;
    if (!read_number(out.minor)) return false;
    out.update = 0;
    if (i == s.size()) {
        out.raw = std::string(s);
        return true;
    }
    if (s[i] != ' ') return false;
    while (i < s.size() && s[i] == ' ') ++i;
    if (!text::starts_with_ci(s.substr(i), "Upd")) return false;
    i += 3;
    if (!read_number(out.update)) return false;
    if (i != s.size()) return false;
    out.raw = std::string(s);
    return true;
}

}  // namespace

Version parse_version(std::string_view text) {
    Version v;
    if (!parse_into(text, v))
        throw Error(ErrorKind::MalformedVersion, "not a version token: '" + std::string(text) + "'");
    return v;
}

bool is_version(std::string_view text) noexcept {
    Version v;
    return parse_into(text, v);
}

Ordering compare_versions(const Version& a, const Version& b) noexcept {
    auto ka = std::tie(a.major, a.minor, a.update);
    auto kb = std::tie(b.major, b.minor, b.update);
    if (ka < kb) return Ordering::Less;
    if (kb < ka) return Ordering::Greater;
    return Ordering::Equal;
}

std::string canonical(const Version& v) {
    std::string out = "V" + std::to_string(v.major) + "." + std::to_string(v.minor);
    if (v.update != 0) out += " Upd" + std::to_string(v.update);
    return out;
}

}  // namespace otsectest::assessment
