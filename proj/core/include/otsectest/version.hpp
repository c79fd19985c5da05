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

#include <string>
#include <string_view>

namespace otsectest::assessment {

/// Vendor-style OT version token: `V<major>.<minor>` with an optional
/// ` Upd<n>` update suffix ("V7.1 Upd3"). Ordering is lexicographic on
/// (major, minor, update); `raw` keeps the original spelling.
struct Version {
    int major = 0;
    int minor = 0;
    int update = 0;
    std::string raw;

    bool operator==(const Version&) const = default;
};

enum class Ordering { Less, Equal, Greater };

/// Parses the version grammar (case-insensitive, surrounding space allowed).
/// Throws Error{MalformedVersion} when the text does not match.
Version parse_version(std::string_view text);

bool is_version(std::string_view text) noexcept;

Ordering compare_versions(const Version& a, const Version& b) noexcept;

inline bool version_less(const Version& a, const Version& b) noexcept {
    return compare_versions(a, b) == Ordering::Less;
}

/// Canonical spelling "V<major>.<minor>[ Upd<update>]" (ignores raw).
std::string canonical(const Version& v);

}  // namespace otsectest::assessment
