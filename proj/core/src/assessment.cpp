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
#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "otsectest/assessment.hpp"
#include "otsectest/error.hpp"
#include "otsectest/records.hpp"
#include "otsectest/text.hpp"

namespace otsectest::assessment {

namespace {

bool valid_cve_id(std::string_view id) {
    // CVE-YYYY-NNNN with at least four digits in the sequence part.
    if (!id.starts_with("CVE-")) return false;
    std::string_view rest = id.substr(4);
    size_t dash = rest.find('-');
    if (dash != 4) return false;
    std::string_view year = rest.substr(0, dash);
    std::string_view seq = rest.substr(dash + 1);
    if (seq.size() < 4) return false;
    auto all_digits = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(),
                                         [](unsigned char ch) { return std::isdigit(ch); });
    };
    return all_digits(year) && all_digits(seq);
}

}  // namespace

std::vector<CveRecord> parse_cve_snapshot(std::string_view content) {
    std::vector<CveRecord> out;
    std::unordered_set<std::string> seen;
    for (const auto& block : records::read(content)) {
        CveRecord rec;
        rec.cve_id = std::string(text::trim(block.get_or("cve", "")));
        if (!valid_cve_id(rec.cve_id))
            throw Error(ErrorKind::MalformedRow,
                        "snapshot entry has a malformed cve id '" + rec.cve_id + "'");
        if (!seen.insert(rec.cve_id).second)
            throw Error(ErrorKind::DuplicateId, "cve id '" + rec.cve_id + "' appears twice");
        rec.product = std::string(text::trim(block.get_or("product", "")));
        if (rec.product.empty())
            throw Error(ErrorKind::MalformedRow, rec.cve_id + ": missing product");
        auto low = block.get("affected_low");
        auto high = block.get("affected_high");
        if (!low || !high)
            throw Error(ErrorKind::MalformedRow, rec.cve_id + ": missing affected range bound");
        rec.affected_low = parse_version(*low);
        rec.affected_high = parse_version(*high);
        if (compare_versions(rec.affected_low, rec.affected_high) != Ordering::Less)
            throw Error(ErrorKind::NotARange,
                        rec.cve_id + ": affected range bounds do not increase");
        if (auto v = block.get("vector"); v && !text::trim(*v).empty())
            rec.vector = parse_cvss_vector(*v);
        if (auto s = block.get("score"); s && !text::trim(*s).empty()) {
            auto value = text::parse_double(*s);
            if (!value || *value < 0.0 || *value > 10.0)
                throw Error(ErrorKind::OutOfRange,
                            rec.cve_id + ": score must be a number in [0.0, 10.0]");
            rec.stored_score = *value;
        }
        rec.summary = block.get_or("summary", "");
        rec.mitigation = block.get_or("mitigation", "");
        out.push_back(std::move(rec));
    }
    return out;
}

std::string serialize_cve_snapshot(const std::vector<CveRecord>& db) {
    std::vector<records::Record> blocks;
    for (const auto& rec : db) {
        records::Record block;
        block.set("cve", rec.cve_id);
        block.set("product", rec.product);
        block.set("affected_low", rec.affected_low.raw);
        block.set("affected_high", rec.affected_high.raw);
        if (rec.vector) block.set("vector", format_cvss_vector(*rec.vector));
        if (rec.stored_score) block.set("score", text::format_double(*rec.stored_score));
        if (!rec.summary.empty()) block.set("summary", rec.summary);
        if (!rec.mitigation.empty()) block.set("mitigation", rec.mitigation);
        blocks.push_back(std::move(block));
    }
    return records::write(blocks);
}

bool product_matches(std::string_view a_raw, std::string_view b_raw) {
    std::string a = text::normalize(a_raw);
    std::string b = text::normalize(b_raw);
    if (a.empty() || b.empty()) return false;
    // Either name may carry an edition suffix the other omits; a match on a
    // whole-word prefix covers both directions.
    const std::string& shorter = a.size() <= b.size() ? a : b;
    const std::string& longer = a.size() <= b.size() ? b : a;
    if (longer.compare(0, shorter.size(), shorter) != 0) return false;
    return longer.size() == shorter.size() || longer[shorter.size()] == ' ';
}

std::vector<CveMatch> match_cves(const inventory::Asset& asset, const std::vector<CveRecord>& db,
                                 std::vector<inventory::Diagnostic>* diags) {
    std::vector<CveMatch> out;
    if (!asset.product || !asset.version) {
        if (diags)
            diags->push_back({inventory::Severity::Warning, inventory::TableKind::Assets,
                              asset.id,
                              "asset lacks product or version; vulnerability match skipped"});
        return out;
    }
    for (const auto& rec : db) {
        if (!product_matches(*asset.product, rec.product)) continue;
        if (compare_versions(*asset.version, rec.affected_low) == Ordering::Less) continue;
        if (compare_versions(*asset.version, rec.affected_high) != Ordering::Less) continue;

        CveMatch m;
        m.record = rec;
        std::optional<double> computed;
        if (rec.vector) computed = base_score(*rec.vector);
        m.effective_score = rec.stored_score ? *rec.stored_score : computed.value_or(0.0);
        m.score_divergence =
            rec.stored_score && computed && std::fabs(*rec.stored_score - *computed) > 0.5;
        out.push_back(std::move(m));
    }
    std::sort(out.begin(), out.end(), [](const CveMatch& x, const CveMatch& y) {
        if (x.effective_score != y.effective_score) return x.effective_score > y.effective_score;
        return x.record.cve_id < y.record.cve_id;
    });
    return out;
}

}  // namespace otsectest::assessment
