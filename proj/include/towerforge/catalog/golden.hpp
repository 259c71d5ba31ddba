/*
   Copyright 2026 The towerforge Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

/**
 * @file golden.hpp
 * @brief Transcribed polynomials: source strings, expanded terms and checksums.
 *
 * Each entry of catalog.json carries the polynomial as typed (source), its
 * canonical expansion (terms) and an FNV-1a checksum of that expansion.
 * Computations read the expanded terms; the source is kept so a transcription
 * can be re-expanded and audited.
 */

#ifndef TOWERFORGE_CATALOG_GOLDEN_HPP
#define TOWERFORGE_CATALOG_GOLDEN_HPP

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "towerforge/data_dir.hpp"
#include "towerforge/error.hpp"
#include "towerforge/gf/conway.hpp"
#include "towerforge/poly/io.hpp"
#include "towerforge/poly/ring.hpp"
#include "towerforge/poly/sparse.hpp"

namespace towerforge::catalog {

using GfPoly = poly::SparsePoly<gf::Element>;
using QPoly = poly::SparsePoly<poly::Rational>;

struct GoldenEntry {
    std::string id;
    std::string anchor;
    nlohmann::json domain;
    std::vector<std::string> vars;
    nlohmann::json constants;
    std::string source;
    nlohmann::json expanded;  // poly-core serialization, empty until generated
    std::string checksum;

    bool is_rational() const { return domain.value("kind", "") == "rational"; }
};

inline poly::FieldDomain entry_field(const GoldenEntry& e) {
    if (e.is_rational()) fail(ErrorKind::DomainMismatch, e.id + " has rational coefficients");
    return poly::FieldDomain{gf::make_field(e.domain.at("p").get<std::uint32_t>(), e.domain.at("k").get<std::uint32_t>())};
}

/// Parses the source string of an entry.
inline GfPoly parse_gf_source(const GoldenEntry& e) {
    const auto dom = entry_field(e);
    std::map<std::string, gf::Element> consts;
    if (e.constants.is_object())
        for (const auto& [k, v] : e.constants.items()) consts.emplace(k, gf::element_from_json(dom.field, v));
    return poly::parse_poly<gf::Element>(e.source, dom, e.vars, consts);
}

inline QPoly parse_q_source(const GoldenEntry& e) {
    if (!e.is_rational()) fail(ErrorKind::DomainMismatch, e.id + " has finite-field coefficients");
    return poly::parse_poly<poly::Rational>(e.source, poly::RationalDomain{}, e.vars);
}

/// Canonical expansion and checksum of the source.
inline std::pair<nlohmann::json, std::string> expand(const GoldenEntry& e) {
    if (e.is_rational()) {
        const auto p = parse_q_source(e);
        return {poly::poly_to_json(p), poly::checksum(p)};
    }
    const auto p = parse_gf_source(e);
    return {poly::poly_to_json(p), poly::checksum(p)};
}

class Catalog {
public:
    static Catalog load(const std::filesystem::path& path) {
        Catalog c;
        c.raw_ = load_json(path);
        try {
            for (const auto& j : c.raw_.at("entries")) {
                GoldenEntry e;
                e.id = j.at("id").get<std::string>();
                e.anchor = j.value("anchor", "");
                e.domain = j.at("domain");
                e.vars = j.at("vars").get<std::vector<std::string>>();
                e.constants = j.value("constants", nlohmann::json::object());
                e.source = j.at("source").get<std::string>();
                e.expanded = j.value("expanded", nlohmann::json());
                e.checksum = j.value("checksum", "");
                if (c.index_.count(e.id)) fail(ErrorKind::SchemaError, "duplicate catalog id " + e.id);
                c.index_[e.id] = c.entries_.size();
                c.entries_.push_back(std::move(e));
            }
        } catch (const nlohmann::json::exception& ex) {
            fail(ErrorKind::SchemaError, std::string("catalog: ") + ex.what());
        }
        return c;
    }

    /// The shipped catalog, loaded once.
    static const Catalog& shipped() {
        static const Catalog c = load(data_dir() / "catalog.json");
        return c;
    }

    const std::vector<GoldenEntry>& entries() const { return entries_; }
    bool contains(const std::string& id) const { return index_.count(id) != 0; }
    const GoldenEntry& entry(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) fail(ErrorKind::NotInCatalog, "no catalog entry '" + id + "'");
        return entries_[it->second];
    }

    /// Expanded finite-field polynomial; SchemaError if the entry was never generated.
    GfPoly gf(const std::string& id) const {
        const auto& e = entry(id);
        if (e.expanded.is_null()) fail(ErrorKind::SchemaError, id + " has no expanded terms");
        return poly::poly_from_json<gf::Element>(e.expanded, entry_field(e));
    }
    QPoly q(const std::string& id) const {
        const auto& e = entry(id);
        if (e.expanded.is_null()) fail(ErrorKind::SchemaError, id + " has no expanded terms");
        return poly::poly_from_json<poly::Rational>(e.expanded, poly::RationalDomain{});
    }

    /// Rewrites expanded terms and checksums from sources.
    nlohmann::json regenerated() const {
        nlohmann::json out = raw_;
        for (auto& j : out.at("entries")) {
            const auto [terms, sum] = expand(entry(j.at("id").get<std::string>()));
            j["expanded"] = terms;
            j["checksum"] = sum;
        }
        return out;
    }

private:
    nlohmann::json raw_;
    std::vector<GoldenEntry> entries_;
    std::map<std::string, std::size_t> index_;
};

struct AuditResult {
    std::string id;
    bool expansion_matches;
    bool checksum_matches;
};

/// Re-expands every source and compares with stored terms and checksums.
inline std::vector<AuditResult> audit(const Catalog& c) {
    std::vector<AuditResult> out;
    for (const auto& e : c.entries()) {
        const auto [terms, sum] = expand(e);
        out.push_back({e.id, terms == e.expanded, sum == e.checksum});
    }
    return out;
}

}  // namespace towerforge::catalog

#endif  // TOWERFORGE_CATALOG_GOLDEN_HPP
