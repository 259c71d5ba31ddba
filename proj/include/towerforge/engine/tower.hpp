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
 * @file tower.hpp
 * @brief Recursive tower definitions and the tower-file reader.
 *
 * A tower file names a constant field, a recursion kind and its step
 * polynomials. Polynomials come either from a source string parsed over the
 * constant field or from a catalog entry, optionally with some variables
 * fixed (the F_2[T] polynomials are reduced by fixing T).
 */

#ifndef TOWERFORGE_ENGINE_TOWER_HPP
#define TOWERFORGE_ENGINE_TOWER_HPP

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "towerforge/catalog/golden.hpp"
#include "towerforge/data_dir.hpp"
#include "towerforge/error.hpp"
#include "towerforge/gf/conway.hpp"
#include "towerforge/poly/io.hpp"
#include "towerforge/poly/sparse.hpp"

namespace towerforge::engine {

using Poly = poly::SparsePoly<gf::Element>;

enum class TowerKind { Depth1, Depth2, TwistedDepth2 };

inline std::string to_string(TowerKind k) {
    switch (k) {
        case TowerKind::Depth1: return "depth1";
        case TowerKind::Depth2: return "depth2";
        case TowerKind::TwistedDepth2: return "twisted-depth2";
    }
    return "?";
}

enum class DSource { TameFormula, Supplied, TwoBounded, FiberSumCap };

inline std::string to_string(DSource s) {
    switch (s) {
        case DSource::TameFormula: return "tame-formula";
        case DSource::Supplied: return "supplied";
        case DSource::TwoBounded: return "two-bounded";
        case DSource::FiberSumCap: return "fiber-sum-cap";
    }
    return "?";
}

/// One place above a base place. With FiberSumCap, d bounds the whole fiber's
/// different degree by 2e, e being the fiber weight.
struct RamificationDatum {
    std::string place;
    std::string base_place;
    std::uint32_t e = 1;
    std::uint32_t d = 0;
    DSource d_source = DSource::TameFormula;
    std::uint32_t residue_degree = 1;
};

/// Riemann-Hurwitz inputs for the tower's levels.
struct GenusRecipe {
    std::uint32_t base_genus = 0;
    std::uint32_t first_degree = 1;                 // [F_1 : F_0]
    std::vector<RamificationDatum> first_level;     // ramification in F_1/F_0
    std::uint32_t step_degree = 1;                  // [F_{n+1} : F_n] for n >= 1
    std::uint32_t ramified_places_first_level = 0;  // places of F_1 that may ramify higher up
};

struct TowerDef {
    std::string id;
    gf::FieldSpec field;
    TowerKind kind = TowerKind::Depth1;
    std::vector<std::string> vars;
    std::string notes;

    Poly f;    // Depth1: f(X, Y)
    Poly phi;  // Depth2: Phi(X, Y); TwistedDepth2: Phi(alpha, X, Y)
    Poly psi;  // Depth2: Psi(X, Y, Z)

    // TwistedDepth2
    gf::Element alpha;
    std::uint32_t alpha_generator_power = 0;
    std::uint32_t twist_base = 1;
    Poly backtrack;  // level-2 linear factor in (alpha, X, Y), X = u_0, Y = u_2

    std::optional<GenusRecipe> genus;

    /// Degree of the step polynomial of the given level in its new variable.
    long step_degree(long level) const {
        switch (kind) {
            case TowerKind::Depth1: return f.degree("Y");
            case TowerKind::Depth2: return level == 1 ? phi.degree("Y") : psi.degree("Z");
            case TowerKind::TwistedDepth2: return level == 1 ? phi.degree("Y") : phi.degree("Y") - 1;
        }
        return 0;
    }

    /// alpha^(base^(level-1)): the constant used by step `level`.
    gf::Element twist(long level) const {
        gf::Element a = alpha;
        for (long i = 1; i < level; ++i) a = a.pow(twist_base);
        return a;
    }

    /// sqrt(q) - 1 as text; exact when q is a square.
    std::string dv_bound() const {
        const std::uint64_t q = field.order();
        std::uint64_t r = 0;
        while ((r + 1) * (r + 1) <= q) ++r;
        if (r * r == q) return std::to_string(r - 1);
        return "sqrt(" + std::to_string(q) + ")-1";
    }
};

namespace detail {

inline Poly embed_poly(const Poly& p, const gf::FieldSpec& F) {
    const poly::FieldDomain D{F};
    return p.map_coefficients<gf::Element>(D, [&](const gf::Element& c) { return gf::embed(c, F); });
}

/// A polynomial field: {"source": "...", "vars": [...]} or
/// {"catalog": id, "fix": {"T": [coeffs]}} (fixed values are elements of the
/// tower's field, given by coefficient vector).
inline Poly read_poly(const nlohmann::json& j, const gf::FieldSpec& F, const std::vector<std::string>& vars,
                      const std::string& what) {
    if (!j.is_object()) fail(ErrorKind::SchemaError, what + " must be an object");
    if (j.contains("source")) {
        std::map<std::string, gf::Element> consts;
        if (j.contains("constants"))
            for (const auto& [k, v] : j.at("constants").items()) consts.emplace(k, gf::element_from_json(F, v));
        try {
            return poly::parse_poly<gf::Element>(j.at("source").get<std::string>(), poly::FieldDomain{F}, vars, consts);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::ParseError) fail(ErrorKind::SchemaError, what + ": " + e.what());
            throw;
        }
    }
    if (j.contains("catalog")) {
        const auto id = j.at("catalog").get<std::string>();
        Poly p = embed_poly(catalog::Catalog::shipped().gf(id), F);
        if (j.contains("fix")) {
            std::map<std::string, gf::Element> at;
            for (const auto& [k, v] : j.at("fix").items()) at.emplace(k, gf::element_from_json(F, v));
            p = p.partial_evaluate(at);
        }
        for (const auto& v : p.occurring_vars())
            if (std::find(vars.begin(), vars.end(), v) == vars.end())
                fail(ErrorKind::SchemaError, what + ": catalog entry " + id + " has unbound variable " + v);
        return p.with_vars(vars);
    }
    fail(ErrorKind::SchemaError, what + " needs 'source' or 'catalog'");
}

inline DSource read_dsource(const std::string& s) {
    if (s == "tame-formula") return DSource::TameFormula;
    if (s == "supplied") return DSource::Supplied;
    if (s == "two-bounded") return DSource::TwoBounded;
    if (s == "fiber-sum-cap") return DSource::FiberSumCap;
    fail(ErrorKind::SchemaError, "unknown d_source '" + s + "'");
}

inline void require_degree(const Poly& p, const std::string& var, const std::string& what) {
    if (p.is_zero() || p.degree(var) < 1)
        fail(ErrorKind::DegreeZeroStep, what + " has degree 0 in " + var);
}

}  // namespace detail

/// Validates and resolves a tower description.
inline TowerDef parse_tower(const nlohmann::json& j) {
    TowerDef t;
    try {
        if (j.value("schema", "") != "towerforge.tower/1") fail(ErrorKind::SchemaError, "schema must be towerforge.tower/1");
        t.id = j.at("id").get<std::string>();
        t.notes = j.value("notes", "");
        const auto& fj = j.at("field");
        try {
            t.field = gf::field_from_json(fj);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SchemaError) throw;
            fail(ErrorKind::FieldError, std::string(e.what()));
        }
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "depth1") {
            t.kind = TowerKind::Depth1;
            t.vars = {"X", "Y"};
            t.f = detail::read_poly(j.at("f"), t.field, t.vars, "f");
            detail::require_degree(t.f, "Y", "f");
        } else if (kind == "depth2") {
            t.kind = TowerKind::Depth2;
            t.vars = {"X", "Y", "Z"};
            t.phi = detail::read_poly(j.at("phi"), t.field, {"X", "Y"}, "phi");
            t.psi = detail::read_poly(j.at("psi"), t.field, {"X", "Y", "Z"}, "psi");
            detail::require_degree(t.phi, "Y", "phi");
            detail::require_degree(t.psi, "Z", "psi");
        } else if (kind == "twisted-depth2") {
            t.kind = TowerKind::TwistedDepth2;
            t.vars = {"alpha", "X", "Y"};
            t.phi = detail::read_poly(j.at("phi"), t.field, t.vars, "phi");
            t.backtrack = detail::read_poly(j.at("backtrack"), t.field, t.vars, "backtrack");
            detail::require_degree(t.phi, "Y", "phi");
            if (t.backtrack.degree("Y") != 1) fail(ErrorKind::SchemaError, "backtrack factor must be linear in Y");
            const auto& aj = j.at("alpha");
            t.alpha_generator_power = aj.at("generator_power").get<std::uint32_t>();
            t.alpha = gf::primitive_element(t.field).pow(t.alpha_generator_power);
            if (aj.contains("minimal_polynomial")) {
                // alpha must be a root of the stated polynomial over the prime field
                gf::Element acc = t.field.zero();
                const auto mp = aj.at("minimal_polynomial").get<std::vector<std::uint32_t>>();
                for (std::size_t i = mp.size(); i-- > 0;) acc = acc * t.alpha + t.field.from_int(mp[i]);
                if (!acc.is_zero()) fail(ErrorKind::FieldError, "alpha is not a root of its stated minimal polynomial");
            }
            t.twist_base = j.at("twist_base").get<std::uint32_t>();
        } else {
            fail(ErrorKind::SchemaError, "unknown tower kind '" + kind + "'");
        }
        if (j.contains("genus")) {
            const auto& g = j.at("genus");
            GenusRecipe r;
            r.base_genus = g.value("base_genus", 0u);
            r.first_degree = g.at("first_degree").get<std::uint32_t>();
            r.step_degree = g.at("step_degree").get<std::uint32_t>();
            r.ramified_places_first_level = g.value("ramified_places_first_level", 0u);
            for (const auto& d : g.at("first_level")) {
                RamificationDatum rd;
                rd.place = d.value("place", "");
                rd.base_place = d.value("base_place", rd.place);
                rd.e = d.at("e").get<std::uint32_t>();
                rd.d = d.at("d").get<std::uint32_t>();
                rd.d_source = detail::read_dsource(d.value("d_source", "tame-formula"));
                rd.residue_degree = d.value("residue_degree", 1u);
                r.first_level.push_back(rd);
            }
            t.genus = r;
        }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::SchemaError, std::string("tower file: ") + e.what());
    }
    return t;
}

inline TowerDef parse_tower_file(const std::filesystem::path& path) { return parse_tower(load_json(path)); }

inline std::filesystem::path towers_dir() { return data_dir() / "towers"; }

/// Ids of the shipped towers, sorted.
inline std::vector<std::string> shipped_tower_ids() {
    std::vector<std::string> ids;
    for (const auto& e : std::filesystem::directory_iterator(towers_dir()))
        if (e.path().extension() == ".json") ids.push_back(e.path().stem().string());
    std::sort(ids.begin(), ids.end());
    return ids;
}

/// A shipped tower by id, or a tower file by path.
inline TowerDef load_tower(const std::string& id_or_path) {
    const std::filesystem::path shipped = towers_dir() / (id_or_path + ".json");
    if (std::filesystem::exists(shipped)) return parse_tower_file(shipped);
    if (std::filesystem::exists(id_or_path)) return parse_tower_file(id_or_path);
    fail(ErrorKind::NotInCatalog, "no tower '" + id_or_path + "'");
}

}  // namespace towerforge::engine

#endif  // TOWERFORGE_ENGINE_TOWER_HPP
