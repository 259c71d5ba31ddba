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
 * @file genus.hpp
 * @brief Riemann-Hurwitz bookkeeping, split-chain counts and limit reports.
 */

#ifndef TOWERFORGE_ENGINE_GENUS_HPP
#define TOWERFORGE_ENGINE_GENUS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "towerforge/engine/engine.hpp"
#include "towerforge/engine/places.hpp"
#include "towerforge/poly/ring.hpp"

namespace towerforge::engine {

struct GenusBound {
    std::uint64_t degree = 1;
    long long two_g_minus_2 = 0;
    long long genus = 0;
    bool exact = true;  // false once a capped different is used
};

/// 2g - 2 = m (2 g0 - 2) + sum of d times residue degree.
inline GenusBound rh_genus(std::uint32_t base_genus, std::uint64_t degree, const std::vector<RamificationDatum>& data) {
    GenusBound g;
    g.degree = degree;
    long long diff = 0;
    std::map<std::string, std::uint64_t> weight;
    for (const auto& r : data) {
        const std::string where = r.place.empty() ? "a place" : r.place;
        if (r.e < 1) fail(ErrorKind::InconsistentData, where + ": ramification index must be >= 1");
        if (r.residue_degree < 1) fail(ErrorKind::InconsistentData, where + ": residue degree must be >= 1");
        switch (r.d_source) {
            case DSource::TameFormula:
                if (r.d != r.e - 1) fail(ErrorKind::InconsistentData, where + ": tame different must be e - 1");
                break;
            case DSource::TwoBounded:
                if (r.d != 2 * r.e - 2) fail(ErrorKind::InconsistentData, where + ": two-bounded different must be 2e - 2");
                g.exact = false;
                break;
            case DSource::FiberSumCap:
                if (r.d > 2 * r.e) fail(ErrorKind::InconsistentData, where + ": fiber cap exceeds 2e");
                g.exact = false;
                break;
            case DSource::Supplied:
                break;
        }
        weight[r.base_place.empty() ? r.place : r.base_place] += std::uint64_t{r.e} * r.residue_degree;
        diff += static_cast<long long>(r.d) * r.residue_degree;
    }
    for (const auto& [place, w] : weight)
        if (w > degree)
            fail(ErrorKind::InconsistentData, "places above " + place + " have total weight " + std::to_string(w) +
                                                  " > degree " + std::to_string(degree));
    g.two_g_minus_2 = static_cast<long long>(degree) * (2 * static_cast<long long>(base_genus) - 2) + diff;
    if (g.two_g_minus_2 % 2 != 0 || g.two_g_minus_2 < -2)
        fail(ErrorKind::InconsistentData, "2g - 2 = " + std::to_string(g.two_g_minus_2) + " is not attainable");
    g.genus = (g.two_g_minus_2 + 2) / 2;
    return g;
}

/// Genus of F_1 from the tower's recipe.
inline GenusBound first_level_genus(const TowerDef& t) {
    if (!t.genus) fail(ErrorKind::NoGenusRecipe, "tower " + t.id + " has no genus recipe");
    return rh_genus(t.genus->base_genus, t.genus->first_degree, t.genus->first_level);
}

/// Upper bound for g(F_n) over F_1: each of the recipe's ramified places of F_1
/// contributes at most 2d (cap) or 2d - 2 (two-bounded), d = [F_n : F_1].
inline GenusBound level_genus_bound(const TowerDef& t, long n, DSource mode = DSource::FiberSumCap) {
    if (n < 1) fail(ErrorKind::Usage, "level must be >= 1");
    const GenusBound g1 = first_level_genus(t);
    std::uint64_t m = 1;
    for (long i = 1; i < n; ++i) m *= t.genus->step_degree;
    std::vector<RamificationDatum> data;
    for (std::uint32_t i = 0; i < t.genus->ramified_places_first_level; ++i) {
        RamificationDatum r;
        r.place = "fiber above ramified place " + std::to_string(i + 1) + " of F_1";
        r.e = static_cast<std::uint32_t>(m);
        r.d = mode == DSource::TwoBounded ? 2 * r.e - 2 : 2 * r.e;
        r.d_source = mode;
        data.push_back(r);
    }
    GenusBound b = rh_genus(static_cast<std::uint32_t>(g1.genus), m, data);
    b.exact = b.exact && g1.exact;
    b.degree = m * t.genus->first_degree;
    return b;
}

/// Starts for split counting: the stable splitting locus plus the totally
/// ramified level-1 values.
inline std::vector<Value> split_starts(const Engine& eng, long depth = 3) {
    std::vector<Value> out;
    if (eng.tower().kind == TowerKind::TwistedDepth2) out = PlaceAnalyzer(eng).splitting_locus(depth);
    else out = eng.splitting_locus_values(depth);
    const long d1 = eng.step(1).degree;
    for (const auto& v : projective_line(eng.tower().field)) {
        const auto fr = eng.fiber(1, {v});
        if (fr.roots.size() == 1 && fr.roots[0].multiplicity == d1) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Level-k objects (k = 1..n) above the starts reached through split steps from
/// level 2 on: places for twisted towers, value chains otherwise.
inline std::vector<std::uint64_t> split_chain_counts(const Engine& eng, long n, const std::vector<Value>& starts) {
    std::vector<std::uint64_t> tot(static_cast<std::size_t>(n), 0);
    if (eng.tower().kind == TowerKind::TwistedDepth2) {
        const PlaceAnalyzer pa(eng);
        for (const auto& s : starts) {
            const auto pc = pa.count(s, n);
            for (long k = 0; k < n; ++k) tot[static_cast<std::size_t>(k)] += pc.places[static_cast<std::size_t>(k)];
        }
        return tot;
    }
    for (long k = 1; k <= n; ++k)
        for (const auto& c : eng.enumerate_chains(k, starts))
            if (std::all_of(c.step_mults.begin() + 1, c.step_mults.end(), [](int m) { return m == 1; }))
                ++tot[static_cast<std::size_t>(k - 1)];
    return tot;
}

struct LimitRow {
    long level = 0;
    std::uint64_t degree = 0;  // [F_n : F_0]
    std::uint64_t places_lower = 0;
    long long genus_upper = 0;        // every fiber different capped at 2d
    long long genus_upper_sharp = 0;  // two-bounded: 2d - 2
    std::optional<long long> genus_exact;
    poly::Rational ratio;
    std::string dv_bound;
};

inline std::vector<LimitRow> limit_report(const Engine& eng, long n_max) {
    const auto& t = eng.tower();
    if (!t.genus) fail(ErrorKind::NoGenusRecipe, "tower " + t.id + " has no genus recipe");
    const auto counts = split_chain_counts(eng, n_max, split_starts(eng));
    const GenusBound g1 = first_level_genus(t);
    std::vector<LimitRow> rows;
    for (long n = 1; n <= n_max; ++n) {
        LimitRow r;
        r.level = n;
        const auto cap = level_genus_bound(t, n, DSource::FiberSumCap);
        const auto sharp = level_genus_bound(t, n, DSource::TwoBounded);
        r.degree = cap.degree;
        r.places_lower = counts[static_cast<std::size_t>(n - 1)];
        r.genus_upper = cap.genus;
        r.genus_upper_sharp = sharp.genus;
        if (n == 1 && g1.exact) r.genus_exact = g1.genus;
        if (r.genus_upper > 0)
            r.ratio = poly::Rational(static_cast<long>(r.places_lower)) / poly::Rational(static_cast<long>(r.genus_upper));
        r.dv_bound = t.dv_bound();
        rows.push_back(r);
    }
    return rows;
}

}  // namespace towerforge::engine

#endif  // TOWERFORGE_ENGINE_GENUS_HPP
