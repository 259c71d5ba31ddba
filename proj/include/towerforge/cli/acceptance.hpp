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
 * @file acceptance.hpp
 * @brief The nine acceptance criteria, each reduced to one pass/fail line.
 */

#ifndef TOWERFORGE_CLI_ACCEPTANCE_HPP
#define TOWERFORGE_CLI_ACCEPTANCE_HPP

#include <chrono>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "towerforge/cli/checks.hpp"
#include "towerforge/engine/genus.hpp"
#include "towerforge/poly/roots.hpp"

namespace towerforge::cli {

struct Criterion {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

inline std::string format_line(const Criterion& c) {
    std::ostringstream os;
    os << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << c.detail << "] ("
       << std::fixed;
    os.precision(2);
    os << c.seconds << " s)";
    return os.str();
}

namespace acc {

using engine::Engine;
using engine::Value;

inline double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Runs every check of the given groups; lists failures.
inline Criterion check_groups(int id, const std::string& name, const std::vector<std::string>& groups) {
    Criterion c{id, name, true, "", 0};
    int n = 0;
    std::string fails, modes;
    for (const auto& g : groups)
        for (const auto& r : run_checks(g)) {
            ++n;
            if (r.id == "psi-T") modes = " psi-T mode " + r.outcome.mode + ";";
            if (!r.outcome.pass) {
                c.pass = false;
                fails += " " + r.id + (r.error.empty() ? "" : " (" + r.error + ")");
            }
        }
    c.detail = std::to_string(n) + " checks;" + modes + (fails.empty() ? " all pass" : " failing:" + fails);
    return c;
}

inline Criterion identity_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    auto c = check_groups(1, "identity suite", {"identity"});
    c.seconds = since(t0);
    if (c.seconds >= 60) {
        c.pass = false;
        c.detail += "; over 60 s";
    }
    return c;
}

inline Criterion elliptic_structure() {
    Criterion c{5, "elliptic tower structure", false, "", 0};
    const Engine eng(engine::load_tower("elliptic"));
    const auto& F = eng.tower().field;
    int total = 0, pattern21 = 0, split1 = 0;
    for (const auto& v : engine::projective_line(F)) {
        const auto fr = eng.fiber(1, {v});
        if (fr.roots.size() == 1 && fr.roots[0].multiplicity == 3) ++total;
        if (fr.roots.size() == 2 && fr.degree_drop == 0) {
            std::multiset<int> m{fr.roots[0].multiplicity, fr.roots[1].multiplicity};
            if (m == std::multiset<int>{1, 2}) ++pattern21;
        }
        if (fr.split()) ++split1;
    }
    const engine::PlaceAnalyzer pa(eng);
    const auto stable = pa.splitting_locus(3);
    const auto g = engine::first_level_genus(eng.tower());
    const auto l2 = catalog::verify_level2_factor();
    c.pass = total == 1 && pattern21 == 5 && stable.size() == 4 && g.genus == 4 && g.exact && l2.divides &&
             l2.quadratic_irreducible;
    std::string labels;
    for (const auto& v : stable) labels += " " + engine::label(v);
    c.detail = "totally ramified " + std::to_string(total) + ", (e=2)(e=1) " + std::to_string(pattern21) +
               ", split through level 3:" + labels + " (" + std::to_string(split1) + " split at level 1), genus " +
               std::to_string(g.genus) + ", level-2 factor divides " + (l2.divides ? "yes" : "no") +
               ", quadratic irreducible " + (l2.quadratic_irreducible ? "yes" : "no");
    return c;
}

inline Criterion elliptic_limit() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c{6, "split chains and genus bound, n <= 6", true, "", 0};
    const Engine eng(engine::load_tower("elliptic"));
    const auto rows = engine::limit_report(eng, 6);
    std::string counts;
    for (const auto& r : rows) {
        const std::uint64_t m = std::uint64_t{1} << (r.level - 1);
        if (r.places_lower != 13 * m || r.genus_upper != static_cast<long long>(13 * m + 1)) c.pass = false;
        counts += " " + std::to_string(r.places_lower) + "/" + std::to_string(r.genus_upper);
    }
    const poly::Rational bound = poly::Rational(1) - poly::Rational(1) / poly::Rational(417);
    const auto& last = rows.back().ratio;
    if ((last - bound).numerator() < 0) c.pass = false;
    c.seconds = since(t0);
    if (c.seconds >= 300) c.pass = false;
    c.detail = "N/g by level:" + counts + "; ratio at 6 = " + last.to_string() + ", DV bound " + rows.back().dv_bound;
    return c;
}

inline Criterion oracle_equivalence() {
    Criterion c{7, "oracle equivalence", true, "", 0};
    const std::vector<std::pair<std::string, long>> cases = {
        {"gs-q2", 3}, {"t2t1-mod-t", 3}, {"t2t-mod-t2t1", 2}, {"elliptic", 1}};
    for (const auto& [id, nmax] : cases) {
        const Engine eng(engine::load_tower(id));
        for (long n = 1; n <= nmax; ++n) {
            std::uint64_t affine = 0;
            for (const auto& ch : eng.enumerate_chains(n))
                if (ch.affine()) ++affine;
            const auto o = eng.oracle_count(n);
            if (o != affine) c.pass = false;
            if (n == nmax) c.detail += id + " n=" + std::to_string(n) + ": " + std::to_string(affine) + "/" + std::to_string(o) + "; ";
        }
    }
    return c;
}

inline Criterion loetter_splitting() {
    Criterion c{8, "Loetter tower splitting", false, "", 0};
    const Engine big(engine::load_tower("loetter-7-4"));
    const Engine small(engine::load_tower("loetter-49"));
    const auto lb = big.splitting_locus_values(3);
    const auto ls = small.splitting_locus_values(3);
    std::size_t kept = 0;
    for (const auto& v : lb) kept += big.splits_to(v, 4);
    c.pass = !lb.empty() && ls.empty() && kept == lb.size();
    c.detail = "F_2401 locus(3) " + std::to_string(lb.size()) + " values, " + std::to_string(kept) +
               " still split at level 4; F_49 locus(3) " + std::to_string(ls.size());
    return c;
}

// ---------------------------------------------------------------- property suites

inline engine::Poly random_poly(std::mt19937_64& rng, const poly::FieldDomain& D, const std::vector<std::string>& vars) {
    const auto all = gf::enumerate(D.field);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::uniform_int_distribution<int> nterms(0, 5), ex(0, 3);
    engine::Poly p(D, vars);
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        poly::Exps e(vars.size());
        for (auto& x : e) x = static_cast<std::uint32_t>(ex(rng));
        p.add_term(e, all[pick(rng)]);
    }
    return p;
}

inline std::string ring_axioms(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    const poly::FieldDomain D{gf::make_field(2, 2)};
    const std::vector<std::string> vars = {"X", "Y"};
    for (int i = 0; i < n; ++i) {
        const auto a = random_poly(rng, D, vars), b = random_poly(rng, D, vars), c = random_poly(rng, D, vars);
        const bool ok = (a + b) + c == a + (b + c) && a + b == b + a && (a * b) * c == a * (b * c) &&
                        a * b == b * a && a * (b + c) == a * b + a * c && (a - a).is_zero() &&
                        a * engine::Poly::constant(D, vars, D.one()) == a;
        if (!ok) return "ring axioms, instance " + std::to_string(i);
    }
    return "";
}

/// Sum of root multiplicities plus the degree of the rootless cofactor is the degree.
inline std::string root_multiplicity(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    const auto F = gf::make_field(2, 4);
    const poly::FieldDomain D{F};
    const auto all = gf::enumerate(F);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    std::uniform_int_distribution<int> nlin(0, 5), deg(0, 4);
    for (int i = 0; i < n; ++i) {
        poly::GPoly f = poly::GPoly::constant(D, all[1 + pick(rng) % (all.size() - 1)]);
        const int k = nlin(rng);
        for (int j = 0; j < k; ++j) f = f * poly::GPoly(D, {all[pick(rng) % 4], F.one()});  // repeats likely
        std::vector<gf::Element> extra(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& x : extra) x = all[pick(rng)];
        extra.back() = F.one();
        f = f * poly::GPoly(D, extra);
        poly::GPoly rest = f;
        long sum = 0;
        for (const auto& [r, m] : poly::roots_in_field(f)) {
            sum += m;
            for (int j = 0; j < m; ++j) rest = rest / poly::GPoly(D, {-r, F.one()});
        }
        if (sum + rest.degree() != f.degree() || !poly::roots_by_enumeration(rest).empty())
            return "root multiplicity, instance " + std::to_string(i);
    }
    return "";
}

inline const std::vector<std::string>& small_towers() {
    static const std::vector<std::string> ids = {"gs-q2", "t2t1-mod-t", "t2t-mod-t2t1", "elkies-q3", "loetter-49"};
    return ids;
}

/// splits_to(v, n + 1) implies splits_to(v, n), on random (tower, value, n).
inline std::string monotonicity(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::vector<Engine> engines;
    for (const auto& id : small_towers()) engines.emplace_back(engine::load_tower(id));
    for (int i = 0; i < n; ++i) {
        const auto& e = engines[rng() % engines.size()];
        const auto line = engine::projective_line(e.tower().field);
        const auto v = line[rng() % line.size()];
        const long k = 1 + static_cast<long>(rng() % 3);
        if (e.splits_to(v, k + 1) && !e.splits_to(v, k))
            return "monotonicity, " + e.tower().id + " at " + engine::label(v);
    }
    return "";
}

/// Above a start with no degree drop anywhere in its tree, the multiplicity-
/// weighted chain count is the product of the step degrees.
inline std::string degree_conservation(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::vector<Engine> engines;
    for (const auto& id : small_towers()) engines.emplace_back(engine::load_tower(id));
    engines.emplace_back(engine::load_tower("elliptic"));
    int done = 0;
    for (int attempt = 0; done < n && attempt < 50 * n; ++attempt) {
        const auto& e = engines[rng() % engines.size()];
        const auto line = engine::projective_line(e.tower().field);
        const auto v = line[rng() % line.size()];
        const long depth = e.tower().kind == engine::TowerKind::TwistedDepth2 ? 2 : 1 + static_cast<long>(rng() % 3);
        std::uint64_t weight = 1;
        bool drop = false;
        std::vector<std::pair<std::vector<Value>, std::uint64_t>> tree = {{{v}, 1}};
        for (long level = 1; level <= depth && !drop; ++level) {
            std::vector<std::pair<std::vector<Value>, std::uint64_t>> next;
            for (const auto& [c, w] : tree) {
                engine::FiberReport fr;
                try {
                    fr = e.fiber(level, c);
                } catch (const Error&) {
                    drop = true;
                    break;
                }
                if (fr.degree_drop != 0) {
                    drop = true;
                    break;
                }
                for (const auto& r : fr.roots) {
                    auto ext = c;
                    ext.push_back(r.value);
                    next.emplace_back(std::move(ext), w * static_cast<std::uint64_t>(r.multiplicity));
                }
            }
            tree = std::move(next);
            weight *= static_cast<std::uint64_t>(e.tower().step_degree(level));
        }
        if (drop) continue;
        std::uint64_t sum = 0;
        for (const auto& [c, w] : tree) sum += w;
        if (sum != weight) return "degree conservation, " + e.tower().id + " at " + engine::label(v);
        ++done;
    }
    if (done < n) return "degree conservation: only " + std::to_string(done) + " usable instances";
    return "";
}

inline Criterion property_suites(std::uint64_t seed) {
    Criterion c{9, "property suites", true, "", 0};
    constexpr int kInstances = 100;
    const std::vector<std::pair<std::string, std::function<std::string(std::uint64_t, int)>>> suites = {
        {"ring-axioms", ring_axioms},
        {"root-multiplicity", root_multiplicity},
        {"locus-monotonicity", monotonicity},
        {"degree-conservation", degree_conservation}};
    std::string fails;
    for (std::size_t i = 0; i < suites.size(); ++i) {
        const auto msg = suites[i].second(seed + i, kInstances);
        if (!msg.empty()) {
            c.pass = false;
            fails += " " + msg + ";";
        }
    }
    c.detail = std::to_string(suites.size()) + " suites x " + std::to_string(kInstances) + " instances, seed " +
               std::to_string(seed) + (fails.empty() ? ", zero failures" : "; failing:" + fails);
    return c;
}

template <class Fn>
Criterion timed(int id, const std::string& name, Fn fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    try {
        c = fn();
    } catch (const Error& e) {
        c = {id, name, false, e.what(), 0};
    }
    if (c.seconds == 0) c.seconds = since(t0);
    return c;
}

}  // namespace acc

constexpr std::uint64_t kDefaultSeed = 20261016;

/// Runs one criterion (1..9), or all of them when `only` is 0.
inline std::vector<Criterion> run_acceptance(std::uint64_t seed = kDefaultSeed, int only = 0) {
    using namespace acc;
    const std::vector<std::pair<std::string, std::function<Criterion()>>> all = {
        {"identity suite", identity_suite},
        {"level-5 suite", [] { return check_groups(2, "level-5 suite", {"level5"}); }},
        {"Drinfeld constraint lists", [] { return check_groups(3, "Drinfeld constraint lists", {"drinfeld-lists"}); }},
        {"Drinfeld eliminations", [] { return check_groups(4, "Drinfeld eliminations", {"drinfeld-elim"}); }},
        {"elliptic tower structure", elliptic_structure},
        {"split chains and genus bound, n <= 6", elliptic_limit},
        {"oracle equivalence", oracle_equivalence},
        {"Loetter tower splitting", loetter_splitting},
        {"property suites", [seed] { return property_suites(seed); }},
    };
    std::vector<Criterion> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (only && only != id) continue;
        out.push_back(timed(id, all[i].first, all[i].second));
    }
    return out;
}

}  // namespace towerforge::cli

#endif  // TOWERFORGE_CLI_ACCEPTANCE_HPP
