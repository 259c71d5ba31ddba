// Copyright 2026 The towerforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "towerforge/engine/genus.hpp"

using namespace towerforge;
using namespace towerforge::engine;

namespace {

constexpr std::uint64_t kSeed = 4242;

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Usage;  // sentinel: nothing thrown
}

const Engine& elliptic() {
    static const Engine e(load_tower("elliptic"));
    return e;
}

gf::Element g(const gf::FieldSpec& F, long k) { return gf::primitive_element(F).pow(k); }

std::set<std::string> label_set(const std::vector<Value>& vs) {
    std::set<std::string> s;
    for (const auto& v : vs) s.insert(label(v));
    return s;
}

// Phi(alpha, X, Y) rebuilt from its exponent table, alpha = g^33.
std::vector<std::vector<gf::Element>> phi_table(const gf::FieldSpec& F) {
    const gf::Element a = g(F, 33);
    const std::vector<std::vector<std::pair<int, int>>> c = {
        {{4, 3}, {14, 2}, {19, 0}},
        {{30, 3}, {12, 2}, {30, 1}, {17, 0}},
        {{17, 3}, {29, 2}, {0, 1}, {30, 0}},
        {{0, 3}, {24, 2}, {4, 1}, {9, 0}}};
    std::vector<std::vector<gf::Element>> t(4, std::vector<gf::Element>(4, F.zero()));
    for (int j = 0; j < 4; ++j)
        for (const auto& [e, i] : c[static_cast<std::size_t>(j)]) t[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = a.pow(e);
    return t;
}

// Coefficients in Y of Phi(alpha, x, Y), low to high.
std::vector<gf::Element> phi_at(const gf::FieldSpec& F, const std::vector<std::vector<gf::Element>>& t,
                                const gf::Element& x) {
    std::vector<gf::Element> out;
    for (const auto& row : t) {
        gf::Element acc = F.zero();
        for (std::size_t i = row.size(); i-- > 0;) acc = acc * x + row[i];
        out.push_back(acc);
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

// Root multiplicities by brute evaluation and repeated synthetic division.
std::vector<int> oracle_mults(const gf::FieldSpec& F, std::vector<gf::Element> f, const std::vector<gf::Element>& all) {
    std::vector<int> m;
    for (const auto& r : all) {
        int k = 0;
        auto h = f;
        for (;;) {
            if (h.size() < 2) break;
            std::vector<gf::Element> q(h.size() - 1, F.zero());
            gf::Element acc = F.zero();
            for (std::size_t i = h.size(); i-- > 0;) {
                acc = acc * r + h[i];
                if (i > 0) q[i - 1] = acc;
            }
            if (!acc.is_zero()) break;
            ++k;
            h = q;
        }
        if (k) m.push_back(k);
    }
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

// ---------------------------------------------------------------- tower files

TEST(TowerFile, GsTowerIsDepthOneOverF4) {
    const auto t = load_tower("gs-q2");
    EXPECT_EQ(t.kind, TowerKind::Depth1);
    EXPECT_EQ(t.field.order(), 4u);
    const poly::FieldDomain D{t.field};
    EXPECT_EQ(t.f, poly::parse_poly<gf::Element>("(X + 1) Y^2 + (X + 1) Y + X^2", D, {"X", "Y"}));
}

TEST(TowerFile, EllipticTowerEmbedsAlpha) {
    const auto& t = elliptic().tower();
    EXPECT_EQ(t.kind, TowerKind::TwistedDepth2);
    EXPECT_EQ(t.field.order(), 1024u);
    EXPECT_EQ(t.alpha, g(t.field, 33));
    // alpha^5 + alpha^2 + 1 = 0
    EXPECT_TRUE((t.alpha.pow(5) + t.alpha.pow(2) + t.field.one()).is_zero());
    EXPECT_EQ(t.twist(3), t.alpha.pow(64));
}

TEST(TowerFile, Errors) {
    auto base = [] {
        return nlohmann::json{{"schema", "towerforge.tower/1"},
                              {"id", "x"},
                              {"field", {{"p", 2}, {"k", 1}}},
                              {"kind", "depth1"},
                              {"f", {{"source", "X^2 + X + 1"}}}};
    };
    EXPECT_EQ(kind_of([&] { parse_tower(base()); }), ErrorKind::DegreeZeroStep);
    auto j = base();
    j["schema"] = "other";
    EXPECT_EQ(kind_of([&] { parse_tower(j); }), ErrorKind::SchemaError);
    j = base();
    j["f"] = {{"source", "Y^2 + W"}};
    EXPECT_EQ(kind_of([&] { parse_tower(j); }), ErrorKind::SchemaError);
    j = base();
    j["field"] = {{"p", 4}, {"k", 1}};
    EXPECT_EQ(kind_of([&] { parse_tower(j); }), ErrorKind::FieldError);
    auto e = load_json(towers_dir() / "elliptic.json");
    e["alpha"]["minimal_polynomial"] = {1, 1, 0, 0, 0, 1};
    EXPECT_EQ(kind_of([&] { parse_tower(e); }), ErrorKind::FieldError);
    EXPECT_EQ(kind_of([] { load_tower("no-such-tower"); }), ErrorKind::NotInCatalog);
}

TEST(TowerFile, AllShippedTowersLoad) {
    const auto ids = shipped_tower_ids();
    EXPECT_GE(ids.size(), 8u);
    for (const auto& id : ids) EXPECT_EQ(load_tower(id).id, id);
}

// ---------------------------------------------------------------- fibers

TEST(Fiber, GsTowerAtW) {
    const Engine e(load_tower("gs-q2"));
    const auto& F = e.tower().field;
    const gf::Element w = g(F, 1);
    // y^2 + y = w^2 / (w + 1), by enumeration
    std::set<std::string> expect;
    for (const auto& y : gf::enumerate(F))
        if ((y * y + y) * (w + F.one()) == w * w) expect.insert(label(Value::at(y)));
    const auto fr = e.fiber(1, {Value::at(w)});
    ASSERT_EQ(fr.roots.size(), 2u);
    EXPECT_EQ(expect.size(), 2u);
    for (const auto& r : fr.roots) {
        EXPECT_EQ(r.multiplicity, 1);
        EXPECT_TRUE(expect.count(label(r.value)));
    }
    EXPECT_TRUE(fr.split());
}

TEST(Fiber, GsTowerPoleAtInfinity) {
    const Engine e(load_tower("gs-q2"));
    const auto fr = e.fiber(1, {Value::infinity()});
    ASSERT_EQ(fr.roots.size(), 1u);
    EXPECT_TRUE(fr.roots[0].value.inf);
    EXPECT_EQ(fr.roots[0].multiplicity, 2);
    EXPECT_EQ(fr.degree_drop, 0);
}

TEST(Fiber, EllipticTotallyRamifiedAndSplit) {
    const auto& F = elliptic().tower().field;
    const auto tr = elliptic().fiber(1, {Value::at(g(F, 858))});
    ASSERT_EQ(tr.roots.size(), 1u);
    EXPECT_EQ(tr.roots[0].multiplicity, 3);
    const auto sp = elliptic().fiber(1, {Value::at(g(F, 165))});
    EXPECT_TRUE(sp.split());
    EXPECT_EQ(sp.roots.size(), 3u);
}

TEST(Fiber, EllipticLevelOneMatchesOracle) {
    const auto& F = elliptic().tower().field;
    const auto t = phi_table(F);
    const auto all = gf::enumerate(F);
    std::map<std::vector<int>, std::set<long>> patterns;
    for (const auto& x : all) {
        const auto coeffs = phi_at(F, t, x);
        auto expect = oracle_mults(F, coeffs, all);
        const long deg = static_cast<long>(coeffs.size()) - 1;
        if (deg < 3) expect.push_back(static_cast<int>(3 - deg));  // roots at infinity
        std::sort(expect.begin(), expect.end());
        const auto fr = elliptic().fiber(1, {Value::at(x)});
        std::vector<int> got;
        for (const auto& r : fr.roots) got.push_back(r.multiplicity);
        std::sort(got.begin(), got.end());
        ASSERT_EQ(got, expect) << label(Value::at(x));
        if (!x.is_zero()) patterns[got].insert(gf::discrete_log(x));
    }
    EXPECT_EQ(patterns[{3}], (std::set<long>{858}));
    EXPECT_EQ(patterns[(std::vector<int>{1, 2})], (std::set<long>{198, 330, 528, 627, 924}));
}

TEST(Fiber, EllipticInfinity) {
    const auto& F = elliptic().tower().field;
    // leading coefficient X^3 + a^24 X^2 + a^4 X + a^9 vanishes at these: root at infinity
    for (long k : {969, 33, 318}) {
        const auto fr = elliptic().fiber(1, {Value::at(g(F, k))});
        EXPECT_TRUE(std::any_of(fr.roots.begin(), fr.roots.end(), [](const Root& r) { return r.value.inf; })) << k;
    }
    const auto inf = elliptic().fiber(1, {Value::infinity()});
    EXPECT_TRUE(inf.split());
    EXPECT_EQ(label_set({inf.roots[0].value, inf.roots[1].value, inf.roots[2].value}),
              (std::set<std::string>{"g^281", "g^808", "g^66"}));
}

TEST(Fiber, BacktrackRootIsExcluded) {
    const auto& F = elliptic().tower().field;
    const auto u0 = Value::at(g(F, 165));
    const auto f1 = elliptic().fiber(1, {u0});
    for (const auto& r : f1.roots) {
        const auto f2 = elliptic().fiber(2, {u0, r.value});
        ASSERT_TRUE(f2.excluded.has_value());
        EXPECT_EQ(f2.degree, 2);
        for (const auto& x : f2.roots) EXPECT_NE(x.value, *f2.excluded);
    }
}

TEST(Fiber, VanishingStepIsReported) {
    const Engine e(load_tower("drinfeld-t-mod-t2t1"));
    EXPECT_EQ(kind_of([&] { e.fiber(2, {Value::infinity(), Value::infinity()}); }), ErrorKind::LeadingVanishes);
    bool seen = false;
    for (const auto& r : e.ramification_locus(2))
        if (!r.anomaly.empty()) seen = true;
    EXPECT_TRUE(seen);
}

// ---------------------------------------------------------------- backtrack

TEST(Backtrack, LevelTwoIsTheStoredFactor) {
    const auto& F = elliptic().tower().field;
    const poly::FieldDomain D{F};
    const auto a = g(F, 33);
    auto lin = [&](int p, int q, int r) {
        const Poly X = Poly::variable(D, {"X", "Y"}, "X"), Y = Poly::variable(D, {"X", "Y"}, "Y");
        const auto c = [&](int e) { return Poly::constant(D, {"X", "Y"}, a.pow(e)); };
        return (X + c(p)) * Y + X * c(q) + c(r);
    };
    EXPECT_EQ(elliptic().backtrack_factor(2), lin(25, 28, 27));
    EXPECT_EQ(elliptic().backtrack_factor(3), lin(14, 7, 30));
    // (25 * 8, 28 * 8, 27 * 8) mod 31
    EXPECT_EQ(200 % 31, 14);
    EXPECT_EQ(224 % 31, 7);
    EXPECT_EQ(216 % 31, 30);
    for (long n = 4; n <= 7; ++n) EXPECT_NO_THROW(elliptic().backtrack_factor(n));
}

TEST(Backtrack, CorruptedFactorFails) {
    const auto& F = elliptic().tower().field;
    const poly::FieldDomain D{F};
    Poly bad = elliptic().backtrack_factor(2) + Poly::constant(D, {"X", "Y"}, F.one());
    EXPECT_EQ(kind_of([&] { elliptic().certify_backtrack(2, bad); }), ErrorKind::BacktrackDivisionFails);
}

// ---------------------------------------------------------------- chains and oracle

TEST(Chains, EmptyStartSet) {
    const Engine e(load_tower("gs-q2"));
    EXPECT_TRUE(e.enumerate_chains(2, std::vector<Value>{}).empty());
}

TEST(Chains, EmptySolutionSet) {
    const auto t = parse_tower({{"schema", "towerforge.tower/1"},
                                {"id", "none"},
                                {"field", {{"p", 2}, {"k", 1}}},
                                {"kind", "depth1"},
                                {"f", {{"source", "Y^2 + Y + 1"}}}});
    const Engine e(t);
    for (long n = 1; n <= 2; ++n) {
        std::size_t affine = 0;
        for (const auto& c : e.enumerate_chains(n)) affine += c.affine();
        EXPECT_EQ(affine, 0u);
        EXPECT_EQ(e.oracle_count(n), 0u);
    }
}

TEST(Chains, OracleEquivalence) {
    const std::vector<std::pair<std::string, long>> cases = {
        {"gs-q2", 3}, {"t2t1-mod-t", 3}, {"t2t-mod-t2t1", 2}, {"elliptic", 1}, {"elkies-q3", 2}};
    for (const auto& [id, nmax] : cases) {
        const Engine e(load_tower(id));
        for (long n = 1; n <= nmax; ++n) {
            std::uint64_t affine = 0;
            for (const auto& c : e.enumerate_chains(n)) affine += c.affine();
            EXPECT_EQ(affine, e.oracle_count(n)) << id << " n=" << n;
        }
    }
}

TEST(Chains, OracleSizeLimit) {
    EXPECT_EQ(kind_of([] { elliptic().oracle_count(2); }), ErrorKind::SizeExceeded);
}

TEST(Chains, ValuesSatisfyStepsAndAvoidBacktrack) {
    const auto& t = elliptic().tower();
    const auto& F = t.field;
    const std::vector<Value> starts = {Value::at(g(F, 165)), Value::at(g(F, 858)), Value::at(g(F, 7))};
    for (const auto& c : elliptic().enumerate_chains(3, starts)) {
        if (!c.affine()) continue;
        for (std::size_t i = 1; i < c.values.size(); ++i) {
            const auto tw = t.twist(static_cast<long>(i));
            const auto v = t.phi.evaluate({{"alpha", tw}, {"X", c.values[i - 1].x}, {"Y", c.values[i].x}});
            EXPECT_TRUE(v.is_zero());
            if (i >= 2) {
                const auto b = elliptic().backtrack_factor(static_cast<long>(i)).evaluate(
                    {{"X", c.values[i - 2].x}, {"Y", c.values[i].x}});
                const auto fr = elliptic().fiber(static_cast<long>(i), {c.values[i - 2], c.values[i - 1]});
                if (b.is_zero())  // only when the backtrack root is repeated
                    EXPECT_TRUE(std::any_of(fr.roots.begin(), fr.roots.end(),
                                            [&](const Root& r) { return r.value == c.values[i]; }));
            }
        }
    }
}

// ---------------------------------------------------------------- charts

TEST(Charts, DoubleChartIsIdentity) {
    const auto t = load_tower("t2t1-mod-t");
    const auto once = infinity_transform(t.f, "X");
    EXPECT_NE(once, t.f);
    EXPECT_EQ(infinity_transform(once, "X"), t.f);
    const auto c = infinity_charts(t.f);
    EXPECT_EQ(infinity_transform(c.y_chart, "Y"), t.f);
}

// ---------------------------------------------------------------- loci

TEST(Locus, EllipticPlaceLevel) {
    const PlaceAnalyzer pa(elliptic());
    EXPECT_EQ(pa.splitting_locus(2).size(), 24u);
    EXPECT_EQ(label_set(pa.splitting_locus(3)), (std::set<std::string>{"g^165", "g^368", "g^523", "g^891"}));
    // u_0 = infinity splits at level 1 but not through level 3
    EXPECT_TRUE(elliptic().fiber(1, {Value::infinity()}).split());
    EXPECT_FALSE(pa.splits_completely(Value::infinity(), 3));
}

TEST(Locus, EllipticRamification) {
    std::set<std::string> bases;
    for (const auto& r : elliptic().ramification_locus(1)) bases.insert(label(r.base));
    EXPECT_EQ(bases, (std::set<std::string>{"g^858", "g^198", "g^330", "g^528", "g^627", "g^924"}));
    EXPECT_FALSE(bases.count("g^165"));
}

TEST(Locus, GsRamification) {
    const Engine e(load_tower("gs-q2"));
    const auto& F = e.tower().field;
    // y^2 + y = x^2/(x + 1): repeated roots exactly where x + 1 = 0, and at x = infinity
    std::set<std::string> expect = {"inf"};
    for (const auto& x : gf::enumerate(F))
        if ((x + F.one()).is_zero()) expect.insert(label(Value::at(x)));
    std::set<std::string> got;
    for (const auto& r : e.ramification_locus(1)) got.insert(label(r.base));
    EXPECT_EQ(got, expect);
}

TEST(Locus, Loetter) {
    const Engine small(load_tower("loetter-49"));
    EXPECT_TRUE(small.splitting_locus_values(3).empty());
    const Engine big(load_tower("loetter-7-4"));
    const auto l3 = big.splitting_locus_values(3);
    EXPECT_FALSE(l3.empty());
    for (const auto& v : l3) EXPECT_TRUE(big.splits_to(v, 4)) << label(v);
}

// ---------------------------------------------------------------- genus and limit

TEST(Genus, EllipticFirstLevel) {
    const auto gb = first_level_genus(elliptic().tower());
    EXPECT_EQ(gb.two_g_minus_2, 6);
    EXPECT_EQ(gb.genus, 4);
    EXPECT_TRUE(gb.exact);
}

TEST(Genus, LevelBounds) {
    for (long n = 1; n <= 6; ++n) {
        const long long m = 1LL << (n - 1);
        EXPECT_EQ(level_genus_bound(elliptic().tower(), n).genus, 13 * m + 1);
        EXPECT_EQ(level_genus_bound(elliptic().tower(), n, DSource::TwoBounded).genus, 13 * m - 9);
        EXPECT_FALSE(level_genus_bound(elliptic().tower(), n).exact);
    }
    // two-bounded caps are tight on F_1
    EXPECT_EQ(level_genus_bound(elliptic().tower(), 1, DSource::TwoBounded).genus, 4);
}

TEST(Genus, TrivialAndInconsistent) {
    EXPECT_EQ(rh_genus(0, 1, {}).genus, 0);
    EXPECT_EQ(rh_genus(2, 1, {}).genus, 2);
    // tame double cover of P^1 ramified at 4 places: genus 1
    std::vector<RamificationDatum> four(4, RamificationDatum{"P", "", 2, 1, DSource::TameFormula, 1});
    for (int i = 0; i < 4; ++i) four[static_cast<std::size_t>(i)].place = "P" + std::to_string(i);
    EXPECT_EQ(rh_genus(0, 2, four).genus, 1);
    RamificationDatum big{"P", "", 3, 2, DSource::TameFormula, 1};
    EXPECT_EQ(kind_of([&] { rh_genus(0, 2, {big}); }), ErrorKind::InconsistentData);
    RamificationDatum wrong{"P", "", 2, 2, DSource::TameFormula, 1};
    EXPECT_EQ(kind_of([&] { rh_genus(0, 2, {wrong}); }), ErrorKind::InconsistentData);
    RamificationDatum two{"P", "", 2, 1, DSource::TwoBounded, 1};
    EXPECT_EQ(kind_of([&] { rh_genus(0, 2, {two}); }), ErrorKind::InconsistentData);
}

TEST(Limit, EllipticToLevelSix) {
    const auto rows = limit_report(elliptic(), 6);
    ASSERT_EQ(rows.size(), 6u);
    for (const auto& r : rows) {
        const std::uint64_t m = 1ULL << (r.level - 1);
        EXPECT_EQ(r.places_lower, 13 * m);
        EXPECT_EQ(r.genus_upper, static_cast<long long>(13 * m + 1));
        EXPECT_EQ(r.dv_bound, "31");
    }
    EXPECT_EQ(rows[0].genus_exact, 4);
    EXPECT_EQ(rows.back().ratio.to_string(), "416/417");
}

TEST(Limit, NoRecipe) {
    const Engine e(load_tower("gs-q2"));
    EXPECT_EQ(kind_of([&] { limit_report(e, 2); }), ErrorKind::NoGenusRecipe);
    EXPECT_EQ(load_tower("t2t1-mod-t").dv_bound(), "1");
    EXPECT_EQ(load_tower("t2t-mod-t2t1").dv_bound(), "3");
}

TEST(Limit, SplitStarts) {
    EXPECT_EQ(label_set(split_starts(elliptic())),
              (std::set<std::string>{"g^165", "g^368", "g^523", "g^858", "g^891"}));
}

// ---------------------------------------------------------------- series

TEST(Series, InverseAndPrecision) {
    const auto F = gf::make_field(2, 3);
    const auto one = F.one();
    const Series x = Series::constant(F, one, 20) + Series::monomial(F, g(F, 1), 1, 20);
    const Series p = x * x.inv();
    EXPECT_EQ(p.coeff(0), one);
    for (int i = 1; i < 20; ++i) EXPECT_TRUE(p.coeff(i).is_zero());
    EXPECT_EQ(kind_of([&] { p.coeff(20); }), ErrorKind::PrecisionExhausted);
    const Series exact = Series::constant(F, one) + Series::monomial(F, one, 1);
    EXPECT_EQ(kind_of([&] { exact.inv(); }), ErrorKind::PrecisionExhausted);
    EXPECT_EQ(Series::monomial(F, one, 3).inv().val(), -3);
}

// ---------------------------------------------------------------- properties

TEST(EngineProperty, ChainTreeDegreeConservation) {
    std::mt19937_64 rng(kSeed);
    const std::vector<std::string> ids = {"gs-q2", "t2t1-mod-t", "t2t-mod-t2t1", "elkies-q3", "loetter-49"};
    std::vector<Engine> es;
    for (const auto& id : ids) es.emplace_back(load_tower(id));
    int done = 0;
    for (int attempt = 0; done < 100 && attempt < 5000; ++attempt) {
        const auto& e = es[rng() % es.size()];
        const auto line = projective_line(e.tower().field);
        const auto v = line[rng() % line.size()];
        const long n = 1 + static_cast<long>(rng() % 3);
        const auto chains = e.enumerate_chains(n, std::vector<Value>{v});
        bool drop = false;
        for (long k = 1; k <= n && !drop; ++k)
            for (const auto& c : e.enumerate_chains(k - 1 == 0 ? 0 : k - 1, std::vector<Value>{v}))
                if (e.fiber(k, c.values).degree_drop) drop = true;
        if (drop) continue;
        std::uint64_t sum = 0, expect = 1;
        for (const auto& c : chains) {
            std::uint64_t w = 1;
            for (int m : c.step_mults) w *= static_cast<std::uint64_t>(m);
            sum += w;
        }
        for (long k = 1; k <= n; ++k) expect *= static_cast<std::uint64_t>(e.tower().step_degree(k));
        ASSERT_EQ(sum, expect) << "seed " << kSeed << " tower " << e.tower().id << " start " << label(v);
        ++done;
    }
    EXPECT_EQ(done, 100);
}

TEST(EngineProperty, SplittingLocusIsMonotone) {
    std::mt19937_64 rng(kSeed + 1);
    const std::vector<std::string> ids = {"gs-q2", "t2t1-mod-t", "t2t-mod-t2t1", "elkies-q3"};
    for (int i = 0; i < 100; ++i) {
        const Engine e(load_tower(ids[rng() % ids.size()]));
        const long n = 1 + static_cast<long>(rng() % 2);
        const auto hi = label_set(e.splitting_locus_values(n + 1));
        const auto lo = label_set(e.splitting_locus_values(n));
        for (const auto& v : hi) ASSERT_TRUE(lo.count(v)) << "seed " << kSeed + 1 << " " << e.tower().id << " " << v;
    }
}

TEST(EngineProperty, PlaceLocusIsMonotone) {
    const PlaceAnalyzer pa(elliptic());
    const auto l1 = label_set([&] {
        std::vector<Value> v;
        for (const auto& x : projective_line(elliptic().tower().field))
            if (elliptic().fiber(1, {x}).split()) v.push_back(x);
        return v;
    }());
    const auto l2 = label_set(pa.splitting_locus(2));
    const auto l3 = label_set(pa.splitting_locus(3));
    for (const auto& v : l2) EXPECT_TRUE(l1.count(v));
    for (const auto& v : l3) EXPECT_TRUE(l2.count(v));
}
