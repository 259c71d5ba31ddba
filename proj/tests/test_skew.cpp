// Copyright 2026 The towerforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "towerforge/data_dir.hpp"
#include "towerforge/poly/io.hpp"
#include "towerforge/skew/skew.hpp"

using namespace towerforge;
using skew::Poly;
using skew::SkewPoly;

namespace {

constexpr std::uint32_t kSeed = 7321;

const poly::FieldDomain& f2() {
    static const poly::FieldDomain d{gf::make_field(2, 1)};
    return d;
}

Poly parse(const std::string& s, const poly::FieldDomain& d, const std::vector<std::string>& vars) {
    return poly::parse_poly<gf::Element>(s, d, vars);
}

// x -> sum c_i x^(q^i) with every coefficient evaluated at a point of GF(2^k).
gf::Element act(const SkewPoly& s, const std::map<std::string, gf::Element>& at, const gf::Element& x) {
    const auto& F = gf::field_of(x);
    const poly::FieldDomain D{F};
    gf::Element acc = F.zero();
    gf::Element xi = x;
    for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
        const auto c = s.coeffs()[i].map_coefficients<gf::Element>(D, [&](const gf::Element& e) { return gf::embed(e, F); });
        acc = acc + c.evaluate(at) * xi;
        xi = gf::frobenius(xi, s.q());
    }
    return acc;
}

SkewPoly random_skew(std::mt19937& rng, const std::vector<std::string>& vars) {
    std::uniform_int_distribution<int> deg(0, 3), bit(0, 1), ex(0, 2);
    std::vector<Poly> c;
    const int n = deg(rng);
    for (int i = 0; i <= n; ++i) {
        Poly p(f2(), vars);
        for (int t = 0; t < 3; ++t) {
            if (!bit(rng)) continue;
            poly::Exps e(vars.size());
            for (auto& x : e) x = static_cast<std::uint32_t>(ex(rng));
            p += Poly::monomial(f2(), vars, e, f2().one());
        }
        c.push_back(p);
    }
    return SkewPoly(2, c);
}

}  // namespace

TEST(Skew, TauCommutation) {
    const std::vector<std::string> v = {"c"};
    const SkewPoly tau = skew::from_names(2, f2(), v, {"", "1"});
    const SkewPoly c = skew::from_names(2, f2(), v, {"c"});
    const SkewPoly c2 = SkewPoly(2, {parse("c^2", f2(), v)});
    EXPECT_EQ(tau * c, c2 * tau);
    EXPECT_EQ((tau * tau).degree(), 2);
}

TEST(Skew, ConstraintListsMatchTranscription) {
    const auto gold = load_data_file("drinfeld_constraints.json");
    const auto vars = gold.at("variables").get<std::vector<std::string>>();
    const auto lists = skew::commutation_constraints(2);
    ASSERT_EQ(lists.curve.size(), 11u);
    ASSERT_EQ(lists.commute.size(), 8u);
    ASSERT_EQ(gold.at("curve").size(), 11u);
    ASSERT_EQ(gold.at("commute").size(), 8u);
    for (std::size_t i = 0; i < 11; ++i)
        EXPECT_EQ(lists.curve[i], parse(gold.at("curve")[i].get<std::string>(), f2(), vars)) << "curve " << i;
    for (std::size_t i = 0; i < 8; ++i)
        EXPECT_EQ(lists.commute[i], parse(gold.at("commute")[i].get<std::string>(), f2(), vars)) << "commute " << i;
    EXPECT_EQ(lists.curve.front(), parse("h5 + g3", f2(), vars));
}

TEST(Skew, P3Identities) {
    const auto r = skew::simplify_p3_identity();
    ASSERT_EQ(r.size(), 3u);
    for (const auto& x : r) EXPECT_TRUE(x.pass) << x.name;
}

TEST(Skew, IsogenySystemT) {
    const auto eqs = skew::isogeny_system_T(2);
    ASSERT_EQ(eqs.size(), 4u);
    const std::vector<std::string> v = {"a", "g1", "g2", "g3", "l1", "l2", "l3"};
    const char* lhs[] = {"g1^2 - a", "g2^2 - a g1", "g3^2 - a g2", "-a g3"};
    const char* rhs[] = {"l1 - a^16", "l2 - l1 a^8", "l3 - l2 a^4", "-l3 a^2"};
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(eqs[i].lhs, parse(lhs[i], f2(), v)) << i;
        EXPECT_EQ(eqs[i].rhs, parse(rhs[i], f2(), v)) << i;
    }
    EXPECT_EQ(skew::isogeny_system_S(2).size(), 6u);
}

TEST(Skew, EliminationQ2) {
    const auto t = skew::eliminate_T(2);
    EXPECT_EQ(t.normal_form, parse("a^15 + g1 a^7 + g2 a^3 + g3 a - gamma", f2(), {"a", "g1", "g2", "g3", "gamma"}));
    EXPECT_EQ(t.relation, skew::frob(t.w, 2, 1) - t.w);
    const auto s = skew::eliminate_S(2);
    EXPECT_EQ(s.normal_form, parse("a^63 + h1 a^31 + h2 a^15 + h3 a^7 + h4 a^3 + h5 a - beta", f2(),
                                   {"a", "h1", "h2", "h3", "h4", "h5", "beta"}));
    EXPECT_TRUE(s.relation_bottom_up == s.relation || s.relation_bottom_up == -s.relation);
}

TEST(Skew, EliminationQ3) {
    const poly::FieldDomain f3{gf::make_field(3, 1)};
    const auto t = skew::eliminate_T(3);
    EXPECT_EQ(t.normal_form, parse("a^40 + g1 a^13 + g2 a^4 + g3 a - gamma", f3, {"a", "g1", "g2", "g3", "gamma"}));
    EXPECT_EQ(t.relation, skew::frob(t.w, 3, 1) - t.w);
}

TEST(Skew, BadQ) {
    try {
        (void)skew::eliminate_T(6);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadPower);
    }
}

TEST(Skew, DegreeThreeGcdAtSpecialization) {
    const auto w = skew::find_degree3_specialization(5);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->k, 5u);
    EXPECT_EQ(w->gcd.degree(), 3);
    // the witness satisfies every constraint
    const auto lists = skew::commutation_constraints(2);
    const auto& F = gf::field_of(w->point.begin()->second);
    const poly::FieldDomain D{F};
    for (const auto* l : {&lists.curve, &lists.commute})
        for (const auto& p : *l)
            EXPECT_TRUE(p.map_coefficients<gf::Element>(D, [&](const gf::Element& e) { return gf::embed(e, F); })
                            .evaluate(w->point)
                            .is_zero());
}

// Product of twisted polynomials is composition of the additive maps they define.
TEST(SkewProperty, ProductIsComposition) {
    std::mt19937 rng(kSeed);
    const std::vector<std::string> vars = {"x", "y"};
    const auto F = gf::make_field(2, 8);
    std::uniform_int_distribution<std::uint32_t> pick(0, F.order() - 1);
    for (int i = 0; i < 120; ++i) {
        const auto A = random_skew(rng, vars), B = random_skew(rng, vars), C = random_skew(rng, vars);
        const std::map<std::string, gf::Element> at = {{"x", F.from_packed(pick(rng))}, {"y", F.from_packed(pick(rng))}};
        const auto z = F.from_packed(pick(rng));
        ASSERT_EQ(act(A * B, at, z), act(A, at, act(B, at, z))) << "seed " << kSeed << " case " << i;
        ASSERT_EQ((A * B) * C, A * (B * C));
        ASSERT_EQ(A * (B + C), A * B + A * C);
    }
}
