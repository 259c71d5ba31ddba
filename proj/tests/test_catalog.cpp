// Copyright 2026 The towerforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "towerforge/catalog/golden.hpp"
#include "towerforge/catalog/verify.hpp"

using namespace towerforge;
using namespace towerforge::catalog;

namespace {

constexpr std::uint32_t kSeed = 90210;

const Catalog& cat() { return Catalog::shipped(); }

// Value of a GF(2) polynomial at a point of a larger field.
gf::Element eval_at(const GfPoly& p, const gf::FieldSpec& F, const std::map<std::string, gf::Element>& at) {
    const poly::FieldDomain D{F};
    return p.map_coefficients<gf::Element>(D, [&](const gf::Element& e) { return gf::embed(e, F); }).evaluate(at);
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Usage;
}

}  // namespace

TEST(Golden, AuditIsClean) {
    const auto rows = audit(cat());
    EXPECT_EQ(rows.size(), 44u);
    for (const auto& r : rows) {
        EXPECT_TRUE(r.expansion_matches) << r.id;
        EXPECT_TRUE(r.checksum_matches) << r.id;
    }
}

TEST(Golden, UnknownIdIsNotInCatalog) {
    EXPECT_EQ(kind_of([] { cat().gf("phi_T3"); }), ErrorKind::NotInCatalog);
}

TEST(Golden, StaleExpansionDetected) {
    auto j = cat().regenerated();
    j["entries"][0]["source"] = "X^3 + Y^3";
    const auto path = std::filesystem::temp_directory_path() / "towerforge_stale_catalog.json";
    std::ofstream(path) << j.dump();
    const auto c = Catalog::load(path);
    const auto rows = audit(c);
    EXPECT_FALSE(rows[0].expansion_matches);
    EXPECT_TRUE(rows[1].expansion_matches);
    std::filesystem::remove(path);
}

TEST(Symmetry, ModularPolynomialsAreSymmetric) {
    for (const auto* id : {"T", "T2T1", "T2T"}) EXPECT_TRUE(verify_symmetry(modular_polynomial(id))) << id;
    EXPECT_FALSE(verify_symmetry(cat().gf("f_T")));
}

TEST(Psi, QuotientOfShiftedPhi) {
    const auto r = extract_psi(cat().gf("phi_T"), cat().gf("psi_T"));
    EXPECT_TRUE(r.remainder_ok);
    EXPECT_EQ(r.z_degree, 2);
    EXPECT_TRUE(r.mode == "exact" || r.mode == "mod-ideal");
    // oracle: Phi(Y, Z) - Phi(Y, X) = (Z - X) Psi at random points of GF(2^8)
    const auto F = gf::make_field(2, 8);
    std::mt19937 rng(kSeed);
    std::uniform_int_distribution<std::uint32_t> pick(0, 255);
    const auto phi = cat().gf("phi_T");
    for (int i = 0; i < 100; ++i) {
        const auto x = F.from_packed(pick(rng)), y = F.from_packed(pick(rng)), z = F.from_packed(pick(rng)),
                   t = F.from_packed(pick(rng));
        const auto lhs = eval_at(phi, F, {{"X", y}, {"Y", z}, {"T", t}}) - eval_at(phi, F, {{"X", y}, {"Y", x}, {"T", t}});
        EXPECT_EQ(lhs, (z - x) * eval_at(r.psi, F, {{"X", x}, {"Y", y}, {"Z", z}, {"T", t}}));
    }
}

TEST(Psi, WrongGoldenRejected) {
    const auto bad = cat().gf("psi_T") + cat().gf("f_T");
    EXPECT_EQ(kind_of([&] { extract_psi(cat().gf("phi_T"), bad); }), ErrorKind::PsiMismatch);
}

TEST(Parameterization, LevelsTAndT2T1) {
    for (const auto* id : {"T", "T2T1"}) EXPECT_TRUE(verify_parameterization(id)) << id;
}

TEST(Parameterization, PerturbedJ1Fails) {
    for (const auto* id : {"T", "T2T1"}) EXPECT_FALSE(verify_parameterization(id, true)) << id;
}

TEST(Parameterization, PointwiseOracle) {
    // Phi(j0(u), j1(u)) = 0 at random (u, T) in GF(2^10)
    const auto F = gf::make_field(2, 10);
    std::mt19937 rng(kSeed + 1);
    std::uniform_int_distribution<std::uint32_t> pick(1, 1023);
    for (const auto* id : {"T", "T2T1", "T2T"}) {
        const auto phi = std::string(id) == "T2T" ? cat().gf("phi_T2T_completed") : modular_polynomial(id);
        const auto j = parameterization(id);
        int checked = 0;
        for (int i = 0; i < 120; ++i) {
            const std::map<std::string, gf::Element> at = {{"u", F.from_packed(pick(rng))}, {"T", F.from_packed(pick(rng))}};
            const auto d0 = eval_at(j.j0_den, F, at), d1 = eval_at(j.j1_den, F, at);
            if (d0.is_zero() || d1.is_zero()) continue;
            const auto x = eval_at(j.j0_num, F, at) / d0, y = eval_at(j.j1_num, F, at) / d1;
            EXPECT_TRUE(eval_at(phi, F, {{"X", x}, {"Y", y}, {"T", at.at("T")}}).is_zero()) << id;
            ++checked;
        }
        EXPECT_GE(checked, 100);
    }
}

TEST(CrossFactorization, LevelT) {
    const auto r = verify_cross_factorization("T");
    EXPECT_TRUE(r.product_matches);
    EXPECT_TRUE(r.display_matches);
    EXPECT_TRUE(r.unique_top_factor);
    EXPECT_EQ(r.factor_y_degrees, (std::vector<long>{1, 2}));
}

TEST(CrossFactorization, LevelT2T1) {
    const auto r = verify_cross_factorization("T2T1");
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.factor_y_degrees, (std::vector<long>{1, 4}));
}

TEST(CrossFactorization, LevelT2T) {
    const auto r = verify_cross_factorization("T2T");
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.factor_y_degrees, (std::vector<long>{1, 2, 2, 4}));
}

TEST(CrossFactorization, DisplayedCrossPolynomialT) {
    // (X + T^2)^3 Y + (Y + T)^3 X^2 expands to 6 terms over F_2
    EXPECT_EQ(cat().gf("cross_T").size(), 6u);
}

TEST(Reduction, ModT) {
    EXPECT_TRUE(verify_reduction("T2T1", {0, 1}));
    EXPECT_TRUE(verify_reduction("T2T1", {1, 1}));
}

TEST(Reduction, ModT2T1) { EXPECT_TRUE(verify_reduction("T2T", {1, 1, 1})); }

TEST(Reduction, BadModuli) {
    EXPECT_EQ(kind_of([] { verify_reduction("T2T", {0, 1}); }), ErrorKind::BadModulus);
    EXPECT_EQ(kind_of([] { verify_reduction("T2T1", {1, 1, 1}); }), ErrorKind::BadModulus);
    EXPECT_EQ(kind_of([] { verify_reduction("T2T1", {1, 0, 1}); }), ErrorKind::BadModulus);
}

TEST(DegreeFormula, ThreeFiveNine) {
    const auto a = verify_degree_formula({0, 1}), b = verify_degree_formula({1, 1, 1}), c = verify_degree_formula({0, 1, 1});
    EXPECT_EQ(a.formula, poly::Rational(3));
    EXPECT_EQ(b.formula, poly::Rational(5));
    EXPECT_EQ(c.formula, poly::Rational(9));
    EXPECT_TRUE(a.pass() && b.pass() && c.pass());
}

TEST(DegreeFormula, UnknownLevel) {
    EXPECT_EQ(kind_of([] { verify_degree_formula({1, 1, 0, 1}); }), ErrorKind::NotInCatalog);
}

TEST(Level5, DihedralOverQ) {
    EXPECT_TRUE(verify_dihedral());
    EXPECT_FALSE(verify_dihedral(true));
}

TEST(Level5, DihedralOverF7) {
    EXPECT_TRUE(verify_dihedral(false, 7));
    EXPECT_FALSE(verify_dihedral(true, 7));
}

TEST(Level5, RecursionForm) { EXPECT_TRUE(verify_level5_form()); }

TEST(Level5, RogersRamanujanLift) {
    const auto r = verify_rr_lift();
    EXPECT_TRUE(r.identity_q);
    EXPECT_TRUE(r.py_matches_dihedral);
    ASSERT_EQ(r.identity_mod_p.size(), 3u);
    EXPECT_TRUE(r.pass());
}

TEST(Level5, PerturbedLiftFails) { EXPECT_FALSE(verify_rr_lift(true).pass()); }

TEST(Level5, LiftPointwiseOracle) {
    // pick v in GF(10007), solve w^5 = R(v) when possible, test the product
    const auto F = gf::make_field(10007, 1);
    const poly::FieldDomain D{F};
    auto red = [&](const char* id, const char* v) { return detail::reduce(cat().q(id).to_upoly(v), D); };
    const auto P = red("P5", "t"), rn = red("R_num", "v"), rd = red("R_den", "v");
    std::mt19937 rng(kSeed + 2);
    std::uniform_int_distribution<std::uint32_t> pick(2, 10006);
    int checked = 0;
    for (int i = 0; i < 3000 && checked < 100; ++i) {
        const auto v = F.from_int(pick(rng));
        if (rd(v).is_zero() || rn(v).is_zero() || (v * v - F.one()).is_zero()) continue;
        const auto R = rn(v) / rd(v);
        // 10007 - 1 is prime to 5, so w = R^(5^-1 mod 10006)
        std::int64_t e = 0;
        while ((5 * e) % 10006 != 1) ++e;
        const auto w = R.pow(e);
        const auto x = v.inv() - v, y = w.inv() - w;
        if ((x - F.one()).is_zero()) continue;
        EXPECT_EQ(P(y) * P((x + F.from_int(4)) / (x - F.one())), F.from_int(125));
        ++checked;
    }
    EXPECT_EQ(checked, 100);
}

TEST(Level5, ScalingEquivalence) {
    EXPECT_TRUE(verify_scaling_equivalence(3));
    EXPECT_FALSE(verify_scaling_equivalence(2));
    EXPECT_TRUE(verify_scaling_roots());
}

TEST(Uniformizer, ReducedCompositionIsIdentity) {
    EXPECT_TRUE(verify_reduced_uniformizer(0));
    EXPECT_TRUE(verify_reduced_uniformizer(1));
}

TEST(Elliptic, AlphaRelation) {
    // alpha = beta^33 satisfies the GF(32) defining polynomial x^5 + x^2 + 1
    const auto F = gf::make_field(2, 10);
    const auto a = elliptic_alpha(F);
    EXPECT_TRUE((a.pow(5) + a.pow(2) + F.one()).is_zero());
    EXPECT_EQ(gf::make_field(2, 5).defining_poly(), (std::vector<std::uint32_t>{1, 0, 1, 0, 0, 1}));
}

TEST(Elliptic, LevelTwoFactor) {
    const auto r = verify_level2_factor();
    EXPECT_TRUE(r.divides);
    EXPECT_EQ(r.quotient_degree, 2);
    EXPECT_TRUE(r.quadratic_irreducible);
    EXPECT_TRUE(r.certificate_u0_log.has_value());
}

TEST(Elliptic, WrongFactorDoesNotDivide) {
    const auto bad = parse_gf_source(cat().entry("backtrack_ell")) +
                     GfPoly::variable(entry_field(cat().entry("backtrack_ell")), {"alpha", "X", "Y"}, "X");
    const auto r = verify_level2_factor(cat(), &bad);
    EXPECT_FALSE(r.divides);
}

TEST(Rel13, IrreducibleSpecialization) {
    const auto r = smoke_rel13();
    EXPECT_TRUE(r.found);
    EXPECT_EQ(r.degree, 13);
}

TEST(Parameterization, DisplayedLevelT2TIsIncomplete) {
    // the displayed polynomial misses X^7Y, X^7Y^2, X^4Y^3, X^4Y^4 and their mirrors
    const auto shown = cat().gf("phi_T2T"), full = cat().gf("phi_T2T_completed");
    EXPECT_FALSE(annihilates(shown, parameterization("T2T")));
    EXPECT_TRUE(annihilates(full, parameterization("T2T")));
    EXPECT_TRUE(verify_symmetry(full));
    EXPECT_EQ(full.degree("Y"), 9);
    const auto diff = full - shown;
    std::set<std::pair<std::uint32_t, std::uint32_t>> xy;
    for (const auto& [e, c] : diff.terms()) xy.insert({e[diff.index_of("X")], e[diff.index_of("Y")]});
    const std::set<std::pair<std::uint32_t, std::uint32_t>> want = {{7, 1}, {1, 7}, {7, 2}, {2, 7}, {4, 3}, {3, 4}, {4, 4}};
    EXPECT_EQ(xy, want);
}
