// Copyright 2026 The towerforge Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "towerforge/gf/conway.hpp"
#include "towerforge/poly/io.hpp"
#include "towerforge/poly/quotient.hpp"
#include "towerforge/poly/ratfunc.hpp"
#include "towerforge/poly/roots.hpp"
#include "towerforge/poly/sparse.hpp"

using namespace towerforge;
using namespace towerforge::poly;
using gf::Element;

namespace {

constexpr std::uint32_t kSeed = 7001;

FieldDomain F(std::uint32_t p, std::uint32_t k) { return FieldDomain{gf::make_field(p, k)}; }

using SP = SparsePoly<Element>;
using QP = SparsePoly<Rational>;

SP P2(const std::string& s, std::vector<std::string> vars = {"X", "Y", "T"}) {
    return parse_poly<Element>(s, F(2, 1), vars);
}

template <class K>
ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Usage;
}

SP random_poly(std::mt19937& rng, const FieldDomain& d, const std::vector<std::string>& vars, int terms, int maxdeg) {
    SP p(d, vars);
    std::uniform_int_distribution<std::uint32_t> c(0, d.field.order() - 1);
    std::uniform_int_distribution<std::uint32_t> e(0, static_cast<std::uint32_t>(maxdeg));
    for (int i = 0; i < terms; ++i) {
        Exps ex(vars.size());
        for (auto& x : ex) x = e(rng);
        p.add_term(ex, d.field.from_packed(c(rng)));
    }
    return p;
}

QP random_qpoly(std::mt19937& rng, const std::vector<std::string>& vars, int terms, int maxdeg) {
    QP p(RationalDomain{}, vars);
    std::uniform_int_distribution<long> c(-9, 9), d(1, 5);
    std::uniform_int_distribution<std::uint32_t> e(0, static_cast<std::uint32_t>(maxdeg));
    for (int i = 0; i < terms; ++i) {
        Exps ex(vars.size());
        for (auto& x : ex) x = e(rng);
        p.add_term(ex, Rational(mpz_class(c(rng)), mpz_class(d(rng))));
    }
    return p;
}

}  // namespace

TEST(UPoly, GcdAndDivision) {
    const auto d7 = F(7, 1);
    using U = UPoly<Element>;
    const U a(d7, {d7.from_int(-1), d7.zero(), d7.one()});
    const U b(d7, {d7.from_int(-1), d7.one()});
    EXPECT_EQ(gcd(a, b), b);
    EXPECT_EQ(gcd(a * d7.from_int(3), U(d7)), a);
    auto [q, r] = a.divmod(b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_TRUE(r.is_zero());
}

TEST(SparsePoly, ExpansionMatchesFrozenOracle) {
    const auto a = P2("(X+T^2)^3*Y + (Y+T)^3*X^2");
    // the X^2 Y T^2 terms of the two summands cancel in characteristic 2
    EXPECT_EQ(a, P2("X^3*Y + X^2*Y^3 + X^2*Y^2*T + X*Y*T^4 + X^2*T^3 + Y*T^6"));
    EXPECT_EQ(a.size(), 6u);
    EXPECT_TRUE((a * P2("0")).is_zero());
    EXPECT_EQ(P2("X+Y").pow(2), P2("X^2+Y^2"));
}

TEST(SparsePoly, ExactDivision) {
    const auto a = P2("(X+T^2)^3*Y + (Y+T)^3*X^2");
    EXPECT_EQ(exact_divide(a, P2("X*Y+T^3"), "Y"), P2("X^2+X*Y^2+X*Y*T+Y*T^3"));
    EXPECT_EQ(exact_divide(a, P2("1"), "Y"), a);
    EXPECT_EQ(kind_of<int>([&] { exact_divide(P2("X*Y+1"), P2("X"), "X"); }), ErrorKind::InexactDivision);
}

TEST(SparsePoly, DivideWithRemainder) {
    auto [q, r] = divide_with_remainder(P2("X^2"), P2("X"), "X");
    EXPECT_EQ(q, P2("X"));
    EXPECT_TRUE(r.is_zero());
    EXPECT_EQ(kind_of<int>([&] { divide_with_remainder(P2("X^2"), P2("T*X+1"), "X"); }), ErrorKind::NotMonic);
    // remainder theorem: f(Y, t) mod (t - X) = f(Y, X)
    const std::vector<std::string> v = {"X", "Y", "t", "T"};
    const auto f = P2("t^3 + T*Y*t^2 + Y^2*t + T", v);
    auto [q2, r2] = divide_with_remainder(f, P2("t + X", v), "t");
    EXPECT_EQ(r2, P2("X^3 + T*Y*X^2 + Y^2*X + T", v));
    EXPECT_EQ(q2 * P2("t + X", v) + r2, f);
}

TEST(SparsePoly, SubstituteIdentityAndClearing) {
    const auto a = P2("X^2*Y + T");
    auto [n0, d0] = substitute(a, {});
    EXPECT_EQ(n0, a);
    EXPECT_EQ(d0, P2("1"));
    // X := (u+T)/u  ->  ((u+T)^2 Y + T u^2) / u^2
    const std::vector<std::string> v = {"u", "T"};
    auto [n, d] = substitute(a, {{"X", Fraction<Element>{P2("u+T", v), P2("u", v)}}});
    EXPECT_EQ(n, parse_poly<Element>("(u+T)^2*Y + T*u^2", F(2, 1), {"Y", "T", "u"}));
    EXPECT_EQ(d, P2("u^2", v));
    EXPECT_EQ(kind_of<int>([&] { substitute(a, {{"X", Fraction<Element>{P2("u", v), P2("0", v)}}}); }),
              ErrorKind::DenominatorVanishes);
}

TEST(SparsePoly, CanonicalSerialization) {
    const auto a = P2("X*Y + T^3 + X^2");
    const auto b = P2("T^3 + X^2 + Y*X");
    EXPECT_EQ(poly_to_json(a).dump(), poly_to_json(b).dump());
    EXPECT_NE(poly_to_json(a).dump(), poly_to_json(b + P2("1")).dump());
    EXPECT_EQ(poly_from_json<Element>(poly_to_json(a), F(2, 1)), a);
    const auto q = parse_poly<Rational>("v^5 - 11*v^3 + 3", RationalDomain{}, {"v"});
    EXPECT_EQ(poly_from_json<Rational>(poly_to_json(q), RationalDomain{}), q);
    EXPECT_EQ(kind_of<int>([&] { P2("X + ) "); }), ErrorKind::ParseError);
    EXPECT_EQ(kind_of<int>([&] { P2("Z"); }), ErrorKind::ParseError);
}

TEST(Roots, Examples) {
    const auto d2 = F(2, 1);
    using U = UPoly<Element>;
    const auto r = roots_in_field(U(d2, {d2.zero(), d2.one(), d2.one()}));
    ASSERT_EQ(r.size(), 2u);
    EXPECT_EQ(r[0], std::make_pair(d2.zero(), 1));
    EXPECT_EQ(r[1], std::make_pair(d2.one(), 1));
    EXPECT_TRUE(roots_in_field(U(d2, {d2.one(), d2.one(), d2.one()})).empty());
    EXPECT_EQ(kind_of<int>([&] { roots_in_field(U(d2)); }), ErrorKind::ZeroPolynomial);
    const auto g = gcd_univariate(P2("X^2+1", {"X"}), P2("X+1", {"X"}), "X");
    EXPECT_EQ(g, P2("X+1", {"X"}));
}

// Root finding by gcd/trace splitting agrees with exhaustive evaluation.
TEST(RootsProperty, MatchesEnumerationOracle) {
    std::mt19937 rng(kSeed);
    for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 10}, {7, 4}, {3, 6}}) {
        const auto d = F(p, k);
        std::uniform_int_distribution<std::uint32_t> c(0, d.field.order() - 1);
        std::uniform_int_distribution<int> deg(1, 4);
        for (int i = 0; i < 100; ++i) {
            UPoly<Element> f = UPoly<Element>::constant(d, d.field.from_packed(c(rng) | 1));
            const int nlin = deg(rng);
            for (int j = 0; j < nlin; ++j) {
                const auto r = d.field.from_packed(c(rng));
                f = f * UPoly<Element>(d, {-r, d.one()});
            }
            f = f * UPoly<Element>(d, {d.field.from_packed(c(rng)), d.field.from_packed(c(rng)), d.one()});
            const auto fast = roots_in_field(f);
            const auto slow = roots_by_enumeration(f);
            ASSERT_EQ(fast, slow);
            int total = 0;
            for (const auto& [x, m] : fast) {
                ASSERT_TRUE(f(x).is_zero());
                total += m;
            }
            ASSERT_LE(total, f.degree());
            if (gcd(f, f.derivative()).degree() == 0)
                for (const auto& [x, m] : fast) ASSERT_EQ(m, 1);
        }
    }
}

TEST(Roots, Irreducibility) {
    const auto d = F(2, 5);
    using U = UPoly<Element>;
    EXPECT_TRUE(is_irreducible(U(d, {d.one(), d.one(), d.one()})));  // w^2+w+1 has no root in GF(32)
    EXPECT_FALSE(is_irreducible(U(d, {d.one(), d.zero(), d.one()})));
}

TEST(Quotient, RogersRamanujanRing) {
    const RationalDomain Q;
    const RatFuncDomain<Rational> Qv{Q, "v"};
    using UQ = UPoly<Rational>;
    const RatFunc<Rational> R(Qv, UQ(Q, {0, 1, -2, 4, -3, 1}), UQ(Q, {1, 3, 4, 2, 1}));
    using UR = UPoly<RatFunc<Rational>>;
    std::vector<RatFunc<Rational>> mc(6, Qv.zero());
    mc[0] = -R;
    mc[5] = Qv.one();
    const QuotientRing<RatFunc<Rational>> ring(UR(Qv, mc), "w");
    const auto w = ring.generator();
    EXPECT_EQ(w * ring_pow(ring, w, 4), ring.lift(R));
    EXPECT_EQ(ring.one().inv(), ring.one());
    EXPECT_EQ(w * w.inv(), ring.one());
}

TEST(Quotient, NotInvertibleOnReducibleModulus) {
    const auto d = F(7, 1);
    using U = UPoly<Element>;
    const QuotientRing<Element> ring(U(d, {d.from_int(-1), d.zero(), d.one()}), "x");
    const auto x1 = ring.element(U(d, {d.from_int(-1), d.one()}));
    EXPECT_EQ(kind_of<int>([&] { x1.inv(); }), ErrorKind::NotInvertible);
}

TEST(RatFunc, CanonicalForm) {
    const auto d = F(2, 1);
    const RatFuncDomain<Element> dom{d, "T"};
    using U = UPoly<Element>;
    const RatFunc<Element> a(dom, U(d, {d.one(), d.zero(), d.one()}), U(d, {d.one(), d.one()}));
    EXPECT_EQ(a.den().degree(), 0);  // (T^2+1)/(T+1) = T+1
    EXPECT_EQ(a, RatFunc<Element>(dom, U(d, {d.one(), d.one()})));
}

TEST(PolyProperty, RingAxiomsOverFiniteField) {
    std::mt19937 rng(kSeed + 1);
    const auto d = F(2, 5);
    const std::vector<std::string> v = {"x", "y", "z"};
    for (int i = 0; i < 100; ++i) {
        const auto a = random_poly(rng, d, v, 5, 3), b = random_poly(rng, d, v, 5, 3), c = random_poly(rng, d, v, 5, 3);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a + b, b + a);
        if (!b.is_zero()) ASSERT_EQ(exact_divide(a * b, b), a);
    }
}

TEST(PolyProperty, RingAxiomsOverRationals) {
    std::mt19937 rng(kSeed + 2);
    const std::vector<std::string> v = {"x", "y"};
    for (int i = 0; i < 100; ++i) {
        const auto a = random_qpoly(rng, v, 4, 3), b = random_qpoly(rng, v, 4, 3), c = random_qpoly(rng, v, 4, 3);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        if (!b.is_zero()) ASSERT_EQ(exact_divide(a * b, b), a);
    }
}

TEST(PolyProperty, RingAxiomsOverRationalFunctions) {
    std::mt19937 rng(kSeed + 3);
    const auto d = F(3, 1);
    const RatFuncDomain<Element> dom{d, "T"};
    std::uniform_int_distribution<std::uint32_t> c(0, 2);
    auto rnd = [&] {
        auto up = [&] {
            std::vector<Element> cs(3);
            for (auto& x : cs) x = d.field.from_int(c(rng));
            return UPoly<Element>(d, cs);
        };
        auto den = up();
        if (den.is_zero()) den = UPoly<Element>::constant(d, d.one());
        return RatFunc<Element>(dom, up(), den);
    };
    for (int i = 0; i < 100; ++i) {
        const auto a = rnd(), b = rnd(), e = rnd();
        ASSERT_EQ((a * b) * e, a * (b * e));
        ASSERT_EQ(a * (b + e), a * b + a * e);
        if (!b.is_zero()) ASSERT_EQ((a / b) * b, a);
    }
}

// Substituting X := g and then Y := h equals the simultaneous substitution when g avoids Y.
TEST(PolyProperty, SubstitutionComposes) {
    std::mt19937 rng(kSeed + 4);
    const auto d = F(2, 3);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_poly(rng, d, {"X", "Y"}, 4, 2);
        if (a.degree("X") < 0) continue;
        const auto g = random_poly(rng, d, {"s"}, 2, 2) + SP::variable(d, {"s"}, "s");
        const auto h = random_poly(rng, d, {"s"}, 2, 2) + SP::constant(d, {"s"}, d.one());
        const auto one = SP::constant(d, {"s"}, d.one());
        if (!a.has_var("X") || !a.has_var("Y")) continue;
        auto [n1, d1] = substitute(a, {{"X", Fraction<Element>{g, one}}});
        if (!n1.has_var("Y")) continue;
        auto [n2, d2] = substitute(n1, {{"Y", Fraction<Element>{h, one}}});
        auto [n3, d3] = substitute(a, {{"X", Fraction<Element>{g, one}}, {"Y", Fraction<Element>{h, one}}});
        ASSERT_EQ(n2, n3);
    }
}
