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
 * @file verify.hpp
 * @brief Exact identity checks over the transcribed catalog polynomials.
 *
 * Polynomials over F_2[T] carry T as an ordinary variable; "X", "Y", "Z" are
 * the modular variables and "u" the uniformizer of the parameterizations.
 */

#ifndef TOWERFORGE_CATALOG_VERIFY_HPP
#define TOWERFORGE_CATALOG_VERIFY_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "towerforge/catalog/golden.hpp"
#include "towerforge/poly/quotient.hpp"
#include "towerforge/poly/ratfunc.hpp"
#include "towerforge/poly/roots.hpp"
#include "towerforge/poly/upoly.hpp"

namespace towerforge::catalog {

namespace detail {

inline const poly::FieldDomain& f2() {
    static const poly::FieldDomain d{gf::make_field(2, 1)};
    return d;
}

inline GfPoly var(const std::string& v, const std::vector<std::string>& vars) { return GfPoly::variable(f2(), vars, v); }

/// Suffix used in catalog ids for a level: "T", "T2T1", "T2T".
inline std::string level_key(const std::string& example) {
    if (example == "T" || example == "T2T1" || example == "T2T") return example;
    fail(ErrorKind::NotInCatalog, "no example for level '" + example + "'");
}

/// p(u) with u renamed to v.
inline GfPoly in_var(const GfPoly& p, const std::string& v) { return p.rename("u", v); }

/// Rational -> GF(p).
inline gf::Element reduce(const poly::Rational& r, const gf::FieldSpec& f) {
    const long p = static_cast<long>(f.characteristic());
    mpz_class n = r.numerator() % p, d = r.denominator() % p;
    if (n < 0) n += p;
    if (d == 0) fail(ErrorKind::DenominatorVanishes, "denominator divisible by p");
    return f.from_int(n.get_si()) * f.from_int(d.get_si()).inv();
}

inline poly::UPoly<gf::Element> reduce(const poly::UPoly<poly::Rational>& u, const poly::FieldDomain& d) {
    std::vector<gf::Element> c;
    for (const auto& x : u.coeffs()) c.push_back(reduce(x, d.field));
    return poly::UPoly<gf::Element>(d, c);
}

inline GfPoly reduce(const QPoly& p, const poly::FieldDomain& d) {
    return p.map_coefficients<gf::Element>(d, [&](const poly::Rational& r) { return reduce(r, d.field); });
}

}  // namespace detail

// ---------------------------------------------------------------- symmetry

inline bool verify_symmetry(const GfPoly& phi) { return phi == phi.swap_vars("X", "Y"); }

// ---------------------------------------------------------------- Psi

struct PsiResult {
    GfPoly psi;          // quotient, in X, Y, Z (and T)
    std::string mode;    // "exact" or "mod-ideal"
    bool remainder_ok;   // remainder equals Phi(Y, X)
    long z_degree;
};

/// Divides Phi(Y, Z) by Z - X; the quotient is compared with the golden Psi
/// exactly, or failing that modulo Phi(X, Y) (Phi is monic in Y).
inline PsiResult extract_psi(const GfPoly& phi, const GfPoly& golden_psi) {
    const auto vars = std::vector<std::string>{"X", "Y", "Z", "T"};
    const GfPoly shifted = phi.rename("Y", "Z").rename("X", "Y").with_vars(vars);
    const GfPoly divisor = detail::var("Z", vars) - detail::var("X", vars);
    auto [q, r] = poly::divide_with_remainder(shifted, divisor, "Z");
    const bool rem_ok = r == phi.swap_vars("X", "Y");
    if (!rem_ok) fail(ErrorKind::PsiMismatch, "remainder is not Phi(Y, X)");
    if (q == golden_psi) return {q, "exact", rem_ok, q.degree("Z")};
    const GfPoly diff = (q - golden_psi).with_vars(vars);
    auto [dq, dr] = poly::divide_with_remainder(diff, phi.with_vars(vars), "Y");
    if (dr.is_zero()) return {q, "mod-ideal", rem_ok, q.degree("Z")};
    fail(ErrorKind::PsiMismatch, "quotient differs from the golden Psi even modulo Phi");
}

// ---------------------------------------------------------------- parameterization

struct Parameterization {
    GfPoly j0_num, j0_den, j1_num, j1_den;  // in u, T
};

inline Parameterization parameterization(const std::string& example, const Catalog& c = Catalog::shipped()) {
    const auto k = detail::level_key(example);
    return {c.gf("j0_" + k + "_num"), c.gf("j0_" + k + "_den"), c.gf("j1_" + k + "_num"), c.gf("j1_" + k + "_den")};
}

inline GfPoly modular_polynomial(const std::string& example, const Catalog& c = Catalog::shipped()) {
    return c.gf("phi_" + detail::level_key(example));
}

/// Phi(j0(u), j1(u)) with denominators cleared is identically zero.
inline bool annihilates(const GfPoly& phi, const Parameterization& j) {
    const auto [num, den] = poly::substitute(phi, {{"X", {j.j0_num, j.j0_den}}, {"Y", {j.j1_num, j.j1_den}}});
    return num.is_zero();
}

/// Checks the transcribed Phi_P against the transcribed parameterization.
/// perturb_j1 adds 1 to j1 (negative control).
inline bool verify_parameterization(const std::string& example, bool perturb_j1 = false,
                                    const Catalog& c = Catalog::shipped()) {
    auto j = parameterization(example, c);
    if (perturb_j1) j.j1_num = j.j1_num + j.j1_den;
    return annihilates(modular_polynomial(example, c), j);
}

// ---------------------------------------------------------------- cross factorization

struct CrossResult {
    bool product_matches;
    bool display_matches;  // against the displayed cross polynomial, when the catalog has one
    bool unique_top_factor;
    std::vector<long> factor_y_degrees;
    bool pass() const { return product_matches && display_matches && unique_top_factor; }
};

inline std::vector<std::string> factor_ids(const std::string& example) {
    const auto k = detail::level_key(example);
    if (k == "T") return {"fac_T_1", "f_T"};
    if (k == "T2T1") return {"fac_T2T1_1", "f_T2T1"};
    return {"fac_T2T_1", "fac_T2T_2", "fac_T2T_3", "f_T2T"};
}

inline long level_degree(const std::string& example) { return detail::level_key(example) == "T" ? 1 : 2; }

/// psi_0(Y) phi_1(X) - psi_1(Y) phi_0(X), where j0 = psi_0/psi_1 is taken at u_e = Y
/// and j1 = phi_0/phi_1 at u_{e-1} = X.
inline GfPoly cross_difference(const std::string& example, const Catalog& c = Catalog::shipped()) {
    const auto j = parameterization(example, c);
    const auto vars = std::vector<std::string>{"X", "Y", "T"};
    const GfPoly psi0 = detail::in_var(j.j0_num, "Y").with_vars(vars), psi1 = detail::in_var(j.j0_den, "Y").with_vars(vars);
    const GfPoly phi0 = detail::in_var(j.j1_num, "X").with_vars(vars), phi1 = detail::in_var(j.j1_den, "X").with_vars(vars);
    return psi0 * phi1 - psi1 * phi0;
}

inline CrossResult verify_cross_factorization(const std::string& example, const Catalog& c = Catalog::shipped()) {
    const auto cross = cross_difference(example, c);
    const auto ids = factor_ids(example);
    GfPoly prod = GfPoly::constant(detail::f2(), cross.vars(), detail::f2().one());
    CrossResult r{};
    for (const auto& id : ids) {
        const auto f = c.gf(id);
        prod = prod * f;
        r.factor_y_degrees.push_back(f.degree("Y"));
    }
    r.product_matches = prod == cross;
    const std::string disp = "cross_" + detail::level_key(example);
    r.display_matches = !c.contains(disp) || c.gf(disp) == cross;
    const long top = 1L << level_degree(example);
    long hits = 0;
    for (auto d : r.factor_y_degrees) hits += d == top;
    r.unique_top_factor = hits == 1 && r.factor_y_degrees.back() == top;
    return r;
}

// ---------------------------------------------------------------- reduction

/// Reduces f_P modulo a prime L of F_2[T] (given low-to-high over GF(2)) and
/// compares with the golden reduced polynomial. BadModulus if L is not prime
/// or shares a factor with P.
inline bool verify_reduction(const std::string& example, const std::vector<std::uint32_t>& modulus,
                             const Catalog& c = Catalog::shipped()) {
    const auto k = detail::level_key(example);
    const auto& d2 = detail::f2();
    std::vector<gf::Element> mc;
    for (auto x : modulus) mc.push_back(d2.field.from_int(x));
    const poly::GPoly L(d2, mc);
    if (L.degree() < 1 || !poly::is_irreducible(L)) fail(ErrorKind::BadModulus, "modulus is not a prime of F_2[T]");
    const poly::GPoly T = poly::GPoly::x(d2);
    const poly::GPoly P = k == "T" ? T : k == "T2T1" ? T * T + T + poly::GPoly::constant(d2, d2.one()) : T * T + T;
    if (poly::gcd(L, P).degree() > 0) fail(ErrorKind::BadModulus, "modulus divides the level");
    std::string golden;
    if (k == "T2T1") golden = "f_T2T1_mod_T";
    else if (k == "T2T") golden = "f_T2T_mod_T2T1";
    else fail(ErrorKind::NotInCatalog, "no reduced polynomial for level T");
    // residue field GF(2^deg L), T -> first root of L
    const auto F = gf::make_field(2, static_cast<std::uint32_t>(L.degree()));
    const poly::FieldDomain D{F};
    std::vector<gf::Element> lc;
    for (const auto& x : L.coeffs()) lc.push_back(gf::embed(x, F));
    const auto roots = poly::roots_in_field(poly::GPoly(D, lc));
    const auto theta = roots.front().first;
    const auto f = c.gf("f_" + k);
    const auto ti = f.index_of("T");
    GfPoly red(D, {"X", "Y"});
    for (const auto& [e, coef] : f.terms()) {
        poly::Exps xy = {e[f.index_of("X")], e[f.index_of("Y")]};
        red.add_term(xy, gf::embed(coef, F) * theta.pow(e[ti]));
    }
    const auto g = c.gf(golden).map_coefficients<gf::Element>(D, [&](const gf::Element& x) { return gf::embed(x, F); });
    return red == g;
}

// ---------------------------------------------------------------- degree formula

struct DegreeFormulaResult {
    poly::Rational formula;
    long catalog_degree;
    bool pass() const { return formula == poly::Rational(catalog_degree); }
};

/// q^deg N * prod over distinct primes P | N of (1 + q^-deg P), q = 2, against
/// deg_Y of the catalog Phi_N. N is given low-to-high over GF(2).
inline DegreeFormulaResult verify_degree_formula(const std::vector<std::uint32_t>& n,
                                                 const Catalog& c = Catalog::shipped()) {
    const auto& d2 = detail::f2();
    std::vector<gf::Element> nc;
    for (auto x : n) nc.push_back(d2.field.from_int(x));
    poly::GPoly N(d2, nc);
    if (N.degree() < 1 || !N.is_monic()) fail(ErrorKind::NotInCatalog, "level must be monic and nonconstant");
    std::string id;
    const std::vector<std::uint32_t> lt = {0, 1}, lt2t1 = {1, 1, 1}, lt2t = {0, 1, 1};
    if (n == lt) id = "T";
    else if (n == lt2t1) id = "T2T1";
    else if (n == lt2t) id = "T2T";
    else fail(ErrorKind::NotInCatalog, "no modular polynomial for this level");
    // distinct prime factors by trial division with irreducibles of degree <= 2
    const std::vector<std::vector<std::uint32_t>> primes = {{0, 1}, {1, 1}, {1, 1, 1}};
    poly::Rational value(1);
    for (long i = 0; i < N.degree(); ++i) value *= poly::Rational(2);
    poly::GPoly rest = N;
    for (const auto& pc : primes) {
        std::vector<gf::Element> c2;
        for (auto x : pc) c2.push_back(d2.field.from_int(x));
        const poly::GPoly pp(d2, c2);
        if (!(rest % pp).is_zero()) continue;
        while ((rest % pp).is_zero()) rest = rest / pp;
        poly::Rational qd(1);
        for (long i = 0; i < pp.degree(); ++i) qd *= poly::Rational(2);
        value *= poly::Rational(1) + qd.inv();
    }
    if (rest.degree() != 0) fail(ErrorKind::NotInCatalog, "level has a prime factor of degree > 2");
    return {value, modular_polynomial(id, c).degree("Y")};
}

// ---------------------------------------------------------------- level 5, classical

/// v^5 P(1/v - v) = 1 - 11 v^5 - v^10, over Q or over GF(p) when p is given.
inline bool verify_dihedral(bool perturb = false, std::optional<std::uint32_t> p = std::nullopt,
                            const Catalog& c = Catalog::shipped()) {
    QPoly P = c.q("P5");
    if (perturb) P = P + QPoly::constant(poly::RationalDomain{}, P.vars(), poly::Rational(1));
    const std::vector<std::string> vv = {"v"};
    const poly::RationalDomain Q;
    const QPoly v = QPoly::variable(Q, vv, "v");
    const QPoly one = QPoly::constant(Q, vv, poly::Rational(1));
    const auto [num, den] = poly::substitute(P, {{"t", {one - v * v, v}}});
    const QPoly rhs = one - v.pow(5) * QPoly::constant(Q, vv, poly::Rational(11)) - v.pow(10);
    if (den != v.pow(5)) return false;
    if (!p) return num == rhs;
    const poly::FieldDomain D{gf::make_field(*p, 1)};
    return detail::reduce(num, D) == detail::reduce(rhs, D);
}

namespace detail {

/// In K = B(v) and L = K[w]/(w^5 - R(v)): P(y) P((x+4)/(x-1)) == 125 with
/// x = 1/v - v, y = 1/w - w. Also checks P(y) = 1/R - R - 11.
template <class B>
std::pair<bool, bool> rr_identity(const poly::domain_t<B>& bd, const poly::UPoly<B>& P, const poly::UPoly<B>& rnum,
                                  const poly::UPoly<B>& rden) {
    using K = poly::RatFunc<B>;
    using L = poly::QuotientElement<K>;
    const poly::RatFuncDomain<B> kd{bd, "v"};
    const K v = kd.variable();
    const K R(kd, rnum, rden);
    std::vector<K> mc(6, kd.zero());
    mc[0] = -R;
    mc[5] = kd.one();
    const poly::QuotientRing<K> ring(poly::UPoly<K>(kd, mc), "w");
    const L w = ring.generator();
    const L y = w.inv() - w;
    L py = ring.zero();
    for (std::size_t i = P.coeffs().size(); i-- > 0;) py = py * y + ring.lift(kd.constant(P.coeffs()[i]));
    const K x = v.inv() - v;
    const K arg = (x + kd.from_int(4)) / (x - kd.from_int(1));
    K pk = kd.zero();
    for (std::size_t i = P.coeffs().size(); i-- > 0;) pk = pk * arg + kd.constant(P.coeffs()[i]);
    const bool main = py * ring.lift(pk) == ring.from_int(125);
    const bool side = py == ring.lift(R.inv() - R - kd.from_int(11));
    return {main, side};
}

}  // namespace detail

struct RRLiftResult {
    bool identity_q;                 // over Q(v)
    bool py_matches_dihedral;        // P(y) = 1/R - R - 11 over Q(v)
    std::vector<std::uint32_t> primes;
    std::vector<bool> identity_mod_p;
    bool pass() const {
        bool ok = identity_q && py_matches_dihedral;
        for (bool b : identity_mod_p) ok = ok && b;
        return ok;
    }
};

/// perturb replaces R(v) by R(v) + v.
inline RRLiftResult verify_rr_lift(bool perturb = false, const Catalog& c = Catalog::shipped()) {
    const poly::RationalDomain Q;
    const auto P = c.q("P5").to_upoly("t");
    auto rnum = c.q("R_num").to_upoly("v");
    const auto rden = c.q("R_den").to_upoly("v");
    if (perturb) rnum = rnum + poly::UPoly<poly::Rational>::x(Q) * rden;
    RRLiftResult r{};
    std::tie(r.identity_q, r.py_matches_dihedral) = detail::rr_identity<poly::Rational>(Q, P, rnum, rden);
    r.primes = {10007, 10009, 10037};
    for (auto p : r.primes) {
        const poly::FieldDomain D{gf::make_field(p, 1)};
        const auto [ok, side] =
            detail::rr_identity<gf::Element>(D, detail::reduce(P, D), detail::reduce(rnum, D), detail::reduce(rden, D));
        r.identity_mod_p.push_back(ok && side);
    }
    return r;
}

/// P((x+4)/(x-1)) (x-1)^5 = 125 Q(x), where Q is the leading Y-coefficient of the
/// cleared level-5 recursion; its constant Y-coefficient is -(x-1)^5 - 11 Q(x).
inline bool verify_level5_form(const Catalog& c = Catalog::shipped()) {
    const poly::RationalDomain Q;
    const std::vector<std::string> xv = {"X"};
    const QPoly x = QPoly::variable(Q, xv, "X");
    const QPoly one = QPoly::constant(Q, xv, poly::Rational(1));
    const QPoly e5 = c.q("elkies5");
    const auto yc = e5.coefficients_in("Y");
    if (yc.size() != 6) return false;
    auto in_x = [&](const QPoly& p) { return QPoly::from_upoly(p.to_upoly("X"), xv, "X"); };
    const QPoly quart = in_x(yc[5]), c0 = in_x(yc[0]);
    const auto [num, den] = poly::substitute(c.q("P5"), {{"t", {x + one * poly::Rational(4), x - one}}});
    const QPoly x1 = (x - one).pow(5);
    return den == x1 && num == quart * poly::Rational(125) && c0 == -x1 - quart * poly::Rational(11);
}

/// Substituting x -> s x, y -> s y in the original recursion over F_7 and
/// normalizing gives the rescaled one exactly when s = 3.
inline bool verify_scaling_equivalence(std::uint32_t scale = 3, const Catalog& c = Catalog::shipped()) {
    const poly::FieldDomain D{gf::make_field(7, 1)};
    using RF = poly::RatFunc<gf::Element>;
    const poly::RatFuncDomain<gf::Element> kd{D, "x"};
    auto up = [&](const char* id) { return detail::reduce(c.q(id).to_upoly("x"), D); };
    const auto s = D.field.from_int(scale);
    auto scaled = [&](const poly::GPoly& p) { return p.compose(poly::GPoly(D, {D.zero(), s})); };
    // y^5 = A(sx) / (s^5 B(sx))
    const RF lhs(kd, scaled(up("loetter_orig_num")), scaled(up("loetter_orig_den")) * s.pow(5));
    const RF rhs(kd, up("loetter_num"), up("loetter_den"));
    return lhs == rhs;
}

/// At x = 1 the y-roots of the rescaled recursion over F_49 equal 1/3 times the
/// y-roots of the original recursion at x = 3.
inline bool verify_scaling_roots(const Catalog& c = Catalog::shipped()) {
    const auto F = gf::make_field(7, 2);
    const poly::FieldDomain D{F};
    auto ev = [&](const char* id, std::int64_t at) {
        const poly::FieldDomain D7{gf::make_field(7, 1)};
        return gf::embed(detail::reduce(c.q(id).to_upoly("x"), D7)(D7.field.from_int(at)), F);
    };
    auto roots_of = [&](const gf::Element& val) {
        std::vector<gf::Element> co(6, F.zero());
        co[0] = -val;
        co[5] = F.one();
        std::vector<std::uint32_t> out;
        for (const auto& [r, m] : poly::roots_in_field(poly::GPoly(D, co))) out.push_back(r.packed());
        std::sort(out.begin(), out.end());
        return out;
    };
    const auto a = roots_of(ev("loetter_num", 1) * ev("loetter_den", 1).inv());
    auto b_raw = roots_of(ev("loetter_orig_num", 3) * ev("loetter_orig_den", 3).inv());
    std::vector<std::uint32_t> b;
    const auto third = F.from_int(3).inv();
    for (auto v : b_raw) b.push_back((F.from_packed(v) * third).packed());
    std::sort(b.begin(), b.end());
    return !a.empty() && a == b;
}

// ---------------------------------------------------------------- reduced uniformizer

/// U(j0, j1) = u exactly, with j0, j1 the parameterization for T^2+T+1 reduced at
/// T = t0 (0 or 1) and U the displayed uniformizer over F_4.
inline bool verify_reduced_uniformizer(std::uint32_t t0 = 0, const Catalog& c = Catalog::shipped()) {
    const auto j = parameterization("T2T1", c);
    const auto& d2 = detail::f2();
    const std::map<std::string, gf::Element> at = {{"T", d2.field.from_int(t0)}};
    auto red = [&](const GfPoly& p) { return p.partial_evaluate(at).with_vars({"u"}); };
    const poly::Fraction<gf::Element> j0{red(j.j0_num), red(j.j0_den)}, j1{red(j.j1_num), red(j.j1_den)};
    const auto [n1, d1] = poly::substitute(c.gf("u0_reduced_num"), {{"j0", j0}, {"j1", j1}});
    const auto [n2, d2p] = poly::substitute(c.gf("u0_reduced_den"), {{"j0", j0}, {"j1", j1}});
    // (n1/d1) / (n2/d2) == u
    const GfPoly u = GfPoly::variable(d2, {"u"}, "u");
    return n1 * d2p == u * d1 * n2;
}

// ---------------------------------------------------------------- elliptic ring, level two

struct Level2Result {
    bool divides = false;
    bool quadratic_irreducible = false;
    long quotient_degree = -1;
    std::optional<std::uint32_t> certificate_u0_log;  // discrete log of the certifying u0
    std::optional<std::uint32_t> certificate_u1_log;
};

/// alpha = beta^33 in GF(2^10) with beta the Conway generator.
inline gf::Element elliptic_alpha(const gf::FieldSpec& big) { return gf::primitive_element(big).pow(33); }

/// In F_1 = GF(2^10)(u0)[u1]/(Phi(alpha, u0, u1)) divides Phi(alpha^8, u1, T) by the
/// monic form of the linear factor, then certifies the quadratic quotient
/// irreducible by a specialization u0 = c, u1 = root, with no root in GF(2^10).
inline Level2Result verify_level2_factor(const Catalog& c = Catalog::shipped(), const GfPoly* override_factor = nullptr) {
    const auto F = gf::make_field(2, 10);
    const poly::FieldDomain D{F};
    const auto alpha = elliptic_alpha(F);
    auto lift = [&](const GfPoly& p) {
        return p.map_coefficients<gf::Element>(D, [&](const gf::Element& x) { return gf::embed(x, F); });
    };
    const GfPoly phi = lift(c.gf("phi_ell"));
    const GfPoly fac = lift(override_factor ? *override_factor : c.gf("backtrack_ell"));
    using B = gf::Element;
    using K = poly::RatFunc<B>;
    using E = poly::QuotientElement<K>;
    const poly::RatFuncDomain<B> kd{D, "u0"};
    // coefficient of Y^i of Phi(a, X, Y) as a polynomial in X
    auto coeffs_in_x = [&](const GfPoly& p, const gf::Element& a) {
        std::vector<poly::GPoly> out;
        const auto spec = p.partial_evaluate({{"alpha", a}});
        for (const auto& ci : spec.coefficients_in("Y")) out.push_back(ci.to_upoly("X"));
        return out;
    };
    const auto c1 = coeffs_in_x(phi, alpha);
    // monic modulus in u1 over K
    std::vector<K> mc;
    const K lead(kd, c1.back());
    for (const auto& ci : c1) mc.push_back(K(kd, ci) / lead);
    const poly::QuotientRing<K> ring(poly::UPoly<K>(kd, mc), "u1");
    const E u1 = ring.generator();
    // Phi(alpha^8, u1, T) in F_1[T]
    const auto c2 = coeffs_in_x(phi, alpha.pow(8));
    std::vector<E> big;
    for (const auto& ci : c2) {
        E acc = ring.zero();
        for (std::size_t i = ci.coeffs().size(); i-- > 0;) acc = acc * u1 + ring.lift(kd.constant(ci.coeffs()[i]));
        big.push_back(acc);
    }
    const poly::UPoly<E> Phi2(ring, big);
    // linear factor (u0 + a25) T + (a28 u0 + a27), evaluated at alpha, made monic
    const auto lf = coeffs_in_x(fac, alpha);
    if (lf.size() != 2) fail(ErrorKind::DivisionFails, "backtrack factor is not linear in T");
    const K l1(kd, lf[1]), l0(kd, lf[0]);
    const poly::UPoly<E> lin(ring, {ring.lift(l0 / l1), ring.one()});
    const auto [quot, rem] = Phi2.divmod(lin);
    Level2Result r;
    r.divides = rem.is_zero();
    r.quotient_degree = quot.degree();
    if (!r.divides) return r;
    // certifying specialization
    for (const auto& u0 : gf::enumerate(F)) {
        if (c1.back()(u0).is_zero() || l1.den()(u0).is_zero() || l1.num()(u0).is_zero()) continue;
        std::vector<gf::Element> base;
        for (const auto& ci : c1) base.push_back(ci(u0));
        const auto rts = poly::roots_in_field(poly::GPoly(D, base));
        for (const auto& [root, mult] : rts) {
            std::vector<gf::Element> q;
            bool ok = true;
            for (const auto& coef : quot.coeffs()) {
                gf::Element acc = F.zero();
                const auto& res = coef.residue().coeffs();
                for (std::size_t i = res.size(); i-- > 0;) {
                    if (res[i].den()(u0).is_zero()) {
                        ok = false;
                        break;
                    }
                    acc = acc * root + res[i](u0);
                }
                if (!ok) break;
                q.push_back(acc);
            }
            if (!ok) continue;
            const poly::GPoly qs(D, q);
            if (qs.degree() != 2) continue;
            if (poly::roots_in_field(qs).empty()) {
                r.quadratic_irreducible = true;
                r.certificate_u0_log = u0.is_zero() ? 0 : gf::discrete_log(u0);
                r.certificate_u1_log = root.is_zero() ? 0 : gf::discrete_log(root);
                return r;
            }
        }
    }
    fail(ErrorKind::NoCertifyingSpecialization, "no u0 in GF(2^10) certifies the quadratic factor");
}

// ---------------------------------------------------------------- degree-13 relation

struct Rel13Result {
    bool found = false;
    std::uint32_t g_packed = 0;
    long degree = -1;
};

/// Smoke test of the stored (g2, g) relation: some g in GF(32) makes it an
/// irreducible degree-13 polynomial in g2.
inline Rel13Result smoke_rel13(const Catalog& c = Catalog::shipped()) {
    const auto rel = c.gf("rel13");
    const auto& F = rel.domain().field;
    for (const auto& g : gf::enumerate(F)) {
        const auto u = rel.partial_evaluate({{"g", g}}).to_upoly("g2");
        if (u.degree() == 13 && poly::is_irreducible(u)) return {true, g.packed(), 13};
    }
    return {};
}

}  // namespace towerforge::catalog

#endif  // TOWERFORGE_CATALOG_VERIFY_HPP
