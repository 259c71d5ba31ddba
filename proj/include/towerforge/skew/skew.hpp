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
 * @file skew.hpp
 * @brief Twisted polynomials sum c_i tau^i with tau c = c^q tau.
 *
 * Coefficients are multivariate polynomials over GF(p) and q is a power of p,
 * so c^q is obtained by scaling every exponent by q (coefficients in the
 * prime field are fixed by Frobenius).
 */

#ifndef TOWERFORGE_SKEW_SKEW_HPP
#define TOWERFORGE_SKEW_SKEW_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "towerforge/error.hpp"
#include "towerforge/gf/conway.hpp"
#include "towerforge/poly/roots.hpp"
#include "towerforge/poly/sparse.hpp"

namespace towerforge::skew {

using Poly = poly::SparsePoly<gf::Element>;

/// c^(q^i) for a coefficient polynomial over the prime field.
inline Poly frob(const Poly& c, std::uint64_t q, unsigned i) {
    std::uint64_t s = 1;
    for (unsigned k = 0; k < i; ++k) s *= q;
    if (s == 1) return c;
    return c.scale_exponents(static_cast<std::uint32_t>(s), [&](const gf::Element& x) { return gf::frobenius(x, s); });
}

class SkewPoly {
public:
    SkewPoly() = default;
    SkewPoly(std::uint64_t q, std::vector<Poly> coeffs) : q_(q), c_(std::move(coeffs)) { trim(); }

    std::uint64_t q() const { return q_; }
    const std::vector<Poly>& coeffs() const { return c_; }
    /// -1 for the zero twisted polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    Poly coeff(std::size_t i) const { return i < c_.size() ? c_[i] : c_.empty() ? Poly() : c_[0] * c_[0].domain().zero(); }

    SkewPoly operator+(const SkewPoly& o) const {
        check(o);
        std::vector<Poly> r(std::max(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i < c_.size() && i < o.c_.size()) r[i] = c_[i] + o.c_[i];
            else r[i] = i < c_.size() ? c_[i] : o.c_[i];
        }
        return SkewPoly(q_, std::move(r));
    }
    SkewPoly operator-() const {
        std::vector<Poly> r;
        for (const auto& c : c_) r.push_back(-c);
        return SkewPoly(q_, std::move(r));
    }
    SkewPoly operator-(const SkewPoly& o) const { return *this + (-o); }

    /// (sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^(q^i) tau^(i+j).
    SkewPoly operator*(const SkewPoly& o) const {
        check(o);
        if (is_zero() || o.is_zero()) return SkewPoly(q_, {});
        std::vector<Poly> r(c_.size() + o.c_.size() - 1);
        std::vector<bool> set(r.size(), false);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (o.c_[j].is_zero()) continue;
                Poly t = c_[i] * frob(o.c_[j], q_, static_cast<unsigned>(i));
                r[i + j] = set[i + j] ? r[i + j] + t : t;
                set[i + j] = true;
            }
        }
        const Poly zero = c_.back() * c_.back().domain().zero();
        for (std::size_t k = 0; k < r.size(); ++k)
            if (!set[k]) r[k] = zero;
        return SkewPoly(q_, std::move(r));
    }

    friend bool operator==(const SkewPoly& a, const SkewPoly& b) {
        if (a.q_ != b.q_ || a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (a.c_[i] != b.c_[i]) return false;
        return true;
    }

private:
    void check(const SkewPoly& o) const {
        if (q_ != o.q_) fail(ErrorKind::DomainMismatch, "twisted polynomials with different q");
    }
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::uint64_t q_ = 2;
    std::vector<Poly> c_;
};

inline SkewPoly skew_mul(const SkewPoly& a, const SkewPoly& b) { return a * b; }

/// Prime field of characteristic p with q a power of p; BadPower otherwise.
inline poly::FieldDomain prime_domain_for(std::uint64_t q) {
    if (q < 2) fail(ErrorKind::BadPower, "q must be a prime power");
    std::uint64_t p = 2;
    while (q % p) ++p;
    std::uint64_t r = q;
    while (r % p == 0) r /= p;
    if (r != 1) fail(ErrorKind::BadPower, std::to_string(q) + " is not a prime power");
    return poly::FieldDomain{gf::make_field(static_cast<std::uint32_t>(p), 1)};
}

/// Builds c_0 + c_1 tau + ... from a list of variable names ("1" for one, "" for zero)
/// ordered from tau^0 upward.
inline SkewPoly from_names(std::uint64_t q, const poly::FieldDomain& dom, const std::vector<std::string>& vars,
                           const std::vector<std::string>& names) {
    std::vector<Poly> c;
    for (const auto& n : names) {
        if (n.empty()) c.push_back(Poly(dom, vars));
        else if (n == "1") c.push_back(Poly::constant(dom, vars, dom.one()));
        else c.push_back(Poly::variable(dom, vars, n));
    }
    return SkewPoly(q, std::move(c));
}

inline const std::vector<std::string>& drinfeld_vars() {
    static const std::vector<std::string> v = {"g1", "g2", "g3", "h1", "h2", "h3", "h4", "h5"};
    return v;
}

/// phi_T = tau^4 + g1 tau^3 + g2 tau^2 + g3 tau.
inline SkewPoly phi_T(std::uint64_t q, const poly::FieldDomain& dom, const std::vector<std::string>& vars) {
    return from_names(q, dom, vars, {"", "g3", "g2", "g1", "1"});
}
/// phi_S = tau^6 + h1 tau^5 + ... + h5 tau.
inline SkewPoly phi_S(std::uint64_t q, const poly::FieldDomain& dom, const std::vector<std::string>& vars) {
    return from_names(q, dom, vars, {"", "h5", "h4", "h3", "h2", "h1", "1"});
}

struct ConstraintLists {
    /// Coefficients of phi_S^2 + phi_S - phi_T^3 - phi_T, ascending tau-degree, zeros dropped.
    std::vector<Poly> curve;
    /// Coefficients of phi_T phi_S - phi_S phi_T, ascending tau-degree, zeros dropped.
    std::vector<Poly> commute;
};

inline ConstraintLists commutation_constraints(std::uint64_t q = 2) {
    const auto dom = prime_domain_for(q);
    const auto& v = drinfeld_vars();
    const auto T = phi_T(q, dom, v);
    const auto S = phi_S(q, dom, v);
    auto nonzero = [](const SkewPoly& s) {
        std::vector<Poly> out;
        for (const auto& c : s.coeffs())
            if (!c.is_zero()) out.push_back(c);
        return out;
    };
    ConstraintLists r;
    r.curve = nonzero(S * S + S - T * T * T - T);
    r.commute = nonzero(T * S - S * T);
    return r;
}

struct IdentityResult {
    std::string name;
    bool pass;
};

/// p3 := p1 - p2^4 and the two identities expressing p1, p2 through p3.
inline std::vector<IdentityResult> simplify_p3_identity() {
    const auto lists = commutation_constraints(2);
    const auto dom = prime_domain_for(2);
    const auto& v = drinfeld_vars();
    const Poly p1 = lists.curve.back();
    const Poly p2 = lists.commute.back();
    const Poly p3 = p1 - p2.pow(4);
    const Poly h1 = Poly::variable(dom, v, "h1"), g1 = Poly::variable(dom, v, "g1");
    const Poly expected = h1.pow(4) + h1 + g1.pow(16) + g1.pow(4) + g1;
    return {
        {"p3 = p1 - p2^4", p3 == expected},
        {"p2 = p3 + p3^4", p2 == p3 + p3.pow(4)},
        {"p1 = p3 + p3^4 + p3^16", p1 == p3 + p3.pow(4) + p3.pow(16)},
    };
}

struct Equation {
    Poly lhs;
    Poly rhs;
    Poly difference() const { return lhs - rhs; }
};

/// Coefficient equations of lambda phi = psi lambda with lambda = tau - a, for
/// phi with coefficient names phi_names (tau^1 upward, monic top omitted) and
/// psi with psi_names. Returned from tau^(r+1) down to tau^1 for r names.
inline std::vector<Equation> isogeny_system(std::uint64_t q, const std::vector<std::string>& phi_names,
                                            const std::vector<std::string>& psi_names) {
    const auto dom = prime_domain_for(q);
    std::vector<std::string> vars = {"a"};
    vars.insert(vars.end(), phi_names.begin(), phi_names.end());
    vars.insert(vars.end(), psi_names.begin(), psi_names.end());
    auto build = [&](const std::vector<std::string>& names) {
        std::vector<std::string> full = {""};
        full.insert(full.end(), names.begin(), names.end());
        full.push_back("1");
        return from_names(q, dom, vars, full);
    };
    // phi names come in the paper's order (top coefficient first); reverse to tau^1 upward
    std::vector<std::string> up_phi(phi_names.rbegin(), phi_names.rend());
    std::vector<std::string> up_psi(psi_names.rbegin(), psi_names.rend());
    const SkewPoly phi = build(up_phi), psi = build(up_psi);
    const Poly a = Poly::variable(dom, vars, "a");
    const SkewPoly lambda(q, {-a, Poly::constant(dom, vars, dom.one())});
    const SkewPoly lhs = lambda * phi;
    const SkewPoly rhs = psi * lambda;
    std::vector<Equation> out;
    for (long i = static_cast<long>(phi_names.size()) + 1; i >= 1; --i)
        out.push_back({lhs.coeff(static_cast<std::size_t>(i)), rhs.coeff(static_cast<std::size_t>(i))});
    return out;
}

/// The four equations (tau^4 down to tau^1) obtained from lambda phi_T = psi_T lambda.
inline std::vector<Equation> isogeny_system_T(std::uint64_t q = 2) {
    return isogeny_system(q, {"g1", "g2", "g3"}, {"l1", "l2", "l3"});
}
/// The six equations (tau^6 down to tau^1) obtained from lambda phi_S = psi_S lambda.
inline std::vector<Equation> isogeny_system_S(std::uint64_t q = 2) {
    return isogeny_system(q, {"h1", "h2", "h3", "h4", "h5"}, {"t1", "t2", "t3", "t4", "t5"});
}

struct Elimination {
    /// The eliminated relation R(a, coefficients) = 0 as produced by substitution.
    Poly relation;
    /// W = a^(q^{r-1}+...+1) + c_1 a^(...) + ... + c_r a, with relation = W^q - W.
    Poly w;
    /// W - constant, the displayed form.
    Poly normal_form;
    /// Same relation obtained by eliminating in the opposite order.
    Poly relation_bottom_up;
};

namespace detail {

/// a^(q^k + ... + q + 1).
inline std::uint64_t geom(std::uint64_t q, unsigned k) {
    std::uint64_t s = 0, t = 1;
    for (unsigned i = 0; i <= k; ++i, t *= q) s += t;
    return s;
}

inline Poly power_of_var(const poly::FieldDomain& dom, const std::vector<std::string>& vars, const std::string& v,
                         std::uint64_t e) {
    poly::Exps ex(vars.size(), 0);
    ex[std::find(vars.begin(), vars.end(), v) - vars.begin()] = static_cast<std::uint32_t>(e);
    return Poly::monomial(dom, vars, ex, dom.one());
}

/// Shared elimination for phi with r coefficient names c_1..c_r (top first) and
/// psi with names d_1..d_r; the equations are
///   c_1^q - a = d_1 - a^(q^(r+1)),  c_k^q - a c_{k-1} = d_k - d_{k-1} a^(q^(r+2-k)),  -a c_r = -d_r a^q.
inline Elimination eliminate(std::uint64_t q, const std::vector<std::string>& c, const std::vector<std::string>& d,
                             const std::string& constant) {
    const auto eqs = isogeny_system(q, c, d);
    const auto dom = prime_domain_for(q);
    const std::size_t r = c.size();
    const auto& vars = eqs[0].lhs.vars();
    const Poly a = Poly::variable(dom, vars, "a");
    // each equation is linear in its new psi coefficient: d_k = lhs_k - (rhs_k - d_k)
    std::vector<Poly> dval(r);
    for (std::size_t k = 0; k < r; ++k) {
        Poly rest = eqs[k].rhs - Poly::variable(dom, vars, d[k]);
        Poly val = eqs[k].lhs - rest;
        // substitute previously solved d_j
        for (std::size_t j = 0; j < k; ++j) {
            auto [n, den] = poly::substitute(val, {{d[j], poly::Fraction<gf::Element>{dval[j], Poly::constant(dom, vars, dom.one())}}});
            val = n.with_vars(vars);
        }
        dval[k] = val;
    }
    // last equation: -a c_r = -d_r a^q  <=>  d_r a^q - a c_r = 0
    const Poly cr = Poly::variable(dom, vars, c[r - 1]);
    const Poly relation = dval[r - 1] * power_of_var(dom, vars, "a", q) - a * cr;

    // bottom-up: carry d_k * a^(e_k) = E_k from the last equation upward
    Poly ek = power_of_var(dom, vars, "a", q);  // multiplier of d_r
    Poly Ek = a * cr;
    for (std::size_t k = r; k-- > 1;) {
        // d_k = lhs_k - rest_k where rest_k = rhs_k - d_k involves d_{k-1}
        // rhs_k - d_k = -d_{k-1} a^(...)  => d_k = lhs_k + d_{k-1} a^(m)
        const Poly dk_var = Poly::variable(dom, vars, d[k]);
        const Poly rest = eqs[k].rhs - dk_var;  // = -d_{k-1} a^m
        const Poly dkm1 = Poly::variable(dom, vars, d[k - 1]);
        const Poly m = poly::exact_divide(-rest, dkm1);  // a^m
        // ek * (lhs_k + d_{k-1} m) = Ek  =>  d_{k-1} (ek m) = Ek - ek lhs_k
        Ek = Ek - ek * eqs[k].lhs;
        ek = ek * m;
    }
    // first equation: d_1 = lhs_1 - (rhs_1 - d_1)
    const Poly first = eqs[0].lhs - (eqs[0].rhs - Poly::variable(dom, vars, d[0]));
    const Poly bottom = ek * first - Ek;

    // W
    Poly w = power_of_var(dom, vars, "a", geom(q, static_cast<unsigned>(r)));
    for (std::size_t k = 0; k < r; ++k)
        w += Poly::variable(dom, vars, c[k]) * power_of_var(dom, vars, "a", geom(q, static_cast<unsigned>(r - 1 - k)));
    const Poly wq = frob(w, q, 1);
    if (relation != wq - w)
        fail(ErrorKind::EliminationMismatch, "top-down elimination is not of the form W^q - W");
    if (bottom != relation && bottom != -relation)
        fail(ErrorKind::EliminationMismatch, "bottom-up elimination disagrees with top-down elimination");
    std::vector<std::string> out_vars = {"a"};
    out_vars.insert(out_vars.end(), c.begin(), c.end());
    out_vars.push_back(constant);
    const Poly w_out = w.with_vars(out_vars);
    const Poly nf = w_out - Poly::variable(dom, out_vars, constant);
    return {relation, w_out, nf, bottom};
}

}  // namespace detail

/// a^(q^3+q^2+q+1) + g1 a^(q^2+q+1) + g2 a^(q+1) + g3 a - gamma.
inline Elimination eliminate_T(std::uint64_t q = 2) { return detail::eliminate(q, {"g1", "g2", "g3"}, {"l1", "l2", "l3"}, "gamma"); }

/// a^(q^5+...+1) + h1 a^(q^4+...+1) + ... + h5 a - beta.
inline Elimination eliminate_S(std::uint64_t q = 2) {
    return detail::eliminate(q, {"h1", "h2", "h3", "h4", "h5"}, {"t1", "t2", "t3", "t4", "t5"}, "beta");
}


/// A point on the constraint variety over GF(2^k) and the gcd in a of the two
/// eliminated relations with gamma = beta = 1.
struct GcdWitness {
    std::uint32_t k = 0;
    std::map<std::string, gf::Element> point;
    poly::GPoly gcd;
    long gcd_degree = -1;
};

/// Every point of the variety cut out by both constraint lists over GF(2^k),
/// found by scanning (g2, g3), solving the h_i from the first five curve
/// polynomials, and scanning g1.
inline std::vector<std::map<std::string, gf::Element>> constraint_points(std::uint32_t k) {
    const auto lists = commutation_constraints(2);
    const auto F = gf::make_field(2, k);
    const poly::FieldDomain D{F};
    using EPoly = poly::SparsePoly<gf::Element>;
    auto lift = [&](const Poly& p) { return p.map_coefficients<gf::Element>(D, [&](const gf::Element& c) { return gf::embed(c, F); }); };
    std::vector<EPoly> curve, commute;
    for (const auto& p : lists.curve) curve.push_back(lift(p));
    for (const auto& p : lists.commute) commute.push_back(lift(p));
    const std::vector<std::string> hs = {"h5", "h4", "h3", "h2", "h1"};
    std::vector<std::map<std::string, gf::Element>> out;
    const auto all = gf::enumerate(F);
    for (const auto& g3 : all) {
        for (const auto& g2 : all) {
            std::map<std::string, gf::Element> at = {{"g1", F.zero()}, {"g2", g2}, {"g3", g3}};
            for (const auto& h : hs) at[h] = F.zero();
            auto solve = [&](std::size_t i) { at[hs[i]] = -curve[i].evaluate(at); };
            solve(0);
            solve(1);
            if (!commute[1].evaluate(at).is_zero()) continue;
            for (const auto& g1 : all) {
                at["g1"] = g1;
                for (std::size_t i = 2; i < 5; ++i) at[hs[i]] = F.zero();
                for (std::size_t i = 2; i < 5; ++i) solve(i);
                bool ok = true;
                for (std::size_t i = 5; ok && i < curve.size(); ++i) ok = curve[i].evaluate(at).is_zero();
                for (std::size_t i = 0; ok && i < commute.size(); ++i) ok = commute[i].evaluate(at).is_zero();
                if (ok) out.push_back(at);
            }
        }
    }
    return out;
}

/// gcd in a of W_T(a) - 1 and W_S(a) - 1 at a point (q = 2).
inline poly::GPoly isogeny_gcd_at(const std::map<std::string, gf::Element>& at) {
    const auto& F = gf::field_of(at.begin()->second);
    const poly::FieldDomain D{F};
    auto w = [&](const std::vector<std::string>& c) {
        const std::size_t r = c.size();
        poly::GPoly acc = poly::GPoly::monomial(D, F.one(), detail::geom(2, static_cast<unsigned>(r)));
        for (std::size_t i = 0; i < r; ++i)
            acc = acc + poly::GPoly::monomial(D, at.at(c[i]), detail::geom(2, static_cast<unsigned>(r - 1 - i)));
        return acc - poly::GPoly::constant(D, F.one());
    };
    return poly::gcd(w({"g1", "g2", "g3"}), w({"h1", "h2", "h3", "h4", "h5"}));
}

/// First specialization over GF(2^k), k = 1..max_k, whose gcd has degree 3.
inline std::optional<GcdWitness> find_degree3_specialization(std::uint32_t max_k = 8) {
    for (std::uint32_t k = 1; k <= max_k; ++k) {
        for (const auto& at : constraint_points(k)) {
            auto g = isogeny_gcd_at(at);
            if (g.degree() == 3) return GcdWitness{k, at, g, 3};
        }
    }
    return std::nullopt;
}

}  // namespace towerforge::skew

#endif  // TOWERFORGE_SKEW_SKEW_HPP
