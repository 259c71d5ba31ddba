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
 * @file sparse.hpp
 * @brief Sparse multivariate polynomials keyed by exponent vectors.
 *
 * Terms are kept in a map ordered graded-lexicographically, largest first, so
 * iteration order is canonical and the first term is the leading term.
 * Binary operations align variable lists by union: the left operand's names
 * come first, followed by names only the right operand uses.
 */

#ifndef TOWERFORGE_POLY_SPARSE_HPP
#define TOWERFORGE_POLY_SPARSE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "towerforge/error.hpp"
#include "towerforge/poly/ring.hpp"
#include "towerforge/poly/upoly.hpp"

namespace towerforge::poly {

using Exps = std::vector<std::uint32_t>;

/// Graded-lex, descending: higher total degree first, ties broken lexicographically.
struct GrlexGreater {
    bool operator()(const Exps& a, const Exps& b) const {
        std::uint64_t da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da > db;
        return a > b;
    }
};

template <class K>
class SparsePoly {
public:
    using Dom = domain_t<K>;
    using Terms = std::map<Exps, K, GrlexGreater>;

    SparsePoly() = default;
    SparsePoly(Dom dom, std::vector<std::string> vars) : dom_(std::move(dom)), vars_(std::move(vars)) {}

    static SparsePoly constant(const Dom& dom, const std::vector<std::string>& vars, const K& c) {
        SparsePoly p(dom, vars);
        p.add_term(Exps(vars.size(), 0), c);
        return p;
    }
    static SparsePoly variable(const Dom& dom, const std::vector<std::string>& vars, const std::string& name) {
        SparsePoly p(dom, vars);
        const auto i = p.index_of(name);
        Exps e(vars.size(), 0);
        e[i] = 1;
        p.add_term(e, dom.one());
        return p;
    }
    static SparsePoly monomial(const Dom& dom, const std::vector<std::string>& vars, const Exps& e, const K& c) {
        SparsePoly p(dom, vars);
        p.add_term(e, c);
        return p;
    }

    const Dom& domain() const { return dom_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    bool has_var(const std::string& v) const { return std::find(vars_.begin(), vars_.end(), v) != vars_.end(); }

    std::size_t index_of(const std::string& v) const {
        auto it = std::find(vars_.begin(), vars_.end(), v);
        if (it == vars_.end()) fail(ErrorKind::DomainMismatch, "unknown variable '" + v + "'");
        return static_cast<std::size_t>(it - vars_.begin());
    }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && total_degree() == 0); }
    K constant_term() const {
        auto it = terms_.find(Exps(vars_.size(), 0));
        return it == terms_.end() ? dom_.zero() : it->second;
    }
    const std::pair<const Exps, K>& leading_term() const {
        if (terms_.empty()) fail(ErrorKind::ZeroPolynomial, "leading term of zero polynomial");
        return *terms_.begin();
    }

    /// Degree in one variable; -1 for the zero polynomial, 0 if the variable is absent.
    long degree(const std::string& v) const {
        if (terms_.empty()) return -1;
        if (!has_var(v)) return 0;
        const auto i = index_of(v);
        long d = 0;
        for (const auto& [e, c] : terms_) d = std::max<long>(d, e[i]);
        return d;
    }
    long total_degree() const {
        if (terms_.empty()) return -1;
        long d = 0;
        for (const auto& [e, c] : terms_) {
            long s = 0;
            for (auto x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    /// Adds c * x^e in place, dropping the term if it cancels.
    void add_term(const Exps& e, const K& c) {
        if (e.size() != vars_.size()) fail(ErrorKind::DomainMismatch, "exponent vector length does not match variables");
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Same polynomial over a (super)set of variables, in the given order.
    SparsePoly with_vars(const std::vector<std::string>& nv) const {
        if (nv == vars_) return *this;
        std::vector<std::size_t> map(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(nv.begin(), nv.end(), vars_[i]);
            if (it == nv.end()) {
                // dropping a variable is allowed only if it never occurs
                for (const auto& [e, c] : terms_)
                    if (e[i] != 0) fail(ErrorKind::DomainMismatch, "cannot drop occurring variable '" + vars_[i] + "'");
                map[i] = nv.size();
            } else {
                map[i] = static_cast<std::size_t>(it - nv.begin());
            }
        }
        SparsePoly r(dom_, nv);
        for (const auto& [e, c] : terms_) {
            Exps ne(nv.size(), 0);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (map[i] < nv.size()) ne[map[i]] = e[i];
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    /// Variables that actually occur, in current order.
    std::vector<std::string> occurring_vars() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            for (const auto& [e, c] : terms_) {
                if (e[i] != 0) {
                    out.push_back(vars_[i]);
                    break;
                }
            }
        }
        return out;
    }

    SparsePoly operator+(const SparsePoly& o) const {
        auto [a, b] = align(*this, o);
        for (const auto& [e, c] : b.terms_) a.add_term(e, c);
        return a;
    }
    SparsePoly operator-() const {
        SparsePoly r(dom_, vars_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    SparsePoly operator-(const SparsePoly& o) const { return *this + (-o); }
    SparsePoly operator*(const SparsePoly& o) const {
        auto [a, b] = align(*this, o);
        SparsePoly r(a.dom_, a.vars_);
        if (a.is_zero() || b.is_zero()) return r;
        Exps e(a.vars_.size());
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    SparsePoly operator*(const K& s) const {
        SparsePoly r(dom_, vars_);
        for (const auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }
    SparsePoly& operator+=(const SparsePoly& o) { return *this = *this + o; }
    SparsePoly& operator-=(const SparsePoly& o) { return *this = *this - o; }
    SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

    SparsePoly pow(std::uint64_t e) const {
        SparsePoly r = constant(dom_, vars_, dom_.one());
        SparsePoly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    /// Equality as polynomials, independent of variable order.
    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
        return (a - b).is_zero();
    }
    friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

    /// Coefficient list in one variable: result[i] is the coefficient of v^i
    /// (same variable list, exponent of v zeroed).
    std::vector<SparsePoly> coefficients_in(const std::string& v) const {
        const long d = degree(v);
        std::vector<SparsePoly> out(static_cast<std::size_t>(std::max<long>(d + 1, 0)), SparsePoly(dom_, vars_));
        if (d < 0) return out;
        const auto i = index_of(v);
        for (const auto& [e, c] : terms_) {
            Exps ne = e;
            ne[i] = 0;
            out[e[i]].terms_.emplace(std::move(ne), c);
        }
        return out;
    }
    SparsePoly leading_coefficient_in(const std::string& v) const { return coefficients_in(v).back(); }

    /// Converts to a dense univariate polynomial in v; all other variables must be absent.
    UPoly<K> to_upoly(const std::string& v) const {
        const long d = degree(v);
        std::vector<K> c(static_cast<std::size_t>(std::max<long>(d + 1, 0)), dom_.zero());
        const std::size_t iv = has_var(v) ? index_of(v) : vars_.size();
        for (const auto& [e, x] : terms_) {
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != iv && e[i] != 0) fail(ErrorKind::DomainMismatch, "polynomial is not univariate in '" + v + "'");
            c[iv < e.size() ? e[iv] : 0] = x;
        }
        return UPoly<K>(dom_, std::move(c));
    }
    static SparsePoly from_upoly(const UPoly<K>& u, const std::vector<std::string>& vars, const std::string& v) {
        SparsePoly r(u.domain(), vars);
        const auto i = r.index_of(v);
        for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
            Exps e(vars.size(), 0);
            e[i] = static_cast<std::uint32_t>(k);
            r.add_term(e, u.coeffs()[k]);
        }
        return r;
    }

    /// Applies f to every coefficient, landing in another domain.
    template <class K2, class F>
    SparsePoly<K2> map_coefficients(const domain_t<K2>& dom2, F&& f) const {
        SparsePoly<K2> r(dom2, vars_);
        for (const auto& [e, c] : terms_) r.add_term(e, f(c));
        return r;
    }

    /// Multiplies every exponent by s and maps coefficients through f. With
    /// s = q and f = Frobenius this is the q-th power in characteristic p.
    template <class F>
    SparsePoly scale_exponents(std::uint32_t s, F&& f) const {
        SparsePoly r(dom_, vars_);
        for (const auto& [e, c] : terms_) {
            Exps ne = e;
            for (auto& x : ne) x *= s;
            r.add_term(ne, f(c));
        }
        return r;
    }

    /// Swaps the roles of two variables.
    SparsePoly swap_vars(const std::string& a, const std::string& b) const {
        const auto ia = index_of(a), ib = index_of(b);
        SparsePoly r(dom_, vars_);
        for (const auto& [e, c] : terms_) {
            Exps ne = e;
            std::swap(ne[ia], ne[ib]);
            r.terms_.emplace(std::move(ne), c);
        }
        return r;
    }

    /// Renames a variable (the new name must not already be present).
    SparsePoly rename(const std::string& from, const std::string& to) const {
        if (from == to) return *this;
        if (has_var(to)) fail(ErrorKind::DomainMismatch, "rename target '" + to + "' already present");
        SparsePoly r = *this;
        r.vars_[index_of(from)] = to;
        return r;
    }

    /// Evaluates all variables; missing bindings are an error.
    K evaluate(const std::map<std::string, K>& at) const {
        std::vector<K> vals;
        vals.reserve(vars_.size());
        for (const auto& v : vars_) {
            auto it = at.find(v);
            if (it == at.end()) {
                if (degree(v) > 0) fail(ErrorKind::DomainMismatch, "no value for variable '" + v + "'");
                vals.push_back(dom_.zero());
            } else {
                vals.push_back(it->second);
            }
        }
        K acc = dom_.zero();
        for (const auto& [e, c] : terms_) {
            K t = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i]) t = t * ring_pow(dom_, vals[i], e[i]);
            acc = acc + t;
        }
        return acc;
    }

    /// Binds some variables to constants, keeping the variable list.
    SparsePoly partial_evaluate(const std::map<std::string, K>& at) const {
        SparsePoly r(dom_, vars_);
        std::vector<std::pair<std::size_t, K>> bound;
        for (const auto& [v, x] : at)
            if (has_var(v)) bound.emplace_back(index_of(v), x);
        for (const auto& [e, c] : terms_) {
            Exps ne = e;
            K t = c;
            for (const auto& [i, x] : bound) {
                if (ne[i]) t = t * ring_pow(dom_, x, ne[i]);
                ne[i] = 0;
            }
            r.add_term(ne, t);
        }
        return r;
    }

private:
    template <class>
    friend class SparsePoly;

    static std::pair<SparsePoly, SparsePoly> align(const SparsePoly& a, const SparsePoly& b) {
        require_same_domain(a.dom_, b.dom_);
        if (a.vars_ == b.vars_) return {a, b};
        std::vector<std::string> u = a.vars_;
        for (const auto& v : b.vars_)
            if (std::find(u.begin(), u.end(), v) == u.end()) u.push_back(v);
        return {a.with_vars(u), b.with_vars(u)};
    }

    Dom dom_{};
    std::vector<std::string> vars_;
    Terms terms_;
};

/// Quotient a / b, which must be exact. Uses leading terms in graded-lex order,
/// which is sound: for an exact quotient LT(b) always divides LT(a).
template <class K>
SparsePoly<K> exact_divide(const SparsePoly<K>& a, const SparsePoly<K>& b, const std::string& var = {}) {
    (void)var;
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "exact_divide by zero polynomial");
    SparsePoly<K> r = a, bb = b;
    {
        // common variable list
        auto s = a + b * b.domain().zero();
        r = r.with_vars(s.vars());
        bb = bb.with_vars(s.vars());
    }
    SparsePoly<K> q(r.domain(), r.vars());
    const auto& [lb, cb] = bb.leading_term();
    const K cb_inv = cb.inv();
    while (!r.is_zero()) {
        const auto& [la, ca] = r.leading_term();
        Exps d(la.size());
        for (std::size_t i = 0; i < la.size(); ++i) {
            if (la[i] < lb[i]) fail(ErrorKind::InexactDivision, "nonzero remainder in exact division");
            d[i] = la[i] - lb[i];
        }
        const K t = ca * cb_inv;
        q.add_term(d, t);
        r = r - SparsePoly<K>::monomial(r.domain(), r.vars(), d, t) * bb;
    }
    return q;
}

/// Division by a polynomial that is monic in var: a = b q + r with deg_var r < deg_var b.
template <class K>
std::pair<SparsePoly<K>, SparsePoly<K>> divide_with_remainder(const SparsePoly<K>& a, const SparsePoly<K>& b,
                                                               const std::string& var) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero polynomial");
    auto s = a + b * b.domain().zero();
    SparsePoly<K> r = a.with_vars(s.vars()), bb = b.with_vars(s.vars());
    if (!bb.has_var(var)) fail(ErrorKind::NotMonic, "divisor does not involve '" + var + "'");
    const auto lc = bb.leading_coefficient_in(var);
    if (!(lc.is_constant() && lc.constant_term() == bb.domain().one()))
        fail(ErrorKind::NotMonic, "divisor is not monic in '" + var + "'");
    const long db = bb.degree(var);
    const auto iv = bb.index_of(var);
    SparsePoly<K> q(r.domain(), r.vars());
    while (r.degree(var) >= db) {
        const long dr = r.degree(var);
        auto c = r.leading_coefficient_in(var);
        Exps shift(r.vars().size(), 0);
        shift[iv] = static_cast<std::uint32_t>(dr - db);
        auto t = c * SparsePoly<K>::monomial(r.domain(), r.vars(), shift, r.domain().one());
        q += t;
        r -= t * bb;
    }
    return {q, r};
}

/// A binding target: numerator / denominator over the result variables.
template <class K>
struct Fraction {
    SparsePoly<K> num;
    SparsePoly<K> den;
};

/// Substitutes fractions for variables and clears denominators. Each bound
/// variable x_i contributes den_i^{deg_{x_i} a}; the returned pair is
/// (cleared numerator, that denominator product). Unbound variables pass through.
template <class K>
std::pair<SparsePoly<K>, SparsePoly<K>> substitute(const SparsePoly<K>& a,
                                                   const std::map<std::string, Fraction<K>>& bindings) {
    const auto& dom = a.domain();
    for (const auto& [v, f] : bindings) {
        if (!a.has_var(v)) fail(ErrorKind::DomainMismatch, "substituted variable '" + v + "' not in polynomial");
        if (f.den.is_zero()) fail(ErrorKind::DenominatorVanishes, "binding for '" + v + "' has zero denominator");
    }
    // result variables: unbound vars of a, then variables of the bindings
    std::vector<std::string> rv;
    for (const auto& v : a.vars())
        if (!bindings.count(v)) rv.push_back(v);
    for (const auto& [v, f] : bindings) {
        for (const auto* p : {&f.num, &f.den})
            for (const auto& w : p->vars())
                if (std::find(rv.begin(), rv.end(), w) == rv.end()) rv.push_back(w);
    }
    struct Bound {
        std::size_t idx;
        std::vector<SparsePoly<K>> num_pows, den_pows;
        long deg;
    };
    std::vector<Bound> bound;
    for (const auto& [v, f] : bindings) {
        Bound b{a.index_of(v), {}, {}, a.degree(v)};
        b.num_pows.push_back(SparsePoly<K>::constant(dom, rv, dom.one()));
        b.den_pows.push_back(SparsePoly<K>::constant(dom, rv, dom.one()));
        const auto n = f.num.with_vars(rv), d = f.den.with_vars(rv);
        for (long k = 1; k <= b.deg; ++k) {
            b.num_pows.push_back(b.num_pows.back() * n);
            b.den_pows.push_back(b.den_pows.back() * d);
        }
        bound.push_back(std::move(b));
    }
    SparsePoly<K> num(dom, rv);
    for (const auto& [e, c] : a.terms()) {
        Exps me(rv.size(), 0);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (!bindings.count(a.vars()[i])) {
                auto it = std::find(rv.begin(), rv.end(), a.vars()[i]);
                me[static_cast<std::size_t>(it - rv.begin())] = e[i];
            }
        SparsePoly<K> t = SparsePoly<K>::monomial(dom, rv, me, c);
        for (const auto& b : bound) {
            const auto k = e[b.idx];
            t = t * b.num_pows[k] * b.den_pows[static_cast<std::size_t>(b.deg) - k];
        }
        num += t;
    }
    SparsePoly<K> den = SparsePoly<K>::constant(dom, rv, dom.one());
    for (const auto& b : bound) den = den * b.den_pows.back();
    return {num, den};
}

template <class K>
std::ostream& operator<<(std::ostream& os, const SparsePoly<K>& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        bool mono = false;
        std::ostringstream m;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (!e[i]) continue;
            if (mono) m << "*";
            mono = true;
            m << p.vars()[i];
            if (e[i] > 1) m << "^" << e[i];
        }
        if (!mono) {
            os << c;
        } else if (c == p.domain().one()) {
            os << m.str();
        } else {
            os << "(" << c << ")*" << m.str();
        }
    }
    return os;
}

}  // namespace towerforge::poly

#endif  // TOWERFORGE_POLY_SPARSE_HPP
