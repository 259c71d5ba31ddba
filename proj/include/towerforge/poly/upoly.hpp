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

#ifndef TOWERFORGE_POLY_UPOLY_HPP
#define TOWERFORGE_POLY_UPOLY_HPP

#include <cstdint>
#include <ostream>
#include <utility>
#include <vector>

#include "towerforge/error.hpp"
#include "towerforge/poly/ring.hpp"

namespace towerforge::poly {

/// Dense univariate polynomial over a coefficient domain. Coefficients are
/// stored low-to-high with no trailing zeros; the zero polynomial is empty.
template <class K>
class UPoly {
public:
    using Dom = domain_t<K>;

    UPoly() = default;
    explicit UPoly(Dom dom) : dom_(std::move(dom)) {}
    UPoly(Dom dom, std::vector<K> coeffs) : dom_(std::move(dom)), c_(std::move(coeffs)) { trim(); }

    static UPoly constant(const Dom& dom, const K& c) { return UPoly(dom, {c}); }
    static UPoly x(const Dom& dom) { return UPoly(dom, {dom.zero(), dom.one()}); }
    static UPoly monomial(const Dom& dom, const K& c, std::size_t deg) {
        std::vector<K> v(deg + 1, dom.zero());
        v[deg] = c;
        return UPoly(dom, std::move(v));
    }

    const Dom& domain() const { return dom_; }
    const std::vector<K>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : dom_.zero(); }
    K leading() const { return c_.empty() ? dom_.zero() : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == dom_.one(); }

    UPoly operator+(const UPoly& o) const {
        std::vector<K> r(std::max(c_.size(), o.c_.size()), dom_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
        return UPoly(dom_, std::move(r));
    }
    UPoly operator-() const {
        std::vector<K> r;
        r.reserve(c_.size());
        for (const auto& a : c_) r.push_back(-a);
        return UPoly(dom_, std::move(r));
    }
    UPoly operator-(const UPoly& o) const { return *this + (-o); }
    UPoly operator*(const UPoly& o) const {
        if (is_zero() || o.is_zero()) return UPoly(dom_);
        std::vector<K> r(c_.size() + o.c_.size() - 1, dom_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
        }
        return UPoly(dom_, std::move(r));
    }
    UPoly operator*(const K& s) const {
        std::vector<K> r;
        r.reserve(c_.size());
        for (const auto& a : c_) r.push_back(a * s);
        return UPoly(dom_, std::move(r));
    }
    UPoly& operator+=(const UPoly& o) { return *this = *this + o; }
    UPoly& operator-=(const UPoly& o) { return *this = *this - o; }
    UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

    K operator()(const K& x) const {
        K acc = dom_.zero();
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    /// Division with remainder; the divisor's leading coefficient must be invertible.
    std::pair<UPoly, UPoly> divmod(const UPoly& b) const {
        if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
        const K lead_inv = b.leading().inv();
        std::vector<K> r = c_;
        if (r.size() < b.c_.size()) return {UPoly(dom_), *this};
        std::vector<K> q(r.size() - b.c_.size() + 1, dom_.zero());
        for (std::size_t i = r.size(); i-- >= b.c_.size();) {
            if (r[i].is_zero()) continue;
            const K t = r[i] * lead_inv;
            const std::size_t shift = i - (b.c_.size() - 1);
            q[shift] = t;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[shift + j] = r[shift + j] - t * b.c_[j];
        }
        r.resize(b.c_.size() - 1, dom_.zero());
        return {UPoly(dom_, std::move(q)), UPoly(dom_, std::move(r))};
    }
    UPoly operator/(const UPoly& b) const { return divmod(b).first; }
    UPoly operator%(const UPoly& b) const { return divmod(b).second; }

    UPoly monic() const {
        if (is_zero()) return *this;
        return *this * leading().inv();
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly(dom_);
        std::vector<K> r;
        for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * dom_.from_int(static_cast<std::int64_t>(i)));
        return UPoly(dom_, std::move(r));
    }

    UPoly pow(std::uint64_t e) const {
        UPoly r = constant(dom_, dom_.one());
        UPoly b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    /// this^e mod m.
    UPoly powmod(std::uint64_t e, const UPoly& m) const {
        UPoly r = constant(dom_, dom_.one()) % m;
        UPoly b = *this % m;
        while (e) {
            if (e & 1) r = (r * b) % m;
            e >>= 1;
            if (e) b = (b * b) % m;
        }
        return r;
    }

    /// this(g(x)).
    UPoly compose(const UPoly& g) const {
        UPoly acc(dom_);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * g + constant(dom_, c_[i]);
        return acc;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    Dom dom_{};
    std::vector<K> c_;
};

/// Monic gcd by Euclid; gcd(0, 0) = 0.
template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
    while (!b.is_zero()) {
        auto r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

/// Extended Euclid: returns (g, s, t) with s a + t b = g, g monic.
template <class K>
std::tuple<UPoly<K>, UPoly<K>, UPoly<K>> xgcd(const UPoly<K>& a, const UPoly<K>& b) {
    const auto& dom = a.domain();
    UPoly<K> r0 = a, r1 = b;
    UPoly<K> s0 = UPoly<K>::constant(dom, dom.one()), s1(dom);
    UPoly<K> t0(dom), t1 = UPoly<K>::constant(dom, dom.one());
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        auto s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        auto t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const K li = r0.leading().inv();
    return {r0 * li, s0 * li, t0 * li};
}

template <class K>
std::ostream& operator<<(std::ostream& os, const UPoly<K>& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t i = p.coeffs().size(); i-- > 0;) {
        if (p.coeffs()[i].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << p.coeffs()[i] << ")";
        if (i > 0) os << "*x^" << i;
    }
    return os;
}

}  // namespace towerforge::poly

#endif  // TOWERFORGE_POLY_UPOLY_HPP
