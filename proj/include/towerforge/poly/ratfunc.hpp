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

#ifndef TOWERFORGE_POLY_RATFUNC_HPP
#define TOWERFORGE_POLY_RATFUNC_HPP

#include <ostream>
#include <string>
#include <utility>

#include "towerforge/poly/ring.hpp"
#include "towerforge/poly/upoly.hpp"

namespace towerforge::poly {

template <class K>
class RatFunc;

/// The field K(var) of rational functions over a field domain.
template <class K>
struct RatFuncDomain {
    domain_t<K> base{};
    std::string var = "T";

    RatFunc<K> zero() const;
    RatFunc<K> one() const;
    RatFunc<K> from_int(std::int64_t n) const;
    RatFunc<K> variable() const;
    RatFunc<K> constant(const K& c) const;
    std::uint64_t characteristic() const { return base.characteristic(); }
    nlohmann::json describe() const { return {{"kind", "ratfunc"}, {"var", var}, {"base", base.describe()}}; }
    friend bool operator==(const RatFuncDomain& a, const RatFuncDomain& b) { return a.var == b.var && a.base == b.base; }
};

/// Reduced fraction num/den with den monic and gcd(num, den) = 1.
template <class K>
class RatFunc {
public:
    using P = UPoly<K>;

    RatFunc() = default;
    RatFunc(RatFuncDomain<K> dom, P num) : dom_(std::move(dom)), num_(std::move(num)), den_(P::constant(dom_.base, dom_.base.one())) {}
    RatFunc(RatFuncDomain<K> dom, P num, P den) : dom_(std::move(dom)), num_(std::move(num)), den_(std::move(den)) { normalize(); }

    const RatFuncDomain<K>& domain() const { return dom_; }
    const P& num() const { return num_; }
    const P& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    RatFunc operator+(const RatFunc& o) const {
        if (den_ == o.den_) return RatFunc(dom_, num_ + o.num_, den_);
        return RatFunc(dom_, num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    RatFunc operator-() const { return RatFunc(dom_, -num_, den_, raw_tag{}); }
    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
    RatFunc operator*(const RatFunc& o) const {
        if (is_zero() || o.is_zero()) return dom_.zero();
        // cross-cancel before multiplying to keep operands small
        const P g1 = gcd(num_, o.den_);
        const P g2 = gcd(o.num_, den_);
        return RatFunc(dom_, (num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
    }
    RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

    RatFunc inv() const {
        if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero rational function");
        return RatFunc(dom_, den_, num_);
    }

    /// Value at a point of the base field.
    K operator()(const K& x) const {
        const K d = den_(x);
        if (d.is_zero()) fail(ErrorKind::DenominatorVanishes, "denominator vanishes at evaluation point");
        return num_(x) * d.inv();
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

private:
    struct raw_tag {};
    RatFunc(RatFuncDomain<K> dom, P num, P den, raw_tag) : dom_(std::move(dom)), num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "rational function with zero denominator");
        if (num_.is_zero()) {
            den_ = P::constant(dom_.base, dom_.base.one());
            return;
        }
        const P g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        const K li = den_.leading().inv();
        num_ = num_ * li;
        den_ = den_ * li;
    }

    RatFuncDomain<K> dom_{};
    P num_{};
    P den_{};
};

template <class K>
RatFunc<K> RatFuncDomain<K>::zero() const { return RatFunc<K>(*this, UPoly<K>(base)); }
template <class K>
RatFunc<K> RatFuncDomain<K>::one() const { return constant(base.one()); }
template <class K>
RatFunc<K> RatFuncDomain<K>::from_int(std::int64_t n) const { return constant(base.from_int(n)); }
template <class K>
RatFunc<K> RatFuncDomain<K>::constant(const K& c) const { return RatFunc<K>(*this, UPoly<K>::constant(base, c)); }
template <class K>
RatFunc<K> RatFuncDomain<K>::variable() const { return RatFunc<K>(*this, UPoly<K>::x(base)); }

template <class K>
struct DomainFor<RatFunc<K>> {
    using type = RatFuncDomain<K>;
};

template <class K>
std::ostream& operator<<(std::ostream& os, const RatFunc<K>& f) {
    os << "(" << f.num() << ")";
    if (!f.is_polynomial()) os << "/(" << f.den() << ")";
    return os;
}

}  // namespace towerforge::poly

#endif  // TOWERFORGE_POLY_RATFUNC_HPP
