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

#ifndef TOWERFORGE_POLY_QUOTIENT_HPP
#define TOWERFORGE_POLY_QUOTIENT_HPP

#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "towerforge/poly/ring.hpp"
#include "towerforge/poly/upoly.hpp"

namespace towerforge::poly {

template <class K>
class QuotientElement;

/// K[var]/(modulus) for a monic modulus over a field domain K.
template <class K>
struct QuotientRing {
    std::shared_ptr<const UPoly<K>> modulus;
    std::string var = "w";

    QuotientRing() = default;
    QuotientRing(UPoly<K> m, std::string v) : var(std::move(v)) {
        if (m.degree() < 1) fail(ErrorKind::BadModulus, "quotient modulus must have positive degree");
        if (!m.is_monic()) fail(ErrorKind::NotMonic, "quotient modulus must be monic");
        modulus = std::make_shared<const UPoly<K>>(std::move(m));
    }

    const domain_t<K>& base() const { return modulus->domain(); }
    long degree() const { return modulus->degree(); }

    QuotientElement<K> zero() const;
    QuotientElement<K> one() const;
    QuotientElement<K> from_int(std::int64_t n) const;
    QuotientElement<K> generator() const;
    QuotientElement<K> lift(const K& c) const;
    QuotientElement<K> element(UPoly<K> residue) const;
    std::uint64_t characteristic() const { return base().characteristic(); }
    nlohmann::json describe() const {
        std::ostringstream os;
        os << *modulus;
        return {{"kind", "quotient"}, {"var", var}, {"modulus", os.str()}, {"base", base().describe()}};
    }
    friend bool operator==(const QuotientRing& a, const QuotientRing& b) {
        return a.modulus == b.modulus || (a.modulus && b.modulus && *a.modulus == *b.modulus);
    }
};

template <class K>
class QuotientElement {
public:
    using P = UPoly<K>;

    QuotientElement() = default;
    QuotientElement(QuotientRing<K> ring, P residue) : ring_(std::move(ring)), r_(std::move(residue) % *ring_.modulus) {}

    const QuotientRing<K>& domain() const { return ring_; }
    const P& residue() const { return r_; }
    bool is_zero() const { return r_.is_zero(); }

    QuotientElement operator+(const QuotientElement& o) const { return raw(r_ + check(o).r_); }
    QuotientElement operator-(const QuotientElement& o) const { return raw(r_ - check(o).r_); }
    QuotientElement operator-() const { return raw(-r_); }
    QuotientElement operator*(const QuotientElement& o) const { return QuotientElement(ring_, r_ * check(o).r_); }
    QuotientElement operator/(const QuotientElement& o) const { return *this * o.inv(); }
    QuotientElement& operator+=(const QuotientElement& o) { return *this = *this + o; }
    QuotientElement& operator*=(const QuotientElement& o) { return *this = *this * o; }

    /// Inverse via extended Euclid. A nontrivial gcd is reported in the error text.
    QuotientElement inv() const {
        auto [g, s, t] = xgcd(r_, *ring_.modulus);
        if (g.degree() != 0) {
            std::ostringstream os;
            os << "residue shares factor " << g << " with modulus";
            fail(ErrorKind::NotInvertible, os.str());
        }
        return QuotientElement(ring_, s);
    }

    friend bool operator==(const QuotientElement& a, const QuotientElement& b) { return a.r_ == b.r_; }
    friend bool operator!=(const QuotientElement& a, const QuotientElement& b) { return !(a == b); }

private:
    QuotientElement raw(P r) const {
        QuotientElement e;
        e.ring_ = ring_;
        e.r_ = std::move(r);
        return e;
    }
    const QuotientElement& check(const QuotientElement& o) const {
        if (!(ring_ == o.ring_)) fail(ErrorKind::DomainMismatch, "quotient elements with different moduli");
        return o;
    }

    QuotientRing<K> ring_{};
    P r_{};
};

template <class K>
QuotientElement<K> QuotientRing<K>::zero() const { return QuotientElement<K>(*this, UPoly<K>(base())); }
template <class K>
QuotientElement<K> QuotientRing<K>::one() const { return lift(base().one()); }
template <class K>
QuotientElement<K> QuotientRing<K>::from_int(std::int64_t n) const { return lift(base().from_int(n)); }
template <class K>
QuotientElement<K> QuotientRing<K>::lift(const K& c) const { return QuotientElement<K>(*this, UPoly<K>::constant(base(), c)); }
template <class K>
QuotientElement<K> QuotientRing<K>::generator() const { return QuotientElement<K>(*this, UPoly<K>::x(base())); }
template <class K>
QuotientElement<K> QuotientRing<K>::element(UPoly<K> residue) const { return QuotientElement<K>(*this, std::move(residue)); }

template <class K>
struct DomainFor<QuotientElement<K>> {
    using type = QuotientRing<K>;
};

template <class K>
std::ostream& operator<<(std::ostream& os, const QuotientElement<K>& x) {
    return os << "[" << x.residue() << "]";
}

}  // namespace towerforge::poly

#endif  // TOWERFORGE_POLY_QUOTIENT_HPP
