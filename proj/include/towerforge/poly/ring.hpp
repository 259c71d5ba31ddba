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
 * @file ring.hpp
 * @brief Coefficient domains shared by the polynomial containers.
 *
 * Every coefficient type K is paired with a domain object that knows how to
 * produce constants of K (zero, one, integers) and how to describe itself for
 * serialization. Containers store the domain so that a zero polynomial still
 * knows where its coefficients live.
 *
 * Supported pairs: gf::Element / gf::FieldSpec, Rational / RationalDomain,
 * RatFunc<K> / RatFuncDomain<K>, QuotientElement<K> / QuotientRing<K>.
 */

#ifndef TOWERFORGE_POLY_RING_HPP
#define TOWERFORGE_POLY_RING_HPP

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>

#include "json.hpp"
#include "towerforge/error.hpp"
#include "towerforge/gf/conway.hpp"
#include "towerforge/gf/field.hpp"

namespace towerforge::poly {

/// Arbitrary-precision rational in lowest terms, positive denominator.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: integer constants convert implicitly
    explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
    Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
        if (den == 0) fail(ErrorKind::DivisionByZero, "zero denominator");
        v_.canonicalize();
    }

    const mpq_class& value() const { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const { return *this * o.inv(); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational inv() const {
        if (v_ == 0) fail(ErrorKind::DivisionByZero, "inverse of rational zero");
        return Rational(mpq_class(1 / v_));
    }

    std::string to_string() const { return v_.get_str(); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_.get_str(); }

private:
    mpq_class v_;
};

struct RationalDomain {
    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational from_int(std::int64_t n) const { return Rational(static_cast<long>(n)); }
    std::uint64_t characteristic() const { return 0; }
    nlohmann::json describe() const { return {{"kind", "rational"}}; }
    friend bool operator==(const RationalDomain&, const RationalDomain&) { return true; }
};

/// Adapter so gf::FieldSpec can be used as a domain.
struct FieldDomain {
    gf::FieldSpec field;

    gf::Element zero() const { return field.zero(); }
    gf::Element one() const { return field.one(); }
    gf::Element from_int(std::int64_t n) const { return field.from_int(n); }
    std::uint64_t characteristic() const { return field.characteristic(); }
    nlohmann::json describe() const {
        auto j = gf::field_to_json(field);
        j["kind"] = "gf";
        return j;
    }
    friend bool operator==(const FieldDomain& a, const FieldDomain& b) { return a.field == b.field; }
};

template <class D>
concept Domain = requires(const D& d, std::int64_t n) {
    d.zero();
    d.one();
    d.from_int(n);
    { d.describe() } -> std::convertible_to<nlohmann::json>;
    { d == d } -> std::convertible_to<bool>;
};

template <class K>
concept RingElement = requires(const K& a, const K& b) {
    { a + b } -> std::convertible_to<K>;
    { a - b } -> std::convertible_to<K>;
    { a * b } -> std::convertible_to<K>;
    { -a } -> std::convertible_to<K>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
};

/// Maps a coefficient type to its domain type.
template <class K>
struct DomainFor;

template <>
struct DomainFor<gf::Element> {
    using type = FieldDomain;
};

template <>
struct DomainFor<Rational> {
    using type = RationalDomain;
};

template <class K>
using domain_t = typename DomainFor<K>::type;

template <class D>
void require_same_domain(const D& a, const D& b) {
    if (!(a == b)) fail(ErrorKind::DomainMismatch, a.describe().dump() + " vs " + b.describe().dump());
}

/// x^e by repeated squaring for any ring element with a domain.
template <class K, class D>
K ring_pow(const D& dom, K base, std::uint64_t e) {
    K r = dom.one();
    while (e) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

inline std::ostream& operator<<(std::ostream& os, const FieldDomain& d) { return os << d.field.label(); }

}  // namespace towerforge::poly

#endif  // TOWERFORGE_POLY_RING_HPP
