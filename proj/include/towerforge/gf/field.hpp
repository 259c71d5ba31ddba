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
 * @file field.hpp
 * @brief Small finite fields GF(p^k) in a fixed polynomial basis.
 *
 * A field is described by its characteristic p and a monic irreducible
 * polynomial f of degree k over GF(p). Elements are stored packed: the
 * coefficient vector (c_0, ..., c_{k-1}) of the polynomial-basis
 * representative is encoded as the integer c_0 + c_1 p + ... + c_{k-1} p^{k-1}.
 *
 * Multiplication goes through discrete log / antilog tables built once when
 * the field is created, so fields are limited to p^k <= 2^20. Fields are
 * interned: two calls to make_field with the same (p, f) return handles to
 * the same immutable FieldData, and elements keep a raw pointer to it.
 *
 * @code{.cpp}
 * auto f32 = gf::make_field(2, 5, std::vector<std::uint32_t>{1, 0, 1, 0, 0, 1});  // a^5 + a^2 + 1
 * auto a = f32.variable();
 * assert(a.pow(5) == a.pow(2) + f32.one());
 * @endcode
 */

#ifndef TOWERFORGE_GF_FIELD_HPP
#define TOWERFORGE_GF_FIELD_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "towerforge/error.hpp"

namespace towerforge::gf {

constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Dense polynomials over GF(p) as coefficient vectors, low-to-high, trimmed.
using Coeffs = std::vector<std::uint32_t>;

inline void trim(Coeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::uint64_t r = 1, b = a % p;
    std::uint64_t e = p - 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

inline Coeffs mul_mod(const Coeffs& a, const Coeffs& b, const Coeffs& f, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    const std::size_t k = f.size() - 1;
    const std::uint32_t lead_inv = inv_mod(f.back(), p);
    for (std::size_t i = prod.size(); i-- > k;) {
        std::uint64_t c = prod[i] * lead_inv % p;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= k; ++j) prod[i - k + j] = (prod[i - k + j] + (p - c) * f[j]) % p;
    }
    Coeffs out(std::min(prod.size(), k));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    trim(out);
    return out;
}

inline Coeffs pow_mod(Coeffs base, std::uint64_t e, const Coeffs& f, std::uint32_t p) {
    Coeffs r{1};
    while (e) {
        if (e & 1) r = mul_mod(r, base, f, p);
        base = mul_mod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

inline Coeffs rem(Coeffs a, const Coeffs& b, std::uint32_t p) {
    trim(a);
    const std::uint32_t lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size()) {
        std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j)
            a[shift + j] = static_cast<std::uint32_t>((a[shift + j] + (p - c) * b[j]) % p);
        trim(a);
    }
    return a;
}

inline Coeffs gcd(Coeffs a, Coeffs b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Coeffs r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline Coeffs sub(Coeffs a, const Coeffs& b, std::uint32_t p) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

/// Rabin's irreducibility test for a polynomial of degree k over GF(p).
inline bool is_irreducible(const Coeffs& f, std::uint32_t p) {
    const std::size_t k = f.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    const Coeffs x{0, 1};
    auto x_to_p_pow = [&](std::size_t r) {
        Coeffs y = x;
        for (std::size_t i = 0; i < r; ++i) y = pow_mod(y, p, f, p);
        return y;
    };
    if (sub(x_to_p_pow(k), x, p) != Coeffs{}) return false;
    for (auto r : prime_factors(k)) {
        Coeffs g = gcd(f, sub(x_to_p_pow(k / r), x, p), p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

/// Immutable field description plus the arithmetic tables built from it.
struct FieldData : std::enable_shared_from_this<FieldData> {
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::uint32_t order = 0;  // p^k
    std::vector<std::uint32_t> poly;  // monic defining polynomial, low-to-high, length k+1
    std::string label;
    std::vector<std::uint32_t> p_pow;  // p^i for i <= k
    std::vector<std::uint32_t> exp_table;  // g^i for i < 2(order-1)
    std::vector<std::uint32_t> log_table;  // log_g(x), x != 0
    std::uint32_t generator = 0;  // packed primitive element
    bool variable_is_primitive = false;

    std::uint32_t pack(const detail::Coeffs& c) const {
        std::uint32_t v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = v * p + c[i];
        return v;
    }
    detail::Coeffs unpack(std::uint32_t v) const {
        detail::Coeffs c(k, 0);
        for (std::uint32_t i = 0; i < k; ++i) {
            c[i] = v % p;
            v /= p;
        }
        return c;
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (p == 2) return a ^ b;
        std::uint32_t out = 0;
        for (std::uint32_t i = 0; i < k; ++i) {
            out += ((a % p + b % p) % p) * p_pow[i];
            a /= p;
            b /= p;
        }
        return out;
    }
    std::uint32_t neg(std::uint32_t a) const {
        if (p == 2) return a;
        std::uint32_t out = 0;
        for (std::uint32_t i = 0; i < k; ++i) {
            out += ((p - a % p) % p) * p_pow[i];
            a /= p;
        }
        return out;
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp_table[log_table[a] + log_table[b]];
    }
};

class Element;

/// Handle to an interned field. Cheap to copy.
class FieldSpec {
public:
    FieldSpec() = default;
    explicit FieldSpec(std::shared_ptr<const FieldData> d) : d_(std::move(d)) {}

    std::uint32_t characteristic() const { return d_->p; }
    std::uint32_t degree() const { return d_->k; }
    std::uint32_t order() const { return d_->order; }
    const std::vector<std::uint32_t>& defining_poly() const { return d_->poly; }
    const std::string& label() const { return d_->label; }
    const FieldData* data() const { return d_.get(); }
    bool valid() const { return static_cast<bool>(d_); }

    Element zero() const;
    Element one() const;
    Element from_int(std::int64_t n) const;
    Element from_coeffs(const std::vector<std::uint32_t>& coeffs) const;
    Element from_packed(std::uint32_t v) const;
    /// Residue class of the polynomial variable.
    Element variable() const;

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) { return a.d_.get() == b.d_.get(); }
    friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }

private:
    std::shared_ptr<const FieldData> d_;
};

class Element {
public:
    Element() = default;
    Element(const FieldData* f, std::uint32_t v) : f_(f), v_(v) {}

    const FieldData* field_data() const { return f_; }
    std::uint32_t packed() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return f_ && v_ == 1; }
    std::vector<std::uint32_t> coeffs() const { return f_->unpack(v_); }

    Element operator+(const Element& o) const { return {check(o), f_->add(v_, o.v_)}; }
    Element operator-(const Element& o) const { return {check(o), f_->add(v_, f_->neg(o.v_))}; }
    Element operator-() const { return {f_, f_->neg(v_)}; }
    Element operator*(const Element& o) const { return {check(o), f_->mul(v_, o.v_)}; }
    Element operator/(const Element& o) const { return *this * o.inv(); }
    Element& operator+=(const Element& o) { return *this = *this + o; }
    Element& operator-=(const Element& o) { return *this = *this - o; }
    Element& operator*=(const Element& o) { return *this = *this * o; }

    Element inv() const {
        if (v_ == 0) fail(ErrorKind::DivisionByZero, "inverse of zero in " + f_->label);
        const std::uint32_t n = f_->order - 1;
        return {f_, f_->exp_table[(n - f_->log_table[v_]) % n]};
    }

    /// x^e for any integer e; negative e requires x != 0.
    Element pow(std::int64_t e) const {
        if (v_ == 0) {
            if (e == 0) return {f_, 1};
            if (e < 0) fail(ErrorKind::DivisionByZero, "negative power of zero");
            return *this;
        }
        const std::int64_t n = f_->order - 1;
        std::int64_t r = static_cast<std::int64_t>(f_->log_table[v_]) * (((e % n) + n) % n) % n;
        return {f_, f_->exp_table[r]};
    }

    friend bool operator==(const Element& a, const Element& b) { return a.f_ == b.f_ && a.v_ == b.v_; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
    friend bool operator<(const Element& a, const Element& b) { return a.v_ < b.v_; }

private:
    const FieldData* check(const Element& o) const {
        if (f_ != o.f_) {
            fail(ErrorKind::FieldMismatch, "elements of " + (f_ ? f_->label : std::string("<none>")) + " and " +
                                               (o.f_ ? o.f_->label : std::string("<none>")));
        }
        return f_;
    }

    const FieldData* f_ = nullptr;
    std::uint32_t v_ = 0;
};

inline Element FieldSpec::zero() const { return {d_.get(), 0}; }
inline Element FieldSpec::one() const { return {d_.get(), 1}; }
inline Element FieldSpec::from_int(std::int64_t n) const {
    const std::int64_t p = d_->p;
    return {d_.get(), static_cast<std::uint32_t>(((n % p) + p) % p)};
}
inline Element FieldSpec::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
    if (coeffs.size() > d_->k) fail(ErrorKind::FieldMismatch, "coefficient vector longer than field degree");
    detail::Coeffs c(coeffs.begin(), coeffs.end());
    for (auto& x : c) x %= d_->p;
    return {d_.get(), d_->pack(c)};
}
inline Element FieldSpec::from_packed(std::uint32_t v) const {
    if (v >= d_->order) fail(ErrorKind::FieldMismatch, "packed value out of range");
    return {d_.get(), v};
}
inline Element FieldSpec::variable() const {
    if (d_->k == 1) return {d_.get(), static_cast<std::uint32_t>((d_->p - d_->poly[0]) % d_->p)};
    return {d_.get(), d_->p};
}

inline std::string describe(const FieldSpec& f) { return f.label(); }

/// Handle to the field an element lives in.
inline FieldSpec field_of(const Element& x) {
    if (x.field_data() == nullptr) fail(ErrorKind::FieldMismatch, "element has no field");
    return FieldSpec(x.field_data()->shared_from_this());
}

namespace detail {

inline std::shared_ptr<FieldData> build_field(std::uint32_t p, std::uint32_t k, Coeffs poly) {
    auto d = std::make_shared<FieldData>();
    d->p = p;
    d->k = k;
    d->poly = poly;
    d->p_pow.resize(k + 1);
    d->p_pow[0] = 1;
    for (std::uint32_t i = 1; i <= k; ++i) d->p_pow[i] = d->p_pow[i - 1] * p;
    d->order = d->p_pow[k];
    {
        std::ostringstream os;
        os << "GF(" << p;
        if (k > 1) os << "^" << k;
        os << ")";
        d->label = os.str();
    }
    const std::uint64_t n = d->order - 1;
    const auto factors = prime_factors(n);
    auto has_full_order = [&](const Coeffs& g) {
        if (n == 1) return g == Coeffs{1};
        for (auto r : factors)
            if (pow_mod(g, n / r, poly, p) == Coeffs{1}) return false;
        return true;
    };
    // candidate generators in packed order, the variable first
    Coeffs gen;
    const Coeffs x = k == 1 ? Coeffs{(p - poly[0]) % p} : Coeffs{0, 1};
    if (has_full_order(x)) {
        gen = x;
        d->variable_is_primitive = true;
    } else {
        for (std::uint32_t v = 1; v < d->order; ++v) {
            Coeffs c = d->unpack(v);
            trim(c);
            if (has_full_order(c)) {
                gen = c;
                break;
            }
        }
    }
    trim(gen);
    d->generator = d->pack(gen);
    d->exp_table.assign(2 * n, 0);
    d->log_table.assign(d->order, 0);
    Coeffs cur{1};
    for (std::uint64_t i = 0; i < n; ++i) {
        const std::uint32_t v = d->pack(cur);
        d->exp_table[i] = v;
        d->log_table[v] = static_cast<std::uint32_t>(i);
        cur = mul_mod(cur, gen, poly, p);
    }
    for (std::uint64_t i = n; i < 2 * n; ++i) d->exp_table[i] = d->exp_table[i - n];
    return d;
}

inline std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

inline std::map<std::pair<std::uint32_t, Coeffs>, std::shared_ptr<const FieldData>>& registry() {
    static std::map<std::pair<std::uint32_t, Coeffs>, std::shared_ptr<const FieldData>> r;
    return r;
}

}  // namespace detail

/// Validates (p, poly) and returns the interned field.
inline FieldSpec make_field_from_poly(std::uint32_t p, std::uint32_t k, const std::vector<std::uint32_t>& poly) {
    if (!detail::is_prime(p)) fail(ErrorKind::FieldError, "characteristic " + std::to_string(p) + " is not prime");
    if (k < 1) fail(ErrorKind::FieldError, "degree must be >= 1");
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        order *= p;
        if (order > kMaxFieldOrder) fail(ErrorKind::SizeExceeded, "p^k exceeds 2^20");
    }
    detail::Coeffs f(poly.begin(), poly.end());
    if (f.size() != k + 1 || f.back() % p != 1)
        fail(ErrorKind::FieldError, "defining polynomial must be monic of degree " + std::to_string(k));
    for (auto& c : f) c %= p;
    if (!detail::is_irreducible(f, p)) fail(ErrorKind::NotIrreducible, "defining polynomial is reducible over GF(p)");
    std::lock_guard lock(detail::registry_mutex());
    auto key = std::make_pair(p, f);
    auto it = detail::registry().find(key);
    if (it != detail::registry().end()) return FieldSpec(it->second);
    auto d = detail::build_field(p, k, f);
    detail::registry().emplace(key, d);
    return FieldSpec(d);
}

/// x^q, where q must be a power of the characteristic.
inline Element frobenius(const Element& x, std::uint64_t q) {
    const FieldData* f = x.field_data();
    std::uint64_t r = q;
    while (r > 1 && r % f->p == 0) r /= f->p;
    if (q == 0 || r != 1) fail(ErrorKind::BadPower, std::to_string(q) + " is not a power of " + std::to_string(f->p));
    if (x.is_zero()) return x;
    const std::uint64_t n = f->order - 1;
    return {f, f->exp_table[static_cast<std::uint64_t>(f->log_table[x.packed()]) * (q % n) % n]};
}

inline Element primitive_element(const FieldSpec& f) { return f.from_packed(f.data()->generator); }

/// e in [0, p^k - 2] with primitive_element(f)^e == x.
inline std::uint32_t discrete_log(const Element& x) {
    if (x.is_zero()) fail(ErrorKind::DivisionByZero, "discrete log of zero");
    return x.field_data()->log_table[x.packed()];
}

inline std::uint64_t multiplicative_order(const Element& x) {
    if (x.is_zero()) fail(ErrorKind::DivisionByZero, "order of zero");
    const std::uint64_t n = x.field_data()->order - 1;
    return n / std::gcd<std::uint64_t>(n, discrete_log(x));
}

/// Absolute trace down to GF(p).
inline Element absolute_trace(const Element& x) {
    Element acc = x;
    Element y = x;
    for (std::uint32_t i = 1; i < x.field_data()->k; ++i) {
        y = frobenius(y, x.field_data()->p);
        acc += y;
    }
    return acc;
}

/// All elements: 0 first, then g^0, g^1, ..., g^{q-2}.
inline std::vector<Element> enumerate(const FieldSpec& f) {
    std::vector<Element> out;
    out.reserve(f.order());
    out.push_back(f.zero());
    for (std::uint32_t i = 0; i + 1 < f.order(); ++i) out.push_back(f.from_packed(f.data()->exp_table[i]));
    return out;
}

namespace detail {

inline std::mutex& embed_mutex() {
    static std::mutex m;
    return m;
}
inline std::map<std::pair<const FieldData*, const FieldData*>, std::uint32_t>& embed_cache() {
    static std::map<std::pair<const FieldData*, const FieldData*>, std::uint32_t> c;
    return c;
}

}  // namespace detail

/// Image of the source field's variable under the canonical embedding into target:
/// the root of the source defining polynomial with the smallest discrete log.
inline Element embedding_image(const FieldSpec& source, const FieldSpec& target) {
    if (source.characteristic() != target.characteristic() || target.degree() % source.degree() != 0)
        fail(ErrorKind::NotASubfield, source.label() + " is not a subfield of " + target.label());
    {
        std::lock_guard lock(detail::embed_mutex());
        auto it = detail::embed_cache().find({source.data(), target.data()});
        if (it != detail::embed_cache().end()) return target.from_packed(it->second);
    }
    const auto& poly = source.defining_poly();
    auto eval = [&](const Element& x) {
        Element acc = target.zero();
        for (std::size_t i = poly.size(); i-- > 0;) acc = acc * x + target.from_int(poly[i]);
        return acc;
    };
    std::optional<Element> root;
    if (eval(target.zero()).is_zero()) root = target.zero();
    const Element g = primitive_element(target);
    for (std::uint32_t e = 0; !root && e + 1 < target.order(); ++e) {
        Element x = g.pow(e);
        if (eval(x).is_zero()) root = x;
    }
    if (!root) fail(ErrorKind::NotASubfield, "no root of the source polynomial in " + target.label());
    std::lock_guard lock(detail::embed_mutex());
    detail::embed_cache()[{source.data(), target.data()}] = root->packed();
    return *root;
}

/// Ring embedding GF(p^m) -> GF(p^k), m | k, fixing GF(p).
inline Element embed(const Element& x, const FieldSpec& target) {
    const FieldData* src = x.field_data();
    if (src == target.data()) return x;
    if (src->p != target.characteristic() || target.degree() % src->k != 0)
        fail(ErrorKind::NotASubfield, src->label + " is not a subfield of " + target.label());
    const auto c = x.coeffs();
    if (src->k == 1) return target.from_int(c[0]);
    const FieldSpec source(src->shared_from_this());
    const Element r = embedding_image(source, target);
    Element acc = target.zero();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * r + target.from_int(c[i]);
    return acc;
}

inline std::ostream& operator<<(std::ostream& os, const Element& x) {
    if (x.field_data() == nullptr) return os << "<unset>";
    if (x.field_data()->k == 1) return os << x.packed();
    if (x.is_zero()) return os << "0";
    return os << "g^" << discrete_log(x);
}

inline std::ostream& operator<<(std::ostream& os, const FieldSpec& f) { return os << f.label(); }

}  // namespace towerforge::gf

#endif  // TOWERFORGE_GF_FIELD_HPP
