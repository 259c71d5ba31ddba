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
 * @file series.hpp
 * @brief Truncated Laurent series over a finite field.
 *
 * A series knows its coefficients for exponents below an absolute precision.
 * Products and inverses track how much precision survives; any decision that
 * needs a coefficient past the known range raises PrecisionExhausted.
 */

#ifndef TOWERFORGE_ENGINE_SERIES_HPP
#define TOWERFORGE_ENGINE_SERIES_HPP

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <vector>

#include "towerforge/error.hpp"
#include "towerforge/gf/field.hpp"

namespace towerforge::engine {

class Series {
public:
    static constexpr int kExact = INT_MAX / 4;

    Series() = default;
    Series(const gf::FieldSpec& F, int prec) : F_(F), prec_(prec) {}

    static Series constant(const gf::FieldSpec& F, const gf::Element& c, int prec = kExact) {
        Series s(F, prec);
        s.set(0, c);
        return s;
    }
    static Series monomial(const gf::FieldSpec& F, const gf::Element& c, int e, int prec = kExact) {
        Series s(F, prec);
        s.set(e, c);
        return s;
    }

    int prec() const { return prec_; }
    const gf::FieldSpec& field() const { return F_; }
    /// Lowest known nonzero exponent; nullopt if zero to the known precision.
    std::optional<int> val() const {
        if (c_.empty()) return std::nullopt;
        return c_.begin()->first;
    }
    gf::Element coeff(int e) const {
        if (e >= prec_) fail(ErrorKind::PrecisionExhausted, "coefficient past known precision");
        auto it = c_.find(e);
        return it == c_.end() ? F_.zero() : it->second;
    }
    const std::map<int, gf::Element>& terms() const { return c_; }

    Series truncated(int p) const {
        Series r(F_, std::min(p, prec_));
        for (const auto& [e, v] : c_)
            if (e < r.prec_) r.c_.emplace(e, v);
        return r;
    }

    Series operator+(const Series& o) const {
        Series r(F_, std::min(prec_, o.prec_));
        for (const auto& [e, v] : c_)
            if (e < r.prec_) r.c_.emplace(e, v);
        for (const auto& [e, v] : o.c_)
            if (e < r.prec_) r.add(e, v);
        return r;
    }
    Series operator-() const {
        Series r(F_, prec_);
        for (const auto& [e, v] : c_) r.c_.emplace(e, -v);
        return r;
    }
    Series operator-(const Series& o) const { return *this + (-o); }
    Series operator*(const gf::Element& s) const {
        Series r(F_, prec_);
        if (s.is_zero()) return r;
        for (const auto& [e, v] : c_) r.c_.emplace(e, v * s);
        return r;
    }
    Series operator*(const Series& o) const {
        const auto va = val(), vb = o.val();
        int p;
        if (va && vb) p = std::min(sat(prec_, *vb), sat(o.prec_, *va));
        else if (va) p = sat(o.prec_, *va);
        else if (vb) p = sat(prec_, *vb);
        else p = std::min(prec_, o.prec_);
        // the product of two zeros is known to the sum of their precisions
        if (!va && !vb) p = sat(prec_, o.prec_);
        Series r(F_, p);
        for (const auto& [e1, v1] : c_) {
            if (e1 + (vb ? *vb : 0) >= p) break;
            for (const auto& [e2, v2] : o.c_) {
                if (e1 + e2 >= p) break;
                r.add(e1 + e2, v1 * v2);
            }
        }
        return r;
    }
    Series inv() const {
        const auto v = val();
        if (!v) fail(ErrorKind::PrecisionExhausted, "inverse of a series that is zero to known precision");
        if (prec_ >= kExact / 2) {
            if (c_.size() == 1) return monomial(F_, c_.begin()->second.inv(), -*v);
            fail(ErrorKind::PrecisionExhausted, "inverse of an exact series needs a working precision");
        }
        const int rel = prec_ - *v;
        const gf::Element ia = c_.begin()->second.inv();
        std::vector<gf::Element> a(static_cast<std::size_t>(rel), F_.zero()), b(static_cast<std::size_t>(rel), F_.zero());
        for (const auto& [e, x] : c_) a[static_cast<std::size_t>(e - *v)] = x;
        for (int k = 0; k < rel; ++k) {
            gf::Element acc = k == 0 ? F_.one() : F_.zero();
            for (int i = 1; i <= k; ++i)
                if (!a[static_cast<std::size_t>(i)].is_zero()) acc = acc - a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(k - i)];
            b[static_cast<std::size_t>(k)] = acc * ia;
        }
        Series r(F_, rel - *v);
        for (int k = 0; k < rel; ++k)
            if (!b[static_cast<std::size_t>(k)].is_zero()) r.c_.emplace(k - *v, b[static_cast<std::size_t>(k)]);
        return r;
    }
    Series pow(unsigned e) const {
        Series r = constant(F_, F_.one());
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

private:
    static int sat(int a, int b) {
        long s = static_cast<long>(a) + b;
        return static_cast<int>(std::min<long>(s, kExact));
    }
    void set(int e, const gf::Element& v) {
        if (!v.is_zero() && e < prec_) c_[e] = v;
    }
    void add(int e, const gf::Element& v) {
        auto [it, fresh] = c_.emplace(e, v);
        if (!fresh) {
            it->second = it->second + v;
            if (it->second.is_zero()) c_.erase(it);
        } else if (v.is_zero()) {
            c_.erase(it);
        }
    }

    gf::FieldSpec F_;
    int prec_ = kExact;
    std::map<int, gf::Element> c_;
};

/// Evaluates a polynomial with series coefficients given densely in Y.
inline Series horner(const std::vector<Series>& coeffs, const Series& y) {
    Series acc = coeffs.back();
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * y + coeffs[i];
    return acc;
}

}  // namespace towerforge::engine

#endif  // TOWERFORGE_ENGINE_SERIES_HPP
