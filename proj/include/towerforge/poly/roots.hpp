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

#ifndef TOWERFORGE_POLY_ROOTS_HPP
#define TOWERFORGE_POLY_ROOTS_HPP

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "towerforge/gf/field.hpp"
#include "towerforge/poly/sparse.hpp"
#include "towerforge/poly/upoly.hpp"

namespace towerforge::poly {

using GPoly = UPoly<gf::Element>;
using RootList = std::vector<std::pair<gf::Element, int>>;

namespace detail {

/// Multiplicity of r as a root of f (f != 0).
inline int multiplicity(GPoly f, const gf::Element& r) {
    const auto& dom = f.domain();
    const GPoly lin(dom, {-r, dom.one()});
    int m = 0;
    while (f.degree() > 0 && f(r).is_zero()) {
        f = f / lin;
        ++m;
    }
    return m;
}

/// Absolute trace map x -> sum x^{p^i} computed modulo g, applied to c*x.
inline GPoly trace_mod(const GPoly& g, const gf::Element& c) {
    const auto& dom = g.domain();
    const std::uint32_t p = dom.field.characteristic();
    const std::uint32_t k = dom.field.degree();
    GPoly y = (GPoly::x(dom) * c) % g;
    GPoly acc = y;
    for (std::uint32_t i = 1; i < k; ++i) {
        y = y.powmod(p, g);
        acc = acc + y;
    }
    return acc;
}

/// Roots of a squarefree g that splits into distinct linear factors.
inline void split_linear(const GPoly& g, std::vector<gf::Element>& out) {
    if (g.degree() <= 0) return;
    if (g.degree() == 1) {
        out.push_back(-(g.coeff(0) * g.leading().inv()));
        return;
    }
    const auto& dom = g.domain();
    const auto& f = dom.field;
    const auto theta = gf::primitive_element(f);
    auto c = f.one();
    for (std::uint32_t j = 0; j < f.degree(); ++j, c = c * theta) {
        const GPoly t = trace_mod(g, c);
        std::vector<GPoly> parts;
        for (std::uint32_t a = 0; a < f.characteristic(); ++a) {
            GPoly h = gcd(g, t - GPoly::constant(dom, f.from_int(a)));
            if (h.degree() > 0) parts.push_back(std::move(h));
        }
        if (parts.size() > 1) {
            for (const auto& h : parts) split_linear(h, out);
            return;
        }
    }
    fail(ErrorKind::InconsistentData, "trace splitting failed to separate roots");
}

}  // namespace detail

/// Every root in the coefficient field with multiplicity, by evaluation at all points.
inline RootList roots_by_enumeration(const GPoly& f) {
    if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
    RootList out;
    for (const auto& x : gf::enumerate(f.domain().field))
        if (f(x).is_zero()) out.emplace_back(x, detail::multiplicity(f, x));
    return out;
}

/// Every root in the coefficient field with multiplicity, ordered by enumeration
/// order (0 first, then by discrete log). Roots are isolated by gcd with x^q - x;
/// small fields are then scanned, larger ones split deterministically by traces.
inline RootList roots_in_field(const GPoly& f) {
    if (f.is_zero()) fail(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
    if (f.degree() <= 0) return {};
    const auto& dom = f.domain();
    const auto& field = dom.field;
    if (field.order() <= 256) return roots_by_enumeration(f);
    const GPoly xq = GPoly::x(dom).powmod(field.order(), f);
    const GPoly g = gcd(f, xq - GPoly::x(dom));
    std::vector<gf::Element> rs;
    detail::split_linear(g, rs);
    auto key = [](const gf::Element& x) -> std::int64_t { return x.is_zero() ? -1 : gf::discrete_log(x); };
    std::sort(rs.begin(), rs.end(), [&](const auto& a, const auto& b) { return key(a) < key(b); });
    RootList out;
    for (const auto& r : rs) out.emplace_back(r, detail::multiplicity(f, r));
    return out;
}

inline RootList roots_in_field(const SparsePoly<gf::Element>& f, const std::string& var) {
    return roots_in_field(f.to_upoly(var));
}

/// Monic gcd of univariate polynomials in var.
template <class K>
SparsePoly<K> gcd_univariate(const SparsePoly<K>& a, const SparsePoly<K>& b, const std::string& var) {
    if (a.is_zero() && b.is_zero()) fail(ErrorKind::ZeroPolynomial, "gcd(0, 0)");
    auto g = gcd(a.to_upoly(var), b.to_upoly(var));
    std::vector<std::string> vars = {var};
    return SparsePoly<K>::from_upoly(g, vars, var);
}

/// Irreducibility over the coefficient field GF(q) by Rabin's test.
inline bool is_irreducible(const GPoly& f) {
    const long n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const auto& dom = f.domain();
    const std::uint64_t q = dom.field.order();
    const GPoly x = GPoly::x(dom);
    auto frob_iter = [&](std::uint64_t times) {
        GPoly y = x % f;
        for (std::uint64_t i = 0; i < times; ++i) y = y.powmod(q, f);
        return y;
    };
    if (frob_iter(static_cast<std::uint64_t>(n)) != x % f) return false;
    for (auto r : gf::detail::prime_factors(static_cast<std::uint64_t>(n))) {
        const GPoly h = frob_iter(static_cast<std::uint64_t>(n) / r) - x;
        if (gcd(f, h).degree() != 0) return false;
    }
    return true;
}

}  // namespace towerforge::poly

#endif  // TOWERFORGE_POLY_ROOTS_HPP
