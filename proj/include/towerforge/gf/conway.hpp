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

#ifndef TOWERFORGE_GF_CONWAY_HPP
#define TOWERFORGE_GF_CONWAY_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "towerforge/data_dir.hpp"
#include "towerforge/gf/field.hpp"

namespace towerforge::gf {

/// Conway polynomial for GF(p^k) from the shipped table, if present.
inline std::optional<std::vector<std::uint32_t>> conway_polynomial(std::uint32_t p, std::uint32_t k) {
    static std::once_flag once;
    static nlohmann::json table;
    std::call_once(once, [] { table = load_data_file("conway.json").at("polynomials"); });
    const auto ps = std::to_string(p);
    const auto ks = std::to_string(k);
    if (!table.contains(ps) || !table[ps].contains(ks)) return std::nullopt;
    return table[ps][ks].get<std::vector<std::uint32_t>>();
}

/// GF(p^k) with the given defining polynomial, or the Conway polynomial when omitted.
inline FieldSpec make_field(std::uint32_t p, std::uint32_t k,
                            const std::optional<std::vector<std::uint32_t>>& defining_poly = std::nullopt) {
    if (defining_poly) return make_field_from_poly(p, k, *defining_poly);
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
        order *= p;
        if (order > kMaxFieldOrder) fail(ErrorKind::SizeExceeded, "p^k exceeds 2^20");
    }
    auto poly = conway_polynomial(p, k);
    if (!poly && k == 1 && detail::is_prime(p)) {
        // degree one: x - g for the least primitive root g
        for (std::uint32_t g = 1; g < p && !poly; ++g) {
            bool primitive = true;
            for (auto r : detail::prime_factors(p - 1)) {
                std::uint64_t acc = 1, b = g, e = (p - 1) / r;
                while (e) {
                    if (e & 1) acc = acc * b % p;
                    b = b * b % p;
                    e >>= 1;
                }
                if (acc == 1) primitive = false;
            }
            if (primitive || p == 2) poly = std::vector<std::uint32_t>{(p - g) % p, 1};
        }
    }
    if (!poly) fail(ErrorKind::TableMiss, "no Conway polynomial for p=" + std::to_string(p) + ", k=" + std::to_string(k));
    return make_field_from_poly(p, k, *poly);
}

inline nlohmann::json field_to_json(const FieldSpec& f) {
    return {{"p", f.characteristic()}, {"k", f.degree()}, {"poly", f.defining_poly()}};
}

inline FieldSpec field_from_json(const nlohmann::json& j) {
    try {
        const auto p = j.at("p").get<std::uint32_t>();
        const auto k = j.at("k").get<std::uint32_t>();
        if (j.contains("poly")) return make_field(p, k, j.at("poly").get<std::vector<std::uint32_t>>());
        return make_field(p, k);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::SchemaError, std::string("field descriptor: ") + e.what());
    }
}

inline nlohmann::json element_to_json(const Element& x) { return x.coeffs(); }

inline Element element_from_json(const FieldSpec& f, const nlohmann::json& j) {
    return f.from_coeffs(j.get<std::vector<std::uint32_t>>());
}

}  // namespace towerforge::gf

#endif  // TOWERFORGE_GF_CONWAY_HPP
