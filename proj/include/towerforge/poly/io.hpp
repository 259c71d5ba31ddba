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
 * @file io.hpp
 * @brief JSON serialization and an expression parser for SparsePoly.
 *
 * Wire format: {"vars": [...], "domain": {...}, "terms": [{"e": [...], "c": ...}]}
 * with terms in graded-lex descending order. Finite-field coefficients are
 * coefficient lists low-to-high; rationals are strings "n" or "n/d".
 */

#ifndef TOWERFORGE_POLY_IO_HPP
#define TOWERFORGE_POLY_IO_HPP

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "towerforge/error.hpp"
#include "towerforge/gf/conway.hpp"
#include "towerforge/poly/ring.hpp"
#include "towerforge/poly/sparse.hpp"

namespace towerforge::poly {

template <class K>
struct CoeffIO;

template <>
struct CoeffIO<gf::Element> {
    static nlohmann::json to_json(const gf::Element& c) { return gf::element_to_json(c); }
    static gf::Element from_json(const FieldDomain& d, const nlohmann::json& j) {
        if (j.is_number_integer()) return d.field.from_int(j.get<std::int64_t>());
        return gf::element_from_json(d.field, j);
    }
};

template <>
struct CoeffIO<Rational> {
    static nlohmann::json to_json(const Rational& c) { return c.to_string(); }
    static Rational from_json(const RationalDomain&, const nlohmann::json& j) {
        if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
        mpq_class v;
        if (v.set_str(j.get<std::string>(), 10) != 0) fail(ErrorKind::SchemaError, "bad rational '" + j.dump() + "'");
        return Rational(v);
    }
};

inline nlohmann::json domain_to_json(const FieldDomain& d) { return d.describe(); }
inline nlohmann::json domain_to_json(const RationalDomain& d) { return d.describe(); }

template <class K>
nlohmann::json poly_to_json(const SparsePoly<K>& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back({{"e", e}, {"c", CoeffIO<K>::to_json(c)}});
    return {{"vars", p.vars()}, {"domain", p.domain().describe()}, {"terms", terms}};
}

template <class K>
SparsePoly<K> poly_from_json(const nlohmann::json& j, const domain_t<K>& dom) {
    try {
        SparsePoly<K> p(dom, j.at("vars").get<std::vector<std::string>>());
        for (const auto& t : j.at("terms")) {
            const auto e = t.at("e").get<Exps>();
            p.add_term(e, CoeffIO<K>::from_json(dom, t.at("c")));
        }
        return p;
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorKind::SchemaError, std::string("polynomial: ") + ex.what());
    }
}

/// Domain descriptor to domain; only the two leaf domains are file-level.
inline FieldDomain field_domain_from_json(const nlohmann::json& j) {
    if (j.value("kind", "gf") != "gf") fail(ErrorKind::SchemaError, "expected a finite-field domain");
    return FieldDomain{gf::field_from_json(j)};
}

/// 64-bit FNV-1a over the canonical serialization.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

template <class K>
std::string checksum(const SparsePoly<K>& p) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(poly_to_json(p).dump())));
    return buf;
}

namespace detail {

/// Recursive-descent parser for + - * ^ ( ), integers and identifiers.
/// Juxtaposition multiplies, so "2X(Y+1)" is accepted.
template <class K>
class Parser {
public:
    Parser(const std::string& s, const domain_t<K>& dom, const std::vector<std::string>& vars,
           const std::map<std::string, K>& constants)
        : s_(s), dom_(dom), vars_(vars), consts_(constants) {}

    SparsePoly<K> parse() {
        auto r = expr();
        skip();
        if (i_ != s_.size()) error("unexpected '" + std::string(1, s_[i_]) + "'");
        return r;
    }

private:
    [[noreturn]] void error(const std::string& m) const {
        fail(ErrorKind::ParseError, m + " at offset " + std::to_string(i_) + " in '" + s_ + "'");
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool peek(char c) {
        skip();
        return i_ < s_.size() && s_[i_] == c;
    }
    bool starts_factor() {
        skip();
        if (i_ >= s_.size()) return false;
        const char c = s_[i_];
        return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    SparsePoly<K> expr() {
        SparsePoly<K> acc(dom_, vars_);
        bool neg = false;
        if (peek('-')) {
            ++i_;
            neg = true;
        } else if (peek('+')) {
            ++i_;
        }
        auto t = term();
        acc = neg ? -t : t;
        while (true) {
            if (peek('+')) {
                ++i_;
                acc += term();
            } else if (peek('-')) {
                ++i_;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }
    SparsePoly<K> term() {
        auto acc = power();
        while (true) {
            if (peek('*')) {
                ++i_;
                acc = acc * power();
            } else if (starts_factor()) {
                acc = acc * power();
            } else {
                break;
            }
        }
        return acc;
    }
    SparsePoly<K> power() {
        auto b = atom();
        if (peek('^')) {
            ++i_;
            skip();
            const auto n = integer();
            b = b.pow(n);
        }
        return b;
    }
    std::uint64_t integer() {
        skip();
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) error("expected integer");
        std::uint64_t n = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) n = n * 10 + (s_[i_++] - '0');
        return n;
    }
    SparsePoly<K> atom() {
        skip();
        if (i_ >= s_.size()) error("unexpected end");
        const char c = s_[i_];
        if (c == '(') {
            ++i_;
            auto r = expr();
            if (!peek(')')) error("expected ')'");
            ++i_;
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const auto n = integer();
            return SparsePoly<K>::constant(dom_, vars_, dom_.from_int(static_cast<std::int64_t>(n)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string id;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) id += s_[i_++];
            auto it = consts_.find(id);
            if (it != consts_.end()) return SparsePoly<K>::constant(dom_, vars_, it->second);
            if (std::find(vars_.begin(), vars_.end(), id) == vars_.end()) error("unknown identifier '" + id + "'");
            return SparsePoly<K>::variable(dom_, vars_, id);
        }
        error("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    const domain_t<K>& dom_;
    const std::vector<std::string>& vars_;
    const std::map<std::string, K>& consts_;
    std::size_t i_ = 0;
};

}  // namespace detail

/// Parses an expression over the given variables; identifiers found in
/// constants denote coefficient-domain elements.
template <class K>
SparsePoly<K> parse_poly(const std::string& src, const domain_t<K>& dom, const std::vector<std::string>& vars,
                         const std::map<std::string, K>& constants = {}) {
    return detail::Parser<K>(src, dom, vars, constants).parse();
}

}  // namespace towerforge::poly

#endif  // TOWERFORGE_POLY_IO_HPP
