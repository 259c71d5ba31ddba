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
 * @file engine.hpp
 * @brief Value-level tower evaluation: fibers, chains, loci and the oracle.
 *
 * Values live on the projective line over the constant field. A context value
 * at infinity is handled by the chart X -> 1/X of its variable; roots at
 * infinity of the new variable show up as the gap between the generic and
 * the specialized degree.
 */

#ifndef TOWERFORGE_ENGINE_ENGINE_HPP
#define TOWERFORGE_ENGINE_ENGINE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "towerforge/engine/tower.hpp"
#include "towerforge/error.hpp"
#include "towerforge/poly/roots.hpp"
#include "towerforge/poly/upoly.hpp"

namespace towerforge::engine {

/// A point of the projective line over the constant field.
struct Value {
    bool inf = false;
    gf::Element x;

    static Value at(const gf::Element& v) { return {false, v}; }
    static Value infinity() { return {true, {}}; }

    friend bool operator==(const Value& a, const Value& b) { return a.inf == b.inf && (a.inf || a.x == b.x); }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
    friend bool operator<(const Value& a, const Value& b) {
        if (a.inf != b.inf) return b.inf;
        return !a.inf && a.x.packed() < b.x.packed();
    }
};

/// "0", "g^k" (k the discrete log to the field's generator) or "inf".
inline std::string label(const Value& v) {
    if (v.inf) return "inf";
    if (v.x.is_zero()) return "0";
    return "g^" + std::to_string(gf::discrete_log(v.x));
}

inline Value parse_label(const std::string& s, const gf::FieldSpec& F) {
    if (s == "inf") return Value::infinity();
    if (s == "0") return Value::at(F.zero());
    if (s.rfind("g^", 0) == 0) {
        try {
            return Value::at(gf::primitive_element(F).pow(std::stoll(s.substr(2))));
        } catch (const std::logic_error&) {
        }
    }
    fail(ErrorKind::Usage, "bad field value '" + s + "' (use 0, g^k or inf)");
}

/// All of P^1(F): field elements in enumerate order, then infinity.
inline std::vector<Value> projective_line(const gf::FieldSpec& F) {
    std::vector<Value> out;
    for (const auto& x : gf::enumerate(F)) out.push_back(Value::at(x));
    out.push_back(Value::infinity());
    return out;
}

struct Root {
    Value value;
    int multiplicity = 1;
};

struct FiberReport {
    std::vector<Value> context;  // previous one or two values
    long degree = 0;             // generic degree of the step in its new variable
    std::vector<Root> roots;     // sorted by value
    long degree_drop = 0;        // degree - sum of multiplicities
    std::optional<Value> excluded;  // backtrack root removed from this fiber

    bool split() const {
        return degree_drop == 0 && static_cast<long>(roots.size()) == degree &&
               std::all_of(roots.begin(), roots.end(), [](const Root& r) { return r.multiplicity == 1; });
    }
    bool ramified() const {
        return std::any_of(roots.begin(), roots.end(), [](const Root& r) { return r.multiplicity > 1; });
    }
};

struct Chain {
    std::vector<Value> values;     // u_0 .. u_n
    std::vector<int> step_mults;  // multiplicity of u_i in its fiber, i >= 1
    bool affine() const {
        return std::none_of(values.begin(), values.end(), [](const Value& v) { return v.inf; });
    }
};

// ---------------------------------------------------------------- infinity charts

/// var^(deg_var p) * p(..., 1/var, ...).
inline Poly infinity_transform(const Poly& p, const std::string& var) {
    if (p.is_zero()) fail(ErrorKind::ZeroPolynomial, "chart of the zero polynomial");
    const long d = p.degree(var);
    const auto i = p.index_of(var);
    Poly r(p.domain(), p.vars());
    for (const auto& [e, c] : p.terms()) {
        poly::Exps ne = e;
        ne[i] = static_cast<std::uint32_t>(d) - e[i];
        r.add_term(ne, c);
    }
    return r;
}

struct Charts {
    Poly x_chart;  // X -> 1/X
    Poly y_chart;  // Y -> 1/Y
};

inline Charts infinity_charts(const Poly& step, const std::string& x = "X", const std::string& y = "Y") {
    return {infinity_transform(step, x), infinity_transform(step, y)};
}

// ---------------------------------------------------------------- steps

namespace detail {

/// Step polynomial in context variables plus one new variable.
struct Step {
    Poly poly;
    std::vector<std::string> ctx;  // names bound to the context values, in order
    std::string var;               // the new variable
    long degree = 0;
};

/// Univariate specialization in the new variable; infinite context values use charts.
inline poly::GPoly specialize(const Step& s, const std::vector<Value>& ctx) {
    Poly p = s.poly;
    std::map<std::string, gf::Element> at;
    for (std::size_t i = 0; i < s.ctx.size(); ++i) {
        if (ctx[i].inf) {
            p = infinity_transform(p, s.ctx[i]);
            at[s.ctx[i]] = p.domain().zero();
        } else {
            at[s.ctx[i]] = ctx[i].x;
        }
    }
    const poly::FieldDomain& D = p.domain();
    std::vector<gf::Element> c(static_cast<std::size_t>(s.degree + 1), D.zero());
    const auto iv = p.index_of(s.var);
    std::vector<std::pair<std::size_t, gf::Element>> bound;
    for (const auto& [v, x] : at) bound.emplace_back(p.index_of(v), x);
    for (const auto& [e, coef] : p.terms()) {
        gf::Element t = coef;
        for (const auto& [i, x] : bound)
            if (e[i]) t = t * x.pow(e[i]);
        c[e[iv]] = c[e[iv]] + t;
    }
    return poly::GPoly(D, c);
}

inline std::vector<Root> roots_with_infinity(const poly::GPoly& u, long degree) {
    std::vector<Root> out;
    for (const auto& [r, m] : poly::roots_in_field(u)) out.push_back({Value::at(r), m});
    if (u.degree() < degree) out.push_back({Value::infinity(), static_cast<int>(degree - u.degree())});
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return a.value < b.value; });
    return out;
}

}  // namespace detail

/// Evaluates one tower. Step data and certified backtrack factors are cached.
class Engine {
public:
    explicit Engine(TowerDef t, std::uint64_t seed = 20260101) : t_(std::move(t)), seed_(seed) {}

    const TowerDef& tower() const { return t_; }
    std::uint64_t seed() const { return seed_; }

    /// Number of previous values a step of this level reads.
    std::size_t context_size(long level) const { return level == 1 || t_.kind == TowerKind::Depth1 ? 1 : 2; }

    const detail::Step& step(long level) const {
        std::lock_guard<std::mutex> lock(*mu_);
        const long key = step_key(level);
        auto it = steps_.find(key);
        if (it != steps_.end()) return it->second;
        detail::Step s;
        switch (t_.kind) {
            case TowerKind::Depth1:
                s = {t_.f, {"X"}, "Y", t_.f.degree("Y")};
                break;
            case TowerKind::Depth2:
                if (level == 1) s = {t_.phi, {"X"}, "Y", t_.phi.degree("Y")};
                else s = {t_.psi, {"X", "Y"}, "Z", t_.psi.degree("Z")};
                break;
            case TowerKind::TwistedDepth2: {
                const Poly p = t_.phi.partial_evaluate({{"alpha", t_.twist(level)}}).with_vars({"X", "Y"});
                s = {p, {"X"}, "Y", p.degree("Y")};
                break;
            }
        }
        return steps_.emplace(key, std::move(s)).first->second;
    }

    /// The level-n linear factor in (X = u_{n-2}, Y = u_n) for a twisted tower,
    /// certified by exact division at 16 sampled chain contexts.
    const Poly& backtrack_factor(long level) const {
        if (t_.kind != TowerKind::TwistedDepth2) fail(ErrorKind::Usage, "backtrack factors exist only for twisted towers");
        if (level < 2) fail(ErrorKind::Usage, "backtrack factor needs level >= 2");
        {
            std::lock_guard<std::mutex> lock(*mu_);
            auto it = backtrack_.find(step_key(level));
            if (it != backtrack_.end()) return it->second;
        }
        Poly b = t_.backtrack.partial_evaluate({{"alpha", t_.twist(level - 1)}}).with_vars({"X", "Y"});
        certify_backtrack(level, b);
        std::lock_guard<std::mutex> lock(*mu_);
        return backtrack_.emplace(step_key(level), std::move(b)).first->second;
    }

    /// Certifies a candidate factor; BacktrackDivisionFails on any nonzero remainder.
    void certify_backtrack(long level, const Poly& b) const {
        std::mt19937_64 rng(seed_ + static_cast<std::uint64_t>(level));
        const auto all = gf::enumerate(t_.field);
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        int ok = 0;
        for (int attempt = 0; attempt < 20000 && ok < 16; ++attempt) {
            const Value u2 = Value::at(all[pick(rng)]);
            const auto prev = detail::roots_with_infinity(detail::specialize(step(level - 1), {u2}), step(level - 1).degree);
            std::vector<Value> finite;
            for (const auto& r : prev)
                if (!r.value.inf) finite.push_back(r.value);
            if (finite.empty()) continue;
            const Value u1 = finite[std::uniform_int_distribution<std::size_t>(0, finite.size() - 1)(rng)];
            const auto lin = detail::specialize({b, {"X"}, "Y", 1}, {u2});
            if (lin.degree() != 1) continue;
            const auto cubic = detail::specialize(step(level), {u1});
            if (!(cubic % lin).is_zero())
                fail(ErrorKind::BacktrackDivisionFails,
                     "level " + std::to_string(level) + " factor leaves a remainder at u = (" + label(u2) + ", " +
                         label(u1) + ")");
            ++ok;
        }
        if (ok < 16) fail(ErrorKind::BacktrackDivisionFails, "fewer than 16 usable contexts at level " + std::to_string(level));
    }

    /// Roots of the level-n step over the given context (one or two previous values).
    FiberReport fiber(long level, const std::vector<Value>& context) const {
        if (level < 1) fail(ErrorKind::Usage, "fiber level must be >= 1");
        const std::size_t need = context_size(level);
        if (context.size() < need) fail(ErrorKind::Usage, "fiber needs " + std::to_string(need) + " context values");
        const std::vector<Value> ctx(context.end() - static_cast<long>(need), context.end());
        FiberReport r;
        r.context = ctx;
        const auto& s = step(level);
        std::vector<Value> bind = ctx;
        if (t_.kind == TowerKind::TwistedDepth2 && level >= 2) bind = {ctx[1]};
        const auto u = detail::specialize(s, bind);
        if (u.is_zero())
            fail(ErrorKind::LeadingVanishes, "step " + std::to_string(level) + " vanishes identically at this context");
        r.degree = s.degree;
        r.roots = detail::roots_with_infinity(u, s.degree);
        if (t_.kind == TowerKind::TwistedDepth2 && level >= 2) remove_backtrack(level, ctx[0], u, r);
        long sum = 0;
        for (const auto& x : r.roots) sum += x.multiplicity;
        r.degree_drop = r.degree - sum;
        return r;
    }

    /// Breadth-first chains u_0..u_n above the given starts (default: all of P^1).
    std::vector<Chain> enumerate_chains(long n, const std::optional<std::vector<Value>>& starts = std::nullopt) const {
        std::vector<Chain> cur;
        for (const auto& v : starts ? *starts : projective_line(t_.field)) cur.push_back({{v}, {}});
        for (long level = 1; level <= n; ++level) {
            std::vector<Chain> next;
            for (const auto& c : cur) {
                const auto fr = fiber(level, c.values);
                for (const auto& r : fr.roots) {
                    Chain e = c;
                    e.values.push_back(r.value);
                    e.step_mults.push_back(r.multiplicity);
                    next.push_back(std::move(e));
                }
            }
            cur = std::move(next);
        }
        return cur;
    }

    /// Nested-loop count of affine tuples satisfying every step relation, by
    /// evaluation at all field elements (no root finding).
    std::uint64_t oracle_count(long n) const {
        const double size = std::pow(static_cast<double>(t_.field.order()), static_cast<double>(n + 1));
        if (size > 1e8) fail(ErrorKind::SizeExceeded, "oracle needs |F|^(n+1) <= 10^8");
        const auto all = gf::enumerate(t_.field);
        std::vector<gf::Element> tuple;
        std::uint64_t count = 0;
        std::function<void(long)> rec = [&](long level) {
            if (level > n) {
                ++count;
                return;
            }
            std::vector<Value> ctx;
            for (auto it = tuple.end() - static_cast<long>(std::min(tuple.size(), context_size(level))); it != tuple.end(); ++it)
                ctx.push_back(Value::at(*it));
            std::vector<Value> bind = ctx;
            if (t_.kind == TowerKind::TwistedDepth2 && level >= 2) bind = {ctx[1]};
            const auto u = detail::specialize(step(level), bind);
            std::optional<poly::GPoly> lin;
            poly::GPoly du = u.derivative();
            if (t_.kind == TowerKind::TwistedDepth2 && level >= 2)
                lin = detail::specialize({raw_backtrack(level), {"X"}, "Y", 1}, {ctx[0]});
            for (const auto& y : all) {
                if (!u(y).is_zero()) continue;
                // the backtrack root is excluded unless it is a repeated root
                if (lin && lin->degree() >= 0 && (*lin)(y).is_zero() && !du(y).is_zero()) continue;
                tuple.push_back(y);
                rec(level + 1);
                tuple.pop_back();
            }
        };
        for (const auto& x : all) {
            tuple = {x};
            rec(1);
        }
        return count;
    }

    /// Starts whose whole chain tree splits completely through depth n.
    std::vector<Value> splitting_locus_values(long n) const {
        std::vector<Value> out;
        for (const auto& v : projective_line(t_.field))
            if (splits_to(v, n)) out.push_back(v);
        return out;
    }

    bool splits_to(const Value& start, long n) const {
        std::vector<std::vector<Value>> cur = {{start}};
        for (long level = 1; level <= n; ++level) {
            std::vector<std::vector<Value>> next;
            for (const auto& c : cur) {
                FiberReport fr;
                try {
                    fr = fiber(level, c);
                } catch (const Error& e) {
                    if (e.kind() == ErrorKind::LeadingVanishes) return false;
                    throw;
                }
                if (!fr.split()) return false;
                for (const auto& r : fr.roots) {
                    auto e = c;
                    e.push_back(r.value);
                    next.push_back(std::move(e));
                }
            }
            cur = std::move(next);
        }
        return true;
    }

    struct RamificationEntry {
        Value base;
        long level;
        FiberReport fiber;
        std::string anomaly;  // set when the step vanished identically
    };

    /// Contexts in the chain trees above the starts (default: all of P^1),
    /// through depth n, whose fiber has a repeated root (at infinity included)
    /// or vanishes identically.
    std::vector<RamificationEntry> ramification_locus(long n,
                                                      const std::optional<std::vector<Value>>& starts = std::nullopt) const {
        std::vector<RamificationEntry> out;
        for (const auto& start : starts ? *starts : projective_line(t_.field)) {
            std::vector<std::vector<Value>> cur = {{start}};
            for (long level = 1; level <= n; ++level) {
                std::vector<std::vector<Value>> next;
                for (const auto& c : cur) {
                    FiberReport fr;
                    try {
                        fr = fiber(level, c);
                    } catch (const Error& e) {
                        if (e.kind() != ErrorKind::LeadingVanishes) throw;
                        RamificationEntry re{start, level, {}, e.what()};
                        re.fiber.context = c;
                        out.push_back(std::move(re));
                        continue;
                    }
                    if (fr.ramified()) out.push_back({start, level, fr, ""});
                    for (const auto& r : fr.roots) {
                        auto e = c;
                        e.push_back(r.value);
                        next.push_back(std::move(e));
                    }
                }
                cur = std::move(next);
            }
        }
        return out;
    }

private:
    long step_key(long level) const {
        if (t_.kind != TowerKind::TwistedDepth2) return level == 1 ? 1 : 2;
        return static_cast<long>(t_.twist(level).packed()) * 4 + (level == 1 ? 1 : 2);
    }

    Poly raw_backtrack(long level) const { return backtrack_factor(level); }

    void remove_backtrack(long level, const Value& u2, const poly::GPoly& u, FiberReport& r) const {
        const auto lin = detail::specialize({backtrack_factor(level), {"X"}, "Y", 1}, {u2});
        if (lin.is_zero()) fail(ErrorKind::LeadingVanishes, "backtrack factor vanishes at u = " + label(u2));
        const Value b = lin.degree() == 1 ? Value::at(-lin.coeff(0) * lin.coeff(1).inv()) : Value::infinity();
        auto it = std::find_if(r.roots.begin(), r.roots.end(), [&](const Root& x) { return x.value == b; });
        if (it == r.roots.end())
            fail(ErrorKind::BacktrackDivisionFails, "backtrack root " + label(b) + " is not in the level " +
                                                        std::to_string(level) + " fiber");
        (void)u;
        r.excluded = b;
        r.degree -= 1;
        if (--it->multiplicity == 0) r.roots.erase(it);
    }

    TowerDef t_;
    std::uint64_t seed_;
    std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
    mutable std::map<long, detail::Step> steps_;
    mutable std::map<long, Poly> backtrack_;
};

}  // namespace towerforge::engine

#endif  // TOWERFORGE_ENGINE_ENGINE_HPP
