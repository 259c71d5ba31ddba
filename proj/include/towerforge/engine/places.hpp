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
 * @file places.hpp
 * @brief Place-level analysis of twisted towers in characteristic 2.
 *
 * A place of F_n is followed by the Laurent expansions of its generators in a
 * local parameter. After removing the backtrack root, each step is a quadratic
 * that normalizes to Z^2 + Z = g; the Artin-Schreier reduction of g decides
 * between two rational places, one ramified place, or one inert place.
 *
 * Value chains cannot see this: two places above the same point of a singular
 * model share their values, so chains merge where places do not.
 */

#ifndef TOWERFORGE_ENGINE_PLACES_HPP
#define TOWERFORGE_ENGINE_PLACES_HPP

#include <string>
#include <vector>

#include "towerforge/engine/engine.hpp"
#include "towerforge/engine/series.hpp"

namespace towerforge::engine {

/// Dense coefficients a[i][j] of X^i Y^j.
class Bivariate {
public:
    Bivariate(const Poly& p, const std::string& x, const std::string& y) : F_(p.domain().field) {
        const auto ix = p.index_of(x), iy = p.index_of(y);
        const long dx = p.degree(x), dy = p.degree(y);
        a_.assign(static_cast<std::size_t>(dx + 1), std::vector<gf::Element>(static_cast<std::size_t>(dy + 1), F_.zero()));
        for (const auto& [e, c] : p.terms()) {
            for (std::size_t k = 0; k < e.size(); ++k)
                if (k != ix && k != iy && e[k])
                    fail(ErrorKind::Usage, "bivariate view of a polynomial with other variables");
            a_[e[ix]][e[iy]] = a_[e[ix]][e[iy]] + c;
        }
    }

    long deg_x() const { return static_cast<long>(a_.size()) - 1; }
    long deg_y() const { return static_cast<long>(a_[0].size()) - 1; }

    Bivariate chart_x() const {
        Bivariate r = *this;
        std::reverse(r.a_.begin(), r.a_.end());
        return r;
    }
    Bivariate chart_y() const {
        Bivariate r = *this;
        for (auto& row : r.a_) std::reverse(row.begin(), row.end());
        return r;
    }
    Bivariate dx() const {
        Bivariate r = *this;
        for (std::size_t i = 0; i < a_.size(); ++i)
            for (auto& c : r.a_[i]) c = c * F_.from_int(static_cast<long>(i));
        if (r.a_.size() > 1) r.a_.erase(r.a_.begin());
        else for (auto& c : r.a_[0]) c = F_.zero();
        return r;
    }
    Bivariate dy() const {
        Bivariate r = *this;
        for (auto& row : r.a_) {
            for (std::size_t j = 0; j < row.size(); ++j) row[j] = row[j] * F_.from_int(static_cast<long>(j));
            if (row.size() > 1) row.erase(row.begin());
            else row[0] = F_.zero();
        }
        return r;
    }

    /// Coefficient of Y^j as a series in x.
    Series coeff_y(std::size_t j, const Series& x) const {
        Series acc(F_, Series::kExact);
        for (std::size_t i = a_.size(); i-- > 0;) acc = acc * x + Series::constant(F_, a_[i][j]);
        return acc;
    }
    std::vector<Series> coeffs_y(const Series& x) const {
        std::vector<Series> c;
        for (std::size_t j = 0; j < a_[0].size(); ++j) c.push_back(coeff_y(j, x));
        return c;
    }
    Series operator()(const Series& x, const Series& y) const { return horner(coeffs_y(x), y); }
    gf::Element at(const gf::Element& x, const gf::Element& y) const {
        gf::Element acc = F_.zero();
        for (std::size_t i = a_.size(); i-- > 0;) {
            gf::Element row = F_.zero();
            for (std::size_t j = a_[i].size(); j-- > 0;) row = row * y + a_[i][j];
            acc = acc * x + row;
        }
        return acc;
    }

private:
    gf::FieldSpec F_;
    std::vector<std::vector<gf::Element>> a_;
};

/// A place of F_n: expansions of u_0..u_n in its local parameter.
struct Place {
    std::vector<Series> u;
    std::uint32_t e = 1;  // ramification index over the base place
};

enum class StepOutcome { Split, Ramified, Inert };

inline std::string to_string(StepOutcome o) {
    switch (o) {
        case StepOutcome::Split: return "split";
        case StepOutcome::Ramified: return "ramified";
        case StepOutcome::Inert: return "inert";
    }
    return "?";
}

struct Extension {
    StepOutcome outcome = StepOutcome::Split;
    std::vector<Place> places;  // the two places above when split
};

/// Rational places above one start value, level by level.
struct PlaceCount {
    Value start;
    std::vector<std::uint64_t> places;    // index k: rational places of F_{k+1} reached through split steps
    std::vector<std::uint64_t> ramified;  // index k: ramified steps met at level k+1 (k >= 1)
    std::vector<std::uint64_t> inert;     // index k: inert steps met at level k+1
    bool split_completely = false;        // every step through level n split, level 1 included
    int precision = 0;                    // working precision that succeeded
};

class PlaceAnalyzer {
public:
    explicit PlaceAnalyzer(const Engine& eng) : eng_(eng), F_(eng.tower().field) {
        const auto& t = eng.tower();
        if (t.kind != TowerKind::TwistedDepth2) fail(ErrorKind::Usage, "place analysis is for twisted towers");
        if (F_.characteristic() != 2 || t.step_degree(2) != 2)
            fail(ErrorKind::Usage, "place analysis needs quadratic residual steps in characteristic 2");
    }

    /// Places of F_1 above a base value, at working precision n.
    std::vector<Place> first_level(const Value& b, int n) const {
        const Bivariate P(eng_.step(1).poly, "X", "Y");
        const Bivariate Q = b.inf ? P.chart_x() : P;
        const gf::Element x0 = b.inf ? F_.zero() : b.x;
        std::vector<Place> out;
        for (const auto& r : eng_.fiber(1, {b}).roots) {
            const Bivariate R = r.value.inf ? Q.chart_y() : Q;
            const gf::Element y0 = r.value.inf ? F_.zero() : r.value.x;
            Series X, Y;
            if (r.multiplicity == 1) {
                X = Series::constant(F_, x0, n) + Series::monomial(F_, F_.one(), 1, n);
                Y = newton(Series::constant(F_, y0, n), n, [&](const Series& y) { return R(X, y); },
                           [&, Ry = R.dy()](const Series& y) { return Ry(X, y); });
            } else {
                const Bivariate Rx = R.dx();
                if (Rx.at(x0, y0).is_zero())
                    fail(ErrorKind::InconsistentData, "singular point of the first step above " + label(b));
                // the root value is the better parameter here
                Y = Series::constant(F_, y0, n) + Series::monomial(F_, F_.one(), 1, n);
                X = newton(Series::constant(F_, x0, n), n, [&](const Series& x) { return R(x, Y); },
                           [&](const Series& x) { return Rx(x, Y); });
            }
            Place p;
            p.u = {b.inf ? X.inv() : X, r.value.inf ? Y.inv() : Y};
            p.e = static_cast<std::uint32_t>(r.multiplicity);
            out.push_back(std::move(p));
        }
        return out;
    }

    /// Places of F_level above a place of F_{level-1}.
    Extension extend(const Place& p, long level) const {
        const Bivariate S(eng_.step(level).poly, "X", "Y");
        const Bivariate B(eng_.backtrack_factor(level), "X", "Y");
        const Series& u2 = p.u[p.u.size() - 2];
        const Series& u1 = p.u.back();
        const auto c = S.coeffs_y(u1);
        const auto b = B.coeffs_y(u2);
        const Series r = b[0] * b[1].inv();  // characteristic 2: Y + r
        std::vector<Series> q(c.size() - 1);
        q.back() = c.back();
        for (std::size_t k = q.size() - 1; k-- > 0;) q[k] = c[k + 1] + q[k + 1] * r;
        const Series rem = c[0] + q[0] * r;
        if (rem.val()) fail(ErrorKind::BacktrackDivisionFails, "backtrack root is not a root at level " + std::to_string(level));
        const Series bq = q[1] * q[2].inv();
        const Series g = q[0] * q[2] * (q[1] * q[1]).inv();
        return artin_schreier(p, g, bq);
    }

    /// Counts through level n with precision retries (40 up to 640).
    PlaceCount count(const Value& start, long n) const {
        for (int prec = 40;; prec *= 2) {
            try {
                return count_at(start, n, prec);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::PrecisionExhausted || prec >= 640) throw;
            }
        }
    }

    bool splits_completely(const Value& start, long n) const {
        if (!eng_.fiber(1, {start}).split()) return false;
        return count(start, n).split_completely;
    }

    /// Start values whose every place splits completely through level n.
    std::vector<Value> splitting_locus(long n) const {
        std::vector<Value> out;
        for (const auto& v : projective_line(F_))
            if (splits_completely(v, n)) out.push_back(v);
        return out;
    }

private:
    template <class Fn, class Dn>
    Series newton(Series y, int n, Fn f, Dn df) const {
        for (int it = 0; it < 16; ++it) {
            const Series next = (y - f(y) * df(y).inv()).truncated(n);
            if (!(next - y).val()) return next;
            y = next;
        }
        fail(ErrorKind::PrecisionExhausted, "Newton iteration did not settle");
    }

    Extension artin_schreier(const Place& p, Series g, const Series& bq) const {
        const unsigned k = F_.degree();
        Series shift(F_, Series::kExact);
        for (;;) {
            const auto v = g.val();
            if (!v || *v >= 0) break;
            if (*v % 2 != 0) return {StepOutcome::Ramified, {}};
            const gf::Element c = g.coeff(*v);
            const Series m = Series::monomial(F_, c.pow(std::int64_t{1} << (k - 1)), *v / 2);
            g = g + Series::monomial(F_, c, *v) + m;
            shift = shift + m;
        }
        if (g.prec() <= 0) fail(ErrorKind::PrecisionExhausted, "Artin-Schreier constant term past known precision");
        const gf::Element g0 = g.coeff(0);
        if (!gf::absolute_trace(g0).is_zero()) return {StepOutcome::Inert, {}};
        const poly::FieldDomain D{F_};
        Extension ex;
        for (const auto& [z0, mult] : poly::roots_in_field(poly::GPoly(D, {g0, F_.one(), F_.one()}))) {
            (void)mult;
            std::vector<gf::Element> z(static_cast<std::size_t>(g.prec()), F_.zero());
            z[0] = z0;
            for (int i = 1; i < g.prec(); ++i) {
                z[static_cast<std::size_t>(i)] = g.coeff(i);
                if (i % 2 == 0) {
                    const auto& h = z[static_cast<std::size_t>(i / 2)];
                    z[static_cast<std::size_t>(i)] = z[static_cast<std::size_t>(i)] + h * h;
                }
            }
            Series zs(F_, g.prec());
            for (int i = 0; i < g.prec(); ++i) zs = zs + Series::monomial(F_, z[static_cast<std::size_t>(i)], i);
            Place child = p;
            child.u.push_back(bq * (zs + shift));
            ex.places.push_back(std::move(child));
        }
        return ex;
    }

    PlaceCount count_at(const Value& start, long n, int prec) const {
        PlaceCount pc;
        pc.start = start;
        pc.precision = prec;
        pc.places.assign(static_cast<std::size_t>(n), 0);
        pc.ramified.assign(static_cast<std::size_t>(n), 0);
        pc.inert.assign(static_cast<std::size_t>(n), 0);
        const auto fr = eng_.fiber(1, {start});
        bool all_split = fr.split();
        std::vector<Place> cur = first_level(start, prec);
        pc.places[0] = cur.size();
        for (long level = 2; level <= n; ++level) {
            std::vector<Place> next;
            for (const auto& p : cur) {
                auto ex = extend(p, level);
                switch (ex.outcome) {
                    case StepOutcome::Split:
                        for (auto& c : ex.places) next.push_back(std::move(c));
                        break;
                    case StepOutcome::Ramified:
                        ++pc.ramified[static_cast<std::size_t>(level - 1)];
                        all_split = false;
                        break;
                    case StepOutcome::Inert:
                        ++pc.inert[static_cast<std::size_t>(level - 1)];
                        all_split = false;
                        break;
                }
            }
            cur = std::move(next);
            pc.places[static_cast<std::size_t>(level - 1)] = cur.size();
        }
        pc.split_completely = all_split;
        return pc;
    }

    const Engine& eng_;
    gf::FieldSpec F_;
};

}  // namespace towerforge::engine

#endif  // TOWERFORGE_ENGINE_PLACES_HPP
