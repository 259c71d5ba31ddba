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
 * @file checks.hpp
 * @brief Named identity checks behind `towerforge verify`.
 */

#ifndef TOWERFORGE_CLI_CHECKS_HPP
#define TOWERFORGE_CLI_CHECKS_HPP

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "towerforge/catalog/verify.hpp"
#include "towerforge/data_dir.hpp"
#include "towerforge/poly/io.hpp"
#include "towerforge/skew/skew.hpp"

namespace towerforge::cli {

struct CheckOutcome {
    bool pass = false;
    std::string mode = "exact";
    std::string detail;
};

struct Check {
    std::string id;
    std::string group;   // acceptance grouping: identity, level5, drinfeld, elliptic, other
    std::string anchor;  // catalog entries or data files the check reads
    std::function<CheckOutcome()> run;
};

struct CheckResult {
    std::string id;
    std::string group;
    std::string anchor;
    CheckOutcome outcome;
    std::string error;  // set when the check raised
    double seconds = 0;
};

namespace detail {

inline CheckOutcome yes_no(bool b, std::string detail = "") { return {b, "exact", std::move(detail)}; }

inline const poly::FieldDomain& gf2() {
    static const poly::FieldDomain d{gf::make_field(2, 1)};
    return d;
}

inline skew::Poly parse_f2(const nlohmann::json& s, const std::vector<std::string>& vars) {
    return poly::parse_poly<gf::Element>(s.get<std::string>(), gf2(), vars);
}

inline CheckOutcome constraint_lists() {
    const auto gold = load_data_file("drinfeld_constraints.json");
    const auto vars = gold.at("variables").get<std::vector<std::string>>();
    const auto lists = skew::commutation_constraints(2);
    if (lists.curve.size() != gold.at("curve").size() || lists.commute.size() != gold.at("commute").size())
        return yes_no(false, "list lengths " + std::to_string(lists.curve.size()) + "/" +
                                 std::to_string(lists.commute.size()));
    for (std::size_t i = 0; i < lists.curve.size(); ++i)
        if (lists.curve[i] != parse_f2(gold.at("curve")[i], vars)) return yes_no(false, "curve entry " + std::to_string(i));
    for (std::size_t i = 0; i < lists.commute.size(); ++i)
        if (lists.commute[i] != parse_f2(gold.at("commute")[i], vars))
            return yes_no(false, "commute entry " + std::to_string(i));
    return yes_no(true, std::to_string(lists.curve.size()) + " + " + std::to_string(lists.commute.size()) + " polynomials");
}

inline CheckOutcome isogeny_lines() {
    const auto gold = load_data_file("drinfeld_isogeny.json").at("isogeny_system_T");
    const auto vars = gold.at("variables").get<std::vector<std::string>>();
    const auto eqs = skew::isogeny_system_T(2);
    if (eqs.size() != gold.at("lhs").size()) return yes_no(false, std::to_string(eqs.size()) + " lines");
    for (std::size_t i = 0; i < eqs.size(); ++i)
        if (eqs[i].lhs != parse_f2(gold.at("lhs")[i], vars) || eqs[i].rhs != parse_f2(gold.at("rhs")[i], vars))
            return yes_no(false, "line " + std::to_string(i + 1));
    return yes_no(true, std::to_string(eqs.size()) + " lines");
}

inline CheckOutcome elimination(const std::string& which) {
    const auto gold = load_data_file("drinfeld_isogeny.json").at(which);
    const auto vars = gold.at("variables").get<std::vector<std::string>>();
    const auto e = which == "eliminate_T" ? skew::eliminate_T(2) : skew::eliminate_S(2);
    return yes_no(e.normal_form == parse_f2(gold.at("normal_form"), vars));
}

inline CheckOutcome cross(const std::string& level) {
    const auto r = catalog::verify_cross_factorization(level);
    std::string d = "factor Y-degrees";
    for (auto k : r.factor_y_degrees) d += " " + std::to_string(k);
    return yes_no(r.pass(), d);
}

inline CheckOutcome degree(const std::vector<std::uint32_t>& n, long expected) {
    const auto r = catalog::verify_degree_formula(n);
    return yes_no(r.pass() && r.catalog_degree == expected,
                  "formula " + r.formula.to_string() + ", deg_Y " + std::to_string(r.catalog_degree));
}

}  // namespace detail

/// All checks in report order.
inline const std::vector<Check>& checks() {
    using detail::yes_no;
    namespace c = catalog;
    static const std::vector<Check> all = {
        {"symmetry-T", "identity", "phi_T", [] { return yes_no(c::verify_symmetry(c::Catalog::shipped().gf("phi_T"))); }},
        {"symmetry-T2T1", "identity", "phi_T2T1",
         [] { return yes_no(c::verify_symmetry(c::Catalog::shipped().gf("phi_T2T1"))); }},
        {"symmetry-T2T", "other", "phi_T2T", [] { return yes_no(c::verify_symmetry(c::Catalog::shipped().gf("phi_T2T"))); }},
        {"psi-T", "identity", "phi_T psi_T",
         [] {
             const auto r = c::extract_psi(c::Catalog::shipped().gf("phi_T"), c::Catalog::shipped().gf("psi_T"));
             return CheckOutcome{r.remainder_ok, r.mode, "deg_Z " + std::to_string(r.z_degree)};
         }},
        {"param-T", "identity", "phi_T j0_T j1_T", [] { return yes_no(c::verify_parameterization("T")); }},
        {"param-T2T1", "identity", "phi_T2T1 j0_T2T1 j1_T2T1", [] { return yes_no(c::verify_parameterization("T2T1")); }},
        {"param-T2T", "identity", "phi_T2T j0_T2T j1_T2T", [] { return yes_no(c::verify_parameterization("T2T")); }},
        {"cross-T", "identity", "cross_T fac_T_1", [] { return detail::cross("T"); }},
        {"cross-T2T1", "identity", "cross_T2T1 fac_T2T1_1 f_T2T1", [] { return detail::cross("T2T1"); }},
        {"cross-T2T", "identity", "fac_T2T_1 fac_T2T_2 fac_T2T_3 f_T2T", [] { return detail::cross("T2T"); }},
        {"reduction-T2T1-mod-T", "identity", "f_T2T1 f_T2T1_mod_T",
         [] { return yes_no(c::verify_reduction("T2T1", {0, 1})); }},
        {"reduction-T2T-mod-T2T1", "identity", "f_T2T f_T2T_mod_T2T1",
         [] { return yes_no(c::verify_reduction("T2T", {1, 1, 1})); }},
        {"degree-T", "identity", "phi_T", [] { return detail::degree({0, 1}, 3); }},
        {"degree-T2T1", "identity", "phi_T2T1", [] { return detail::degree({1, 1, 1}, 5); }},
        {"degree-T2T", "identity", "phi_T2T", [] { return detail::degree({0, 1, 1}, 9); }},
        {"dihedral", "level5", "P5",
         [] { return yes_no(c::verify_dihedral() && !c::verify_dihedral(true), "perturbed control rejected"); }},
        {"rr-lift", "level5", "P5 R_num R_den",
         [] { return yes_no(c::verify_rr_lift().pass() && !c::verify_rr_lift(true).pass(), "perturbed control rejected"); }},
        {"scaling", "level5", "loetter_orig_num loetter_orig_den loetter_num loetter_den",
         [] {
             return yes_no(c::verify_scaling_equivalence(3) && !c::verify_scaling_equivalence(2),
                           "scale 2 control rejected");
         }},
        {"level5-form", "other", "elkies5 P5", [] { return yes_no(c::verify_level5_form()); }},
        {"scaling-roots", "other", "loetter_num loetter_den", [] { return yes_no(c::verify_scaling_roots()); }},
        {"uniformizer", "other", "u0_reduced_num u0_reduced_den",
         [] { return yes_no(c::verify_reduced_uniformizer(0) && c::verify_reduced_uniformizer(1)); }},
        {"constraints", "drinfeld-lists", "drinfeld_constraints.json", [] { return detail::constraint_lists(); }},
        {"p3-identity", "drinfeld-lists", "drinfeld_constraints.json",
         [] {
             bool ok = true;
             std::string d;
             for (const auto& r : skew::simplify_p3_identity()) {
                 ok = ok && r.pass;
                 if (!r.pass) d += r.name + "; ";
             }
             return yes_no(ok, d);
         }},
        {"eliminate-T", "drinfeld-elim", "drinfeld_isogeny.json", [] { return detail::elimination("eliminate_T"); }},
        {"eliminate-S", "drinfeld-elim", "drinfeld_isogeny.json", [] { return detail::elimination("eliminate_S"); }},
        {"isogeny-system-T", "drinfeld-elim", "drinfeld_isogeny.json", [] { return detail::isogeny_lines(); }},
        {"elliptic-level2", "elliptic", "phi_ell backtrack_ell",
         [] {
             const auto r = c::verify_level2_factor();
             return yes_no(r.divides && r.quadratic_irreducible, std::string("divides ") + (r.divides ? "yes" : "no") +
                                                                     ", quadratic irreducible " +
                                                                     (r.quadratic_irreducible ? "yes" : "no"));
         }},
    };
    return all;
}

inline CheckResult run_check(const Check& c) {
    CheckResult r{c.id, c.group, c.anchor, {}, "", 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        r.outcome = c.run();
    } catch (const Error& e) {
        r.outcome.pass = false;
        r.error = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

/// Runs one check by id, or every check for "all"; NotInCatalog for an unknown id.
inline std::vector<CheckResult> run_checks(const std::string& which) {
    std::vector<CheckResult> out;
    for (const auto& c : checks())
        if (which == "all" || c.id == which || c.group == which) out.push_back(run_check(c));
    if (out.empty()) fail(ErrorKind::NotInCatalog, "no check '" + which + "'");
    return out;
}

}  // namespace towerforge::cli

#endif  // TOWERFORGE_CLI_CHECKS_HPP
