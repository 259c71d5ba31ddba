// Copyright 2026 The towerforge Authors
// SPDX-License-Identifier: Apache-2.0

// towerforge: catalog verification and tower analysis from the command line.
// Exit codes: 0 ok, 2 usage, 3 data, 4 verification failed, 5 backtrack
// factor failed to certify.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "towerforge/cli/acceptance.hpp"
#include "towerforge/cli/checks.hpp"
#include "towerforge/engine/genus.hpp"
#include "towerforge/poly/io.hpp"
#include "towerforge/skew/skew.hpp"

namespace {

using namespace towerforge;
using nlohmann::json;

constexpr int kUsage = 2, kData = 3, kFailed = 4, kConjecture = 5;

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Usage:
        case ErrorKind::SizeExceeded:
        case ErrorKind::BadPower:
            return kUsage;
        case ErrorKind::SchemaError:
        case ErrorKind::FieldError:
        case ErrorKind::DegreeZeroStep:
        case ErrorKind::NotInCatalog:
        case ErrorKind::ParseError:
        case ErrorKind::InconsistentData:
        case ErrorKind::NoGenusRecipe:
            return kData;
        case ErrorKind::BacktrackDivisionFails:
            return kConjecture;
        default:
            return kFailed;
    }
}

enum class Format { Text, Json, Csv };

Format pick_format(bool as_json, bool as_csv) {
    if (as_json && as_csv) fail(ErrorKind::Usage, "choose one of --json and --csv");
    return as_json ? Format::Json : as_csv ? Format::Csv : Format::Text;
}

// ---------------------------------------------------------------- towers list

int towers_list(bool as_json) {
    json rows = json::array();
    for (const auto& id : engine::shipped_tower_ids()) {
        const auto t = engine::load_tower(id);
        rows.push_back({{"id", id},
                        {"kind", engine::to_string(t.kind)},
                        {"field_order", t.field.order()},
                        {"step_degrees", {t.step_degree(1), t.step_degree(2)}},
                        {"genus_recipe", t.genus.has_value()},
                        {"notes", t.notes}});
    }
    if (as_json) {
        std::cout << json{{"schema", "towerforge.towers/1"}, {"towers", rows}}.dump(2) << "\n";
        return 0;
    }
    for (const auto& r : rows)
        std::cout << r["id"].get<std::string>() << "  " << r["kind"].get<std::string>() << "  F_"
                  << r["field_order"].get<std::uint64_t>() << "  " << r["notes"].get<std::string>() << "\n";
    return 0;
}

// ---------------------------------------------------------------- verify

int verify(const std::string& which, bool as_json, bool timings) {
    const auto results = cli::run_checks(which);
    bool ok = true;
    json rows = json::array();
    for (const auto& r : results) {
        ok = ok && r.outcome.pass;
        json row = {{"id", r.id},
                    {"anchor", r.anchor},
                    {"pass", r.outcome.pass},
                    {"mode", r.outcome.mode},
                    {"detail", r.outcome.detail}};
        if (!r.error.empty()) row["error"] = r.error;
        if (timings) row["seconds"] = r.seconds;
        rows.push_back(row);
    }
    if (as_json) {
        std::cout << json{{"schema", "towerforge.verify/1"}, {"checks", rows}, {"pass", ok}}.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            std::cout << (r.outcome.pass ? "PASS  " : "FAIL  ") << r.id << "  (" << r.outcome.mode << ")";
            if (!r.outcome.detail.empty()) std::cout << "  " << r.outcome.detail;
            if (!r.error.empty()) std::cout << "  " << r.error;
            std::cout << "\n";
        }
    }
    return ok ? 0 : kFailed;
}

// ---------------------------------------------------------------- analyze

std::vector<engine::Value> parse_starts(const engine::Engine& eng, const std::string& s) {
    if (s == "all") return engine::projective_line(eng.tower().field);
    if (s == "split") return engine::split_starts(eng);
    std::vector<engine::Value> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(engine::parse_label(item, eng.tower().field));
    return out;
}

json labels(const std::vector<engine::Value>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(engine::label(v));
    return a;
}

json fiber_json(const engine::FiberReport& f) {
    json roots = json::array();
    for (const auto& r : f.roots) roots.push_back({{"value", engine::label(r.value)}, {"multiplicity", r.multiplicity}});
    json j = {{"context", labels(f.context)}, {"roots", roots}, {"degree_drop", f.degree_drop}};
    if (f.excluded) j["excluded"] = engine::label(*f.excluded);
    return j;
}

int analyze(const std::string& id, long levels, const std::string& starts_sel, Format fmt, std::uint64_t seed) {
    if (levels < 1) fail(ErrorKind::Usage, "--levels must be >= 1");
    const engine::Engine eng(engine::load_tower(id), seed);
    const auto& t = eng.tower();
    const auto starts = parse_starts(eng, starts_sel);

    std::vector<std::uint64_t> chains(static_cast<std::size_t>(levels));
    for (long k = 1; k <= levels; ++k) chains[static_cast<std::size_t>(k - 1)] = eng.enumerate_chains(k, starts).size();
    const auto split = engine::split_chain_counts(eng, levels, starts);

    std::vector<engine::Value> locus;
    if (t.kind == engine::TowerKind::TwistedDepth2) locus = engine::PlaceAnalyzer(eng).splitting_locus(levels);
    else locus = eng.splitting_locus_values(levels);

    json ram = json::array();
    for (const auto& r : eng.ramification_locus(levels, starts)) {
        json e = {{"base", engine::label(r.base)}, {"level", r.level}, {"fiber", fiber_json(r.fiber)}};
        if (!r.anomaly.empty()) e["anomaly"] = r.anomaly;
        ram.push_back(e);
    }

    std::vector<engine::LimitRow> rows;
    if (t.genus) rows = engine::limit_report(eng, levels);

    json per_level = json::array();
    for (long k = 1; k <= levels; ++k) {
        json row = {{"level", k}, {"chains", chains[static_cast<std::size_t>(k - 1)]},
                    {"split_chains", split[static_cast<std::size_t>(k - 1)]}};
        if (!rows.empty()) {
            const auto& r = rows[static_cast<std::size_t>(k - 1)];
            row["places_lower"] = r.places_lower;
            row["genus_upper"] = r.genus_upper;
            row["genus_upper_two_bounded"] = r.genus_upper_sharp;
            if (r.genus_exact) row["genus_exact"] = *r.genus_exact;
            row["ratio"] = r.ratio.to_string();
        }
        per_level.push_back(row);
    }

    json report = {{"schema", "towerforge.analyze/1"},
                   {"config", {{"tower", t.id}, {"levels", levels}, {"starts", starts_sel}, {"seed", seed}}},
                   {"tower", t.id},
                   {"level", levels},
                   {"chains", chains.back()},
                   {"split_chains", split.back()},
                   {"counts_are_lower_bounds", true},
                   {"splitting_locus", labels(locus)},
                   {"ramification", ram},
                   {"levels", per_level},
                   {"dv_bound", t.dv_bound()}};
    if (!rows.empty()) {
        report["genus_upper"] = rows.back().genus_upper;
        report["places_lower"] = rows.back().places_lower;
        report["ratio"] = rows.back().ratio.to_string();
    } else {
        report["genus_upper"] = nullptr;
        report["places_lower"] = nullptr;
        report["ratio"] = nullptr;
    }

    switch (fmt) {
        case Format::Json:
            std::cout << report.dump(2) << "\n";
            break;
        case Format::Csv:
            std::cout << "tower,level,chains,split_chains,places_lower,genus_upper,ratio,dv_bound\n";
            for (const auto& r : per_level)
                std::cout << t.id << "," << r["level"] << "," << r["chains"] << "," << r["split_chains"] << ","
                          << (r.contains("places_lower") ? r["places_lower"].dump() : "") << ","
                          << (r.contains("genus_upper") ? r["genus_upper"].dump() : "") << ","
                          << (r.contains("ratio") ? r["ratio"].get<std::string>() : "") << "," << t.dv_bound() << "\n";
            break;
        case Format::Text:
            std::cout << t.id << " (" << engine::to_string(t.kind) << " over F_" << t.field.order() << "), "
                      << starts.size() << " starts\n";
            for (const auto& r : per_level) {
                std::cout << "  level " << r["level"] << ": chains " << r["chains"] << ", split " << r["split_chains"];
                if (r.contains("genus_upper"))
                    std::cout << ", places >= " << r["places_lower"] << ", genus <= " << r["genus_upper"] << ", ratio "
                              << r["ratio"].get<std::string>();
                std::cout << "\n";
            }
            std::cout << "  splitting locus (" << locus.size() << "):";
            for (const auto& v : locus) std::cout << " " << engine::label(v);
            std::cout << "\n  ramified contexts: " << ram.size() << "\n  DV bound: " << t.dv_bound() << "\n";
            break;
    }
    return 0;
}

// ---------------------------------------------------------------- count

int count(const std::string& id, long levels, bool oracle, bool as_json) {
    if (levels < 1) fail(ErrorKind::Usage, "--levels must be >= 1");
    const engine::Engine eng(engine::load_tower(id));
    std::uint64_t affine = 0, all = 0;
    for (const auto& c : eng.enumerate_chains(levels)) {
        ++all;
        if (c.affine()) ++affine;
    }
    json j = {{"tower", id}, {"level", levels}, {"chains", all}, {"affine_chains", affine}};
    bool ok = true;
    if (oracle) {
        const auto o = eng.oracle_count(levels);
        j["oracle"] = o;
        ok = o == affine;
        j["match"] = ok;
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << id << " level " << levels << ": " << all << " chains, " << affine << " affine";
        if (oracle) std::cout << ", oracle " << j["oracle"] << (ok ? " (match)" : " (MISMATCH)");
        std::cout << "\n";
    }
    return ok ? 0 : kFailed;
}

// ---------------------------------------------------------------- isogeny-derive

int isogeny_derive(std::uint64_t q, const std::string& emit) {
    const auto lists = skew::commutation_constraints(q);
    const auto sys_t = skew::isogeny_system_T(q);
    const auto et = skew::eliminate_T(q);
    const auto es = skew::eliminate_S(q);
    auto text = [](const skew::Poly& p) {
        std::ostringstream os;
        os << p;
        return os.str();
    };
    if (emit == "json") {
        json curve = json::array(), commute = json::array(), sys = json::array();
        for (const auto& p : lists.curve) curve.push_back(poly::poly_to_json(p));
        for (const auto& p : lists.commute) commute.push_back(poly::poly_to_json(p));
        for (const auto& e : sys_t) sys.push_back({{"lhs", poly::poly_to_json(e.lhs)}, {"rhs", poly::poly_to_json(e.rhs)}});
        std::cout << json{{"schema", "towerforge.isogeny/1"},
                          {"q", q},
                          {"curve", curve},
                          {"commute", commute},
                          {"isogeny_system_T", sys},
                          {"eliminate_T", poly::poly_to_json(et.normal_form)},
                          {"eliminate_S", poly::poly_to_json(es.normal_form)}}
                         .dump(2)
                  << "\n";
        return 0;
    }
    if (emit != "text") fail(ErrorKind::Usage, "--emit must be json or text");
    std::cout << "curve constraints:\n";
    for (const auto& p : lists.curve) std::cout << "  " << text(p) << "\n";
    std::cout << "commutation constraints:\n";
    for (const auto& p : lists.commute) std::cout << "  " << text(p) << "\n";
    std::cout << "isogeny system for T:\n";
    for (const auto& e : sys_t) std::cout << "  " << text(e.lhs) << " = " << text(e.rhs) << "\n";
    std::cout << "eliminated (T): " << text(et.normal_form) << " = 0\n";
    std::cout << "eliminated (S): " << text(es.normal_form) << " = 0\n";
    return 0;
}

// ---------------------------------------------------------------- acceptance

int acceptance(int only, std::uint64_t seed) {
    if (only < 0 || only > 9) fail(ErrorKind::Usage, "--criterion must be 1..9");
    bool ok = true;
    for (const auto& c : cli::run_acceptance(seed, only)) {
        std::cout << cli::format_line(c) << std::endl;
        ok = ok && c.pass;
    }
    return ok ? 0 : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"towerforge: recursive towers of function fields over finite fields"};
    app.require_subcommand(1);

    auto* towers = app.add_subcommand("towers", "shipped tower definitions");
    auto* towers_ls = towers->add_subcommand("list", "list shipped towers");
    towers->require_subcommand(1);
    bool json_out = false, csv_out = false, timings = false, oracle = false;
    towers_ls->add_flag("--json", json_out, "JSON output");

    auto* ver = app.add_subcommand("verify", "run catalog identity checks");
    std::string check = "all";
    ver->add_option("check", check, "check id, group or 'all'")->required();
    ver->add_flag("--json", json_out, "JSON report");
    ver->add_flag("--timings", timings, "include per-check timings");

    auto* an = app.add_subcommand("analyze", "chains, loci, genus bounds and limit report");
    std::string tower, starts = "all";
    long levels = 1;
    std::uint64_t seed = cli::kDefaultSeed;
    an->add_option("tower", tower, "tower id or definition file")->required();
    an->add_option("--levels", levels, "depth")->required();
    an->add_option("--starts", starts, "all, split, or comma-separated values (0, g^k, inf)");
    an->add_flag("--json", json_out, "JSON report");
    an->add_flag("--csv", csv_out, "CSV rows per level");
    an->add_option("--seed", seed, "seed for sampled certification");

    auto* cnt = app.add_subcommand("count", "count chains, optionally against the nested-loop oracle");
    cnt->add_option("tower", tower, "tower id or definition file")->required();
    cnt->add_option("--levels", levels, "depth")->required();
    cnt->add_flag("--oracle", oracle, "compare with the oracle");
    cnt->add_flag("--json", json_out, "JSON output");

    auto* iso = app.add_subcommand("isogeny-derive", "derive the Drinfeld constraint lists and eliminations");
    std::uint64_t q = 2;
    std::string emit = "text";
    iso->add_option("--q", q, "constant field size");
    iso->add_option("--emit", emit, "json or text");

    auto* accp = app.add_subcommand("acceptance", "run the acceptance criteria");
    int only = 0;
    accp->add_option("--criterion", only, "run only this criterion (1..9)");
    accp->add_option("--seed", seed, "seed for the property suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*towers_ls) return towers_list(json_out);
        if (*ver) return verify(check, json_out, timings);
        if (*an) return analyze(tower, levels, starts, pick_format(json_out, csv_out), seed);
        if (*cnt) return count(tower, levels, oracle, json_out);
        if (*iso) return isogeny_derive(q, emit);
        if (*accp) return acceptance(only, seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    }
    return kUsage;
}
