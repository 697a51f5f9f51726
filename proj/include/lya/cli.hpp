#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "lya/algebra.hpp"
#include "lya/cochain.hpp"
#include "lya/cohomology.hpp"
#include "lya/deformation.hpp"
#include "lya/errors.hpp"
#include "lya/io.hpp"
#include "lya/rational.hpp"
#include "lya/representation.hpp"
#include "lya/selftest.hpp"

namespace lya {

namespace detail {

inline std::string combo_str(const Vector& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (!out.empty()) out += " + ";
        out += format_rational(v[i]) + "*e" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

inline std::string render_table(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w;
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c >= w.size()) w.resize(c + 1, 0);
            w[c] = std::max(w[c], row[c].size());
        }
    std::string out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line += row[c];
            if (c + 1 < row.size()) line.append(w[c] - row[c].size() + 2, ' ');
        }
        out += line;
        out += '\n';
    }
    return out;
}

inline bool get_bool(const Json& j, const std::string& what) {
    if (!j.is_boolean()) throw ParseError(what + ": boolean expected");
    return j.get<bool>();
}

inline std::string get_string(const Json& j, const std::string& what) {
    if (!j.is_string()) throw ParseError(what + ": string expected");
    return j.get<std::string>();
}

inline Json indices_json(const std::vector<std::size_t>& w) {
    Json a = Json::array();
    for (std::size_t i : w) a.push_back(i);
    return a;
}

inline Json vector_json(const Vector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(format_rational(x));
    return a;
}

inline std::vector<std::size_t> parse_indices(const Json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": index array expected");
    std::vector<std::size_t> out;
    for (const auto& e : j) out.push_back(get_index(e, what));
    return out;
}

inline Vector parse_vector(const Json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": rational array expected");
    Vector out;
    for (const auto& e : j) out.push_back(get_scalar(e, what));
    return out;
}

inline void expect_command(const Json& j, const std::string& name) {
    if (!j.is_object() || !j.contains("command") || !j["command"].is_string() ||
        j["command"].get<std::string>() != name)
        throw ParseError("report: expected command \"" + name + "\"");
}

}  // namespace detail

inline std::size_t family_index(const std::string& name) {
    for (std::size_t k = 0; k < 4; ++k)
        if (name == family_name(k)) return k;
    throw ParseError("unknown equation family: " + name);
}

// ---- file loading with path resolution ---------------------------------------

/// Loads a deformation file; string base references resolve relative to the
/// deformation file's directory.
inline TruncatedDeformation load_deformation(const std::string& path) {
    Json j = load_json(path);
    std::filesystem::path dir = std::filesystem::path(path).parent_path();
    return parse_deformation(j, [&](const std::string& ref) {
        std::filesystem::path p(ref);
        if (p.is_relative()) p = dir / p;
        return load_structure(p.string());
    });
}

/// First-order terms for deform-integrate: either a single degree-2 or
/// degree-3 cochain document, or an {"F": ..., "G": ...} pair.
inline CochainPair load_infinitesimal(const std::string& path, std::size_t dim) {
    Json j = load_json(path);
    if (j.is_object() && j.contains("degree")) {
        Cochain c = parse_cochain(j);
        if (c.dimT != dim || c.dimV != dim)
            throw DimensionMismatch("infinitesimal dims do not match the base structure");
        if (c.degree == 2) return CochainPair(std::move(c), Cochain(3, dim, dim));
        if (c.degree == 3) return CochainPair(Cochain(2, dim, dim), std::move(c));
        throw ParseError("infinitesimal cochain must have degree 2 or 3");
    }
    detail::require_object(j, {}, {"F", "G"}, "infinitesimal pair");
    Cochain f(2, dim, dim), g(3, dim, dim);
    if (j.contains("F")) f = parse_cochain(j["F"]);
    if (j.contains("G")) g = parse_cochain(j["G"]);
    if (f.degree != 2 || g.degree != 3 || f.dimT != dim || f.dimV != dim || g.dimT != dim ||
        g.dimV != dim)
        throw DimensionMismatch("infinitesimal pair must be T^2->T and T^3->T over the base");
    return CochainPair(std::move(f), std::move(g));
}

// ---- report documents ---------------------------------------------------------

struct CheckReport {
    std::size_t dim = 0;
    AxiomReport axioms;

    friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

inline Json check_report_json(const CheckReport& r) {
    Json j;
    j["command"] = "check";
    j["dim"] = r.dim;
    j["pass"] = r.axioms.all_pass();
    Json axioms = Json::array();
    for (std::size_t i = 0; i < 6; ++i) {
        const AxiomStatus& st = r.axioms.axioms[i];
        Json e;
        e["index"] = i + 1;
        e["pass"] = st.pass;
        if (!st.pass) {
            e["witness"] = detail::indices_json(st.witness);
            e["defect"] = detail::vector_json(st.defect);
        }
        axioms.push_back(std::move(e));
    }
    j["axioms"] = std::move(axioms);
    return j;
}

inline CheckReport parse_check_report(const Json& j) {
    detail::expect_command(j, "check");
    detail::require_object(j, {"command", "dim", "pass", "axioms"}, {}, "check report");
    CheckReport r;
    r.dim = detail::get_index(j["dim"], "check report dim");
    if (!j["axioms"].is_array() || j["axioms"].size() != 6)
        throw ParseError("check report: six axiom entries expected");
    for (std::size_t i = 0; i < 6; ++i) {
        const Json& e = j["axioms"][i];
        detail::require_object(e, {"index", "pass"}, {"witness", "defect"}, "axiom entry");
        if (detail::get_index(e["index"], "axiom index") != i + 1)
            throw ParseError("check report: axiom entries out of order");
        AxiomStatus& st = r.axioms.axioms[i];
        st.pass = detail::get_bool(e["pass"], "axiom pass");
        if (!st.pass) {
            st.witness = detail::parse_indices(e["witness"], "axiom witness");
            st.defect = detail::parse_vector(e["defect"], "axiom defect");
        }
    }
    if (detail::get_bool(j["pass"], "check report pass") != r.axioms.all_pass())
        throw ParseError("check report: pass flag inconsistent");
    return r;
}

struct RepCheckReport {
    std::size_t dim = 0;
    std::size_t dimV = 0;
    RepReport relations;

    friend bool operator==(const RepCheckReport&, const RepCheckReport&) = default;
};

inline Json rep_check_report_json(const RepCheckReport& r) {
    Json j;
    j["command"] = "rep-check";
    j["dim"] = r.dim;
    j["dimV"] = r.dimV;
    j["pass"] = r.relations.all_pass();
    Json rel = Json::array();
    for (std::size_t i = 0; i < 7; ++i) {
        const RelationStatus& st = r.relations.relations[i];
        Json e;
        e["index"] = i + 1;
        e["pass"] = st.pass;
        if (!st.pass) e["witness"] = detail::indices_json(st.witness);
        rel.push_back(std::move(e));
    }
    j["relations"] = std::move(rel);
    return j;
}

inline RepCheckReport parse_rep_check_report(const Json& j) {
    detail::expect_command(j, "rep-check");
    detail::require_object(j, {"command", "dim", "dimV", "pass", "relations"}, {},
                           "rep-check report");
    RepCheckReport r;
    r.dim = detail::get_index(j["dim"], "rep-check dim");
    r.dimV = detail::get_index(j["dimV"], "rep-check dimV");
    if (!j["relations"].is_array() || j["relations"].size() != 7)
        throw ParseError("rep-check report: seven relation entries expected");
    for (std::size_t i = 0; i < 7; ++i) {
        const Json& e = j["relations"][i];
        detail::require_object(e, {"index", "pass"}, {"witness"}, "relation entry");
        if (detail::get_index(e["index"], "relation index") != i + 1)
            throw ParseError("rep-check report: relation entries out of order");
        RelationStatus& st = r.relations.relations[i];
        st.pass = detail::get_bool(e["pass"], "relation pass");
        if (!st.pass) st.witness = detail::parse_indices(e["witness"], "relation witness");
    }
    if (detail::get_bool(j["pass"], "rep-check pass") != r.relations.all_pass())
        throw ParseError("rep-check report: pass flag inconsistent");
    return r;
}

struct CohomologyDoc {
    std::size_t dim = 0;
    std::vector<CohomologyReport> levels;

    friend bool operator==(const CohomologyDoc&, const CohomologyDoc&) = default;
};

inline Json cohomology_doc_json(const CohomologyDoc& doc) {
    Json j;
    j["command"] = "cohomology";
    j["dim"] = doc.dim;
    Json levels = Json::array();
    for (const auto& rep : doc.levels) levels.push_back(cohomology_report_json(rep));
    j["levels"] = std::move(levels);
    return j;
}

inline CohomologyDoc parse_cohomology_doc(const Json& j) {
    detail::expect_command(j, "cohomology");
    detail::require_object(j, {"command", "dim", "levels"}, {}, "cohomology report");
    CohomologyDoc doc;
    doc.dim = detail::get_index(j["dim"], "cohomology dim");
    if (!j["levels"].is_array()) throw ParseError("cohomology report: levels array expected");
    for (const auto& e : j["levels"]) doc.levels.push_back(parse_cohomology_report(e));
    return doc;
}

inline Json deform_check_report_json(const DeformationReport& rep) {
    Json j;
    j["command"] = "deform-check";
    j["order"] = rep.order;
    j["pass"] = rep.pass;
    Json orders = Json::array();
    for (std::size_t k = 0; k < rep.orders.size(); ++k) {
        Json o;
        o["order"] = k;
        Json fams = Json::array();
        for (std::size_t f = 0; f < 4; ++f) {
            const FamilyStatus& st = rep.orders[k][f];
            Json e;
            e["family"] = family_name(f);
            e["pass"] = st.pass;
            if (!st.pass) {
                e["witness"] = detail::indices_json(st.witness);
                e["defect"] = detail::vector_json(st.defect);
            }
            fams.push_back(std::move(e));
        }
        o["families"] = std::move(fams);
        orders.push_back(std::move(o));
    }
    j["orders"] = std::move(orders);
    return j;
}

inline DeformationReport parse_deform_check_report(const Json& j) {
    detail::expect_command(j, "deform-check");
    detail::require_object(j, {"command", "order", "pass", "orders"}, {}, "deform-check report");
    DeformationReport rep;
    rep.order = detail::get_index(j["order"], "deform-check order");
    rep.pass = detail::get_bool(j["pass"], "deform-check pass");
    if (!j["orders"].is_array() || j["orders"].size() != rep.order + 1)
        throw ParseError("deform-check report: one entry per order 0..N expected");
    for (std::size_t k = 0; k <= rep.order; ++k) {
        const Json& o = j["orders"][k];
        detail::require_object(o, {"order", "families"}, {}, "order entry");
        if (detail::get_index(o["order"], "order index") != k)
            throw ParseError("deform-check report: order entries out of order");
        if (!o["families"].is_array() || o["families"].size() != 4)
            throw ParseError("deform-check report: four family entries expected");
        std::array<FamilyStatus, 4> fams;
        for (std::size_t f = 0; f < 4; ++f) {
            const Json& e = o["families"][f];
            detail::require_object(e, {"family", "pass"}, {"witness", "defect"}, "family entry");
            if (family_index(detail::get_string(e["family"], "family name")) != f)
                throw ParseError("deform-check report: family entries out of order");
            fams[f].pass = detail::get_bool(e["pass"], "family pass");
            if (!fams[f].pass) {
                fams[f].witness = detail::parse_indices(e["witness"], "family witness");
                fams[f].defect = detail::parse_vector(e["defect"], "family defect");
            }
        }
        rep.orders.push_back(std::move(fams));
    }
    return rep;
}

struct IntegrateReport {
    std::size_t target_order = 0;
    std::size_t reached_order = 0;
    std::optional<TruncatedDeformation> deformation;   // present when integrated
    std::optional<IntegrationObstruction> obstruction; // present when blocked

    friend bool operator==(const IntegrateReport&, const IntegrateReport&) = default;
};

inline Json integrate_report_json(const IntegrateReport& r) {
    Json j;
    j["command"] = "deform-integrate";
    j["target_order"] = r.target_order;
    j["status"] = r.obstruction ? "obstructed" : "integrated";
    j["reached_order"] = r.reached_order;
    if (r.obstruction) {
        const IntegrationObstruction& o = *r.obstruction;
        Json e;
        e["order"] = o.order;
        e["family"] = family_name(o.family);
        e["witness"] = detail::indices_json(o.witness);
        e["defect"] = detail::vector_json(o.defect);
        if (o.pair) {
            Json p;
            p["F"] = cochain_json(o.pair->even);
            p["G"] = cochain_json(o.pair->odd);
            p["in_Z45"] = o.pair->in_Z45;
            e["pair"] = std::move(p);
        }
        j["obstruction"] = std::move(e);
    } else {
        j["deformation"] = deformation_json(*r.deformation);
    }
    return j;
}

inline IntegrateReport parse_integrate_report(const Json& j) {
    detail::expect_command(j, "deform-integrate");
    detail::require_object(j, {"command", "target_order", "status", "reached_order"},
                           {"deformation", "obstruction"}, "deform-integrate report");
    IntegrateReport r;
    r.target_order = detail::get_index(j["target_order"], "target order");
    r.reached_order = detail::get_index(j["reached_order"], "reached order");
    const std::string status = detail::get_string(j["status"], "status");
    if (status == "integrated") {
        if (!j.contains("deformation"))
            throw ParseError("deform-integrate report: deformation missing");
        r.deformation = parse_deformation(j["deformation"], [](const std::string&) -> LYAStructure {
            throw ParseError("report deformations embed the base structure");
        });
    } else if (status == "obstructed") {
        if (!j.contains("obstruction"))
            throw ParseError("deform-integrate report: obstruction missing");
        const Json& e = j["obstruction"];
        detail::require_object(e, {"order", "family", "witness", "defect"}, {"pair"},
                               "obstruction entry");
        IntegrationObstruction o;
        o.order = detail::get_index(e["order"], "obstruction order");
        o.family = family_index(detail::get_string(e["family"], "obstruction family"));
        o.witness = detail::parse_indices(e["witness"], "obstruction witness");
        o.defect = detail::parse_vector(e["defect"], "obstruction defect");
        if (e.contains("pair")) {
            const Json& p = e["pair"];
            detail::require_object(p, {"F", "G", "in_Z45"}, {}, "obstruction pair");
            ObstructionPair op{parse_cochain(p["F"]), parse_cochain(p["G"]), o.order,
                               detail::get_bool(p["in_Z45"], "in_Z45")};
            o.pair = std::move(op);
        }
        r.obstruction = std::move(o);
    } else {
        throw ParseError("deform-integrate report: unknown status \"" + status + "\"");
    }
    return r;
}

inline Json trivialize_report_json(const TrivializeResult& r) {
    Json j;
    j["command"] = "deform-trivialize";
    j["status"] = r.trivialized ? "trivialized" : "obstructed";
    if (!r.trivialized) {
        j["order"] = r.obstructed_order;
        j["class_coordinates"] = detail::vector_json(r.class_coordinates);
        Json rep;
        rep["F"] = cochain_json(r.obstruction_class->even);
        rep["G"] = cochain_json(r.obstruction_class->odd);
        j["representative"] = std::move(rep);
    }
    Json gauges = Json::array();
    for (const auto& g : r.gauges) gauges.push_back(gauge_json(g));
    j["gauges"] = std::move(gauges);
    j["residual"] = deformation_json(r.residual);
    return j;
}

inline TrivializeResult parse_trivialize_report(const Json& j) {
    detail::expect_command(j, "deform-trivialize");
    detail::require_object(j, {"command", "status", "gauges", "residual"},
                           {"order", "class_coordinates", "representative"},
                           "deform-trivialize report");
    TrivializeResult r;
    r.residual = parse_deformation(j["residual"], [](const std::string&) -> LYAStructure {
        throw ParseError("report deformations embed the base structure");
    });
    const std::size_t dim = r.residual.base.dim;
    const std::string status = detail::get_string(j["status"], "status");
    r.trivialized = status == "trivialized";
    if (!r.trivialized && status != "obstructed")
        throw ParseError("deform-trivialize report: unknown status \"" + status + "\"");
    if (!j["gauges"].is_array()) throw ParseError("deform-trivialize report: gauges array");
    for (const auto& e : j["gauges"]) r.gauges.push_back(parse_gauge(e, dim));
    if (!r.trivialized) {
        r.obstructed_order = detail::get_index(j["order"], "obstructed order");
        r.class_coordinates = detail::parse_vector(j["class_coordinates"], "class coordinates");
        const Json& rep = j["representative"];
        detail::require_object(rep, {"F", "G"}, {}, "representative");
        r.obstruction_class = CochainPair(parse_cochain(rep["F"]), parse_cochain(rep["G"]));
    }
    return r;
}

inline Json obstruction_report_json(const ObstructionPair& p) {
    Json j;
    j["command"] = "obstruction";
    j["order"] = p.order;
    j["in_Z45"] = p.in_Z45;
    j["F"] = cochain_json(p.even);
    j["G"] = cochain_json(p.odd);
    return j;
}

inline ObstructionPair parse_obstruction_report(const Json& j) {
    detail::expect_command(j, "obstruction");
    detail::require_object(j, {"command", "order", "in_Z45", "F", "G"}, {}, "obstruction report");
    ObstructionPair p{parse_cochain(j["F"]), parse_cochain(j["G"]),
                      detail::get_index(j["order"], "obstruction order"),
                      detail::get_bool(j["in_Z45"], "in_Z45")};
    return p;
}

struct SelftestReport {
    std::size_t dim = 0;
    std::uint64_t seed = 0;
    SelftestResult result;

    friend bool operator==(const SelftestReport&, const SelftestReport&) = default;
};

inline Json selftest_report_json(const SelftestReport& r) {
    Json j;
    j["command"] = "selftest";
    j["dim"] = r.dim;
    j["seed"] = r.seed;
    j["pass"] = r.result.pass;
    j["failed_property"] = r.result.failed_property;
    j["detail"] = r.result.detail;
    Json lines = Json::array();
    for (const auto& l : r.result.lines) lines.push_back(l);
    j["lines"] = std::move(lines);
    return j;
}

inline SelftestReport parse_selftest_report(const Json& j) {
    detail::expect_command(j, "selftest");
    detail::require_object(j, {"command", "dim", "seed", "pass", "failed_property", "detail",
                               "lines"},
                           {}, "selftest report");
    SelftestReport r;
    r.dim = detail::get_index(j["dim"], "selftest dim");
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
        throw ParseError("selftest report: seed must be an integer");
    r.seed = j["seed"].get<std::uint64_t>();
    r.result.pass = detail::get_bool(j["pass"], "selftest pass");
    r.result.failed_property = detail::get_string(j["failed_property"], "failed property");
    r.result.detail = detail::get_string(j["detail"], "selftest detail");
    if (!j["lines"].is_array()) throw ParseError("selftest report: lines array expected");
    for (const auto& e : j["lines"]) r.result.lines.push_back(detail::get_string(e, "line"));
    return r;
}

// ---- verb handlers ------------------------------------------------------------

struct CliResult {
    int code = 0;
    std::string text;
};

inline CliResult do_check(const std::string& path, bool json) {
    LYAStructure s = load_structure(path);
    CheckReport doc{s.dim, check_axioms(s)};
    const bool pass = doc.axioms.all_pass();
    if (json) return {pass ? 0 : 1, check_report_json(doc).dump(2) + "\n"};
    static const char* formulas[6] = {
        "ab = -ba",
        "[a,b,c] = -[b,a,c]",
        "(ab)c + (bc)a + (ca)b + [a,b,c] + [b,c,a] + [c,a,b] = 0",
        "[ab,c,d] + [bc,a,d] + [ca,b,d] = 0",
        "[a,b,cd] = [a,b,c]d + c[a,b,d]",
        "[a,b,[c,d,e]] = [[a,b,c],d,e] + [c,[a,b,d],e] + [c,d,[a,b,e]]",
    };
    std::vector<std::vector<std::string>> rows;
    std::size_t npass = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        const AxiomStatus& st = doc.axioms.axioms[i];
        std::string status = "PASS";
        if (!st.pass)
            status = "FAIL at " + detail::tuple_str(st.witness) + "; defect " +
                     detail::combo_str(st.defect);
        else
            ++npass;
        rows.push_back({"axiom " + std::to_string(i + 1), formulas[i], status});
    }
    std::string text = detail::render_table(rows);
    text += std::to_string(npass) + "/6 axioms PASS\n";
    return {pass ? 0 : 1, text};
}

inline CliResult do_rep_check(const std::string& path, const std::string& rep_path, bool json) {
    LYAStructure s = load_structure(path);
    Representation r = rep_path.empty() ? regular_representation(s)
                                        : parse_representation(load_json(rep_path), s.dim);
    RepCheckReport doc{s.dim, r.dimV, check_representation(s, r)};
    const bool pass = doc.relations.all_pass();
    if (json) return {pass ? 0 : 1, rep_check_report_json(doc).dump(2) + "\n"};
    static const char* formulas[7] = {
        "D(a,b) + theta(a,b) - theta(b,a) = [rho(a),rho(b)] - rho(ab)",
        "theta(a,bc) = rho(b) theta(a,c) - rho(c) theta(a,b)",
        "theta(ab,c) = theta(a,c) rho(b) - theta(b,c) rho(a)",
        "theta(c,d) theta(a,b) - theta(b,d) theta(a,c) = theta(a,[b,c,d]) - D(b,c) theta(a,d)",
        "[D(a,b), rho(c)] = rho([a,b,c])",
        "[D(a,b), theta(c,d)] = theta([a,b,c],d) + theta(c,[a,b,d])",
        "D(ab,c) + D(bc,a) + D(ca,b) = 0",
    };
    std::vector<std::vector<std::string>> rows;
    std::size_t npass = 0;
    for (std::size_t i = 0; i < 7; ++i) {
        const RelationStatus& st = doc.relations.relations[i];
        std::string status = "PASS";
        if (!st.pass)
            status = "FAIL at " + detail::tuple_str(st.witness);
        else
            ++npass;
        rows.push_back({"relation " + std::to_string(i + 1), formulas[i], status});
    }
    std::string text = detail::render_table(rows);
    text += std::to_string(npass) + "/7 relations PASS\n";
    return {pass ? 0 : 1, text};
}

inline CliResult do_cohomology(const std::string& path, const std::string& levels_arg,
                               const std::string& rep_path, std::size_t p_limit, bool json) {
    LYAStructure s = load_structure(path);
    Representation r = rep_path.empty() ? regular_representation(s)
                                        : parse_representation(load_json(rep_path), s.dim);
    std::vector<std::size_t> ps;
    {
        std::istringstream ss(levels_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) ps.push_back(parse_level_label(tok));
    }
    if (ps.empty()) throw ParseError("empty --levels");
    for (std::size_t p : ps)
        if (p >= 1 && p > p_limit)
            throw ParseError("level " + level_label(p) + " exceeds --p-limit " +
                             std::to_string(p_limit));
    CohomologyDoc doc;
    doc.dim = s.dim;
    for (std::size_t p : ps) {
        if (p == 0)
            doc.levels.push_back(h1(s, r));
        else if (p == 1)
            doc.levels.push_back(h23(s, r));
        else
            doc.levels.push_back(h2p(s, r, p));
    }
    if (json) return {0, cohomology_doc_json(doc).dump(2) + "\n"};
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"level", "dim Z (even,odd)", "dim B", "dim H"});
    for (const auto& rep : doc.levels) {
        std::string z = std::to_string(rep.dimZ);
        if (rep.p > 0)
            z += " (" + std::to_string(rep.dimZ_even) + "," + std::to_string(rep.dimZ_odd) + ")";
        rows.push_back(
            {level_label(rep.p), z, std::to_string(rep.dimB), std::to_string(rep.dimH)});
    }
    return {0, detail::render_table(rows)};
}

inline CliResult do_deform_check(const std::string& path, bool json) {
    TruncatedDeformation d = load_deformation(path);
    DeformationReport rep = check_deformation(d);
    if (json) return {rep.pass ? 0 : 1, deform_check_report_json(rep).dump(2) + "\n"};
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"order", family_name(0), family_name(1), family_name(2), family_name(3)});
    std::string defects;
    for (std::size_t k = 0; k < rep.orders.size(); ++k) {
        std::vector<std::string> row{std::to_string(k)};
        for (std::size_t f = 0; f < 4; ++f) {
            const FamilyStatus& st = rep.orders[k][f];
            if (st.pass) {
                row.push_back("PASS");
            } else {
                row.push_back("FAIL at " + detail::tuple_str(st.witness));
                defects += "defect at order " + std::to_string(k) + ", " + family_name(f) + ": " +
                           detail::combo_str(st.defect) + "\n";
            }
        }
        rows.push_back(std::move(row));
    }
    std::string text = detail::render_table(rows) + defects;
    text += rep.pass ? "deformation equations hold through order " + std::to_string(rep.order) +
                           "\n"
                     : "deformation equations FAIL\n";
    return {rep.pass ? 0 : 1, text};
}

namespace detail {

inline IntegrationObstruction first_violation(const DeformationReport& rep) {
    for (std::size_t k = 0; k < rep.orders.size(); ++k)
        for (std::size_t f = 0; f < 4; ++f)
            if (!rep.orders[k][f].pass) {
                IntegrationObstruction obs;
                obs.order = k;
                obs.family = f;
                obs.witness = rep.orders[k][f].witness;
                obs.defect = rep.orders[k][f].defect;
                return obs;
            }
    throw InternalError("first_violation: report passes");
}

}  // namespace detail

inline CliResult do_deform_integrate(const std::string& base_path, const std::string& from_path,
                                     std::size_t order, bool json) {
    LYAStructure base = load_structure(base_path);
    CochainPair inf = load_infinitesimal(from_path, base.dim);
    TruncatedDeformation d = new_deformation(std::move(base), 1, {std::move(inf)});
    IntegrateReport doc;
    doc.target_order = order;
    std::vector<std::string> lines;
    DeformationReport start = check_deformation(d);
    if (!start.pass) {
        doc.reached_order = 0;
        doc.obstruction = detail::first_violation(start);
    } else {
        while (d.order < order && !doc.obstruction) {
            IntegrateResult res = integrate_step(d);
            if (auto* step = std::get_if<IntegrationStep>(&res)) {
                d = step->extended;
                lines.push_back("order " + std::to_string(d.order) + ": extended");
            } else {
                doc.reached_order = d.order;
                doc.obstruction = std::get<IntegrationObstruction>(std::move(res));
            }
        }
        if (!doc.obstruction) {
            doc.reached_order = d.order;
            doc.deformation = d;
        }
    }
    const int code = doc.obstruction ? 1 : 0;
    if (json) return {code, integrate_report_json(doc).dump(2) + "\n"};
    std::string text;
    for (const auto& l : lines) text += l + "\n";
    if (doc.obstruction) {
        const IntegrationObstruction& o = *doc.obstruction;
        text += "order " + std::to_string(o.order) + ": OBSTRUCTED in the " +
                family_name(o.family) + " family at " + detail::tuple_str(o.witness) + "\n";
        text += "defect: " + detail::combo_str(o.defect) + "\n";
        if (o.pair)
            text += std::string("obstruction pair in the degree-(4,5) cocycle space: ") +
                    (o.pair->in_Z45 ? "yes" : "no") + "\n";
    } else {
        text += "integrated to order " + std::to_string(doc.reached_order) + "\n";
    }
    return {code, text};
}

inline CliResult do_deform_trivialize(const std::string& path, bool json) {
    TruncatedDeformation d = load_deformation(path);
    TrivializeResult res = trivialize(d);
    if (json) return {res.trivialized ? 0 : 1, trivialize_report_json(res).dump(2) + "\n"};
    std::string text;
    if (res.trivialized) {
        text += "trivialized: yes\n";
        std::string orders;
        for (const auto& g : res.gauges)
            for (std::size_t i = 0; i < g.phis.size(); ++i)
                if (!g.phis[i].is_zero()) {
                    if (!orders.empty()) orders += ", ";
                    orders += std::to_string(i + 1);
                }
        text += "gauge steps: " + std::to_string(res.gauges.size());
        if (!orders.empty()) text += " (orders " + orders + ")";
        text += "\n";
        text += "residual: null through order " + std::to_string(res.residual.order) + "\n";
    } else {
        text += "trivialized: no\n";
        text += "obstructed at order " + std::to_string(res.obstructed_order) +
                ": the lowest nonzero term is a cocycle but not a coboundary\n";
        std::string coords;
        for (const auto& c : res.class_coordinates) {
            if (!coords.empty()) coords += ", ";
            coords += format_rational(c);
        }
        text += "class coordinates in the representative basis: [" + coords + "]\n";
    }
    return {res.trivialized ? 0 : 1, text};
}

inline CliResult do_obstruction(const std::string& path, std::optional<std::size_t> ord,
                                bool json) {
    TruncatedDeformation d = load_deformation(path);
    ObstructionPair pair = obstruction(d, ord ? *ord : d.order + 1);
    if (json) return {pair.in_Z45 ? 0 : 1, obstruction_report_json(pair).dump(2) + "\n"};
    std::string text = "obstruction at order " + std::to_string(pair.order) + "\n";
    text += std::string("degree-4 part: ") + (pair.even.is_zero() ? "zero" : "nonzero") + "\n";
    text += std::string("degree-5 part: ") + (pair.odd.is_zero() ? "zero" : "nonzero") + "\n";
    text += std::string("in the degree-(4,5) cocycle space: ") + (pair.in_Z45 ? "yes" : "no") +
            "\n";
    return {pair.in_Z45 ? 0 : 1, text};
}

inline CliResult do_selftest(std::size_t dim, std::uint64_t seed, bool corrupt, bool json) {
    debug::flip_delta_sign() = corrupt;
    SelftestResult res;
    try {
        res = run_selftest(dim, seed);
    } catch (...) {
        debug::flip_delta_sign() = false;
        throw;
    }
    debug::flip_delta_sign() = false;
    SelftestReport doc{dim, seed, res};
    if (json) return {res.pass ? 0 : 1, selftest_report_json(doc).dump(2) + "\n"};
    std::string text;
    for (const auto& l : res.lines) text += l + "\n";
    if (res.pass)
        text += "selftest PASS (dim " + std::to_string(dim) + ", seed " + std::to_string(seed) +
                ")\n";
    else
        text += "selftest FAIL (dim " + std::to_string(dim) + ", seed " + std::to_string(seed) +
                "): " + res.failed_property + "\n";
    return {res.pass ? 0 : 1, text};
}

// ---- argument parsing and dispatch ---------------------------------------------

/// Exit 0: all requested checks pass. Exit 1: a mathematical check failed.
/// Exit 2: usage or file error. Reports are written to stdout in one piece.
inline int run(const std::vector<std::string>& args) {
    CLI::App app{"Exact structure-constant toolkit for Lie-Yamaguti algebras"};
    app.name("lya");
    app.require_subcommand(1);

    std::string structure_path, rep_path, from_path, file_path;
    std::string levels = "1,2-3";
    std::size_t order = 0;
    std::uint64_t seed = 0;
    std::size_t p_limit = 2;
    std::size_t dim = 2;
    bool json = false;
    bool corrupt = false;

    CLI::App* c_check = app.add_subcommand("check", "Check the six algebra axioms");
    c_check->add_option("file", structure_path, "structure constants JSON file")->required();
    c_check->add_flag("--json", json, "emit a JSON report");

    CLI::App* c_rep = app.add_subcommand("rep-check", "Check the representation relations");
    c_rep->add_option("file", structure_path, "structure constants JSON file")->required();
    c_rep->add_option("--rep", rep_path, "representation JSON file (default: regular)");
    c_rep->add_flag("--json", json, "emit a JSON report");

    CLI::App* c_coh =
        app.add_subcommand("cohomology", "Cocycle, coboundary and cohomology dimensions");
    c_coh->add_option("file", structure_path, "structure constants JSON file")->required();
    c_coh->add_option("--levels", levels, "comma list of 1, 2-3, 4-5, 2p:<p> (default 1,2-3)");
    c_coh->add_option("--rep", rep_path, "representation JSON file (default: regular)");
    c_coh->add_option("--p-limit", p_limit, "largest pair level p allowed (default 2)");
    c_coh->add_flag("--json", json, "emit a JSON report");

    CLI::App* c_dc = app.add_subcommand("deform-check", "Check the deformation equations");
    c_dc->add_option("file", file_path, "deformation JSON file")->required();
    c_dc->add_flag("--json", json, "emit a JSON report");

    CLI::App* c_di =
        app.add_subcommand("deform-integrate", "Extend an infinitesimal order by order");
    c_di->add_option("file", structure_path, "base structure constants JSON file")->required();
    c_di->add_option("--from", from_path, "infinitesimal: degree-2/3 cochain or {\"F\",\"G\"}")
        ->required();
    c_di->add_option("--order", order, "target order")->required()->check(CLI::PositiveNumber);
    c_di->add_flag("--json", json, "emit a JSON report");

    CLI::App* c_dt =
        app.add_subcommand("deform-trivialize", "Gauge a deformation back to null order by order");
    c_dt->add_option("file", file_path, "deformation JSON file")->required();
    c_dt->add_flag("--json", json, "emit a JSON report");

    CLI::App* c_ob = app.add_subcommand("obstruction", "Degree-(4,5) obstruction pair");
    c_ob->add_option("file", file_path, "deformation JSON file")->required();
    CLI::Option* ob_order =
        c_ob->add_option("--order", order, "obstruction order (default: deformation order + 1)")
            ->check(CLI::PositiveNumber);
    c_ob->add_flag("--json", json, "emit a JSON report");

    CLI::App* c_st = app.add_subcommand("selftest", "Run the randomized property suites");
    c_st->add_option("dim", dim, "algebra dimension (default 2)")->check(CLI::Range(2, 4));
    c_st->add_option("--seed", seed, "RNG seed (default 0)");
    c_st->add_flag("--corrupt-delta", corrupt, "")->group("");
    c_st->add_flag("--json", json, "emit a JSON report");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
        CliResult out;
        if (*c_check)
            out = do_check(structure_path, json);
        else if (*c_rep)
            out = do_rep_check(structure_path, rep_path, json);
        else if (*c_coh)
            out = do_cohomology(structure_path, levels, rep_path, p_limit, json);
        else if (*c_dc)
            out = do_deform_check(file_path, json);
        else if (*c_di)
            out = do_deform_integrate(structure_path, from_path, order, json);
        else if (*c_dt)
            out = do_deform_trivialize(file_path, json);
        else if (*c_ob)
            out = do_obstruction(
                file_path, ob_order->count() ? std::optional<std::size_t>(order) : std::nullopt,
                json);
        else
            out = do_selftest(dim, seed, corrupt, json);
        std::cout << out.text << std::flush;
        return out.code;
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cout, std::cerr);
        return 2;
    } catch (const InvalidAlgebra& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const InvalidRepresentation& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const AlternationViolation& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const EquationsViolated& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const NotEquivalent& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const InternalError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

inline int run(int argc, char** argv) {
    return run(std::vector<std::string>(argv + 1, argv + argc));
}

}  // namespace lya
