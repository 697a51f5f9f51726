#pragma once

#include <cstddef>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "lya/algebra.hpp"
#include "lya/cochain.hpp"
#include "lya/cohomology.hpp"
#include "lya/deformation.hpp"
#include "lya/errors.hpp"
#include "lya/matrix.hpp"
#include "lya/rational.hpp"
#include "lya/representation.hpp"

namespace lya {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json parse_json(const std::string& text, const std::string& where) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON in " + where);
    return j;
}

inline Json load_json(const std::string& path) { return parse_json(read_file(path), path); }

namespace detail {

inline void require_object(const Json& j, const std::vector<std::string>& required,
                           const std::vector<std::string>& optional, const std::string& what) {
    if (!j.is_object()) throw ParseError(what + ": JSON object expected");
    for (const auto& key : required)
        if (!j.contains(key)) throw ParseError(what + ": missing key \"" + key + "\"");
    for (const auto& item : j.items()) {
        const std::string& k = item.key();
        bool known = false;
        for (const auto& r : required) known = known || k == r;
        for (const auto& o : optional) known = known || k == o;
        if (!known) throw ParseError(what + ": unknown key \"" + k + "\"");
    }
}

inline std::size_t get_index(const Json& j, const std::string& what) {
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw ParseError(what + ": nonnegative integer index expected");
    return static_cast<std::size_t>(j.get<long long>());
}

inline Scalar get_scalar(const Json& j, const std::string& what) {
    if (!j.is_string()) throw ParseError(what + ": rational value must be a string \"p/q\"");
    return parse_rational(j.get<std::string>());
}

inline RationalMatrix get_matrix(const Json& j, std::size_t rows, std::size_t cols,
                                 const std::string& what) {
    if (!j.is_array() || j.size() != rows * cols)
        throw ParseError(what + ": row-major matrix of " + std::to_string(rows * cols) +
                         " rational strings expected");
    RationalMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows * cols; ++i) m.a[i] = get_scalar(j[i], what);
    return m;
}

inline Json matrix_json(const RationalMatrix& m) {
    Json out = Json::array();
    for (const auto& x : m.a) out.push_back(format_rational(x));
    return out;
}

}  // namespace detail

// ---- structure files --------------------------------------------------------

inline LYAStructure parse_structure(const Json& j) {
    detail::require_object(j, {"dim"}, {"binary", "ternary"}, "structure");
    const std::size_t n = detail::get_index(j["dim"], "structure dim");
    std::vector<BinaryEntry> bin;
    std::vector<TernaryEntry> ter;
    if (j.contains("binary")) {
        if (!j["binary"].is_array()) throw ParseError("structure: \"binary\" must be an array");
        for (const auto& e : j["binary"]) {
            if (!e.is_array() || e.size() != 4)
                throw ParseError("structure: binary entry must be [i, j, k, \"p/q\"]");
            bin.push_back({detail::get_index(e[0], "binary index"),
                           detail::get_index(e[1], "binary index"),
                           detail::get_index(e[2], "binary index"),
                           detail::get_scalar(e[3], "binary value")});
        }
    }
    if (j.contains("ternary")) {
        if (!j["ternary"].is_array()) throw ParseError("structure: \"ternary\" must be an array");
        for (const auto& e : j["ternary"]) {
            if (!e.is_array() || e.size() != 5)
                throw ParseError("structure: ternary entry must be [i, j, k, l, \"p/q\"]");
            ter.push_back({detail::get_index(e[0], "ternary index"),
                           detail::get_index(e[1], "ternary index"),
                           detail::get_index(e[2], "ternary index"),
                           detail::get_index(e[3], "ternary index"),
                           detail::get_scalar(e[4], "ternary value")});
        }
    }
    return new_lya(n, bin, ter);
}

inline LYAStructure load_structure(const std::string& path) {
    return parse_structure(load_json(path));
}

inline Json structure_json(const LYAStructure& s) {
    Json j;
    j["dim"] = s.dim;
    Json bin = Json::array();
    for (std::size_t i = 0; i < s.dim; ++i)
        for (std::size_t k = 0; k < s.dim; ++k)
            for (std::size_t l = 0; l < s.dim; ++l)
                if (s.bin(i, k, l) != 0)
                    bin.push_back(Json::array({i, k, l, format_rational(s.bin(i, k, l))}));
    j["binary"] = std::move(bin);
    Json ter = Json::array();
    for (std::size_t i = 0; i < s.dim; ++i)
        for (std::size_t k = 0; k < s.dim; ++k)
            for (std::size_t l = 0; l < s.dim; ++l)
                for (std::size_t w = 0; w < s.dim; ++w)
                    if (s.ter(i, k, l, w) != 0)
                        ter.push_back(Json::array({i, k, l, w, format_rational(s.ter(i, k, l, w))}));
    j["ternary"] = std::move(ter);
    return j;
}

// ---- representation files ---------------------------------------------------

inline Representation parse_representation(const Json& j, std::size_t dimT) {
    detail::require_object(j, {"dimV"}, {"rho", "D", "theta"}, "representation");
    const std::size_t m = detail::get_index(j["dimV"], "representation dimV");
    Representation r;
    r.dimT = dimT;
    r.dimV = m;
    r.rho.assign(dimT, RationalMatrix(m, m));
    r.Dmap.assign(dimT * dimT, RationalMatrix(m, m));
    r.theta.assign(dimT * dimT, RationalMatrix(m, m));
    if (j.contains("rho")) {
        for (const auto& e : j["rho"]) {
            if (!e.is_array() || e.size() != 2)
                throw ParseError("representation: rho entry must be [a, matrix]");
            std::size_t a = detail::get_index(e[0], "rho index");
            if (a >= dimT) throw ParseError("representation: rho index out of range");
            r.rho[a] = detail::get_matrix(e[1], m, m, "rho matrix");
        }
    }
    auto fill = [&](const char* key, std::vector<RationalMatrix>& dst) {
        if (!j.contains(key)) return;
        for (const auto& e : j[key]) {
            if (!e.is_array() || e.size() != 3)
                throw ParseError(std::string("representation: ") + key +
                                 " entry must be [a, b, matrix]");
            std::size_t a = detail::get_index(e[0], "pair index");
            std::size_t b = detail::get_index(e[1], "pair index");
            if (a >= dimT || b >= dimT)
                throw ParseError(std::string("representation: ") + key + " index out of range");
            dst[a * dimT + b] = detail::get_matrix(e[2], m, m, key);
        }
    };
    fill("D", r.Dmap);
    fill("theta", r.theta);
    return r;
}

inline Json representation_json(const Representation& r) {
    Json j;
    j["dimV"] = r.dimV;
    Json rho = Json::array();
    for (std::size_t a = 0; a < r.dimT; ++a)
        if (!r.rho[a].is_zero()) rho.push_back(Json::array({a, detail::matrix_json(r.rho[a])}));
    j["rho"] = std::move(rho);
    Json dd = Json::array(), th = Json::array();
    for (std::size_t a = 0; a < r.dimT; ++a)
        for (std::size_t b = 0; b < r.dimT; ++b) {
            if (!r.D(a, b).is_zero())
                dd.push_back(Json::array({a, b, detail::matrix_json(r.D(a, b))}));
            if (!r.th(a, b).is_zero())
                th.push_back(Json::array({a, b, detail::matrix_json(r.th(a, b))}));
        }
    j["D"] = std::move(dd);
    j["theta"] = std::move(th);
    return j;
}

// ---- cochain files ----------------------------------------------------------

inline Cochain parse_cochain(const Json& j) {
    detail::require_object(j, {"degree", "dimT", "dimV", "entries"}, {}, "cochain");
    const std::size_t d = detail::get_index(j["degree"], "cochain degree");
    const std::size_t n = detail::get_index(j["dimT"], "cochain dimT");
    const std::size_t m = detail::get_index(j["dimV"], "cochain dimV");
    if (n == 0 || m == 0) throw ParseError("cochain: dims must be positive");
    Cochain c(d, n, m);
    if (!j["entries"].is_array()) throw ParseError("cochain: \"entries\" must be an array");
    std::vector<std::size_t> tup(d);
    for (const auto& e : j["entries"]) {
        if (!e.is_array() || e.size() != d + 2)
            throw ParseError("cochain: entry must be [i_1..i_d, j, \"p/q\"]");
        for (std::size_t i = 0; i < d; ++i) {
            tup[i] = detail::get_index(e[i], "cochain entry index");
            if (tup[i] >= n) throw ParseError("cochain: argument index out of range");
        }
        std::size_t target = detail::get_index(e[d], "cochain target index");
        if (target >= m) throw ParseError("cochain: target index out of range");
        c.coeff(tup.data(), target) += detail::get_scalar(e[d + 1], "cochain value");
    }
    if (auto viol = alternation_violation(c))
        throw AlternationViolation("cochain file violates pair alternation");
    return c;
}

inline Cochain load_cochain(const std::string& path) { return parse_cochain(load_json(path)); }

inline Json cochain_json(const Cochain& c) {
    Json j;
    j["degree"] = c.degree;
    j["dimT"] = c.dimT;
    j["dimV"] = c.dimV;
    Json entries = Json::array();
    std::vector<std::size_t> tup(c.degree, 0);
    for (std::size_t idx = 0; idx < c.tuple_count(); ++idx) {
        const Scalar* blk = c.block(idx);
        for (std::size_t t = 0; t < c.dimV; ++t)
            if (blk[t] != 0) {
                Json e = Json::array();
                for (std::size_t i = 0; i < c.degree; ++i) e.push_back(tup[i]);
                e.push_back(t);
                e.push_back(format_rational(blk[t]));
                entries.push_back(std::move(e));
            }
        detail::next_tuple(tup, c.dimT);
    }
    j["entries"] = std::move(entries);
    return j;
}

inline Json one_cochain_json(const OneCochain& f) {
    Json j;
    j["degree"] = 1;
    j["dimT"] = f.m.cols;
    j["dimV"] = f.m.rows;
    Json entries = Json::array();
    for (std::size_t s0 = 0; s0 < f.m.cols; ++s0)
        for (std::size_t t = 0; t < f.m.rows; ++t)
            if (f.m.at(t, s0) != 0)
                entries.push_back(Json::array({s0, t, format_rational(f.m.at(t, s0))}));
    j["entries"] = std::move(entries);
    return j;
}

inline OneCochain parse_one_cochain(const Json& j) {
    Cochain c = parse_cochain(j);
    if (c.degree != 1) throw ParseError("degree-1 cochain expected");
    OneCochain f(c.dimV, c.dimT);
    std::size_t tup[1];
    for (tup[0] = 0; tup[0] < c.dimT; ++tup[0])
        for (std::size_t t = 0; t < c.dimV; ++t) f.m.at(t, tup[0]) = c.coeff(tup, t);
    return f;
}

// ---- deformation and gauge files ---------------------------------------------

inline TruncatedDeformation parse_deformation(
    const Json& j, const std::function<LYAStructure(const std::string&)>& resolve) {
    detail::require_object(j, {"base", "order"}, {"terms"}, "deformation");
    LYAStructure base;
    if (j["base"].is_string())
        base = resolve(j["base"].get<std::string>());
    else
        base = parse_structure(j["base"]);
    const std::size_t order = detail::get_index(j["order"], "deformation order");
    std::vector<CochainPair> terms(order, zero_pair(1, base.dim, base.dim));
    std::vector<bool> seen(order + 1, false);
    if (j.contains("terms")) {
        if (!j["terms"].is_array()) throw ParseError("deformation: \"terms\" must be an array");
        for (const auto& t : j["terms"]) {
            detail::require_object(t, {"i"}, {"F", "G"}, "deformation term");
            std::size_t i = detail::get_index(t["i"], "deformation term index");
            if (i < 1 || i > order) throw ParseError("deformation: term index out of 1..order");
            if (seen[i]) throw ParseError("deformation: duplicate term index");
            seen[i] = true;
            Cochain F(2, base.dim, base.dim), G(3, base.dim, base.dim);
            if (t.contains("F")) F = parse_cochain(t["F"]);
            if (t.contains("G")) G = parse_cochain(t["G"]);
            if (F.degree != 2 || G.degree != 3 || F.dimT != base.dim || F.dimV != base.dim ||
                G.dimT != base.dim || G.dimV != base.dim)
                throw ParseError("deformation: term cochains must be T^2->T and T^3->T");
            terms[i - 1] = CochainPair(std::move(F), std::move(G));
        }
    }
    return new_deformation(std::move(base), order, std::move(terms));
}

inline Json deformation_json(const TruncatedDeformation& d) {
    Json j;
    j["base"] = structure_json(d.base);
    j["order"] = d.order;
    Json terms = Json::array();
    for (std::size_t i = 1; i <= d.order; ++i) {
        if (d.term(i).is_zero()) continue;
        Json t;
        t["i"] = i;
        t["F"] = cochain_json(d.term(i).even);
        t["G"] = cochain_json(d.term(i).odd);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

inline GaugeTransform parse_gauge(const Json& j, std::size_t dim) {
    detail::require_object(j, {"order", "phis"}, {}, "gauge");
    const std::size_t order = detail::get_index(j["order"], "gauge order");
    if (!j["phis"].is_array() || j["phis"].size() != order)
        throw ParseError("gauge: \"phis\" must list one matrix per order 1..N");
    std::vector<RationalMatrix> phis;
    phis.reserve(order);
    for (const auto& e : j["phis"]) phis.push_back(detail::get_matrix(e, dim, dim, "gauge phi"));
    return new_gauge(dim, order, std::move(phis));
}

inline Json gauge_json(const GaugeTransform& g) {
    Json j;
    j["order"] = g.order;
    Json phis = Json::array();
    for (const auto& p : g.phis) phis.push_back(detail::matrix_json(p));
    j["phis"] = std::move(phis);
    return j;
}

// ---- cohomology reports -------------------------------------------------------

inline std::string level_label(std::size_t p) {
    if (p == 0) return "1";
    if (p == 1) return "2-3";
    if (p == 2) return "4-5";
    return "2p:" + std::to_string(p);
}

inline std::size_t parse_level_label(const std::string& s) {
    if (s == "1") return 0;
    if (s == "2-3") return 1;
    if (s == "4-5") return 2;
    if (s.rfind("2p:", 0) == 0) {
        std::size_t p = 0;
        for (char ch : s.substr(3)) {
            if (ch < '0' || ch > '9') throw ParseError("bad level: " + s);
            p = p * 10 + static_cast<std::size_t>(ch - '0');
        }
        if (p < 1) throw ParseError("bad level: " + s);
        return p;
    }
    throw ParseError("bad level: " + s);
}

inline Json cohomology_report_json(const CohomologyReport& rep) {
    Json j;
    j["level"] = level_label(rep.p);
    j["dimZ"] = Json::array({rep.dimZ_even, rep.dimZ_odd});
    j["dimB"] = rep.dimB;
    j["dimH"] = rep.dimH;
    Json reps = Json::array();
    for (const auto& f : rep.derivations) reps.push_back(one_cochain_json(f));
    for (const auto& pr : rep.representatives) {
        Json e;
        e["F"] = cochain_json(pr.even);
        e["G"] = cochain_json(pr.odd);
        reps.push_back(std::move(e));
    }
    j["representatives"] = std::move(reps);
    return j;
}

/// Rebuilds an in-memory report from its JSON document (the pair-space
/// cocycle dimension is dimB + dimH).
inline CohomologyReport parse_cohomology_report(const Json& j) {
    detail::require_object(j, {"level", "dimZ", "dimB", "dimH", "representatives"}, {},
                           "cohomology report");
    CohomologyReport rep;
    if (!j["level"].is_string()) throw ParseError("cohomology report: level label expected");
    rep.p = parse_level_label(j["level"].get<std::string>());
    if (!j["dimZ"].is_array() || j["dimZ"].size() != 2)
        throw ParseError("cohomology report: dimZ must be [even, odd]");
    rep.dimZ_even = detail::get_index(j["dimZ"][0], "dimZ");
    rep.dimZ_odd = detail::get_index(j["dimZ"][1], "dimZ");
    rep.dimB = detail::get_index(j["dimB"], "dimB");
    rep.dimH = detail::get_index(j["dimH"], "dimH");
    rep.dimZ = rep.dimB + rep.dimH;
    for (const auto& e : j["representatives"]) {
        if (rep.p == 0) {
            rep.derivations.push_back(parse_one_cochain(e));
        } else {
            detail::require_object(e, {"F", "G"}, {}, "representative");
            rep.representatives.emplace_back(parse_cochain(e["F"]), parse_cochain(e["G"]));
        }
    }
    return rep;
}

}  // namespace lya
