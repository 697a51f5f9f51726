#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "lya/algebra.hpp"
#include "lya/cochain.hpp"
#include "lya/cohomology.hpp"
#include "lya/errors.hpp"
#include "lya/matrix.hpp"
#include "lya/representation.hpp"

namespace lya {

/// The binary product of T as a degree-2 cochain with values in T.
inline Cochain product_cochain(const LYAStructure& s) {
    Cochain c(2, s.dim, s.dim);
    std::size_t tup[2];
    for (tup[0] = 0; tup[0] < s.dim; ++tup[0])
        for (tup[1] = 0; tup[1] < s.dim; ++tup[1]) {
            Scalar* blk = c.block(c.flat(tup));
            const Scalar* row = s.bin_row(tup[0], tup[1]);
            for (std::size_t k = 0; k < s.dim; ++k) blk[k] = row[k];
        }
    return c;
}

/// The ternary product of T as a degree-3 cochain with values in T.
inline Cochain bracket_cochain(const LYAStructure& s) {
    Cochain c(3, s.dim, s.dim);
    std::size_t tup[3];
    for (tup[0] = 0; tup[0] < s.dim; ++tup[0])
        for (tup[1] = 0; tup[1] < s.dim; ++tup[1])
            for (tup[2] = 0; tup[2] < s.dim; ++tup[2]) {
                Scalar* blk = c.block(c.flat(tup));
                const Scalar* row = s.ter_row(tup[0], tup[1], tup[2]);
                for (std::size_t k = 0; k < s.dim; ++k) blk[k] = row[k];
            }
    return c;
}

/// Deformation of the products of `base` truncated at t^order: term i holds
/// (F_i, G_i); F_0, G_0 are the base products themselves.
struct TruncatedDeformation {
    LYAStructure base;
    std::size_t order = 0;
    std::vector<CochainPair> terms;  // index i-1 holds (F_i, G_i)

    const CochainPair& term(std::size_t i) const {
        if (i < 1 || i > order) throw IndexOutOfRange("deformation term index");
        return terms[i - 1];
    }

    friend bool operator==(const TruncatedDeformation&, const TruncatedDeformation&) = default;
};

inline TruncatedDeformation new_deformation(LYAStructure base, std::size_t order,
                                            std::vector<CochainPair> terms) {
    if (terms.size() != order) throw ShapeError("deformation: one term pair per order 1..N");
    for (const auto& t : terms) {
        if (t.level() != 1) throw ShapeError("deformation terms must be (degree 2, degree 3)");
        if (t.even.dimT != base.dim || t.even.dimV != base.dim)
            throw DimensionMismatch("deformation terms must map T^d -> T");
        if (auto v = alternation_violation(t.even))
            throw ShapeError("deformation F term violates pair alternation");
        if (auto v = alternation_violation(t.odd))
            throw ShapeError("deformation G term violates pair alternation");
    }
    TruncatedDeformation d;
    d.base = std::move(base);
    d.order = order;
    d.terms = std::move(terms);
    return d;
}

inline TruncatedDeformation null_deformation(const LYAStructure& base, std::size_t order) {
    std::vector<CochainPair> terms(order, zero_pair(1, base.dim, base.dim));
    return new_deformation(base, order, std::move(terms));
}

/// Base change Phi_t = 1_T + t phi_1 + ... + t^N phi_N (leading identity
/// implied, so the truncated series is invertible).
struct GaugeTransform {
    std::size_t order = 0;
    std::vector<RationalMatrix> phis;  // phi_1..phi_N, each dim x dim

    friend bool operator==(const GaugeTransform&, const GaugeTransform&) = default;
};

inline GaugeTransform new_gauge(std::size_t dim, std::size_t order,
                                std::vector<RationalMatrix> phis) {
    if (phis.size() != order) throw ShapeError("gauge: one matrix per order 1..N");
    for (const auto& p : phis)
        if (p.rows != dim || p.cols != dim) throw DimensionMismatch("gauge matrix shape");
    GaugeTransform g;
    g.order = order;
    g.phis = std::move(phis);
    return g;
}

inline GaugeTransform identity_gauge(std::size_t dim, std::size_t order) {
    return new_gauge(dim, order, std::vector<RationalMatrix>(order, RationalMatrix(dim, dim)));
}

namespace detail {

inline RationalMatrix gauge_coeff(const GaugeTransform& g, std::size_t dim, std::size_t k) {
    if (k == 0) return RationalMatrix::identity(dim);
    if (k <= g.order) return g.phis[k - 1];
    return RationalMatrix(dim, dim);
}

}  // namespace detail

/// Coefficients of the inverse series: psi_0 = 1, psi_j = -sum phi_a psi_{j-a}.
inline GaugeTransform invert_gauge(const GaugeTransform& g) {
    if (g.order == 0) return g;
    const std::size_t n = g.phis.front().rows;
    std::vector<RationalMatrix> psis;
    psis.reserve(g.order);
    for (std::size_t j = 1; j <= g.order; ++j) {
        RationalMatrix acc(n, n);
        for (std::size_t a = 1; a <= j; ++a) {
            const RationalMatrix& prev =
                (j - a == 0) ? RationalMatrix::identity(n) : psis[j - a - 1];
            acc = acc - detail::gauge_coeff(g, n, a) * prev;
        }
        psis.push_back(std::move(acc));
    }
    GaugeTransform out;
    out.order = g.order;
    out.phis = std::move(psis);
    return out;
}

namespace detail {

inline Vector matrix_column(const RationalMatrix& m, std::size_t c) {
    Vector out(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) out[r] = m.at(r, c);
    return out;
}

inline std::vector<Cochain> even_terms(const TruncatedDeformation& d) {
    std::vector<Cochain> out;
    out.push_back(product_cochain(d.base));
    for (const auto& t : d.terms) out.push_back(t.even);
    return out;
}

inline std::vector<Cochain> odd_terms(const TruncatedDeformation& d) {
    std::vector<Cochain> out;
    out.push_back(bracket_cochain(d.base));
    for (const auto& t : d.terms) out.push_back(t.odd);
    return out;
}

}  // namespace detail

/// Base change of a truncated deformation: each product is conjugated by
/// Phi_t and re-expanded, f'_t(a,b) = Phi_t^{-1} f_t(Phi_t a, Phi_t b).
inline TruncatedDeformation apply_gauge(const TruncatedDeformation& d, const GaugeTransform& g) {
    const std::size_t n = d.base.dim;
    for (const auto& p : g.phis)
        if (p.rows != n || p.cols != n) throw ShapeError("apply_gauge: gauge matrix shape");
    const std::size_t N = std::min(d.order, g.order == 0 ? d.order : g.order);
    const GaugeTransform inv = invert_gauge(g);
    const std::vector<Cochain> F = detail::even_terms(d);
    const std::vector<Cochain> G = detail::odd_terms(d);
    auto phi_col = [&](std::size_t k, std::size_t a) {
        if (k == 0) return unit_vector(n, a);
        if (k <= g.order) return detail::matrix_column(g.phis[k - 1], a);
        return Vector(n, Scalar(0));
    };
    auto psi = [&](std::size_t k) { return detail::gauge_coeff(inv, n, k); };

    std::vector<Cochain> Fp, Gp;
    for (std::size_t w = 0; w <= N; ++w) {
        Cochain fo(2, n, n);
        std::size_t tup[2];
        for (tup[0] = 0; tup[0] < n; ++tup[0])
            for (tup[1] = 0; tup[1] < n; ++tup[1]) {
                Vector acc(n, Scalar(0));
                for (std::size_t u = 0; u <= w; ++u) {
                    Vector inner(n, Scalar(0));
                    for (std::size_t i = 0; i <= w - u && i < F.size(); ++i)
                        for (std::size_t k = 0; k + i <= w - u; ++k) {
                            std::size_t l = w - u - i - k;
                            Vector val = evaluate_cochain(
                                F[i], {phi_col(k, tup[0]), phi_col(l, tup[1])});
                            add_to(inner, val);
                        }
                    add_to(acc, psi(u) * inner);
                }
                Scalar* blk = fo.block(fo.flat(tup));
                for (std::size_t j = 0; j < n; ++j) blk[j] = std::move(acc[j]);
            }
        Fp.push_back(std::move(fo));

        Cochain go(3, n, n);
        std::size_t t3[3];
        for (t3[0] = 0; t3[0] < n; ++t3[0])
            for (t3[1] = 0; t3[1] < n; ++t3[1])
                for (t3[2] = 0; t3[2] < n; ++t3[2]) {
                    Vector acc(n, Scalar(0));
                    for (std::size_t u = 0; u <= w; ++u) {
                        Vector inner(n, Scalar(0));
                        for (std::size_t i = 0; i <= w - u && i < G.size(); ++i)
                            for (std::size_t k = 0; k + i <= w - u; ++k)
                                for (std::size_t l = 0; l + k + i <= w - u; ++l) {
                                    std::size_t q = w - u - i - k - l;
                                    Vector val = evaluate_cochain(
                                        G[i], {phi_col(k, t3[0]), phi_col(l, t3[1]),
                                               phi_col(q, t3[2])});
                                    add_to(inner, val);
                                }
                        add_to(acc, psi(u) * inner);
                    }
                    Scalar* blk = go.block(go.flat(t3));
                    for (std::size_t j = 0; j < n; ++j) blk[j] = std::move(acc[j]);
                }
        Gp.push_back(std::move(go));
    }

    if (!(Fp[0] == F[0]) || !(Gp[0] == G[0]))
        throw InternalError("apply_gauge: order-0 products changed");
    std::vector<CochainPair> terms;
    for (std::size_t i = 1; i <= N; ++i) terms.emplace_back(std::move(Fp[i]), std::move(Gp[i]));
    return new_deformation(d.base, N, std::move(terms));
}

// ---- the deformation equations --------------------------------------------

/// Names of the four order-n equation families, in the order checked. They
/// deform the cyclic-sum axiom, its ternary-of-binary companion, and the two
/// Leibniz axioms of the base structure.
inline const char* family_name(std::size_t k) {
    static const char* names[4] = {"cyclic sum", "ternary cyclic", "binary Leibniz",
                                   "ternary Leibniz"};
    if (k >= 4) throw IndexOutOfRange("family index");
    return names[k];
}

inline std::size_t family_arity(std::size_t k) {
    static const std::size_t ar[4] = {3, 4, 4, 5};
    if (k >= 4) throw IndexOutOfRange("family index");
    return ar[k];
}

struct FamilyStatus {
    bool pass = true;
    std::vector<std::size_t> witness;
    Vector defect;

    friend bool operator==(const FamilyStatus&, const FamilyStatus&) = default;
};

struct DeformationReport {
    std::size_t order = 0;
    std::vector<std::array<FamilyStatus, 4>> orders;  // index n = 0..order
    bool pass = true;

    friend bool operator==(const DeformationReport&, const DeformationReport&) = default;
};

namespace detail {

/// Order-n residual of equation family `fam` at the basis tuple `x`.
inline Vector family_residual(const std::vector<Cochain>& F, const std::vector<Cochain>& G,
                              std::size_t n_ord, std::size_t fam, const std::size_t* x,
                              std::size_t dim) {
    Vector acc(dim, Scalar(0));
    switch (fam) {
        case 0: {  // sum_cyc G_n(a,b,c) + sum_{i+j=n} sum_cyc F_i(F_j(a,b), c)
            const std::size_t perms[3][3] = {{x[0], x[1], x[2]}, {x[1], x[2], x[0]},
                                             {x[2], x[0], x[1]}};
            if (n_ord < G.size())
                for (const auto& pm : perms) {
                    const Scalar* blk = G[n_ord].block_at(pm);
                    for (std::size_t j = 0; j < dim; ++j) acc[j] += blk[j];
                }
            for (std::size_t i = 0; i <= n_ord; ++i) {
                std::size_t jj = n_ord - i;
                if (i >= F.size() || jj >= F.size()) continue;
                for (const auto& pm : perms) {
                    std::size_t p2[2] = {pm[0], pm[1]};
                    const Scalar* val = F[jj].block_at(p2);
                    std::size_t tup[2] = {0, pm[2]};
                    accumulate_slot(F[i], tup, 0, val, acc, Scalar(1));
                }
            }
            break;
        }
        case 1: {  // sum_{i+j=n} sum_cyc3 G_i(F_j(a,b), c, d)
            const std::size_t perms[3][3] = {{x[0], x[1], x[2]}, {x[1], x[2], x[0]},
                                             {x[2], x[0], x[1]}};
            for (std::size_t i = 0; i <= n_ord; ++i) {
                std::size_t jj = n_ord - i;
                if (i >= G.size() || jj >= F.size()) continue;
                for (const auto& pm : perms) {
                    std::size_t p2[2] = {pm[0], pm[1]};
                    const Scalar* val = F[jj].block_at(p2);
                    std::size_t tup[3] = {0, pm[2], x[3]};
                    accumulate_slot(G[i], tup, 0, val, acc, Scalar(1));
                }
            }
            break;
        }
        case 2: {  // sum [G_i(a,b,F_j(c,d)) - F_i(G_j(a,b,c),d) - F_i(c,G_j(a,b,d))]
            for (std::size_t i = 0; i <= n_ord; ++i) {
                std::size_t jj = n_ord - i;
                if (i >= F.size() || jj >= F.size()) continue;
                std::size_t cd[2] = {x[2], x[3]};
                std::size_t t1[3] = {x[0], x[1], 0};
                accumulate_slot(G[i], t1, 2, F[jj].block_at(cd), acc, Scalar(1));
                std::size_t abc[3] = {x[0], x[1], x[2]};
                std::size_t t2[2] = {0, x[3]};
                accumulate_slot(F[i], t2, 0, G[jj].block_at(abc), acc, Scalar(-1));
                std::size_t abd[3] = {x[0], x[1], x[3]};
                std::size_t t3[2] = {x[2], 0};
                accumulate_slot(F[i], t3, 1, G[jj].block_at(abd), acc, Scalar(-1));
            }
            break;
        }
        case 3: {  // sum [G_i(a,b,G_j(c,d,e)) - G_i(G_j(a,b,c),d,e)
                   //      - G_i(c,G_j(a,b,d),e) - G_i(c,d,G_j(a,b,e))]
            for (std::size_t i = 0; i <= n_ord; ++i) {
                std::size_t jj = n_ord - i;
                if (i >= G.size() || jj >= G.size()) continue;
                std::size_t cde[3] = {x[2], x[3], x[4]};
                std::size_t t1[3] = {x[0], x[1], 0};
                accumulate_slot(G[i], t1, 2, G[jj].block_at(cde), acc, Scalar(1));
                std::size_t abc[3] = {x[0], x[1], x[2]};
                std::size_t t2[3] = {0, x[3], x[4]};
                accumulate_slot(G[i], t2, 0, G[jj].block_at(abc), acc, Scalar(-1));
                std::size_t abd[3] = {x[0], x[1], x[3]};
                std::size_t t3[3] = {x[2], 0, x[4]};
                accumulate_slot(G[i], t3, 1, G[jj].block_at(abd), acc, Scalar(-1));
                std::size_t abe[3] = {x[0], x[1], x[4]};
                std::size_t t4[3] = {x[2], x[3], 0};
                accumulate_slot(G[i], t4, 2, G[jj].block_at(abe), acc, Scalar(-1));
            }
            break;
        }
        default:
            throw IndexOutOfRange("family index");
    }
    return acc;
}

}  // namespace detail

/// Evaluates the four order-n equation families for n = 0..order on all basis
/// tuples; order 0 reproduces the axioms of the base structure.
inline DeformationReport check_deformation(const TruncatedDeformation& d) {
    const std::size_t dim = d.base.dim;
    for (const auto& t : d.terms) {
        if (alternation_violation(t.even) || alternation_violation(t.odd))
            throw ShapeError("check_deformation: term violates pair alternation");
    }
    const std::vector<Cochain> F = detail::even_terms(d);
    const std::vector<Cochain> G = detail::odd_terms(d);
    DeformationReport rep;
    rep.order = d.order;
    rep.orders.resize(d.order + 1);
    for (std::size_t n_ord = 0; n_ord <= d.order; ++n_ord) {
        for (std::size_t fam = 0; fam < 4; ++fam) {
            FamilyStatus& st = rep.orders[n_ord][fam];
            const std::size_t arity = family_arity(fam);
            std::vector<std::size_t> x(arity, 0);
            const std::size_t total = Cochain::tuple_count_of(arity, dim);
            for (std::size_t idx = 0; idx < total; ++idx, detail::next_tuple(x, dim)) {
                Vector res = detail::family_residual(F, G, n_ord, fam, x.data(), dim);
                if (!is_zero(res)) {
                    st.pass = false;
                    st.witness = x;
                    st.defect = std::move(res);
                    rep.pass = false;
                    break;
                }
            }
        }
    }
    return rep;
}

struct InfinitesimalReport {
    CochainPair pair;
    bool is_cocycle = false;
    bool is_coboundary = false;
};

inline InfinitesimalReport infinitesimal(const TruncatedDeformation& d) {
    if (d.order < 1) throw EquationsViolated("infinitesimal: order >= 1 required");
    TruncatedDeformation trunc = new_deformation(d.base, 1, {d.terms[0]});
    if (!check_deformation(trunc).pass)
        throw EquationsViolated("infinitesimal: deformation equations fail through order 1");
    Representation r = regular_representation(d.base);
    PairClassification cls = classify_pair(d.base, r, d.terms[0]);
    return {d.terms[0], cls.is_cocycle, cls.is_coboundary};
}

// ---- the two products of the obstruction calculus --------------------------

/// F_i (star) G_{n-i}: (a,b,c,d) -> Gi(a,b,F(c,d)) - Fi(Gn(a,b,c),d)
/// - Fi(c,Gn(a,b,d)), where F = F_{n-i} and Gn = G_{n-i}.
inline Cochain star(const LYAStructure& t, const Cochain& F, const Cochain& Gi, const Cochain& Gn,
                    const Cochain& Fi) {
    const std::size_t n = t.dim;
    for (const Cochain* c : {&F, &Fi})
        if (c->degree != 2 || c->dimT != n || c->dimV != n)
            throw DimensionMismatch("star: degree-2 inputs must map T^2 -> T");
    for (const Cochain* c : {&Gi, &Gn})
        if (c->degree != 3 || c->dimT != n || c->dimV != n)
            throw DimensionMismatch("star: degree-3 inputs must map T^3 -> T");
    Cochain out(4, n, n);
    std::size_t x[4];
    for (x[0] = 0; x[0] < n; ++x[0])
        for (x[1] = 0; x[1] < n; ++x[1])
            for (x[2] = 0; x[2] < n; ++x[2])
                for (x[3] = 0; x[3] < n; ++x[3]) {
                    Vector acc(n, Scalar(0));
                    std::size_t cd[2] = {x[2], x[3]};
                    std::size_t t1[3] = {x[0], x[1], 0};
                    detail::accumulate_slot(Gi, t1, 2, F.block_at(cd), acc, Scalar(1));
                    std::size_t abc[3] = {x[0], x[1], x[2]};
                    std::size_t t2[2] = {0, x[3]};
                    detail::accumulate_slot(Fi, t2, 0, Gn.block_at(abc), acc, Scalar(-1));
                    std::size_t abd[3] = {x[0], x[1], x[3]};
                    std::size_t t3[2] = {x[2], 0};
                    detail::accumulate_slot(Fi, t3, 1, Gn.block_at(abd), acc, Scalar(-1));
                    Scalar* blk = out.block(out.flat(x));
                    for (std::size_t j = 0; j < n; ++j) blk[j] = std::move(acc[j]);
                }
    if (alternation_violation(out)) throw InternalError("star output violates pair alternation");
    return out;
}

/// G_i (triangle) G_{n-i}: the degree-5 product of two degree-3 cochains.
inline Cochain triangle(const LYAStructure& t, const Cochain& Gi, const Cochain& Gn) {
    const std::size_t n = t.dim;
    for (const Cochain* c : {&Gi, &Gn})
        if (c->degree != 3 || c->dimT != n || c->dimV != n)
            throw DimensionMismatch("triangle: inputs must map T^3 -> T");
    Cochain out(5, n, n);
    std::size_t x[5];
    for (x[0] = 0; x[0] < n; ++x[0])
        for (x[1] = 0; x[1] < n; ++x[1])
            for (x[2] = 0; x[2] < n; ++x[2])
                for (x[3] = 0; x[3] < n; ++x[3])
                    for (x[4] = 0; x[4] < n; ++x[4]) {
                        Vector acc(n, Scalar(0));
                        std::size_t cde[3] = {x[2], x[3], x[4]};
                        std::size_t t1[3] = {x[0], x[1], 0};
                        detail::accumulate_slot(Gi, t1, 2, Gn.block_at(cde), acc, Scalar(1));
                        std::size_t abc[3] = {x[0], x[1], x[2]};
                        std::size_t t2[3] = {0, x[3], x[4]};
                        detail::accumulate_slot(Gi, t2, 0, Gn.block_at(abc), acc, Scalar(-1));
                        std::size_t abd[3] = {x[0], x[1], x[3]};
                        std::size_t t3[3] = {x[2], 0, x[4]};
                        detail::accumulate_slot(Gi, t3, 1, Gn.block_at(abd), acc, Scalar(-1));
                        std::size_t abe[3] = {x[0], x[1], x[4]};
                        std::size_t t4[3] = {x[2], x[3], 0};
                        detail::accumulate_slot(Gi, t4, 2, Gn.block_at(abe), acc, Scalar(-1));
                        Scalar* blk = out.block(out.flat(x));
                        for (std::size_t j = 0; j < n; ++j) blk[j] = std::move(acc[j]);
                    }
    if (alternation_violation(out))
        throw InternalError("triangle output violates pair alternation");
    return out;
}

struct ObstructionPair {
    Cochain even;  // degree 4: sum F_i * G_{n-i}
    Cochain odd;   // degree 5: sum G_i (triangle) G_{n-i}
    std::size_t order = 0;
    bool in_Z45 = false;

    friend bool operator==(const ObstructionPair&, const ObstructionPair&) = default;
};

inline ObstructionPair obstruction(const TruncatedDeformation& d, std::size_t n_ord) {
    if (n_ord < 2 || n_ord > d.order + 1)
        throw EquationsViolated("obstruction: terms 1..n-1 must be present");
    TruncatedDeformation trunc = new_deformation(
        d.base, n_ord - 1, std::vector<CochainPair>(d.terms.begin(),
                                                    d.terms.begin() + (n_ord - 1)));
    if (!check_deformation(trunc).pass)
        throw EquationsViolated("obstruction: deformation equations fail below the given order");
    const std::size_t n = d.base.dim;
    Cochain even(4, n, n), odd(5, n, n);
    for (std::size_t i = 1; i <= n_ord - 1; ++i) {
        const CochainPair& ti = d.term(i);
        const CochainPair& tj = d.term(n_ord - i);
        even = even + star(d.base, tj.even, ti.odd, tj.odd, ti.even);
        odd = odd + triangle(d.base, ti.odd, tj.odd);
    }
    Representation r = regular_representation(d.base);
    ObstructionPair out{std::move(even), std::move(odd), n_ord, false};
    out.in_Z45 = delta(d.base, r, CochainPair(out.even, out.odd)).is_zero();
    return out;
}

// ---- order-by-order integration --------------------------------------------

struct IntegrationStep {
    CochainPair term;
    TruncatedDeformation extended;
};

struct IntegrationObstruction {
    std::size_t order = 0;
    std::size_t family = 0;  // index into family_name
    std::vector<std::size_t> witness;
    Vector defect;
    std::optional<ObstructionPair> pair;  // the degree-(4,5) sums, when order >= 2

    friend bool operator==(const IntegrationObstruction&, const IntegrationObstruction&) = default;
};

using IntegrateResult = std::variant<IntegrationStep, IntegrationObstruction>;

namespace detail {

/// Right-hand sides of the order-n system: the negated convolution sums of
/// the four families restricted to indices i,j >= 1 (the unknown-order terms
/// are exactly the coboundary operators applied to (F_n, G_n)).
inline std::array<Cochain, 4> middle_sums(const TruncatedDeformation& d, std::size_t n_ord) {
    const std::size_t dim = d.base.dim;
    std::array<Cochain, 4> out{Cochain(3, dim, dim), Cochain(4, dim, dim), Cochain(4, dim, dim),
                               Cochain(5, dim, dim)};
    std::vector<Cochain> F = even_terms(d);
    std::vector<Cochain> G = odd_terms(d);
    // reuse family_residual with the order-0 and order-n slots removed: zero
    // out F_0/G_0 and pass n_ord (terms beyond d.order read as absent)
    std::vector<Cochain> Fm = F, Gm = G;
    Fm[0] = Cochain(2, dim, dim);
    Gm[0] = Cochain(3, dim, dim);
    for (std::size_t fam = 0; fam < 4; ++fam) {
        const std::size_t arity = family_arity(fam);
        std::vector<std::size_t> x(arity, 0);
        const std::size_t total = Cochain::tuple_count_of(arity, dim);
        for (std::size_t idx = 0; idx < total; ++idx, next_tuple(x, dim)) {
            Vector res = family_residual(Fm, Gm, n_ord, fam, x.data(), dim);
            Scalar* blk = out[fam].block(idx);
            for (std::size_t j = 0; j < dim; ++j) blk[j] = std::move(res[j]);
        }
    }
    return out;
}

}  // namespace detail

/// Solves the order-(D.order+1) equations for the next term (F_n, G_n): the
/// four coboundary operators applied to the unknown pair must equal the
/// negated convolution sums. Returns the rref-canonical solution, or the
/// blocking family and witness when the joint linear system is inconsistent.
inline IntegrateResult integrate_step(const TruncatedDeformation& d) {
    if (!check_deformation(d).pass)
        throw EquationsViolated("integrate_step: equations fail at the current order");
    const std::size_t n = d.base.dim;
    const std::size_t n_ord = d.order + 1;
    Representation r = regular_representation(d.base);

    std::array<Cochain, 4> sums = detail::middle_sums(d, n_ord);
    if (alternation_violation(sums[2]) || alternation_violation(sums[3]))
        throw InternalError("integrate_step: convolution sums violate alternation");

    RationalMatrix a_star = delta_star_matrix(d.base, r);            // families 1, 2
    RationalMatrix a_delta = delta_matrix(d.base, r, 1);             // families 3, 4
    const std::size_t rows1 = Cochain::tuple_count_of(3, n) * n;
    const std::size_t rows3 = cochain_space_dim(n, n, 4);
    std::array<Vector, 4> rhs;
    rhs[0] = -sums[0].v;
    rhs[1] = -sums[1].v;
    rhs[2] = -canonical_coordinates(sums[2]);
    rhs[3] = -canonical_coordinates(sums[3]);

    RationalMatrix a_full = detail::vstack(a_star, a_delta);
    Vector rhs_full = rhs[0];
    for (std::size_t k = 1; k < 4; ++k)
        rhs_full.insert(rhs_full.end(), rhs[k].begin(), rhs[k].end());

    std::optional<Vector> sol = solve(a_full, rhs_full);
    if (sol) {
        CochainPair term = pair_from_coordinates(1, n, n, *sol);
        std::vector<CochainPair> terms = d.terms;
        terms.push_back(term);
        return IntegrationStep{term, new_deformation(d.base, n_ord, std::move(terms))};
    }

    // locate the first family whose addition makes the stacked system
    // inconsistent, then report the residual of the canonical solution of the
    // preceding families at the first offending coordinate
    std::array<std::pair<std::size_t, std::size_t>, 4> spans;  // row ranges per family
    spans[0] = {0, rows1};
    spans[1] = {rows1, a_star.rows};
    spans[2] = {a_star.rows, a_star.rows + rows3};
    spans[3] = {a_star.rows + rows3, a_full.rows};
    IntegrationObstruction obs;
    obs.order = n_ord;
    for (std::size_t fam = 0; fam < 4; ++fam) {
        RationalMatrix head(spans[fam].second, a_full.cols);
        std::copy(a_full.a.begin(),
                  a_full.a.begin() + static_cast<std::ptrdiff_t>(spans[fam].second * a_full.cols),
                  head.a.begin());
        Vector rhs_head(rhs_full.begin(),
                        rhs_full.begin() + static_cast<std::ptrdiff_t>(spans[fam].second));
        if (solve(head, rhs_head)) continue;
        obs.family = fam;
        Vector base_sol(a_full.cols, Scalar(0));
        if (fam > 0) {
            RationalMatrix prev(spans[fam].first, a_full.cols);
            std::copy(a_full.a.begin(),
                      a_full.a.begin() +
                          static_cast<std::ptrdiff_t>(spans[fam].first * a_full.cols),
                      prev.a.begin());
            Vector rhs_prev(rhs_full.begin(),
                            rhs_full.begin() + static_cast<std::ptrdiff_t>(spans[fam].first));
            base_sol = *solve(prev, rhs_prev);
        }
        // residual of that solution over the blocking family's rows
        const std::size_t lo = spans[fam].first, hi = spans[fam].second;
        Vector resid(hi - lo, Scalar(0));
        for (std::size_t rr = lo; rr < hi; ++rr) {
            Scalar v(0);
            for (std::size_t c = 0; c < a_full.cols; ++c)
                if (a_full.at(rr, c) != 0) v += a_full.at(rr, c) * base_sol[c];
            resid[rr - lo] = v - rhs_full[rr];
        }
        std::size_t first = 0;
        while (first < resid.size() && resid[first] == 0) ++first;
        if (first == resid.size()) throw InternalError("integrate_step: lost inconsistency");
        const std::size_t arity = family_arity(fam);
        if (fam < 2) {
            std::size_t tuple_idx = first / n;
            obs.witness.assign(arity, 0);
            for (std::size_t i = arity; i-- > 0;) {
                obs.witness[i] = tuple_idx % n;
                tuple_idx /= n;
            }
            obs.defect.assign(n, Scalar(0));
            for (std::size_t j = 0; j < n; ++j) resid[(first / n) * n + j].swap(obs.defect[j]);
        } else {
            auto keys = basis_keys(n, n, arity);
            const CochainBasisKey& key = keys[first];
            obs.witness.clear();
            for (auto [i1, i2] : key.pairs) {
                obs.witness.push_back(i1);
                obs.witness.push_back(i2);
            }
            if (key.free_slot) obs.witness.push_back(*key.free_slot);
            obs.defect.assign(n, Scalar(0));
            const std::size_t per_target = keys.size() / n;
            const std::size_t combo = first % per_target;
            for (std::size_t j = 0; j < n; ++j) obs.defect[j] = resid[j * per_target + combo];
        }
        break;
    }
    if (n_ord >= 2) obs.pair = obstruction(d, n_ord);
    return obs;
}

// ---- rigidity ---------------------------------------------------------------

struct TrivializeResult {
    bool trivialized = false;
    std::size_t obstructed_order = 0;            // meaningful when !trivialized
    std::optional<CochainPair> obstruction_class;
    Vector class_coordinates;                    // in the h23 representative basis
    std::vector<GaugeTransform> gauges;
    TruncatedDeformation residual;

    friend bool operator==(const TrivializeResult&, const TrivializeResult&) = default;
};

/// Iteratively gauges away the lowest nonzero order: each (F_r, G_r) is a
/// cocycle pair by the deformation equations; if it is a coboundary
/// delta1(alpha), gauging by Phi = 1 - t^r alpha removes it.
inline TrivializeResult trivialize(const TruncatedDeformation& d) {
    if (!check_deformation(d).pass)
        throw EquationsViolated("trivialize: deformation equations fail");
    const std::size_t n = d.base.dim;
    Representation r = regular_representation(d.base);
    RationalMatrix a = delta1_matrix(d.base, r);
    TrivializeResult out;
    out.residual = d;
    std::size_t prev_r = 0;
    for (std::size_t iter = 0; iter <= d.order; ++iter) {
        std::size_t first = 0;
        for (std::size_t i = 1; i <= out.residual.order; ++i)
            if (!out.residual.term(i).is_zero()) {
                first = i;
                break;
            }
        if (first == 0) {
            out.trivialized = true;
            return out;
        }
        if (first <= prev_r) throw InternalError("trivialize: order did not increase");
        prev_r = first;
        const CochainPair& pair = out.residual.term(first);
        auto [o3, o4] = delta_star(d.base, r, pair);
        if (!delta(d.base, r, pair).is_zero() || !o3.is_zero() || !o4.is_zero())
            throw InternalError("trivialize: lowest nonzero term is not a cocycle pair");
        std::optional<Vector> alpha = solve(a, pair_coordinates(pair));
        if (!alpha) {
            out.trivialized = false;
            out.obstructed_order = first;
            out.obstruction_class = pair;
            out.class_coordinates = h_class_coordinates(d.base, r, pair);
            return out;
        }
        OneCochain ac = one_cochain_from_coordinates(n, n, *alpha);
        std::vector<RationalMatrix> phis(out.residual.order, RationalMatrix(n, n));
        phis[first - 1] = -ac.m;
        GaugeTransform g = new_gauge(n, out.residual.order, std::move(phis));
        out.residual = apply_gauge(out.residual, g);
        out.gauges.push_back(std::move(g));
    }
    throw InternalError("trivialize: did not terminate within the truncation order");
}

/// Equivalent deformations have first-order terms whose difference is the
/// coboundary of a degree-1 cochain; checks that for d2 = apply_gauge(d1, g).
inline bool infinitesimals_agree(const TruncatedDeformation& d1, const TruncatedDeformation& d2,
                                 const GaugeTransform& g) {
    TruncatedDeformation expect = apply_gauge(d1, g);
    if (!(expect == d2)) throw NotEquivalent("infinitesimals_agree: D2 != apply_gauge(D1, P)");
    if (d1.order < 1 || d2.order < 1) return true;
    CochainPair diff(d2.term(1).even - d1.term(1).even, d2.term(1).odd - d1.term(1).odd);
    Representation r = regular_representation(d1.base);
    return solve(delta1_matrix(d1.base, r), pair_coordinates(diff)).has_value();
}

}  // namespace lya
