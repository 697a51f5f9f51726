#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lya/algebra.hpp"
#include "lya/cochain.hpp"
#include "lya/cohomology.hpp"
#include "lya/deformation.hpp"
#include "lya/errors.hpp"
#include "lya/matrix.hpp"
#include "lya/representation.hpp"

namespace lya {

// ---- the bundled example structures ----------------------------------------

inline LYAStructure example_abelian(std::size_t n) { return new_lya(n, {}, {}); }

/// Two-dimensional solvable algebra: e0 e1 = e0, zero ternary.
inline LYAStructure example_solvable_b() {
    return new_lya(2, {{0, 1, 0, Scalar(1)}, {1, 0, 0, Scalar(-1)}}, {});
}

/// Two-dimensional triple system: [e0,e1,e0] = e1, zero binary.
inline LYAStructure example_triple2() {
    return new_lya(2, {}, {{0, 1, 0, 1, Scalar(1)}, {1, 0, 0, 1, Scalar(-1)}});
}

/// Both products nonzero on dimension 2: the solvable product plus
/// [e0,e1,e1] = e0.
inline LYAStructure example_mixed2() {
    return new_lya(2, {{0, 1, 0, Scalar(1)}, {1, 0, 0, Scalar(-1)}},
                   {{0, 1, 1, 0, Scalar(1)}, {1, 0, 1, 0, Scalar(-1)}});
}

/// so(3) with the cross product, zero ternary.
inline LYAStructure example_so3() {
    return new_lya(3,
                   {{0, 1, 2, Scalar(1)},
                    {1, 0, 2, Scalar(-1)},
                    {1, 2, 0, Scalar(1)},
                    {2, 1, 0, Scalar(-1)},
                    {2, 0, 1, Scalar(1)},
                    {0, 2, 1, Scalar(-1)}},
                   {});
}

inline std::vector<BinaryEntry> sl2_bracket() {
    return {{0, 1, 2, Scalar(1)},  {1, 0, 2, Scalar(-1)}, {2, 0, 0, Scalar(2)},
            {0, 2, 0, Scalar(-2)}, {2, 1, 1, Scalar(-2)}, {1, 2, 1, Scalar(2)}};
}

inline LYAStructure example_sl2(bool induced_ternary) {
    return from_lie_algebra(sl2_bracket(), 3, induced_ternary);
}

/// n = 3 algebra violating the cyclic-sum axiom (and only it).
inline LYAStructure example_jacobi_violator() {
    return new_lya(
        3, {{0, 1, 2, Scalar(1)}, {1, 0, 2, Scalar(-1)}, {1, 2, 1, Scalar(1)}, {2, 1, 1, Scalar(-1)}},
        {});
}

/// sl2 with induced ternary extended by a central basis vector e3.
inline LYAStructure example_sl2_plus_line() {
    LYAStructure s3 = example_sl2(true);
    std::vector<BinaryEntry> bin;
    std::vector<TernaryEntry> ter;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) {
                if (s3.bin(i, j, k) != 0) bin.push_back({i, j, k, s3.bin(i, j, k)});
                for (std::size_t l = 0; l < 3; ++l)
                    if (s3.ter(i, j, k, l) != 0) ter.push_back({i, j, k, l, s3.ter(i, j, k, l)});
            }
    return new_lya(4, bin, ter);
}

struct NamedStructure {
    std::string name;
    LYAStructure s;
};

inline constexpr std::size_t selftest_dim_cap = 4;

inline std::vector<NamedStructure> selftest_corpus(std::size_t dim) {
    switch (dim) {
        case 2:
            return {{"abelian2", example_abelian(2)},
                    {"solvable_b", example_solvable_b()},
                    {"triple2", example_triple2()},
                    {"mixed2", example_mixed2()}};
        case 3:
            return {{"abelian3", example_abelian(3)},
                    {"so3", example_so3()},
                    {"sl2_zero", example_sl2(false)},
                    {"sl2_induced", example_sl2(true)}};
        case 4:
            return {{"abelian4", example_abelian(4)}, {"sl2_plus_line", example_sl2_plus_line()}};
        default:
            throw IndexOutOfRange("selftest dimension must be 2, 3 or 4");
    }
}

// ---- seeded randomness -------------------------------------------------------

/// Deterministic small-rational source; the mt19937_64 stream is fixed by the
/// standard, so reports are byte-identical across platforms for a given seed.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }
    Scalar small() { return Scalar(static_cast<long long>(eng_() % 7) - 3); }

    RationalMatrix matrix(std::size_t rows, std::size_t cols) {
        RationalMatrix m(rows, cols);
        for (auto& x : m.a) x = small();
        return m;
    }

    RationalMatrix invertible(std::size_t n) {
        for (;;) {
            RationalMatrix m = matrix(n, n);
            if (rank(m) == n) return m;
        }
    }

    OneCochain one_cochain(std::size_t n, std::size_t m) {
        OneCochain f(m, n);
        f.m = matrix(m, n);
        return f;
    }

    Cochain cochain(std::size_t n, std::size_t m, std::size_t degree) {
        Vector coords(cochain_space_dim(n, m, degree));
        for (auto& x : coords) x = small();
        return cochain_from_canonical(n, m, degree, coords);
    }

    CochainPair pair(std::size_t level, std::size_t n, std::size_t m) {
        return CochainPair(cochain(n, m, 2 * level), cochain(n, m, 2 * level + 1));
    }

    GaugeTransform gauge(std::size_t n, std::size_t order) {
        std::vector<RationalMatrix> phis;
        for (std::size_t i = 0; i < order; ++i) phis.push_back(matrix(n, n));
        return new_gauge(n, order, std::move(phis));
    }

  private:
    std::mt19937_64 eng_;
};

/// Structure constants rewritten in the basis e'_i = sum_s P[s][i] e_s.
inline LYAStructure change_basis(const LYAStructure& s, const RationalMatrix& p) {
    const std::size_t n = s.dim;
    RationalMatrix pinvm(n, n);
    {
        RationalMatrix aug(n, 2 * n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = p.at(r, c);
            aug.at(r, n + r) = 1;
        }
        RrefResult rr = rref(aug);
        if (rr.rank < n) throw DimensionMismatch("change_basis: matrix not invertible");
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) pinvm.at(r, c) = rr.reduced.at(r, n + c);
    }
    std::vector<BinaryEntry> bin;
    std::vector<TernaryEntry> ter;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vector prod = binary_product(s, detail::matrix_column(p, i), detail::matrix_column(p, j));
            Vector coords = pinvm * prod;
            for (std::size_t k = 0; k < n; ++k)
                if (coords[k] != 0) bin.push_back({i, j, k, coords[k]});
            for (std::size_t k = 0; k < n; ++k) {
                Vector tr = ternary_product(s, detail::matrix_column(p, i),
                                            detail::matrix_column(p, j), detail::matrix_column(p, k));
                Vector tc = pinvm * tr;
                for (std::size_t l = 0; l < n; ++l)
                    if (tc[l] != 0) ter.push_back({i, j, k, l, tc[l]});
            }
        }
    return new_lya(n, bin, ter);
}

// ---- property suites ---------------------------------------------------------

struct SelftestResult {
    bool pass = true;
    std::string failed_property;
    std::string detail;
    std::vector<std::string> lines;

    friend bool operator==(const SelftestResult&, const SelftestResult&) = default;
};

namespace detail {

inline std::string tuple_str(const std::vector<std::size_t>& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += "e" + std::to_string(t[i]);
    }
    return out + ")";
}

}  // namespace detail

inline SelftestResult run_selftest(std::size_t dim, std::uint64_t seed) {
    SelftestResult res;
    if (dim < 2 || dim > selftest_dim_cap)
        throw IndexOutOfRange("selftest dimension must be 2, 3 or 4");
    std::vector<NamedStructure> corpus = selftest_corpus(dim);
    SeededRng rng(seed);

    auto fail = [&](const std::string& prop, const std::string& structure,
                    const std::string& detail) {
        res.pass = false;
        res.failed_property = prop;
        std::ostringstream ss;
        ss << detail << " [structure " << structure << ", dim " << dim << ", seed " << seed << "]";
        res.detail = ss.str();
        res.lines.push_back("FAIL " + prop + ": " + res.detail);
    };
    auto ok = [&](const std::string& prop) { res.lines.push_back("PASS " + prop); };

    // corpus sanity: axioms and the regular-representation relations
    for (const auto& ns : corpus) {
        if (!check_axioms(ns.s).all_pass()) {
            fail("corpus axioms", ns.name, "bundled structure fails an axiom");
            return res;
        }
        if (!check_representation(ns.s, regular_representation(ns.s)).all_pass()) {
            fail("corpus axioms", ns.name, "regular representation fails a relation");
            return res;
        }
    }
    ok("corpus axioms");

    // delta∘delta = 0, exhaustively over the degree-1 basis and on random
    // higher-level pairs
    for (const auto& ns : corpus) {
        const std::size_t n = ns.s.dim, m = n;
        Representation r = regular_representation(ns.s);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t s0 = 0; s0 < n; ++s0) {
                OneCochain f(m, n);
                f.m.at(j, s0) = 1;
                if (!delta(ns.s, r, delta1(ns.s, r, f)).is_zero()) {
                    fail("delta∘delta", ns.name,
                         "delta∘delta != 0 on the degree-1 basis cochain e" + std::to_string(s0) +
                             " -> e" + std::to_string(j));
                    return res;
                }
            }
        const std::size_t reps = dim <= 3 ? 3 : 2;
        for (std::size_t it = 0; it < reps; ++it) {
            CochainPair p1 = rng.pair(1, n, m);
            if (!delta(ns.s, r, delta(ns.s, r, p1)).is_zero()) {
                fail("delta∘delta", ns.name,
                     "delta∘delta != 0 on a random level-1 pair (iteration " + std::to_string(it) +
                         ")");
                return res;
            }
        }
    }
    ok("delta∘delta");

    // delta_star∘delta1 = 0, exhaustively over the degree-1 basis
    for (const auto& ns : corpus) {
        const std::size_t n = ns.s.dim, m = n;
        Representation r = regular_representation(ns.s);
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t s0 = 0; s0 < n; ++s0) {
                OneCochain f(m, n);
                f.m.at(j, s0) = 1;
                auto [o3, o4] = delta_star(ns.s, r, delta1(ns.s, r, f));
                if (!o3.is_zero() || !o4.is_zero()) {
                    fail("delta_star∘delta1", ns.name,
                         "delta_star∘delta1 != 0 on the degree-1 basis cochain e" +
                             std::to_string(s0) + " -> e" + std::to_string(j));
                    return res;
                }
            }
    }
    ok("delta_star∘delta1");

    // alternation preservation of the operator outputs
    for (const auto& ns : corpus) {
        const std::size_t n = ns.s.dim, m = n;
        Representation r = regular_representation(ns.s);
        CochainPair p1 = rng.pair(1, n, m);
        CochainPair d = delta(ns.s, r, p1);
        if (alternation_violation(d.even) || alternation_violation(d.odd)) {
            fail("alternation", ns.name, "delta output violates pair alternation");
            return res;
        }
        auto [o3, o4] = delta_star(ns.s, r, p1);
        if (alternation_violation(o3)) {
            fail("alternation", ns.name, "degree-3 delta_star output violates pair alternation");
            return res;
        }
        Cochain st = star(ns.s, p1.even, p1.odd, p1.odd, p1.even);
        Cochain tr = triangle(ns.s, p1.odd, p1.odd);
        if (alternation_violation(st) || alternation_violation(tr)) {
            fail("alternation", ns.name, "star/triangle output violates pair alternation");
            return res;
        }
    }
    ok("alternation");

    // exact linear algebra on random matrices
    for (std::size_t it = 0; it < 6; ++it) {
        RationalMatrix a = rng.matrix(2 + rng.index(4), 2 + rng.index(4));
        std::vector<Vector> ker = kernel_basis(a);
        if (rank(a) + ker.size() != a.cols) {
            fail("exact linear algebra", "-", "rank + nullity != columns");
            return res;
        }
        for (const auto& k : ker)
            if (!is_zero(a * k)) {
                fail("exact linear algebra", "-", "kernel vector not annihilated");
                return res;
            }
        Vector x(a.cols);
        for (auto& v : x) v = rng.small();
        Vector b = a * x;
        std::optional<Vector> sol = solve(a, b);
        if (!sol || !(a * *sol == b)) {
            fail("exact linear algebra", "-", "solve failed on a consistent system");
            return res;
        }
    }
    ok("exact linear algebra");

    // coboundary space sits inside the cocycle space
    for (const auto& ns : corpus) {
        Representation r = regular_representation(ns.s);
        RationalMatrix zmat = detail::vstack(delta_matrix(ns.s, r, 1), delta_star_matrix(ns.s, r));
        RationalMatrix bgen = delta1_matrix(ns.s, r);
        for (std::size_t c = 0; c < bgen.cols; ++c) {
            Vector col = detail::matrix_column(bgen, c);
            if (!is_zero(zmat * col)) {
                fail("coboundaries are cocycles", ns.name,
                     "delta1 image column " + std::to_string(c) + " not in the cocycle kernel");
                return res;
            }
        }
    }
    ok("coboundaries are cocycles");

    // gauge round-trips on gauge-of-null deformations
    for (const auto& ns : corpus) {
        const std::size_t n = ns.s.dim;
        const std::size_t order = 2 + rng.index(3);
        GaugeTransform q = rng.gauge(n, order);
        TruncatedDeformation d = apply_gauge(null_deformation(ns.s, order), q);
        GaugeTransform p = rng.gauge(n, order);
        TruncatedDeformation fwd = apply_gauge(d, p);
        TruncatedDeformation back = apply_gauge(fwd, invert_gauge(p));
        if (!(back == d)) {
            fail("gauge round-trip", ns.name,
                 "apply_gauge(apply_gauge(D,P), invert_gauge(P)) != D at order " +
                     std::to_string(order));
            return res;
        }
        if (!(apply_gauge(d, identity_gauge(n, order)) == d)) {
            fail("gauge round-trip", ns.name, "identity gauge changed the deformation");
            return res;
        }
    }
    ok("gauge round-trip");

    // first-order terms of D and its gauge differ by delta1(phi_1)
    for (const auto& ns : corpus) {
        const std::size_t n = ns.s.dim;
        Representation r = regular_representation(ns.s);
        const std::size_t order = 1 + rng.index(3);
        GaugeTransform q = rng.gauge(n, order);
        TruncatedDeformation d = apply_gauge(null_deformation(ns.s, order), q);
        GaugeTransform p = rng.gauge(n, order);
        TruncatedDeformation d2 = apply_gauge(d, p);
        OneCochain phi1(n, n);
        phi1.m = p.phis[0];
        CochainPair expect = delta1(ns.s, r, phi1);
        CochainPair diff(d2.term(1).even - d.term(1).even, d2.term(1).odd - d.term(1).odd);
        if (!(diff == expect)) {
            fail("first-order coboundary", ns.name,
                 "(F'_1 - F_1, G'_1 - G_1) != delta1(phi_1)");
            return res;
        }
        if (!infinitesimals_agree(d, d2, p)) {
            fail("first-order coboundary", ns.name, "infinitesimals_agree returned false");
            return res;
        }
    }
    ok("first-order coboundary");

    // the deformation equations hold for every gauge of the null deformation
    for (const auto& ns : corpus) {
        const std::size_t order = 2 + rng.index(2);
        TruncatedDeformation d =
            apply_gauge(null_deformation(ns.s, order), rng.gauge(ns.s.dim, order));
        DeformationReport rep = check_deformation(d);
        if (!rep.pass) {
            std::string msg = "gauge of null fails the deformation equations";
            for (std::size_t n_ord = 0; n_ord <= rep.order; ++n_ord)
                for (std::size_t fam = 0; fam < 4; ++fam)
                    if (!rep.orders[n_ord][fam].pass)
                        msg += " [order " + std::to_string(n_ord) + ", " + family_name(fam) +
                               " at " + detail::tuple_str(rep.orders[n_ord][fam].witness) + "]";
            fail("deformation equations under gauge", ns.name, msg);
            return res;
        }
    }
    ok("deformation equations under gauge");

    // obstruction pairs of consistent deformations are degree-(4,5) cocycles
    for (const auto& ns : corpus) {
        const std::size_t order = 2 + rng.index(dim <= 3 ? 3 : 2);
        TruncatedDeformation d =
            apply_gauge(null_deformation(ns.s, order), rng.gauge(ns.s.dim, order));
        for (std::size_t n_ord = 2; n_ord <= order + 1; ++n_ord) {
            ObstructionPair op = obstruction(d, n_ord);
            if (!op.in_Z45) {
                fail("obstruction membership", ns.name,
                     "obstruction pair at order " + std::to_string(n_ord) +
                         " is not a degree-(4,5) cocycle");
                return res;
            }
        }
    }
    ok("obstruction membership");

    // cohomology dims are invariant under an invertible change of basis
    if (dim <= 3) {
        for (const auto& ns : corpus) {
            RationalMatrix p = rng.invertible(ns.s.dim);
            LYAStructure s2 = change_basis(ns.s, p);
            Representation r1 = regular_representation(ns.s);
            Representation r2 = regular_representation(s2);
            CohomologyReport a1 = h1(ns.s, r1), b1 = h1(s2, r2);
            if (a1.dimH != b1.dimH) {
                fail("basis invariance", ns.name, "dim H1 changed under a change of basis");
                return res;
            }
            CohomologyReport a23 = h23(ns.s, r1), b23 = h23(s2, r2);
            if (a23.dimZ != b23.dimZ || a23.dimB != b23.dimB || a23.dimH != b23.dimH) {
                fail("basis invariance", ns.name,
                     "level (2,3) dims changed under a change of basis");
                return res;
            }
        }
        ok("basis invariance");
    }

    return res;
}

}  // namespace lya
