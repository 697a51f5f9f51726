#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "lya/errors.hpp"
#include "lya/rational.hpp"

namespace lya {

struct BinaryEntry {
    std::size_t i, j, k;
    Scalar value;
};

struct TernaryEntry {
    std::size_t i, j, k, l;
    Scalar value;
};

/// Algebra given by structure constants on a fixed basis:
/// e_i e_j = sum_k b[i][j][k] e_k,  [e_i,e_j,e_k] = sum_l t[i][j][k][l] e_l.
struct LYAStructure {
    std::size_t dim = 0;
    std::vector<Scalar> b;  // n^3, index ((i*n + j)*n + k)
    std::vector<Scalar> t;  // n^4, index (((i*n + j)*n + k)*n + l)

    const Scalar& bin(std::size_t i, std::size_t j, std::size_t k) const {
        return b[(i * dim + j) * dim + k];
    }
    const Scalar& ter(std::size_t i, std::size_t j, std::size_t k, std::size_t l) const {
        return t[((i * dim + j) * dim + k) * dim + l];
    }
    /// Contiguous coordinates of e_i e_j.
    const Scalar* bin_row(std::size_t i, std::size_t j) const { return &b[(i * dim + j) * dim]; }
    /// Contiguous coordinates of [e_i, e_j, e_k].
    const Scalar* ter_row(std::size_t i, std::size_t j, std::size_t k) const {
        return &t[((i * dim + j) * dim + k) * dim];
    }

    friend bool operator==(const LYAStructure&, const LYAStructure&) = default;
};

inline LYAStructure new_lya(std::size_t dim, const std::vector<BinaryEntry>& binary,
                            const std::vector<TernaryEntry>& ternary) {
    if (dim == 0) throw IndexOutOfRange("dimension must be positive");
    LYAStructure s;
    s.dim = dim;
    s.b.assign(dim * dim * dim, Scalar(0));
    s.t.assign(dim * dim * dim * dim, Scalar(0));
    for (const auto& e : binary) {
        if (e.i >= dim || e.j >= dim || e.k >= dim)
            throw IndexOutOfRange("binary entry index out of range");
        s.b[(e.i * dim + e.j) * dim + e.k] += e.value;
    }
    for (const auto& e : ternary) {
        if (e.i >= dim || e.j >= dim || e.k >= dim || e.l >= dim)
            throw IndexOutOfRange("ternary entry index out of range");
        s.t[((e.i * dim + e.j) * dim + e.k) * dim + e.l] += e.value;
    }
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k) {
                if (s.bin(i, j, k) + s.bin(j, i, k) != 0)
                    throw AlternationViolation("binary tensor not antisymmetric at (" +
                                               std::to_string(i) + "," + std::to_string(j) + ")");
                for (std::size_t l = 0; l < dim; ++l)
                    if (s.ter(i, j, k, l) + s.ter(j, i, k, l) != 0)
                        throw AlternationViolation(
                            "ternary tensor not antisymmetric in first pair at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
            }
    return s;
}

inline Vector binary_product(const LYAStructure& s, const Vector& x, const Vector& y) {
    if (x.size() != s.dim || y.size() != s.dim) throw DimensionMismatch("binary_product");
    Vector out(s.dim, Scalar(0));
    for (std::size_t i = 0; i < s.dim; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < s.dim; ++j) {
            if (y[j] == 0) continue;
            Scalar c = x[i] * y[j];
            const Scalar* row = s.bin_row(i, j);
            for (std::size_t k = 0; k < s.dim; ++k)
                if (row[k] != 0) out[k] += c * row[k];
        }
    }
    return out;
}

inline Vector ternary_product(const LYAStructure& s, const Vector& x, const Vector& y,
                              const Vector& z) {
    if (x.size() != s.dim || y.size() != s.dim || z.size() != s.dim)
        throw DimensionMismatch("ternary_product");
    Vector out(s.dim, Scalar(0));
    for (std::size_t i = 0; i < s.dim; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < s.dim; ++j) {
            if (y[j] == 0) continue;
            Scalar c = x[i] * y[j];
            for (std::size_t k = 0; k < s.dim; ++k) {
                if (z[k] == 0) continue;
                Scalar ck = c * z[k];
                const Scalar* row = s.ter_row(i, j, k);
                for (std::size_t l = 0; l < s.dim; ++l)
                    if (row[l] != 0) out[l] += ck * row[l];
            }
        }
    }
    return out;
}

struct AxiomStatus {
    bool pass = true;
    std::vector<std::size_t> witness;  // basis indices of the first failing instance
    Vector defect;                     // nonzero residual at the witness

    friend bool operator==(const AxiomStatus&, const AxiomStatus&) = default;
};

struct AxiomReport {
    std::array<AxiomStatus, 6> axioms;

    bool all_pass() const {
        for (const auto& a : axioms)
            if (!a.pass) return false;
        return true;
    }

    friend bool operator==(const AxiomReport&, const AxiomReport&) = default;
};

/// Evaluates the six defining identities on all basis tuples.
inline AxiomReport check_axioms(const LYAStructure& s) {
    const std::size_t n = s.dim;
    AxiomReport rep;
    auto fail = [&](std::size_t axiom, std::vector<std::size_t> w, Vector defect) {
        AxiomStatus& st = rep.axioms[axiom - 1];
        if (!st.pass) return;
        st.pass = false;
        st.witness = std::move(w);
        st.defect = std::move(defect);
    };

    // 1: ab = -ba on basis (equal-argument vanishing in char 0)
    for (std::size_t i = 0; i < n && rep.axioms[0].pass; ++i)
        for (std::size_t j = i; j < n && rep.axioms[0].pass; ++j) {
            Vector d(n, Scalar(0));
            for (std::size_t k = 0; k < n; ++k) d[k] = s.bin(i, j, k) + s.bin(j, i, k);
            if (!is_zero(d)) fail(1, {i, j}, std::move(d));
        }
    // 2: [a,b,c] = -[b,a,c] on basis
    for (std::size_t i = 0; i < n && rep.axioms[1].pass; ++i)
        for (std::size_t j = i; j < n && rep.axioms[1].pass; ++j)
            for (std::size_t k = 0; k < n && rep.axioms[1].pass; ++k) {
                Vector d(n, Scalar(0));
                for (std::size_t l = 0; l < n; ++l) d[l] = s.ter(i, j, k, l) + s.ter(j, i, k, l);
                if (!is_zero(d)) fail(2, {i, j, k}, std::move(d));
            }

    auto e = [&](std::size_t i) { return unit_vector(n, i); };

    // 3: cyclic [a,b,c] + cyclic (ab)c = 0
    for (std::size_t a = 0; a < n && rep.axioms[2].pass; ++a)
        for (std::size_t b = 0; b < n && rep.axioms[2].pass; ++b)
            for (std::size_t c = 0; c < n && rep.axioms[2].pass; ++c) {
                Vector d(n, Scalar(0));
                for (std::size_t l = 0; l < n; ++l)
                    d[l] = s.ter(a, b, c, l) + s.ter(b, c, a, l) + s.ter(c, a, b, l);
                add_to(d, binary_product(s, binary_product(s, e(a), e(b)), e(c)));
                add_to(d, binary_product(s, binary_product(s, e(b), e(c)), e(a)));
                add_to(d, binary_product(s, binary_product(s, e(c), e(a)), e(b)));
                if (!is_zero(d)) fail(3, {a, b, c}, std::move(d));
            }
    // 4: [ab,c,d] + [bc,a,d] + [ca,b,d] = 0
    for (std::size_t a = 0; a < n && rep.axioms[3].pass; ++a)
        for (std::size_t b = 0; b < n && rep.axioms[3].pass; ++b)
            for (std::size_t c = 0; c < n && rep.axioms[3].pass; ++c)
                for (std::size_t d0 = 0; d0 < n && rep.axioms[3].pass; ++d0) {
                    Vector d = ternary_product(s, binary_product(s, e(a), e(b)), e(c), e(d0));
                    add_to(d, ternary_product(s, binary_product(s, e(b), e(c)), e(a), e(d0)));
                    add_to(d, ternary_product(s, binary_product(s, e(c), e(a)), e(b), e(d0)));
                    if (!is_zero(d)) fail(4, {a, b, c, d0}, std::move(d));
                }
    // 5: [a,b,cd] = [a,b,c]d + c[a,b,d]
    for (std::size_t a = 0; a < n && rep.axioms[4].pass; ++a)
        for (std::size_t b = 0; b < n && rep.axioms[4].pass; ++b)
            for (std::size_t c = 0; c < n && rep.axioms[4].pass; ++c)
                for (std::size_t d0 = 0; d0 < n && rep.axioms[4].pass; ++d0) {
                    Vector d = ternary_product(s, e(a), e(b), binary_product(s, e(c), e(d0)));
                    Vector rhs = binary_product(s, ternary_product(s, e(a), e(b), e(c)), e(d0));
                    add_to(rhs, binary_product(s, e(c), ternary_product(s, e(a), e(b), e(d0))));
                    for (std::size_t l = 0; l < n; ++l) d[l] -= rhs[l];
                    if (!is_zero(d)) fail(5, {a, b, c, d0}, std::move(d));
                }
    // 6: [a,b,[c,d,e]] = [[a,b,c],d,e] + [c,[a,b,d],e] + [c,d,[a,b,e]]
    for (std::size_t a = 0; a < n && rep.axioms[5].pass; ++a)
        for (std::size_t b = 0; b < n && rep.axioms[5].pass; ++b)
            for (std::size_t c = 0; c < n && rep.axioms[5].pass; ++c)
                for (std::size_t d0 = 0; d0 < n && rep.axioms[5].pass; ++d0)
                    for (std::size_t f = 0; f < n && rep.axioms[5].pass; ++f) {
                        Vector d = ternary_product(s, e(a), e(b),
                                                   ternary_product(s, e(c), e(d0), e(f)));
                        Vector rhs = ternary_product(s, ternary_product(s, e(a), e(b), e(c)),
                                                     e(d0), e(f));
                        add_to(rhs, ternary_product(s, e(c),
                                                    ternary_product(s, e(a), e(b), e(d0)), e(f)));
                        add_to(rhs, ternary_product(s, e(c), e(d0),
                                                    ternary_product(s, e(a), e(b), e(f))));
                        for (std::size_t l = 0; l < n; ++l) d[l] -= rhs[l];
                        if (!is_zero(d)) fail(6, {a, b, c, d0, f}, std::move(d));
                    }
    return rep;
}

/// Lie algebra as an LYA: zero ternary, or the induced [x,y,z] := (xy)z.
inline LYAStructure from_lie_algebra(const std::vector<BinaryEntry>& bracket, std::size_t dim,
                                     bool induced_ternary) {
    LYAStructure lie = new_lya(dim, bracket, {});
    if (!induced_ternary) return lie;
    std::vector<TernaryEntry> ternary;
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            for (std::size_t k = 0; k < dim; ++k)
                for (std::size_t l = 0; l < dim; ++l) {
                    Scalar v(0);
                    for (std::size_t m = 0; m < dim; ++m) v += lie.bin(i, j, m) * lie.bin(m, k, l);
                    if (v != 0) ternary.push_back({i, j, k, l, v});
                }
    return new_lya(dim, bracket, ternary);
}

/// Lie triple system as an LYA: zero binary product.
inline LYAStructure from_lie_triple_system(const std::vector<TernaryEntry>& ternary,
                                           std::size_t dim) {
    return new_lya(dim, {}, ternary);
}

}  // namespace lya
