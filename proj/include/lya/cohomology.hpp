#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lya/algebra.hpp"
#include "lya/cochain.hpp"
#include "lya/errors.hpp"
#include "lya/matrix.hpp"
#include "lya/representation.hpp"

namespace lya {

namespace detail {

inline RationalMatrix vstack(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols != b.cols) throw DimensionMismatch("vstack: column counts differ");
    RationalMatrix out(a.rows + b.rows, a.cols);
    std::copy(a.a.begin(), a.a.end(), out.a.begin());
    std::copy(b.a.begin(), b.a.end(), out.a.begin() + static_cast<std::ptrdiff_t>(a.a.size()));
    return out;
}

inline RationalMatrix from_columns(std::size_t rows, const std::vector<Vector>& cols) {
    RationalMatrix out(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw DimensionMismatch("from_columns");
        for (std::size_t r = 0; r < rows; ++r) out.at(r, c) = cols[c][r];
    }
    return out;
}

/// Dimension of the span of a list of coordinate vectors.
inline std::size_t span_dim(const std::vector<Vector>& vecs, std::size_t len) {
    if (vecs.empty()) return 0;
    RationalMatrix m(vecs.size(), len);
    for (std::size_t r = 0; r < vecs.size(); ++r)
        for (std::size_t c = 0; c < len; ++c) m.at(r, c) = vecs[r][c];
    return rank(m);
}

}  // namespace detail

/// delta1 as a matrix: columns run over the standard basis of C^1
/// (coordinates j*dimT+s), rows over canonical pair coordinates of C^2 x C^3.
inline RationalMatrix delta1_matrix(const LYAStructure& s, const Representation& r) {
    const std::size_t n = s.dim, m = r.dimV;
    const std::size_t rows = cochain_space_dim(n, m, 2) + cochain_space_dim(n, m, 3);
    std::vector<Vector> cols;
    cols.reserve(n * m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t s0 = 0; s0 < n; ++s0) {
            OneCochain f(m, n);
            f.m.at(j, s0) = 1;
            cols.push_back(pair_coordinates(delta1(s, r, f)));
        }
    return detail::from_columns(rows, cols);
}

/// delta at level p as a matrix over canonical pair coordinates
/// (level p in the columns, level p+1 in the rows).
inline RationalMatrix delta_matrix(const LYAStructure& s, const Representation& r, std::size_t p) {
    const std::size_t n = s.dim, m = r.dimV;
    const std::size_t de = cochain_space_dim(n, m, 2 * p);
    const std::size_t dodd = cochain_space_dim(n, m, 2 * p + 1);
    const std::size_t rows =
        cochain_space_dim(n, m, 2 * p + 2) + cochain_space_dim(n, m, 2 * p + 3);
    std::vector<Vector> cols;
    cols.reserve(de + dodd);
    const auto even_keys = basis_keys(n, m, 2 * p);
    const auto odd_keys = basis_keys(n, m, 2 * p + 1);
    for (const auto& key : even_keys) {
        CochainPair in(basis_cochain(n, m, 2 * p, key), Cochain(2 * p + 1, n, m));
        cols.push_back(pair_coordinates(delta(s, r, in)));
    }
    for (const auto& key : odd_keys) {
        CochainPair in(Cochain(2 * p, n, m), basis_cochain(n, m, 2 * p + 1, key));
        cols.push_back(pair_coordinates(delta(s, r, in)));
    }
    return detail::from_columns(rows, cols);
}

/// delta_star as a matrix over canonical pair coordinates of C^2 x C^3.
/// Output rows use full basis-tuple coordinates (n^3*m then n^4*m) because
/// the degree-4 component does not alternate in its second pair.
inline RationalMatrix delta_star_matrix(const LYAStructure& s, const Representation& r) {
    const std::size_t n = s.dim, m = r.dimV;
    const std::size_t rows = Cochain::tuple_count_of(3, n) * m + Cochain::tuple_count_of(4, n) * m;
    std::vector<Vector> cols;
    const auto even_keys = basis_keys(n, m, 2);
    const auto odd_keys = basis_keys(n, m, 3);
    cols.reserve(even_keys.size() + odd_keys.size());
    auto push = [&](const CochainPair& in) {
        auto [o3, o4] = delta_star(s, r, in);
        Vector col = o3.v;
        col.insert(col.end(), o4.v.begin(), o4.v.end());
        cols.push_back(std::move(col));
    };
    for (const auto& key : even_keys)
        push(CochainPair(basis_cochain(n, m, 2, key), Cochain(3, n, m)));
    for (const auto& key : odd_keys)
        push(CochainPair(Cochain(2, n, m), basis_cochain(n, m, 3, key)));
    return detail::from_columns(rows, cols);
}

/// Cohomology group report. p = 0 tags the degree-1 group (kernel of delta1,
/// spanned by derivations); p >= 1 tags the pair group on C^{2p} x C^{2p+1}.
/// dimZ/dimB/dimH are pair-space dimensions; dimZ_even/dimZ_odd are the
/// dimensions of the projections of the cocycle space onto the two components.
struct CohomologyReport {
    std::size_t p = 0;
    std::size_t dimZ = 0;
    std::size_t dimZ_even = 0;
    std::size_t dimZ_odd = 0;
    std::size_t dimB = 0;
    std::size_t dimH = 0;
    std::vector<OneCochain> derivations;
    std::vector<CochainPair> representatives;

    friend bool operator==(const CohomologyReport&, const CohomologyReport&) = default;
};

namespace detail {

/// Kernel vectors that complete a basis of the column space of bgen to a
/// basis of the kernel span: rref pivot selection over [bgen | kernel].
inline std::vector<std::size_t> representative_indices(const RationalMatrix& bgen,
                                                       const std::vector<Vector>& kernel) {
    const std::size_t rows = bgen.rows;
    RationalMatrix m(rows, bgen.cols + kernel.size());
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < bgen.cols; ++c) m.at(r, c) = bgen.at(r, c);
    for (std::size_t k = 0; k < kernel.size(); ++k)
        for (std::size_t r = 0; r < rows; ++r) m.at(r, bgen.cols + k) = kernel[k][r];
    std::vector<std::size_t> out;
    for (std::size_t piv : rref(m).pivots)
        if (piv >= bgen.cols) out.push_back(piv - bgen.cols);
    return out;
}

}  // namespace detail

inline CohomologyReport h1(const LYAStructure& s, const Representation& r) {
    if (!check_representation(s, r).all_pass())
        throw InvalidRepresentation("h1: representation fails the module relations");
    const std::size_t n = s.dim, m = r.dimV;
    CohomologyReport rep;
    rep.p = 0;
    std::vector<Vector> ker = kernel_basis(delta1_matrix(s, r));
    rep.dimZ = ker.size();
    rep.dimZ_even = 0;
    rep.dimZ_odd = ker.size();
    rep.dimB = 0;
    rep.dimH = ker.size();
    for (const auto& v : ker) rep.derivations.push_back(one_cochain_from_coordinates(n, m, v));
    return rep;
}

namespace detail {

inline CohomologyReport pair_report(const LYAStructure& s, const Representation& r, std::size_t p,
                                    const RationalMatrix& zmat, const RationalMatrix& bgen) {
    const std::size_t n = s.dim, m = r.dimV;
    const std::size_t de = cochain_space_dim(n, m, 2 * p);
    CohomologyReport rep;
    rep.p = p;
    std::vector<Vector> ker = kernel_basis(zmat);
    rep.dimZ = ker.size();
    std::vector<Vector> even_parts, odd_parts;
    for (const auto& v : ker) {
        even_parts.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(de));
        odd_parts.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(de), v.end());
    }
    rep.dimZ_even = span_dim(even_parts, de);
    rep.dimZ_odd = span_dim(odd_parts, ker.empty() ? 0 : odd_parts.front().size());
    rep.dimB = rank(bgen);
    rep.dimH = rep.dimZ - rep.dimB;
    for (std::size_t idx : representative_indices(bgen, ker))
        rep.representatives.push_back(pair_from_coordinates(p, n, m, ker[idx]));
    return rep;
}

}  // namespace detail

inline CohomologyReport h23(const LYAStructure& s, const Representation& r) {
    if (!check_representation(s, r).all_pass())
        throw InvalidRepresentation("h23: representation fails the module relations");
    RationalMatrix zmat = detail::vstack(delta_matrix(s, r, 1), delta_star_matrix(s, r));
    return detail::pair_report(s, r, 1, zmat, delta1_matrix(s, r));
}

inline CohomologyReport h2p(const LYAStructure& s, const Representation& r, std::size_t p) {
    if (p < 2) throw LevelError("h2p: level must be >= 2");
    if (!check_representation(s, r).all_pass())
        throw InvalidRepresentation("h2p: representation fails the module relations");
    return detail::pair_report(s, r, p, delta_matrix(s, r, p), delta_matrix(s, r, p - 1));
}

struct PairClassification {
    bool is_cocycle = false;
    bool is_coboundary = false;
    std::optional<OneCochain> preimage;
};

inline PairClassification classify_pair(const LYAStructure& s, const Representation& r,
                                        const CochainPair& pair) {
    if (pair.level() != 1) throw DimensionMismatch("classify_pair: level-1 pair required");
    if (pair.even.dimT != s.dim || pair.even.dimV != r.dimV)
        throw DimensionMismatch("classify_pair: pair dims");
    PairClassification out;
    auto [o3, o4] = delta_star(s, r, pair);
    out.is_cocycle = delta(s, r, pair).is_zero() && o3.is_zero() && o4.is_zero();
    std::optional<Vector> sol = solve(delta1_matrix(s, r), pair_coordinates(pair));
    out.is_coboundary = sol.has_value();
    if (sol) out.preimage = one_cochain_from_coordinates(s.dim, r.dimV, *sol);
    return out;
}

/// Coordinates of a level-1 cocycle pair's class in the representative basis
/// computed by h23 (zero vector iff the pair is a coboundary).
inline Vector h_class_coordinates(const LYAStructure& s, const Representation& r,
                                  const CochainPair& z) {
    CohomologyReport rep = h23(s, r);
    RationalMatrix bgen = delta1_matrix(s, r);
    std::vector<Vector> cols;
    for (std::size_t c = 0; c < bgen.cols; ++c) {
        Vector col(bgen.rows);
        for (std::size_t r0 = 0; r0 < bgen.rows; ++r0) col[r0] = bgen.at(r0, c);
        cols.push_back(std::move(col));
    }
    for (const auto& pr : rep.representatives) cols.push_back(pair_coordinates(pr));
    RationalMatrix m = detail::from_columns(bgen.rows, cols);
    std::optional<Vector> sol = solve(m, pair_coordinates(z));
    if (!sol) throw InternalError("h_class_coordinates: input is not a cocycle");
    return Vector(sol->begin() + static_cast<std::ptrdiff_t>(bgen.cols), sol->end());
}

}  // namespace lya
