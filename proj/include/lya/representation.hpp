#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "lya/algebra.hpp"
#include "lya/errors.hpp"
#include "lya/matrix.hpp"

namespace lya {

/// Triple (rho, D, theta) of endomorphisms of V, stored on basis (pairs).
struct Representation {
    std::size_t dimT = 0;
    std::size_t dimV = 0;
    std::vector<RationalMatrix> rho;    // n entries
    std::vector<RationalMatrix> Dmap;   // n*n entries, index a*n+b
    std::vector<RationalMatrix> theta;  // n*n entries, index a*n+b

    const RationalMatrix& rh(std::size_t a) const { return rho[a]; }
    const RationalMatrix& D(std::size_t a, std::size_t b) const { return Dmap[a * dimT + b]; }
    const RationalMatrix& th(std::size_t a, std::size_t b) const { return theta[a * dimT + b]; }

    /// rho extended linearly over a T-vector.
    RationalMatrix rho_of(const Vector& x) const {
        RationalMatrix out(dimV, dimV);
        for (std::size_t i = 0; i < dimT; ++i)
            if (x[i] != 0) out = out + x[i] * rho[i];
        return out;
    }
    RationalMatrix D_of(const Vector& x, std::size_t b) const {
        RationalMatrix out(dimV, dimV);
        for (std::size_t i = 0; i < dimT; ++i)
            if (x[i] != 0) out = out + x[i] * D(i, b);
        return out;
    }
    RationalMatrix theta_of_left(const Vector& x, std::size_t b) const {
        RationalMatrix out(dimV, dimV);
        for (std::size_t i = 0; i < dimT; ++i)
            if (x[i] != 0) out = out + x[i] * th(i, b);
        return out;
    }
    RationalMatrix theta_of_right(std::size_t a, const Vector& y) const {
        RationalMatrix out(dimV, dimV);
        for (std::size_t j = 0; j < dimT; ++j)
            if (y[j] != 0) out = out + y[j] * th(a, j);
        return out;
    }

    friend bool operator==(const Representation&, const Representation&) = default;
};

/// V = T with rho(a): b -> ab, D(a,b): c -> [a,b,c], theta(a,b): c -> [c,a,b].
inline Representation regular_representation(const LYAStructure& s) {
    if (!check_axioms(s).all_pass())
        throw InvalidAlgebra("regular representation requires a valid algebra");
    const std::size_t n = s.dim;
    Representation r;
    r.dimT = n;
    r.dimV = n;
    r.rho.assign(n, RationalMatrix(n, n));
    r.Dmap.assign(n * n, RationalMatrix(n, n));
    r.theta.assign(n * n, RationalMatrix(n, n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                r.rho[i].at(k, j) = s.bin(i, j, k);
                for (std::size_t l = 0; l < n; ++l) {
                    r.Dmap[i * n + j].at(l, k) = s.ter(i, j, k, l);
                    r.theta[i * n + j].at(l, k) = s.ter(k, i, j, l);
                }
            }
    return r;
}

struct RelationStatus {
    bool pass = true;
    std::vector<std::size_t> witness;

    friend bool operator==(const RelationStatus&, const RelationStatus&) = default;
};

/// Statuses for the six defining relations plus the derived D-identity.
struct RepReport {
    std::array<RelationStatus, 7> relations;

    bool all_pass() const {
        for (const auto& r : relations)
            if (!r.pass) return false;
        return true;
    }

    friend bool operator==(const RepReport&, const RepReport&) = default;
};

inline RepReport check_representation(const LYAStructure& s, const Representation& r) {
    if (r.dimT != s.dim) throw DimensionMismatch("representation dimT != algebra dim");
    for (const auto& m : r.rho)
        if (m.rows != r.dimV || m.cols != r.dimV) throw DimensionMismatch("rho shape");
    const std::size_t n = s.dim;
    RepReport rep;
    auto fail = [&](std::size_t idx, std::vector<std::size_t> w) {
        if (rep.relations[idx].pass) {
            rep.relations[idx].pass = false;
            rep.relations[idx].witness = std::move(w);
        }
    };
    auto e = [&](std::size_t i) { return unit_vector(n, i); };
    auto ter = [&](std::size_t a, std::size_t b, std::size_t c) {
        Vector v(n);
        for (std::size_t l = 0; l < n; ++l) v[l] = s.ter(a, b, c, l);
        return v;
    };

    // D(a,b) + theta(a,b) - theta(b,a) = [rho(a), rho(b)] - rho(ab)
    for (std::size_t a = 0; a < n && rep.relations[0].pass; ++a)
        for (std::size_t b = 0; b < n && rep.relations[0].pass; ++b) {
            RationalMatrix lhs = r.D(a, b) + r.th(a, b) - r.th(b, a);
            RationalMatrix rhs =
                commutator(r.rh(a), r.rh(b)) - r.rho_of(binary_product(s, e(a), e(b)));
            if (!(lhs - rhs).is_zero()) fail(0, {a, b});
        }
    // theta(a, bc) - rho(b) theta(a,c) + rho(c) theta(a,b) = 0
    for (std::size_t a = 0; a < n && rep.relations[1].pass; ++a)
        for (std::size_t b = 0; b < n && rep.relations[1].pass; ++b)
            for (std::size_t c = 0; c < n && rep.relations[1].pass; ++c) {
                RationalMatrix m = r.theta_of_right(a, binary_product(s, e(b), e(c))) -
                                   r.rh(b) * r.th(a, c) + r.rh(c) * r.th(a, b);
                if (!m.is_zero()) fail(1, {a, b, c});
            }
    // theta(ab, c) - theta(a,c) rho(b) + theta(b,c) rho(a) = 0
    for (std::size_t a = 0; a < n && rep.relations[2].pass; ++a)
        for (std::size_t b = 0; b < n && rep.relations[2].pass; ++b)
            for (std::size_t c = 0; c < n && rep.relations[2].pass; ++c) {
                RationalMatrix m = r.theta_of_left(binary_product(s, e(a), e(b)), c) -
                                   r.th(a, c) * r.rh(b) + r.th(b, c) * r.rh(a);
                if (!m.is_zero()) fail(2, {a, b, c});
            }
    // theta(c,d) theta(a,b) - theta(b,d) theta(a,c) - theta(a, [b,c,d]) + D(b,c) theta(a,d) = 0
    for (std::size_t a = 0; a < n && rep.relations[3].pass; ++a)
        for (std::size_t b = 0; b < n && rep.relations[3].pass; ++b)
            for (std::size_t c = 0; c < n && rep.relations[3].pass; ++c)
                for (std::size_t d = 0; d < n && rep.relations[3].pass; ++d) {
                    RationalMatrix m = r.th(c, d) * r.th(a, b) - r.th(b, d) * r.th(a, c) -
                                       r.theta_of_right(a, ter(b, c, d)) +
                                       r.D(b, c) * r.th(a, d);
                    if (!m.is_zero()) fail(3, {a, b, c, d});
                }
    // [D(a,b), rho(c)] = rho([a,b,c])
    for (std::size_t a = 0; a < n && rep.relations[4].pass; ++a)
        for (std::size_t b = 0; b < n && rep.relations[4].pass; ++b)
            for (std::size_t c = 0; c < n && rep.relations[4].pass; ++c) {
                RationalMatrix m = commutator(r.D(a, b), r.rh(c)) - r.rho_of(ter(a, b, c));
                if (!m.is_zero()) fail(4, {a, b, c});
            }
    // [D(a,b), theta(c,d)] = theta([a,b,c], d) + theta(c, [a,b,d])
    for (std::size_t a = 0; a < n && rep.relations[5].pass; ++a)
        for (std::size_t b = 0; b < n && rep.relations[5].pass; ++b)
            for (std::size_t c = 0; c < n && rep.relations[5].pass; ++c)
                for (std::size_t d = 0; d < n && rep.relations[5].pass; ++d) {
                    RationalMatrix m = commutator(r.D(a, b), r.th(c, d)) -
                                       r.theta_of_left(ter(a, b, c), d) -
                                       r.theta_of_right(c, ter(a, b, d));
                    if (!m.is_zero()) fail(5, {a, b, c, d});
                }
    // derived: D(ab, c) + D(bc, a) + D(ca, b) = 0
    for (std::size_t a = 0; a < n && rep.relations[6].pass; ++a)
        for (std::size_t b = 0; b < n && rep.relations[6].pass; ++b)
            for (std::size_t c = 0; c < n && rep.relations[6].pass; ++c) {
                RationalMatrix m = r.D_of(binary_product(s, e(a), e(b)), c) +
                                   r.D_of(binary_product(s, e(b), e(c)), a) +
                                   r.D_of(binary_product(s, e(c), e(a)), b);
                if (!m.is_zero()) fail(6, {a, b, c});
            }
    return rep;
}

}  // namespace lya
