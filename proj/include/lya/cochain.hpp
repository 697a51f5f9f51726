#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lya/algebra.hpp"
#include "lya/errors.hpp"
#include "lya/matrix.hpp"
#include "lya/representation.hpp"

namespace lya {

namespace debug {
/// Negates one rho-term inside delta; lets the selftest negative control fire.
inline bool& flip_delta_sign() {
    static bool f = false;
    return f;
}
}  // namespace debug

/// Multilinear map T^degree -> V as a dense tensor of basis values.
/// Designated argument pairs are (1,2),(3,4),...; a cochain proper vanishes
/// when the members of such a pair coincide (checked, not forced: see
/// alternation_violation). Operator outputs that escape the constraint are
/// carried in the same container.
struct Cochain {
    std::size_t degree = 0;
    std::size_t dimT = 0;
    std::size_t dimV = 0;
    std::vector<Scalar> v;  // (tuple index) * dimV + target, tuple lex-major

    Cochain() = default;
    Cochain(std::size_t deg, std::size_t n, std::size_t m)
        : degree(deg), dimT(n), dimV(m), v(tuple_count_of(deg, n) * m, Scalar(0)) {}

    static std::size_t tuple_count_of(std::size_t deg, std::size_t n) {
        std::size_t c = 1;
        for (std::size_t i = 0; i < deg; ++i) c *= n;
        return c;
    }
    std::size_t tuple_count() const { return tuple_count_of(degree, dimT); }

    std::size_t flat(const std::size_t* tup) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < degree; ++i) idx = idx * dimT + tup[i];
        return idx;
    }
    const Scalar* block(std::size_t tuple_idx) const { return &v[tuple_idx * dimV]; }
    Scalar* block(std::size_t tuple_idx) { return &v[tuple_idx * dimV]; }
    const Scalar* block_at(const std::size_t* tup) const { return block(flat(tup)); }

    Scalar& coeff(const std::size_t* tup, std::size_t j) { return v[flat(tup) * dimV + j]; }
    const Scalar& coeff(const std::size_t* tup, std::size_t j) const {
        return v[flat(tup) * dimV + j];
    }

    bool is_zero() const {
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }

    friend bool operator==(const Cochain&, const Cochain&) = default;
};

inline Cochain operator+(Cochain a, const Cochain& b) {
    if (a.degree != b.degree || a.dimT != b.dimT || a.dimV != b.dimV)
        throw DimensionMismatch("cochain add");
    for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] += b.v[i];
    return a;
}

inline Cochain operator-(Cochain a, const Cochain& b) {
    if (a.degree != b.degree || a.dimT != b.dimT || a.dimV != b.dimV)
        throw DimensionMismatch("cochain sub");
    for (std::size_t i = 0; i < a.v.size(); ++i) a.v[i] -= b.v[i];
    return a;
}

inline Cochain operator*(const Scalar& c, Cochain a) {
    for (auto& x : a.v) x *= c;
    return a;
}

/// Linear map T -> V; column j holds the image of e_j.
struct OneCochain {
    RationalMatrix m;  // dimV x dimT

    OneCochain() = default;
    OneCochain(std::size_t dimV, std::size_t dimT) : m(dimV, dimT) {}

    Vector apply(const Vector& x) const { return m * x; }
    Vector apply_basis(std::size_t j) const {
        Vector out(m.rows);
        for (std::size_t r = 0; r < m.rows; ++r) out[r] = m.at(r, j);
        return out;
    }

    friend bool operator==(const OneCochain&, const OneCochain&) = default;
};

struct CochainPair {
    Cochain even;  // degree 2p
    Cochain odd;   // degree 2p+1

    CochainPair() = default;
    CochainPair(Cochain e, Cochain o) : even(std::move(e)), odd(std::move(o)) {
        if (even.degree % 2 != 0 || odd.degree != even.degree + 1)
            throw ShapeError("cochain pair degrees must be (2p, 2p+1)");
        if (even.dimT != odd.dimT || even.dimV != odd.dimV)
            throw DimensionMismatch("cochain pair dims");
    }

    std::size_t level() const { return even.degree / 2; }
    bool is_zero() const { return even.is_zero() && odd.is_zero(); }

    friend bool operator==(const CochainPair&, const CochainPair&) = default;
};

inline CochainPair zero_pair(std::size_t level, std::size_t n, std::size_t m) {
    return CochainPair(Cochain(2 * level, n, m), Cochain(2 * level + 1, n, m));
}

inline std::size_t cochain_space_dim(std::size_t n, std::size_t m, std::size_t degree) {
    std::size_t pairs = n * (n - 1) / 2;
    std::size_t p = degree / 2;
    std::size_t d = m;
    for (std::size_t i = 0; i < p; ++i) d *= pairs;
    if (degree % 2 == 1) d *= n;
    return d;
}

/// First designated-pair violation: (tuple, pair slot), if any.
inline std::optional<std::pair<std::vector<std::size_t>, std::size_t>> alternation_violation(
    const Cochain& c) {
    const std::size_t d = c.degree, n = c.dimT, m = c.dimV;
    const std::size_t pairs = d / 2;
    if (pairs == 0) return std::nullopt;
    std::vector<std::size_t> tup(d, 0);
    for (std::size_t idx = 0; idx < c.tuple_count(); ++idx) {
        for (std::size_t k = 0; k < pairs; ++k) {
            if (tup[2 * k] < tup[2 * k + 1]) continue;
            const Scalar* here = c.block(idx);
            if (tup[2 * k] == tup[2 * k + 1]) {
                for (std::size_t j = 0; j < m; ++j)
                    if (here[j] != 0) return std::make_pair(tup, k);
            } else {
                std::vector<std::size_t> sw = tup;
                std::swap(sw[2 * k], sw[2 * k + 1]);
                const Scalar* there = c.block_at(sw.data());
                for (std::size_t j = 0; j < m; ++j)
                    if (here[j] + there[j] != 0) return std::make_pair(tup, k);
            }
        }
        for (std::size_t i = d; i-- > 0;) {
            if (++tup[i] < n) break;
            tup[i] = 0;
        }
    }
    return std::nullopt;
}

inline Vector evaluate_cochain(const Cochain& c, const std::vector<Vector>& args) {
    if (args.size() != c.degree) throw DimensionMismatch("evaluate_cochain: argument count");
    for (const auto& a : args)
        if (a.size() != c.dimT) throw DimensionMismatch("evaluate_cochain: argument length");
    Vector out(c.dimV, Scalar(0));
    std::vector<std::size_t> tup(c.degree, 0);
    auto rec = [&](auto&& self, std::size_t slot, const Scalar& coeff) -> void {
        if (slot == c.degree) {
            const Scalar* blk = c.block_at(tup.data());
            for (std::size_t j = 0; j < c.dimV; ++j)
                if (blk[j] != 0) out[j] += coeff * blk[j];
            return;
        }
        for (std::size_t i = 0; i < c.dimT; ++i) {
            if (args[slot][i] == 0) continue;
            tup[slot] = i;
            self(self, slot + 1, coeff * args[slot][i]);
        }
    };
    rec(rec, 0, Scalar(1));
    return out;
}

namespace detail {

/// c evaluated at basis tuple `tup` with slot `pos` replaced by `vec`
/// (vec given as n contiguous coordinates); adds the result into acc.
inline void accumulate_slot(const Cochain& c, const std::size_t* tup, std::size_t pos,
                            const Scalar* vec, Vector& acc, const Scalar& sign) {
    std::size_t base = 0;
    for (std::size_t i = 0; i < c.degree; ++i) base = base * c.dimT + (i == pos ? 0 : tup[i]);
    std::size_t stride = 1;
    for (std::size_t i = pos + 1; i < c.degree; ++i) stride *= c.dimT;
    for (std::size_t k = 0; k < c.dimT; ++k) {
        if (vec[k] == 0) continue;
        const Scalar* blk = c.block(base + k * stride);
        Scalar f = sign * vec[k];
        for (std::size_t j = 0; j < c.dimV; ++j)
            if (blk[j] != 0) acc[j] += f * blk[j];
    }
}

inline void accumulate_matrix(const RationalMatrix& mat, const Scalar* vec, Vector& acc,
                              const Scalar& sign) {
    for (std::size_t k = 0; k < mat.cols; ++k) {
        if (vec[k] == 0) continue;
        for (std::size_t r = 0; r < mat.rows; ++r) {
            const Scalar& mv = mat.at(r, k);
            if (mv != 0) acc[r] += sign * mv * vec[k];
        }
    }
}

inline void next_tuple(std::vector<std::size_t>& tup, std::size_t n) {
    for (std::size_t i = tup.size(); i-- > 0;) {
        if (++tup[i] < n) return;
        tup[i] = 0;
    }
}

}  // namespace detail

/// Degree-1 coboundary: f |-> (delta_I f, delta_II f) in C^2 x C^3.
inline CochainPair delta1(const LYAStructure& s, const Representation& r, const OneCochain& f) {
    const std::size_t n = s.dim, m = r.dimV;
    if (f.m.rows != m || f.m.cols != n) throw DimensionMismatch("delta1: cochain shape");
    if (r.dimT != n) throw DimensionMismatch("delta1: representation dimT");
    Cochain d2(2, n, m), d3(3, n, m);
    auto fcol = [&](std::size_t j) {
        Vector out(m);
        for (std::size_t i = 0; i < m; ++i) out[i] = f.m.at(i, j);
        return out;
    };
    std::vector<Vector> fb(n);
    for (std::size_t j = 0; j < n; ++j) fb[j] = fcol(j);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            // rho(a) f(b) - rho(b) f(a) - f(ab)
            Vector acc = r.rh(a) * fb[b];
            add_scaled(acc, Scalar(-1), r.rh(b) * fb[a]);
            const Scalar* prod = s.bin_row(a, b);
            for (std::size_t k = 0; k < n; ++k)
                if (prod[k] != 0) add_scaled(acc, -prod[k], fb[k]);
            std::size_t tup[2] = {a, b};
            Scalar* blk = d2.block(d2.flat(tup));
            for (std::size_t j = 0; j < m; ++j) blk[j] = std::move(acc[j]);
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                // theta(b,c) f(a) - theta(a,c) f(b) + D(a,b) f(c) - f([a,b,c])
                Vector acc = r.th(b, c) * fb[a];
                add_scaled(acc, Scalar(-1), r.th(a, c) * fb[b]);
                add_to(acc, r.D(a, b) * fb[c]);
                const Scalar* br = s.ter_row(a, b, c);
                for (std::size_t k = 0; k < n; ++k)
                    if (br[k] != 0) add_scaled(acc, -br[k], fb[k]);
                std::size_t tup[3] = {a, b, c};
                Scalar* blk = d3.block(d3.flat(tup));
                for (std::size_t j = 0; j < m; ++j) blk[j] = std::move(acc[j]);
            }
    CochainPair out(std::move(d2), std::move(d3));
    if (alternation_violation(out.even) || alternation_violation(out.odd))
        throw InternalError("delta1 output violates pair alternation");
    return out;
}

/// Level-p coboundary (f,g) |-> (delta_I(f,g), delta_II(g)) at level p+1.
inline CochainPair delta(const LYAStructure& s, const Representation& r, const CochainPair& in) {
    const std::size_t n = s.dim, m = r.dimV;
    if (in.even.dimT != n || in.even.dimV != m) throw DimensionMismatch("delta: cochain dims");
    const std::size_t p = in.level();
    if (p < 1) throw LevelError("delta: level must be >= 1");
    const Cochain& f = in.even;
    const Cochain& g = in.odd;
    const Scalar sgn_p((p % 2 == 0) ? 1 : -1);
    const bool flip = debug::flip_delta_sign();

    Cochain oe(2 * p + 2, n, m);
    {
        const std::size_t d = 2 * p + 2;
        std::vector<std::size_t> x(d, 0), rest(d - 1), gt(d - 1);
        for (std::size_t idx = 0; idx < oe.tuple_count(); ++idx, detail::next_tuple(x, n)) {
            Vector acc(m, Scalar(0));
            // (-1)^p [ rho(x_{2p+1}) g(x_1..x_{2p}, x_{2p+2})
            //          - rho(x_{2p+2}) g(x_1..x_{2p+1}) - g(x_1..x_{2p}, x_{2p+1} x_{2p+2}) ]
            for (std::size_t i = 0; i < 2 * p; ++i) gt[i] = x[i];
            gt[2 * p] = x[2 * p + 1];
            detail::accumulate_matrix(r.rh(x[2 * p]), g.block_at(gt.data()), acc,
                                      flip ? -sgn_p : sgn_p);
            gt[2 * p] = x[2 * p];
            detail::accumulate_matrix(r.rh(x[2 * p + 1]), g.block_at(gt.data()), acc, -sgn_p);
            detail::accumulate_slot(g, gt.data(), 2 * p, s.bin_row(x[2 * p], x[2 * p + 1]), acc,
                                    -sgn_p);
            for (std::size_t k = 1; k <= p; ++k) {
                std::size_t w = 0;
                for (std::size_t i = 0; i < d; ++i)
                    if (i != 2 * k - 2 && i != 2 * k - 1) rest[w++] = x[i];
                const Scalar sk((k % 2 == 1) ? 1 : -1);  // (-1)^{k+1}
                detail::accumulate_matrix(r.D(x[2 * k - 2], x[2 * k - 1]), f.block_at(rest.data()),
                                          acc, sk);
                // slot q of x (q >= 2k) sits at q-2 within rest
                for (std::size_t q = 2 * k; q < d; ++q)
                    detail::accumulate_slot(f, rest.data(), q - 2,
                                            s.ter_row(x[2 * k - 2], x[2 * k - 1], x[q]), acc, -sk);
            }
            Scalar* blk = oe.block(idx);
            for (std::size_t j = 0; j < m; ++j) blk[j] = std::move(acc[j]);
        }
    }

    Cochain oo(2 * p + 3, n, m);
    {
        const std::size_t d = 2 * p + 3;
        std::vector<std::size_t> x(d, 0), rest(d - 1), gt(d - 2);
        for (std::size_t idx = 0; idx < oo.tuple_count(); ++idx, detail::next_tuple(x, n)) {
            Vector acc(m, Scalar(0));
            // (-1)^p [ theta(x_{2p+2}, x_{2p+3}) g(x_1..x_{2p+1})
            //          - theta(x_{2p+1}, x_{2p+3}) g(x_1..x_{2p}, x_{2p+2}) ]
            for (std::size_t i = 0; i < 2 * p; ++i) gt[i] = x[i];
            gt[2 * p] = x[2 * p];
            detail::accumulate_matrix(r.th(x[2 * p + 1], x[2 * p + 2]), g.block_at(gt.data()), acc,
                                      sgn_p);
            gt[2 * p] = x[2 * p + 1];
            detail::accumulate_matrix(r.th(x[2 * p], x[2 * p + 2]), g.block_at(gt.data()), acc,
                                      -sgn_p);
            for (std::size_t k = 1; k <= p + 1; ++k) {
                std::size_t w = 0;
                for (std::size_t i = 0; i < d; ++i)
                    if (i != 2 * k - 2 && i != 2 * k - 1) rest[w++] = x[i];
                const Scalar sk((k % 2 == 1) ? 1 : -1);
                detail::accumulate_matrix(r.D(x[2 * k - 2], x[2 * k - 1]), g.block_at(rest.data()),
                                          acc, sk);
                for (std::size_t q = 2 * k; q < d; ++q)
                    detail::accumulate_slot(g, rest.data(), q - 2,
                                            s.ter_row(x[2 * k - 2], x[2 * k - 1], x[q]), acc, -sk);
            }
            Scalar* blk = oo.block(idx);
            for (std::size_t j = 0; j < m; ++j) blk[j] = std::move(acc[j]);
        }
    }

    CochainPair out(std::move(oe), std::move(oo));
    if (!flip && (alternation_violation(out.even) || alternation_violation(out.odd)))
        throw InternalError("delta output violates pair alternation");
    return out;
}

/// Level-1 auxiliary coboundary (f,g) |-> (delta*_I, delta*_II) in C^3 x C^4.
/// The degree-4 result alternates in its first pair only; the second-pair
/// constraint genuinely fails for some inputs, so it is not imposed.
inline std::pair<Cochain, Cochain> delta_star(const LYAStructure& s, const Representation& r,
                                              const CochainPair& in) {
    if (in.level() != 1) throw LevelError("delta_star: level must be 1");
    const std::size_t n = s.dim, m = r.dimV;
    if (in.even.dimT != n || in.even.dimV != m) throw DimensionMismatch("delta_star: dims");
    const Cochain& f = in.even;
    const Cochain& g = in.odd;
    Cochain o3(3, n, m), o4(4, n, m);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                // -rho(a) f(b,c) - rho(b) f(c,a) - rho(c) f(a,b)
                // + f(ab,c) + f(bc,a) + f(ca,b) + g(a,b,c) + g(b,c,a) + g(c,a,b)
                Vector acc(m, Scalar(0));
                std::size_t bc[2] = {b, c}, ca[2] = {c, a}, ab[2] = {a, b};
                detail::accumulate_matrix(r.rh(a), f.block_at(bc), acc, Scalar(-1));
                detail::accumulate_matrix(r.rh(b), f.block_at(ca), acc, Scalar(-1));
                detail::accumulate_matrix(r.rh(c), f.block_at(ab), acc, Scalar(-1));
                std::size_t sc[2] = {0, c};
                detail::accumulate_slot(f, sc, 0, s.bin_row(a, b), acc, Scalar(1));
                sc[1] = a;
                detail::accumulate_slot(f, sc, 0, s.bin_row(b, c), acc, Scalar(1));
                sc[1] = b;
                detail::accumulate_slot(f, sc, 0, s.bin_row(c, a), acc, Scalar(1));
                std::size_t g1[3] = {a, b, c}, g2[3] = {b, c, a}, g3[3] = {c, a, b};
                const Scalar* p1 = g.block_at(g1);
                const Scalar* p2 = g.block_at(g2);
                const Scalar* p3 = g.block_at(g3);
                for (std::size_t j = 0; j < m; ++j) acc[j] += p1[j] + p2[j] + p3[j];
                std::size_t tup[3] = {a, b, c};
                Scalar* blk = o3.block(o3.flat(tup));
                for (std::size_t j = 0; j < m; ++j) blk[j] = std::move(acc[j]);
            }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d) {
                    // theta(a,d) f(b,c) + theta(b,d) f(c,a) + theta(c,d) f(a,b)
                    // + g(ab,c,d) + g(bc,a,d) + g(ca,b,d)
                    Vector acc(m, Scalar(0));
                    std::size_t bc[2] = {b, c}, ca[2] = {c, a}, ab[2] = {a, b};
                    detail::accumulate_matrix(r.th(a, d), f.block_at(bc), acc, Scalar(1));
                    detail::accumulate_matrix(r.th(b, d), f.block_at(ca), acc, Scalar(1));
                    detail::accumulate_matrix(r.th(c, d), f.block_at(ab), acc, Scalar(1));
                    std::size_t sg[3] = {0, c, d};
                    detail::accumulate_slot(g, sg, 0, s.bin_row(a, b), acc, Scalar(1));
                    sg[1] = a;
                    detail::accumulate_slot(g, sg, 0, s.bin_row(b, c), acc, Scalar(1));
                    sg[1] = b;
                    detail::accumulate_slot(g, sg, 0, s.bin_row(c, a), acc, Scalar(1));
                    std::size_t tup[4] = {a, b, c, d};
                    Scalar* blk = o4.block(o4.flat(tup));
                    for (std::size_t j = 0; j < m; ++j) blk[j] = std::move(acc[j]);
                }
    return {std::move(o3), std::move(o4)};
}

// ---- coordinatization ----------------------------------------------------

/// Canonical coordinates of C^degree(T,V): index order (target j; one
/// ordered pair i<j per designated slot pair, lexicographic; free odd slot).
struct CochainBasisKey {
    std::size_t target = 0;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::optional<std::size_t> free_slot;
};

inline std::vector<CochainBasisKey> basis_keys(std::size_t n, std::size_t m, std::size_t degree) {
    std::vector<std::pair<std::size_t, std::size_t>> prs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) prs.emplace_back(i, j);
    const std::size_t p = degree / 2;
    const bool odd = degree % 2 == 1;
    std::vector<CochainBasisKey> keys;
    keys.reserve(cochain_space_dim(n, m, degree));
    std::vector<std::size_t> combo(p, 0);
    for (std::size_t j = 0; j < m; ++j) {
        std::fill(combo.begin(), combo.end(), 0);
        bool done = false;
        while (!done) {
            CochainBasisKey key;
            key.target = j;
            for (std::size_t k = 0; k < p; ++k) key.pairs.push_back(prs[combo[k]]);
            if (odd) {
                for (std::size_t s0 = 0; s0 < n; ++s0) {
                    key.free_slot = s0;
                    keys.push_back(key);
                }
            } else {
                keys.push_back(key);
            }
            done = true;
            for (std::size_t k = p; k-- > 0;) {
                if (++combo[k] < prs.size()) {
                    done = false;
                    break;
                }
                combo[k] = 0;
            }
            if (p == 0) break;
        }
    }
    return keys;
}

inline Cochain basis_cochain(std::size_t n, std::size_t m, std::size_t degree,
                             const CochainBasisKey& key) {
    Cochain c(degree, n, m);
    const std::size_t p = degree / 2;
    std::vector<std::size_t> tup(degree);
    for (std::size_t mask = 0; mask < (std::size_t{1} << p); ++mask) {
        int sign = 1;
        for (std::size_t k = 0; k < p; ++k) {
            auto [i1, i2] = key.pairs[k];
            if (mask >> k & 1) {
                tup[2 * k] = i2;
                tup[2 * k + 1] = i1;
                sign = -sign;
            } else {
                tup[2 * k] = i1;
                tup[2 * k + 1] = i2;
            }
        }
        if (key.free_slot) tup[degree - 1] = *key.free_slot;
        c.coeff(tup.data(), key.target) = sign;
    }
    return c;
}

inline std::vector<Cochain> standard_basis(std::size_t n, std::size_t m, std::size_t degree) {
    std::vector<Cochain> out;
    for (const auto& key : basis_keys(n, m, degree)) out.push_back(basis_cochain(n, m, degree, key));
    return out;
}

/// Coordinates of an alternating cochain in the standard basis.
inline Vector canonical_coordinates(const Cochain& c) {
    std::vector<CochainBasisKey> keys = basis_keys(c.dimT, c.dimV, c.degree);
    Vector out;
    out.reserve(keys.size());
    std::vector<std::size_t> tup(c.degree);
    for (const auto& key : keys) {
        for (std::size_t k = 0; k < key.pairs.size(); ++k) {
            tup[2 * k] = key.pairs[k].first;
            tup[2 * k + 1] = key.pairs[k].second;
        }
        if (key.free_slot) tup[c.degree - 1] = *key.free_slot;
        out.push_back(c.coeff(tup.data(), key.target));
    }
    return out;
}

inline Cochain cochain_from_canonical(std::size_t n, std::size_t m, std::size_t degree,
                                      const Vector& coords) {
    std::vector<CochainBasisKey> keys = basis_keys(n, m, degree);
    if (coords.size() != keys.size()) throw DimensionMismatch("cochain_from_canonical");
    Cochain c(degree, n, m);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        if (coords[i] == 0) continue;
        Cochain b = basis_cochain(n, m, degree, keys[i]);
        for (std::size_t w = 0; w < c.v.size(); ++w)
            if (b.v[w] != 0) c.v[w] += coords[i] * b.v[w];
    }
    return c;
}

inline Vector pair_coordinates(const CochainPair& p) {
    Vector even = canonical_coordinates(p.even);
    Vector odd = canonical_coordinates(p.odd);
    even.insert(even.end(), odd.begin(), odd.end());
    return even;
}

inline CochainPair pair_from_coordinates(std::size_t level, std::size_t n, std::size_t m,
                                         const Vector& coords) {
    std::size_t de = cochain_space_dim(n, m, 2 * level);
    std::size_t dodd = cochain_space_dim(n, m, 2 * level + 1);
    if (coords.size() != de + dodd) throw DimensionMismatch("pair_from_coordinates");
    Vector ce(coords.begin(), coords.begin() + de);
    Vector co(coords.begin() + de, coords.end());
    return CochainPair(cochain_from_canonical(n, m, 2 * level, ce),
                       cochain_from_canonical(n, m, 2 * level + 1, co));
}

inline Vector one_cochain_coordinates(const OneCochain& f) {
    Vector out;
    out.reserve(f.m.rows * f.m.cols);
    for (std::size_t j = 0; j < f.m.rows; ++j)
        for (std::size_t s0 = 0; s0 < f.m.cols; ++s0) out.push_back(f.m.at(j, s0));
    return out;
}

inline OneCochain one_cochain_from_coordinates(std::size_t n, std::size_t m, const Vector& coords) {
    if (coords.size() != n * m) throw DimensionMismatch("one_cochain_from_coordinates");
    OneCochain f(m, n);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t s0 = 0; s0 < n; ++s0) f.m.at(j, s0) = coords[j * n + s0];
    return f;
}

}  // namespace lya
