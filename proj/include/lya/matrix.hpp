#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "lya/errors.hpp"
#include "lya/rational.hpp"

namespace lya {

/// Dense row-major matrix over exact rationals.
struct RationalMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Scalar> a;

    RationalMatrix() = default;
    RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Scalar(0)) {}

    Scalar& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    const Scalar& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    static RationalMatrix identity(std::size_t n) {
        RationalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    bool is_zero() const {
        for (const auto& x : a)
            if (x != 0) return false;
        return true;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;
};

inline RationalMatrix operator+(RationalMatrix x, const RationalMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimensionMismatch("matrix add");
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}

inline RationalMatrix operator-(RationalMatrix x, const RationalMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw DimensionMismatch("matrix sub");
    for (std::size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}

inline RationalMatrix operator-(RationalMatrix x) {
    for (auto& v : x.a) v = -v;
    return x;
}

inline RationalMatrix operator*(const Scalar& c, RationalMatrix x) {
    for (auto& v : x.a) v *= c;
    return x;
}

inline RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
    if (x.cols != y.rows) throw DimensionMismatch("matrix mul");
    RationalMatrix out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Scalar& xv = x.at(i, k);
            if (xv == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) {
                const Scalar& yv = y.at(k, j);
                if (yv != 0) out.at(i, j) += xv * yv;
            }
        }
    return out;
}

inline Vector operator*(const RationalMatrix& m, const Vector& v) {
    if (m.cols != v.size()) throw DimensionMismatch("matrix-vector mul");
    Vector out(m.rows, Scalar(0));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) {
            const Scalar& mv = m.at(i, j);
            if (mv != 0 && v[j] != 0) out[i] += mv * v[j];
        }
    return out;
}

inline RationalMatrix commutator(const RationalMatrix& x, const RationalMatrix& y) {
    return x * y - y * x;
}

struct RrefResult {
    RationalMatrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
};

namespace detail {

/// Gauss-Jordan restricted to the first `limit` columns (rest carried along).
/// Pivot choice: largest |entry| in the column, earliest row on ties.
inline RrefResult rref_limited(RationalMatrix m, std::size_t limit) {
    RrefResult res;
    std::size_t r = 0;
    for (std::size_t c = 0; c < limit && r < m.rows; ++c) {
        std::size_t best = m.rows;
        for (std::size_t i = r; i < m.rows; ++i) {
            if (m.at(i, c) == 0) continue;
            if (best == m.rows || abs(m.at(i, c)) > abs(m.at(best, c))) best = i;
        }
        if (best == m.rows) continue;
        if (best != r)
            for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(best, j));
        Scalar pivot = m.at(r, c);
        for (std::size_t j = 0; j < m.cols; ++j)
            if (m.at(r, j) != 0) m.at(r, j) /= pivot;
        for (std::size_t i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            Scalar factor = m.at(i, c);
            if (factor == 0) continue;
            for (std::size_t j = 0; j < m.cols; ++j)
                if (m.at(r, j) != 0) m.at(i, j) -= factor * m.at(r, j);
        }
        res.pivots.push_back(c);
        ++r;
    }
    res.rank = res.pivots.size();
    res.reduced = std::move(m);
    return res;
}

}  // namespace detail

inline RrefResult rref(const RationalMatrix& m) { return detail::rref_limited(m, m.cols); }

inline std::size_t rank(const RationalMatrix& m) { return rref(m).rank; }

/// Null-space basis; size cols - rank. Free columns in increasing order,
/// each basis vector has 1 at its free column.
inline std::vector<Vector> kernel_basis(const RationalMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t c : r.pivots) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t fc = 0; fc < m.cols; ++fc) {
        if (is_pivot[fc]) continue;
        Vector v(m.cols, Scalar(0));
        v[fc] = 1;
        for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced.at(i, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Particular solution of A x = b, or nullopt when inconsistent.
/// Free variables are set to zero (rref-pivot canonical solution).
inline std::optional<Vector> solve(const RationalMatrix& m, const Vector& b) {
    if (b.size() != m.rows) throw DimensionMismatch("solve: rhs length");
    RationalMatrix aug(m.rows, m.cols + 1);
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    RrefResult r = detail::rref_limited(std::move(aug), m.cols);
    for (std::size_t i = r.rank; i < m.rows; ++i)
        if (r.reduced.at(i, m.cols) != 0) return std::nullopt;
    Vector x(m.cols, Scalar(0));
    for (std::size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.reduced.at(i, m.cols);
    return x;
}

}  // namespace lya
