#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <vector>

#include "lya/errors.hpp"

namespace lya {

using Scalar = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;
using Vector = std::vector<Scalar>;

/// Parses "p", "p/q", with optional leading sign; normalized, q > 0.
inline Scalar parse_rational(const std::string& s) {
    auto bad = [&] { throw ParseError("not a rational: \"" + s + "\""); };
    std::size_t pos = 0;
    bool neg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        neg = s[pos] == '-';
        ++pos;
    }
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) bad();
    Integer num(s.substr(start, pos - start));
    Integer den(1);
    if (pos < s.size()) {
        if (s[pos] != '/') bad();
        ++pos;
        std::size_t dstart = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == dstart || pos != s.size()) bad();
        den = Integer(s.substr(dstart, pos - dstart));
        if (den == 0) throw ParseError("zero denominator: \"" + s + "\"");
    }
    if (neg) num = -num;
    return Scalar(num, den);
}

/// Canonical form "p/q" (always includes the denominator).
inline std::string format_rational(const Scalar& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

inline bool is_zero(const Vector& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline void add_to(Vector& dst, const Vector& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

inline void add_scaled(Vector& dst, const Scalar& c, const Vector& src) {
    if (c == 0) return;
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += c * src[i];
}

inline Vector operator+(Vector a, const Vector& b) {
    add_to(a, b);
    return a;
}

inline Vector operator-(Vector a, const Vector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

inline Vector operator-(Vector a) {
    for (auto& x : a) x = -x;
    return a;
}

inline Vector operator*(const Scalar& c, Vector a) {
    for (auto& x : a) x *= c;
    return a;
}

inline Vector unit_vector(std::size_t dim, std::size_t i) {
    Vector v(dim, Scalar(0));
    v[i] = 1;
    return v;
}

}  // namespace lya
