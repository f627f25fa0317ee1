#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "terracini/error.hpp"

namespace terracini {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline bool is_integral(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return is_integral(q); });
}

inline Rational floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(r);
}

inline Rational ceil(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rational(r);
}

inline Integer floor_int(const Rational& q) { return floor(q).get_num(); }
inline Integer ceil_int(const Rational& q) { return ceil(q).get_num(); }

inline RatVector to_rational(const IntVector& v) { return RatVector(v.begin(), v.end()); }

/// Throws if any entry has a denominator.
inline IntVector to_integer(const RatVector& v) {
    IntVector out;
    out.reserve(v.size());
    for (const auto& q : v) {
        if (!is_integral(q)) throw InvalidArgument("non-integral entry " + q.get_str());
        out.push_back(q.get_num());
    }
    return out;
}

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: vector sizes differ");
    T acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline Rational dot(const RatVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: vector sizes differ");
    Rational acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

template <typename T>
std::vector<T> operator+(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector sum: sizes differ");
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

template <typename T>
std::vector<T> operator-(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("vector difference: sizes differ");
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

template <typename T, typename S>
std::vector<T> scale(const std::vector<T>& a, const S& s) {
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

inline bool is_zero(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

inline bool is_zero(const IntVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Integer& q) { return sgn(q) == 0; });
}

inline Integer content(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

/// Scales to the primitive integer vector on the same ray (positive multiple).
inline IntVector primitive(const RatVector& v) {
    Integer l = 1;
    for (const auto& q : v) l = lcm(l, q.get_den());
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i] * l).get_num();
    Integer g = content(out);
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

inline IntVector primitive(const IntVector& v) {
    IntVector out = v;
    Integer g = content(out);
    if (g > 1)
        for (auto& x : out) x /= g;
    return out;
}

/// Content removed and first nonzero entry made positive.
inline IntVector normalized_direction(const RatVector& v) {
    IntVector out = primitive(v);
    auto it = std::find_if(out.begin(), out.end(), [](const Integer& x) { return sgn(x) != 0; });
    if (it != out.end() && sgn(*it) < 0)
        for (auto& x : out) x = -x;
    return out;
}

/// Accepts "p", "p/q" and "-p/q"; denominators must be nonzero.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    Rational q;
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size()) return false;
        return std::all_of(t.begin() + static_cast<long>(start), t.end(),
                           [](unsigned char c) { return std::isdigit(c); });
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw ParseError("not a rational number: '" + s + "'");
        q = Rational(Integer(strip_plus(s)));
    } else {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!valid_int(num) || !valid_int(den)) throw ParseError("not a rational number: '" + s + "'");
        Integer d(strip_plus(den));
        if (d == 0) throw ParseError("zero denominator in '" + s + "'");
        q = Rational(Integer(strip_plus(num)), d);
        q.canonicalize();
    }
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

template <typename T>
std::string to_string(const std::vector<T>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

}  // namespace terracini
