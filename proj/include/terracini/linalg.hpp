#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "terracini/arith.hpp"
#include "terracini/error.hpp"

namespace terracini {

/// Dense row-major matrix over an exact scalar type.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatch("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    /// Builds from a list of rows; `cols` is needed when `rows` may be empty.
    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw DimensionMismatch("ragged matrix rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        return from_rows(rows, rows.empty() ? 0 : rows.front().size());
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + static_cast<long>(i * cols_),
                              data_.begin() + static_cast<long>((i + 1) * cols_));
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }
    std::vector<std::vector<T>> row_list() const {
        std::vector<std::vector<T>> out;
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product: inner dimensions differ");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (sgn(a(i, k)) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
        if (a.cols_ != v.size()) throw DimensionMismatch("matrix-vector product: sizes differ");
        std::vector<T> r(a.rows_, T(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
        return r;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using IntegerMatrix = Matrix<Integer>;

inline RationalMatrix to_rational(const IntegerMatrix& m) {
    RationalMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
    return r;
}

/// Multiplies every row by the lcm of its denominators; the row space is unchanged.
inline IntegerMatrix clear_denominators(const RationalMatrix& m) {
    IntegerMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).get_den());
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j) * l).get_num();
    }
    return out;
}

namespace detail {

// Fraction-free (Bareiss) row echelon pass. Every intermediate entry is a minor
// of the input, so the divisions below are exact. Returns the rank; `sign`
// collects row-swap parity and `last_pivot` the final leading minor.
inline std::size_t bareiss_echelon(IntegerMatrix& a, int& sign, Integer& last_pivot) {
    const std::size_t m = a.rows(), n = a.cols();
    Integer prev = 1;
    std::size_t r = 0;
    sign = 1;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        std::size_t p = r;
        while (p < m && sgn(a(p, c)) == 0) ++p;
        if (p == m) continue;
        if (p != r) {
            a.swap_rows(p, r);
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < n; ++j) {
                Integer v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = v;
            }
            a(i, c) = 0;
        }
        prev = a(r, c);
        ++r;
    }
    last_pivot = prev;
    return r;
}

}  // namespace detail

inline std::size_t rank(const IntegerMatrix& m) {
    IntegerMatrix a = m;
    int sign = 1;
    Integer piv;
    return detail::bareiss_echelon(a, sign, piv);
}

inline std::size_t rank(const RationalMatrix& m) { return rank(clear_denominators(m)); }

inline Integer determinant(const IntegerMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
    if (m.rows() == 0) return 1;
    IntegerMatrix a = m;
    int sign = 1;
    Integer piv;
    std::size_t r = detail::bareiss_echelon(a, sign, piv);
    if (r < m.rows()) return 0;
    return sign * piv;
}

inline Rational determinant(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
    Rational scale_back = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).get_den());
        scale_back /= l;
    }
    Rational d = Rational(determinant(clear_denominators(m))) * scale_back;
    d.canonicalize();
    return d;
}

inline bool is_unimodular(const IntegerMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("is_unimodular: matrix is not square");
    return abs(determinant(m)) == 1;
}

/// Reduced row echelon form over Q; returns pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && sgn(a(p, c)) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(p, r);
        Rational inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || sgn(a(i, c)) == 0) continue;
            Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

/// Right null space basis; vectors are coprime integers with the first nonzero entry positive.
inline std::vector<RatVector> kernel_basis(const RationalMatrix& m) {
    RationalMatrix a = m;
    auto pivots = rref(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatVector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        RatVector v(m.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
        basis.push_back(to_rational(normalized_direction(v)));
    }
    return basis;
}

inline std::vector<RatVector> kernel_basis(const IntegerMatrix& m) { return kernel_basis(to_rational(m)); }

/// Some solution of a x = b, or nullopt when the system is inconsistent.
inline std::optional<RatVector> solve(const RationalMatrix& a, const RatVector& b) {
    if (a.rows() != b.size()) throw DimensionMismatch("solve: right-hand side has wrong length");
    RationalMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    RatVector x(a.cols(), Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
    return x;
}

inline RationalMatrix inverse(const RationalMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw InvalidArgument("matrix is singular");
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

/// Hermite and Smith forms with their unimodular transformations:
/// hermite_left * A = hermite, smith_left * A * smith_right = smith.
struct LatticeNormalForm {
    IntegerMatrix hermite;
    IntegerMatrix hermite_left;
    IntegerMatrix smith;
    IntegerMatrix smith_left;
    IntegerMatrix smith_right;

    /// Nonzero diagonal entries of the Smith form.
    IntVector invariant_factors() const {
        IntVector f;
        for (std::size_t i = 0; i < std::min(smith.rows(), smith.cols()); ++i)
            if (sgn(smith(i, i)) != 0) f.push_back(smith(i, i));
        return f;
    }
};

namespace detail {

// Row operation rows (a, b) <- (x*a + y*b, u*a + v*b) with xv - yu = +-1.
inline void combine_rows(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& x, const Integer& y,
                         const Integer& u, const Integer& v) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Integer ra = m(a, j), rb = m(b, j);
        m(a, j) = x * ra + y * rb;
        m(b, j) = u * ra + v * rb;
    }
}

inline void combine_cols(IntegerMatrix& m, std::size_t a, std::size_t b, const Integer& x, const Integer& y,
                         const Integer& u, const Integer& v) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Integer ca = m(i, a), cb = m(i, b);
        m(i, a) = x * ca + y * cb;
        m(i, b) = u * ca + v * cb;
    }
}

inline void extended_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline void hermite(IntegerMatrix& h, IntegerMatrix& u) {
    const std::size_t m = h.rows(), n = h.cols();
    u = IntegerMatrix::identity(m);
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < m; ++c) {
        for (std::size_t i = r + 1; i < m; ++i) {
            if (sgn(h(i, c)) == 0) continue;
            Integer g, s, t;
            extended_gcd(h(r, c), h(i, c), g, s, t);
            Integer a = h(r, c) / g, b = h(i, c) / g;
            // [s t; -b a] has determinant s*a + t*b = 1.
            combine_rows(h, r, i, s, t, -b, a);
            combine_rows(u, r, i, s, t, -b, a);
        }
        if (sgn(h(r, c)) == 0) continue;
        if (sgn(h(r, c)) < 0) {
            for (std::size_t j = 0; j < n; ++j) h(r, j) = -h(r, j);
            for (std::size_t j = 0; j < m; ++j) u(r, j) = -u(r, j);
        }
        for (std::size_t i = 0; i < r; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), h(i, c).get_mpz_t(), h(r, c).get_mpz_t());
            if (sgn(q) == 0) continue;
            for (std::size_t j = 0; j < n; ++j) h(i, j) -= q * h(r, j);
            for (std::size_t j = 0; j < m; ++j) u(i, j) -= q * u(r, j);
        }
        ++r;
    }
}

inline void smith(IntegerMatrix& s, IntegerMatrix& u, IntegerMatrix& v) {
    const std::size_t m = s.rows(), n = s.cols();
    u = IntegerMatrix::identity(m);
    v = IntegerMatrix::identity(n);
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            bool found = false;
            std::size_t pi = t, pj = t;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (sgn(s(i, j)) != 0 && (!found || abs(s(i, j)) < abs(s(pi, pj)))) {
                        found = true;
                        pi = i;
                        pj = j;
                    }
            if (!found) return;
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (sgn(s(i, t)) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), s(i, t).get_mpz_t(), s(t, t).get_mpz_t());
                combine_rows(s, t, i, 1, 0, -q, 1);
                combine_rows(u, t, i, 1, 0, -q, 1);
                if (sgn(s(i, t)) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (sgn(s(t, j)) == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), s(t, j).get_mpz_t(), s(t, t).get_mpz_t());
                combine_cols(s, t, j, 1, 0, -q, 1);
                combine_cols(v, t, j, 1, 0, -q, 1);
                if (sgn(s(t, j)) != 0) clean = false;
            }
            if (!clean) continue;

            // Divisibility: fold an offending row into the pivot row and retry.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
                        combine_rows(s, t, i, 1, 1, 0, 1);
                        combine_rows(u, t, i, 1, 1, 0, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (sgn(s(t, t)) < 0) {
            for (std::size_t j = 0; j < n; ++j) s(t, j) = -s(t, j);
            for (std::size_t j = 0; j < m; ++j) u(t, j) = -u(t, j);
        }
    }
}

}  // namespace detail

inline LatticeNormalForm lattice_normal_form(const IntegerMatrix& m) {
    LatticeNormalForm f;
    f.hermite = m;
    detail::hermite(f.hermite, f.hermite_left);
    f.smith = m;
    detail::smith(f.smith, f.smith_left, f.smith_right);
    return f;
}

/// Row-style Hermite normal form only (the row lattice is unchanged).
inline IntegerMatrix hermite_form(const IntegerMatrix& m) {
    IntegerMatrix h = m, u;
    detail::hermite(h, u);
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < h.rows(); ++i)
        if (!is_zero(h.row(i))) nonzero = i + 1;
    IntegerMatrix out(nonzero, h.cols());
    for (std::size_t i = 0; i < nonzero; ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) out(i, j) = h(i, j);
    return out;
}

/// Basis of the lattice {x in Z^n : m x = 0}.
inline std::vector<IntVector> integer_kernel_basis(const IntegerMatrix& m) {
    IntegerMatrix s = m, u, v;
    detail::smith(s, u, v);
    std::size_t r = 0;
    while (r < std::min(s.rows(), s.cols()) && sgn(s(r, r)) != 0) ++r;
    std::vector<IntVector> basis;
    for (std::size_t j = r; j < m.cols(); ++j) basis.push_back(v.col(j));
    return basis;
}

}  // namespace terracini
