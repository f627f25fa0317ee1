#pragma once

// Pairs of r-planes in P^n and the 2-Terracini condition on G(r, n), decided by
// intersection dimension and cross-checked on Pluecker index sets.

#include <algorithm>
#include <set>
#include <vector>

#include "terracini/arith.hpp"
#include "terracini/error.hpp"
#include "terracini/linalg.hpp"

namespace terracini {

/// Projective r-plane in P^n spanned by the rows of `basis`.
struct Subspace {
    std::size_t r = 0, n = 0;
    RationalMatrix basis;  // (r+1) x (n+1)
};

using PluckerIndexSet = std::vector<std::size_t>;

inline Subspace make_subspace(std::size_t n, const RationalMatrix& basis) {
    if (basis.rows() == 0) throw InvalidArgument("subspace needs at least one basis vector");
    if (basis.cols() != n + 1) throw DimensionMismatch("basis vectors must have n+1 coordinates");
    if (rank(basis) != basis.rows()) throw InvalidArgument("basis rows are linearly dependent");
    if (basis.rows() > n) throw InvalidArgument("subspace must be proper: r < n");
    return {basis.rows() - 1, n, basis};
}

namespace detail {

inline RationalMatrix stack(const RationalMatrix& a, const RationalMatrix& b) {
    RationalMatrix m(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
    return m;
}

inline void require_same_ambient(const Subspace& u, const Subspace& v) {
    if (u.n != v.n) throw DimensionMismatch("subspaces live in different projective spaces");
}

inline void require_distinct(const Subspace& u, const Subspace& v) {
    if (u.r != v.r) throw DimensionMismatch("points of one Grassmannian must have equal dimension");
    if (rank(stack(u.basis, v.basis)) == u.r + 1) throw InvalidArgument("subspaces are equal");
}

}  // namespace detail

/// Projective dimension of U and V meeting; -1 when they are disjoint.
inline long intersection_dim(const Subspace& u, const Subspace& v) {
    detail::require_same_ambient(u, v);
    auto k = static_cast<long>(rank(detail::stack(u.basis, v.basis)));
    return static_cast<long>(u.r + 1) + static_cast<long>(v.r + 1) - k - 1;
}

/// (U, V) lies in the 2-Terracini locus of G(r, n) iff dim(U cap V) >= r - 2.
inline bool in_T2(const Subspace& u, const Subspace& v) {
    detail::require_same_ambient(u, v);
    detail::require_distinct(u, v);
    return intersection_dim(u, v) >= static_cast<long>(u.r) - 2;
}

/// Index sets I with Hamming distance at most one from `base`; they index the
/// Pluecker coordinates spanning the tangent space at the coordinate plane.
inline std::vector<PluckerIndexSet> tangent_index_set(const PluckerIndexSet& base, std::size_t n) {
    if (!std::is_sorted(base.begin(), base.end()) || std::adjacent_find(base.begin(), base.end()) != base.end())
        throw InvalidArgument("index set must be strictly increasing");
    if (!base.empty() && base.back() > n) throw InvalidArgument("index exceeds n");
    std::vector<PluckerIndexSet> out{base};
    std::set<std::size_t> in(base.begin(), base.end());
    for (std::size_t k = 0; k < base.size(); ++k)
        for (std::size_t j = 0; j <= n; ++j) {
            if (in.count(j)) continue;
            PluckerIndexSet i = base;
            i[k] = j;
            std::sort(i.begin(), i.end());
            out.push_back(i);
        }
    std::sort(out.begin(), out.end());
    return out;
}

struct StandardPosition {
    RationalMatrix change;  // rows: new basis of k^{n+1}
    long s = -1;            // dim(U cap V)
    PluckerIndexSet u_indices, v_indices;
};

/// Basis of k^{n+1} in which U = <e_0..e_r> and V = <e_0..e_s, e_{r+1}..e_{2r-s}>.
/// The intersection comes first, then the rest of U, then the rest of V, then
/// standard vectors; candidates are taken in order of lowest index.
inline StandardPosition standard_position(const Subspace& u, const Subspace& v) {
    detail::require_same_ambient(u, v);
    detail::require_distinct(u, v);
    const std::size_t r = u.r, dim = u.n + 1;
    // a.U - b.V = 0 gives the intersection vectors a.U
    auto k = kernel_basis(detail::stack(u.basis, v.basis).transpose());
    std::vector<RatVector> chosen;
    auto independent_with = [&](const RatVector& x) {
        auto trial = chosen;
        trial.push_back(x);
        return rank(RationalMatrix::from_rows(trial, dim)) == trial.size();
    };
    for (const auto& c : k) {
        RatVector w(dim, Rational(0));
        for (std::size_t i = 0; i <= r; ++i)
            for (std::size_t j = 0; j < dim; ++j) w[j] += c[i] * u.basis(i, j);
        if (independent_with(w)) chosen.push_back(w);
    }
    const long s = static_cast<long>(chosen.size()) - 1;
    for (std::size_t i = 0; i <= r; ++i)
        if (independent_with(u.basis.row(i))) chosen.push_back(u.basis.row(i));
    for (std::size_t i = 0; i <= r; ++i)
        if (independent_with(v.basis.row(i))) chosen.push_back(v.basis.row(i));
    const std::size_t span_uv = chosen.size();
    for (std::size_t j = 0; j < dim && chosen.size() < dim; ++j) {
        RatVector e(dim, Rational(0));
        e[j] = 1;
        if (independent_with(e)) chosen.push_back(e);
    }
    if (span_uv != 2 * (r + 1) - static_cast<std::size_t>(s + 1)) throw Error("internal: intersection basis has wrong size");

    StandardPosition sp;
    sp.change = RationalMatrix::from_rows(chosen, dim);
    sp.s = s;
    for (std::size_t i = 0; i <= r; ++i) sp.u_indices.push_back(i);
    for (long i = 0; i <= s; ++i) sp.v_indices.push_back(static_cast<std::size_t>(i));
    for (std::size_t i = r + 1; i < span_uv; ++i) sp.v_indices.push_back(i);

    // Coordinates of each basis row in the new basis must be supported on the claimed indices.
    auto inv = inverse(sp.change.transpose());
    auto check = [&](const RationalMatrix& b, const PluckerIndexSet& support) {
        std::set<std::size_t> ok(support.begin(), support.end());
        for (std::size_t i = 0; i < b.rows(); ++i) {
            auto coords = inv * b.row(i);
            for (std::size_t j = 0; j < dim; ++j)
                if (sgn(coords[j]) != 0 && !ok.count(j)) throw Error("internal: subspace not in standard position");
        }
    };
    check(u.basis, sp.u_indices);
    check(v.basis, sp.v_indices);
    return sp;
}

/// True iff the tangent spaces at U and V, written on Pluecker index sets in
/// standard position, share no index set.
inline bool verify_via_plucker(const Subspace& u, const Subspace& v) {
    auto sp = standard_position(u, v);
    auto a = tangent_index_set(sp.u_indices, u.n);
    auto b = tangent_index_set(sp.v_indices, u.n);
    std::vector<PluckerIndexSet> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    return common.empty();
}

}  // namespace terracini
