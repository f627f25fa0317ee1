#pragma once

// Exact rational polyhedra. Conversions between inequality and generator
// descriptions run the double description method on the homogenized cone
//   C = { (x, t) : normal.x - offset*t >= 0, t >= 0 },
// whose generators with t > 0 are vertices and with t = 0 are rays.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "terracini/arith.hpp"
#include "terracini/error.hpp"
#include "terracini/linalg.hpp"

namespace terracini {

/// normal . x >= offset
struct Halfspace {
    RatVector normal;
    Rational offset;

    friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

struct HalfspaceSystem {
    std::size_t dim = 0;
    std::vector<Halfspace> inequalities;

    void add(RatVector normal, Rational offset) {
        if (normal.size() != dim) throw DimensionMismatch("halfspace normal has wrong dimension");
        inequalities.push_back({std::move(normal), std::move(offset)});
    }
};

/// Convex polyhedron conv(vertices) + cone(rays) with a matching irredundant
/// inequality description. Lines are stored as a pair of opposite rays.
struct Polyhedron {
    HalfspaceSystem hrep;
    std::vector<RatVector> vertices;
    std::vector<IntVector> rays;

    std::size_t dim() const { return hrep.dim; }
    bool is_bounded() const { return rays.empty(); }

    bool contains(const RatVector& x) const {
        if (x.size() != dim()) throw DimensionMismatch("point has wrong dimension");
        return std::all_of(hrep.inequalities.begin(), hrep.inequalities.end(),
                           [&](const Halfspace& h) { return dot(h.normal, x) >= h.offset; });
    }

    bool contains_direction(const IntVector& r) const {
        return std::all_of(hrep.inequalities.begin(), hrep.inequalities.end(),
                           [&](const Halfspace& h) { return sgn(dot(h.normal, r)) >= 0; });
    }
};

/// A bounded polytope all of whose vertices are integral.
struct LatticePolytopeBody {
    std::size_t dim = 0;
    std::vector<IntVector> vertices;
};

namespace detail {

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : words_((n + 63) / 64, 0) {}
    void resize(std::size_t n) { words_.resize((n + 63) / 64, 0); }
    void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    Bitset operator&(const Bitset& o) const {
        Bitset r;
        r.words_.resize(std::min(words_.size(), o.words_.size()));
        for (std::size_t i = 0; i < r.words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
        return r;
    }
    bool is_subset_of(const Bitset& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t other = i < o.words_.size() ? o.words_[i] : 0;
            if (words_[i] & ~other) return false;
        }
        return true;
    }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

private:
    std::vector<std::uint64_t> words_;
};

struct ConeGenerators {
    std::vector<IntVector> rays;       // extreme rays of the cone modulo its lineality space
    std::vector<IntVector> lineality;  // basis of the lineality space
};

inline IntVector integer_row(const RatVector& v) { return primitive(v); }

// Generators of { y : a.y >= 0 for all rows a }.
inline ConeGenerators cone_generators(const std::vector<IntVector>& rows, std::size_t dim) {
    ConeGenerators out;
    if (dim == 0) return out;

    auto a = IntegerMatrix::from_rows(rows, dim);
    for (const auto& l : kernel_basis(a)) out.lineality.push_back(primitive(l));

    // Pin the lineality space to zero so the remaining cone is pointed.
    std::vector<IntVector> all = rows;
    for (const auto& l : out.lineality) {
        all.push_back(l);
        all.push_back(scale(l, Integer(-1)));
    }

    // Initial simplicial cone from a maximal independent subset of rows.
    std::vector<std::size_t> basis_rows;
    std::vector<IntVector> chosen;
    for (std::size_t i = 0; i < all.size() && chosen.size() < dim; ++i) {
        if (is_zero(all[i])) continue;
        chosen.push_back(all[i]);
        if (rank(IntegerMatrix::from_rows(chosen, dim)) == chosen.size())
            basis_rows.push_back(i);
        else
            chosen.pop_back();
    }
    if (chosen.size() < dim) throw Error("internal: cone is not pointed after removing lineality");

    RationalMatrix inv = inverse(to_rational(IntegerMatrix::from_rows(chosen, dim)));
    struct Gen {
        IntVector v;
        Bitset zeros;
    };
    std::vector<Gen> gens;
    std::vector<bool> processed(all.size(), false);
    for (auto i : basis_rows) processed[i] = true;
    std::vector<std::size_t> order = basis_rows;

    auto zero_set = [&](const IntVector& v) {
        Bitset z(all.size());
        for (std::size_t i = 0; i < all.size(); ++i)
            if (processed[i] && sgn(dot(all[i], v)) == 0) z.set(i);
        return z;
    };

    for (std::size_t k = 0; k < dim; ++k) {
        IntVector g = primitive(inv.col(k));
        gens.push_back({g, zero_set(g)});
    }

    for (std::size_t i = 0; i < all.size(); ++i) {
        if (processed[i]) continue;
        const IntVector& row = all[i];
        std::vector<Integer> val(gens.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            val[g] = dot(row, gens[g].v);
            if (sgn(val[g]) > 0)
                pos.push_back(g);
            else if (sgn(val[g]) < 0)
                neg.push_back(g);
        }
        processed[i] = true;
        if (neg.empty()) {
            for (auto& g : gens)
                if (sgn(dot(row, g.v)) == 0) g.zeros.set(i);
            continue;
        }
        std::vector<Gen> next;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (sgn(val[g]) >= 0) {
                Gen kept = gens[g];
                if (sgn(val[g]) == 0) kept.zeros.set(i);
                next.push_back(std::move(kept));
            }
        }
        for (auto p : pos) {
            for (auto n : neg) {
                Bitset common = gens[p].zeros & gens[n].zeros;
                if (common.count() + 2 < dim) continue;
                bool adjacent = true;
                for (std::size_t g = 0; g < gens.size() && adjacent; ++g) {
                    if (g == p || g == n) continue;
                    if (common.is_subset_of(gens[g].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                IntVector r(dim);
                for (std::size_t c = 0; c < dim; ++c) r[c] = val[p] * gens[n].v[c] - val[n] * gens[p].v[c];
                r = primitive(r);
                Bitset z = common;
                z.set(i);
                next.push_back({std::move(r), std::move(z)});
            }
        }
        gens = std::move(next);
    }

    for (auto& g : gens) out.rays.push_back(std::move(g.v));
    std::sort(out.rays.begin(), out.rays.end());
    out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
    return out;
}

inline IntVector homogenize(const Halfspace& h) {
    RatVector row = h.normal;
    row.push_back(-h.offset);
    return primitive(row);
}

inline bool in_span(const std::vector<IntVector>& span, const IntVector& v, std::size_t dim) {
    auto with = span;
    with.push_back(v);
    return rank(IntegerMatrix::from_rows(with, dim)) == rank(IntegerMatrix::from_rows(span, dim));
}

template <typename V>
void sort_unique(std::vector<V>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline HalfspaceSystem facets_of(std::size_t dim, const std::vector<RatVector>& vertices,
                                 const std::vector<IntVector>& rays) {
    std::vector<IntVector> gens;
    for (const auto& v : vertices) {
        if (v.size() != dim) throw DimensionMismatch("vertex has wrong dimension");
        RatVector h = v;
        h.push_back(1);
        gens.push_back(primitive(h));
    }
    for (const auto& r : rays) {
        if (r.size() != dim) throw DimensionMismatch("ray has wrong dimension");
        IntVector h = r;
        h.push_back(0);
        gens.push_back(h);
    }
    auto dual = cone_generators(gens, dim + 1);

    IntVector t_axis(dim + 1, Integer(0));
    t_axis[dim] = 1;
    auto trivial_span = dual.lineality;
    trivial_span.push_back(t_axis);

    HalfspaceSystem h;
    h.dim = dim;
    auto emit = [&](const IntVector& a) {
        RatVector normal(a.begin(), a.begin() + static_cast<long>(dim));
        h.inequalities.push_back({normal, Rational(-a[dim])});
    };
    std::vector<IntVector> facets;
    for (const auto& a : dual.rays) {
        if (in_span(trivial_span, a, dim + 1)) continue;  // t >= 0 modulo equations
        facets.push_back(a);
    }
    for (const auto& l : dual.lineality) {
        IntVector eq = normalized_direction(to_rational(l));
        facets.push_back(eq);
        facets.push_back(scale(eq, Integer(-1)));
    }
    sort_unique(facets);
    for (const auto& a : facets) emit(a);
    return h;
}

inline void generators_of(const HalfspaceSystem& h, std::vector<RatVector>& vertices, std::vector<IntVector>& rays) {
    const std::size_t dim = h.dim;
    std::vector<IntVector> rows;
    for (const auto& ineq : h.inequalities) {
        if (ineq.normal.size() != dim) throw DimensionMismatch("halfspace normal has wrong dimension");
        rows.push_back(homogenize(ineq));
    }
    IntVector t_row(dim + 1, Integer(0));
    t_row[dim] = 1;
    rows.push_back(t_row);

    auto gens = cone_generators(rows, dim + 1);
    vertices.clear();
    rays.clear();
    for (const auto& g : gens.rays) {
        IntVector head(g.begin(), g.begin() + static_cast<long>(dim));
        if (sgn(g[dim]) > 0) {
            RatVector v(dim);
            for (std::size_t i = 0; i < dim; ++i) {
                v[i] = Rational(g[i], g[dim]);
                v[i].canonicalize();
            }
            vertices.push_back(std::move(v));
        } else {
            rays.push_back(primitive(head));
        }
    }
    for (const auto& l : gens.lineality) {
        IntVector head(l.begin(), l.begin() + static_cast<long>(dim));
        rays.push_back(primitive(head));
        rays.push_back(primitive(scale(head, Integer(-1))));
    }
    if (vertices.empty()) throw EmptyPolyhedron("half-space system is infeasible");
    sort_unique(vertices);
    sort_unique(rays);
}

}  // namespace detail

/// Irredundant inequalities of conv(vertices) + cone(rays). Implicit
/// equations appear as a pair of opposite inequalities.
inline HalfspaceSystem vrep_to_hrep(std::size_t dim, const std::vector<RatVector>& vertices,
                                    const std::vector<IntVector>& rays) {
    if (vertices.empty()) throw EmptyPolyhedron("no vertices given");
    return detail::facets_of(dim, vertices, rays);
}

inline HalfspaceSystem vrep_to_hrep(const Polyhedron& p) { return vrep_to_hrep(p.dim(), p.vertices, p.rays); }

inline Polyhedron hrep_to_vrep(const HalfspaceSystem& h) {
    Polyhedron p;
    detail::generators_of(h, p.vertices, p.rays);
    p.hrep = detail::facets_of(h.dim, p.vertices, p.rays);
    return p;
}

/// Polyhedron from generators; non-extreme generators are discarded.
inline Polyhedron polyhedron_from_vrep(std::size_t dim, const std::vector<RatVector>& vertices,
                                       const std::vector<IntVector>& rays = {}) {
    Polyhedron p;
    p.hrep = vrep_to_hrep(dim, vertices, rays);
    detail::generators_of(p.hrep, p.vertices, p.rays);
    return p;
}

inline Polyhedron polyhedron_from_vrep(std::size_t dim, const std::vector<IntVector>& vertices,
                                       const std::vector<IntVector>& rays = {}) {
    std::vector<RatVector> v;
    for (const auto& x : vertices) v.push_back(to_rational(x));
    return polyhedron_from_vrep(dim, v, rays);
}

/// Exact set equality through mutual containment of generators.
inline bool same_set(const Polyhedron& a, const Polyhedron& b) {
    if (a.dim() != b.dim()) return false;
    auto inside = [](const Polyhedron& x, const Polyhedron& y) {
        return std::all_of(x.vertices.begin(), x.vertices.end(), [&](const RatVector& v) { return y.contains(v); }) &&
               std::all_of(x.rays.begin(), x.rays.end(), [&](const IntVector& r) { return y.contains_direction(r); });
    };
    return inside(a, b) && inside(b, a);
}

/// Compact part: the convex hull of the vertices, with an integrality flag.
struct CompactPart {
    Polyhedron polytope;
    bool integral = false;

    LatticePolytopeBody lattice_body() const {
        if (!integral) throw NonLatticeVertex("compact part has a non-integral vertex");
        LatticePolytopeBody b{polytope.dim(), {}};
        for (const auto& v : polytope.vertices) b.vertices.push_back(to_integer(v));
        return b;
    }
};

inline CompactPart compact_part(const Polyhedron& p) {
    if (p.vertices.empty()) throw EmptyPolyhedron();
    CompactPart c;
    c.polytope = polyhedron_from_vrep(p.dim(), p.vertices);
    c.integral = std::all_of(p.vertices.begin(), p.vertices.end(), [](const RatVector& v) { return is_integral(v); });
    return c;
}

inline Polyhedron recession_cone(const Polyhedron& p) {
    return polyhedron_from_vrep(p.dim(), std::vector<RatVector>{RatVector(p.dim(), Rational(0))}, p.rays);
}

inline Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("minkowski_sum: ambient dimensions differ");
    std::vector<RatVector> verts;
    for (const auto& u : a.vertices)
        for (const auto& v : b.vertices) verts.push_back(u + v);
    std::vector<IntVector> rays = a.rays;
    rays.insert(rays.end(), b.rays.begin(), b.rays.end());
    detail::sort_unique(verts);
    detail::sort_unique(rays);
    return polyhedron_from_vrep(a.dim(), verts, rays);
}

/// s * p; for p = Q + C this is sQ + C.
inline Polyhedron dilate(const Polyhedron& p, const Integer& s) {
    if (sgn(s) <= 0) throw InvalidArgument("dilation factor must be positive");
    Polyhedron q = p;
    for (auto& v : q.vertices) v = scale(v, Rational(s));
    for (auto& h : q.hrep.inequalities) h.offset *= s;
    return q;
}

/// Integer points of a bounded polyhedron in lexicographic order.
inline std::vector<IntVector> lattice_points(const Polyhedron& q) {
    if (!q.is_bounded()) throw UnboundedPolyhedron("lattice_points: polyhedron is unbounded");
    const std::size_t d = q.dim();
    std::vector<IntVector> out;
    if (q.vertices.empty()) return out;
    if (d == 0) return {IntVector{}};
    IntVector lo(d), hi(d);
    for (std::size_t i = 0; i < d; ++i) {
        Rational mn = q.vertices[0][i], mx = q.vertices[0][i];
        for (const auto& v : q.vertices) {
            mn = std::min(mn, v[i]);
            mx = std::max(mx, v[i]);
        }
        lo[i] = ceil_int(mn);
        hi[i] = floor_int(mx);
        if (lo[i] > hi[i]) return out;
    }
    // Odometer over the leading coordinates; the last one is solved as an interval.
    IntVector x = lo;
    const std::size_t last = d - 1;
    for (;;) {
        Integer a = lo[last], b = hi[last];
        bool feasible = true;
        for (const auto& h : q.hrep.inequalities) {
            Rational rest = 0;
            for (std::size_t i = 0; i < last; ++i) rest += h.normal[i] * x[i];
            const Rational& c = h.normal[last];
            Rational need = h.offset - rest;  // c * x_last >= need
            if (sgn(c) == 0) {
                if (sgn(need) > 0) feasible = false;
            } else if (sgn(c) > 0) {
                a = std::max(a, ceil_int(need / c));
            } else {
                b = std::min(b, floor_int(need / c));
            }
            if (!feasible || a > b) break;
        }
        if (feasible)
            for (Integer t = a; t <= b; ++t) {
                x[last] = t;
                out.push_back(x);
            }
        std::size_t i = last;
        for (;;) {
            if (i == 0) return out;
            --i;
            if (x[i] < hi[i]) {
                ++x[i];
                for (std::size_t j = i + 1; j < last; ++j) x[j] = lo[j];
                break;
            }
        }
    }
}

inline Polyhedron to_polyhedron(const LatticePolytopeBody& q) { return polyhedron_from_vrep(q.dim, q.vertices); }

struct NormalityResult {
    bool normal = true;
    int checked_up_to = 1;
    std::optional<int> failing_k;
    std::optional<IntVector> missing_point;  // in k*q but not a k-fold sum
};

inline int default_normality_bound(std::size_t dim) { return std::max(2, static_cast<int>(dim) - 1); }

/// Compares (k*q) ∩ Z^d with the k-fold sumset of q ∩ Z^d for k = 2..kmax.
inline NormalityResult is_normal_polytope(const LatticePolytopeBody& q, std::optional<int> kmax = std::nullopt) {
    for (const auto& v : q.vertices)
        if (v.size() != q.dim) throw DimensionMismatch("vertex has wrong dimension");
    Polyhedron poly = to_polyhedron(q);
    for (const auto& v : poly.vertices)
        if (!is_integral(v)) throw NonLatticeVertex("is_normal_polytope: non-lattice vertex " + to_string(v));
    const int bound = kmax.value_or(default_normality_bound(q.dim));
    if (bound < 1) throw InvalidArgument("kmax must be positive");

    const auto base = lattice_points(poly);
    std::set<IntVector> sums(base.begin(), base.end());
    NormalityResult res;
    for (int k = 2; k <= bound; ++k) {
        std::set<IntVector> next;
        for (const auto& a : sums)
            for (const auto& b : base) next.insert(a + b);
        sums = std::move(next);
        for (const auto& x : lattice_points(dilate(poly, k))) {
            if (!sums.count(x)) {
                res.normal = false;
                res.failing_k = k;
                res.missing_point = x;
                res.checked_up_to = k;
                return res;
            }
        }
        res.checked_up_to = k;
    }
    return res;
}

}  // namespace terracini
