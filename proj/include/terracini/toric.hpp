#pragma once

// Toric dictionary: lattice polytopes, complete simplicial fans, class group
// gradings, wall curves and the ample body {D : D.C >= 1 for every curve C}.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "terracini/arith.hpp"
#include "terracini/error.hpp"
#include "terracini/linalg.hpp"
#include "terracini/polyhedra.hpp"

namespace terracini {

using Cone = std::vector<std::size_t>;  // sorted ray indices

/// Full-dimensional lattice polytope in M_Q. Facets carry primitive inner normals.
struct LatticePolytope {
    std::size_t dim = 0;
    std::vector<IntVector> vertices;  // lexicographically sorted extreme points
    std::vector<IntVector> facet_normals;
    std::vector<Integer> facet_offsets;  // normal . m >= offset

    Polyhedron polyhedron() const {
        HalfspaceSystem h{dim, {}};
        for (std::size_t i = 0; i < facet_normals.size(); ++i) h.add(to_rational(facet_normals[i]), Rational(facet_offsets[i]));
        Polyhedron p;
        p.hrep = h;
        for (const auto& v : vertices) p.vertices.push_back(to_rational(v));
        return p;
    }

    /// Indices of facets containing vertex i.
    std::vector<std::size_t> facets_at(std::size_t i) const {
        std::vector<std::size_t> out;
        for (std::size_t f = 0; f < facet_normals.size(); ++f)
            if (dot(facet_normals[f], vertices[i]) == facet_offsets[f]) out.push_back(f);
        return out;
    }
};

inline LatticePolytope lattice_polytope_from_hrep(const Polyhedron& p) {
    LatticePolytope lp;
    lp.dim = p.dim();
    for (const auto& v : p.vertices) {
        if (!is_integral(v)) throw NonLatticeVertex("polytope has non-lattice vertex " + to_string(v));
        lp.vertices.push_back(to_integer(v));
    }
    if (!p.rays.empty()) throw UnboundedPolyhedron("lattice polytope must be bounded");
    std::vector<IntVector> diffs;
    for (const auto& v : lp.vertices) diffs.push_back(v - lp.vertices.front());
    if (lp.dim == 0 || rank(IntegerMatrix::from_rows(diffs, lp.dim)) < lp.dim)
        throw NotFullDimensional("lattice polytope is not full-dimensional");
    std::sort(lp.vertices.begin(), lp.vertices.end());
    for (const auto& h : p.hrep.inequalities) {
        RatVector row = h.normal;
        row.push_back(h.offset);
        IntVector prim = primitive(row);
        IntVector normal(prim.begin(), prim.end() - 1);
        Integer g = content(normal);
        // offsets are integral since the facet contains lattice vertices
        Rational off = Rational(prim.back(), g);
        for (auto& x : normal) x /= g;
        lp.facet_normals.push_back(normal);
        lp.facet_offsets.push_back(to_integer(RatVector{off}).front());
    }
    return lp;
}

/// Convex hull of lattice points; non-extreme points are dropped.
inline LatticePolytope lattice_polytope(std::size_t dim, const std::vector<IntVector>& points) {
    if (points.empty()) throw NotFullDimensional("no points given");
    return lattice_polytope_from_hrep(polyhedron_from_vrep(dim, points));
}

inline std::vector<IntVector> lattice_points(const LatticePolytope& p) { return lattice_points(p.polyhedron()); }

/// Complete simplicial fan given by primitive rays and maximal cones.
struct Fan {
    std::size_t dim = 0;
    std::vector<IntVector> rays;
    std::vector<Cone> max_cones;

    IntegerMatrix ray_matrix() const { return IntegerMatrix::from_rows(rays, dim); }
};

/// Codimension-one cone shared by two maximal cones: tau + ray_a and tau + ray_b.
struct Wall {
    Cone tau;
    std::size_t ray_a = 0, ray_b = 0;
    std::size_t cone_a = 0, cone_b = 0;
};

namespace detail {

inline IntegerMatrix cone_matrix(const Fan& f, const Cone& c) {
    IntegerMatrix m(c.size(), f.dim);
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; j < f.dim; ++j) m(i, j) = f.rays[c[i]][j];
    return m;
}

inline void require_simplicial(const Fan& f) {
    for (const auto& c : f.max_cones)
        if (c.size() != f.dim || rank(cone_matrix(f, c)) != f.dim)
            throw NotSimplicial("maximal cone is not simplicial of full dimension");
}

inline std::vector<Wall> enumerate_walls(const Fan& f) {
    std::map<Cone, std::vector<std::pair<std::size_t, std::size_t>>> by_face;  // face -> (cone, opposite ray)
    for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
        const auto& c = f.max_cones[ci];
        for (std::size_t k = 0; k < c.size(); ++k) {
            Cone face;
            for (std::size_t j = 0; j < c.size(); ++j)
                if (j != k) face.push_back(c[j]);
            by_face[face].push_back({ci, c[k]});
        }
    }
    std::vector<Wall> walls;
    for (const auto& [face, owners] : by_face) {
        if (owners.size() != 2)
            throw NotComplete("codimension-one cone lies in " + std::to_string(owners.size()) + " maximal cones");
        walls.push_back({face, owners[0].second, owners[1].second, owners[0].first, owners[1].first});
    }
    return walls;
}

}  // namespace detail

/// Checks that the cones form a complete simplicial fan: every wall separates
/// exactly two maximal cones lying on opposite sides, and a generic vector lies
/// in exactly one maximal cone.
inline void validate_fan(const Fan& f) {
    if (f.dim == 0) throw InvalidArgument("fan of dimension zero");
    for (const auto& r : f.rays) {
        if (r.size() != f.dim) throw DimensionMismatch("ray has wrong dimension");
        if (is_zero(r)) throw InvalidArgument("zero ray");
        if (content(r) != 1) throw InvalidArgument("ray " + to_string(r) + " is not primitive");
    }
    for (const auto& c : f.max_cones) {
        if (!std::is_sorted(c.begin(), c.end()) || std::adjacent_find(c.begin(), c.end()) != c.end())
            throw InvalidArgument("cone indices must be sorted and distinct");
        for (auto i : c)
            if (i >= f.rays.size()) throw InvalidArgument("cone refers to missing ray");
    }
    if (f.max_cones.empty()) throw NotComplete("fan has no maximal cones");
    detail::require_simplicial(f);
    for (const auto& w : detail::enumerate_walls(f)) {
        auto k = kernel_basis(detail::cone_matrix(f, w.tau));
        if (k.size() != 1) throw NotSimplicial("wall is not of codimension one");
        Rational sa = dot(k[0], f.rays[w.ray_a]), sb = dot(k[0], f.rays[w.ray_b]);
        if (sgn(sa) * sgn(sb) >= 0) throw NotComplete("two maximal cones overlap across a wall");
    }
    // Generic-point covering count.
    static const long primes[] = {1009, 7919, 104729, 1299709, 15485863, 179424673, 2038074743L};
    for (long attempt = 1;; ++attempt) {
        RatVector w(f.dim);
        for (std::size_t i = 0; i < f.dim; ++i)
            w[i] = Rational((attempt * primes[i % 7] + static_cast<long>(i) * 31) % 2003 - 1001 + attempt);
        if (is_zero(w)) continue;
        int inside = 0;
        bool boundary = false;
        for (const auto& c : f.max_cones) {
            auto lambda = solve(to_rational(detail::cone_matrix(f, c)).transpose(), w);
            bool pos = true;
            for (const auto& l : *lambda) {
                if (sgn(l) == 0) boundary = true;
                if (sgn(l) < 0) pos = false;
            }
            if (pos) ++inside;
        }
        if (boundary) continue;
        if (inside != 1) throw NotComplete("fan does not cover the space exactly once");
        break;
    }
}

inline Fan make_fan(std::size_t dim, std::vector<IntVector> rays, std::vector<Cone> cones) {
    for (auto& c : cones) std::sort(c.begin(), c.end());
    Fan f{dim, std::move(rays), std::move(cones)};
    validate_fan(f);
    return f;
}

/// Complete fan in the plane whose maximal cones join angularly consecutive rays.
inline Fan planar_fan(std::vector<IntVector> rays) {
    auto half = [](const IntVector& v) { return (sgn(v[1]) > 0 || (sgn(v[1]) == 0 && sgn(v[0]) > 0)) ? 0 : 1; };
    std::vector<std::size_t> order(rays.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        int ha = half(rays[a]), hb = half(rays[b]);
        if (ha != hb) return ha < hb;
        return sgn(rays[a][0] * rays[b][1] - rays[a][1] * rays[b][0]) > 0;
    });
    std::vector<Cone> cones;
    for (std::size_t i = 0; i < order.size(); ++i) cones.push_back({order[i], order[(i + 1) % order.size()]});
    return make_fan(2, std::move(rays), std::move(cones));
}

inline std::vector<Wall> walls(const Fan& f) { return detail::enumerate_walls(f); }

/// True iff every maximal cone is generated by a lattice basis.
inline bool is_smooth(const Fan& f) {
    detail::require_simplicial(f);
    return std::all_of(f.max_cones.begin(), f.max_cones.end(),
                       [&](const Cone& c) { return is_unimodular(detail::cone_matrix(f, c)); });
}

/// Complete fan whose maximal cones are the inner normal cones at the vertices of p.
inline Fan normal_fan(const LatticePolytope& p) {
    if (p.vertices.size() <= p.dim) throw NotFullDimensional("polytope is not full-dimensional");
    Fan f;
    f.dim = p.dim;
    f.rays = p.facet_normals;
    for (std::size_t v = 0; v < p.vertices.size(); ++v) f.max_cones.push_back(p.facets_at(v));
    return f;
}

inline void require_smooth(const Fan& f) {
    try {
        if (!is_smooth(f)) throw NotSmooth("toric variety is singular: a maximal cone is not unimodular");
    } catch (const NotSimplicial& e) {
        throw NotSmooth(std::string("toric variety is singular: ") + e.what());
    }
}

struct Edge {
    std::size_t from = 0, to = 0;  // vertex indices, from < to
    IntVector direction;           // primitive, from -> to
    Integer length;                // lattice length = gcd of the difference
};

struct EdgeLengths {
    std::vector<Edge> edges;
    Integer min_length;  // the length of the polytope
};

inline EdgeLengths edge_lengths(const LatticePolytope& p) {
    EdgeLengths out;
    std::vector<std::vector<std::size_t>> inc;
    for (std::size_t v = 0; v < p.vertices.size(); ++v) inc.push_back(p.facets_at(v));
    for (std::size_t a = 0; a < p.vertices.size(); ++a)
        for (std::size_t b = a + 1; b < p.vertices.size(); ++b) {
            std::vector<IntVector> common;
            std::vector<std::size_t> shared;
            std::set_intersection(inc[a].begin(), inc[a].end(), inc[b].begin(), inc[b].end(), std::back_inserter(shared));
            for (auto f : shared) common.push_back(p.facet_normals[f]);
            if (rank(IntegerMatrix::from_rows(common, p.dim)) + 1 != p.dim) continue;
            IntVector d = p.vertices[b] - p.vertices[a];
            Integer g = content(d);
            out.edges.push_back({a, b, primitive(d), g});
        }
    if (out.edges.empty()) throw NotFullDimensional("polytope has no edges");
    out.min_length = out.edges.front().length;
    for (const auto& e : out.edges) out.min_length = std::min(out.min_length, e.length);
    return out;
}

/// Affine chart at a smooth vertex: coordinates along the primitive edge
/// directions. Monomial m becomes y^(basis^-1 (m - vertex)).
struct VertexChart {
    std::size_t vertex = 0;
    std::vector<IntVector> directions;   // primitive edge directions, descending lexicographic order
    std::vector<std::size_t> edge_ids;   // index into EdgeLengths::edges, same order
    RationalMatrix inverse_basis;

    IntVector exponents(const LatticePolytope& p, const IntVector& m) const {
        auto e = inverse_basis * to_rational(m - p.vertices[vertex]);
        return to_integer(e);
    }
};

/// Chart at every vertex; entries are empty at singular vertices.
inline std::vector<std::optional<VertexChart>> partial_vertex_charts(const LatticePolytope& p, const EdgeLengths& el) {
    std::vector<VertexChart> raw(p.vertices.size());
    for (std::size_t v = 0; v < p.vertices.size(); ++v) raw[v].vertex = v;
    for (std::size_t e = 0; e < el.edges.size(); ++e) {
        const auto& edge = el.edges[e];
        raw[edge.from].directions.push_back(edge.direction);
        raw[edge.from].edge_ids.push_back(e);
        raw[edge.to].directions.push_back(scale(edge.direction, Integer(-1)));
        raw[edge.to].edge_ids.push_back(e);
    }
    std::vector<std::optional<VertexChart>> charts(p.vertices.size());
    for (std::size_t v = 0; v < raw.size(); ++v) {
        const auto& c = raw[v];
        if (c.directions.size() != p.dim) continue;
        std::vector<std::size_t> idx(c.directions.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return c.directions[a] > c.directions[b]; });
        VertexChart sorted{v, {}, {}, {}};
        for (auto i : idx) {
            sorted.directions.push_back(c.directions[i]);
            sorted.edge_ids.push_back(c.edge_ids[i]);
        }
        auto basis = IntegerMatrix::from_rows(sorted.directions, p.dim).transpose();
        if (!is_unimodular(basis)) continue;
        sorted.inverse_basis = inverse(to_rational(basis));
        charts[v] = std::move(sorted);
    }
    return charts;
}

inline std::vector<VertexChart> vertex_charts(const LatticePolytope& p, const EdgeLengths& el) {
    std::vector<VertexChart> out;
    for (auto& c : partial_vertex_charts(p, el)) {
        if (!c) throw NotSmooth("polytope has a singular vertex");
        out.push_back(std::move(*c));
    }
    return out;
}

/// Class group presentation: column i of `grading` is the class of D_i.
struct PicardData {
    IntegerMatrix grading;  // picard_rank x number of rays
    std::size_t picard_rank = 0;
    bool torsion_free = true;

    IntVector class_of(const IntVector& divisor) const { return grading * divisor; }
    RatVector class_of(const RatVector& divisor) const { return to_rational(grading) * divisor; }
};

inline PicardData class_group_grading(const Fan& f) {
    auto nf = lattice_normal_form(f.ray_matrix());
    auto factors = nf.invariant_factors();
    if (factors.size() != f.dim) throw NotComplete("rays do not span the lattice rationally");
    for (const auto& s : factors)
        if (s != 1) throw TorsionDetected("class group has torsion of order " + s.get_str());
    const std::size_t m = f.rays.size(), rho = m - f.dim;
    IntegerMatrix g(rho, m);
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < m; ++j) g(i, j) = nf.smith_left(f.dim + i, j);
    return {rho ? hermite_form(g) : g, rho, true};
}

/// Grading matrix taken verbatim; rejected unless it maps Z^rays onto Z^rho.
inline PicardData picard_from_grading(const IntegerMatrix& g) {
    auto factors = lattice_normal_form(g).invariant_factors();
    if (factors.size() != g.rows()) throw InvalidArgument("grading matrix does not have full row rank");
    for (const auto& s : factors)
        if (s != 1) throw TorsionDetected("grading matrix is not surjective onto Z^rho");
    return {g, g.rows(), true};
}

/// Fan of the simplicial toric variety with Cox grading `g` whose ample cone
/// contains `ample` (the anticanonical class when omitted): rays are the Gale
/// dual of g and sigma_I is a cone iff `ample` lies in the interior of the cone
/// spanned by the degrees outside I.
inline Fan fan_from_grading(const IntegerMatrix& g, std::optional<IntVector> ample = std::nullopt) {
    const std::size_t m = g.cols(), rho = g.rows();
    if (rho >= m) throw InvalidArgument("grading matrix needs more columns than rows");
    const std::size_t n = m - rho;
    IntVector w = ample.value_or(g * IntVector(m, Integer(1)));
    if (w.size() != rho) throw DimensionMismatch("ample class has wrong length");
    auto kernel = integer_kernel_basis(g);
    if (kernel.size() != n) throw InvalidArgument("grading matrix does not have full row rank");
    Fan f;
    f.dim = n;
    for (std::size_t i = 0; i < m; ++i) {
        IntVector r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = kernel[j][i];
        f.rays.push_back(r);
    }
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(rho), true);
    do {
        Cone complement, cone;
        for (std::size_t i = 0; i < m; ++i) (pick[i] ? complement : cone).push_back(i);
        RationalMatrix sub(rho, rho);
        for (std::size_t r = 0; r < rho; ++r)
            for (std::size_t c = 0; c < rho; ++c) sub(r, c) = g(r, complement[c]);
        if (sgn(determinant(sub)) == 0) continue;
        auto coeff = solve(sub, to_rational(w));
        if (std::all_of(coeff->begin(), coeff->end(), [](const Rational& q) { return sgn(q) > 0; }))
            f.max_cones.push_back(cone);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(f.max_cones.begin(), f.max_cones.end());
    validate_fan(f);
    return f;
}

/// Intersection numbers of the torus-invariant curve of a wall.
struct CurveClass {
    IntVector against_divisors;  // C . D_i
    IntVector against_picard;    // functional on Z^rho, composed with the grading gives against_divisors
    Cone source_wall;
    std::size_t ray_a = 0, ray_b = 0;

    Rational pair(const RatVector& picard_class) const { return dot(picard_class, against_picard); }
    Integer pair(const IntVector& picard_class) const { return dot(picard_class, against_picard); }
};

/// Intersection numbers C.D_i of the invariant curve of wall w, from the
/// relation v_a + v_b + sum c_i v_i = 0 over the wall's rays.
inline IntVector wall_relation(const Fan& f, const Wall& w) {
    RationalMatrix tau(f.dim, w.tau.size());
    for (std::size_t k = 0; k < w.tau.size(); ++k)
        for (std::size_t j = 0; j < f.dim; ++j) tau(j, k) = f.rays[w.tau[k]][j];
    RatVector rhs(f.dim);
    for (std::size_t j = 0; j < f.dim; ++j) rhs[j] = -(f.rays[w.ray_a][j] + f.rays[w.ray_b][j]);
    auto c = solve(tau, rhs);
    if (!c) throw NotComplete("wall relation has no solution");
    if (!is_integral(*c)) throw NotSmooth("wall relation has non-integral coefficients");
    IntVector against(f.rays.size(), Integer(0));
    against[w.ray_a] = 1;
    against[w.ray_b] = 1;
    for (std::size_t k = 0; k < w.tau.size(); ++k) against[w.tau[k]] = (*c)[k].get_num();
    return against;
}

/// One class per wall; identical classes are kept once, first wall wins.
inline std::vector<CurveClass> wall_curve_classes(const Fan& f, const PicardData& pd) {
    if (pd.grading.cols() != f.rays.size()) throw DimensionMismatch("grading and fan disagree on the number of rays");
    std::vector<CurveClass> out;
    std::set<IntVector> seen;
    auto gt = to_rational(pd.grading).transpose();
    for (const auto& w : walls(f)) {
        IntVector against = wall_relation(f, w);
        if (!seen.insert(against).second) continue;
        auto y = solve(gt, to_rational(against));
        if (!y || !is_integral(*y)) throw InvalidArgument("curve class is not a functional on the grading lattice");
        out.push_back({against, to_integer(*y), w.tau, w.ray_a, w.ray_b});
    }
    return out;
}

inline std::vector<CurveClass> wall_curve_classes(const Fan& f) { return wall_curve_classes(f, class_group_grading(f)); }

inline HalfspaceSystem pairing_system(std::size_t rho, const std::vector<IntVector>& forms, const Rational& bound) {
    HalfspaceSystem h{rho, {}};
    for (const auto& y : forms) h.add(to_rational(y), bound);
    return h;
}

inline std::vector<IntVector> picard_forms(const std::vector<CurveClass>& curves) {
    std::vector<IntVector> forms;
    for (const auto& c : curves) forms.push_back(c.against_picard);
    return forms;
}

/// {D : D.C >= 0 for all wall curves}
inline Polyhedron nef_cone(const PicardData& pd, const std::vector<CurveClass>& curves) {
    if (curves.empty()) throw InvalidArgument("nef_cone needs at least one curve class");
    return hrep_to_vrep(pairing_system(pd.picard_rank, picard_forms(curves), 0));
}

struct AmpleBodyResult {
    Polyhedron body;      // {D : D.C >= 1}
    CompactPart compact;  // vertices of body
    Polyhedron nef;       // recession cone of body
    std::vector<IntVector> forms;              // one pairing functional per Mori generator
    std::vector<CurveClass> mori_generators;   // empty when built from raw forms
};

/// Ample body cut out by pairing functionals, as in an intersection-forms input.
inline AmpleBodyResult ample_body_from_forms(std::size_t rho, const std::vector<IntVector>& forms) {
    if (forms.empty()) throw InvalidArgument("ample body needs at least one intersection form");
    for (const auto& y : forms)
        if (y.size() != rho) throw DimensionMismatch("intersection form has wrong length");
    AmpleBodyResult r;
    r.forms = forms;
    r.body = hrep_to_vrep(pairing_system(rho, forms, 1));
    r.compact = compact_part(r.body);
    r.nef = recession_cone(r.body);
    if (!same_set(minkowski_sum(r.compact.polytope, r.nef), r.body))
        throw Error("internal: ample body does not decompose as compact part plus nef cone");
    return r;
}

inline AmpleBodyResult ample_body(const Fan& f, const PicardData& pd) {
    require_smooth(f);
    auto curves = wall_curve_classes(f, pd);
    auto r = ample_body_from_forms(pd.picard_rank, picard_forms(curves));
    r.mori_generators = std::move(curves);
    return r;
}

inline AmpleBodyResult ample_body(const Fan& f) { return ample_body(f, class_group_grading(f)); }

namespace detail {

inline std::map<IntVector, std::size_t> ray_index(const Fan& f) {
    std::map<IntVector, std::size_t> idx;
    for (std::size_t i = 0; i < f.rays.size(); ++i) idx[f.rays[i]] = i;
    return idx;
}

}  // namespace detail

/// True when both fans have the same rays and maximal cones, up to relabeling.
inline bool same_fan(const Fan& a, const Fan& b) {
    if (a.dim != b.dim || a.rays.size() != b.rays.size()) return false;
    auto idx = detail::ray_index(b);
    std::set<Cone> cones_b(b.max_cones.begin(), b.max_cones.end());
    std::set<Cone> mapped;
    for (const auto& c : a.max_cones) {
        Cone m;
        for (auto i : c) {
            auto it = idx.find(a.rays[i]);
            if (it == idx.end()) return false;
            m.push_back(it->second);
        }
        std::sort(m.begin(), m.end());
        mapped.insert(m);
    }
    return mapped == cones_b;
}

/// Support function coefficients a_i = -min_{m in P} <m, v_i>.
inline IntVector support_coefficients(const LatticePolytope& p, const Fan& f) {
    if (!same_fan(normal_fan(p), f)) throw InvalidArgument("fan is not the normal fan of the polytope");
    IntVector a(f.rays.size());
    for (std::size_t i = 0; i < f.rays.size(); ++i) {
        Integer mn = dot(p.vertices.front(), f.rays[i]);
        for (const auto& v : p.vertices) mn = std::min(mn, dot(v, f.rays[i]));
        a[i] = -mn;
    }
    return a;
}

/// Class in Z^rho of the polarization defined by p.
inline IntVector polytope_divisor_class(const LatticePolytope& p, const Fan& f, const PicardData& pd) {
    return pd.class_of(support_coefficients(p, f));
}

/// Polytope {m : <m, v_i> >= -a_i} of a divisor with class L.
inline LatticePolytope polytope_of_class(const Fan& f, const PicardData& pd, const IntVector& cls) {
    if (cls.size() != pd.picard_rank) throw DimensionMismatch("divisor class has wrong length");
    auto nf = lattice_normal_form(pd.grading);
    // S = U G V with S = [I | 0], so a = V (U L, 0) solves G a = L.
    IntVector ul = nf.smith_left * cls;
    ul.resize(pd.grading.cols(), Integer(0));
    IntVector a = nf.smith_right * ul;
    HalfspaceSystem h{f.dim, {}};
    for (std::size_t i = 0; i < f.rays.size(); ++i) h.add(to_rational(f.rays[i]), Rational(-a[i]));
    return lattice_polytope_from_hrep(hrep_to_vrep(h));
}

/// Lattice points of p, or the given subset after checking membership.
inline std::vector<IntVector> monomial_parametrization(const LatticePolytope& p,
                                                       const std::optional<std::vector<IntVector>>& subset = std::nullopt) {
    auto all = lattice_points(p);
    if (!subset) return all;
    std::set<IntVector> pts(all.begin(), all.end());
    for (const auto& m : *subset)
        if (!pts.count(m)) throw InvalidArgument("monomial " + to_string(m) + " is not a lattice point of the polytope");
    return *subset;
}

// Standard polytopes.

inline LatticePolytope dilated_simplex(std::size_t n, long d) {
    std::vector<IntVector> v{IntVector(n, Integer(0))};
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, Integer(0));
        e[i] = d;
        v.push_back(e);
    }
    return lattice_polytope(n, v);
}

inline LatticePolytope product(const LatticePolytope& a, const LatticePolytope& b) {
    std::vector<IntVector> v;
    for (const auto& x : a.vertices)
        for (const auto& y : b.vertices) {
            IntVector z = x;
            z.insert(z.end(), y.begin(), y.end());
            v.push_back(z);
        }
    return lattice_polytope(a.dim + b.dim, v);
}

/// Polytope of P^{n_1} x ... x P^{n_r} embedded by O(d_1, ..., d_r).
inline LatticePolytope segre_veronese_polytope(const std::vector<long>& n, const std::vector<long>& d) {
    if (n.empty() || n.size() != d.size()) throw InvalidArgument("segre_veronese: n and d must have equal nonzero length");
    for (std::size_t i = 0; i < n.size(); ++i)
        if (n[i] < 1 || d[i] < 1) throw InvalidArgument("segre_veronese: entries must be positive");
    LatticePolytope p = dilated_simplex(static_cast<std::size_t>(n[0]), d[0]);
    for (std::size_t i = 1; i < n.size(); ++i) p = product(p, dilated_simplex(static_cast<std::size_t>(n[i]), d[i]));
    return p;
}

/// d times the Cayley polytope conv{(0, e_i), (a_i, e_i)} of the rational
/// normal scroll S_{a_1..a_n}, with e_0 = 0.
inline LatticePolytope scroll_polytope(const std::vector<long>& a, long d) {
    if (a.empty()) throw InvalidArgument("scroll: a must be nonempty");
    if (d < 1) throw InvalidArgument("scroll: d must be positive");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < 1 || (i && a[i] < a[i - 1])) throw InvalidArgument("scroll: a must be positive and nondecreasing");
    const std::size_t n = a.size();
    std::vector<IntVector> v;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector lo(n, Integer(0)), hi(n, Integer(0));
        if (i) lo[i] = hi[i] = d;
        hi[0] = a[i] * d;
        v.push_back(lo);
        v.push_back(hi);
    }
    return lattice_polytope(n, v);
}

}  // namespace terracini
