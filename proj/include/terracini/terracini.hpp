#pragma once

// Terracini loci of toric embeddings: exact Terracini matrices, a seeded
// rank-deficit search, and the emptiness verdict with its certificates.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "terracini/arith.hpp"
#include "terracini/error.hpp"
#include "terracini/linalg.hpp"
#include "terracini/polyhedra.hpp"
#include "terracini/toric.hpp"

namespace terracini {

struct TerraciniMatrix {
    RationalMatrix matrix;
    std::vector<RatVector> points;
    std::vector<IntVector> monomials;
};

namespace detail {

inline Rational power(const Rational& x, const Integer& e) {
    if (sgn(e) == 0) return 1;
    if (sgn(x) == 0) {
        if (sgn(e) < 0) throw InvalidArgument("monomial with negative exponent evaluated at a zero coordinate");
        return 0;
    }
    Rational r;
    unsigned long k = Integer(abs(e)).get_ui();
    mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), k);
    mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), k);
    r.canonicalize();
    if (sgn(e) < 0) r = 1 / r;
    return r;
}

inline Rational monomial_value(const RatVector& x, const IntVector& e) {
    Rational v = 1;
    for (std::size_t j = 0; j < x.size(); ++j) v *= power(x[j], e[j]);
    return v;
}

// One evaluation row and n derivative rows per point; point i uses exponents[i].
inline RationalMatrix terracini_rows(const std::vector<RatVector>& points, const std::vector<std::vector<IntVector>>& exponents) {
    if (points.empty()) throw InvalidArgument("terracini matrix needs at least one point");
    const std::size_t n = points.front().size(), cols = exponents.front().size();
    RationalMatrix m(points.size() * (n + 1), cols);
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != n) throw DimensionMismatch("points have different dimensions");
        const auto& x = points[i];
        for (std::size_t c = 0; c < cols; ++c) {
            const auto& e = exponents[i][c];
            if (e.size() != n) throw DimensionMismatch("monomial and point dimensions differ");
            std::size_t r = i * (n + 1);
            m(r, c) = monomial_value(x, e);
            for (std::size_t j = 0; j < n; ++j) {
                if (sgn(e[j]) == 0) continue;
                IntVector d = e;
                d[j] -= 1;
                m(r + 1 + j, c) = Rational(e[j]) * monomial_value(x, d);
            }
        }
    }
    return m;
}

}  // namespace detail

/// Rows per point: [chi^m(p)]_m, then [d chi^m / du_j (p)]_m for j = 1..n.
inline TerraciniMatrix terracini_matrix(const std::vector<RatVector>& points, const std::vector<IntVector>& monomials) {
    if (monomials.empty()) throw InvalidArgument("terracini matrix needs monomials");
    std::vector<std::vector<IntVector>> ex(points.size(), monomials);
    return {detail::terracini_rows(points, ex), points, monomials};
}

struct RankCheck {
    std::size_t rank = 0;
    std::size_t expected = 0;  // min{h(n+1), N+1}
    bool deficit = false;
};

inline RankCheck rank_check(const RationalMatrix& m, std::size_t h, std::size_t n) {
    RankCheck r;
    r.rank = rank(m);
    r.expected = std::min(h * (n + 1), m.cols());
    r.deficit = r.rank < r.expected;
    return r;
}

inline RankCheck rank_deficit_at(const std::vector<RatVector>& points, const std::vector<IntVector>& monomials) {
    auto t = terracini_matrix(points, monomials);
    return rank_check(t.matrix, points.size(), points.front().size());
}

/// A point of X given in the affine chart of a smooth vertex (coordinates along
/// its edge directions) or, when `vertex` is empty, in the torus coordinates of
/// the monomials themselves.
struct ChartPoint {
    std::optional<std::size_t> vertex;
    RatVector coords;
    bool operator==(const ChartPoint&) const = default;
};

struct OracleSample {
    std::string stratum;
    std::vector<ChartPoint> points;
    RankCheck check;
};

struct OracleOptions {
    std::uint64_t seed = 0;
    std::size_t budget = 200;  // number of exact rank checks
    bool stop_at_first = true;
    bool record_all = false;
};

struct OracleResult {
    std::optional<OracleSample> witness;
    std::size_t samples_used = 0;
    bool heuristic = false;  // true for h > 2, where the strata are not exhaustive
    std::vector<OracleSample> samples;  // filled when record_all is set
};

/// Embedding data shared by the oracle and the verdict: polytope, monomials and vertex charts.
struct Embedding {
    LatticePolytope polytope;
    std::vector<IntVector> monomials;
    EdgeLengths edges;
    std::vector<std::optional<VertexChart>> charts;

    Embedding(LatticePolytope p, std::vector<IntVector> m)
        : polytope(std::move(p)), monomials(std::move(m)), edges(edge_lengths(polytope)),
          charts(partial_vertex_charts(polytope, edges)) {}

    std::vector<IntVector> exponents_at(const ChartPoint& x) const {
        if (!x.vertex) return monomials;
        const auto& c = charts.at(*x.vertex);
        if (!c) throw NotSmooth("chart requested at a singular vertex");
        std::vector<IntVector> out;
        for (const auto& m : monomials) out.push_back(c->exponents(polytope, m));
        return out;
    }

    TerraciniMatrix matrix_at(const std::vector<ChartPoint>& pts) const {
        std::vector<RatVector> coords;
        std::vector<std::vector<IntVector>> ex;
        for (const auto& x : pts) {
            coords.push_back(x.coords);
            ex.push_back(exponents_at(x));
        }
        return {detail::terracini_rows(coords, ex), coords, monomials};
    }

    RankCheck check_at(const std::vector<ChartPoint>& pts) const {
        return rank_check(matrix_at(pts).matrix, pts.size(), polytope.dim);
    }
};

struct TerraciniQuery {
    std::optional<LatticePolytope> polytope;
    std::optional<Fan> fan;                  // with divisor_class, an alternative to polytope
    std::optional<IntVector> divisor_class;
    long h = 2;
    std::optional<std::vector<IntVector>> subset;  // monomial subset: not linearly normal
    OracleOptions oracle;
    bool run_oracle = true;
    bool homogeneous = false;  // user assertion, honoured only for fan inputs

    bool linearly_normal() const { return !subset.has_value(); }
};

namespace detail {

inline LatticePolytope query_polytope(const TerraciniQuery& q) {
    if (q.h < 2) throw InvalidArgument("h must be at least 2");
    if (q.polytope) return *q.polytope;
    if (!q.fan || !q.divisor_class) throw InvalidArgument("query needs a polytope or a fan with a divisor class");
    auto pd = class_group_grading(*q.fan);
    auto p = polytope_of_class(*q.fan, pd, *q.divisor_class);
    if (!same_fan(normal_fan(p), *q.fan)) throw InvalidArgument("divisor class is not ample on the given fan");
    return p;
}

inline Rational random_rational(std::mt19937_64& rng) {
    long p = 0;
    while (p == 0) p = static_cast<long>(rng() % 41) - 20;
    long den = static_cast<long>(rng() % 10) + 1;
    Rational r(p, den);
    r.canonicalize();
    return r;
}

inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

struct Curve {
    std::size_t vertex;  // chart used to parametrize
    std::size_t axis;
};

inline ChartPoint curve_point(const Curve& c, std::size_t n, const Rational& t) {
    RatVector y(n, Rational(0));
    y[c.axis] = t;
    return {c.vertex, y};
}

inline bool distinct_points(const Embedding& e, const std::vector<ChartPoint>& pts) {
    // Compare evaluation rows up to scaling: equal rows in P^N mean equal points.
    auto t = e.matrix_at(pts);
    const std::size_t n = e.polytope.dim;
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) {
            RationalMatrix two(2, t.matrix.cols());
            for (std::size_t c = 0; c < t.matrix.cols(); ++c) {
                two(0, c) = t.matrix(a * (n + 1), c);
                two(1, c) = t.matrix(b * (n + 1), c);
            }
            if (rank(two) < 2) return false;
        }
    return true;
}

}  // namespace detail

/// Seeded search for a configuration with a Terracini rank deficit.
/// h = 2 strata, in order: pairs of fixed points (combinatorial, free), points
/// on one invariant curve, a fixed point with a curve point, points on two
/// curves, then the torus diagonal and general torus points.
inline OracleResult oracle_search(const Embedding& e, long h, const OracleOptions& opt) {
    OracleResult out;
    out.heuristic = h > 2;
    const std::size_t n = e.polytope.dim;
    const auto hh = static_cast<std::size_t>(h);
    std::mt19937_64 rng(opt.seed);

    std::vector<std::size_t> smooth_vertices;
    for (std::size_t v = 0; v < e.charts.size(); ++v)
        if (e.charts[v]) smooth_vertices.push_back(v);
    std::vector<detail::Curve> curves;
    std::set<std::size_t> seen_edges;
    for (auto v : smooth_vertices)
        for (std::size_t j = 0; j < n; ++j)
            if (seen_edges.insert(e.charts[v]->edge_ids[j]).second) curves.push_back({v, j});

    bool done = false;
    auto record = [&](OracleSample s) {
        if (opt.record_all) out.samples.push_back(s);
        if (s.check.deficit && !out.witness) {
            out.witness = s;
            if (opt.stop_at_first) done = true;
        }
    };
    auto try_sample = [&](const std::string& stratum, std::vector<ChartPoint> pts) {
        if (done || out.samples_used >= opt.budget) {
            done = done || out.samples_used >= opt.budget;
            return;
        }
        ++out.samples_used;
        if (!detail::distinct_points(e, pts)) return;
        record({stratum, pts, e.check_at(pts)});
    };

    if (h == 2) {
        // Fixed points: the tangent space at a smooth vertex is spanned by the
        // coordinate vectors of the vertex and of its lattice neighbours.
        std::vector<std::set<std::size_t>> star(e.charts.size());
        for (auto v : smooth_vertices)
            for (std::size_t c = 0; c < e.monomials.size(); ++c) {
                IntVector x = e.charts[v]->exponents(e.polytope, e.monomials[c]);
                Integer total = 0;
                for (const auto& z : x) total += z;
                if (total <= 1) star[v].insert(c);
            }
        const std::size_t expected = std::min(2 * (n + 1), e.monomials.size());
        for (std::size_t a = 0; a < smooth_vertices.size() && !done; ++a)
            for (std::size_t b = a + 1; b < smooth_vertices.size() && !done; ++b) {
                auto va = smooth_vertices[a], vb = smooth_vertices[b];
                std::set<std::size_t> u = star[va];
                u.insert(star[vb].begin(), star[vb].end());
                bool deficit = u.size() < expected;
                if (!deficit && !opt.record_all) continue;
                std::vector<ChartPoint> pts{{va, RatVector(n, Rational(0))}, {vb, RatVector(n, Rational(0))}};
                RankCheck c = e.check_at(pts);
                if (c.rank != u.size()) throw Error("internal: fixed-point rank disagrees with the combinatorial count");
                record({"fixed-points", pts, c});
            }

        for (const auto& c : curves)
            try_sample("same-curve", {detail::curve_point(c, n, 1), detail::curve_point(c, n, -1)});
        for (auto v : smooth_vertices)
            for (const auto& c : curves) try_sample("fixed-curve", {{v, RatVector(n, Rational(0))}, detail::curve_point(c, n, 1)});
        for (std::size_t a = 0; a < curves.size(); ++a)
            for (std::size_t b = a + 1; b < curves.size(); ++b)
                try_sample("cross-curve", {detail::curve_point(curves[a], n, 1), detail::curve_point(curves[b], n, 1)});
        try_sample("torus-diagonal", {{std::nullopt, RatVector(n, Rational(1))}, {std::nullopt, RatVector(n, Rational(2))}});

        for (std::size_t round = 0; !done && out.samples_used < opt.budget; ++round) {
            switch (round % 6) {
                case 0:
                    if (curves.empty()) break;
                    {
                        const auto& c = curves[detail::pick(rng, curves.size())];
                        Rational a = detail::random_rational(rng);
                        try_sample("same-curve", {detail::curve_point(c, n, a), detail::curve_point(c, n, -a)});
                    }
                    break;
                case 1:
                    if (curves.empty()) break;
                    {
                        const auto& c = curves[detail::pick(rng, curves.size())];
                        Rational a = detail::random_rational(rng), b = detail::random_rational(rng);
                        if (a != b) try_sample("same-curve", {detail::curve_point(c, n, a), detail::curve_point(c, n, b)});
                    }
                    break;
                case 2:
                    if (curves.empty()) break;
                    {
                        auto v = smooth_vertices[detail::pick(rng, smooth_vertices.size())];
                        const auto& c = curves[detail::pick(rng, curves.size())];
                        try_sample("fixed-curve", {{v, RatVector(n, Rational(0))}, detail::curve_point(c, n, detail::random_rational(rng))});
                    }
                    break;
                case 3:
                    if (curves.size() < 2) break;
                    {
                        auto a = detail::pick(rng, curves.size()), b = detail::pick(rng, curves.size());
                        if (a == b) break;
                        try_sample("cross-curve", {detail::curve_point(curves[a], n, detail::random_rational(rng)),
                                                   detail::curve_point(curves[b], n, detail::random_rational(rng))});
                    }
                    break;
                case 4: {
                    Rational t = detail::random_rational(rng);
                    if (t != 1)
                        try_sample("torus-diagonal", {{std::nullopt, RatVector(n, Rational(1))}, {std::nullopt, RatVector(n, t)}});
                    break;
                }
                default: {
                    std::vector<ChartPoint> pts;
                    for (int k = 0; k < 2; ++k) {
                        RatVector x(n);
                        for (auto& c : x) c = detail::random_rational(rng);
                        pts.push_back({std::nullopt, x});
                    }
                    try_sample("torus", pts);
                }
            }
            // guard against a stratum set that can never consume budget
            if (round > 64 * (opt.budget + 1)) break;
        }
        return out;
    }

    // h > 2: random h-tuples of fixed points, curve points and torus points.
    for (std::size_t round = 0; !done && out.samples_used < opt.budget; ++round) {
        std::vector<ChartPoint> pts;
        std::string stratum = "heuristic";
        for (std::size_t k = 0; k < hh; ++k) {
            std::size_t kind = detail::pick(rng, 3);
            if (kind == 0 && !smooth_vertices.empty())
                pts.push_back({smooth_vertices[detail::pick(rng, smooth_vertices.size())], RatVector(n, Rational(0))});
            else if (kind == 1 && !curves.empty())
                pts.push_back(detail::curve_point(curves[detail::pick(rng, curves.size())], n, detail::random_rational(rng)));
            else {
                RatVector x(n);
                for (auto& c : x) c = detail::random_rational(rng);
                pts.push_back({std::nullopt, x});
            }
        }
        try_sample(stratum, pts);
        if (round > 64 * (opt.budget + 1)) break;
    }
    return out;
}

inline OracleResult oracle_search(const TerraciniQuery& q) {
    auto p = detail::query_polytope(q);
    Embedding e(p, monomial_parametrization(p, q.subset));
    return oracle_search(e, q.h, q.oracle);
}

// Certificates.

struct EdgeLengthBound {
    Integer length;  // l(P)
    long bound = 0;  // 2h - 1
};

struct VeryAmpleSumDecomposition {
    IntVector target;
    std::vector<IntVector> summands;
};

struct ShortEdgeWitness {
    IntVector from, to;
    Integer length;
    Cone wall;  // rays of the normal fan whose facets contain the edge
};

struct PicardRankTwo {
    IntVector target;
    long s = 0;  // target lies in s times the ample body
};

struct HomogeneousAssertion {
    IntVector point;  // the single lattice point of A_X
    long s = 0;
};

using Certificate = std::variant<std::monostate, EdgeLengthBound, VeryAmpleSumDecomposition, ShortEdgeWitness,
                                 PicardRankTwo, HomogeneousAssertion>;

enum class Status { Empty, NonEmpty, Undecided };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::Empty: return "Empty";
        case Status::NonEmpty: return "NonEmpty";
        default: return "Undecided";
    }
}

struct Diagnostics {
    std::optional<Integer> length;
    bool smooth = false;
    bool linearly_normal = true;
    std::optional<std::size_t> picard_rank;
    std::vector<RatVector> a_x_vertices;
    std::optional<bool> a_x_integral;
    std::optional<bool> a_x_normal;
    std::optional<long> failed_decomposition_s;  // s for which no decomposition exists
    std::optional<std::size_t> oracle_samples;
    std::optional<bool> oracle_heuristic;
};

struct TerraciniVerdict {
    Status status = Status::Undecided;
    long h = 2;
    Certificate certificate;
    std::optional<OracleSample> witness;
    Diagnostics diagnostics;
    std::vector<std::string> notes;
    std::uint64_t seed = 0;
};

/// L lies in s times the ample body: checked by Mori pairing and by dilation;
/// the two must agree.
inline bool membership_in_dilated_body(const IntVector& l, long s, const AmpleBodyResult& body) {
    if (s < 1) throw InvalidArgument("s must be positive");
    bool by_pairing = true;
    for (const auto& y : body.forms)
        if (dot(y, l) < s) by_pairing = false;
    bool by_dilation = dilate(body.body, Integer(s)).contains(to_rational(l));
    if (by_pairing != by_dilation) throw Error("internal: membership tests disagree");
    return by_pairing;
}

/// s lattice points of the ample body summing to L, or nothing after an
/// exhaustive search of body intersected with L - (s-1) body at every level.
inline std::optional<std::vector<IntVector>> decompose_as_very_ample_sum(const IntVector& l, long s,
                                                                         const AmpleBodyResult& body) {
    if (s < 1) throw InvalidArgument("s must be positive");
    const std::size_t rho = l.size();
    std::set<std::pair<IntVector, long>> failed;
    std::function<std::optional<std::vector<IntVector>>(const IntVector&, long)> go =
        [&](const IntVector& target, long k) -> std::optional<std::vector<IntVector>> {
        if (k == 1) {
            if (body.body.contains(to_rational(target))) return std::vector<IntVector>{target};
            return std::nullopt;
        }
        if (failed.count({target, k})) return std::nullopt;
        HalfspaceSystem region{rho, {}};
        for (const auto& y : body.forms) {
            region.add(to_rational(y), 1);
            region.add(scale(to_rational(y), Rational(-1)), Rational(k - 1) - dot(to_rational(y), to_rational(target)));
        }
        std::vector<IntVector> candidates;
        try {
            candidates = lattice_points(hrep_to_vrep(region));
        } catch (const EmptyPolyhedron&) {
        }
        for (const auto& x : candidates) {
            if (auto rest = go(target - x, k - 1)) {
                rest->insert(rest->begin(), x);
                return rest;
            }
        }
        failed.insert({target, k});
        return std::nullopt;
    };
    return go(l, s);
}

namespace detail {

inline ShortEdgeWitness short_edge(const LatticePolytope& p, const EdgeLengths& el) {
    for (const auto& e : el.edges)
        if (e.length == el.min_length) {
            auto fa = p.facets_at(e.from), fb = p.facets_at(e.to);
            Cone wall;
            std::set_intersection(fa.begin(), fa.end(), fb.begin(), fb.end(), std::back_inserter(wall));
            return {p.vertices[e.from], p.vertices[e.to], e.length, wall};
        }
    throw Error("internal: no edge of minimal length");
}

inline bool fan_is_smooth(const Fan& f) {
    try {
        return is_smooth(f);
    } catch (const NotSimplicial&) {
        return false;
    }
}

}  // namespace detail

/// An edge of length s <= 2h-2 spans a rational normal curve whose h tangent
/// lines meet, so h tangent spaces along it span at most h(n-1)+s+1 affine
/// dimensions. That is a deficit only while it stays below N+1.
inline bool short_edge_forces_deficit(long h, std::size_t n, const Integer& s, std::size_t monomials) {
    Integer bound = Integer(h) * Integer(static_cast<long>(n) - 1) + s + 1;
    return s <= 2 * h - 2 && bound < Integer(static_cast<unsigned long>(monomials));
}

/// Emptiness of T_h for the embedding of X_P by the lattice points of P.
inline TerraciniVerdict decide_emptiness(const TerraciniQuery& q) {
    auto p = detail::query_polytope(q);
    Embedding e(p, monomial_parametrization(p, q.subset));
    TerraciniVerdict v;
    v.h = q.h;
    v.seed = q.oracle.seed;
    v.diagnostics.length = e.edges.min_length;
    v.diagnostics.linearly_normal = q.linearly_normal();
    Fan f = normal_fan(p);
    v.diagnostics.smooth = detail::fan_is_smooth(f);

    auto attach_oracle = [&](const OracleResult& r) {
        v.diagnostics.oracle_samples = r.samples_used;
        v.diagnostics.oracle_heuristic = r.heuristic;
        if (r.witness) v.witness = r.witness;
    };

    if (!v.diagnostics.smooth || !q.linearly_normal()) {
        v.notes.push_back(!v.diagnostics.smooth ? "X_P is singular: theorem paths disabled, oracle only"
                                                : "monomial subset given: theorem paths disabled, oracle only");
        if (q.run_oracle) {
            auto r = oracle_search(e, q.h, q.oracle);
            attach_oracle(r);
            if (r.witness) {
                v.status = Status::NonEmpty;
                v.notes.push_back("rank deficit found by the oracle in stratum " + r.witness->stratum);
                return v;
            }
        }
        if (!v.diagnostics.smooth)
            throw NotSmooth("X_P is singular and the oracle found no rank deficit; no criterion applies");
        v.status = Status::Undecided;
        v.notes.push_back("no rank deficit found within the oracle budget");
        return v;
    }

    const Integer& ell = e.edges.min_length;
    const long s = 2 * q.h - 1;
    if (ell <= 2 * q.h - 2) {
        if (short_edge_forces_deficit(q.h, p.dim, ell, e.monomials.size())) {
            v.status = Status::NonEmpty;
            v.certificate = detail::short_edge(p, e.edges);
            v.notes.push_back("edge of length " + ell.get_str() + " <= 2h-2 gives an invariant curve of low degree");
            return v;
        }
        v.notes.push_back("edge of length " + ell.get_str() + " <= 2h-2, but N is too small for it to force a deficit");
        if (q.run_oracle) {
            auto r = oracle_search(e, q.h, q.oracle);
            attach_oracle(r);
            if (r.witness) {
                v.status = Status::NonEmpty;
                v.notes.push_back("rank deficit found by the oracle in stratum " + r.witness->stratum);
                return v;
            }
        }
        v.status = Status::Undecided;
        return v;
    }
    if (q.h == 2) {
        v.status = Status::Empty;
        v.certificate = EdgeLengthBound{ell, s};
        v.notes.push_back("smooth, linearly normal and l(P) >= 3");
        return v;
    }

    auto pd = class_group_grading(f);
    auto body = ample_body(f, pd);
    IntVector l = polytope_divisor_class(p, f, pd);
    v.diagnostics.picard_rank = pd.picard_rank;
    v.diagnostics.a_x_vertices = body.compact.polytope.vertices;
    v.diagnostics.a_x_integral = body.compact.integral;
    if (!membership_in_dilated_body(l, s, body)) throw Error("internal: l(P) >= 2h-1 but L is not in (2h-1) times the ample body");

    if (auto parts = decompose_as_very_ample_sum(l, s, body)) {
        v.status = Status::Empty;
        v.certificate = VeryAmpleSumDecomposition{l, *parts};
        v.notes.push_back("L is a sum of 2h-1 very ample classes");
        return v;
    }
    v.diagnostics.failed_decomposition_s = s;
    if (pd.picard_rank == 2) {
        v.status = Status::Empty;
        v.certificate = PicardRankTwo{l, s};
        v.notes.push_back("Picard rank two and L in (2h-1) times the ample body");
        return v;
    }
    if (q.homogeneous && q.fan && body.compact.integral && body.compact.polytope.vertices.size() == 1) {
        v.status = Status::Empty;
        v.certificate = HomogeneousAssertion{to_integer(body.compact.polytope.vertices[0]), s};
        v.notes.push_back("homogeneous by user assertion; A_X is a lattice point");
        return v;
    }
    if (body.compact.integral) v.diagnostics.a_x_normal = is_normal_polytope(body.compact.lattice_body()).normal;
    if (q.run_oracle) attach_oracle(oracle_search(e, q.h, q.oracle));
    if (v.witness) {
        v.status = Status::NonEmpty;
        v.notes.push_back("rank deficit found by the oracle");
        return v;
    }
    v.status = Status::Undecided;
    v.notes.push_back("no decomposition of L into 2h-1 ample lattice classes exists; no criterion applies");
    return v;
}

inline TerraciniVerdict segre_veronese_verdict(const std::vector<long>& n, const std::vector<long>& d, long h) {
    if (h < 2) throw InvalidArgument("h must be at least 2");
    auto p = segre_veronese_polytope(n, d);
    const long s = 2 * h - 1;
    const long dmin = *std::min_element(d.begin(), d.end());
    TerraciniVerdict v;
    v.h = h;
    v.diagnostics.length = Integer(dmin);
    v.diagnostics.smooth = true;
    v.diagnostics.picard_rank = n.size();
    v.diagnostics.a_x_vertices = {RatVector(n.size(), Rational(1))};
    v.diagnostics.a_x_integral = true;
    if (dmin >= s) {
        v.status = Status::Empty;
        v.notes.push_back("h <= ceil(d_i/2) for every factor");
        if (h == 2) {
            v.certificate = EdgeLengthBound{Integer(dmin), s};
        } else {
            // A_X is the single point (1,...,1)
            IntVector one(n.size(), Integer(1)), target;
            for (auto x : d) target.push_back(Integer(x));
            std::vector<IntVector> parts(static_cast<std::size_t>(s - 1), one);
            parts.push_back(target - scale(one, Integer(s - 1)));
            v.certificate = VeryAmpleSumDecomposition{target, parts};
        }
        return v;
    }
    Integer count = 1;
    std::size_t dim = 0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        Integer b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n[i] + d[i]), static_cast<unsigned long>(n[i]));
        count *= b;
        dim += static_cast<std::size_t>(n[i]);
    }
    if (!short_edge_forces_deficit(h, dim, Integer(dmin), count.get_ui())) {
        TerraciniQuery q;
        q.polytope = p;
        q.h = h;
        return decide_emptiness(q);
    }
    v.status = Status::NonEmpty;
    v.certificate = detail::short_edge(p, edge_lengths(p));
    v.notes.push_back("a factor has d_i <= 2h-2");
    return v;
}

inline TerraciniVerdict scroll_verdict(const std::vector<long>& a, long d, long h) {
    if (h < 2) throw InvalidArgument("h must be at least 2");
    TerraciniQuery q;
    q.polytope = scroll_polytope(a, d);
    q.h = h;
    q.run_oracle = false;
    auto v = decide_emptiness(q);
    const bool closed_form = a.size() >= 2 && h <= (d + 1) / 2;
    if (closed_form && v.status != Status::Empty) throw Error("internal: scroll verdict contradicts h <= ceil(d/2)");
    if (closed_form) v.notes.push_back("h <= ceil(d/2) for a scroll of Picard rank two");
    return v;
}

struct ImplicationFlag {
    bool set = false;
    std::vector<std::string> hypotheses;
};

struct IdentifiabilityReport {
    long h = 2;
    ImplicationFlag finite_fibers;
    ImplicationFlag h_identifiability_outside_lower_secant;
    ImplicationFlag smooth_outside_lower_secant;
    ImplicationFlag bronowski_applies;
};

namespace detail {

inline std::string certificate_kind(const Certificate& c) {
    switch (c.index()) {
        case 1: return "EdgeLengthBound";
        case 2: return "VeryAmpleSumDecomposition";
        case 3: return "ShortEdgeWitness";
        case 4: return "PicardRankTwo";
        case 5: return "HomogeneousAssertion";
        default: return "none";
    }
}

inline std::optional<std::string> certified_empty(const std::map<long, TerraciniVerdict>& verdicts, long k) {
    auto it = verdicts.find(k);
    if (it == verdicts.end() || it->second.status != Status::Empty || it->second.certificate.index() == 0) return std::nullopt;
    return "T_" + std::to_string(k) + " empty (" + certificate_kind(it->second.certificate) + ")";
}

}  // namespace detail

/// Consequences of certified emptiness: T_h for finite fibres, T_{2h} for
/// identifiability and smoothness outside the lower secant, T_{2h-1} for the
/// Bronowski criterion. Missing or uncertified verdicts leave flags unset.
inline IdentifiabilityReport identifiability_report(long h, const std::map<long, TerraciniVerdict>& verdicts) {
    IdentifiabilityReport r;
    r.h = h;
    if (auto t = detail::certified_empty(verdicts, h)) r.finite_fibers = {true, {*t}};
    if (auto t = detail::certified_empty(verdicts, 2 * h)) {
        r.h_identifiability_outside_lower_secant = {true, {*t}};
        r.smooth_outside_lower_secant = {true, {*t}};
    }
    if (auto t = detail::certified_empty(verdicts, 2 * h - 1)) r.bronowski_applies = {true, {*t}};
    return r;
}

inline IdentifiabilityReport identifiability_report(const TerraciniQuery& q, const std::map<long, TerraciniVerdict>& verdicts) {
    return identifiability_report(q.h, verdicts);
}

}  // namespace terracini
