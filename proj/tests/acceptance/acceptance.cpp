// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "terracini/io.hpp"

using namespace terracini;

namespace {

std::string data(const std::string& rel) { return std::string(TERRACINI_DATA_DIR) + "/" + rel; }

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string& what) {
        if (ok) return;
        if (pass) detail = what;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Fan load_fan(const std::string& rel) { return io::fan_from_json(io::read_json_file(data(rel))).fan; }

// 1. The nine-ray fan.
Outcome nine_ray_fan() {
    Outcome o;
    auto t0 = Clock::now();
    auto f = load_fan("fans/nine_rays.json");
    auto pd = class_group_grading(f);
    auto body = ample_body(f, pd);
    bool fractional = false;
    for (const auto& v : body.compact.polytope.vertices) fractional = fractional || !is_integral(v);
    o.check(fractional && !body.compact.integral, "A_X has no non-integral vertex");

    RatVector d{0, 0, 1, 1, 4, 3, 4, make_rational(7, 2), 5};
    // In the plane every wall is a single ray: the curve dual to D_i.
    std::map<std::size_t, Rational> by_ray;
    for (const auto& w : walls(f)) by_ray[w.tau.at(0)] = dot(d, to_rational(wall_relation(f, w)));
    for (std::size_t i : {0, 1, 2, 3, 4, 6, 7})
        o.check(by_ray.count(i) && by_ray[i] == 1, "D . C_" + std::to_string(i + 1) + " != 1");
    o.check(by_ray.count(5) && by_ray[5] == make_rational(3, 2), "D . C_6 != 3/2");
    // The same numbers through the Picard-lattice pairing.
    RatVector cls = pd.class_of(d);
    for (const auto& c : body.mori_generators)
        o.check(c.pair(cls) == dot(d, to_rational(c.against_divisors)), "Picard pairing disagrees with divisor pairing");
    double s = seconds(t0);
    o.check(s < 1.0, "runtime " + std::to_string(s) + " s");
    if (o.pass) o.detail = "fractional vertex " + to_string(cls);
    return o;
}

// 2. Fano polygons and bundled 3-folds.
Outcome fano_slice() {
    Outcome o;
    std::size_t n = 0;
    for (const auto& dir : {"fano_surfaces", "fano3"}) {
        std::vector<std::filesystem::path> files;
        for (const auto& e : std::filesystem::directory_iterator(data(dir))) files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& p : files) {
            auto t0 = Clock::now();
            auto f = io::fan_from_json(io::read_json_file(p.string())).fan;
            auto body = ample_body(f);
            auto count = lattice_points(body.compact.polytope).size();
            double s = seconds(t0);
            o.check(count == 1, p.filename().string() + ": " + std::to_string(count) + " lattice points");
            o.check(s < 1.0, p.filename().string() + ": runtime " + std::to_string(s) + " s");
            ++n;
        }
    }
    o.check(n >= 5, "fewer than five fans found");
    if (o.pass) o.detail = std::to_string(n) + " fans, aggregate {1}";
    return o;
}

// 3. Fano 5-fold from its intersection forms.
Outcome fano_fivefold() {
    Outcome o;
    auto t0 = Clock::now();
    auto forms = io::forms_from_json(io::read_json_file(data("fano5/id556_forms.json")));
    auto body = ample_body_from_forms(forms.picard_rank, forms.forms);
    const auto& v = body.compact.polytope.vertices;
    o.check(body.compact.integral, "A_X is not a lattice polytope");
    o.check(v.size() == 2, std::to_string(v.size()) + " vertices");
    if (v.size() == 2) {
        auto diff = to_integer(v[1] - v[0]);
        o.check(primitive(to_rational(diff)) == diff || primitive(to_rational(diff)) == IntVector(diff.size()) - diff,
                "segment is not primitive");
    }
    auto pts = lattice_points(body.compact.polytope);
    o.check(pts.size() == 2, std::to_string(pts.size()) + " lattice points");
    double s = seconds(t0);
    o.check(s < 5.0, "runtime " + std::to_string(s) + " s");
    if (o.pass) o.detail = "segment " + to_string(v[0]) + " -- " + to_string(v[1]);
    return o;
}

// 4. Degree-8 surface, rank five along the diagonal.
Outcome degree_eight() {
    Outcome o;
    // Columns in the order printed with the matrix.
    const std::vector<IntVector> mons{{3, 0}, {2, 3}, {2, 2}, {2, 1}, {1, 2}, {1, 1}, {0, 1}};
    auto tri = io::polytope_from_json(io::read_json_file(data("polytopes/degree8_triangle.json")));
    auto pts = lattice_points(tri);
    for (Rational t : {Rational(2), Rational(3), Rational(5), make_rational(7, 2), Rational(-4)}) {
        Rational t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
        RationalMatrix printed{{1, 1, 1, 1, 1, 1, 1},
                               {3, 2, 2, 2, 1, 1, 0},
                               {0, 3, 2, 1, 2, 1, 1},
                               {t3, t5, t4, t3, t3, t2, t},
                               {3 * t2, 2 * t4, 2 * t3, 2 * t2, t2, t, 0},
                               {0, 3 * t4, 2 * t3, t2, 2 * t2, t, 1}};
        RatVector w{t5 - t4 - 2 * t3, -t4 + t3, -t5 + t4, 2 * t2 + t - 1, -t3 + t2, -t2 + t};
        auto m = terracini_matrix({{1, 1}, {t, t}}, mons).matrix;
        std::string at = " at t = " + t.get_str();
        o.check(m == printed, "engine matrix differs from the printed one" + at);
        o.check(rank(m) == 5, "rank " + std::to_string(rank(m)) + at);
        o.check(is_zero(m.transpose() * w), "kernel vector fails" + at);
        // The bundled triangle is a translate; same rank there.
        o.check(rank_deficit_at({{1, 1}, {t, t}}, pts).rank == 5, "bundled triangle rank differs" + at);
    }
    if (o.pass) o.detail = "rank 5 and kernel vector verified at 5 values of t";
    return o;
}

// 5. Cubic Veronese against its projection.
Outcome veronese_projection() {
    Outcome o;
    auto v3 = io::polytope_from_json(io::read_json_file(data("polytopes/veronese_3.json")));
    TerraciniQuery q;
    q.polytope = v3;
    q.h = 2;
    auto verdict = decide_emptiness(q);
    o.check(verdict.status == Status::Empty, "3Delta_2 verdict " + to_string(verdict.status));
    o.check(verdict.diagnostics.length == 3, "l(P) != 3");

    auto subset = io::monomials_from_json(io::read_json_file(data("polytopes/veronese_3_without_u1u2.json")));
    Embedding proj(v3, monomial_parametrization(v3, subset));
    auto r = oracle_search(proj, 2, {});
    o.check(r.witness.has_value(), "no witness on the 9-monomial projection");
    if (r.witness) {
        const auto& p = r.witness->points;
        o.check(p.size() == 2 && p[0].coords == RatVector{1, 0} && p[1].coords == RatVector{-1, 0},
                "witness not at (1,0), (-1,0)");
        o.check(r.witness->check.rank == 5, "witness rank != 5");
    }
    Embedding full(v3, lattice_points(v3));
    auto none = oracle_search(full, 2, {7, 200, true, false});
    o.check(!none.witness, "witness found on the full Veronese");
    o.check(none.samples_used == 200, "budget not exhausted");
    if (o.pass) o.detail = "Empty with l = 3; projection witness (1,0),(-1,0); none in 200 samples";
    return o;
}

// 6. Edge length against wall degrees on random smooth polytopes.

// Random blow-ups of a smooth starting fan; each blow-up keeps it smooth and projective.
Fan random_smooth_fan(std::mt19937_64& rng, std::size_t dim) {
    Fan f;
    if (dim == 2) {
        std::vector<IntVector> rays;
        switch (rng() % 3) {
            case 0: rays = {{1, 0}, {0, 1}, {-1, -1}}; break;
            case 1: rays = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}; break;
            default: rays = {{1, 0}, {0, 1}, {-1, 2}, {0, -1}}; break;
        }
        std::size_t blowups = rng() % 4;
        for (std::size_t k = 0; k < blowups; ++k) {
            auto g = planar_fan(rays);
            const auto& c = g.max_cones[rng() % g.max_cones.size()];
            rays.push_back(g.rays[c[0]] + g.rays[c[1]]);
        }
        return planar_fan(rays);
    }
    if (rng() % 2)
        f = make_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}},
                     {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    else
        f = make_fan(3, {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}},
                     {{0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}});
    std::size_t blowups = rng() % 3;
    for (std::size_t k = 0; k < blowups; ++k) {
        std::size_t pick = rng() % f.max_cones.size();
        Cone c = f.max_cones[pick];
        std::size_t w = f.rays.size();
        f.rays.push_back(f.rays[c[0]] + f.rays[c[1]] + f.rays[c[2]]);
        f.max_cones.erase(f.max_cones.begin() + static_cast<long>(pick));
        f.max_cones.push_back({c[0], c[1], w});
        f.max_cones.push_back({c[0], c[2], w});
        f.max_cones.push_back({c[1], c[2], w});
        f = make_fan(3, f.rays, f.max_cones);
    }
    return f;
}

// Ample class: an integral multiple of a vertex of A_X plus a random nef combination.
IntVector random_ample_class(std::mt19937_64& rng, const AmpleBodyResult& body) {
    const auto& verts = body.compact.polytope.vertices;
    RatVector v = verts[rng() % verts.size()];
    Integer den = 1;
    for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
    Integer k = den * Integer(static_cast<long>(1 + rng() % 2));
    IntVector l = to_integer(scale(v, Rational(k)));
    for (const auto& r : body.nef.rays) l = l + scale(r, Integer(static_cast<long>(rng() % 3)));
    return l;
}

std::vector<LatticePolytope> random_smooth_polytopes(std::size_t count) {
    std::mt19937_64 rng(20240611);
    std::vector<LatticePolytope> out;
    while (out.size() < count) {
        std::size_t dim = out.size() % 5 < 3 ? 2 : 3;
        auto f = random_smooth_fan(rng, dim);
        auto pd = class_group_grading(f);
        auto body = ample_body(f, pd);
        out.push_back(polytope_of_class(f, pd, random_ample_class(rng, body)));
    }
    return out;
}

Outcome edge_length_consistency() {
    Outcome o;
    auto polys = random_smooth_polytopes(25);
    for (std::size_t i = 0; i < polys.size(); ++i) {
        const auto& p = polys[i];
        std::string tag = "polytope " + std::to_string(i) + ": ";
        auto f = normal_fan(p);
        o.check(is_smooth(f), tag + "not smooth");
        auto pd = class_group_grading(f);
        auto body = ample_body(f, pd);
        auto l = polytope_divisor_class(p, f, pd);
        Integer ell = edge_lengths(p).min_length;
        // Mori side: least degree of L on a wall curve.
        Integer least = body.mori_generators.front().pair(l);
        for (const auto& c : body.mori_generators) least = std::min(least, c.pair(l));
        o.check(least == ell, tag + "min L.C_w = " + least.get_str() + " but l(P) = " + ell.get_str());
        for (long s = 1; s <= ell.get_si() + 2; ++s) {
            bool mori = least >= s;
            bool poly = dilate(body.body, Integer(s)).contains(to_rational(l));
            o.check(mori == poly, tag + "routes disagree at s = " + std::to_string(s));
            o.check(poly == (s <= ell), tag + "membership wrong at s = " + std::to_string(s));
            o.check(membership_in_dilated_body(l, s, body) == poly, tag + "engine membership disagrees");
        }
    }
    if (o.pass) o.detail = std::to_string(polys.size()) + " random smooth polytopes of dimension 2 and 3";
    return o;
}

// 7. Segre-Veronese verdicts.
Outcome segre_veronese() {
    Outcome o;
    auto a = segre_veronese_verdict({1, 1}, {3, 3}, 2);
    o.check(a.status == Status::Empty, "(1,1),(3,3): " + to_string(a.status));
    std::map<long, TerraciniVerdict> vs;
    for (long k : {2, 3, 4}) vs[k] = segre_veronese_verdict({2, 3}, {7, 8}, k);
    o.check(vs[2].status == Status::Empty, "(2,3),(7,8): " + to_string(vs[2].status));
    auto rep = identifiability_report(2, vs);
    o.check(rep.h_identifiability_outside_lower_secant.set, "(2,3),(7,8): 2-identifiability flag not set");
    auto c = segre_veronese_verdict({1, 1}, {1, 1}, 2);
    std::string why = c.notes.empty() ? "" : " (" + c.notes.back() + ")";
    o.check(c.status == Status::NonEmpty, "(1,1),(1,1): expected NonEmpty, got " + to_string(c.status) + why);
    if (o.pass) o.detail = "all three verdicts as stated";
    return o;
}

// 8. Grassmannian criterion against Pluecker tangent spaces.
IntegerMatrix random_invertible(std::mt19937_64& rng, std::size_t n, long range) {
    IntegerMatrix m(n, n);
    do {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = Integer(static_cast<long>(rng() % (2 * range + 1)) - range);
    } while (determinant(m) == 0);
    return m;
}

// r-planes in P^n meeting in a projective s-plane, in random coordinates.
std::pair<Subspace, Subspace> planes_meeting_in(std::mt19937_64& rng, std::size_t r, std::size_t n, long s) {
    auto g = to_rational(random_invertible(rng, n + 1, 3));
    RationalMatrix u(r + 1, n + 1), v(r + 1, n + 1);
    for (std::size_t i = 0; i <= r; ++i) u(i, i) = 1;
    std::size_t next = r + 1;
    for (std::size_t i = 0; i <= r; ++i) v(i, static_cast<long>(i) <= s ? i : next++) = 1;
    auto mix = [&](const RationalMatrix& b) { return to_rational(random_invertible(rng, r + 1, 2)) * b * g; };
    return {make_subspace(n, mix(u)), make_subspace(n, mix(v))};
}

Outcome grassmannian() {
    Outcome o;
    std::mt19937_64 rng(8);
    const std::pair<std::size_t, std::size_t> spaces[] = {{1, 3}, {2, 5}, {3, 7}};
    std::map<bool, std::size_t> tally;
    for (std::size_t i = 0; i < 500; ++i) {
        auto [r, n] = spaces[i % 3];
        std::pair<Subspace, Subspace> uv;
        if (i % 2 == 0) {
            // generic pair from random integer bases
            RationalMatrix a(r + 1, n + 1), b(r + 1, n + 1);
            for (std::size_t x = 0; x <= r; ++x)
                for (std::size_t y = 0; y <= n; ++y) {
                    a(x, y) = static_cast<long>(rng() % 7) - 3;
                    b(x, y) = static_cast<long>(rng() % 7) - 3;
                }
            if (rank(a) != r + 1 || rank(b) != r + 1) {
                --i;
                continue;
            }
            uv = {make_subspace(n, a), make_subspace(n, b)};
            if (intersection_dim(uv.first, uv.second) == static_cast<long>(r)) {
                --i;
                continue;
            }
        } else {
            long s = static_cast<long>(rng() % (r + 1)) - 1;
            uv = planes_meeting_in(rng, r, n, s);
        }
        bool t2 = in_T2(uv.first, uv.second);
        ++tally[t2];
        o.check(t2 == !verify_via_plucker(uv.first, uv.second), "pair " + std::to_string(i) + " disagrees");
    }
    for (std::size_t r : {2, 3}) {
        std::size_t n = 2 * r + 1;
        for (int k = 0; k < 5; ++k) {
            auto [u, v] = planes_meeting_in(rng, r, n, static_cast<long>(r) - 2);
            o.check(intersection_dim(u, v) == static_cast<long>(r) - 2 && in_T2(u, v) && !verify_via_plucker(u, v),
                    "s = r-2 case fails");
            auto [u2, v2] = planes_meeting_in(rng, r, n, static_cast<long>(r) - 3);
            o.check(intersection_dim(u2, v2) == static_cast<long>(r) - 3 && !in_T2(u2, v2) && verify_via_plucker(u2, v2),
                    "s = r-3 case fails");
        }
    }
    if (o.pass)
        o.detail = "500 random pairs (" + std::to_string(tally[true]) + " in T_2) and 20 constructed pairs";
    return o;
}

// 9. Polyhedra properties.
std::vector<IntVector> box_points(const Polyhedron& q) {
    const std::size_t d = q.dim();
    IntVector lo(d), hi(d);
    for (std::size_t j = 0; j < d; ++j) {
        Rational mn = q.vertices[0][j], mx = mn;
        for (const auto& v : q.vertices) {
            mn = std::min(mn, v[j]);
            mx = std::max(mx, v[j]);
        }
        mpz_fdiv_q(lo[j].get_mpz_t(), mn.get_num_mpz_t(), mn.get_den_mpz_t());
        mpz_cdiv_q(hi[j].get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    }
    std::vector<IntVector> out;
    IntVector x = lo;
    while (true) {
        if (q.contains(to_rational(x))) out.push_back(x);
        std::size_t j = 0;
        for (; j < d && x[j] == hi[j]; ++j) x[j] = lo[j];
        if (j == d) break;
        ++x[j];
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Normality by explicit sumsets, k = 2..kmax.
std::pair<bool, std::optional<int>> normal_by_sumsets(const LatticePolytopeBody& q, int kmax) {
    auto poly = polyhedron_from_vrep(q.dim, q.vertices);
    auto base = box_points(poly);
    std::set<IntVector> sums(base.begin(), base.end());
    for (int k = 2; k <= kmax; ++k) {
        std::set<IntVector> next;
        for (const auto& a : sums)
            for (const auto& b : base) next.insert(a + b);
        sums = std::move(next);
        std::vector<RatVector> scaled;
        for (const auto& v : q.vertices) scaled.push_back(scale(to_rational(v), Rational(k)));
        auto pts = box_points(polyhedron_from_vrep(q.dim, scaled));
        if (std::set<IntVector>(pts.begin(), pts.end()) != sums) return {false, k};
    }
    return {true, std::nullopt};
}

std::vector<std::pair<std::string, AmpleBodyResult>> bundled_bodies() {
    std::vector<std::pair<std::string, AmpleBodyResult>> out;
    for (const auto& dir : {"fano_surfaces", "fano3", "fans"})
        for (const auto& e : std::filesystem::directory_iterator(data(dir)))
            out.push_back({e.path().filename().string(),
                           ample_body(io::fan_from_json(io::read_json_file(e.path().string())).fan)});
    auto g = io::grading_from_json(io::read_json_file(data("fano5/id556_grading.json")));
    out.push_back({"id556_grading.json", ample_body(fan_from_grading(g), picard_from_grading(g))});
    auto forms = io::forms_from_json(io::read_json_file(data("fano5/id556_forms.json")));
    out.push_back({"id556_forms.json", ample_body_from_forms(forms.picard_rank, forms.forms)});
    return out;
}

Outcome polyhedra_properties() {
    Outcome o;
    std::mt19937_64 rng(99);
    std::size_t systems = 0, attempts = 0;
    while (systems < 100 && attempts < 1000) {
        ++attempts;
        const std::size_t d = 1 + systems % 6;
        HalfspaceSystem h{d, {}};
        for (std::size_t i = 0; i < d; ++i) {
            RatVector e(d, Rational(0));
            e[i] = 1;
            h.add(e, Rational(-static_cast<long>(rng() % 4)));
        }
        std::size_t extra = 1 + rng() % 5;
        for (std::size_t k = 0; k < extra; ++k) {
            RatVector n(d);
            for (auto& x : n) x = Rational(static_cast<long>(rng() % 6) - 3);
            h.add(n, Rational(-static_cast<long>(rng() % 9)));
        }
        Polyhedron p;
        try {
            p = hrep_to_vrep(h);
        } catch (const EmptyPolyhedron&) {
            continue;
        }
        ++systems;
        auto again = hrep_to_vrep(vrep_to_hrep(p));
        o.check(again.vertices == p.vertices && again.rays == p.rays && same_set(again, p),
                "round trip fails in dim " + std::to_string(d));
        for (const auto& v : p.vertices) o.check(p.contains(v), "vertex violates its own H-representation");
    }
    o.check(systems == 100, "only " + std::to_string(systems) + " non-empty systems generated");

    std::vector<std::pair<std::string, LatticePolytopeBody>> corpus;
    for (const auto& [name, body] : bundled_bodies()) {
        o.check(same_set(minkowski_sum(body.compact.polytope, body.nef), body.body), name + ": A_X + Nef != ample body");
        o.check(same_set(minkowski_sum(compact_part(body.body).polytope, recession_cone(body.body)), body.body),
                name + ": compact part + recession cone != ample body");
        if (body.compact.integral) corpus.push_back({"A_X of " + name, body.compact.lattice_body()});
    }
    auto add = [&](const std::string& name, const LatticePolytope& p) {
        corpus.push_back({name, LatticePolytopeBody{p.dim, p.vertices}});
    };
    for (const auto& f : {"veronese_2", "veronese_3", "degree8_triangle", "unit_square"})
        add(f, io::polytope_from_json(io::read_json_file(data(std::string("polytopes/") + f + ".json"))));
    add("3Delta_3", dilated_simplex(3, 3));
    add("segre-veronese (1,1,1),(2,2,2)", segre_veronese_polytope({1, 1, 1}, {2, 2, 2}));
    add("scroll (1,2) in degree 3", scroll_polytope({1, 2}, 3));
    auto polys = random_smooth_polytopes(25);
    for (std::size_t i = 0; i < polys.size(); ++i) add("random polytope " + std::to_string(i), polys[i]);
    const LatticePolytopeBody nonnormal{3, {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}};
    corpus.push_back({"non-normal simplex", nonnormal});

    std::size_t checked = 0;
    for (const auto& [name, q] : corpus) {
        if (lattice_points(polyhedron_from_vrep(q.dim, q.vertices)).size() > 200) continue;
        ++checked;
        int kmax = default_normality_bound(q.dim);
        auto lib = is_normal_polytope(q, kmax);
        auto brute = normal_by_sumsets(q, kmax);
        o.check(lib.normal == brute.first && lib.failing_k == brute.second, name + ": normality disagrees");
    }
    auto r = is_normal_polytope(nonnormal, 2);
    o.check(!r.normal && r.failing_k == 2, "non-normal simplex not detected at k = 2");
    if (o.pass)
        o.detail = "100 H-systems, " + std::to_string(bundled_bodies().size()) + " ample bodies, " +
                   std::to_string(checked) + " polytopes checked for normality";
    return o;
}

// 10. Quadric Veronese is 2-defective.
Outcome quadric_veronese() {
    Outcome o;
    auto v2 = io::polytope_from_json(io::read_json_file(data("polytopes/veronese_2.json")));
    TerraciniQuery q;
    q.polytope = v2;
    q.h = 2;
    auto verdict = decide_emptiness(q);
    o.check(verdict.status == Status::NonEmpty, "verdict " + to_string(verdict.status));
    Embedding e(v2, lattice_points(v2));
    auto r = oracle_search(e, 2, {1, 100, false, true});
    o.check(!r.samples.empty(), "no samples recorded");
    for (const auto& s : r.samples)
        o.check(s.check.rank == 5 && s.check.expected == 6, "sample in stratum " + s.stratum + " has rank " +
                                                                std::to_string(s.check.rank));
    if (o.pass) o.detail = "NonEmpty; rank 5 of 6 at all " + std::to_string(r.samples.size()) + " sampled pairs";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    // Optional arguments select criteria by number.
    std::set<int> only;
    for (int a = 1; a < argc; ++a) only.insert(std::atoi(argv[a]));
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"nine-ray fan ample body", nine_ray_fan},
        {"Fano desk-scale slice", fano_slice},
        {"Fano 5-fold segment", fano_fivefold},
        {"degree-8 surface rank", degree_eight},
        {"Veronese vs projection", veronese_projection},
        {"edge length and wall degrees", edge_length_consistency},
        {"Segre-Veronese verdicts", segre_veronese},
        {"Grassmannian equivalence", grassmannian},
        {"polyhedra properties", polyhedra_properties},
        {"quadric Veronese defectivity", quadric_veronese},
    };
    // Criteria whose stated outcome contradicts the definition of the locus; see README.
    const std::set<int> known = {7};
    int unexpected = 0, failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id)) continue;
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        char time[32];
        std::snprintf(time, sizeof time, "%.3f s", seconds(t0));
        std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << criteria[i].first << " ("
                  << time << ")";
        if (!o.detail.empty()) std::cout << ": " << o.detail;
        std::cout << std::endl;
        if (!o.pass) {
            ++failed;
            if (!known.count(id)) ++unexpected;
        }
    }
    std::size_t ran = only.empty() ? criteria.size() : only.size();
    std::cout << (ran - failed) << " of " << ran << " criteria pass";
    if (failed > unexpected) std::cout << "; " << failed - unexpected << " failure(s) documented as unattainable";
    std::cout << "\n";
    return unexpected ? 1 : 0;
}
