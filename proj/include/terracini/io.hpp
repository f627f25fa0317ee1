#pragma once

// JSON reading and writing. Rationals are "p/q" strings; integers are JSON
// numbers when they fit in 64 bits and decimal strings otherwise.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "terracini/grassmannian.hpp"
#include "terracini/terracini.hpp"
#include "terracini/toric.hpp"

namespace terracini::io {

using Json = nlohmann::ordered_json;

Json to_json(const CurveClass& c);
Json to_json(const ChartPoint& x);
Json to_json(const OracleSample& s);
Json to_json(const TerraciniVerdict& v);

// Scalars.

inline Json to_json(const Integer& z) {
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());
}

inline Json to_json(const Rational& q) { return Json(q.get_str()); }

template <typename T>
Json to_json(const std::vector<T>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Json to_json(const IntegerMatrix& m) { return to_json(m.row_list()); }
inline Json to_json(const RationalMatrix& m) { return to_json(m.row_list()); }

inline Json index_json(const std::vector<std::size_t>& v) {
    Json a = Json::array();
    for (auto x : v) a.push_back(x);
    return a;
}

inline ParseError field_error(const std::string& field, const std::string& what) {
    return ParseError("field '" + field + "': " + what);
}

inline const Json& require(const Json& j, const std::string& key, const std::string& ctx = "") {
    if (!j.is_object()) throw field_error(ctx.empty() ? "<root>" : ctx, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw field_error(ctx.empty() ? key : ctx + "." + key, "missing");
    return *it;
}

inline Integer integer_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        Rational q;
        try {
            q = parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            throw field_error(field, e.what());
        }
        if (!is_integral(q)) throw field_error(field, "expected an integer, got " + q.get_str());
        return q.get_num();
    }
    throw field_error(field, "expected an integer");
}

inline Rational rational_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const ParseError& e) {
            throw field_error(field, e.what());
        }
    }
    throw field_error(field, "expected a rational (integer or \"p/q\" string)");
}

inline std::size_t index_from_json(const Json& j, const std::string& field) {
    if (!j.is_number_unsigned()) throw field_error(field, "expected a non-negative integer");
    return j.get<std::size_t>();
}

inline const Json& array_field(const Json& j, const std::string& field) {
    if (!j.is_array()) throw field_error(field, "expected an array");
    return j;
}

inline IntVector int_vector_from_json(const Json& j, const std::string& field) {
    IntVector v;
    std::size_t i = 0;
    for (const auto& x : array_field(j, field)) v.push_back(integer_from_json(x, field + "[" + std::to_string(i++) + "]"));
    return v;
}

inline RatVector rat_vector_from_json(const Json& j, const std::string& field) {
    RatVector v;
    std::size_t i = 0;
    for (const auto& x : array_field(j, field)) v.push_back(rational_from_json(x, field + "[" + std::to_string(i++) + "]"));
    return v;
}

inline std::vector<IntVector> int_rows_from_json(const Json& j, const std::string& field) {
    std::vector<IntVector> rows;
    std::size_t i = 0;
    for (const auto& r : array_field(j, field)) rows.push_back(int_vector_from_json(r, field + "[" + std::to_string(i++) + "]"));
    return rows;
}

inline std::vector<RatVector> rat_rows_from_json(const Json& j, const std::string& field) {
    std::vector<RatVector> rows;
    std::size_t i = 0;
    for (const auto& r : array_field(j, field)) rows.push_back(rat_vector_from_json(r, field + "[" + std::to_string(i++) + "]"));
    return rows;
}

inline std::size_t common_length(const std::vector<IntVector>& rows, const std::string& field) {
    if (rows.empty()) throw field_error(field, "must not be empty");
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != rows[0].size())
            throw field_error(field + "[" + std::to_string(i) + "]", "has length " + std::to_string(rows[i].size()) +
                                                                        ", expected " + std::to_string(rows[0].size()));
    return rows[0].size();
}

// Files.

inline Json parse_json(const std::string& text, const std::string& source = "<input>") {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // nlohmann reports the byte offset; translate to a line number.
        std::size_t line = 1;
        for (std::size_t i = 0; i < std::min(e.byte, text.size()); ++i)
            if (text[i] == '\n') ++line;
        throw ParseError(source + ":" + std::to_string(line) + ": " + e.what());
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(path + ": cannot write file");
    out << text;
}

// Polyhedra.

inline Json to_json(const HalfspaceSystem& h) {
    Json a = Json::array();
    for (const auto& ineq : h.inequalities) a.push_back(Json{{"normal", to_json(ineq.normal)}, {"offset", to_json(ineq.offset)}});
    return a;
}

inline Json to_json(const Polyhedron& p) {
    return Json{{"dim", p.dim()}, {"vertices", to_json(p.vertices)}, {"rays", to_json(p.rays)}, {"inequalities", to_json(p.hrep)}};
}

inline HalfspaceSystem hrep_from_json(const Json& j, std::size_t dim, const std::string& field) {
    HalfspaceSystem h{dim, {}};
    std::size_t i = 0;
    for (const auto& row : array_field(j, field)) {
        std::string f = field + "[" + std::to_string(i++) + "]";
        RatVector n = rat_vector_from_json(require(row, "normal", f), f + ".normal");
        if (n.size() != dim) throw field_error(f + ".normal", "has wrong length");
        h.add(n, rational_from_json(require(row, "offset", f), f + ".offset"));
    }
    return h;
}

inline Polyhedron polyhedron_from_json(const Json& j) {
    if (j.contains("inequalities") && !j.contains("vertices")) {
        const auto& ineq = j["inequalities"];
        if (!ineq.is_array() || ineq.empty()) throw field_error("inequalities", "expected a non-empty array");
        std::size_t dim = rat_vector_from_json(require(ineq[0], "normal", "inequalities[0]"), "inequalities[0].normal").size();
        return hrep_to_vrep(hrep_from_json(ineq, dim, "inequalities"));
    }
    auto verts = rat_rows_from_json(require(j, "vertices"), "vertices");
    if (verts.empty()) throw field_error("vertices", "must not be empty");
    std::vector<IntVector> rays;
    if (j.contains("rays")) rays = int_rows_from_json(j["rays"], "rays");
    std::size_t dim = j.contains("dim") ? index_from_json(j["dim"], "dim") : verts[0].size();
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (verts[i].size() != dim) throw field_error("vertices[" + std::to_string(i) + "]", "has wrong length");
    for (std::size_t i = 0; i < rays.size(); ++i)
        if (rays[i].size() != dim) throw field_error("rays[" + std::to_string(i) + "]", "has wrong length");
    return polyhedron_from_vrep(dim, verts, rays);
}

inline Json to_json(const LatticePolytope& p) { return Json{{"vertices", to_json(p.vertices)}}; }

inline LatticePolytope polytope_from_json(const Json& j) {
    if (j.contains("rays") && !j["rays"].empty()) throw field_error("rays", "a lattice polytope must be bounded");
    return lattice_polytope_from_hrep(polyhedron_from_json(j));
}

inline std::vector<IntVector> monomials_from_json(const Json& j) {
    auto m = int_rows_from_json(require(j, "monomials"), "monomials");
    common_length(m, "monomials");
    return m;
}

// Fans and gradings.

struct FanInput {
    Fan fan;
    bool homogeneous = false;
};

inline Json to_json(const Fan& f) {
    Json cones = Json::array();
    for (const auto& c : f.max_cones) cones.push_back(index_json(c));
    return Json{{"rays", to_json(f.rays)}, {"max_cones", cones}};
}

inline FanInput fan_from_json(const Json& j) {
    auto rays = int_rows_from_json(require(j, "rays"), "rays");
    std::size_t dim = common_length(rays, "rays");
    std::vector<Cone> cones;
    std::size_t i = 0;
    for (const auto& c : array_field(require(j, "max_cones"), "max_cones")) {
        std::string f = "max_cones[" + std::to_string(i++) + "]";
        Cone cone;
        for (const auto& x : array_field(c, f)) cone.push_back(index_from_json(x, f));
        cones.push_back(cone);
    }
    FanInput in;
    in.fan = make_fan(dim, rays, cones);
    if (j.contains("homogeneous")) {
        if (!j["homogeneous"].is_boolean()) throw field_error("homogeneous", "expected a boolean");
        in.homogeneous = j["homogeneous"].get<bool>();
    }
    return in;
}

inline IntegerMatrix grading_from_json(const Json& j) {
    auto rows = int_rows_from_json(require(j, "grading"), "grading");
    std::size_t cols = common_length(rows, "grading");
    return IntegerMatrix::from_rows(rows, cols);
}

struct IntersectionForms {
    std::size_t picard_rank = 0;
    std::vector<IntVector> forms;
    std::string source;
};

inline Json to_json(const IntersectionForms& f) {
    return Json{{"picard_rank", f.picard_rank}, {"source", f.source}, {"forms", to_json(f.forms)}};
}

inline IntersectionForms forms_from_json(const Json& j) {
    IntersectionForms f;
    f.picard_rank = index_from_json(require(j, "picard_rank"), "picard_rank");
    f.forms = int_rows_from_json(require(j, "forms"), "forms");
    if (common_length(f.forms, "forms") != f.picard_rank) throw field_error("forms", "length differs from picard_rank");
    if (j.contains("source")) f.source = j["source"].get<std::string>();
    return f;
}

inline Json to_json(const CurveClass& c) {
    return Json{{"wall", index_json(c.source_wall)},
                {"against_divisors", to_json(c.against_divisors)},
                {"against_picard", to_json(c.against_picard)}};
}

inline Json to_json(const AmpleBodyResult& r) {
    Json j;
    if (!r.mori_generators.empty()) j["mori_generators"] = to_json(r.mori_generators);
    j["forms"] = to_json(r.forms);
    j["body"] = to_json(r.body.hrep);
    j["a_x_vertices"] = to_json(r.compact.polytope.vertices);
    j["a_x_integral"] = r.compact.integral;
    j["a_x_lattice_points"] = to_json(lattice_points(r.compact.polytope));
    j["nef_rays"] = to_json(r.nef.rays);
    return j;
}

// Subspaces.

inline Json to_json(const Subspace& s) { return Json{{"r", s.r}, {"n", s.n}, {"basis", to_json(s.basis)}}; }

inline Subspace subspace_from_json(const Json& j, const std::string& ctx = "") {
    std::string p = ctx.empty() ? "" : ctx + ".";
    std::size_t r = index_from_json(require(j, "r", ctx), p + "r");
    std::size_t n = index_from_json(require(j, "n", ctx), p + "n");
    auto rows = rat_rows_from_json(require(j, "basis", ctx), p + "basis");
    if (rows.size() != r + 1) throw field_error(p + "basis", "expected r+1 rows");
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].size() != n + 1) throw field_error(p + "basis[" + std::to_string(i) + "]", "expected n+1 entries");
    return make_subspace(n, RationalMatrix::from_rows(rows, n + 1));
}

// Verdicts.

inline Json to_json(const ChartPoint& x) {
    Json j;
    j["chart"] = x.vertex ? Json(*x.vertex) : Json("torus");
    j["coords"] = to_json(x.coords);
    return j;
}

inline ChartPoint chart_point_from_json(const Json& j, const std::string& f) {
    ChartPoint x;
    const auto& c = require(j, "chart", f);
    if (c.is_string()) {
        if (c.get<std::string>() != "torus") throw field_error(f + ".chart", "expected a vertex index or \"torus\"");
    } else {
        x.vertex = index_from_json(c, f + ".chart");
    }
    x.coords = rat_vector_from_json(require(j, "coords", f), f + ".coords");
    return x;
}

inline Json to_json(const OracleSample& s) {
    Json pts = Json::array();
    for (const auto& x : s.points) pts.push_back(to_json(x));
    return Json{{"stratum", s.stratum},
                {"points", pts},
                {"rank", s.check.rank},
                {"expected_rank", s.check.expected},
                {"deficit", s.check.deficit}};
}

inline OracleSample sample_from_json(const Json& j, const std::string& f) {
    OracleSample s;
    s.stratum = require(j, "stratum", f).get<std::string>();
    std::size_t i = 0;
    for (const auto& x : array_field(require(j, "points", f), f + ".points"))
        s.points.push_back(chart_point_from_json(x, f + ".points[" + std::to_string(i++) + "]"));
    s.check.rank = index_from_json(require(j, "rank", f), f + ".rank");
    s.check.expected = index_from_json(require(j, "expected_rank", f), f + ".expected_rank");
    s.check.deficit = require(j, "deficit", f).get<bool>();
    return s;
}

inline Json to_json(const Certificate& c) {
    Json j;
    j["kind"] = detail::certificate_kind(c);
    if (auto* e = std::get_if<EdgeLengthBound>(&c)) {
        j["length"] = to_json(e->length);
        j["bound"] = e->bound;
    } else if (auto* d = std::get_if<VeryAmpleSumDecomposition>(&c)) {
        j["target"] = to_json(d->target);
        j["summands"] = to_json(d->summands);
    } else if (auto* w = std::get_if<ShortEdgeWitness>(&c)) {
        j["from"] = to_json(w->from);
        j["to"] = to_json(w->to);
        j["length"] = to_json(w->length);
        j["wall"] = index_json(w->wall);
    } else if (auto* p = std::get_if<PicardRankTwo>(&c)) {
        j["target"] = to_json(p->target);
        j["s"] = p->s;
    } else if (auto* h = std::get_if<HomogeneousAssertion>(&c)) {
        j["point"] = to_json(h->point);
        j["s"] = h->s;
    }
    return j;
}

inline Certificate certificate_from_json(const Json& j) {
    const std::string f = "certificate";
    std::string kind = require(j, "kind", f).get<std::string>();
    if (kind == "none") return std::monostate{};
    if (kind == "EdgeLengthBound")
        return EdgeLengthBound{integer_from_json(require(j, "length", f), f + ".length"), require(j, "bound", f).get<long>()};
    if (kind == "VeryAmpleSumDecomposition")
        return VeryAmpleSumDecomposition{int_vector_from_json(require(j, "target", f), f + ".target"),
                                         int_rows_from_json(require(j, "summands", f), f + ".summands")};
    if (kind == "ShortEdgeWitness") {
        ShortEdgeWitness w;
        w.from = int_vector_from_json(require(j, "from", f), f + ".from");
        w.to = int_vector_from_json(require(j, "to", f), f + ".to");
        w.length = integer_from_json(require(j, "length", f), f + ".length");
        for (const auto& x : array_field(require(j, "wall", f), f + ".wall")) w.wall.push_back(index_from_json(x, f + ".wall"));
        return w;
    }
    if (kind == "PicardRankTwo")
        return PicardRankTwo{int_vector_from_json(require(j, "target", f), f + ".target"), require(j, "s", f).get<long>()};
    if (kind == "HomogeneousAssertion")
        return HomogeneousAssertion{int_vector_from_json(require(j, "point", f), f + ".point"), require(j, "s", f).get<long>()};
    throw field_error(f + ".kind", "unknown certificate kind " + kind);
}

inline Json to_json(const Diagnostics& d) {
    Json j = Json::object();
    if (d.length) j["length"] = to_json(*d.length);
    j["smooth"] = d.smooth;
    j["linearly_normal"] = d.linearly_normal;
    if (d.picard_rank) j["picard_rank"] = *d.picard_rank;
    if (!d.a_x_vertices.empty()) j["a_x_vertices"] = to_json(d.a_x_vertices);
    if (d.a_x_integral) j["a_x_integral"] = *d.a_x_integral;
    if (d.a_x_normal) j["a_x_normal"] = *d.a_x_normal;
    if (d.failed_decomposition_s) j["failed_decomposition_s"] = *d.failed_decomposition_s;
    if (d.oracle_samples) j["oracle_samples"] = *d.oracle_samples;
    if (d.oracle_heuristic) j["oracle_heuristic"] = *d.oracle_heuristic;
    return j;
}

inline Diagnostics diagnostics_from_json(const Json& j) {
    const std::string f = "diagnostics";
    Diagnostics d;
    if (!j.is_object()) throw field_error(f, "expected an object");
    if (j.contains("length")) d.length = integer_from_json(j["length"], f + ".length");
    d.smooth = require(j, "smooth", f).get<bool>();
    d.linearly_normal = require(j, "linearly_normal", f).get<bool>();
    if (j.contains("picard_rank")) d.picard_rank = index_from_json(j["picard_rank"], f + ".picard_rank");
    if (j.contains("a_x_vertices")) d.a_x_vertices = rat_rows_from_json(j["a_x_vertices"], f + ".a_x_vertices");
    if (j.contains("a_x_integral")) d.a_x_integral = j["a_x_integral"].get<bool>();
    if (j.contains("a_x_normal")) d.a_x_normal = j["a_x_normal"].get<bool>();
    if (j.contains("failed_decomposition_s")) d.failed_decomposition_s = j["failed_decomposition_s"].get<long>();
    if (j.contains("oracle_samples")) d.oracle_samples = index_from_json(j["oracle_samples"], f + ".oracle_samples");
    if (j.contains("oracle_heuristic")) d.oracle_heuristic = j["oracle_heuristic"].get<bool>();
    return d;
}

inline Json to_json(const TerraciniVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["h"] = v.h;
    j["certificate"] = to_json(v.certificate);
    j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
    j["diagnostics"] = to_json(v.diagnostics);
    j["notes"] = v.notes;
    j["seed"] = v.seed;
    return j;
}

inline Status status_from_string(const std::string& s) {
    if (s == "Empty") return Status::Empty;
    if (s == "NonEmpty") return Status::NonEmpty;
    if (s == "Undecided") return Status::Undecided;
    throw field_error("status", "unknown status " + s);
}

inline TerraciniVerdict verdict_from_json(const Json& j) {
    TerraciniVerdict v;
    v.status = status_from_string(require(j, "status").get<std::string>());
    v.h = require(j, "h").get<long>();
    v.certificate = certificate_from_json(require(j, "certificate"));
    const auto& w = require(j, "witness");
    if (!w.is_null()) v.witness = sample_from_json(w, "witness");
    v.diagnostics = diagnostics_from_json(require(j, "diagnostics"));
    for (const auto& n : array_field(require(j, "notes"), "notes")) v.notes.push_back(n.get<std::string>());
    v.seed = require(j, "seed").get<std::uint64_t>();
    return v;
}

inline Json to_json(const ImplicationFlag& f) { return Json{{"set", f.set}, {"hypotheses", f.hypotheses}}; }

inline Json to_json(const IdentifiabilityReport& r) {
    return Json{{"h", r.h},
                {"finite_fibers", to_json(r.finite_fibers)},
                {"h_identifiability_outside_lower_secant", to_json(r.h_identifiability_outside_lower_secant)},
                {"smooth_outside_lower_secant", to_json(r.smooth_outside_lower_secant)},
                {"bronowski_applies", to_json(r.bronowski_applies)}};
}

}  // namespace terracini::io
