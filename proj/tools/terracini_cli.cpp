#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "terracini/io.hpp"

using namespace terracini;
using io::Json;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kOutOfScope = 3 };

struct Output {
    bool json = false;
    std::string out_path;
    std::ostringstream text;

    void emit(const Json& j) {
        std::string s = json ? j.dump(2) + "\n" : text.str();
        if (out_path.empty())
            std::cout << s;
        else
            io::write_text_file(out_path, s);
    }
};

std::string fmt(const RatVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].get_str();
    return s + ")";
}

std::string fmt(const IntVector& v) { return fmt(to_rational(v)); }

std::string fmt(const ChartPoint& x) {
    return (x.vertex ? "chart@v" + std::to_string(*x.vertex) : std::string("torus")) + " " + fmt(x.coords);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// Input loading.

struct PolytopeInput {
    LatticePolytope polytope;
    std::optional<Fan> fan;
    bool homogeneous = false;
};

PolytopeInput load_polytope_input(const std::string& polytope_path, const std::string& fan_path,
                                  const std::vector<long>& cls) {
    PolytopeInput in;
    if (!polytope_path.empty()) {
        in.polytope = io::polytope_from_json(io::read_json_file(polytope_path));
        if (!fan_path.empty()) {
            auto f = io::fan_from_json(io::read_json_file(fan_path));
            if (!same_fan(normal_fan(in.polytope), f.fan)) throw InvalidArgument("fan is not the normal fan of the polytope");
            in.fan = f.fan;
            in.homogeneous = f.homogeneous;
        }
        return in;
    }
    if (fan_path.empty()) throw InvalidArgument("give --polytope or --fan");
    if (cls.empty()) throw InvalidArgument("--fan needs --class with the divisor class of the polarization");
    auto f = io::fan_from_json(io::read_json_file(fan_path));
    IntVector l(cls.begin(), cls.end());
    TerraciniQuery q;
    q.fan = f.fan;
    q.divisor_class = l;
    in.polytope = detail::query_polytope(q);
    in.fan = f.fan;
    in.homogeneous = f.homogeneous;
    return in;
}

// Ample body from any of the accepted inputs.
struct BodyInput {
    AmpleBodyResult body;
    std::optional<PicardData> picard;
};

BodyInput load_body(const std::string& fan_path, const std::string& polytope_path, const std::string& grading_path,
                    const std::string& forms_path) {
    BodyInput b;
    if (!forms_path.empty()) {
        auto f = io::forms_from_json(io::read_json_file(forms_path));
        b.body = ample_body_from_forms(f.picard_rank, f.forms);
        return b;
    }
    if (!grading_path.empty()) {
        auto g = io::grading_from_json(io::read_json_file(grading_path));
        auto pd = picard_from_grading(g);
        b.body = ample_body(fan_from_grading(g), pd);
        b.picard = pd;
        return b;
    }
    Fan f;
    if (!fan_path.empty())
        f = io::fan_from_json(io::read_json_file(fan_path)).fan;
    else if (!polytope_path.empty())
        f = normal_fan(io::polytope_from_json(io::read_json_file(polytope_path)));
    else
        throw InvalidArgument("give --fan, --polytope, --grading or --forms");
    auto pd = class_group_grading(f);
    b.body = ample_body(f, pd);
    b.picard = pd;
    return b;
}

// Whole-file ample body for batch mode: fan, grading or forms JSON.
AmpleBodyResult body_from_any(const std::string& path) {
    auto j = io::read_json_file(path);
    if (j.contains("forms")) {
        auto f = io::forms_from_json(j);
        return ample_body_from_forms(f.picard_rank, f.forms);
    }
    if (j.contains("grading")) {
        auto g = io::grading_from_json(j);
        return ample_body(fan_from_grading(g), picard_from_grading(g));
    }
    return ample_body(io::fan_from_json(j).fan);
}

void print_verdict(std::ostream& os, const TerraciniVerdict& v) {
    os << "T_" << v.h << ": " << to_string(v.status);
    os << " [" << detail::certificate_kind(v.certificate);
    if (auto* e = std::get_if<EdgeLengthBound>(&v.certificate)) os << ": l(P) = " << e->length << " >= " << e->bound;
    if (auto* w = std::get_if<ShortEdgeWitness>(&v.certificate))
        os << ": edge " << fmt(w->from) << " - " << fmt(w->to) << " of length " << w->length;
    if (auto* d = std::get_if<VeryAmpleSumDecomposition>(&v.certificate)) {
        os << ": " << fmt(d->target) << " =";
        for (std::size_t i = 0; i < d->summands.size(); ++i) os << (i ? " +" : "") << " " << fmt(d->summands[i]);
    }
    if (auto* p = std::get_if<PicardRankTwo>(&v.certificate)) os << ": " << fmt(p->target) << " in " << p->s << " * ample body";
    os << "]\n";
    if (v.witness) {
        os << "  witness (" << v.witness->stratum << "):";
        for (const auto& x : v.witness->points) os << " " << fmt(x);
        os << "\n  rank " << v.witness->check.rank << " < expected " << v.witness->check.expected << "\n";
    }
    for (const auto& n : v.notes) os << "  note: " << n << "\n";
}

void print_identifiability(std::ostream& os, const IdentifiabilityReport& r) {
    auto line = [&](const char* name, const ImplicationFlag& f) {
        os << "  " << name << ": " << (f.set ? "yes" : "no");
        for (const auto& h : f.hypotheses) os << " (" << h << ")";
        os << "\n";
    };
    os << "identifiability (h = " << r.h << "):\n";
    line("finite fibers", r.finite_fibers);
    line("h-identifiable outside lower secant", r.h_identifiability_outside_lower_secant);
    line("smooth outside lower secant", r.smooth_outside_lower_secant);
    line("Bronowski criterion applies", r.bronowski_applies);
}

// Subcommands.

struct QueryFlags {
    std::string polytope, fan, subset;
    std::vector<long> cls;
    long h = 2;
    std::uint64_t seed = 0;
    std::size_t budget = 200;
    bool timings = false;
};

int cmd_analyze(const QueryFlags& f, Output& out) {
    auto t0 = std::chrono::steady_clock::now();
    auto in = load_polytope_input(f.polytope, f.fan, f.cls);
    const auto& p = in.polytope;
    auto el = edge_lengths(p);
    Json j;
    j["input"] = f.polytope.empty() ? f.fan : f.polytope;
    j["dim"] = p.dim;
    j["vertices"] = io::to_json(p.vertices);
    j["lattice_points"] = lattice_points(p).size();
    Json lengths = Json::array();
    for (const auto& e : el.edges) lengths.push_back(io::to_json(e.length));
    j["edge_lengths"] = lengths;
    j["length"] = io::to_json(el.min_length);
    Fan fan = in.fan ? *in.fan : normal_fan(p);
    bool smooth = detail::fan_is_smooth(fan);
    j["smooth"] = smooth;

    auto& os = out.text;
    os << "input: " << j["input"].get<std::string>() << "\n";
    os << "dimension: " << p.dim << ", lattice points: " << j["lattice_points"].get<std::size_t>() << "\n";
    os << "edge lengths:";
    for (const auto& e : el.edges) os << " " << e.length;
    os << " (l(P) = " << el.min_length << ")\n";
    os << "smooth: " << (smooth ? "yes" : "no") << "\n";

    if (smooth) {
        auto pd = class_group_grading(fan);
        auto body = ample_body(fan, pd);
        auto l = polytope_divisor_class(p, fan, pd);
        j["picard_rank"] = pd.picard_rank;
        j["divisor_class"] = io::to_json(l);
        j["a_x_vertices"] = io::to_json(body.compact.polytope.vertices);
        j["a_x_integral"] = body.compact.integral;
        os << "picard rank: " << pd.picard_rank << ", divisor class L = " << fmt(l) << "\n";
        os << "A_X vertices:";
        for (const auto& v : body.compact.polytope.vertices) os << " " << fmt(v);
        os << (body.compact.integral ? " (lattice polytope)" : " (not a lattice polytope)") << "\n";
    }

    TerraciniQuery q;
    q.polytope = p;
    q.fan = in.fan;
    q.homogeneous = in.homogeneous;
    q.h = f.h;
    q.oracle.seed = f.seed;
    q.oracle.budget = f.budget;
    if (!f.subset.empty()) q.subset = io::monomials_from_json(io::read_json_file(f.subset));

    std::map<long, TerraciniVerdict> verdicts;
    Json vj = Json::array();
    try {
        verdicts[f.h] = decide_emptiness(q);
    } catch (const NotSmooth& e) {
        j["status"] = "NotSmooth";
        j["error"] = e.what();
        os << "status: NotSmooth (" << e.what() << ")\n";
        out.emit(j);
        return kOutOfScope;
    }
    // Certified verdicts at 2h-1 and 2h feed the identifiability implications.
    if (smooth && q.linearly_normal())
        for (long k : {2 * f.h - 1, 2 * f.h}) {
            TerraciniQuery qk = q;
            qk.h = k;
            qk.run_oracle = false;
            verdicts[k] = decide_emptiness(qk);
        }
    for (const auto& [k, v] : verdicts) {
        vj.push_back(io::to_json(v));
        print_verdict(os, v);
    }
    j["verdicts"] = vj;
    auto rep = identifiability_report(f.h, verdicts);
    j["identifiability"] = io::to_json(rep);
    print_identifiability(os, rep);
    if (f.timings) {
        double ms = ms_since(t0);
        j["time_ms"] = ms;
        os << "time: " << ms << " ms\n";
    }
    out.emit(j);
    return kOk;
}

int cmd_oracle(const QueryFlags& f, bool all, Output& out) {
    auto in = load_polytope_input(f.polytope, f.fan, f.cls);
    auto mons = monomial_parametrization(in.polytope,
                                         f.subset.empty() ? std::nullopt
                                                          : std::optional(io::monomials_from_json(io::read_json_file(f.subset))));
    Embedding e(in.polytope, mons);
    OracleOptions opt{f.seed, f.budget, !all, all};
    auto r = oracle_search(e, f.h, opt);
    Json j;
    j["h"] = f.h;
    j["seed"] = f.seed;
    j["budget"] = f.budget;
    j["monomials"] = mons.size();
    j["samples_used"] = r.samples_used;
    j["heuristic"] = r.heuristic;
    j["witness"] = r.witness ? io::to_json(*r.witness) : Json(nullptr);
    if (r.witness) {
        auto m = e.matrix_at(r.witness->points);
        j["matrix"] = io::to_json(m.matrix);
    }
    if (all) {
        Json s = Json::array();
        for (const auto& x : r.samples) s.push_back(io::to_json(x));
        j["samples"] = s;
    }
    auto& os = out.text;
    os << "monomials: " << mons.size() << ", samples used: " << r.samples_used << " of " << f.budget
       << (r.heuristic ? " (heuristic search for h > 2)" : "") << "\n";
    if (r.witness) {
        os << "witness (" << r.witness->stratum << "):";
        for (const auto& x : r.witness->points) os << " " << fmt(x);
        os << "\nTerracini matrix:\n";
        auto m = e.matrix_at(r.witness->points).matrix;
        for (std::size_t i = 0; i < m.rows(); ++i) os << "  " << fmt(m.row(i)) << "\n";
        os << "rank " << r.witness->check.rank << " < expected " << r.witness->check.expected << "\n";
    } else {
        os << "no rank deficit found\n";
    }
    if (all) {
        std::size_t deficient = 0;
        for (const auto& s : r.samples) deficient += s.check.deficit;
        os << "deficient samples: " << deficient << " of " << r.samples.size() << "\n";
    }
    out.emit(j);
    return kOk;
}

int cmd_ample_body(const std::string& fan, const std::string& polytope, const std::string& grading,
                   const std::string& forms, Output& out) {
    auto b = load_body(fan, polytope, grading, forms);
    Json j = io::to_json(b.body);
    auto pts = lattice_points(b.body.compact.polytope);
    auto& os = out.text;
    if (!b.body.mori_generators.empty()) {
        os << "Mori generators (against divisors):\n";
        for (const auto& c : b.body.mori_generators) os << "  " << fmt(c.against_divisors) << "\n";
    }
    os << "ample body: {D : y.D >= 1} for y in\n";
    for (const auto& y : b.body.forms) os << "  " << fmt(y) << "\n";
    os << "A_X vertices:\n";
    for (const auto& v : b.body.compact.polytope.vertices) os << "  " << fmt(v) << (is_integral(v) ? "" : "  (non-integral)") << "\n";
    os << "A_X is " << (b.body.compact.integral ? "" : "not ") << "a lattice polytope\n";
    os << "lattice points of A_X: " << pts.size() << "\n";
    for (const auto& x : pts) os << "  " << fmt(x) << "\n";
    out.emit(j);
    return kOk;
}

int cmd_batch(const std::string& dir, unsigned jobs, Output& out) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw ParseError(dir + ": not a directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());

    struct Entry {
        std::optional<std::size_t> count;
        bool integral = true;
        std::string error;
        double ms = 0;
    };
    std::vector<Entry> results(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < files.size(); i = next++) {
            auto t0 = std::chrono::steady_clock::now();
            try {
                auto body = body_from_any(files[i].string());
                results[i].count = lattice_points(body.compact.polytope).size();
                results[i].integral = body.compact.integral;
            } catch (const std::exception& e) {
                results[i].error = e.what();
            }
            results[i].ms = ms_since(t0);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    Json entries = Json::array();
    std::set<std::size_t> counts;
    bool non_lattice = false;
    std::size_t failures = 0;
    auto& os = out.text;
    for (std::size_t i = 0; i < files.size(); ++i) {
        const auto& r = results[i];
        Json e;
        e["file"] = files[i].filename().string();
        if (r.count) {
            e["lattice_points"] = *r.count;
            e["a_x_integral"] = r.integral;
            counts.insert(*r.count);
            non_lattice = non_lattice || !r.integral;
            os << files[i].filename().string() << ": " << *r.count << (r.integral ? "" : " (non-lattice)") << "\n";
        } else {
            e["error"] = r.error;
            ++failures;
            os << files[i].filename().string() << ": error: " << r.error << "\n";
        }
        entries.push_back(e);
    }
    Json agg = Json::array();
    std::string set_text = "{";
    for (auto c : counts) {
        agg.push_back(c);
        set_text += (set_text.size() > 1 ? ", " : " ") + std::to_string(c);
    }
    if (non_lattice) {
        agg.push_back("non-lattice");
        set_text += (set_text.size() > 1 ? ", " : " ") + std::string("non-lattice");
    }
    set_text += set_text.size() > 1 ? " }" : "}";
    os << "aggregate: " << set_text << "\n";
    if (failures) os << "failures: " << failures << "\n";
    out.emit(Json{{"files", entries}, {"aggregate", agg}, {"failures", failures}});
    return kOk;
}

int cmd_grassmann(const std::string& u_path, const std::string& v_path, const std::string& pair_path, Output& out) {
    Subspace u, v;
    if (!pair_path.empty()) {
        auto j = io::read_json_file(pair_path);
        u = io::subspace_from_json(io::require(j, "u"), "u");
        v = io::subspace_from_json(io::require(j, "v"), "v");
    } else {
        if (u_path.empty() || v_path.empty()) throw InvalidArgument("give --pair or both --u and --v");
        u = io::subspace_from_json(io::read_json_file(u_path));
        v = io::subspace_from_json(io::read_json_file(v_path));
    }
    long s = intersection_dim(u, v);
    bool t2 = in_T2(u, v);
    bool disjoint = verify_via_plucker(u, v);
    if (t2 == disjoint) throw Error("internal: Pluecker verification disagrees with the intersection criterion");
    out.text << "G(" << u.r << ", " << u.n << "): dim(U cap V) = " << s << "\n"
             << "in T_2: " << (t2 ? "yes" : "no") << " (criterion s >= r - 2)\n"
             << "tangent index sets disjoint: " << (disjoint ? "yes" : "no") << "\n";
    out.emit(Json{{"r", u.r}, {"n", u.n}, {"intersection_dim", s}, {"in_T2", t2}, {"tangent_index_sets_disjoint", disjoint}});
    return kOk;
}

int emit_family(const std::function<TerraciniVerdict(long)>& verdict, long h, Output& out) {
    std::map<long, TerraciniVerdict> verdicts;
    Json vj = Json::array();
    for (long k : {h, 2 * h - 1, 2 * h}) {
        verdicts[k] = verdict(k);
    }
    for (const auto& [k, v] : verdicts) {
        vj.push_back(io::to_json(v));
        print_verdict(out.text, v);
    }
    auto rep = identifiability_report(h, verdicts);
    print_identifiability(out.text, rep);
    out.emit(Json{{"verdicts", vj}, {"identifiability", io::to_json(rep)}});
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Terracini loci and ample bodies of smooth projective toric varieties"};
    app.require_subcommand(1);
    // -h is not free: --h is the number of points.
    app.set_help_flag("--help", "print this help");
    Output out;
    auto add_output = [&](CLI::App* c) {
        c->add_flag("--json", out.json, "print a JSON report");
        c->add_option("--out", out.out_path, "write the report to a file");
    };
    QueryFlags qf;
    auto add_query = [&](CLI::App* c) {
        c->add_option("--polytope", qf.polytope, "polytope JSON file");
        c->add_option("--fan", qf.fan, "fan JSON file");
        c->add_option("--class", qf.cls, "divisor class for --fan input")->delimiter(',');
        c->add_option("--subset", qf.subset, "monomial subset JSON file");
        c->add_option("--h", qf.h, "number of points h >= 2")->check(CLI::Range(2L, 1000L));
        c->add_option("--seed", qf.seed, "oracle seed");
        c->add_option("--budget", qf.budget, "oracle budget (rank checks)");
        add_output(c);
    };

    auto* analyze = app.add_subcommand("analyze", "toric invariants and Terracini verdict");
    add_query(analyze);
    analyze->add_flag("--timings", qf.timings, "include wall-clock timings");

    bool all_samples = false;
    auto* oracle = app.add_subcommand("oracle", "seeded Terracini rank-deficit search");
    add_query(oracle);
    oracle->add_flag("--all", all_samples, "keep sampling after the first witness and report every sample");

    std::string fan, polytope, grading, forms;
    auto* ample = app.add_subcommand("ample-body", "ample body, its compact part and lattice points");
    ample->add_option("--fan", fan, "fan JSON file");
    ample->add_option("--polytope", polytope, "polytope JSON file");
    ample->add_option("--grading", grading, "grading matrix JSON file");
    ample->add_option("--forms", forms, "intersection forms JSON file");
    add_output(ample);

    std::string dir;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* batch = app.add_subcommand("batch", "lattice points of A_X for every fan file in a directory");
    batch->add_option("--dir", dir, "directory of fan, grading or forms JSON files")->required();
    batch->add_option("--jobs", jobs, "worker threads");
    add_output(batch);

    std::string u_path, v_path, pair_path;
    auto* grass = app.add_subcommand("grassmann", "2-Terracini membership of a pair of r-planes");
    grass->add_option("--u", u_path, "subspace JSON file");
    grass->add_option("--v", v_path, "subspace JSON file");
    grass->add_option("--pair", pair_path, "JSON file with fields u and v");
    add_output(grass);

    std::vector<long> sv_n, sv_d;
    long fam_h = 2;
    auto* sv = app.add_subcommand("segre-veronese", "verdicts for P^n1 x ... x P^nr embedded by O(d1, ..., dr)");
    sv->add_option("--n", sv_n, "dimensions, comma separated")->delimiter(',')->required();
    sv->add_option("--d", sv_d, "degrees, comma separated")->delimiter(',')->required();
    sv->add_option("--h", fam_h, "number of points")->check(CLI::Range(2L, 1000L));
    add_output(sv);

    std::vector<long> sc_a;
    long sc_d = 1;
    auto* scroll = app.add_subcommand("scroll", "verdicts for the rational normal scroll S(a1, ..., an) in degree d");
    scroll->add_option("--a", sc_a, "nondecreasing positive integers, comma separated")->delimiter(',')->required();
    scroll->add_option("--d", sc_d, "degree multiple")->required();
    scroll->add_option("--h", fam_h, "number of points")->check(CLI::Range(2L, 1000L));
    add_output(scroll);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*analyze) return cmd_analyze(qf, out);
        if (*oracle) return cmd_oracle(qf, all_samples, out);
        if (*ample) return cmd_ample_body(fan, polytope, grading, forms, out);
        if (*batch) return cmd_batch(dir, jobs, out);
        if (*grass) return cmd_grassmann(u_path, v_path, pair_path, out);
        if (*sv) return emit_family([&](long k) { return segre_veronese_verdict(sv_n, sv_d, k); }, fam_h, out);
        if (*scroll) return emit_family([&](long k) { return scroll_verdict(sc_a, sc_d, k); }, fam_h, out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NotSmooth& e) {
        std::cerr << "not smooth: " << e.what() << "\n";
        return kOutOfScope;
    } catch (const NotSimplicial& e) {
        std::cerr << "not simplicial: " << e.what() << "\n";
        return kOutOfScope;
    } catch (const NotComplete& e) {
        std::cerr << "not complete: " << e.what() << "\n";
        return kOutOfScope;
    } catch (const NotFullDimensional& e) {
        std::cerr << "not full-dimensional: " << e.what() << "\n";
        return kOutOfScope;
    } catch (const TorsionDetected& e) {
        std::cerr << "torsion: " << e.what() << "\n";
        return kOutOfScope;
    } catch (const NonLatticeVertex& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kOk;
}
