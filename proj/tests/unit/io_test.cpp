#include <gtest/gtest.h>

#include <filesystem>

#include "terracini/io.hpp"

using namespace terracini;
using namespace terracini::io;

namespace {

std::string data(const std::string& rel) { return std::string(TERRACINI_DATA_DIR) + "/" + rel; }

std::string parse_error_message(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Scalars, RationalStrings) {
    EXPECT_EQ(to_json(make_rational(7, 2)), Json("7/2"));
    EXPECT_EQ(rational_from_json(Json("-3/6"), "x"), make_rational(-1, 2));
    EXPECT_EQ(rational_from_json(Json(4), "x"), 4);
    Integer big("123456789012345678901234567890");
    EXPECT_EQ(integer_from_json(to_json(big), "x"), big);
    EXPECT_THROW(integer_from_json(Json("1/2"), "x"), ParseError);
    EXPECT_THROW(rational_from_json(Json(true), "x"), ParseError);
}

TEST(Parse, ErrorsCarryContext) {
    auto msg = parse_error_message([] { parse_json("{\n\"rays\": [[1, 0],\n [0, x]]}", "fan.json"); });
    EXPECT_NE(msg.find("fan.json:3"), std::string::npos) << msg;
    msg = parse_error_message([] { fan_from_json(Json::parse(R"({"rays": [[1, 0], [0, "a"]], "max_cones": []})")); });
    EXPECT_NE(msg.find("rays[1][1]"), std::string::npos) << msg;
    msg = parse_error_message([] { fan_from_json(Json::parse(R"({"rays": [[1, 0]]})")); });
    EXPECT_NE(msg.find("max_cones"), std::string::npos) << msg;
    msg = parse_error_message([] { polytope_from_json(Json::parse(R"({"vertices": [[0, 0], [1]]})")); });
    EXPECT_NE(msg.find("vertices[1]"), std::string::npos) << msg;
    EXPECT_THROW(read_json_file(data("does_not_exist.json")), ParseError);
}

TEST(Polyhedra, RoundTrip) {
    auto p = hrep_to_vrep(HalfspaceSystem{2, {{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -2}, -3}}});
    auto q = polyhedron_from_json(to_json(p));
    EXPECT_TRUE(same_set(p, q));
    Json ineq = {{"inequalities", Json::array({Json{{"normal", {"1", "0"}}, {"offset", "1/2"}},
                                              Json{{"normal", {"0", "1"}}, {"offset", "0"}}})}};
    auto r = polyhedron_from_json(ineq);
    EXPECT_EQ(r.vertices, (std::vector<RatVector>{{make_rational(1, 2), 0}}));
    EXPECT_EQ(r.rays.size(), 2u);
    EXPECT_EQ(to_json(r), to_json(polyhedron_from_json(to_json(r))));
}

TEST(BundledData, PolytopesAndFansLoad) {
    EXPECT_EQ(polytope_from_json(read_json_file(data("polytopes/veronese_3.json"))).vertices.size(), 3u);
    EXPECT_EQ(monomials_from_json(read_json_file(data("polytopes/veronese_3_without_u1u2.json"))).size(), 9u);
    auto nine = fan_from_json(read_json_file(data("fans/nine_rays.json")));
    EXPECT_EQ(nine.fan.rays.size(), 9u);
    EXPECT_TRUE(is_smooth(nine.fan));
    std::size_t count = 0;
    for (const auto& d : {"fano_surfaces", "fano3"})
        for (const auto& entry : std::filesystem::directory_iterator(data(d))) {
            auto f = fan_from_json(read_json_file(entry.path().string()));
            EXPECT_TRUE(is_smooth(f.fan)) << entry.path();
            ++count;
        }
    EXPECT_EQ(count, 7u);
    auto g = grading_from_json(read_json_file(data("fano5/id556_grading.json")));
    EXPECT_EQ(g.rows(), 5u);
    EXPECT_EQ(g.cols(), 10u);
}

TEST(BundledData, FanoFivefoldFormsMatchGrading) {
    auto forms = forms_from_json(read_json_file(data("fano5/id556_forms.json")));
    auto g = grading_from_json(read_json_file(data("fano5/id556_grading.json")));
    auto f = fan_from_grading(g);
    auto derived = ample_body(f, picard_from_grading(g));
    EXPECT_EQ(std::set<IntVector>(forms.forms.begin(), forms.forms.end()),
              std::set<IntVector>(derived.forms.begin(), derived.forms.end()));
    EXPECT_FALSE(forms.source.empty());
}

TEST(Fans, RoundTrip) {
    auto f = planar_fan({{1, 0}, {1, 1}, {0, 1}, {-1, -1}});
    auto g = fan_from_json(to_json(f));
    EXPECT_EQ(g.fan.rays, f.rays);
    EXPECT_EQ(g.fan.max_cones, f.max_cones);
    EXPECT_FALSE(g.homogeneous);
}

TEST(Subspaces, RoundTrip) {
    auto s = make_subspace(3, RationalMatrix{{1, make_rational(1, 2), 0, 0}, {0, 0, 1, 3}});
    auto t = subspace_from_json(to_json(s));
    EXPECT_EQ(t.basis, s.basis);
    EXPECT_EQ(t.r, 1u);
    EXPECT_THROW(subspace_from_json(Json::parse(R"({"r": 1, "n": 3, "basis": [["1","0","0","0"]]})")), ParseError);
}

TEST(Verdicts, RoundTripAndDeterminism) {
    std::vector<TerraciniVerdict> vs;
    TerraciniQuery q;
    q.polytope = dilated_simplex(2, 3);
    q.oracle.seed = 5;
    vs.push_back(decide_emptiness(q));
    q.subset = std::vector<IntVector>{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 0}, {1, 2}, {2, 0}, {2, 1}, {3, 0}};
    vs.push_back(decide_emptiness(q));
    vs.push_back(segre_veronese_verdict({2, 3}, {7, 8}, 4));
    vs.push_back(segre_veronese_verdict({1, 1}, {1, 2}, 2));
    vs.push_back(scroll_verdict({1, 2}, 5, 3));
    for (const auto& v : vs) {
        Json j = to_json(v);
        EXPECT_EQ(to_json(verdict_from_json(j)).dump(), j.dump());
    }
    EXPECT_EQ(to_json(decide_emptiness(q)).dump(), to_json(vs[1]).dump());
    Json first = to_json(vs[0]);
    std::vector<std::string> keys;
    for (auto it = first.begin(); it != first.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"status", "h", "certificate", "witness", "diagnostics", "notes", "seed"}));
}
