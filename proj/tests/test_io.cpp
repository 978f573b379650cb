#include "doctest.h"
#include "helpers.hpp"

#include <sstream>

#include "crispec/io.hpp"
#include "crispec/nullity.hpp"

using namespace crispec;

TEST_CASE("number formatting")
{
    CHECK(fmt12(1.0 / 3) == "0.333333333333");
    CHECK(round12(0.1 + 0.2) == 0.3);
    CHECK(fmt12(2) == "2");
}

TEST_CASE("matrix csv round trip")
{
    auto C = testutil::circle(9);
    std::stringstream ss;
    write_matrix_csv(ss, C);
    auto D = read_matrix_csv(ss);
    REQUIRE(D.size() == C.size());
    for (std::size_t i = 0; i < C.size(); ++i) {
        CHECK(D.label(i) == C.label(i));
        for (std::size_t j = 0; j < C.size(); ++j) CHECK(D.d(i, j) == C.d(i, j));
    }
    std::stringstream bad("a,b\n0,1\n2,0\n");
    CHECK_THROWS_AS(read_matrix_csv(bad), MetricError);
}

TEST_CASE("space json round trip")
{
    GeneratorSpec g;
    g.kind = "rapunzel-comb-v2";
    g.teeth = 4;
    SpaceSource s{generate(g), g};
    auto back = space_from_json(space_to_json(s));
    REQUIRE(back.generator);
    CHECK(back.generator->teeth == 4);
    CHECK(back.space.matrix() == s.space.matrix());

    auto X = testutil::line({0, 0.1, 0.7});
    auto Y = space_from_json(space_to_json(SpaceSource{X, std::nullopt}));
    CHECK_FALSE(Y.generator);
    CHECK(Y.space.matrix() == X.matrix());

    Json pts = {{"points", {{0, 0}, {3, 4}}}};
    CHECK(space_from_json(pts).space.d(0, 1) == 5);
    CHECK_THROWS(space_from_json(Json{{"matrix", {{0, 1}, {2, 0}}}}));
}

TEST_CASE("trace json round trip")
{
    auto C = testutil::circle(12);
    auto v = decide_null(C, 0.4, testutil::range_loop(12));
    REQUIRE(v.status == NullityVerdict::Null);
    auto j = trace_to_json(C, v.trace);
    CHECK(j["type"] == "homotopy-trace");
    auto t = trace_from_json(C, Json::parse(j.dump()));
    CHECK(t.start.points == v.trace.start.points);
    CHECK(t.start.scale == v.trace.start.scale);
    REQUIRE(t.moves.size() == v.trace.moves.size());
    CHECK(verify_homotopy(C, t).accepted);

    CHECK(chain_from_json(C, chain_to_json(C, {3, 4, 5})) == std::vector<Index>{3, 4, 5});
    CHECK(chain_from_json(C, Json{1, 2}) == std::vector<Index>{1, 2});
    CHECK_THROWS(chain_from_json(C, Json{"nowhere"}));
}

TEST_CASE("spectrum json and svg")
{
    auto C = testutil::circle(30);
    auto r = compute_spectrum(C, 0);
    auto j = to_json(C, r);
    CHECK(j.contains("space"));
    CHECK(j["candidates"].size() == r.candidates.size());
    REQUIRE(j["critical_values"].size() == 1);
    CHECK(j["critical_values"][0]["flags"][0] == "homotopy");
    CHECK(j["consistency"].is_object());
    auto svg = spectrum_svg(r);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find(fmt12(r.critical_values[0].value)) != std::string::npos);
}
