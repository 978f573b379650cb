#include "doctest.h"
#include "helpers.hpp"

#include <random>
#include <set>

#include "crispec/cover.hpp"
#include "crispec/graph.hpp"

using namespace crispec;

TEST_CASE("trivial covers")
{
    auto C = testutil::circle(12);
    auto ball = build_cover_ball(C, 0.4, 0);
    CHECK(ball.complete);
    CHECK(ball.vertices.size() == 12);
    CHECK(ball.edges.size() == build_graph(C, 0.4).edges.size());
    for (Index b = 0; b < 12; ++b) CHECK(ball.fiber(b).size() == 1);

    auto T = testutil::line({0, 1, 2, 3, 4});
    auto tb = build_cover_ball(T, 1.5, 2);
    CHECK(tb.complete);
    CHECK(tb.vertices.size() == 5);
    CHECK(tb.edges.size() == 4);
    auto p = simply_connected_probe(tb, 20);
    CHECK(p.passed);
}

TEST_CASE("circle cover is a line")
{
    auto C = testutil::circle(12);
    auto ball = build_cover_ball(C, 0.2, 0, 120);
    CHECK_FALSE(ball.complete);
    CHECK(ball.vertices.size() <= 120);
    CHECK(ball.fiber(0).size() >= 3);

    // lifts
    CHECK(lift_chain(ball, {0}) == std::vector<std::size_t>{0});
    auto back = lift_chain(ball, {0, 1, 2, 1, 0});
    CHECK(back.back() == 0);
    auto loop = testutil::range_loop(12);
    auto open = lift_chain(ball, loop);
    CHECK(open.back() != 0);
    CHECK(ball.vertices[open.back()].base == 0);

    // deck translations
    for (std::size_t v = 0; v < ball.vertices.size(); ++v) CHECK(deck_translate(ball, Word{}, v) == v);
    auto fib = ball.fiber(0);
    std::set<std::size_t> images;
    for (auto v : fib) {
        std::size_t t;
        try {
            t = deck_translate(ball, loop, v);
        } catch (const LeftBall&) {
            continue;
        }
        CHECK(t != v);
        CHECK(ball.vertices[t].base == 0);
        images.insert(t);
        std::vector<Index> rev(loop.rbegin(), loop.rend());
        CHECK(deck_translate(ball, rev, t) == v);
    }
    CHECK(images.size() >= 2);

    auto p = simply_connected_probe(ball, 50);
    CHECK(p.passed);
    CHECK(p.tested > 0);
}

TEST_CASE("probe catches a corrupted ball")
{
    auto T = testutil::line({0, 1, 2, 3, 4});
    auto ball = build_cover_ball(T, 1.5, 0);
    REQUIRE(ball.complete);
    ball.edges.push_back({0, 4, 1.0});  // closes a hole-bounding cycle
    auto p = simply_connected_probe(ball, 20);
    CHECK_FALSE(p.passed);
    CHECK_FALSE(p.witness.empty());
}

TEST_CASE("cover ball structure")
{
    std::mt19937_64 rng(3);
    auto C = testutil::circle(16);
    for (double eps : {0.1, 0.2, 0.4}) {
        auto ball = build_cover_ball(C, eps, 0, 400);
        // local isometry
        for (auto [a, b, w] : ball.edges) {
            CHECK(w == C.d(ball.vertices[a].base, ball.vertices[b].base));
            CHECK(w < eps);
        }
        // projections of lifts
        for (int t = 0; t < 20; ++t) {
            std::vector<Index> c{0};
            for (int i = 0; i < 10; ++i) c.push_back((c.back() + 15 + rng() % 3) % 16);
            auto lift = lift_chain(ball, c);
            REQUIRE(lift.size() == c.size());
            for (std::size_t i = 0; i < c.size(); ++i) CHECK(ball.vertices[lift[i]].base == c[i]);
        }
        if (ball.complete) {
            auto f = ball.fiber(0).size();
            for (Index b = 0; b < 16; ++b) CHECK(ball.fiber(b).size() == f);
        }
    }
    // trivial group: the complete ball is the base graph
    auto ball = build_cover_ball(C, 0.4, 3);
    REQUIRE(ball.complete);
    auto G = build_graph(C, 0.4);
    CHECK(ball.vertices.size() == C.size());
    std::set<std::pair<Index, Index>> be, ge(G.edges.begin(), G.edges.end());
    for (auto [a, b, w] : ball.edges) be.insert(std::minmax(ball.vertices[a].base, ball.vertices[b].base));
    CHECK(be == ge);
}
