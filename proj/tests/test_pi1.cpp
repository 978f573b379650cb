#include "doctest.h"
#include "helpers.hpp"

#include "crispec/free_group.hpp"
#include "crispec/graph.hpp"
#include "crispec/pi1.hpp"
#include "crispec/smith.hpp"

using namespace crispec;

TEST_CASE("build_graph uses strict inequality")
{
    auto X = validate_metric({{0, 1}, {1, 0}});
    auto G = build_graph(X, 1);
    CHECK(G.edges.empty());
    CHECK(G.component_count == 2);
    G = build_graph(X, 1.5);
    CHECK(G.edges.size() == 1);
    CHECK(G.component_count == 1);

    auto C = testutil::circle(12);
    G = build_graph(C, 0.2);
    CHECK(G.edges.size() == 24);  // steps 1 and 2 around the cycle
    CHECK(G.triangle_count() == 12);
    for (auto [i, j] : G.edges) CHECK(C.d(i, j) < 0.2);
    CHECK(G.component_count == 1);
}

TEST_CASE("free group words")
{
    Word a{1, 2, -2, -1, 3};
    CHECK(reduce(a) == Word{3});
    CHECK(inverse(Word{1, 2}) == Word{-2, -1});
    Word b{1, 2};
    append_reduced(b, Word{-2, 3});
    CHECK(b == Word{1, 3});
    std::size_t s = 0;
    CHECK(cyclic_reduce(Word{2, 1, 3, -2}, &s) == Word{1, 3});
    CHECK(s == 1);

    SubgroupGraph H({Word{1, 1}, Word{2}});
    CHECK(H.contains(Word{1, 1, 2, -1, -1}));
    CHECK_FALSE(H.contains(Word{1}));
    CHECK(H.rank() == 2);
    // a, b, ab span a rank 2 subgroup
    CHECK(SubgroupGraph({Word{1}, Word{2}, Word{1, 2}}).rank() == 2);
}

TEST_CASE("presentations")
{
    // three points pairwise close: one triangle
    auto T = testutil::line({0, 1, 2});
    auto P = present_pi_eps(build_graph(T, 2.5), 0);
    CHECK(P.raw_generators == 1);
    CHECK(P.raw_relators == 1);
    CHECK(P.generators.empty());
    CHECK(P.relators.empty());
    CHECK(h1_invariants(P).free_rank == 0);

    // path graph
    P = present_pi_eps(build_graph(T, 1.5), 0);
    CHECK(P.raw_generators == 0);
    CHECK(P.generators.empty());

    auto C = testutil::circle(12);
    P = present_pi_eps(build_graph(C, 0.2), 0);
    CHECK(P.is_free());
    CHECK(P.generators.size() == 1);
    auto h = h1_invariants(P);
    CHECK(h.free_rank == 1);
    CHECK(h.torsion.empty());

    // above a third of the circumference the group dies
    P = present_pi_eps(build_graph(C, 0.4), 0);
    CHECK(P.generators.empty());

    GeneratorSpec e;
    e.kind = "hawaiian-earring";
    e.circumferences = {1.0, 0.5};
    e.mesh = 0.05;
    auto H = generate(e);
    auto eps = 0.06;
    P = present_pi_eps(build_graph(H, eps), H.index_of(default_basepoint(e)));
    CHECK(h1_invariants(P).free_rank == 2);
}

TEST_CASE("abelian invariants")
{
    auto h = abelian_invariants({0}, {Word{1, 1}});
    CHECK(h.free_rank == 0);
    CHECK(h.torsion == std::vector<std::string>{"2"});
    h = abelian_invariants({0, 1}, {Word{1, 1, 2, 2, 2, 2, 2, 2}, Word{1, 1, 1, 1}});
    // <a,b | 2a+6b, 4a> = Z2 x Z12
    CHECK(h.free_rank == 0);
    CHECK(h.torsion == std::vector<std::string>{"2", "12"});
    CHECK(abelian_image_trivial({0, 1}, {Word{1, 2, -1, -2}}, Word{1, 2, -1, -2}));
    CHECK_FALSE(abelian_image_trivial({0}, {Word{1, 1}}, Word{1}));
    CHECK(abelian_image_trivial({0}, {Word{1, 1}}, Word{1, 1, 1, 1}));
}

TEST_CASE("incremental engine matches a fresh build")
{
    auto C = testutil::circle(30);
    auto cands = candidate_scales(C);
    Pi1Engine E(build_graph(C, cands[0]));
    for (std::size_t k = 0; k + 1 < cands.size(); ++k) {
        std::vector<std::pair<Index, Index>> batch;
        for (Index i = 0; i < C.size(); ++i)
            for (Index j = i + 1; j < C.size(); ++j)
                if (C.d(i, j) == cands[k]) batch.push_back({i, j});
        E.add_edges(batch, cands[k + 1]);
        auto fresh = present_pi_eps(build_graph(C, cands[k + 1]), 0);
        auto inc = present_pi_eps(E, 0);
        CHECK(h1_invariants(inc).free_rank == h1_invariants(fresh).free_rank);
        CHECK(inc.raw_generators == fresh.raw_generators);
        CHECK(inc.raw_relators == fresh.raw_relators);
    }
}
