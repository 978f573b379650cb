#include "crispec/cover.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <string>

#include "crispec/graph.hpp"
#include "crispec/nullity.hpp"

namespace crispec {

LeftBall::LeftBall(std::size_t i)
    : std::runtime_error("lift leaves the explored ball at chain position " + std::to_string(i)), index(i)
{
}

std::optional<std::size_t> CoverBall::find(Index base, const Word& w) const
{
    auto it = index_.find({base, w});
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> CoverBall::fiber(Index base) const
{
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (vertices[v].base == base) out.push_back(v);
    return out;
}

CoverBall build_cover_ball(const FiniteMetricSpace& X, double eps, Index basepoint, std::size_t max_vertices)
{
    if (basepoint >= X.size()) throw std::invalid_argument("basepoint out of range");
    if (max_vertices == 0) max_vertices = 10 * X.size();
    CoverBall B;
    B.scale = eps;
    B.basepoint = basepoint;
    auto E = std::make_shared<Pi1Engine>(build_graph(X, eps));
    B.engine = E;
    B.approximate = !E->is_free();
    const auto& G = E->graph();

    auto add = [&](Index base, Word w, std::size_t d) {
        B.index_[{base, w}] = B.vertices.size();
        B.vertices.push_back({base, std::move(w)});
        B.depth.push_back(d);
        B.radius = std::max(B.radius, d);
    };
    add(basepoint, {}, 0);
    bool full = false;
    for (std::size_t head = 0; head < B.vertices.size(); ++head) {
        const Index v = B.vertices[head].base;
        G.adj[v].for_each([&](std::size_t w) {
            Word nw = B.vertices[head].word;
            append_reduced(nw, E->edge_word(v, w));
            if (B.find(w, nw)) return;
            if (B.vertices.size() >= max_vertices) {
                full = true;
                return;
            }
            add(w, std::move(nw), B.depth[head] + 1);
        });
    }
    B.complete = !full;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t a = 0; a < B.vertices.size(); ++a) {
        const Index v = B.vertices[a].base;
        G.adj[v].for_each([&](std::size_t w) {
            Word nw = B.vertices[a].word;
            append_reduced(nw, E->edge_word(v, w));
            auto b = B.find(w, nw);
            if (!b || !seen.insert({std::min(a, *b), std::max(a, *b)}).second) return;
            B.edges.emplace_back(std::min(a, *b), std::max(a, *b), X.d(v, w));
        });
    }
    std::sort(B.edges.begin(), B.edges.end());
    return B;
}

std::vector<std::size_t> lift_chain(const CoverBall& ball, const std::vector<Index>& chain)
{
    std::vector<std::size_t> out;
    if (chain.empty()) return out;
    if (chain.front() != ball.basepoint) throw std::invalid_argument("chain does not start at the basepoint");
    Word w;
    out.push_back(0);
    for (std::size_t i = 1; i < chain.size(); ++i) {
        if (chain[i] != chain[i - 1]) {
            if (!ball.engine->has_edge(std::min(chain[i], chain[i - 1]), std::max(chain[i], chain[i - 1])))
                throw std::invalid_argument("hop not below the scale");
            append_reduced(w, ball.engine->edge_word(chain[i - 1], chain[i]));
        }
        auto v = ball.find(chain[i], w);
        if (!v) throw LeftBall(i);
        out.push_back(*v);
    }
    return out;
}

std::size_t deck_translate(const CoverBall& ball, const Word& g, std::size_t v)
{
    Word w = reduce(g);
    append_reduced(w, ball.vertices.at(v).word);
    auto r = ball.find(ball.vertices[v].base, w);
    if (!r) throw LeftBall(0);
    return *r;
}

std::size_t deck_translate(const CoverBall& ball, const std::vector<Index>& loop, std::size_t v)
{
    if (loop.empty() || loop.front() != ball.basepoint || loop.back() != ball.basepoint)
        throw std::invalid_argument("deck element must be a loop at the basepoint");
    return deck_translate(ball, ball.engine->chain_word(loop), v);
}

ProbeResult simply_connected_probe(const CoverBall& ball, std::size_t sample_count, std::uint64_t seed)
{
    ProbeResult res;
    const std::size_t nv = ball.vertices.size();
    Pi1Engine E(graph_from_edges(nv, ball.edges, ball.scale));
    const auto& G = E.graph();

    // loops stay away from the frontier unless the ball is the whole cover
    std::size_t inner = ball.complete ? ball.radius : ball.radius / 2;
    std::vector<std::size_t> interior;
    for (std::size_t v = 0; v < nv; ++v)
        if (ball.depth[v] <= inner && E.connected(v, 0)) interior.push_back(v);

    auto check = [&](const std::vector<Index>& loop) {
        ++res.tested;
        auto verdict = decide_null(E, loop);
        if (verdict.status == NullityVerdict::NonNull) {
            if (res.passed) res.witness = loop;
            res.passed = false;
        } else if (verdict.status == NullityVerdict::Unknown) {
            ++res.unknown;
        }
    };
    if (ball.complete)
        for (int g : E.alive_generators())
            if (E.connected(E.generators()[g].u, 0)) check(E.generator_loop(g, 0));

    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < sample_count && !interior.empty(); ++s) {
        const Index start = interior[rng() % interior.size()];
        std::vector<Index> walk{start};
        const std::size_t len = 2 + rng() % std::max<std::size_t>(4, nv / 2);
        for (std::size_t k = 0; k < len; ++k) {
            std::vector<Index> nb;
            G.adj[walk.back()].for_each([&](std::size_t w) {
                if (std::binary_search(interior.begin(), interior.end(), w)) nb.push_back(w);
            });
            if (nb.empty()) break;
            walk.push_back(nb[rng() % nb.size()]);
        }
        auto home = E.tree_path(walk.back(), start);
        walk.insert(walk.end(), home.begin() + 1, home.end());
        check(walk);
    }
    return res;
}

}  // namespace crispec
