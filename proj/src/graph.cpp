#include "crispec/graph.hpp"

#include <algorithm>
#include <numeric>

namespace crispec {

namespace {
std::size_t find_root(std::vector<std::size_t>& p, std::size_t x)
{
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}
}  // namespace

std::size_t EpsilonGraph::triangle_count() const
{
    std::size_t c = 0;
    for (auto [i, j] : edges)
        for_each_common(adj[i], adj[j], [&](std::size_t k) { c += k > j; });
    return c;
}

std::vector<std::array<Index, 3>> EpsilonGraph::triangles() const
{
    std::vector<std::array<Index, 3>> out;
    for (auto [i, j] : edges)
        for_each_common(adj[i], adj[j], [&](std::size_t k) {
            if (k > j) out.push_back({i, j, k});
        });
    std::sort(out.begin(), out.end());
    return out;
}

void recompute_components(EpsilonGraph& g)
{
    std::vector<std::size_t> p(g.n);
    std::iota(p.begin(), p.end(), 0);
    for (auto [i, j] : g.edges) {
        auto a = find_root(p, i), b = find_root(p, j);
        if (a != b) p[std::max(a, b)] = std::min(a, b);
    }
    g.component.assign(g.n, 0);
    g.component_count = 0;
    for (std::size_t i = 0; i < g.n; ++i) {
        g.component[i] = find_root(p, i);
        g.component_count += g.component[i] == i;
    }
}

static void sort_edges(EpsilonGraph& g)
{
    std::sort(g.edges.begin(), g.edges.end(), [&](auto a, auto b) {
        return std::make_tuple(g.weight(a.first, a.second), a.first, a.second) <
               std::make_tuple(g.weight(b.first, b.second), b.first, b.second);
    });
}

EpsilonGraph build_graph(const FiniteMetricSpace& X, double eps)
{
    EpsilonGraph g;
    g.scale = eps;
    g.n = X.size();
    g.w = X.matrix();
    g.adj.assign(g.n, Bitset(g.n));
    for (std::size_t i = 0; i < g.n; ++i)
        for (std::size_t j = i + 1; j < g.n; ++j)
            if (X.d(i, j) < eps) {
                g.adj[i].set(j);
                g.adj[j].set(i);
                g.edges.emplace_back(i, j);
            }
    sort_edges(g);
    recompute_components(g);
    return g;
}

EpsilonGraph graph_from_edges(std::size_t n, const std::vector<std::tuple<Index, Index, double>>& edges,
                              double scale)
{
    EpsilonGraph g;
    g.scale = scale;
    g.n = n;
    g.w.assign(n * n, 0.0);
    g.adj.assign(n, Bitset(n));
    for (auto [i, j, w] : edges) {
        if (i == j || g.adj[i].test(j)) continue;
        g.w[i * n + j] = g.w[j * n + i] = w;
        g.adj[i].set(j);
        g.adj[j].set(i);
        g.edges.emplace_back(std::min(i, j), std::max(i, j));
    }
    sort_edges(g);
    recompute_components(g);
    return g;
}

void add_edge(EpsilonGraph& g, Index i, Index j)
{
    g.adj[i].set(j);
    g.adj[j].set(i);
    g.edges.emplace_back(std::min(i, j), std::max(i, j));
}

}  // namespace crispec
