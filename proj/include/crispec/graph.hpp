#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <tuple>
#include <vector>

#include "crispec/chain.hpp"
#include "crispec/metric.hpp"

namespace crispec {

class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    std::size_t size() const { return n_; }
    std::size_t count() const
    {
        std::size_t c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }
    template <class F>
    void for_each(F f) const
    {
        for (std::size_t k = 0; k < w_.size(); ++k)
            for (std::uint64_t x = w_[k]; x; x &= x - 1) f(k * 64 + std::countr_zero(x));
    }
    // indices set in both
    template <class F>
    friend void for_each_common(const Bitset& a, const Bitset& b, F f)
    {
        for (std::size_t k = 0; k < a.w_.size(); ++k)
            for (std::uint64_t x = a.w_[k] & b.w_[k]; x; x &= x - 1) f(k * 64 + std::countr_zero(x));
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Vertices, weighted edges, and the flag 2-complex given by 3-cliques.
struct EpsilonGraph {
    double scale = 0;
    std::size_t n = 0;
    std::vector<double> w;  // row-major weights, the base distance for every pair
    std::vector<Bitset> adj;
    std::vector<std::pair<Index, Index>> edges;  // i < j, sorted by (weight, i, j)
    std::vector<std::size_t> component;         // label = smallest vertex of the component
    std::size_t component_count = 0;

    double weight(Index i, Index j) const { return w[i * n + j]; }
    bool has_edge(Index i, Index j) const { return adj[i].test(j); }
    std::size_t triangle_count() const;
    std::vector<std::array<Index, 3>> triangles() const;  // i < j < k
};

// Edges are the pairs strictly closer than eps.
EpsilonGraph build_graph(const FiniteMetricSpace& X, double eps);

// Graph with explicitly listed edges (used for cover balls).
EpsilonGraph graph_from_edges(std::size_t n, const std::vector<std::tuple<Index, Index, double>>& edges,
                              double scale);

// Adds edge (i,j) with weight w; components are not maintained.
void add_edge(EpsilonGraph& g, Index i, Index j);

void recompute_components(EpsilonGraph& g);

}  // namespace crispec
