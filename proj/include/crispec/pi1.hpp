#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crispec/chain.hpp"
#include "crispec/free_group.hpp"
#include "crispec/graph.hpp"
#include "crispec/smith.hpp"

namespace crispec {

// Edge-path group of the flag 2-complex of a graph, kept in a simplified
// form and updated as edges are added.
//
// Every edge carries a word over the live generators: tree edges carry the
// empty word, a generator edge carries its own letter, and an edge defined
// through a triangle (u, v, apex) carries word(u,apex) word(apex,v). A
// triangle whose boundary word is nontrivial is a relator: if some generator
// occurs in it exactly once, that generator is eliminated (substituted
// everywhere); otherwise the relator is kept.
class Pi1Engine {
public:
    explicit Pi1Engine(EpsilonGraph g);

    struct Residual {
        Word word;
        std::array<Index, 3> triangle;
    };

    struct Generator {
        Index u = 0, v = 0;  // u < v, letter +(id+1) reads u -> v
        bool alive = true;
        std::size_t created_level = 0;
        // set on elimination: a chain from u to v over then-live generators
        // and the moves taking {u, v} to it
        std::vector<Index> replacement;
        std::vector<BasicMove> replacement_moves;
    };

    struct LevelChange {
        std::vector<int> created;     // generator ids born at this level
        std::vector<int> eliminated;  // generator ids killed at this level, in order
        std::size_t new_residuals = 0;
        std::vector<std::pair<Index, Index>> added;
    };

    // Edges must be new; they are added in the given order.
    LevelChange add_edges(const std::vector<std::pair<Index, Index>>& batch, double new_scale);

    const EpsilonGraph& graph() const { return g_; }
    double scale() const { return g_.scale; }
    std::size_t level() const { return level_; }
    bool is_free() const { return residual_.empty(); }
    const std::vector<Residual>& residuals() const { return residual_; }
    const std::vector<Generator>& generators() const { return gens_; }
    std::vector<int> alive_generators() const;
    bool connected(Index a, Index b) const { return find_root(a) == find_root(b); }

    bool has_edge(Index u, Index v) const { return eid_[u * g_.n + v] >= 0; }
    bool is_tree_edge(Index u, Index v) const;
    Word edge_word(Index u, Index v) const;
    Word chain_word(const std::vector<Index>& chain) const;

    // Tree geodesic (forest must connect a and b).
    std::vector<Index> tree_path(Index a, Index b) const;
    // tree_path(base,u) + generator edge + tree_path(v,base)
    std::vector<Index> generator_loop(int gen, Index base) const;

    struct Canonical {
        std::vector<Index> chain;
        std::vector<BasicMove> moves;  // from the input chain to `chain`
    };
    // Reduced tree-and-generator form with the same endpoints; its letters spell chain_word.
    Canonical canonicalize(const std::vector<Index>& chain) const;

    // Moves taking a loop with trivial word to {b, b}; empty optional if the word is not trivial.
    std::optional<std::vector<BasicMove>> null_moves(const std::vector<Index>& loop) const;

    // Counts for the unsimplified presentation of the component of `base`.
    std::size_t raw_generator_count(Index base) const;
    std::size_t raw_relator_count(Index base) const;

private:
    enum class Kind : std::uint8_t { Undefined, Tree, Defined, Gen };
    struct Edge {
        Index u, v;  // u < v
        Kind kind = Kind::Undefined;
        Index apex = 0;
        int gen = -1;
        Word word;  // reads u -> v
    };

    int edge_id(Index u, Index v) const { return eid_[u * g_.n + v]; }
    Word oriented(const Edge& e, Index from) const;
    std::size_t find_root(Index v) const;
    void rebuild_tree();
    void propagate(std::vector<int>& pending, LevelChange& ch);
    void define(int e, Index apex, std::vector<int>& queue);
    bool try_define(int e, std::vector<int>& queue);
    void relator(const std::array<Index, 3>& tri, LevelChange& ch);
    bool eliminate(const Word& relator_word, const std::array<Index, 3>& tri, LevelChange& ch);
    void substitute(int gen, const Word& w);
    void retry_residuals(LevelChange& ch);

    struct Expansion {
        std::vector<Index> chain;
        std::vector<BasicMove> moves;
    };
    using Memo = std::map<std::pair<Index, Index>, Expansion>;
    const Expansion& expand(Index p, Index q, Memo& memo) const;
    void expand_along(TraceBuilder& tb, std::size_t from, Memo& memo) const;

    EpsilonGraph g_;
    std::vector<int> eid_;
    std::vector<Edge> edges_;
    std::vector<Generator> gens_;
    std::vector<Residual> residual_;
    mutable std::vector<std::size_t> uf_;
    std::vector<Index> parent_;
    std::vector<std::size_t> depth_;
    std::size_t level_ = 0;
};

struct Presentation {
    Index basepoint = 0;
    double scale = 0;
    // unsimplified: one generator per non-tree edge, one relator per triangle
    std::size_t raw_generators = 0;
    std::size_t raw_relators = 0;
    // simplified: generators are edges, relator letters are +-(k+1) for generators[k]
    std::vector<std::pair<Index, Index>> generators;
    std::vector<Word> relators;
    bool is_free() const { return relators.empty(); }
};

// Presentation of the component of `basepoint`.
Presentation present_pi_eps(const EpsilonGraph& G, Index basepoint);
Presentation present_pi_eps(const Pi1Engine& E, Index basepoint);

H1Invariants h1_invariants(const Presentation& P);

}  // namespace crispec
