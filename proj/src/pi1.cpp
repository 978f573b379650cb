#include "crispec/pi1.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace crispec {

Pi1Engine::Pi1Engine(EpsilonGraph g) : g_(std::move(g))
{
    const std::size_t n = g_.n;
    eid_.assign(n * n, -1);
    uf_.resize(n);
    std::iota(uf_.begin(), uf_.end(), 0);
    std::vector<int> pending;
    for (auto [i, j] : g_.edges) {
        int id = static_cast<int>(edges_.size());
        edges_.push_back(Edge{i, j, Kind::Undefined, 0, -1, {}});
        eid_[i * n + j] = eid_[j * n + i] = id;
        std::size_t a = find_root(i), b = find_root(j);
        if (a != b) {
            uf_[std::max(a, b)] = std::min(a, b);
            edges_.back().kind = Kind::Tree;
        } else {
            pending.push_back(id);
        }
    }
    rebuild_tree();
    LevelChange ch;
    propagate(pending, ch);
    for (auto [i, j] : g_.edges)
        for_each_common(g_.adj[i], g_.adj[j], [&](std::size_t k) {
            if (k > j) relator({i, j, k}, ch);
        });
    retry_residuals(ch);
}

std::size_t Pi1Engine::find_root(Index v) const
{
    while (uf_[v] != v) v = uf_[v] = uf_[uf_[v]];
    return v;
}

void Pi1Engine::rebuild_tree()
{
    const std::size_t n = g_.n;
    std::vector<std::vector<Index>> tadj(n);
    for (const Edge& e : edges_)
        if (e.kind == Kind::Tree) {
            tadj[e.u].push_back(e.v);
            tadj[e.v].push_back(e.u);
        }
    parent_.assign(n, n);
    depth_.assign(n, 0);
    for (Index r = 0; r < n; ++r) {
        if (parent_[r] != n) continue;
        parent_[r] = r;
        std::deque<Index> q{r};
        while (!q.empty()) {
            Index x = q.front();
            q.pop_front();
            for (Index y : tadj[x])
                if (parent_[y] == n) {
                    parent_[y] = x;
                    depth_[y] = depth_[x] + 1;
                    q.push_back(y);
                }
        }
    }
}

std::vector<int> Pi1Engine::alive_generators() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].alive) out.push_back(static_cast<int>(i));
    return out;
}

bool Pi1Engine::is_tree_edge(Index u, Index v) const
{
    int id = edge_id(u, v);
    return id >= 0 && edges_[id].kind == Kind::Tree;
}

Word Pi1Engine::oriented(const Edge& e, Index from) const
{
    return from == e.u ? e.word : inverse(e.word);
}

Word Pi1Engine::edge_word(Index u, Index v) const
{
    int id = edge_id(u, v);
    if (id < 0) throw std::invalid_argument("not an edge at this scale");
    return oriented(edges_[id], u);
}

Word Pi1Engine::chain_word(const std::vector<Index>& chain) const
{
    Word w;
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (chain[i - 1] != chain[i]) append_reduced(w, edge_word(chain[i - 1], chain[i]));
    return w;
}

void Pi1Engine::define(int e, Index apex, std::vector<int>& queue)
{
    Edge& E = edges_[e];
    E.kind = Kind::Defined;
    E.apex = apex;
    E.word = edge_word(E.u, apex);
    append_reduced(E.word, edge_word(apex, E.v));
    queue.push_back(e);
}

bool Pi1Engine::try_define(int e, std::vector<int>& queue)
{
    const Edge& E = edges_[e];
    bool done = false;
    Index apex = 0;
    for_each_common(g_.adj[E.u], g_.adj[E.v], [&](std::size_t w) {
        if (done) return;
        if (edges_[edge_id(E.u, w)].kind != Kind::Undefined &&
            edges_[edge_id(w, E.v)].kind != Kind::Undefined) {
            done = true;
            apex = w;
        }
    });
    if (done) define(e, apex, queue);
    return done;
}

void Pi1Engine::propagate(std::vector<int>& pending, LevelChange& ch)
{
    std::vector<int> queue;
    std::size_t head = 0;
    for (int e : pending)
        if (edges_[e].kind == Kind::Undefined) try_define(e, queue);
    std::size_t next_free = 0;
    for (;;) {
        while (head < queue.size()) {
            const Index u = edges_[queue[head]].u, v = edges_[queue[head]].v;
            ++head;
            for_each_common(g_.adj[u], g_.adj[v], [&](std::size_t w) {
                int f = edge_id(u, w), h = edge_id(v, w);
                bool fu = edges_[f].kind == Kind::Undefined, hu = edges_[h].kind == Kind::Undefined;
                if (fu && !hu)
                    define(f, v, queue);
                else if (hu && !fu)
                    define(h, u, queue);
            });
        }
        while (next_free < pending.size() && edges_[pending[next_free]].kind != Kind::Undefined)
            ++next_free;
        if (next_free == pending.size()) break;
        int e = pending[next_free];
        Edge& E = edges_[e];
        int gid = static_cast<int>(gens_.size());
        gens_.push_back({E.u, E.v, true, level_, {}, {}});
        E.kind = Kind::Gen;
        E.gen = gid;
        E.word = {letter(gid)};
        ch.created.push_back(gid);
        queue.push_back(e);
    }
}

void Pi1Engine::relator(const std::array<Index, 3>& t, LevelChange& ch)
{
    const Edge& ab = edges_[edge_id(t[0], t[1])];
    const Edge& bc = edges_[edge_id(t[1], t[2])];
    const Edge& ac = edges_[edge_id(t[0], t[2])];
    if (ab.word.empty() && bc.word.empty() && ac.word.empty()) return;
    if ((ab.kind == Kind::Defined && ab.apex == t[2]) || (bc.kind == Kind::Defined && bc.apex == t[0]) ||
        (ac.kind == Kind::Defined && ac.apex == t[1]))
        return;
    Word r = chain_word({t[0], t[1], t[2], t[0]});
    if (r.empty()) return;
    if (!eliminate(r, t, ch)) {
        residual_.push_back({cyclic_reduce(r), t});
        ++ch.new_residuals;
    }
}

bool Pi1Engine::eliminate(const Word& r, const std::array<Index, 3>& t, LevelChange& ch)
{
    std::size_t strip = 0;
    Word cr = cyclic_reduce(r, &strip);
    std::map<int, int> count;
    for (Letter l : cr) ++count[gen_of(l)];
    int g = -1;
    for (auto [gen, c] : count)
        if (c == 1) g = gen;  // latest generator occurring once
    if (g < 0) return false;
    std::size_t k = 0;
    while (gen_of(cr[k]) != g) ++k;
    const std::size_t target = strip + k;

    // locate that letter on the canonical form of the triangle loop
    Canonical K = canonicalize({t[0], t[1], t[2], t[0]});
    std::size_t seen = 0, i = 0;
    for (;; ++i) {
        const Edge& E = edges_[edge_id(K.chain[i], K.chain[i + 1])];
        if (E.kind == Kind::Gen && gens_[E.gen].alive) {
            if (seen == target) break;
            ++seen;
        }
    }
    const Index p = K.chain[i], q = K.chain[i + 1];
    std::vector<Index> alpha(K.chain.begin(), K.chain.begin() + i + 1);      // a .. p
    std::vector<Index> kappa2(K.chain.begin() + i + 1, K.chain.end());       // q .. a
    std::vector<Index> rev_alpha(alpha.rbegin(), alpha.rend());

    // {p,q} -> alpha^-1 alpha {p,q} kappa2 kappa2^-1, kill the loop alpha (p,q) kappa2
    TraceBuilder tb({p, q});
    tb.insert_backtrack(0, rev_alpha);
    const std::size_t ia = rev_alpha.size() - 1;
    tb.insert(tb.size() - 1, q);
    tb.insert_backtrack(tb.size() - 2, kappa2);
    HomotopyTrace fwd{{{t[0], t[1], t[2], t[0]}, g_.scale}, K.moves};
    auto undo = reverse_trace(fwd, K.chain).moves;
    tb.apply(undo, ia);
    tb.remove(ia + 1);  // a b c a -> a c a
    tb.remove(ia + 1);  // -> a a
    tb.remove_duplicate(ia);
    tb.remove_duplicate(tb.size() - 2);
    tb.reduce_at(ia);

    std::vector<Index> D = tb.chain();
    std::vector<BasicMove> moves = tb.moves();
    Generator& G = gens_[g];
    if (p != G.u) {
        std::reverse(D.begin(), D.end());
        moves = mirror_moves(moves, 2);
    }
    Word W = chain_word(D);
    G.alive = false;
    G.replacement = std::move(D);
    G.replacement_moves = std::move(moves);
    substitute(g, W);
    ch.eliminated.push_back(g);
    return true;
}

void Pi1Engine::substitute(int g, const Word& W)
{
    const Letter fwd = letter(g), bwd = letter(g, true);
    const Word Winv = inverse(W);
    auto rewrite = [&](Word& w) {
        if (std::find_if(w.begin(), w.end(), [&](Letter l) { return l == fwd || l == bwd; }) == w.end())
            return;
        Word out;
        for (Letter l : w) {
            if (l == fwd)
                append_reduced(out, W);
            else if (l == bwd)
                append_reduced(out, Winv);
            else
                append_reduced(out, {l});
        }
        w = std::move(out);
    };
    for (Edge& e : edges_) rewrite(e.word);
    for (Residual& r : residual_) {
        rewrite(r.word);
        r.word = cyclic_reduce(r.word);
    }
}

void Pi1Engine::retry_residuals(LevelChange& ch)
{
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < residual_.size(); ++i) {
            if (residual_[i].word.empty()) {
                residual_.erase(residual_.begin() + i);
                changed = true;
                break;
            }
            auto tri = residual_[i].triangle;
            Word r = chain_word({tri[0], tri[1], tri[2], tri[0]});
            Word cr = cyclic_reduce(r);
            std::map<int, int> count;
            for (Letter l : cr) ++count[gen_of(l)];
            bool single = std::any_of(count.begin(), count.end(), [](auto kv) { return kv.second == 1; });
            if (single) {
                residual_.erase(residual_.begin() + i);
                eliminate(r, tri, ch);
                changed = true;
                break;
            }
        }
    }
}

Pi1Engine::LevelChange Pi1Engine::add_edges(const std::vector<std::pair<Index, Index>>& batch,
                                            double new_scale)
{
    ++level_;
    g_.scale = new_scale;
    LevelChange ch;
    const std::size_t n = g_.n;
    const int first = static_cast<int>(edges_.size());
    std::vector<int> pending;
    bool joined = false;
    for (auto [x, y] : batch) {
        Index i = std::min(x, y), j = std::max(x, y);
        if (eid_[i * n + j] >= 0) throw std::invalid_argument("edge already present");
        add_edge(g_, i, j);
        int id = static_cast<int>(edges_.size());
        edges_.push_back(Edge{i, j, Kind::Undefined, 0, -1, {}});
        eid_[i * n + j] = eid_[j * n + i] = id;
        ch.added.emplace_back(i, j);
        std::size_t a = find_root(i), b = find_root(j);
        if (a != b) {
            uf_[std::max(a, b)] = std::min(a, b);
            edges_.back().kind = Kind::Tree;
            joined = true;
        } else {
            pending.push_back(id);
        }
    }
    if (joined) {
        rebuild_tree();
        recompute_components(g_);
    }
    propagate(pending, ch);
    for (int e = first; e < static_cast<int>(edges_.size()); ++e) {
        const Index u = edges_[e].u, v = edges_[e].v;
        for_each_common(g_.adj[u], g_.adj[v], [&](std::size_t w) {
            int f = edge_id(u, w), h = edge_id(v, w);
            if ((f >= first && f < e) || (h >= first && h < e)) return;
            std::array<Index, 3> t{u, v, w};
            std::sort(t.begin(), t.end());
            relator(t, ch);
        });
    }
    retry_residuals(ch);
    return ch;
}

std::vector<Index> Pi1Engine::tree_path(Index a, Index b) const
{
    if (find_root(a) != find_root(b)) throw std::invalid_argument("points lie in different components");
    std::vector<Index> left{a}, right{b};
    Index x = a, y = b;
    while (depth_[x] > depth_[y]) left.push_back(x = parent_[x]);
    while (depth_[y] > depth_[x]) right.push_back(y = parent_[y]);
    while (x != y) {
        left.push_back(x = parent_[x]);
        right.push_back(y = parent_[y]);
    }
    right.pop_back();
    left.insert(left.end(), right.rbegin(), right.rend());
    return left;
}

std::vector<Index> Pi1Engine::generator_loop(int gen, Index base) const
{
    const Generator& G = gens_.at(gen);
    std::vector<Index> c = tree_path(base, G.u);
    auto back = tree_path(G.v, base);
    c.insert(c.end(), back.begin(), back.end());
    return c;
}

const Pi1Engine::Expansion& Pi1Engine::expand(Index p, Index q, Memo& memo) const
{
    auto key = std::make_pair(p, q);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const int id = edge_id(p, q);
    if (id < 0) throw std::invalid_argument("chain step is not an edge at this scale");
    const Edge& e = edges_[id];
    Expansion ex;
    if (e.kind == Kind::Tree || (e.kind == Kind::Gen && gens_[e.gen].alive)) {
        ex.chain = {p, q};
    } else if (e.kind == Kind::Defined) {
        TraceBuilder tb({p, q});
        tb.insert(1, e.apex);
        expand_along(tb, 0, memo);
        ex = {tb.chain(), tb.moves()};
    } else if (e.kind == Kind::Gen) {
        const Generator& G = gens_[e.gen];
        TraceBuilder tb({p, q});
        if (p == G.u)
            tb.apply(G.replacement_moves, 0);
        else
            tb.apply(mirror_moves(G.replacement_moves, 2), 0);
        expand_along(tb, 0, memo);
        ex = {tb.chain(), tb.moves()};
    } else {
        throw std::logic_error("undefined edge");
    }
    return memo.emplace(key, std::move(ex)).first->second;
}

void Pi1Engine::expand_along(TraceBuilder& tb, std::size_t cur, Memo& memo) const
{
    while (cur + 1 < tb.size()) {
        const Index a = tb[cur], b = tb[cur + 1];
        if (a == b) {
            if (cur + 2 < tb.size())
                tb.remove(cur + 1);
            else {
                if (cur > 0) tb.remove(cur);
                break;
            }
            continue;
        }
        const Expansion& E = expand(a, b, memo);
        tb.apply(E.moves, cur);
        const std::size_t end = cur + E.chain.size() - 1;
        cur = end - tb.reduce_at(cur, end);
    }
}

Pi1Engine::Canonical Pi1Engine::canonicalize(const std::vector<Index>& chain) const
{
    Memo memo;
    TraceBuilder tb(chain);
    expand_along(tb, 0, memo);
    return {tb.chain(), tb.moves()};
}

std::optional<std::vector<BasicMove>> Pi1Engine::null_moves(const std::vector<Index>& loop) const
{
    if (loop.size() <= 1) return std::vector<BasicMove>{};
    if (!chain_word(loop).empty()) return std::nullopt;
    Canonical c = canonicalize(loop);
    if (c.chain.size() != 2 || c.chain[0] != c.chain[1]) throw std::logic_error("trivial word did not collapse");
    return c.moves;
}

std::size_t Pi1Engine::raw_generator_count(Index base) const
{
    std::size_t c = 0;
    for (const Edge& e : edges_)
        if (e.kind != Kind::Tree && find_root(e.u) == find_root(base)) ++c;
    return c;
}

std::size_t Pi1Engine::raw_relator_count(Index base) const
{
    std::size_t c = 0;
    for (auto [i, j] : g_.edges)
        if (find_root(i) == find_root(base))
            for_each_common(g_.adj[i], g_.adj[j], [&](std::size_t k) { c += k > j; });
    return c;
}

Presentation present_pi_eps(const Pi1Engine& E, Index basepoint)
{
    Presentation P;
    P.basepoint = basepoint;
    P.scale = E.scale();
    P.raw_generators = E.raw_generator_count(basepoint);
    P.raw_relators = E.raw_relator_count(basepoint);
    std::map<int, int> index;
    for (int g : E.alive_generators()) {
        const auto& G = E.generators()[g];
        if (!E.connected(G.u, basepoint)) continue;
        index[g] = static_cast<int>(P.generators.size());
        P.generators.emplace_back(G.u, G.v);
    }
    for (const auto& r : E.residuals()) {
        if (!E.connected(r.triangle[0], basepoint)) continue;
        Word w;
        for (Letter l : r.word) w.push_back(letter(index.at(gen_of(l)), l < 0));
        P.relators.push_back(w);
    }
    return P;
}

Presentation present_pi_eps(const EpsilonGraph& G, Index basepoint)
{
    Pi1Engine E(G);
    return present_pi_eps(E, basepoint);
}

H1Invariants h1_invariants(const Presentation& P)
{
    std::vector<int> gens(P.generators.size());
    std::iota(gens.begin(), gens.end(), 0);
    return abelian_invariants(gens, P.relators);
}

}  // namespace crispec
