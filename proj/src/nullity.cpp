#include "crispec/nullity.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

#include "crispec/smith.hpp"

namespace crispec {

const char* to_string(NullityVerdict::Status s)
{
    switch (s) {
    case NullityVerdict::Null: return "null";
    case NullityVerdict::NonNull: return "non-null";
    default: return "unknown";
    }
}

const char* to_string(RefineVerdict::Status s)
{
    switch (s) {
    case RefineVerdict::Refinable: return "refinable";
    case RefineVerdict::NotRefinable: return "not-refinable";
    default: return "unknown";
    }
}

const char* to_string(InducedMapReport::Verdict v)
{
    switch (v) {
    case InducedMapReport::Yes: return "yes";
    case InducedMapReport::No: return "no";
    default: return "unknown";
    }
}

namespace {

void require_chain(const Pi1Engine& E, const std::vector<Index>& c)
{
    if (c.empty()) throw std::invalid_argument("empty chain");
    for (auto p : c)
        if (p >= E.graph().n) throw std::invalid_argument("point index out of range");
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i] != c[i - 1] && !E.has_edge(std::min(c[i], c[i - 1]), std::max(c[i], c[i - 1])))
            throw std::invalid_argument("hop not below the scale");
}

bool abelian_nonzero(const Pi1Engine& E, const Word& w)
{
    if (E.is_free()) {
        std::map<int, long> sum;
        for (auto l : w) sum[gen_of(l)] += l > 0 ? 1 : -1;
        return std::any_of(sum.begin(), sum.end(), [](auto& kv) { return kv.second != 0; });
    }
    std::vector<Word> rel;
    for (auto& r : E.residuals()) rel.push_back(r.word);
    return !abelian_image_trivial(E.alive_generators(), rel, w);
}

std::vector<Index> join(std::vector<Index> a, const std::vector<Index>& b)
{
    a.insert(a.end(), b.begin() + 1, b.end());
    return a;
}

std::vector<Index> rev(std::vector<Index> a)
{
    std::reverse(a.begin(), a.end());
    return a;
}

}  // namespace

namespace {

// drops interior points while some neighbour pair allows it; short loops often
// contract this way in fewer moves than the canonical route
std::optional<std::vector<BasicMove>> greedy_contraction(const Pi1Engine& E, std::vector<Index> c)
{
    std::vector<BasicMove> moves;
    auto close = [&](Index a, Index b) { return a == b || E.has_edge(std::min(a, b), std::max(a, b)); };
    while (c.size() > 2) {
        std::size_t i = 1;
        while (i + 1 < c.size() && !close(c[i - 1], c[i + 1])) ++i;
        if (i + 1 >= c.size()) return std::nullopt;
        moves.push_back({BasicMove::Remove, i, c[i]});
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(i));
    }
    return moves;
}

}  // namespace

NullityVerdict decide_null(const Pi1Engine& E, const std::vector<Index>& loop)
{
    require_chain(E, loop);
    if (loop.front() != loop.back()) throw std::invalid_argument("chain is not a loop");
    NullityVerdict v;
    v.trace.start = Chain{loop, E.scale()};
    v.word = E.chain_word(loop);
    if (abelian_nonzero(E, v.word)) {
        v.status = NullityVerdict::NonNull;
        v.certificate = "h1-nonzero";
    } else if (v.word.empty()) {
        v.status = NullityVerdict::Null;
        v.trace.moves = *E.null_moves(loop);
        if (loop.size() <= 64)
            if (auto g = greedy_contraction(E, loop); g && g->size() < v.trace.moves.size()) v.trace.moves = *g;
    } else if (E.is_free()) {
        v.status = NullityVerdict::NonNull;
        v.certificate = "free-reduced-nontrivial";
    } else {
        v.report = "word of length " + std::to_string(v.word.size()) + " over a group with " +
                   std::to_string(E.residuals().size()) + " unresolved relators";
    }
    return v;
}

NullityVerdict decide_null(const FiniteMetricSpace& X, double eps, const std::vector<Index>& loop, const Budget&)
{
    Pi1Engine E(build_graph(X, eps));
    return decide_null(E, loop);
}

std::optional<GapCertificate> covering_gap(const FiniteMetricSpace& X, Index x, Index y, double lo, double hi,
                                           double hint)
{
    const double l = X.d(x, y);
    if (lo > l || hi <= l) return std::nullopt;
    auto g = check_pre_essential_gap(X, x, y, std::max(hint, hi));
    if (g.feasible() && g.certificate->certified_up_to >= hi) return g.certificate;
    return std::nullopt;
}

namespace {

// lo-chain from x to y whose hi word is `target`, by breadth-first search over
// (point, reduced word) states
std::optional<std::vector<Index>> lift_search(const Pi1Engine& lo, const Pi1Engine& hi, Index x, Index y,
                                              const Word& target, std::size_t budget, bool* exhausted)
{
    using State = std::pair<Index, Word>;
    std::map<State, std::pair<Index, std::size_t>> seen;  // state -> (point, parent slot)
    std::vector<State> slots;
    std::deque<std::size_t> q;
    slots.push_back({x, {}});
    seen[slots[0]] = {x, 0};
    q.push_back(0);
    *exhausted = false;
    while (!q.empty()) {
        std::size_t s = q.front();
        q.pop_front();
        State cur = slots[s];
        if (cur.first == y && cur.second == target) {
            std::vector<Index> path;
            for (std::size_t t = s;; t = seen[slots[t]].second) {
                path.push_back(slots[t].first);
                if (t == 0) break;
            }
            return rev(path);
        }
        bool stop = false;
        lo.graph().adj[cur.first].for_each([&](std::size_t w) {
            if (stop) return;
            Word nw = cur.second;
            append_reduced(nw, hi.edge_word(cur.first, w));
            State ns{w, std::move(nw)};
            if (seen.count(ns)) return;
            if (slots.size() >= budget) {
                stop = true;
                return;
            }
            seen[ns] = {w, s};
            slots.push_back(std::move(ns));
            q.push_back(slots.size() - 1);
        });
        if (stop) {
            *exhausted = true;
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace

RefineVerdict refine_check(const FiniteMetricSpace& X, const Pi1Engine& lo, const Pi1Engine& hi, Index x, Index y,
                           const Budget& budget)
{
    if (x >= X.size() || y >= X.size()) throw std::invalid_argument("point index out of range");
    if (!(X.d(x, y) < hi.scale())) throw std::invalid_argument("pair is not a chain at the upper scale");
    RefineVerdict v;
    v.trace.start = Chain{{x, y}, hi.scale()};
    if (x == y || X.d(x, y) < lo.scale()) {
        v.status = RefineVerdict::Refinable;
        v.refined = {x, y};
        return v;
    }
    auto not_refinable = [&](const char* why) {
        v.status = RefineVerdict::NotRefinable;
        v.certificate = why;
        v.gap = covering_gap(X, x, y, lo.scale(), hi.scale(), 0);
        return v;
    };
    if (!lo.connected(x, y)) return not_refinable("disconnected-below");

    const Word target = hi.edge_word(x, y);
    if (hi.is_free()) {
        std::vector<Word> images;
        for (int g : lo.alive_generators()) {
            const auto& G = lo.generators()[g];
            if (lo.connected(G.u, x)) images.push_back(hi.chain_word(lo.generator_loop(g, x)));
        }
        Word lambda = target;
        append_reduced(lambda, hi.chain_word(lo.tree_path(y, x)));
        if (!SubgroupGraph(images).contains(lambda)) return not_refinable("subgroup-nonmember");
    }
    bool exhausted = false;
    auto beta = lift_search(lo, hi, x, y, target, budget.search_states, &exhausted);
    if (!beta) {
        if (auto g = covering_gap(X, x, y, lo.scale(), hi.scale(), 0)) {
            v.status = RefineVerdict::NotRefinable;
            v.certificate = "gap-number";
            v.gap = g;
            return v;
        }
        v.report = exhausted ? "path search stopped after " + std::to_string(budget.search_states) + " states"
                             : "path search closed without a match over a group with relators";
        return v;
    }
    // {x,y} -> {x,y,y} -> {x} + reversed beta + beta + {y}, then collapse the loop {x} + reversed beta
    TraceBuilder tb({x, y});
    const auto back = rev(*beta);
    tb.insert(1, y);
    tb.insert_backtrack(1, back);
    std::vector<Index> loop{x};
    loop.insert(loop.end(), back.begin(), back.end());
    auto moves = hi.null_moves(loop);
    if (!moves) throw std::logic_error("refinement loop has nontrivial word");
    tb.apply(*moves, 0);
    tb.remove_duplicate(0);
    tb.remove_duplicate(tb.size() - 2);
    v.status = RefineVerdict::Refinable;
    v.trace.moves = tb.moves();
    v.refined = tb.chain();
    return v;
}

RefineVerdict refine_check(const FiniteMetricSpace& X, double eps_hi, double eps_lo, Index x, Index y,
                           const Budget& budget)
{
    if (!(eps_lo < eps_hi)) throw std::invalid_argument("lower scale must be below the upper scale");
    Pi1Engine lo(build_graph(X, eps_lo)), hi(build_graph(X, eps_hi));
    return refine_check(X, lo, hi, x, y, budget);
}

InducedMapReport induced_map_report(const FiniteMetricSpace& X, const Pi1Engine& hi, Index base,
                                    const LowerSide& lo, double gap_hint, std::size_t max_witnesses)
{
    InducedMapReport rep;
    std::vector<Word> images;
    for (auto& L : lo.loops) images.push_back(hi.chain_word(L));

    auto kernel_witness = [&](const std::vector<Index>& loop, const std::string& cert) {
        if (rep.kernel.size() >= max_witnesses) return;
        LoopWitness w;
        w.loop = loop;
        w.lo_scale = lo.scale;
        w.hi_scale = hi.scale();
        w.lo_certificate = cert;
        w.hi_trace.start = Chain{loop, hi.scale()};
        w.hi_trace.moves = *hi.null_moves(loop);
        rep.kernel.push_back(std::move(w));
    };
    for (std::size_t i = 0; i < images.size(); ++i)
        if (images[i].empty() && !lo.certificates[i].empty()) kernel_witness(lo.loops[i], lo.certificates[i]);

    // membership in the free group on the live generators is enough for refinability
    const SubgroupGraph sub(images);
    if (!rep.kernel.empty()) {
        rep.injective = InducedMapReport::No;
        rep.injective_method = "generator-dies";
    } else if (lo.free && hi.is_free()) {
        rep.injective_method = "stallings-rank";
        if (sub.rank() == images.size()) {
            rep.injective = InducedMapReport::Yes;
        } else {
            rep.injective = InducedMapReport::No;
            // look for a two-letter kernel element
            for (std::size_t i = 0; i < images.size() && rep.kernel.empty(); ++i)
                for (std::size_t j = i + 1; j < images.size() && rep.kernel.empty(); ++j)
                    for (int s = 0; s < 4 && rep.kernel.empty(); ++s) {
                        Word a = s & 1 ? inverse(images[i]) : images[i];
                        Word b = s & 2 ? inverse(images[j]) : images[j];
                        if (!concat(a, b).empty()) continue;
                        auto la = s & 1 ? rev(lo.loops[i]) : lo.loops[i];
                        auto lb = s & 2 ? rev(lo.loops[j]) : lo.loops[j];
                        kernel_witness(join(la, lb), "free-reduced-nontrivial");
                    }
            if (rep.kernel.empty()) rep.notes.push_back("rank drop without a short kernel element");
        }
    } else {
        rep.injective = InducedMapReport::Unknown;
        rep.injective_method = lo.free ? "upper group has relators" : "lower group has relators";
    }

    std::size_t unknown = 0;
    for (auto [u, v] : lo.new_edges) {
        if (!hi.connected(u, base)) continue;
        const char* why = nullptr;
        if (!lo.connected(u, v))
            why = "disconnected-below";
        else if (!sub.contains(hi.edge_word(u, v))) {
            if (!hi.is_free()) {
                ++unknown;
                continue;
            }
            why = "subgroup-nonmember";
        }
        if (!why) continue;
        ++rep.unrefinable_total;
        if (rep.unrefinable.size() < max_witnesses)
            rep.unrefinable.push_back({u, v, why, covering_gap(X, u, v, lo.scale, hi.scale(), gap_hint)});
    }
    rep.surjective_method = "subgroup-membership";
    if (rep.unrefinable_total)
        rep.surjective = InducedMapReport::No;
    else if (unknown)
        rep.surjective = InducedMapReport::Unknown;
    return rep;
}

InducedMapReport induced_map_report(const FiniteMetricSpace& X, const Pi1Engine& lo, const Pi1Engine& hi,
                                    Index base, std::size_t max_witnesses)
{
    LowerSide side;
    side.scale = lo.scale();
    side.free = lo.is_free();
    std::vector<Word> rel;
    for (auto& r : lo.residuals()) rel.push_back(r.word);
    const auto alive = lo.alive_generators();
    for (int g : alive) {
        const auto& G = lo.generators()[g];
        if (!lo.connected(G.u, base)) continue;
        side.loops.push_back(lo.generator_loop(g, base));
        bool nz = side.free || !abelian_image_trivial(alive, rel, Word{letter(g)});
        side.certificates.push_back(nz ? "h1-nonzero" : "");
    }
    for (auto [i, j] : hi.graph().edges)
        if (!lo.has_edge(i, j)) side.new_edges.push_back({i, j});
    side.connected = [&lo](Index a, Index b) { return lo.connected(a, b); };
    return induced_map_report(X, hi, base, side, 0, max_witnesses);
}

InducedMapReport induced_map_report(const FiniteMetricSpace& X, double eps_lo, double eps_hi, Index base,
                                    std::size_t max_witnesses)
{
    if (!(eps_lo < eps_hi)) throw std::invalid_argument("lower scale must be below the upper scale");
    Pi1Engine lo(build_graph(X, eps_lo)), hi(build_graph(X, eps_hi));
    return induced_map_report(X, lo, hi, base, max_witnesses);
}

}  // namespace crispec
