#include "crispec/free_group.hpp"

#include <algorithm>
#include <set>

namespace crispec {

Word reduce(const Word& w)
{
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

void append_reduced(Word& a, const Word& b)
{
    for (Letter l : b) {
        if (!a.empty() && a.back() == -l)
            a.pop_back();
        else
            a.push_back(l);
    }
}

Word inverse(const Word& w)
{
    Word r(w.rbegin(), w.rend());
    for (auto& l : r) l = -l;
    return r;
}

Word concat(const Word& a, const Word& b)
{
    Word r = a;
    append_reduced(r, b);
    return r;
}

Word cyclic_reduce(const Word& w0, std::size_t* stripped)
{
    Word w = reduce(w0);
    std::size_t i = 0, j = w.size();
    while (j - i >= 2 && w[i] == -w[j - 1]) ++i, --j;
    if (stripped) *stripped = i;
    return Word(w.begin() + i, w.begin() + j);
}

SubgroupGraph::SubgroupGraph(const std::vector<Word>& generators)
{
    fresh();  // base vertex 0
    for (const Word& g0 : generators) {
        Word g = reduce(g0);
        if (g.empty()) continue;
        std::size_t v = 0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            std::size_t w = k + 1 == g.size() ? 0 : fresh();
            add_edge(v, g[k], w);
            v = w;
        }
    }
}

std::size_t SubgroupGraph::fresh()
{
    parent_.push_back(parent_.size());
    out_.emplace_back();
    return parent_.size() - 1;
}

std::size_t SubgroupGraph::find(std::size_t v) const
{
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
}

void SubgroupGraph::add_edge(std::size_t u, Letter l, std::size_t v)
{
    pending_.clear();
    auto link = [&](std::size_t a, Letter x, std::size_t b) {
        a = find(a), b = find(b);
        auto it = out_[a].find(x);
        if (it == out_[a].end()) {
            out_[a][x] = b;
            out_[b][-x] = a;
        } else if (find(it->second) != b) {
            pending_.emplace_back(it->second, b);
        }
    };
    link(u, l, v);
    while (!pending_.empty()) {
        auto [a, b] = pending_.back();
        pending_.pop_back();
        a = find(a), b = find(b);
        if (a == b) continue;
        if (out_[a].size() < out_[b].size()) std::swap(a, b);
        parent_[b] = a;
        auto moved = std::move(out_[b]);
        out_[b].clear();
        for (auto [x, t] : moved) link(a, x, t);
    }
}

bool SubgroupGraph::contains(const Word& w0) const
{
    Word w = reduce(w0);
    std::size_t v = find(0);
    for (Letter l : w) {
        auto it = out_[v].find(l);
        if (it == out_[v].end()) return false;
        v = find(it->second);
    }
    return v == find(0);
}

std::size_t SubgroupGraph::rank() const
{
    std::size_t V = 0, E = 0;
    for (std::size_t v = 0; v < parent_.size(); ++v) {
        if (find(v) != v) continue;
        ++V;
        std::set<Letter> seen;
        for (auto [x, t] : out_[v])
            if (x > 0) seen.insert(x);
        E += seen.size();
    }
    return E + 1 - V;
}

}  // namespace crispec
