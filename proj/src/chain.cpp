#include "crispec/chain.hpp"

#include <algorithm>
#include <stdexcept>

namespace crispec {

bool is_valid_chain(const FiniteMetricSpace& X, const Chain& c)
{
    if (c.points.empty()) return false;
    for (Index p : c.points)
        if (p >= X.size()) return false;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (!(X.d(c.points[i - 1], c.points[i]) < c.scale)) return false;
    return true;
}

double chain_length(const FiniteMetricSpace& X, const Chain& c)
{
    double L = 0;
    for (std::size_t i = 1; i < c.size(); ++i) L += X.d(c.points[i - 1], c.points[i]);
    return L;
}

Chain reversed(const Chain& c)
{
    Chain r = c;
    std::reverse(r.points.begin(), r.points.end());
    return r;
}

Chain concat(const Chain& a, const Chain& b)
{
    if (a.points.empty()) return b;
    if (b.points.empty()) return a;
    if (a.back() != b.front()) throw std::invalid_argument("chains do not meet");
    Chain r = a;
    r.points.insert(r.points.end(), b.points.begin() + 1, b.points.end());
    return r;
}

VerifyResult verify_homotopy(const FiniteMetricSpace& X, const HomotopyTrace& h)
{
    VerifyResult res;
    auto fail = [&](std::size_t step, std::string why) {
        res.accepted = false;
        res.step = step;
        res.reason = std::move(why);
        return res;
    };
    const double eps = h.start.scale;
    if (!(eps > 0)) return fail(0, "scale must be positive");
    std::vector<Index> c = h.start.points;
    if (c.empty()) return fail(0, "empty start chain");
    for (Index p : c)
        if (p >= X.size()) return fail(0, "start chain names an unknown point");
    for (std::size_t i = 1; i < c.size(); ++i)
        if (!(X.d(c[i - 1], c[i]) < eps)) return fail(0, "start chain violates the distance bound");
    for (std::size_t s = 0; s < h.moves.size(); ++s) {
        const BasicMove& m = h.moves[s];
        const std::size_t L = c.size();
        if (m.kind == BasicMove::Insert) {
            if (m.point >= X.size()) return fail(s, "unknown point");
            if (m.pos < 1 || m.pos > L - 1 || L < 2) return fail(s, "insert moves an endpoint");
            if (!(X.d(c[m.pos - 1], m.point) < eps) || !(X.d(m.point, c[m.pos]) < eps))
                return fail(s, "distance bound");
            c.insert(c.begin() + m.pos, m.point);
        } else {
            if (L < 3 || m.pos < 1 || m.pos > L - 2) return fail(s, "remove moves an endpoint");
            if (!(X.d(c[m.pos - 1], c[m.pos + 1]) < eps)) return fail(s, "distance bound");
            c.erase(c.begin() + m.pos);
        }
    }
    res.end = std::move(c);
    return res;
}

HomotopyTrace reverse_trace(const HomotopyTrace& h, const std::vector<Index>& end)
{
    // replay to learn which point each removal takes out
    std::vector<Index> c = h.start.points;
    std::vector<BasicMove> filled = h.moves;
    for (auto& m : filled) {
        if (m.kind == BasicMove::Insert)
            c.insert(c.begin() + m.pos, m.point);
        else {
            m.point = c[m.pos];
            c.erase(c.begin() + m.pos);
        }
    }
    if (c != end) throw std::invalid_argument("trace does not end at the given chain");
    HomotopyTrace r;
    r.start.points = end;
    r.start.scale = h.start.scale;
    for (auto it = filled.rbegin(); it != filled.rend(); ++it) {
        BasicMove m = *it;
        m.kind = m.kind == BasicMove::Insert ? BasicMove::Remove : BasicMove::Insert;
        r.moves.push_back(m);
    }
    return r;
}

std::vector<BasicMove> mirror_moves(const std::vector<BasicMove>& moves, std::size_t start_len)
{
    std::vector<BasicMove> out;
    out.reserve(moves.size());
    std::size_t L = start_len;
    for (BasicMove m : moves) {
        if (m.kind == BasicMove::Insert) {
            m.pos = L - m.pos;
            ++L;
        } else {
            m.pos = L - 1 - m.pos;
            --L;
        }
        out.push_back(m);
    }
    return out;
}

void TraceBuilder::insert(std::size_t pos, Index p)
{
    chain_.insert(chain_.begin() + pos, p);
    moves_.push_back({BasicMove::Insert, pos, p});
}

void TraceBuilder::remove(std::size_t pos)
{
    moves_.push_back({BasicMove::Remove, pos, chain_[pos]});
    chain_.erase(chain_.begin() + pos);
}

void TraceBuilder::apply(const std::vector<BasicMove>& moves, std::size_t offset)
{
    for (const BasicMove& m : moves) {
        if (m.kind == BasicMove::Insert)
            insert(m.pos + offset, m.point);
        else
            remove(m.pos + offset);
    }
}

void TraceBuilder::insert_backtrack(std::size_t pos, const std::vector<Index>& path)
{
    // path[0] sits at pos. Grow p0 -> p0 p1 p0 -> p0 p1 p1 p0 -> p0 p1 p2 p1 p0 ...
    for (std::size_t k = 1; k < path.size(); ++k) {
        std::size_t at = pos + k;  // slot right after path[k-1]
        insert(at, path[k - 1]);
        insert(at, path[k]);
    }
}

void TraceBuilder::remove_duplicate(std::size_t pos)
{
    if (pos + 1 >= chain_.size() || chain_[pos] != chain_[pos + 1]) return;
    if (pos + 1 < chain_.size() - 1)
        remove(pos + 1);
    else if (pos > 0)
        remove(pos);
}

std::size_t TraceBuilder::reduce_at(std::size_t pos, std::size_t limit)
{
    const std::size_t before = chain_.size();
    while (pos > 0 && pos + 1 < chain_.size() && pos + 1 <= limit &&
           chain_[pos - 1] == chain_[pos + 1]) {
        remove(pos);
        remove_duplicate(pos - 1);
        --pos;  // the surviving copy
        limit = limit >= 2 ? limit - 2 : 0;
    }
    return before - chain_.size();
}

}  // namespace crispec
