#include "crispec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "crispec/graph.hpp"
#include "crispec/nullity.hpp"
#include "crispec/parallel.hpp"

namespace crispec::oracle {

std::size_t interior_bound(std::size_t n, std::size_t budget)
{
    if (n < 2) return 2;
    std::size_t K = 0, total = 1, p = 1;
    while (true) {
        p *= n;
        if (total + p > budget) return std::max<std::size_t>(K, 2);
        total += p;
        ++K;
    }
}

ChainClasses::ChainClasses(const FiniteMetricSpace& X, double eps, Index s, Index t, std::size_t max_interior)
    : X_(&X), eps_(eps), s_(s), t_(t), n_(X.size()), K_(max_interior)
{
    std::size_t total = 0, p = 1;
    for (std::size_t k = 0; k <= K_; ++k) {
        offset_.push_back(total);
        power_.push_back(p);
        total += p;
        p *= n_;
    }
    offset_.push_back(total);
    valid_.assign(total, 0);
    parent_.resize(total);
    for (std::size_t v = 0; v < total; ++v) parent_[v] = v;

    // depth-first over prefixes whose hops are all below eps
    auto& codes = codes_;
    std::vector<Index> pre;
    auto dfs = [&](auto&& self, Index last, std::size_t partial) -> void {
        const std::size_t k = pre.size();
        if (last == t_ || X.d(last, t_) < eps_) {
            valid_[offset_[k] + partial] = 1;
            codes.push_back(offset_[k] + partial);
        }
        if (k == K_) return;
        for (Index q = 0; q < n_; ++q) {
            if (!(X.d(last, q) < eps_)) continue;
            pre.push_back(q);
            self(self, q, partial + q * power_[k]);
            pre.pop_back();
        }
    };
    dfs(dfs, s_, 0);
    valid_count_ = codes.size();

    Index in[64];
    for (std::size_t code : codes) {
        const std::size_t k = static_cast<std::size_t>(std::upper_bound(offset_.begin(), offset_.end(), code) - offset_.begin()) - 1;
        std::size_t r = code - offset_[k];
        for (std::size_t i = 0; i < k; ++i, r /= n_) in[i] = r % n_;
        for (std::size_t i = 0; i < k; ++i) {
            Index before = i == 0 ? s_ : in[i - 1];
            Index after = i + 1 == k ? t_ : in[i + 1];
            if (before != after && !(X.d(before, after) < eps_)) continue;
            // drop digit i: low digits stay, high digits shift down one place
            const std::size_t rest = code - offset_[k];
            const std::size_t low = rest % power_[i], high = rest / power_[i + 1];
            const std::size_t shorter = offset_[k - 1] + low + high * power_[i];
            std::size_t a = find(code), b = find(shorter);
            if (a != b) parent_[std::max(a, b)] = std::min(a, b);
        }
    }
}

std::size_t ChainClasses::encode(const std::vector<Index>& in) const
{
    std::size_t c = offset_[in.size()];
    for (std::size_t i = 0; i < in.size(); ++i) c += in[i] * power_[i];
    return c;
}

std::vector<Index> ChainClasses::decode(std::size_t code, std::size_t& k) const
{
    k = static_cast<std::size_t>(std::upper_bound(offset_.begin(), offset_.end(), code) - offset_.begin()) - 1;
    std::size_t r = code - offset_[k];
    std::vector<Index> in(k);
    for (std::size_t i = 0; i < k; ++i) {
        in[i] = r % n_;
        r /= n_;
    }
    return in;
}

std::size_t ChainClasses::find(std::size_t v) const
{
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
}

bool ChainClasses::contains(const std::vector<Index>& chain) const
{
    if (chain.size() < 2 || chain.front() != s_ || chain.back() != t_ || chain.size() - 2 > K_) return false;
    std::vector<Index> in(chain.begin() + 1, chain.end() - 1);
    return valid_[encode(in)];
}

long ChainClasses::class_of(const std::vector<Index>& chain) const
{
    if (!contains(chain)) return -1;
    std::vector<Index> in(chain.begin() + 1, chain.end() - 1);
    return static_cast<long>(find(encode(in)));
}

bool ChainClasses::class_has_chain_below(const std::vector<Index>& chain, double lo) const
{
    long c = class_of(chain);
    if (c < 0) return false;
    for (std::size_t code : codes_) {
        if (static_cast<long>(find(code)) != c) continue;
        const std::size_t k = static_cast<std::size_t>(std::upper_bound(offset_.begin(), offset_.end(), code) - offset_.begin()) - 1;
        std::size_t r = code - offset_[k];
        Index prev = s_;
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i, r /= n_) {
            ok = X_->d(prev, r % n_) < lo;
            prev = r % n_;
        }
        if (ok && (prev == t_ || X_->d(prev, t_) < lo)) return true;
    }
    return false;
}

bool is_null(const FiniteMetricSpace& X, double eps, const std::vector<Index>& loop, std::size_t max_interior)
{
    ChainClasses C(X, eps, loop.front(), loop.back(), max_interior);
    return C.class_of(loop) >= 0 && C.class_of(loop) == C.class_of({loop.front(), loop.front()});
}

bool is_refinable(const FiniteMetricSpace& X, double eps_hi, double eps_lo, Index x, Index y,
                  std::size_t max_interior)
{
    ChainClasses C(X, eps_hi, x, y, max_interior);
    return C.class_has_chain_below({x, y}, eps_lo);
}

FiniteMetricSpace random_space(std::mt19937_64& rng, std::size_t n)
{
    std::vector<std::vector<double>> D(n, std::vector<double>(n, 0.0));
    if (rng() % 2) {
        // distinct points on a 16 x 16 grid
        std::vector<std::pair<int, int>> pts;
        while (pts.size() < n) {
            std::pair<int, int> p{static_cast<int>(rng() % 16), static_cast<int>(rng() % 16)};
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                D[i][j] = std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second);
    } else {
        // random tree plus extra edges, integer weights, shortest paths
        const double inf = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) D[i][j] = inf;
        auto link = [&](std::size_t i, std::size_t j) {
            double w = 1.0 + static_cast<double>(rng() % 5);
            D[i][j] = D[j][i] = std::min(D[i][j], w);
        };
        for (std::size_t i = 1; i < n; ++i) link(i, rng() % i);
        for (std::size_t e = rng() % (n + 1); e > 0; --e) {
            std::size_t i = rng() % n, j = rng() % n;
            if (i != j) link(i, j);
        }
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) D[i][j] = std::min(D[i][j], D[i][m] + D[m][j]);
    }
    return validate_metric(D, 1e-9);
}

namespace {

std::vector<Index> random_loop(const EpsilonGraph& G, Index b, std::mt19937_64& rng, std::size_t max_interior)
{
    for (int attempt = 0; attempt < 20; ++attempt) {
        std::vector<Index> c{b};
        const std::size_t steps = rng() % (max_interior + 1);
        for (std::size_t s = 0; s < steps; ++s) {
            std::vector<Index> nb;
            G.adj[c.back()].for_each([&](std::size_t w) { nb.push_back(w); });
            if (nb.empty()) break;
            c.push_back(nb[rng() % nb.size()]);
        }
        // shortest way home
        std::vector<long> from(G.n, -1);
        std::deque<Index> q{c.back()};
        from[c.back()] = static_cast<long>(c.back());
        while (!q.empty()) {
            Index u = q.front();
            q.pop_front();
            G.adj[u].for_each([&](std::size_t w) {
                if (from[w] < 0) {
                    from[w] = static_cast<long>(u);
                    q.push_back(w);
                }
            });
        }
        if (from[b] < 0) continue;
        std::vector<Index> home;
        for (Index v = b; v != c.back(); v = static_cast<Index>(from[v])) home.push_back(v);
        c.insert(c.end(), home.rbegin(), home.rend());
        if (c.size() == 1) c.push_back(b);
        if (c.size() - 2 <= max_interior) return c;
    }
    return {b, b};
}

std::string show(const std::vector<Index>& c)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    return os.str();
}

SuiteResult run_space(const SuiteOptions& opt, std::size_t index, std::size_t keep_sample)
{
    SuiteResult r;
    std::mt19937_64 rng(opt.seed * 1000003ULL + index);
    const std::size_t n = opt.min_points + rng() % (opt.max_points - opt.min_points + 1);
    const FiniteMetricSpace X = random_space(rng, n);
    const std::size_t K = interior_bound(n);
    const auto c = candidate_scales(X);
    r.spaces = 1;
    std::optional<Pi1Engine> prev;
    for (std::size_t k = 0; k <= c.size(); ++k) {
        const double eps = k < c.size() ? c[k] : representative_scale(c.back(), std::numeric_limits<double>::infinity());
        Pi1Engine E(build_graph(X, eps));
        ++r.scales;
        std::ostringstream tag;
        tag.precision(12);
        tag << "space " << index << " eps " << eps;

        const Index b = rng() % n;
        ChainClasses C(X, eps, b, b, K);
        const long trivial = C.class_of({b, b});
        for (std::size_t s = 0; s < opt.loops_per_scale; ++s) {
            auto loop = random_loop(E.graph(), b, rng, std::min<std::size_t>(4, K - 1));
            ++r.null_checks;
            auto v = decide_null(E, loop);
            const bool brute = C.class_of(loop) == trivial;
            if (v.status == NullityVerdict::Unknown) {
                ++r.unknown;
                continue;
            }
            if (v.status == NullityVerdict::Null) {
                ++r.traces;
                auto vr = verify_homotopy(X, v.trace);
                if (vr.accepted) ++r.traces_verified;
                else r.disagreements.push_back(tag.str() + " loop " + show(loop) + ": trace rejected: " + vr.reason);
                if (r.sample.size() < keep_sample) r.sample.push_back({X, v.trace});
            }
            if ((v.status == NullityVerdict::Null) != brute)
                r.disagreements.push_back(tag.str() + " loop " + show(loop) + ": decide_null " + to_string(v.status) +
                                          ", brute force " + (brute ? "null" : "non-null"));
        }
        if (prev) {
            std::vector<std::pair<Index, Index>> pairs;
            for (auto [i, j] : E.graph().edges) pairs.push_back({i, j});
            for (std::size_t s = 0; s < opt.pairs_per_scale && !pairs.empty(); ++s) {
                auto [x, y] = pairs[rng() % pairs.size()];
                if (rng() % 2) std::swap(x, y);
                ++r.refine_checks;
                auto v = refine_check(X, *prev, E, x, y);
                const bool brute = is_refinable(X, eps, prev->scale(), x, y, K);
                if (v.status == RefineVerdict::Unknown) {
                    ++r.unknown;
                    continue;
                }
                if (v.status == RefineVerdict::Refinable) {
                    ++r.traces;
                    auto vr = verify_homotopy(X, v.trace);
                    bool below = is_valid_chain(X, Chain{vr.end, prev->scale()});
                    if (vr.accepted && below) ++r.traces_verified;
                    else r.disagreements.push_back(tag.str() + " pair " + show({x, y}) + ": refinement trace rejected");
                    if (r.sample.size() < keep_sample) r.sample.push_back({X, v.trace});
                }
                if ((v.status == RefineVerdict::Refinable) != brute)
                    r.disagreements.push_back(tag.str() + " pair " + show({x, y}) + ": refine_check " +
                                              to_string(v.status) + ", brute force " +
                                              (brute ? "refinable" : "not refinable"));
            }
        }
        prev.emplace(std::move(E));
    }
    return r;
}

}  // namespace

SuiteResult run_suite(const SuiteOptions& opt, std::size_t keep_sample)
{
    std::vector<SuiteResult> parts(opt.spaces);
    parallel_for(opt.spaces, opt.threads, [&](std::size_t i) { parts[i] = run_space(opt, i, keep_sample); });
    SuiteResult all;
    for (auto& p : parts) {
        all.spaces += p.spaces;
        all.scales += p.scales;
        all.null_checks += p.null_checks;
        all.refine_checks += p.refine_checks;
        all.traces += p.traces;
        all.traces_verified += p.traces_verified;
        all.unknown += p.unknown;
        for (auto& d : p.disagreements) all.disagreements.push_back(std::move(d));
        for (auto& s : p.sample)
            if (all.sample.size() < keep_sample) all.sample.push_back(std::move(s));
    }
    return all;
}

}  // namespace crispec::oracle
