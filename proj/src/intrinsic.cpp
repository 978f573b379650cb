#include "crispec/intrinsic.hpp"
#include "crispec/parallel.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <tuple>

namespace crispec {

namespace {

struct Row {
    std::vector<double> dist;
    std::vector<std::uint64_t> hops;
};

// Dijkstra on the complete graph restricted to d < eps; ties on length go to fewer hops.
Row dijkstra(const FiniteMetricSpace& X, double eps, std::size_t src)
{
    const std::size_t n = X.size();
    Row r{std::vector<double>(n, kUnreachable), std::vector<std::uint64_t>(n, 0)};
    std::vector<char> done(n, 0);
    r.dist[src] = 0;
    // dense O(n^2) variant; the graph is usually dense
    for (std::size_t it = 0; it < n; ++it) {
        std::size_t u = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!done[v] && r.dist[v] != kUnreachable &&
                (u == n || std::tie(r.dist[v], r.hops[v]) < std::tie(r.dist[u], r.hops[u])))
                u = v;
        if (u == n) break;
        done[u] = 1;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v]) continue;
            double w = X.d(u, v);
            if (!(w < eps)) continue;
            double nd = r.dist[u] + w;
            std::uint64_t nh = r.hops[u] + 1;
            if (std::tie(nd, nh) < std::tie(r.dist[v], r.hops[v])) {
                r.dist[v] = nd;
                r.hops[v] = nh;
            }
        }
    }
    return r;
}

}  // namespace

IntrinsicMetricResult intrinsic_metric(const FiniteMetricSpace& X, double eps, unsigned threads)
{
    const std::size_t n = X.size();
    IntrinsicMetricResult res;
    res.scale = eps;
    res.n = n;
    res.dmat.assign(n * n, kUnreachable);
    std::vector<std::uint64_t> hops(n * n, 0);
    parallel_for(n, threads, [&](std::size_t s) {
        Row r = dijkstra(X, eps, s);
        std::copy(r.dist.begin(), r.dist.end(), res.dmat.begin() + s * n);
        std::copy(r.hops.begin(), r.hops.end(), hops.begin() + s * n);
    });
    // symmetrize: float sums along the two directions can differ in the last bit
    bool connected = true;
    std::uint64_t M = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = std::min(res.dmat[i * n + j], res.dmat[j * n + i]);
            res.dmat[i * n + j] = res.dmat[j * n + i] = v;
            if (v == kUnreachable)
                connected = false;
            else
                M = std::max({M, hops[i * n + j], hops[j * n + i]});
        }
    if (connected) res.lipschitz_M = M;
    return res;
}

IntrinsicSweep intrinsic_metric_sweep(const FiniteMetricSpace& X, double floor, unsigned threads,
                                      std::size_t max_scales)
{
    IntrinsicSweep out;
    auto c = candidate_scales(X);
    std::vector<double> reps;
    for (std::size_t k = 0; k <= c.size(); ++k) {
        double lo = k == 0 ? 0 : c[k - 1];
        double hi = k == c.size() ? kUnreachable : c[k];
        if (hi != kUnreachable && hi < floor) continue;
        reps.push_back(representative_scale(lo, hi));
    }
    if (max_scales && reps.size() > max_scales) reps.resize(max_scales);
    std::reverse(reps.begin(), reps.end());
    const double threshold = connectivity_threshold(X);
    for (double eps : reps) {
        out.by_scale.push_back(intrinsic_metric(X, eps, threads));
        if (out.by_scale.size() > 1) {
            const auto& hi = out.by_scale[out.by_scale.size() - 2];
            const auto& lo = out.by_scale.back();
            for (std::size_t i = 0; i < lo.dmat.size(); ++i)
                if (lo.dmat[i] < hi.dmat[i]) out.monotone = false;
        }
    }
    // smallest connected scale: just above the threshold
    std::size_t k = scale_interval(c, threshold);
    double lo = threshold;
    double hi = k + 1 < c.size() ? c[k + 1] : kUnreachable;
    out.d0_scale = representative_scale(lo, hi);
    out.d0 = intrinsic_metric(X, out.d0_scale, threads);
    out.divergent = floor < threshold;
    return out;
}

MidpointReport midpoint_check(const IntrinsicMetricResult& D, double tol, std::size_t pairs,
                              std::uint64_t seed)
{
    MidpointReport rep;
    const std::size_t n = D.n;
    if (n < 2) return rep;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    // distances are sums of floats; allow their rounding on top of tol
    tol = tol * (1 + 1e-9) + 1e-12;
    for (std::size_t t = 0; t < pairs; ++t) {
        std::size_t x = pick(rng), y = pick(rng);
        if (x == y || D.at(x, y) == kUnreachable) continue;
        ++rep.pairs;
        bool ok = false;
        for (std::size_t m = 0; m < n && !ok; ++m)
            ok = std::abs(D.at(x, m) - D.at(y, m)) <= tol && D.at(x, m) <= D.at(x, y) / 2 + tol;
        if (!ok) {
            ++rep.failures;
            rep.failed.emplace_back(x, y);
        }
    }
    return rep;
}

}  // namespace crispec
