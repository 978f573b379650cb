#include "crispec/metric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace crispec {

namespace {
std::string fmt(const char* f, std::size_t a, std::size_t b)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}
}  // namespace

AsymmetricMatrix::AsymmetricMatrix(std::size_t i_, std::size_t j_)
    : MetricError(fmt("asymmetric matrix at (%zu,%zu)", i_, j_)), i(i_), j(j_) {}

NegativeDistance::NegativeDistance(std::size_t i_, std::size_t j_, double v)
    : MetricError(fmt("negative distance at (%zu,%zu)", i_, j_)), i(i_), j(j_), value(v) {}

TriangleViolation::TriangleViolation(std::size_t i_, std::size_t k_, std::size_t j_, double s)
    : MetricError(fmt("triangle inequality fails for d(%zu,%zu)", i_, k_) + " via " +
                  std::to_string(j_)),
      i(i_), k(k_), j(j_), slack(s) {}

std::size_t FiniteMetricSpace::index_of(const std::string& label) const
{
    auto r = find(label);
    if (!r) throw MetricError("unknown point label '" + label + "'");
    return *r;
}

std::optional<std::size_t> FiniteMetricSpace::find(const std::string& label) const
{
    for (std::size_t i = 0; i < n_; ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

double FiniteMetricSpace::diameter() const
{
    double m = 0;
    for (double v : dist_) m = std::max(m, v);
    return m;
}

FiniteMetricSpace validate_metric(std::vector<std::vector<double>> raw, double tol_metric,
                                  std::vector<std::string> labels,
                                  std::optional<std::vector<Point2>> coords)
{
    const std::size_t n = raw.size();
    if (n == 0) throw MalformedMatrix("empty matrix");
    for (auto& row : raw)
        if (row.size() != n) throw MalformedMatrix("matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!std::isfinite(raw[i][j])) throw MalformedMatrix("non-finite entry");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (raw[i][j] < 0) throw NegativeDistance(i, j, raw[i][j]);
            if (raw[i][j] != raw[j][i]) throw AsymmetricMatrix(std::min(i, j), std::max(i, j));
        }
    for (std::size_t i = 0; i < n; ++i) {
        if (raw[i][i] != 0) throw MalformedMatrix("nonzero diagonal");
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && raw[i][j] == 0)
                throw MalformedMatrix(fmt("distinct points %zu,%zu at distance 0", i, j));
    }
    // report the worst violation, lowest indices first
    double worst = 0;
    std::size_t wi = 0, wj = 0, wk = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) {
                double s = raw[i][k] - (raw[i][j] + raw[j][k]);
                if (s > tol_metric && s > worst) {
                    worst = s;
                    wi = i, wk = k, wj = j;
                }
            }
    if (worst > 0) throw TriangleViolation(wi, wk, wj, worst);

    if (labels.empty())
        for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    if (labels.size() != n) throw MalformedMatrix("label count does not match matrix");
    if (coords && coords->size() != n) throw MalformedMatrix("coordinate count does not match");

    FiniteMetricSpace X;
    X.n_ = n;
    X.dist_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) X.dist_[i * n + j] = raw[i][j];
    X.labels_ = std::move(labels);
    X.coords_ = std::move(coords);
    return X;
}

std::vector<double> candidate_scales(const FiniteMetricSpace& X)
{
    std::vector<double> out;
    const std::size_t n = X.size();
    out.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) out.push_back(X.d(i, j));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t scale_interval(const std::vector<double>& cands, double eps)
{
    return std::lower_bound(cands.begin(), cands.end(), eps) - cands.begin();
}

double representative_scale(double lo, double hi)
{
    if (!std::isfinite(hi)) hi = lo > 0 ? 2 * lo : 1.0;
    if (hi <= lo) return hi;
    // prefer the upper end when it prints short
    for (int p = 1; p <= 17; ++p) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*e", p - 1, hi);
        double v = std::strtod(buf, nullptr);
        if (v > lo && v <= hi) return v;
        std::snprintf(buf, sizeof buf, "%.*e", p - 1, lo + (hi - lo) / 2);
        v = std::strtod(buf, nullptr);
        if (v > lo && v <= hi) return v;
    }
    return hi;
}

double connectivity_threshold(const FiniteMetricSpace& X)
{
    // Prim on the complete graph
    const std::size_t n = X.size();
    if (n < 2) return 0;
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<char> in(n, 0);
    best[0] = 0;
    double worst = 0;
    for (std::size_t it = 0; it < n; ++it) {
        std::size_t u = n;
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v] && (u == n || best[v] < best[u])) u = v;
        in[u] = 1;
        worst = std::max(worst, best[u]);
        for (std::size_t v = 0; v < n; ++v)
            if (!in[v]) best[v] = std::min(best[v], X.d(u, v));
    }
    return worst;
}

}  // namespace crispec
