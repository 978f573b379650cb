#include "crispec/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace crispec {

MeshTooCoarse::MeshTooCoarse(double m, double l)
    : MetricError("mesh " + std::to_string(m) + " must be below " + std::to_string(l)), mesh(m),
      limit(l) {}

std::vector<std::string> generator_kinds()
{
    return {"circle",           "circle-with-gap",  "square-boundary",  "hawaiian-earring",
            "rapunzel-comb-v0", "rapunzel-comb-v1", "rapunzel-comb-v2", "rapunzel-comb-v3"};
}

namespace {

using Matrix = std::vector<std::vector<double>>;

bool is_comb(const std::string& k) { return k.rfind("rapunzel-comb-v", 0) == 0; }

int circle_count(const GeneratorSpec& s)
{
    if (s.n > 0) return s.n;
    if (s.mesh > 0) return static_cast<int>(std::ceil(s.circumference / s.mesh));
    return 200;
}

std::vector<double> hawaiian_circles(const GeneratorSpec& s)
{
    if (!s.circumferences.empty()) return s.circumferences;
    return {1.0, 0.5};
}

double default_mesh(const GeneratorSpec& s)
{
    const std::string& k = s.kind;
    if (k == "square-boundary") return s.side / 100;
    if (k == "hawaiian-earring") return hawaiian_circles(s).back() / 32;
    if (k == "rapunzel-comb-v0") return 1.0 / 8;
    if (k == "rapunzel-comb-v1" || k == "rapunzel-comb-v2") return 1.0 / 16;
    if (k == "rapunzel-comb-v3") return 1.0 / 8;
    return 0;
}

// shortest feature the sample has to resolve; 0 when there is none
double feature_length(const GeneratorSpec& s)
{
    const std::string& k = s.kind;
    if (k == "circle-with-gap") return s.gap * s.circumference;
    if (k == "square-boundary") return s.side;
    if (k == "hawaiian-earring") return hawaiian_circles(s).back();
    if (k == "rapunzel-comb-v0") return 1.0;
    if (k == "rapunzel-comb-v1" || k == "rapunzel-comb-v2") return 0.5;
    if (k == "rapunzel-comb-v3") return s.extra_gap;
    return 0;
}

void check_spec(const GeneratorSpec& s)
{
    auto kinds = generator_kinds();
    if (std::find(kinds.begin(), kinds.end(), s.kind) == kinds.end())
        throw MetricError("unknown generator kind '" + s.kind + "'");
    if (s.circumference <= 0 || s.side <= 0 || s.mesh < 0)
        throw MetricError("lengths must be positive");
    if (s.kind == "circle-with-gap" && (s.gap <= 0 || s.gap >= 0.5))
        throw MetricError("gap fraction must lie in (0, 1/2)");
    if (is_comb(s.kind) && s.teeth < 2) throw MetricError("teeth count must be at least 2");
    if (s.kind == "rapunzel-comb-v3" && (s.extra_gap <= 0 || s.extra_gap >= 1))
        throw MetricError("extra gap must lie in (0, 1)");
    if (s.kind == "hawaiian-earring") {
        auto c = hawaiian_circles(s);
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] <= 0 || (i && c[i] >= c[i - 1]))
                throw MetricError("circumferences must be positive and decreasing");
    }
    if ((s.kind == "circle" || s.kind == "circle-with-gap") && circle_count(s) < 3)
        throw MetricError("need at least 3 samples");
    double f = feature_length(s);
    double m = sample_mesh(s);
    if (f > 0 && !(m < f / 4)) throw MeshTooCoarse(m, f / 4);
}

// Pull together distances that agree to ~1e-12 relative, preferring an exact
// special value when one falls in the cluster, so that mathematically equal
// distances compare equal under the strict scale test.
void snap_distances(Matrix& D, const std::vector<double>& specials)
{
    const std::size_t n = D.size();
    std::vector<double> vals;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) vals.push_back(D[i][j]);
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    std::map<double, double> to;
    const double rel = 1e-12;
    for (std::size_t a = 0; a < vals.size();) {
        std::size_t b = a + 1;
        while (b < vals.size() && vals[b] - vals[b - 1] <= rel * vals[b]) ++b;
        double rep = vals[a];
        for (double sp : specials)
            if (std::abs(sp - vals[a]) <= rel * sp * 4 || (sp >= vals[a] && sp <= vals[b - 1])) rep = sp;
        for (std::size_t c = a; c < b; ++c) to[vals[c]] = rep;
        a = b;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) D[i][j] = to[D[i][j]];
}

struct Polyline {
    std::vector<Point2> pts;
    std::vector<std::string> labels;
    std::map<std::pair<double, double>, std::size_t> where;

    std::size_t add(Point2 p, const std::string& label = "")
    {
        auto key = std::make_pair(p.x, p.y);
        auto it = where.find(key);
        if (it != where.end()) {
            if (!label.empty()) labels[it->second] = label;
            return it->second;
        }
        where[key] = pts.size();
        pts.push_back(p);
        labels.push_back(label);
        return pts.size() - 1;
    }

    // samples P..Q inclusive with spacing at most h
    void segment(Point2 P, Point2 Q, double h)
    {
        double len = std::hypot(Q.x - P.x, Q.y - P.y);
        int k = std::max(1, static_cast<int>(std::ceil(len / h - 1e-12)));
        for (int i = 0; i <= k; ++i) {
            Point2 p{P.x + (Q.x - P.x) * i / k, P.y + (Q.y - P.y) * i / k};
            if (i == 0) p = P;
            if (i == k) p = Q;
            add(p);
        }
    }

    FiniteMetricSpace finish(const std::vector<double>& specials)
    {
        const std::size_t n = pts.size();
        Matrix D(n, std::vector<double>(n, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                double dx = pts[i].x - pts[j].x, dy = pts[i].y - pts[j].y;
                D[i][j] = D[j][i] = std::sqrt(dx * dx + dy * dy);
            }
        snap_distances(D, specials);
        double diam = 0;
        for (auto& row : D)
            for (double v : row) diam = std::max(diam, v);
        std::size_t k = 0;
        for (auto& l : labels)
            if (l.empty()) l = "s" + std::to_string(k++);
        return validate_metric(std::move(D), 1e-9 * diam, labels, pts);
    }
};

FiniteMetricSpace make_circle(const GeneratorSpec& s)
{
    const int n = circle_count(s);
    const double C = s.circumference;
    Matrix D(n, std::vector<double>(n, 0.0));
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int m = std::min(j - i, n - (j - i));
            D[i][j] = D[j][i] = (m * C) / n;
        }
    std::vector<Point2> pts;
    for (int i = 0; i < n; ++i) {
        double t = 2 * M_PI * i / n;
        pts.push_back({C / (2 * M_PI) * std::cos(t), C / (2 * M_PI) * std::sin(t)});
    }
    return validate_metric(std::move(D), 1e-9 * C, labels, pts);
}

// Samples the closed arc from b (t = 0) to a (t = C(1-g)); the open arc a..b is removed.
FiniteMetricSpace make_circle_with_gap(const GeneratorSpec& s)
{
    const int n = circle_count(s);
    const double C = s.circumference;
    const double L = C * (1 - s.gap);
    Matrix D(n, std::vector<double>(n, 0.0));
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    labels.front() = "b";
    labels.back() = "a";
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double along = ((j - i) * L) / (n - 1);
            D[i][j] = D[j][i] = std::min(along, C - along);
        }
    std::vector<Point2> pts;
    for (int i = 0; i < n; ++i) {
        double t = 2 * M_PI * ((i * L) / (n - 1)) / C;
        pts.push_back({C / (2 * M_PI) * std::cos(t), C / (2 * M_PI) * std::sin(t)});
    }
    return validate_metric(std::move(D), 1e-9 * C, labels, pts);
}

// Opposite sides are sampled half a step out of phase. With aligned samples
// the chords of length exactly s would open a spurious gap at s.
FiniteMetricSpace make_square(const GeneratorSpec& s)
{
    const double h = sample_mesh(s);
    const int m = static_cast<int>(std::llround(s.side / h));
    const double unit = s.side / (2.0 * m);
    std::vector<std::pair<int, int>> q;
    std::vector<std::string> labels;
    auto put = [&](int x, int y, std::string l) {
        q.emplace_back(x, y);
        labels.push_back(std::move(l));
    };
    const int M = 2 * m;
    int k = 0;
    put(0, 0, "c00");
    for (int i = 1; i < m; ++i) put(2 * i, 0, "s" + std::to_string(k++));
    put(M, 0, "c10");
    for (int i = 0; i < m; ++i) put(M, 2 * i + 1, "s" + std::to_string(k++));
    put(M, M, "c11");
    for (int i = m - 1; i >= 0; --i) put(2 * i + 1, M, "s" + std::to_string(k++));
    put(0, M, "c01");
    for (int i = m - 1; i >= 1; --i) put(0, 2 * i, "s" + std::to_string(k++));
    const std::size_t n = q.size();
    Matrix D(n, std::vector<double>(n, 0.0));
    std::vector<Point2> pts;
    for (auto [x, y] : q) pts.push_back({x * unit, y * unit});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            long dx = q[i].first - q[j].first, dy = q[i].second - q[j].second;
            D[i][j] = D[j][i] = std::sqrt(static_cast<double>(dx * dx + dy * dy)) * unit;
        }
    return validate_metric(std::move(D), 1e-9 * 2 * s.side, labels, pts);
}

FiniteMetricSpace make_hawaiian(const GeneratorSpec& s)
{
    const double h = sample_mesh(s);
    auto circ = hawaiian_circles(s);
    struct P {
        int circle;
        int k, n;
    };
    std::vector<P> pts{{-1, 0, 1}};
    std::vector<std::string> labels{"w"};
    for (std::size_t c = 0; c < circ.size(); ++c) {
        int n = std::max(3, static_cast<int>(std::ceil(circ[c] / h - 1e-12)));
        for (int k = 1; k < n; ++k) {
            pts.push_back({static_cast<int>(c), k, n});
            labels.push_back("c" + std::to_string(c) + "_" + std::to_string(k));
        }
    }
    auto to_wedge = [&](const P& p) {
        if (p.circle < 0) return 0.0;
        int m = std::min(p.k, p.n - p.k);
        return (m * circ[p.circle]) / p.n;
    };
    const std::size_t n = pts.size();
    Matrix D(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double v;
            if (pts[i].circle >= 0 && pts[i].circle == pts[j].circle) {
                int diff = std::abs(pts[i].k - pts[j].k);
                int m = std::min(diff, pts[i].n - diff);
                v = (m * circ[pts[i].circle]) / pts[i].n;
            } else {
                v = to_wedge(pts[i]) + to_wedge(pts[j]);
            }
            D[i][j] = D[j][i] = v;
        }
    std::vector<double> none;
    snap_distances(D, none);
    return validate_metric(std::move(D), 1e-9 * 2 * circ[0], labels);
}

FiniteMetricSpace make_comb_v0(const GeneratorSpec& s)
{
    const double h = sample_mesh(s);
    const int N = s.teeth;
    Polyline pl;
    for (int n = 0; n <= N; ++n) {
        double y = std::ldexp(1.0, -n);
        pl.add({1, y}, "x" + std::to_string(n));
        pl.add({2, y}, "y" + std::to_string(n));
    }
    pl.add({1, 0}, "xinf");
    pl.add({2, 0}, "yinf");
    pl.add({1.5, 2}, "z0");
    for (int n = 0; n <= N; ++n) {
        double y = std::ldexp(1.0, -n);
        pl.segment({0, y}, {1, y}, h);
        pl.segment({2, y}, {3, y}, h);
    }
    pl.segment({0, 0}, {1, 0}, h);
    pl.segment({2, 0}, {3, 0}, h);
    // spines, broken at every tooth
    std::vector<double> ys{0};
    for (int n = N; n >= 0; --n) ys.push_back(std::ldexp(1.0, -n));
    ys.push_back(2);
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        pl.segment({0, ys[i]}, {0, ys[i + 1]}, h);
        pl.segment({3, ys[i]}, {3, ys[i + 1]}, h);
    }
    pl.segment({0, 2}, {1.5, 2}, h);
    pl.segment({1.5, 2}, {3, 2}, h);
    std::vector<double> specials{1.0};
    for (int k = 0; k <= N; ++k) specials.push_back(std::sqrt(1 + std::ldexp(1.0, -2 * k)));
    return pl.finish(specials);
}

// Variations 1-3 share the layout: teeth at heights sum_{i<n} h_i, limiting gap at H,
// top bar at H + 2. Variation 3 adds a short gap l above the limit.
FiniteMetricSpace make_comb_var(const GeneratorSpec& s, int variation)
{
    const double h = sample_mesh(s);
    const int N = s.teeth;
    auto height = [&](int i) {
        if (variation == 2) return std::sqrt(3.0) / std::pow(std::sqrt(2.0), i);
        return std::pow(2.0, -i / 2.0);
    };
    const double H = variation == 2 ? std::sqrt(3.0) + std::sqrt(6.0) : 1 + std::sqrt(2.0);
    const double top = H + 2;
    Polyline pl;
    std::vector<double> ys{0};
    double y = 0;
    for (int n = 1; n <= N; ++n) {
        double off = std::ldexp(1.0, -(n + 1));
        double xl = variation == 3 ? 1 - off : 1 + off;
        double xr = variation == 3 ? 2 + off : 2 - off;
        pl.add({xl, y}, "x" + std::to_string(n));
        pl.add({xr, y}, "y" + std::to_string(n));
        pl.segment({0, y}, {xl, y}, h);
        pl.segment({xr, y}, {3, y}, h);
        if (n > 1) ys.push_back(y);
        y += height(n);
    }
    pl.add({1, H}, "xinf");
    pl.add({2, H}, "yinf");
    pl.segment({0, H}, {1, H}, h);
    pl.segment({2, H}, {3, H}, h);
    ys.push_back(H);
    std::vector<double> specials{1.0};
    if (variation == 3) {
        // d(xinf, b) = d(yinf, a) = 1 fixes the height of the extra teeth
        const double l = s.extra_gap;
        const double half = (1 + l) / 2;
        const double lift = std::sqrt(1 - half * half);
        pl.add({1.5 - l / 2, H + lift}, "a");
        pl.add({1.5 + l / 2, H + lift}, "b");
        pl.segment({0, H + lift}, {1.5 - l / 2, H + lift}, h);
        pl.segment({1.5 + l / 2, H + lift}, {3, H + lift}, h);
        ys.push_back(H + lift);
        specials.push_back(l);
    }
    ys.push_back(top);
    for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
        pl.segment({0, ys[i]}, {0, ys[i + 1]}, h);
        pl.segment({3, ys[i]}, {3, ys[i + 1]}, h);
    }
    pl.add({1.5, top}, "z0");
    pl.segment({0, top}, {1.5, top}, h);
    pl.segment({1.5, top}, {3, top}, h);
    return pl.finish(specials);
}

}  // namespace

double sample_mesh(const GeneratorSpec& s)
{
    if (s.kind == "circle") return s.circumference / circle_count(s);
    if (s.kind == "circle-with-gap")
        return s.circumference * (1 - s.gap) / (circle_count(s) - 1);
    double m = s.mesh > 0 ? s.mesh : default_mesh(s);
    if (s.kind == "square-boundary") return s.side / std::max(1.0, std::round(s.side / m));
    return m;
}

std::string default_basepoint(const GeneratorSpec& s)
{
    if (s.kind == "circle") return "p0";
    if (s.kind == "circle-with-gap") return "p" + std::to_string((circle_count(s) - 1) / 2);
    if (s.kind == "square-boundary") return "c00";
    if (s.kind == "hawaiian-earring") return "w";
    return "z0";
}

FiniteMetricSpace generate(const GeneratorSpec& s)
{
    check_spec(s);
    if (s.kind == "circle") return make_circle(s);
    if (s.kind == "circle-with-gap") return make_circle_with_gap(s);
    if (s.kind == "square-boundary") return make_square(s);
    if (s.kind == "hawaiian-earring") return make_hawaiian(s);
    if (s.kind == "rapunzel-comb-v0") return make_comb_v0(s);
    if (s.kind == "rapunzel-comb-v1") return make_comb_var(s, 1);
    if (s.kind == "rapunzel-comb-v2") return make_comb_var(s, 2);
    return make_comb_var(s, 3);
}

}  // namespace crispec
