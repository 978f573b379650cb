#include "crispec/gap.hpp"

#include <algorithm>

namespace crispec {

std::vector<Index> gap_ball(const FiniteMetricSpace& X, Index x, double radius)
{
    std::vector<Index> out;
    for (Index z = 0; z < X.size(); ++z)
        if (X.d(x, z) < radius) out.push_back(z);
    return out;
}

bool gap_partition_holds(const FiniteMetricSpace& X, Index x, Index y, double eps, std::string* why,
                         std::array<Index, 3>* triple)
{
    auto fail = [&](const char* msg, Index a, Index b, Index c) {
        if (why) *why = msg;
        if (triple) *triple = {a, b, c};
        return false;
    };
    const double l = X.d(x, y);
    const double r = eps - l;
    if (r <= 0) return fail("scale not above the pair distance", x, y, x);
    const auto bx = gap_ball(X, x, r), by = gap_ball(X, y, r);
    std::vector<char> side(X.size(), 0);
    for (auto z : bx) side[z] = 1;
    for (auto z : by) {
        if (side[z]) return fail("balls overlap", x, y, z);
        side[z] = 2;
    }
    for (auto u : bx)
        for (auto v : by)
            if (X.d(u, v) < l) return fail("balls closer than the pair", u, v, u);
    for (Index z = 0; z < X.size(); ++z) {
        if (side[z]) continue;
        auto near = [&](const std::vector<Index>& B) -> std::optional<Index> {
            for (auto u : B)
                if (X.d(z, u) < eps) return u;
            return std::nullopt;
        };
        auto u = near(bx);
        if (!u) continue;
        if (auto v = near(by)) return fail("outside point close to both balls", *u, *v, z);
    }
    return true;
}

GapCheck check_pre_essential_gap(const FiniteMetricSpace& X, Index x, Index y, double eps_star_hint)
{
    return check_pre_essential_gap(X, candidate_scales(X), x, y, eps_star_hint);
}

GapCheck check_pre_essential_gap(const FiniteMetricSpace& X, const std::vector<double>& cands, Index x, Index y,
                                 double eps_star_hint)
{
    GapCheck out;
    const double l = X.d(x, y);
    auto above = std::upper_bound(cands.begin(), cands.end(), l);
    double star = eps_star_hint;
    if (star <= l) star = above == cands.end() ? 2 * l : *above;
    {
        // most pairs already fail on the first piece
        double first = star;
        if (above != cands.end()) first = std::min(first, *above);
        for (Index z = 0; z < X.size(); ++z)
            for (double t : {X.d(x, z) + l, X.d(y, z) + l})
                if (t > l) first = std::min(first, t);
        std::string why;
        std::array<Index, 3> tri{};
        if (!gap_partition_holds(X, x, y, first, &why, &tri)) {
            out.reason = why;
            out.triple = tri;
            out.scale = first;
            return out;
        }
    }
    std::vector<double> cuts{star};
    for (auto it = above; it != cands.end() && *it < star; ++it) cuts.push_back(*it);
    for (Index z = 0; z < X.size(); ++z)
        for (double t : {X.d(x, z) + l, X.d(y, z) + l})
            if (t > l && t < star) cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    GapCertificate cert;
    cert.x = x;
    cert.y = y;
    cert.l = l;
    cert.eps_star = star;
    bool prefix = true;
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        std::string why;
        std::array<Index, 3> tri{};
        if (gap_partition_holds(X, x, y, cuts[k], &why, &tri)) {
            cert.feasible_scales.push_back(cuts[k]);
            if (prefix) cert.certified_up_to = cuts[k];
        } else {
            if (k == 0) {
                out.reason = why;
                out.triple = tri;
                out.scale = cuts[k];
                return out;  // fails just above l
            }
            prefix = false;
        }
    }
    out.certificate = cert;
    return out;
}

int gap_number(const FiniteMetricSpace& X, const std::vector<Index>& c, Index x, Index y, double eps)
{
    const double r = eps - X.d(x, y);
    auto side = [&](Index z) { return X.d(x, z) < r ? 1 : X.d(y, z) < r ? 2 : 0; };
    int g = 0;
    for (std::size_t i = 1; i < c.size(); ++i) {
        int a = side(c[i - 1]), b = side(c[i]);
        if (a == 1 && b == 2) ++g;
        if (a == 2 && b == 1) --g;
    }
    return g;
}

}  // namespace crispec
