#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "crispec/gap.hpp"
#include "crispec/spectrum.hpp"

using namespace crispec;

namespace {

FiniteMetricSpace comb(const std::string& kind)
{
    GeneratorSpec g;
    g.kind = kind;
    return generate(g);
}

// polygonal outline sampled at spacing h, with the four named corners of the trapezoid
FiniteMetricSpace trapezoid_space(double L, double l1, double l2, double H, double h)
{
    std::vector<Point2> pts;
    std::vector<std::string> labels;
    auto seg = [&](Point2 a, Point2 b, bool last) {
        double len = std::hypot(b.x - a.x, b.y - a.y);
        int k = std::max(1, static_cast<int>(std::ceil(len / h)));
        for (int i = 0; i <= k - (last ? 0 : 1); ++i) {
            double t = static_cast<double>(i) / k;
            pts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
            labels.push_back("s" + std::to_string(labels.size()));
        }
    };
    Point2 x{(L - l1) / 2, H}, y{(L + l1) / 2, H}, u{(L - l2) / 2, 0}, v{(L + l2) / 2, 0};
    // left half: x -> (0,H) -> (0,0) -> u ; right half: y -> (L,H) -> (L,0) -> v
    seg(x, {0, H}, false);
    seg({0, H}, {0, 0}, false);
    seg({0, 0}, u, true);
    std::size_t left_end = pts.size();
    seg(y, {L, H}, false);
    seg({L, H}, {L, 0}, false);
    seg({L, 0}, v, true);
    labels[0] = "x";
    labels[left_end - 1] = "u";
    labels[left_end] = "y";
    labels.back() = "v";
    return testutil::planar(pts, labels);
}

}  // namespace

TEST_CASE("gap_number")
{
    auto K = comb("rapunzel-comb-v0");
    auto id = [&](const std::string& s) { return K.index_of(s); };
    const double eps = 1.0000001;
    for (int n = 0; n < 6; ++n) {
        auto xn = id("x" + std::to_string(n)), yn = id("y" + std::to_string(n));
        auto xm = id("x" + std::to_string(n + 1)), ym = id("y" + std::to_string(n + 1));
        CHECK(gap_number(K, {xn}, xn, yn, eps) == 0);
        CHECK(gap_number(K, {xn, yn}, xn, yn, eps) == 1);
        CHECK(gap_number(K, {yn, xn}, xn, yn, eps) == -1);
        CHECK(gap_number(K, {xn, xm, ym, yn, xn}, xn, yn, eps) == -1);
    }
}

TEST_CASE("pre-essential gaps on the comb")
{
    auto K = comb("rapunzel-comb-v0");
    for (int n = 0; n <= 5; ++n) {
        auto x = K.index_of("x" + std::to_string(n)), y = K.index_of("y" + std::to_string(n));
        double dn1 = std::sqrt(1 + std::pow(4.0, -(n + 1)));
        auto g = check_pre_essential_gap(K, x, y, dn1);
        REQUIRE_MESSAGE(g.feasible(), "tooth ", n, ": ", g.reason);
        CHECK(g.certificate->l == doctest::Approx(1));
        CHECK(g.certificate->dist_condition);
        CHECK(g.certificate->certified_up_to > 1);
        // feasible just above l
        CHECK(gap_partition_holds(K, x, y, 1.0000001));
    }
}

TEST_CASE("adjacent circle samples are not a gap past the next sample")
{
    auto C = testutil::circle(60);
    const double h = 1.0 / 60;
    std::string why;
    std::array<Index, 3> triple{};
    CHECK_FALSE(gap_partition_holds(C, 0, 1, 2.5 * h, &why, &triple));
    CHECK_FALSE(why.empty());
    // only the sub-mesh window (h, 2h] survives, where the sample has no chains at all below h
    auto g = check_pre_essential_gap(C, 0, 1, 0.1);
    REQUIRE(g.certificate);
    CHECK(g.certificate->certified_up_to <= 2 * h + 1e-12);
    CHECK(connectivity_threshold(C) >= g.certificate->l);
}

TEST_CASE("trapezoid gap")
{
    // L > 3 l1, l2 <= l1, diagonal sqrt(H^2 + ((l1+l2)/2)^2) = 1.25 > l1
    const double L = 4, l1 = 1, l2 = 0.5, H = 1;
    auto X = trapezoid_space(L, l1, l2, H, 0.05);
    auto x = X.index_of("x"), y = X.index_of("y");
    CHECK(X.d(x, X.index_of("v")) == doctest::Approx(1.25));
    const double eps_star = 1.2;  // below min(d, 2 l1, (L - l1) / 2)
    auto g = check_pre_essential_gap(X, x, y, eps_star);
    REQUIRE_MESSAGE(g.feasible(), g.reason);
    CHECK(g.certificate->l == doctest::Approx(l1));
    CHECK(g.certificate->certified_up_to >= eps_star);
    for (double e : {1.01, 1.1, 1.19}) CHECK(gap_partition_holds(X, x, y, e));

    // with a short diagonal the gap can be walked around
    auto Y = trapezoid_space(L, l1, l2, 0.3, 0.05);
    CHECK_FALSE(check_pre_essential_gap(Y, Y.index_of("x"), Y.index_of("y"), 1.2).feasible());
}

TEST_CASE("detect_essential_gaps")
{
    auto K = comb("rapunzel-comb-v0");
    auto det = detect_essential_gaps(K);
    CHECK(det.disagreements.empty());
    for (int k = 0; k <= 6; ++k) {
        auto x = K.index_of("x" + std::to_string(k)), y = K.index_of("y" + std::to_string(k));
        bool found = false;
        for (const auto& c : det.gaps)
            if (std::minmax(c.x, c.y) == std::minmax(x, y)) {
                found = true;
                CHECK(c.l == doctest::Approx(1));
            }
        CHECK_MESSAGE(found, "tooth ", k);
    }

    CHECK(detect_essential_gaps(testutil::circle(100)).gaps.empty());

    auto V3 = comb("rapunzel-comb-v3");
    auto xi = V3.index_of("xinf"), yi = V3.index_of("yinf");
    det = detect_essential_gaps(V3);
    CHECK(det.disagreements.empty());
    for (const auto& c : det.gaps) CHECK(std::minmax(c.x, c.y) != std::minmax(xi, yi));
}
