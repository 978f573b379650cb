#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "crispec/io.hpp"
#include "crispec/spectrum.hpp"

using namespace crispec;

namespace {

const CriticalValue* near(const SpectrumReport& r, double v, double tol)
{
    for (const auto& cv : r.critical_values)
        if (std::abs(cv.value - v) <= tol) return &cv;
    return nullptr;
}

void all_checks_pass(const SpectrumReport& r)
{
    for (const auto& c : r.consistency) CHECK_MESSAGE(c.passed, c.name, ": ", c.detail);
    CHECK_FALSE(r.has_unknown());
}

}  // namespace

TEST_CASE("circle spectrum")
{
    auto C = testutil::circle(60);
    auto r = compute_spectrum(C, 0);
    all_checks_pass(r);
    REQUIRE(r.critical_values.size() == 1);
    const auto& cv = r.critical_values[0];
    CHECK(std::abs(cv.value - 1.0 / 3) <= 2.0 / 60);
    CHECK(cv.has("homotopy"));
    CHECK(cv.has("upper-non-injective"));
    CHECK_FALSE(cv.has("refinement"));
    CHECK_FALSE(cv.loops.empty());
    CHECK(r.connectivity == doctest::Approx(1.0 / 60));
}

TEST_CASE("circle with gap spectrum")
{
    GeneratorSpec g;
    g.kind = "circle-with-gap";
    g.n = 80;
    auto X = generate(g);
    auto r = compute_spectrum(X, X.index_of(default_basepoint(g)));
    all_checks_pass(r);
    CHECK(r.critical_values.size() == 2);
    auto* q = near(r, 0.25, 2.0 / 80);
    REQUIRE(q);
    CHECK(q->has("refinement"));
    auto* t = near(r, 1.0 / 3, 2.0 / 80);
    REQUIRE(t);
    CHECK(t->has("homotopy"));
}

TEST_CASE("flag checks reject bad reports")
{
    SpectrumReport r;
    CriticalValue cv;
    cv.value = 1;
    cv.flags = {"homotopy"};
    r.critical_values.push_back(cv);
    bool failed = false;
    for (const auto& c : flag_checks(r)) failed |= !c.passed;
    CHECK(failed);

    r.critical_values[0].flags = {"homotopy", "upper-non-injective", "lower-non-surjective"};
    failed = false;
    for (const auto& c : flag_checks(r)) failed |= !c.passed;
    CHECK(failed);

    r.critical_values[0].flags = {"refinement", "upper-non-surjective"};
    for (const auto& c : flag_checks(r)) CHECK(c.passed);
}

TEST_CASE("reports are deterministic and thread independent")
{
    GeneratorSpec g;
    g.kind = "hawaiian-earring";
    auto X = generate(g);
    auto base = X.index_of(default_basepoint(g));
    SpectrumOptions o1, o4;
    o4.threads = 4;
    auto a = to_json(X, compute_spectrum(X, base, o1)).dump();
    auto b = to_json(X, compute_spectrum(X, base, o1)).dump();
    auto c = to_json(X, compute_spectrum(X, base, o4)).dump();
    CHECK(a == b);
    CHECK(a == c);

    auto g1 = detect_essential_gaps(X, {}, 1);
    auto g3 = detect_essential_gaps(X, {}, 3);
    REQUIRE(g1.gaps.size() == g3.gaps.size());
    for (std::size_t i = 0; i < g1.gaps.size(); ++i) CHECK(to_json(X, g1.gaps[i]) == to_json(X, g3.gaps[i]));
}

TEST_CASE("ball chain connectivity")
{
    auto L = testutil::line({0, 0.4, 0.8, 1.2});
    CHECK(ball_chain_connected(L, 0, 3, 0.5, 2));
    CHECK_FALSE(ball_chain_connected(L, 0, 3, 0.5, 0.9));
    CHECK_FALSE(ball_chain_connected(L, 0, 3, 0.3, 2));
}
