#include "doctest.h"
#include "property_suite.hpp"

namespace {

void expect_clean(const props::Tally& t)
{
    MESSAGE(t.checks, " checks");
    CHECK(t.checks > 0);
    for (const auto& v : t.violations) FAIL_CHECK(v);
}

}  // namespace

TEST_CASE("intrinsic metric properties")
{
    for (std::uint64_t s = 0; s < 10; ++s) expect_clean(props::intrinsic_properties(s));
}

TEST_CASE("gap number invariance")
{
    for (std::uint64_t s = 0; s < 10; ++s) expect_clean(props::gap_invariance(s));
}

TEST_CASE("complete cover balls are simply connected")
{
    for (std::uint64_t s = 0; s < 10; ++s) expect_clean(props::cover_probe(s));
}

TEST_CASE("report invariants")
{
    for (std::uint64_t s = 0; s < 10; ++s) expect_clean(props::report_invariants(s));
}
