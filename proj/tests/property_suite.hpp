#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace props {

struct Tally {
    std::size_t checks = 0;
    std::vector<std::string> violations;
    void check(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok && violations.size() < 50) violations.push_back(what);
        else if (!ok) violations.back() = "(more) " + what;
    }
    void merge(const Tally& o)
    {
        checks += o.checks;
        violations.insert(violations.end(), o.violations.begin(), o.violations.end());
    }
};

// D_eps monotone in eps, d <= D, equality below the scale, D <= M d
Tally intrinsic_properties(std::uint64_t seed);
// gap numbers survive 200 random basic moves; short-hop chains never cross
Tally gap_invariance(std::uint64_t seed);
// every complete cover ball is simply connected
Tally cover_probe(std::uint64_t seed);
// flag implications and finite-space classification in every report
Tally report_invariants(std::uint64_t seed);

}  // namespace props
