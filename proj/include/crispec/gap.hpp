#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "crispec/chain.hpp"
#include "crispec/metric.hpp"

namespace crispec {

// Pair (x, y) at distance l with a local two-sided partition around it.
struct GapCertificate {
    Index x = 0, y = 0;
    double l = 0;
    double eps_star = 0;
    // right ends of the pieces of (l, eps_star] on which the partition exists;
    // the conditions only change just above a breakpoint, so each value stands
    // for the whole piece (previous breakpoint, value]
    std::vector<double> feasible_scales;
    // the partition exists on all of (l, certified_up_to]; 0 if not even just above l
    double certified_up_to = 0;
    // no pair across the balls is closer than l, at every feasible scale
    bool dist_condition = true;
    std::string dist_condition_note = "finite-space-trivial";

    bool essential() const { return certified_up_to > l && dist_condition; }
};

struct GapCheck {
    std::optional<GapCertificate> certificate;  // set iff some scale in (l, eps_star] is feasible
    // first obstruction found just above l
    std::string reason;
    std::array<Index, 3> triple{};  // x-side point, y-side point, offending point
    double scale = 0;

    bool feasible() const { return certificate && certificate->essential(); }
};

// Points strictly within `radius` of x.
std::vector<Index> gap_ball(const FiniteMetricSpace& X, Index x, double radius);

// Whether the partition exists at eps; fills `why`/`triple` when it does not.
bool gap_partition_holds(const FiniteMetricSpace& X, Index x, Index y, double eps, std::string* why = nullptr,
                         std::array<Index, 3>* triple = nullptr);

// eps_star_hint <= 0 means the next candidate scale above d(x, y).
GapCheck check_pre_essential_gap(const FiniteMetricSpace& X, Index x, Index y, double eps_star_hint = 0);
// same, with candidate_scales(X) supplied
GapCheck check_pre_essential_gap(const FiniteMetricSpace& X, const std::vector<double>& cands, Index x, Index y,
                                 double eps_star_hint = 0);

// Net signed number of B_x -> B_y crossings of c at scale eps.
int gap_number(const FiniteMetricSpace& X, const std::vector<Index>& c, Index x, Index y, double eps);

}  // namespace crispec
