#pragma once

#include <string>
#include <vector>

#include "crispec/gap.hpp"
#include "crispec/metric.hpp"
#include "crispec/nullity.hpp"

namespace crispec {

struct CriticalValue {
    double value = 0;
    double below = 0, above = 0;  // scales representing the intervals on either side
    std::vector<std::string> flags;
    std::vector<LoopWitness> loops;
    std::vector<PairWitness> pairs;
    std::size_t pair_total = 0;
    std::vector<std::string> notes;

    bool has(const std::string& f) const;
};

struct ConsistencyCheck {
    std::string name;
    bool passed = true;
    std::string detail;
};

struct SpectrumReport {
    std::size_t n = 0;
    double diameter = 0;
    double connectivity = 0;  // below this the space is not chain connected
    Index basepoint = 0;
    std::vector<double> candidates;
    std::size_t examined = 0;
    std::vector<CriticalValue> critical_values;
    std::vector<ConsistencyCheck> consistency;

    bool has_unknown() const;
    bool consistent() const;
};

struct SpectrumOptions {
    Budget budget;
    std::size_t max_witnesses = 256;
    int threads = 1;
};

// Candidate scales at and below the connectivity threshold are not examined:
// there every sample splits into pieces and each adjacent pair is a gap.
SpectrumReport compute_spectrum(const FiniteMetricSpace& X, Index basepoint, const SpectrumOptions& opt = {});

// Flag rules that every report must satisfy; appended to the report's consistency block.
std::vector<ConsistencyCheck> flag_checks(const SpectrumReport& r);

struct GapDetection {
    std::vector<GapCertificate> gaps;
    std::vector<std::string> disagreements;  // certified gaps that refine_check could refine
};

GapDetection detect_essential_gaps(const FiniteMetricSpace& X, const Budget& budget = {}, int threads = 1);

// Whether x and y are joined by a chain with hops below l inside B(x, delta).
bool ball_chain_connected(const FiniteMetricSpace& X, Index x, Index y, double l, double delta);

}  // namespace crispec
