#pragma once

#include <string>
#include <vector>

#include "crispec/metric.hpp"

namespace crispec {

class MeshTooCoarse : public MetricError {
public:
    MeshTooCoarse(double mesh, double limit);
    double mesh, limit;
};

// Unset numeric fields (0) fall back to per-kind defaults.
struct GeneratorSpec {
    std::string kind;                    // circle, circle-with-gap, square-boundary, hawaiian-earring,
                                         // rapunzel-comb-v0 .. rapunzel-comb-v3
    double circumference = 1.0;          // circle kinds
    int n = 0;                           // sample count for circle kinds
    double gap = 0.25;                   // circle-with-gap: removed arc as a fraction of C
    double side = 1.0;                   // square
    double mesh = 0.0;                   // max spacing of samples along each segment
    std::vector<double> circumferences;  // hawaiian earring, decreasing
    int teeth = 6;                       // combs: teeth indexed 0..N (v0) or 1..N
    double extra_gap = 0.6;              // comb v3: the added short gap l < 1
};

std::vector<std::string> generator_kinds();

FiniteMetricSpace generate(const GeneratorSpec& spec);

// Largest spacing between neighbouring samples that `generate` will produce.
double sample_mesh(const GeneratorSpec& spec);

// Label of the natural basepoint of a generated space.
std::string default_basepoint(const GeneratorSpec& spec);

}  // namespace crispec
