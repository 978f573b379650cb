#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "crispec/chain.hpp"
#include "crispec/cover.hpp"
#include "crispec/gap.hpp"
#include "crispec/generators.hpp"
#include "crispec/intrinsic.hpp"
#include "crispec/metric.hpp"
#include "crispec/nullity.hpp"
#include "crispec/pi1.hpp"
#include "crispec/spectrum.hpp"

namespace crispec {

using Json = nlohmann::ordered_json;

// 12 significant digits, the precision of every reported number
double round12(double v);
std::string fmt12(double v);

// A space together with the generator that produced it, when there is one.
struct SpaceSource {
    FiniteMetricSpace space;
    std::optional<GeneratorSpec> generator;
};

// CSV: first row labels, then the full matrix.
FiniteMetricSpace read_matrix_csv(std::istream& in, double tol_metric = 0);
void write_matrix_csv(std::ostream& out, const FiniteMetricSpace& X);

// {"points":[{"label","x","y"}],"metric":"euclidean"}, {"circle":{"circumference"},"params":[...]},
// {"labels":[...],"matrix":[[...]]} or {"generator":{...}}
SpaceSource space_from_json(const Json& j, double tol_metric = 0);
// by extension: .csv or .json
SpaceSource load_space(const std::string& path, double tol_metric = 0);
// exact: the generator spec when known, else labels and a full-precision matrix
Json space_to_json(const SpaceSource& s);

GeneratorSpec spec_from_json(const Json& j);
Json spec_to_json(const GeneratorSpec& s);

Json chain_to_json(const FiniteMetricSpace& X, const std::vector<Index>& c);
std::vector<Index> chain_from_json(const FiniteMetricSpace& X, const Json& j);

Json trace_to_json(const FiniteMetricSpace& X, const HomotopyTrace& h);
HomotopyTrace trace_from_json(const FiniteMetricSpace& X, const Json& j);

Json to_json(const FiniteMetricSpace& X, const NullityVerdict& v);
Json to_json(const FiniteMetricSpace& X, const RefineVerdict& v);
Json to_json(const FiniteMetricSpace& X, const GapCertificate& g);
Json to_json(const FiniteMetricSpace& X, const SpectrumReport& r);
Json to_json(const FiniteMetricSpace& X, const CoverBall& b);
Json to_json(const FiniteMetricSpace& X, const Presentation& p, const H1Invariants& h1);
Json to_json(const FiniteMetricSpace& X, const IntrinsicMetricResult& r);

// number line with the critical values, coloured by type
std::string spectrum_svg(const SpectrumReport& r);

}  // namespace crispec
