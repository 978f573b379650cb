#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crispec/chain.hpp"
#include "crispec/gap.hpp"
#include "crispec/pi1.hpp"

namespace crispec {

struct Budget {
    std::size_t search_states = 200000;  // refinement path search
    std::size_t cover_vertices = 0;      // 0: 10 * n
};

struct NullityVerdict {
    enum Status { Null, NonNull, Unknown } status = Unknown;
    HomotopyTrace trace;      // Null: loop -> constant loop
    std::string certificate;  // NonNull: h1-nonzero | free-reduced-nontrivial | gap-number | cover-open
    Word word;                // loop word over the live generators
    std::string report;       // Unknown: what ran out
};

const char* to_string(NullityVerdict::Status s);

NullityVerdict decide_null(const Pi1Engine& E, const std::vector<Index>& loop);
NullityVerdict decide_null(const FiniteMetricSpace& X, double eps, const std::vector<Index>& loop,
                           const Budget& budget = {});

struct RefineVerdict {
    enum Status { Refinable, NotRefinable, Unknown } status = Unknown;
    HomotopyTrace trace;           // Refinable: {x, y} -> refined chain
    std::vector<Index> refined;    // its end chain, all hops below eps_lo
    std::string certificate;       // NotRefinable: gap-number | subgroup-nonmember | disconnected-below
    std::optional<GapCertificate> gap;
    std::string report;
};

const char* to_string(RefineVerdict::Status s);

// Gap certificate for {x, y} valid on all of (d(x,y), hi], provided lo <= d(x,y) < hi.
std::optional<GapCertificate> covering_gap(const FiniteMetricSpace& X, Index x, Index y, double lo, double hi,
                                           double eps_star_hint = 0);

// lo and hi must be engines of the same space at eps_lo < eps_hi.
RefineVerdict refine_check(const FiniteMetricSpace& X, const Pi1Engine& lo, const Pi1Engine& hi, Index x, Index y,
                           const Budget& budget = {});
RefineVerdict refine_check(const FiniteMetricSpace& X, double eps_hi, double eps_lo, Index x, Index y,
                           const Budget& budget = {});

struct LoopWitness {
    std::vector<Index> loop;  // eps_lo-loop, not eps_lo-null, eps_hi-null
    double lo_scale = 0, hi_scale = 0;
    std::string lo_certificate;
    HomotopyTrace hi_trace;
};

struct PairWitness {
    Index x = 0, y = 0;
    std::string certificate;
    std::optional<GapCertificate> gap;
};

struct InducedMapReport {
    enum Verdict { Yes, No, Unknown };
    Verdict injective = Yes, surjective = Yes;
    std::string injective_method, surjective_method;
    std::vector<LoopWitness> kernel;       // non-injectivity witnesses
    std::vector<PairWitness> unrefinable;  // non-surjectivity witnesses
    std::size_t unrefinable_total = 0;     // witnesses are capped; this is not
    std::vector<std::string> notes;
};

const char* to_string(InducedMapReport::Verdict v);

// What the map from the lower group needs to know about the lower scale.
struct LowerSide {
    double scale = 0;
    bool free = true;
    std::vector<std::vector<Index>> loops;  // loops at base generating the lower group
    std::vector<std::string> certificates;  // non-null certificate of each loop below, "" if none
    std::vector<std::pair<Index, Index>> new_edges;  // edges present above only
    std::function<bool(Index, Index)> connected;
};

InducedMapReport induced_map_report(const FiniteMetricSpace& X, const Pi1Engine& hi, Index base,
                                    const LowerSide& lo, double gap_hint = 0, std::size_t max_witnesses = 256);
// lo and hi are engines of X at two scales
InducedMapReport induced_map_report(const FiniteMetricSpace& X, const Pi1Engine& lo, const Pi1Engine& hi,
                                    Index base, std::size_t max_witnesses = 256);
InducedMapReport induced_map_report(const FiniteMetricSpace& X, double eps_lo, double eps_hi, Index base,
                                    std::size_t max_witnesses = 256);

}  // namespace crispec
