#include "crispec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "crispec/parallel.hpp"
#include "crispec/smith.hpp"

namespace crispec {

bool CriticalValue::has(const std::string& f) const
{
    return std::find(flags.begin(), flags.end(), f) != flags.end();
}

bool SpectrumReport::has_unknown() const
{
    return std::any_of(critical_values.begin(), critical_values.end(),
                       [](const CriticalValue& c) { return c.has("unknown"); });
}

bool SpectrumReport::consistent() const
{
    return std::all_of(consistency.begin(), consistency.end(), [](const ConsistencyCheck& c) { return c.passed; });
}

bool ball_chain_connected(const FiniteMetricSpace& X, Index x, Index y, double l, double delta)
{
    std::vector<char> seen(X.size(), 0);
    std::deque<Index> q{x};
    seen[x] = 1;
    while (!q.empty()) {
        Index u = q.front();
        q.pop_front();
        if (u == y) return true;
        for (Index w = 0; w < X.size(); ++w)
            if (!seen[w] && X.d(x, w) < delta && X.d(u, w) < l) {
                seen[w] = 1;
                q.push_back(w);
            }
    }
    return false;
}

namespace {

double above_scale(const std::vector<double>& c, std::size_t k)
{
    return representative_scale(c[k], k + 1 < c.size() ? c[k + 1] : std::numeric_limits<double>::infinity());
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

std::vector<ConsistencyCheck> witness_checks(const FiniteMetricSpace& X, const SpectrumReport& r)
{
    ConsistencyCheck closure{"spec-equals-closure", true, ""};
    ConsistencyCheck isolated{"isolated-values-witnessed", true, ""};
    ConsistencyCheck local{"local-connectivity", true, ""};
    std::size_t typed = 0, loops = 0, pairs = 0, gaps = 0, unwitnessed = 0;
    for (const auto& cv : r.critical_values) {
        bool h = cv.has("homotopy"), rf = cv.has("refinement");
        if (h || rf) ++typed;
        else if (!cv.has("unknown")) {
            closure.passed = false;
            closure.detail += "untyped value " + fmt(cv.value) + "; ";
        }
        if (h && cv.loops.empty()) ++unwitnessed;
        for (const auto& w : cv.loops) {
            ++loops;
            auto vr = verify_homotopy(X, w.hi_trace);
            bool lo_ok = is_valid_chain(X, Chain{w.loop, w.lo_scale}) && !w.lo_certificate.empty();
            bool end_ok = vr.accepted && vr.end.size() <= 2 && vr.end.front() == vr.end.back();
            if (!lo_ok || !end_ok) {
                isolated.passed = false;
                isolated.detail += "bad loop witness at " + fmt(cv.value) + "; ";
            }
        }
        if (rf && cv.pairs.empty()) ++unwitnessed;
        for (const auto& p : cv.pairs) {
            ++pairs;
            if (X.d(p.x, p.y) != cv.value) {
                isolated.passed = false;
                isolated.detail += "pair witness off value " + fmt(cv.value) + "; ";
            }
            if (!p.gap || !p.gap->essential()) continue;
            ++gaps;
            const double delta = p.gap->feasible_scales.front();
            if (ball_chain_connected(X, p.x, p.y, p.gap->l, delta) || ball_chain_connected(X, p.y, p.x, p.gap->l, delta)) {
                local.passed = false;
                local.detail += "balls connected below the gap " + X.label(p.x) + "," + X.label(p.y) + "; ";
            }
        }
    }
    closure.detail += std::to_string(typed) + " of " + std::to_string(r.critical_values.size()) +
                      " values are homotopy or refinement values";
    isolated.detail += std::to_string(loops) + " loop and " + std::to_string(pairs) + " pair witnesses checked";
    if (unwitnessed) isolated.detail += ", " + std::to_string(unwitnessed) + " values without explicit witness";
    local.detail += std::to_string(gaps) + " certified gaps checked";
    return {closure, isolated, local};
}

}  // namespace

std::vector<ConsistencyCheck> flag_checks(const SpectrumReport& r)
{
    ConsistencyCheck impl{"flag-implications", true, ""};
    ConsistencyCheck finite{"finite-space-classification", true, ""};
    for (const auto& cv : r.critical_values) {
        if ((cv.has("homotopy") && !cv.has("upper-non-injective")) ||
            (cv.has("refinement") && !cv.has("upper-non-surjective"))) {
            impl.passed = false;
            impl.detail += fmt(cv.value) + " ";
        }
        if (cv.has("lower-non-injective") || cv.has("lower-non-surjective")) {
            finite.passed = false;
            finite.detail += fmt(cv.value) + " ";
        }
    }
    if (impl.passed) impl.detail = "homotopy implies upper-non-injective, refinement implies upper-non-surjective";
    if (finite.passed) finite.detail = "no lower-non-injective or lower-non-surjective values";
    return {impl, finite};
}

SpectrumReport compute_spectrum(const FiniteMetricSpace& X, Index basepoint, const SpectrumOptions& opt)
{
    SpectrumReport rep;
    rep.n = X.size();
    rep.basepoint = basepoint;
    rep.diameter = X.diameter();
    rep.candidates = candidate_scales(X);
    const auto& c = rep.candidates;
    if (basepoint >= X.size()) throw std::invalid_argument("basepoint out of range");
    if (c.empty()) {
        rep.consistency = flag_checks(rep);
        return rep;
    }
    rep.connectivity = connectivity_threshold(X);
    const std::size_t k0 = static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), rep.connectivity) - c.begin());

    std::vector<std::tuple<double, Index, Index>> later;
    for (Index i = 0; i < X.size(); ++i)
        for (Index j = i + 1; j < X.size(); ++j)
            if (X.d(i, j) > rep.connectivity) later.emplace_back(X.d(i, j), i, j);
    std::sort(later.begin(), later.end());

    Pi1Engine E(build_graph(X, above_scale(c, k0)));
    std::size_t p = 0;
    for (std::size_t k = k0 + 1; k < c.size(); ++k) {
        std::vector<std::pair<Index, Index>> batch;
        for (; p < later.size() && std::get<0>(later[p]) == c[k]; ++p)
            batch.push_back({std::get<1>(later[p]), std::get<2>(later[p])});

        const double below = E.scale();
        const bool lo_free = E.is_free();
        const auto lo_alive = E.alive_generators();
        std::vector<Word> lo_rel;
        for (auto& r : E.residuals()) lo_rel.push_back(r.word);

        const double above = above_scale(c, k);
        const double hint = k + 1 < c.size() ? c[k + 1] : 0;
        auto change = E.add_edges(batch, above);
        ++rep.examined;
        if (change.created.empty() && change.eliminated.empty() && change.new_residuals == 0) continue;

        InducedMapReport m;
        if (change.eliminated.empty() && change.new_residuals == 0) {
            // new free factor: old generators stay a basis, new edges carrying a new letter are unrefinable
            m.injective_method = "basis-extension";
            m.surjective = InducedMapReport::No;
            const std::set<int> fresh(change.created.begin(), change.created.end());
            for (auto [u, v] : batch) {
                auto w = E.edge_word(u, v);
                if (std::none_of(w.begin(), w.end(), [&](Letter l) { return fresh.count(gen_of(l)); })) continue;
                ++m.unrefinable_total;
                if (m.unrefinable.size() < opt.max_witnesses)
                    m.unrefinable.push_back({u, v, "new-generator", covering_gap(X, u, v, below, above, hint)});
            }
        } else {
            LowerSide side;
            side.scale = below;
            side.free = lo_free;
            for (int g : lo_alive) {
                side.loops.push_back(E.generator_loop(g, basepoint));
                bool nz = lo_free || !abelian_image_trivial(lo_alive, lo_rel, Word{letter(g)});
                side.certificates.push_back(nz ? "h1-nonzero" : "");
            }
            side.new_edges = batch;
            side.connected = [](Index, Index) { return true; };
            m = induced_map_report(X, E, basepoint, side, hint, opt.max_witnesses);
        }

        CriticalValue cv;
        cv.value = c[k];
        cv.below = below;
        cv.above = above;
        if (m.injective == InducedMapReport::No) cv.flags = {"homotopy", "upper-non-injective"};
        if (m.surjective == InducedMapReport::No) {
            cv.flags.push_back("refinement");
            cv.flags.push_back("upper-non-surjective");
        }
        if (m.injective == InducedMapReport::Unknown || m.surjective == InducedMapReport::Unknown) {
            cv.flags.push_back("unknown");
            if (m.injective == InducedMapReport::Unknown) cv.notes.push_back("injectivity: " + m.injective_method);
            if (m.surjective == InducedMapReport::Unknown) cv.notes.push_back("surjectivity: " + m.surjective_method);
        }
        if (cv.flags.empty()) continue;
        cv.loops = std::move(m.kernel);
        cv.pairs = std::move(m.unrefinable);
        cv.pair_total = m.unrefinable_total;
        for (auto& n : m.notes) cv.notes.push_back(n);
        rep.critical_values.push_back(std::move(cv));
    }
    rep.consistency = witness_checks(X, rep);
    for (auto& ch : flag_checks(rep)) rep.consistency.push_back(ch);
    (void)opt.threads;
    return rep;
}

GapDetection detect_essential_gaps(const FiniteMetricSpace& X, const Budget& budget, int threads)
{
    GapDetection out;
    const auto c = candidate_scales(X);
    if (c.empty()) return out;
    const double thr = connectivity_threshold(X);
    const std::size_t n = X.size();
    std::vector<std::vector<GapCertificate>> rows(n);
    parallel_for(n, static_cast<unsigned>(std::max(1, threads)), [&](std::size_t i) {
        for (Index j = i + 1; j < n; ++j) {
            if (!(X.d(i, j) > thr)) continue;
            auto g = check_pre_essential_gap(X, c, i, j);
            if (g.feasible()) rows[i].push_back(*g.certificate);
        }
    });
    for (auto& r : rows)
        for (auto& g : r) out.gaps.push_back(std::move(g));
    std::sort(out.gaps.begin(), out.gaps.end(), [](const GapCertificate& a, const GapCertificate& b) {
        return std::tie(a.l, a.x, a.y) < std::tie(b.l, b.x, b.y);
    });

    std::map<double, Pi1Engine> engines;
    auto engine = [&](double s) -> const Pi1Engine& {
        auto it = engines.find(s);
        if (it == engines.end()) it = engines.emplace(s, Pi1Engine(build_graph(X, s))).first;
        return it->second;
    };
    for (const auto& g : out.gaps) {
        auto next = std::upper_bound(c.begin(), c.end(), g.l);
        double top = std::min(g.certified_up_to, next == c.end() ? g.certified_up_to : *next);
        double hi = representative_scale(g.l, top);
        auto v = refine_check(X, engine(g.l), engine(hi), g.x, g.y, budget);
        if (v.status == RefineVerdict::Refinable)
            out.disagreements.push_back(X.label(g.x) + "," + X.label(g.y) + " refinable at " + fmt(hi));
    }
    return out;
}

}  // namespace crispec
