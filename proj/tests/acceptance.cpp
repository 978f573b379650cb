// Acceptance run: one line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <thread>
#include <sys/wait.h>
#include <iostream>
#include <sstream>
#include <string>

#include "crispec/gap.hpp"
#include "crispec/generators.hpp"
#include "crispec/io.hpp"
#include "crispec/nullity.hpp"
#include "crispec/oracle.hpp"
#include "crispec/spectrum.hpp"
#include "property_suite.hpp"

using namespace crispec;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why)
    {
        pass = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

const fs::path kArtifacts = ACCEPTANCE_DIR;

// files whose traces criterion 8 sends through the CLI, with the trace count expected
std::vector<std::pair<fs::path, std::size_t>> g_certificates;

std::string fmt(double v) { return fmt12(v); }

void write(const fs::path& p, const Json& j)
{
    std::ofstream out(p);
    out << j.dump() << "\n";
}

std::size_t count_traces(const Json& j)
{
    std::size_t n = 0;
    if (j.is_object()) {
        if (j.value("type", std::string()) == "homotopy-trace") ++n;
        for (const auto& [k, v] : j.items()) n += count_traces(v);
    } else if (j.is_array()) {
        for (const auto& v : j) n += count_traces(v);
    }
    return n;
}

// report JSON that carries its own space, as the CLI writes it
void save_report(const std::string& name, const SpaceSource& s, const SpectrumReport& r)
{
    Json j = to_json(s.space, r);
    j["space"]["source"] = space_to_json(s);
    auto p = kArtifacts / (name + ".json");
    write(p, j);
    if (auto n = count_traces(j)) g_certificates.push_back({p, n});
}

void consistency(const SpectrumReport& r, Outcome& o)
{
    for (const auto& c : r.consistency)
        if (!c.passed) o.fail("consistency " + c.name + ": " + c.detail);
    if (r.has_unknown()) o.fail("unknown verdicts in report");
}

const CriticalValue* nearest(const SpectrumReport& r, double v, const std::string& flag)
{
    const CriticalValue* best = nullptr;
    for (const auto& cv : r.critical_values)
        if (cv.has(flag) && (!best || std::abs(cv.value - v) < std::abs(best->value - v))) best = &cv;
    return best;
}

bool has_gap_pair(const CriticalValue& cv, Index x, Index y)
{
    for (const auto& p : cv.pairs)
        if (std::minmax(p.x, p.y) == std::minmax(x, y) && p.gap && p.gap->essential()) return true;
    return false;
}

SpaceSource make(GeneratorSpec g) { return {generate(g), g}; }

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// witness loop must be non-null below the value and null above it
void check_loop_witness(const FiniteMetricSpace& X, const CriticalValue& cv, Outcome& o)
{
    if (cv.loops.empty()) return o.fail("no loop witness");
    const auto& w = cv.loops.front();
    auto lo = decide_null(X, cv.below, w.loop);
    auto hi = decide_null(X, cv.above, w.loop);
    if (lo.status != NullityVerdict::NonNull) o.fail("witness loop not NonNull below");
    if (hi.status != NullityVerdict::Null) o.fail("witness loop not Null above");
    else if (!verify_homotopy(X, hi.trace)) o.fail("null trace rejected");
    o.note("witness loop of " + std::to_string(w.loop.size()) + " points: " + lo.certificate + " below, null above");
}

Outcome criterion1()
{
    Outcome o;
    GeneratorSpec g;
    g.kind = "circle";
    g.n = 200;
    auto s = make(g);
    auto t0 = std::chrono::steady_clock::now();
    auto r = compute_spectrum(s.space, s.space.index_of(default_basepoint(g)));
    double secs = seconds_since(t0);
    consistency(r, o);
    if (r.critical_values.size() != 1) o.fail(std::to_string(r.critical_values.size()) + " critical values");
    else {
        const auto& cv = r.critical_values[0];
        o.note("value " + fmt(cv.value) + ", error " + fmt(std::abs(cv.value - 1.0 / 3)));
        if (std::abs(cv.value - 1.0 / 3) > 2.0 / g.n) o.fail("value outside 1/3 +- 2/n");
        if (!cv.has("homotopy")) o.fail("not flagged homotopy");
        check_loop_witness(s.space, cv, o);
    }
    if (secs >= 30) o.fail("runtime " + fmt(secs) + " s");
    o.note("spectrum " + fmt(std::round(secs * 100) / 100) + " s");
    save_report("circle", s, r);
    return o;
}

Outcome criterion2()
{
    Outcome o;
    GeneratorSpec g;
    g.kind = "circle-with-gap";
    g.n = 200;
    auto s = make(g);
    auto t0 = std::chrono::steady_clock::now();
    auto r = compute_spectrum(s.space, s.space.index_of(default_basepoint(g)));
    double secs = seconds_since(t0);
    consistency(r, o);
    if (r.critical_values.size() != 2) o.fail(std::to_string(r.critical_values.size()) + " critical values");
    auto* q = nearest(r, 0.25, "refinement");
    auto* h = nearest(r, 1.0 / 3, "homotopy");
    if (!q || std::abs(q->value - 0.25) > 2.0 / g.n) o.fail("no refinement value near 1/4");
    else {
        o.note("refinement " + fmt(q->value));
        if (!has_gap_pair(*q, s.space.index_of("a"), s.space.index_of("b"))) o.fail("no gap certificate on (a,b)");
    }
    if (!h || std::abs(h->value - 1.0 / 3) > 2.0 / g.n) o.fail("no homotopy value near 1/3");
    else {
        o.note("homotopy " + fmt(h->value));
        check_loop_witness(s.space, *h, o);
    }
    if (secs >= 60) o.fail("runtime " + fmt(secs) + " s");
    o.note("spectrum " + fmt(std::round(secs * 100) / 100) + " s");
    save_report("circle_with_gap", s, r);
    return o;
}

Outcome criterion3()
{
    Outcome o;
    GeneratorSpec g;
    g.kind = "square-boundary";
    g.side = 1;
    g.mesh = g.side / 100;
    auto s = make(g);
    auto r = compute_spectrum(s.space, s.space.index_of(default_basepoint(g)));
    consistency(r, o);
    if (r.critical_values.size() != 1) o.fail(std::to_string(r.critical_values.size()) + " critical values");
    else {
        const auto& cv = r.critical_values[0];
        o.note("value " + fmt(cv.value) + " for side 1, mesh " + fmt(g.mesh));
        if (std::abs(cv.value - g.side) > 2 * g.mesh) o.fail("value outside s +- 2 mesh");
        if (!cv.has("homotopy")) o.fail("not flagged homotopy");
        check_loop_witness(s.space, cv, o);
    }
    save_report("square", s, r);
    return o;
}

Outcome criterion4()
{
    Outcome o;
    GeneratorSpec g;
    g.kind = "rapunzel-comb-v0";
    g.teeth = 6;
    auto s = make(g);
    const auto& X = s.space;
    const double mesh = sample_mesh(g);
    auto t0 = std::chrono::steady_clock::now();
    auto r = compute_spectrum(X, X.index_of(default_basepoint(g)));
    double secs = seconds_since(t0);
    consistency(r, o);
    auto* one = nearest(r, 1.0, "refinement");
    if (!one || std::abs(one->value - 1) > mesh) o.fail("no refinement value at 1");
    else {
        std::size_t gaps = 0;
        for (int k = 0; k <= g.teeth; ++k) {
            auto x = X.index_of("x" + std::to_string(k)), y = X.index_of("y" + std::to_string(k));
            if (has_gap_pair(*one, x, y)) ++gaps;
            else o.fail("no certified gap at tooth " + std::to_string(k));
        }
        o.note("refinement " + fmt(one->value) + " with " + std::to_string(gaps) + " tooth gaps");
    }
    double worst = 0;
    for (int k = 2; k <= g.teeth; ++k) {
        const double dk = std::sqrt(1 + std::pow(4.0, -k));
        auto* h = nearest(r, dk, "homotopy");
        if (!h || std::abs(h->value - dk) > 2 * mesh) {
            o.fail("no homotopy value near d_" + std::to_string(k));
            continue;
        }
        worst = std::max(worst, std::abs(h->value - dk));
    }
    o.note("homotopy values at sqrt(1+4^-k), k=2..6, max error " + fmt(worst));
    // gamma_n = {x_n, x_n+1, y_n+1, y_n, x_n} crosses the (x_n, y_n) gap backwards once
    const double eps = one ? one->above : 1.0000001;
    for (int n = 0; n < g.teeth; ++n) {
        auto id = [&](const char* p, int k) { return X.index_of(p + std::to_string(k)); };
        std::vector<Index> gamma{id("x", n), id("x", n + 1), id("y", n + 1), id("y", n), id("x", n)};
        int gn = gap_number(X, gamma, id("x", n), id("y", n), eps);
        if (gn != -1) o.fail("gap number of gamma_" + std::to_string(n) + " is " + std::to_string(gn));
    }
    o.note("gap_number(gamma_n) = -1 for n=0..5");
    if (r.critical_values.size() > 7)
        o.note(std::to_string(r.critical_values.size()) + " values in total, extra ones below 1 come from the sampling");
    if (secs >= 300) o.fail("runtime " + fmt(secs) + " s");
    o.note("spectrum " + fmt(std::round(secs * 100) / 100) + " s");
    save_report("comb_v0", s, r);
    return o;
}

Outcome criterion5()
{
    Outcome o;
    GeneratorSpec g;
    g.kind = "rapunzel-comb-v3";
    auto s = make(g);
    const auto& X = s.space;
    auto xi = X.index_of("xinf"), yi = X.index_of("yinf");
    auto det = detect_essential_gaps(X);
    for (const auto& c : det.gaps)
        if (std::minmax(c.x, c.y) == std::minmax(xi, yi)) o.fail("(xinf, yinf) reported as an essential gap");
    for (const auto& d : det.disagreements) o.fail("gap/refine disagreement: " + d);
    o.note(std::to_string(det.gaps.size()) + " essential gaps, none on (xinf, yinf)");

    auto v = refine_check(X, 1.0000001, 1.0, xi, yi);
    if (v.status != RefineVerdict::Refinable) return o.fail("refine_check did not refine (xinf, yinf)"), o;
    auto ver = verify_homotopy(X, v.trace);
    if (!ver) o.fail("refinement trace rejected: " + ver.reason);
    auto through = [&](const char* p) { return std::find(v.refined.begin(), v.refined.end(), X.index_of(p)) != v.refined.end(); };
    if (!through("a") || !through("b")) o.fail("refinement does not pass through a and b");
    std::string path;
    for (auto p : v.refined) path += (path.empty() ? "" : ",") + X.label(p);
    o.note("refined via {" + path + "}");
    Json j = trace_to_json(X, v.trace);
    j["space"] = space_to_json(s);
    write(kArtifacts / "comb_v3_refine.json", j);
    g_certificates.push_back({kArtifacts / "comb_v3_refine.json", 1});
    return o;
}

Outcome criterion6()
{
    Outcome o;
    oracle::SuiteOptions opt;
    opt.spaces = 300;
    opt.seed = 0;
    opt.threads = std::max(1u, std::thread::hardware_concurrency());
    auto r = oracle::run_suite(opt, static_cast<std::size_t>(-1));
    o.note(std::to_string(r.spaces) + " spaces, " + std::to_string(r.scales) + " scales, " +
           std::to_string(r.null_checks) + " nullity and " + std::to_string(r.refine_checks) + " refinement checks");
    if (r.spaces != 300) o.fail("suite covered " + std::to_string(r.spaces) + " spaces");
    if (!r.disagreements.empty()) o.fail(std::to_string(r.disagreements.size()) + " disagreements, first: " + r.disagreements[0]);
    if (r.unknown) o.fail(std::to_string(r.unknown) + " unknown verdicts");
    if (r.traces_verified != r.traces) o.fail("emitted traces failed verification");
    Json bundle;
    Json list = Json::array();
    for (const auto& [X, t] : r.sample) list.push_back({{"space", space_to_json(SpaceSource{X, std::nullopt})}, {"trace", trace_to_json(X, t)}});
    bundle["certificates"] = std::move(list);
    write(kArtifacts / "oracle_traces.json", bundle);
    g_certificates.push_back({kArtifacts / "oracle_traces.json", r.sample.size()});
    o.note(std::to_string(r.sample.size()) + " traces kept for verify");
    return o;
}

Outcome criterion7()
{
    Outcome o;
    props::Tally all;
    const std::pair<const char*, std::function<props::Tally(std::uint64_t)>> suites[] = {
        {"intrinsic metric", props::intrinsic_properties},
        {"gap-number invariance", props::gap_invariance},
        {"cover probe", props::cover_probe},
        {"report invariants", props::report_invariants}};
    for (const auto& [name, f] : suites) {
        props::Tally t;
        for (std::uint64_t seed = 0; seed < 10; ++seed) t.merge(f(seed));
        o.note(std::string(name) + " " + std::to_string(t.checks) + " checks");
        for (const auto& v : t.violations) o.fail(v);
        all.merge(t);
    }
    o.note(std::to_string(all.violations.size()) + " violations, seeds 0-9");
    return o;
}

Outcome criterion8()
{
    Outcome o;
    std::size_t total = 0;
    for (const auto& [path, expected] : g_certificates) {
        std::string cmd = std::string("\"") + CRISPEC_CLI + "\" verify \"" + path.string() + "\" 2>&1";
        FILE* pipe = popen(cmd.c_str(), "r");
        if (!pipe) {
            o.fail("cannot run the CLI");
            break;
        }
        std::string out;
        char buf[512];
        while (fgets(buf, sizeof buf, pipe)) out += buf;
        int status = pclose(pipe);
        int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        std::string want = std::to_string(expected) + " of " + std::to_string(expected) + " traces accepted";
        if (code != 0 || out.find(want) == std::string::npos)
            o.fail(path.filename().string() + ": exit " + std::to_string(code) + ", " + out.substr(0, 200));
        total += expected;
    }
    if (g_certificates.empty()) o.fail("no certificates collected");
    o.note(std::to_string(total) + " traces in " + std::to_string(g_certificates.size()) + " files verified by the CLI");
    return o;
}

}  // namespace

int main()
{
    fs::create_directories(kArtifacts);
    const std::pair<const char*, Outcome (*)()> criteria[] = {
        {"circle", criterion1},          {"circle with gap", criterion2}, {"euclidean square", criterion3},
        {"comb v0", criterion4},         {"comb v3 control", criterion5}, {"oracle equivalence", criterion6},
        {"property suites", criterion7}, {"certificate round-trip", criterion8}};
    int failed = 0;
    int k = 0;
    for (const auto& [name, run] : criteria) {
        ++k;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = seconds_since(t0);
        std::ostringstream line;
        line << "criterion " << k << " [" << name << "]: " << (o.pass ? "PASS" : "FAIL") << " (" << std::fixed
             << std::setprecision(1) << secs << " s) " << o.detail;
        std::cout << line.str() << std::endl;
        failed += !o.pass;
    }
    std::cout << (8 - failed) << " of 8 criteria passed" << std::endl;
    return failed ? 1 : 0;
}
