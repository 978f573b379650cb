#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "crispec/cover.hpp"
#include "crispec/generators.hpp"
#include "crispec/intrinsic.hpp"
#include "crispec/io.hpp"
#include "crispec/nullity.hpp"
#include "crispec/oracle.hpp"
#include "crispec/pi1.hpp"
#include "crispec/spectrum.hpp"

using namespace crispec;

namespace {

enum Exit { Ok = 0, InputError = 1, Unknowns = 2, Inconsistent = 3 };

struct InputError_ : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// where the space comes from
struct SpaceArgs {
    std::string input;
    double tol = 0;
    GeneratorSpec spec;
    std::string basepoint;

    void add(CLI::App* sub)
    {
        sub->add_option("--input,-i", input, "distance matrix CSV or space JSON");
        sub->add_option("--tol", tol, "triangle inequality tolerance for ingested data");
        sub->add_option("--generate,-g", spec.kind, "generator kind")->check(CLI::IsMember(generator_kinds()));
        sub->add_option("--circumference", spec.circumference);
        sub->add_option("--n", spec.n, "sample count (circle kinds)");
        sub->add_option("--gap", spec.gap, "removed arc as a fraction of the circumference");
        sub->add_option("--side", spec.side);
        sub->add_option("--mesh", spec.mesh);
        sub->add_option("--circumferences", spec.circumferences, "hawaiian earring circles");
        sub->add_option("--teeth", spec.teeth);
        sub->add_option("--extra-gap", spec.extra_gap, "comb v3 short gap");
        sub->add_option("--basepoint,-b", basepoint, "basepoint label");
    }

    SpaceSource load() const
    {
        if (input.empty() == spec.kind.empty()) throw InputError_("give exactly one of --input and --generate");
        if (!input.empty()) return load_space(input, tol);
        return {generate(spec), spec};
    }

    Index base(const SpaceSource& s) const
    {
        if (!basepoint.empty()) return point(s.space, basepoint);
        if (s.generator) return s.space.index_of(default_basepoint(*s.generator));
        return 0;
    }

    static Index point(const FiniteMetricSpace& X, const std::string& name)
    {
        if (auto i = X.find(name)) return *i;
        if (!name.empty() && name.find_first_not_of("0123456789") == std::string::npos) {
            auto i = std::stoul(name);
            if (i < X.size()) return i;
        }
        throw InputError_("unknown point '" + name + "'");
    }
};

std::vector<Index> parse_points(const FiniteMetricSpace& X, const std::string& text)
{
    std::vector<Index> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(SpaceArgs::point(X, item));
    return out;
}

unsigned thread_count(int flag)
{
    if (flag > 0) return static_cast<unsigned>(flag);
    if (const char* e = std::getenv("CRISPEC_THREADS")) {
        int v = std::atoi(e);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

void write_json(const std::string& path, const Json& j)
{
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw InputError_("cannot write " + path);
    out << j.dump(2) << "\n";
}

void write_text(const std::string& path, const std::string& s)
{
    std::ofstream out(path);
    if (!out) throw InputError_("cannot write " + path);
    out << s;
}

// trace file that carries its own space
Json standalone_trace(const SpaceSource& s, const HomotopyTrace& h)
{
    Json j = trace_to_json(s.space, h);
    j["space"] = space_to_json(s);
    return j;
}

// each trace is checked against the nearest enclosing "space"
struct TraceRef {
    const Json* trace;
    const Json* space;
};

void collect_traces(const Json& j, const Json* space, std::vector<TraceRef>& out)
{
    if (j.is_object()) {
        if (j.contains("space") && j.at("space").is_object()) space = &j.at("space");
        if (j.value("type", std::string()) == "homotopy-trace") out.push_back({&j, space});
        for (const auto& [k, v] : j.items())
            if (k != "space") collect_traces(v, space, out);
    } else if (j.is_array()) {
        for (const auto& v : j) collect_traces(v, space, out);
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Critical spectra of finite metric spaces"};
    app.require_subcommand(1);
    app.fallthrough();
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (else CRISPEC_THREADS, else 1)");

    // generate
    auto* gen = app.add_subcommand("generate", "sample one of the example spaces");
    SpaceArgs gen_args;
    std::string gen_out;
    gen->add_option("--generate,-g,kind", gen_args.spec.kind, "generator kind")
        ->required()
        ->check(CLI::IsMember(generator_kinds()));
    gen->add_option("--circumference", gen_args.spec.circumference);
    gen->add_option("--n", gen_args.spec.n);
    gen->add_option("--gap", gen_args.spec.gap);
    gen->add_option("--side", gen_args.spec.side);
    gen->add_option("--mesh", gen_args.spec.mesh);
    gen->add_option("--circumferences", gen_args.spec.circumferences);
    gen->add_option("--teeth", gen_args.spec.teeth);
    gen->add_option("--extra-gap", gen_args.spec.extra_gap);
    gen->add_option("--out,-o", gen_out, "output .csv or .json (default: JSON on stdout)");

    // validate
    auto* val = app.add_subcommand("validate", "check a distance matrix");
    SpaceArgs val_args;
    val_args.add(val);

    // spectrum
    auto* spec = app.add_subcommand("spectrum", "critical values with witnesses");
    SpaceArgs spec_args;
    spec_args.add(spec);
    std::string spec_out, spec_svg;
    std::size_t spec_witnesses = 256, spec_states = 200000;
    spec->add_option("--out,-o", spec_out, "report JSON");
    spec->add_option("--svg", spec_svg, "spectrum diagram");
    spec->add_option("--max-witnesses", spec_witnesses)->check(CLI::PositiveNumber);
    spec->add_option("--search-budget", spec_states)->check(CLI::PositiveNumber);

    // null
    auto* nul = app.add_subcommand("null", "is a loop null at a scale");
    SpaceArgs nul_args;
    nul_args.add(nul);
    double nul_eps = 0;
    std::string nul_loop, nul_out, nul_trace;
    nul->add_option("--eps", nul_eps)->required()->check(CLI::PositiveNumber);
    nul->add_option("--loop", nul_loop, "comma separated labels, first = last")->required();
    nul->add_option("--out,-o", nul_out, "verdict JSON");
    nul->add_option("--trace", nul_trace, "standalone trace JSON for verify");

    // refine
    auto* ref = app.add_subcommand("refine", "can {x,y} be refined to a finer chain");
    SpaceArgs ref_args;
    ref_args.add(ref);
    double ref_hi = 0, ref_lo = 0;
    std::string ref_pair, ref_out, ref_trace;
    std::size_t ref_states = 200000;
    ref->add_option("--pair", ref_pair, "x,y")->required();
    ref->add_option("--hi", ref_hi)->required()->check(CLI::PositiveNumber);
    ref->add_option("--lo", ref_lo)->required()->check(CLI::PositiveNumber);
    ref->add_option("--out,-o", ref_out);
    ref->add_option("--trace", ref_trace);
    ref->add_option("--search-budget", ref_states)->check(CLI::PositiveNumber);

    // d-eps
    auto* deps = app.add_subcommand("d-eps", "eps-intrinsic metric");
    SpaceArgs deps_args;
    deps_args.add(deps);
    double deps_eps = 0;
    std::string deps_out;
    deps->add_option("--eps", deps_eps, "scale (omit for the sweep down to D_0)");
    deps->add_option("--out,-o", deps_out);

    // gaps
    auto* gaps = app.add_subcommand("gaps", "essential gaps with certificates");
    SpaceArgs gaps_args;
    gaps_args.add(gaps);
    std::string gaps_out;
    gaps->add_option("--out,-o", gaps_out);

    // cover
    auto* cov = app.add_subcommand("cover", "ball of the eps-cover");
    SpaceArgs cov_args;
    cov_args.add(cov);
    double cov_eps = 0;
    std::size_t cov_max = 0, cov_probe = 0;
    std::string cov_out;
    cov->add_option("--eps", cov_eps)->required()->check(CLI::PositiveNumber);
    cov->add_option("--max-vertices", cov_max, "default 10 n");
    cov->add_option("--probe", cov_probe, "random loops for the simply connected probe");
    cov->add_option("--out,-o", cov_out);

    // pi1
    auto* pi = app.add_subcommand("pi1", "presentation of the eps-group");
    SpaceArgs pi_args;
    pi_args.add(pi);
    double pi_eps = 0;
    std::string pi_out;
    pi->add_option("--eps", pi_eps)->required()->check(CLI::PositiveNumber);
    pi->add_option("--out,-o", pi_out);

    // verify
    auto* ver = app.add_subcommand("verify", "re-check every homotopy trace in a JSON file");
    std::string ver_file;
    ver->add_option("file", ver_file)->required();

    // oracle
    auto* orc = app.add_subcommand("oracle", "brute-force cross-check on random small spaces");
    oracle::SuiteOptions orc_opt;
    std::string orc_samples;
    std::size_t orc_keep = 20;
    orc->add_option("--spaces", orc_opt.spaces);
    orc->add_option("--seed", orc_opt.seed);
    orc->add_option("--loops", orc_opt.loops_per_scale);
    orc->add_option("--pairs", orc_opt.pairs_per_scale);
    orc->add_option("--max-points", orc_opt.max_points)->check(CLI::Range(3, 8));
    orc->add_option("--sample-dir", orc_samples, "write some emitted traces here");
    orc->add_option("--keep", orc_keep, "how many traces to write");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? Ok : InputError;
    }
    const unsigned nthreads = thread_count(threads);

    try {
        if (*gen) {
            auto X = generate(gen_args.spec);
            if (gen_out.size() > 4 && gen_out.substr(gen_out.size() - 4) == ".csv") {
                std::ofstream out(gen_out);
                if (!out) throw InputError_("cannot write " + gen_out);
                write_matrix_csv(out, X);
            } else {
                Json j = space_to_json(SpaceSource{X, std::nullopt});
                j["generator"] = spec_to_json(gen_args.spec);
                j["basepoint"] = default_basepoint(gen_args.spec);
                write_json(gen_out, j);
            }
            if (!gen_out.empty() && gen_out != "-")
                std::cout << gen_args.spec.kind << ": " << X.size() << " points, mesh "
                          << fmt12(sample_mesh(gen_args.spec)) << "\n";
            return Ok;
        }
        if (*val) {
            auto s = val_args.load();
            std::cout << "valid: " << s.space.size() << " points, diameter " << fmt12(s.space.diameter()) << ", "
                      << candidate_scales(s.space).size() << " candidate scales\n";
            return Ok;
        }
        if (*spec) {
            auto s = spec_args.load();
            SpectrumOptions o;
            o.max_witnesses = spec_witnesses;
            o.budget.search_states = spec_states;
            o.threads = static_cast<int>(nthreads);
            auto r = compute_spectrum(s.space, spec_args.base(s), o);
            Json j = to_json(s.space, r);
            j["space"]["source"] = space_to_json(s);
            if (!spec_out.empty()) write_json(spec_out, j);
            if (!spec_svg.empty()) write_text(spec_svg, spectrum_svg(r));
            std::cout << r.critical_values.size() << " critical values (" << r.examined << " of "
                      << r.candidates.size() << " candidates examined)\n";
            for (const auto& cv : r.critical_values) {
                std::cout << "  " << fmt12(cv.value);
                for (const auto& f : cv.flags) std::cout << " " << f;
                std::cout << "\n";
            }
            for (const auto& c : r.consistency)
                if (!c.passed) std::cerr << "consistency failure: " << c.name << ": " << c.detail << "\n";
            if (!r.consistent()) return Inconsistent;
            return r.has_unknown() ? Unknowns : Ok;
        }
        if (*nul) {
            auto s = nul_args.load();
            auto loop = parse_points(s.space, nul_loop);
            auto v = decide_null(s.space, nul_eps, loop);
            if (!nul_out.empty()) write_json(nul_out, [&] {
                Json j = to_json(s.space, v);
                j["space"] = space_to_json(s);
                return j;
            }());
            if (!nul_trace.empty() && v.status == NullityVerdict::Null) write_json(nul_trace, standalone_trace(s, v.trace));
            std::cout << to_string(v.status);
            if (v.status == NullityVerdict::NonNull) std::cout << " (" << v.certificate << ")";
            if (v.status == NullityVerdict::Null) std::cout << " (" << v.trace.moves.size() << " moves)";
            if (v.status == NullityVerdict::Unknown) std::cout << " (" << v.report << ")";
            if (!nul_trace.empty() && v.status == NullityVerdict::Null) std::cout << ", trace " << nul_trace;
            std::cout << "\n";
            return v.status == NullityVerdict::Unknown ? Unknowns : Ok;
        }
        if (*ref) {
            auto s = ref_args.load();
            auto pair = parse_points(s.space, ref_pair);
            if (pair.size() != 2) throw InputError_("--pair needs two points");
            if (!(ref_lo < ref_hi)) throw InputError_("--lo must be below --hi");
            Budget b;
            b.search_states = ref_states;
            auto v = refine_check(s.space, ref_hi, ref_lo, pair[0], pair[1], b);
            if (!ref_out.empty()) write_json(ref_out, [&] {
                Json j = to_json(s.space, v);
                j["space"] = space_to_json(s);
                return j;
            }());
            if (!ref_trace.empty() && v.status == RefineVerdict::Refinable) write_json(ref_trace, standalone_trace(s, v.trace));
            std::cout << (v.status == RefineVerdict::Refinable ? "Refinable"
                          : v.status == RefineVerdict::NotRefinable ? "NotRefinable" : "Unknown");
            if (v.status == RefineVerdict::Refinable) {
                std::cout << " via";
                for (auto p : v.refined) std::cout << " " << s.space.label(p);
            }
            if (v.status == RefineVerdict::NotRefinable)
                std::cout << " (" << v.certificate << (v.gap ? ", gap certificate" : "") << ")";
            if (v.status == RefineVerdict::Unknown) std::cout << " (" << v.report << ")";
            if (!ref_trace.empty() && v.status == RefineVerdict::Refinable) std::cout << ", trace " << ref_trace;
            std::cout << "\n";
            return v.status == RefineVerdict::Unknown ? Unknowns : Ok;
        }
        if (*deps) {
            auto s = deps_args.load();
            if (deps_eps > 0) {
                auto r = intrinsic_metric(s.space, deps_eps, nthreads);
                write_json(deps_out, to_json(s.space, r));
                if (!deps_out.empty() && deps_out != "-")
                    std::cout << "D_eps at " << fmt12(deps_eps) << ", M = "
                              << (r.lipschitz_M ? std::to_string(*r.lipschitz_M) : "none (disconnected)") << "\n";
            } else {
                auto sw = intrinsic_metric_sweep(s.space, 0, nthreads);
                Json j;
                j["d0_scale"] = sw.d0_scale;
                j["monotone"] = sw.monotone;
                j["divergent"] = sw.divergent;
                j["d0"] = to_json(s.space, sw.d0);
                Json scales = Json::array();
                for (const auto& r : sw.by_scale)
                    scales.push_back({{"scale", r.scale},
                                      {"lipschitz_M", r.lipschitz_M ? Json(*r.lipschitz_M) : Json(nullptr)}});
                j["scales"] = std::move(scales);
                write_json(deps_out, j);
                if (!deps_out.empty() && deps_out != "-")
                    std::cout << sw.by_scale.size() << " scales, D_0 reached at " << fmt12(sw.d0_scale)
                              << (sw.monotone ? ", monotone" : ", NOT monotone") << "\n";
                if (!sw.monotone) return Inconsistent;
            }
            return Ok;
        }
        if (*gaps) {
            auto s = gaps_args.load();
            auto g = detect_essential_gaps(s.space, {}, static_cast<int>(nthreads));
            Json j;
            Json list = Json::array();
            for (const auto& c : g.gaps) list.push_back(to_json(s.space, c));
            j["gaps"] = std::move(list);
            j["disagreements"] = g.disagreements;
            write_json(gaps_out, j);
            if (!gaps_out.empty() && gaps_out != "-") {
                std::cout << g.gaps.size() << " essential gaps\n";
                for (const auto& c : g.gaps)
                    std::cout << "  " << s.space.label(c.x) << "," << s.space.label(c.y) << " l=" << fmt12(c.l) << "\n";
            }
            for (const auto& d : g.disagreements) std::cerr << "disagreement: " << d << "\n";
            return g.disagreements.empty() ? Ok : Inconsistent;
        }
        if (*cov) {
            auto s = cov_args.load();
            auto ball = build_cover_ball(s.space, cov_eps, cov_args.base(s), cov_max);
            Json j = to_json(s.space, ball);
            int code = Ok;
            if (cov_probe > 0) {
                auto p = simply_connected_probe(ball, cov_probe);
                Json pj{{"passed", p.passed}, {"tested", p.tested}, {"unknown", p.unknown}, {"witness", p.witness}};
                j["probe"] = std::move(pj);
                std::cout << "probe: " << (p.passed ? "passed" : "FAILED") << ", " << p.tested << " loops tested, "
                          << p.unknown << " unknown\n";
                if (!p.passed) code = Inconsistent;
            }
            write_json(cov_out, j);
            if (!cov_out.empty() && cov_out != "-")
                std::cout << ball.vertices.size() << " vertices, " << ball.edges.size() << " edges, "
                          << (ball.complete ? "complete" : "partial")
                          << (ball.approximate ? ", approximate classes" : "") << "\n";
            return code;
        }
        if (*pi) {
            auto s = pi_args.load();
            auto P = present_pi_eps(build_graph(s.space, pi_eps), pi_args.base(s));
            auto h1 = h1_invariants(P);
            write_json(pi_out, to_json(s.space, P, h1));
            if (!pi_out.empty() && pi_out != "-")
                std::cout << P.generators.size() << " generators, " << P.relators.size() << " relators, H1 rank "
                          << h1.free_rank << "\n";
            return Ok;
        }
        if (*ver) {
            std::ifstream in(ver_file);
            if (!in) throw InputError_("cannot open " + ver_file);
            Json j;
            try {
                j = Json::parse(in);
            } catch (const Json::exception& e) {
                throw InputError_(ver_file + ": " + e.what());
            }
            std::vector<TraceRef> traces;
            collect_traces(j, nullptr, traces);
            if (traces.empty()) throw InputError_("no homotopy traces in " + ver_file);
            std::size_t bad = 0;
            std::map<const Json*, FiniteMetricSpace> spaces;
            for (const auto& [t, sp] : traces) {
                if (!sp) throw InputError_("a trace in " + ver_file + " has no space");
                auto it = spaces.find(sp);
                if (it == spaces.end()) it = spaces.emplace(sp, space_from_json(*sp).space).first;
                const auto& X = it->second;
                auto r = verify_homotopy(X, trace_from_json(X, *t));
                if (!r.accepted) {
                    ++bad;
                    std::cout << "rejected at move " << r.step << ": " << r.reason << "\n";
                }
            }
            std::cout << traces.size() - bad << " of " << traces.size() << " traces accepted\n";
            return bad ? Inconsistent : Ok;
        }
        if (*orc) {
            orc_opt.threads = nthreads;
            auto r = oracle::run_suite(orc_opt, orc_samples.empty() ? 0 : orc_keep);
            std::cout << r.spaces << " spaces, " << r.scales << " scales, " << r.null_checks << " nullity and "
                      << r.refine_checks << " refinement checks, " << r.traces_verified << "/" << r.traces
                      << " traces verified, " << r.unknown << " unknown, " << r.disagreements.size()
                      << " disagreements\n";
            for (const auto& d : r.disagreements) std::cout << "  " << d << "\n";
            if (!orc_samples.empty()) {
                std::filesystem::create_directories(orc_samples);
                for (std::size_t i = 0; i < r.sample.size(); ++i)
                    write_json(orc_samples + "/trace_" + std::to_string(i) + ".json",
                               standalone_trace(SpaceSource{r.sample[i].first, std::nullopt}, r.sample[i].second));
            }
            if (!r.disagreements.empty()) return Inconsistent;
            return r.unknown ? Unknowns : Ok;
        }
    } catch (const InputError_& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InputError;
    } catch (const MetricError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InputError;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return Inconsistent;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return InputError;
    }
    return Ok;
}
