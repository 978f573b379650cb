#include "crispec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace crispec {

double round12(double v)
{
    if (!std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string fmt12(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

Json num(double v)
{
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        auto a = cell.find_first_not_of(" \t\r\"");
        auto b = cell.find_last_not_of(" \t\r\"");
        out.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
    }
    return out;
}

}  // namespace

FiniteMetricSpace read_matrix_csv(std::istream& in, double tol)
{
    std::string line;
    if (!std::getline(in, line)) throw MalformedMatrix("empty CSV");
    auto labels = split(line);
    std::vector<std::vector<double>> raw;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        for (auto& c : split(line)) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(c, &used);
            } catch (const std::exception&) {
                throw MalformedMatrix("not a number: '" + c + "'");
            }
            if (used != c.size()) throw MalformedMatrix("not a number: '" + c + "'");
            row.push_back(v);
        }
        raw.push_back(std::move(row));
    }
    if (raw.size() != labels.size()) throw MalformedMatrix("label row and matrix size differ");
    return validate_metric(std::move(raw), tol, std::move(labels));
}

void write_matrix_csv(std::ostream& out, const FiniteMetricSpace& X)
{
    for (std::size_t i = 0; i < X.size(); ++i) out << (i ? "," : "") << X.label(i);
    out << "\n";
    char buf[64];
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t j = 0; j < X.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", X.d(i, j));
            out << (j ? "," : "") << buf;
        }
        out << "\n";
    }
}

GeneratorSpec spec_from_json(const Json& j)
{
    GeneratorSpec s;
    s.kind = j.at("kind").get<std::string>();
    s.circumference = j.value("circumference", s.circumference);
    s.n = j.value("n", s.n);
    s.gap = j.value("gap", s.gap);
    s.side = j.value("side", s.side);
    s.mesh = j.value("mesh", s.mesh);
    if (j.contains("circumferences")) s.circumferences = j.at("circumferences").get<std::vector<double>>();
    s.teeth = j.value("teeth", s.teeth);
    s.extra_gap = j.value("extra_gap", s.extra_gap);
    return s;
}

Json spec_to_json(const GeneratorSpec& s)
{
    // full precision: the space is rebuilt from these numbers
    Json j;
    j["kind"] = s.kind;
    j["circumference"] = s.circumference;
    j["n"] = s.n;
    j["gap"] = s.gap;
    j["side"] = s.side;
    j["mesh"] = s.mesh;
    j["circumferences"] = s.circumferences;
    j["teeth"] = s.teeth;
    j["extra_gap"] = s.extra_gap;
    return j;
}

SpaceSource space_from_json(const Json& j, double tol)
{
    if (j.contains("source")) return space_from_json(j.at("source"), tol);
    // a written matrix records the float noise it already carries
    if (j.contains("tol")) tol = std::max(tol, j.at("tol").get<double>());
    if (j.contains("generator")) {
        auto spec = spec_from_json(j.at("generator"));
        return {generate(spec), spec};
    }
    if (j.contains("points")) {
        if (j.value("metric", std::string("euclidean")) != "euclidean")
            throw MalformedMatrix("only the euclidean point metric is supported");
        std::vector<std::string> labels;
        std::vector<Point2> pts;
        for (const auto& p : j.at("points")) {
            if (p.is_array()) {
                labels.push_back("p" + std::to_string(pts.size()));
                pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
                continue;
            }
            labels.push_back(p.value("label", "p" + std::to_string(pts.size())));
            pts.push_back({p.at("x").get<double>(), p.at("y").get<double>()});
        }
        const std::size_t n = pts.size();
        std::vector<std::vector<double>> raw(n, std::vector<double>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) raw[a][b] = std::hypot(pts[a].x - pts[b].x, pts[a].y - pts[b].y);
        return {validate_metric(std::move(raw), tol, std::move(labels), std::move(pts)), std::nullopt};
    }
    if (j.contains("circle")) {
        const double C = j.at("circle").at("circumference").get<double>();
        auto t = j.at("params").get<std::vector<double>>();
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        const std::size_t n = t.size();
        std::vector<std::vector<double>> raw(n, std::vector<double>(n));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                double g = std::fmod(std::abs(t[a] - t[b]), C);
                raw[a][b] = std::min(g, C - g);
            }
        return {validate_metric(std::move(raw), tol, std::move(labels)), std::nullopt};
    }
    if (j.contains("matrix")) {
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return {validate_metric(j.at("matrix").get<std::vector<std::vector<double>>>(), tol, std::move(labels)),
                std::nullopt};
    }
    throw MalformedMatrix("JSON space needs one of: generator, points, circle, matrix");
}

SpaceSource load_space(const std::string& path, double tol)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return {read_matrix_csv(in, tol), std::nullopt};
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::exception& e) {
        throw MalformedMatrix(path + ": " + e.what());
    }
    if (j.contains("space")) return space_from_json(j.at("space"), tol);
    return space_from_json(j, tol);
}

Json space_to_json(const SpaceSource& s)
{
    Json j;
    if (s.generator) {
        j["generator"] = spec_to_json(*s.generator);
        return j;
    }
    j["labels"] = s.space.labels();
    Json m = Json::array();
    for (std::size_t a = 0; a < s.space.size(); ++a) {
        Json row = Json::array();
        for (std::size_t b = 0; b < s.space.size(); ++b) row.push_back(s.space.d(a, b));
        m.push_back(std::move(row));
    }
    j["matrix"] = std::move(m);
    const std::size_t n = s.space.size();
    double slack = 0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t b = 0; b < n; ++b)
                slack = std::max(slack, s.space.d(a, c) - s.space.d(a, b) - s.space.d(b, c));
    if (slack > 0) j["tol"] = 2 * slack;
    return j;
}

Json chain_to_json(const FiniteMetricSpace& X, const std::vector<Index>& c)
{
    Json j = Json::array();
    for (auto p : c) j.push_back(X.label(p));
    return j;
}

std::vector<Index> chain_from_json(const FiniteMetricSpace& X, const Json& j)
{
    std::vector<Index> c;
    for (const auto& p : j) c.push_back(p.is_number() ? p.get<Index>() : X.index_of(p.get<std::string>()));
    return c;
}

Json trace_to_json(const FiniteMetricSpace& X, const HomotopyTrace& h)
{
    Json j;
    j["type"] = "homotopy-trace";
    j["scale"] = h.start.scale;  // exact, it decides which hops are allowed
    j["start"] = chain_to_json(X, h.start.points);
    Json moves = Json::array();
    for (const auto& m : h.moves)
        moves.push_back({{"op", m.kind == BasicMove::Insert ? "insert" : "remove"},
                         {"pos", m.pos},
                         {"point", X.label(m.point)}});
    j["moves"] = std::move(moves);
    return j;
}

HomotopyTrace trace_from_json(const FiniteMetricSpace& X, const Json& j)
{
    HomotopyTrace h;
    h.start.scale = j.at("scale").get<double>();
    h.start.points = chain_from_json(X, j.at("start"));
    for (const auto& m : j.at("moves")) {
        BasicMove b;
        const auto op = m.at("op").get<std::string>();
        if (op != "insert" && op != "remove") throw std::runtime_error("unknown move '" + op + "'");
        b.kind = op == "insert" ? BasicMove::Insert : BasicMove::Remove;
        b.pos = m.at("pos").get<std::size_t>();
        const auto& p = m.at("point");
        b.point = p.is_number() ? p.get<Index>() : X.index_of(p.get<std::string>());
        h.moves.push_back(b);
    }
    return h;
}

Json to_json(const FiniteMetricSpace& X, const NullityVerdict& v)
{
    Json j;
    j["status"] = to_string(v.status);
    j["loop"] = chain_to_json(X, v.trace.start.points);
    j["scale"] = v.trace.start.scale;
    j["word"] = v.word;
    if (v.status == NullityVerdict::NonNull) j["certificate"] = v.certificate;
    if (v.status == NullityVerdict::Null) j["trace"] = trace_to_json(X, v.trace);
    if (v.status == NullityVerdict::Unknown) j["budget_report"] = v.report;
    return j;
}

Json to_json(const FiniteMetricSpace& X, const GapCertificate& g)
{
    Json j;
    j["pair"] = chain_to_json(X, {g.x, g.y});
    j["l"] = num(g.l);
    j["eps_star"] = num(g.eps_star);
    Json f = Json::array();
    for (double s : g.feasible_scales) f.push_back(num(s));
    j["feasible_scales"] = std::move(f);
    j["certified_up_to"] = num(g.certified_up_to);
    j["dist_condition"] = g.dist_condition_note;
    j["dist_condition_holds"] = g.dist_condition;
    j["essential"] = g.essential();
    return j;
}

Json to_json(const FiniteMetricSpace& X, const RefineVerdict& v)
{
    Json j;
    j["status"] = to_string(v.status);
    j["pair"] = chain_to_json(X, v.trace.start.points);
    j["scale"] = v.trace.start.scale;
    if (v.status == RefineVerdict::Refinable) {
        j["refined"] = chain_to_json(X, v.refined);
        j["trace"] = trace_to_json(X, v.trace);
    }
    if (v.status == RefineVerdict::NotRefinable) j["certificate"] = v.certificate;
    if (v.gap) j["gap"] = to_json(X, *v.gap);
    if (v.status == RefineVerdict::Unknown) j["budget_report"] = v.report;
    return j;
}

Json to_json(const FiniteMetricSpace& X, const SpectrumReport& r)
{
    Json j;
    j["space"] = {{"n", r.n},
                  {"diameter", num(r.diameter)},
                  {"connectivity_threshold", num(r.connectivity)},
                  {"basepoint", X.label(r.basepoint)}};
    Json c = Json::array();
    for (double v : r.candidates) c.push_back(num(v));
    j["candidates"] = std::move(c);
    j["examined"] = r.examined;
    Json cvs = Json::array();
    for (const auto& cv : r.critical_values) {
        Json e;
        e["value"] = num(cv.value);
        e["flags"] = cv.flags;
        e["below"] = cv.below;
        e["above"] = cv.above;
        Json loops = Json::array();
        for (const auto& w : cv.loops)
            loops.push_back({{"loop", chain_to_json(X, w.loop)},
                             {"scale", w.lo_scale},
                             {"certificate", w.lo_certificate},
                             {"null_above", trace_to_json(X, w.hi_trace)}});
        Json pairs = Json::array();
        for (const auto& p : cv.pairs) {
            Json q{{"pair", chain_to_json(X, {p.x, p.y})}, {"certificate", p.certificate}};
            if (p.gap) q["gap"] = to_json(X, *p.gap);
            pairs.push_back(std::move(q));
        }
        e["witness"] = {{"loops", std::move(loops)}, {"pairs", std::move(pairs)}, {"pair_total", cv.pair_total}};
        if (!cv.notes.empty()) e["notes"] = cv.notes;
        cvs.push_back(std::move(e));
    }
    j["critical_values"] = std::move(cvs);
    Json cons;
    for (const auto& ch : r.consistency) cons[ch.name] = {{"passed", ch.passed}, {"detail", ch.detail}};
    j["consistency"] = std::move(cons);
    return j;
}

Json to_json(const FiniteMetricSpace& X, const CoverBall& b)
{
    Json j;
    j["scale"] = b.scale;
    j["basepoint"] = X.label(b.basepoint);
    j["complete"] = b.complete;
    j["approximate"] = b.approximate;
    j["radius"] = b.radius;
    Json vs = Json::array();
    for (std::size_t v = 0; v < b.vertices.size(); ++v)
        vs.push_back({{"id", v},
                      {"base", X.label(b.vertices[v].base)},
                      {"class", b.vertices[v].word},
                      {"depth", b.depth[v]}});
    j["vertices"] = std::move(vs);
    Json es = Json::array();
    for (const auto& [a, c, w] : b.edges) es.push_back({a, c, num(w)});
    j["edges"] = std::move(es);
    Json fibers;
    for (std::size_t p = 0; p < X.size(); ++p) {
        auto f = b.fiber(p);
        if (!f.empty()) fibers[X.label(p)] = f;
    }
    j["fibers"] = std::move(fibers);
    return j;
}

Json to_json(const FiniteMetricSpace& X, const Presentation& p, const H1Invariants& h1)
{
    Json j;
    j["basepoint"] = X.label(p.basepoint);
    j["scale"] = p.scale;
    j["raw"] = {{"generators", p.raw_generators}, {"relators", p.raw_relators}};
    Json g = Json::array();
    for (auto [u, v] : p.generators) g.push_back({X.label(u), X.label(v)});
    j["generators"] = std::move(g);
    j["relators"] = p.relators;
    j["free"] = p.is_free();
    j["h1"] = {{"free_rank", h1.free_rank}, {"torsion", h1.torsion}};
    return j;
}

Json to_json(const FiniteMetricSpace& X, const IntrinsicMetricResult& r)
{
    Json j;
    j["scale"] = r.scale;
    j["labels"] = X.labels();
    Json m = Json::array();
    for (std::size_t a = 0; a < r.n; ++a) {
        Json row = Json::array();
        for (std::size_t b = 0; b < r.n; ++b) row.push_back(num(r.at(a, b)));
        m.push_back(std::move(row));
    }
    j["matrix"] = std::move(m);
    if (r.lipschitz_M) j["lipschitz_M"] = *r.lipschitz_M;
    else j["lipschitz_M"] = nullptr;
    return j;
}

std::string spectrum_svg(const SpectrumReport& r)
{
    const double W = 860, H = 170, left = 40, right = 820, axis = 100;
    double top = r.diameter;
    for (const auto& cv : r.critical_values) top = std::max(top, cv.value);
    if (!(top > 0)) top = 1;
    top *= 1.05;
    auto xof = [&](double v) { return left + (right - left) * v / top; };
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << axis << "\" x2=\"" << right << "\" y2=\"" << axis << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 10; ++t) {
        double v = top * t / 10, x = xof(v);
        s << "<line x1=\"" << x << "\" y1=\"" << axis << "\" x2=\"" << x << "\" y2=\"" << axis + 5 << "\" stroke=\"black\"/>";
        s << "<text x=\"" << x << "\" y=\"" << axis + 18 << "\" text-anchor=\"middle\">" << fmt12(round12(v * 1e4) / 1e4) << "</text>\n";
    }
    if (r.connectivity > 0)
        s << "<rect x=\"" << left << "\" y=\"" << axis - 6 << "\" width=\"" << xof(r.connectivity) - left
          << "\" height=\"12\" fill=\"#ddd\"><title>not chain connected</title></rect>\n";
    for (const auto& cv : r.critical_values) {
        bool h = cv.has("homotopy"), f = cv.has("refinement"), u = cv.has("unknown");
        const char* colour = u ? "#888" : h && f ? "#8e44ad" : h ? "#1f77b4" : "#d62728";
        double x = xof(cv.value);
        s << "<line x1=\"" << x << "\" y1=\"" << axis - 40 << "\" x2=\"" << x << "\" y2=\"" << axis << "\" stroke=\"" << colour << "\"/>";
        s << "<circle cx=\"" << x << "\" cy=\"" << axis << "\" r=\"4\" fill=\"" << colour << "\"><title>" << fmt12(cv.value);
        for (const auto& fl : cv.flags) s << " " << fl;
        s << "</title></circle>\n";
    }
    s << "<text x=\"" << left << "\" y=\"20\">critical values: " << r.critical_values.size()
      << "  (blue homotopy, red refinement, purple both, grey unknown)</text>\n";
    s << "</svg>\n";
    return s.str();
}

}  // namespace crispec
