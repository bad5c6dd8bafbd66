#include <atomic>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trisect4/trisect4.h"

namespace {

enum Exit { kOk = 0, kDomain = 1, kInput = 2 };

struct Config {
    std::string positional, input, isosig, coloring;
    bool findColoring = false;
    uint64_t seed = 0;
    int retries = 64;
    bool conservative = false;
    bool precolored = false;
    size_t coloringLimit = 64;
    std::string out, json, svg, log;
    size_t jobs = 1;
    size_t targetVertices = 3;
    size_t maxSteps = 1000;
    std::string command = "trisect";
};

struct TriDeleter {
    void operator()(t4_triangulation* t) const { t4_free(t); }
};
using TriPtr = std::unique_ptr<t4_triangulation, TriDeleter>;

struct Owned {
    char* p = nullptr;
    ~Owned() { t4_string_free(p); }
    std::string str() const { return p ? p : ""; }
};

int exitFor(t4_status s) {
    if (s == T4_OK)
        return kOk;
    return t4_is_input_error(s) ? kInput : kDomain;
}

// Failure on stderr; reports of domain failures still go to their output.
int fail(t4_status s) {
    if (s != T4_ERR_DOMAIN)
        std::cerr << "error: " << t4_last_error() << "\n";
    return exitFor(s);
}

bool writeFile(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot write " << path << "\n";
        return false;
    }
    f << text;
    return bool(f);
}

bool readText(const std::string& path, std::string& text) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        return false;
    std::ostringstream ss;
    ss << f.rdbuf();
    text = ss.str();
    return true;
}

bool endsWith(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

t4_options options(const Config& c) {
    t4_options o;
    t4_options_init(&o);
    o.seed = c.seed;
    o.retries = c.retries;
    o.conservative = c.conservative;
    o.precolored = c.precolored;
    o.coloring_limit = c.coloringLimit;
    o.target_vertices = c.targetVertices;
    o.max_steps = c.maxSteps;
    return o;
}

int emitReport(const Config& c, const std::string& report) {
    if (!c.json.empty())
        return writeFile(c.json, report) ? kOk : kInput;
    std::cout << report;
    return kOk;
}

int load(const Config& c, TriPtr& tri) {
    int sources = !c.positional.empty() + !c.input.empty() + !c.isosig.empty();
    if (sources != 1) {
        std::cerr << "error: give exactly one input: a file, --input or --isosig\n";
        return kInput;
    }
    t4_triangulation* t = nullptr;
    t4_status s = !c.isosig.empty() ? t4_from_isosig(c.isosig.c_str(), &t)
                                    : t4_from_file((c.input.empty() ? c.positional : c.input).c_str(), &t);
    if (s != T4_OK)
        return fail(s);
    tri.reset(t);
    if (!c.coloring.empty()) {
        std::string text;
        if (!readText(c.coloring, text)) {
            std::cerr << "error: cannot read " << c.coloring << "\n";
            return kInput;
        }
        if ((s = t4_set_coloring(tri.get(), text.c_str())) != T4_OK)
            return fail(s);
    }
    return kOk;
}

int ensureColoring(const Config& c, t4_triangulation* tri) {
    if (t4_has_coloring(tri) || !c.findColoring)
        return kOk;
    auto o = options(c);
    Owned report;
    t4_status s = t4_color(tri, &o, &report.p);
    if (s != T4_OK) {
        if (s == T4_ERR_DOMAIN)
            std::cerr << "error: no tricoloring found\n";
        return fail(s);
    }
    return kOk;
}

int writeTriangulation(const std::string& path, const t4_triangulation* t) {
    if (path.empty())
        return kOk;
    Owned text;
    t4_status s = t4_gluings(t, endsWith(path, ".json"), &text.p);
    if (s != T4_OK)
        return fail(s);
    return writeFile(path, text.str()) ? kOk : kInput;
}

int runValidate(const Config& c) {
    TriPtr tri;
    if (int e = load(c, tri))
        return e;
    Owned r;
    t4_status s = t4_validate(tri.get(), &r.p);
    if (r.p && emitReport(c, r.str()))
        return kInput;
    return s == T4_OK ? kOk : fail(s);
}

int runInfo(const Config& c) {
    TriPtr tri;
    if (int e = load(c, tri))
        return e;
    Owned r;
    t4_status s = t4_info(tri.get(), &r.p);
    if (s != T4_OK)
        return fail(s);
    return emitReport(c, r.str());
}

int runColor(const Config& c) {
    TriPtr tri;
    if (int e = load(c, tri))
        return e;
    auto o = options(c);
    Owned r;
    t4_status s = t4_color(tri.get(), &o, &r.p);
    if (r.p && emitReport(c, r.str()))
        return kInput;
    if (s != T4_OK)
        return fail(s);
    if (!c.out.empty()) {
        Owned text;
        if ((s = t4_coloring_text(tri.get(), &text.p)) != T4_OK)
            return fail(s);
        if (!writeFile(c.out, text.str()))
            return kInput;
    }
    return kOk;
}

int runSubdivide(const Config& c) {
    TriPtr tri;
    if (int e = load(c, tri))
        return e;
    t4_triangulation* out = nullptr;
    Owned r;
    t4_status s = t4_subdivide(tri.get(), &out, &r.p);
    if (s != T4_OK)
        return fail(s);
    TriPtr result(out);
    if (int e = writeTriangulation(c.out, result.get()))
        return e;
    return emitReport(c, r.str());
}

int runMakeTs(const Config& c) {
    TriPtr tri;
    if (int e = load(c, tri))
        return e;
    if (int e = ensureColoring(c, tri.get()))
        return e;
    auto o = options(c);
    t4_triangulation* out = nullptr;
    Owned r;
    t4_status s = t4_make_ts(tri.get(), &o, &out, &r.p);
    if (s != T4_OK)
        return fail(s);
    TriPtr result(out);
    if (int e = writeTriangulation(c.out, result.get()))
        return e;
    return emitReport(c, r.str());
}

int runTrisect(const Config& c) {
    TriPtr tri;
    if (int e = load(c, tri))
        return e;
    if (int e = ensureColoring(c, tri.get()))
        return e;
    auto o = options(c);
    Owned r;
    t4_status s = t4_trisect(tri.get(), &o, &r.p);
    if (r.p && emitReport(c, r.str()))
        return kInput;
    return s == T4_OK ? kOk : fail(s);
}

int runDiagram(const Config& c) {
    TriPtr tri;
    if (int e = load(c, tri))
        return e;
    if (int e = ensureColoring(c, tri.get()))
        return e;
    auto o = options(c);
    Owned r, svg;
    t4_status s = t4_diagram(tri.get(), &o, &r.p, &svg.p);
    if (s != T4_OK)
        return fail(s);
    for (const auto& path : {c.out, c.svg})
        if (!path.empty() && !writeFile(path, svg.str()))
            return kInput;
    return emitReport(c, r.str());
}

int runSimplify(const Config& c) {
    TriPtr tri;
    if (int e = load(c, tri))
        return e;
    if (int e = ensureColoring(c, tri.get()))
        return e;
    auto o = options(c);
    t4_triangulation* out = nullptr;
    Owned r, log;
    t4_status s = t4_simplify(tri.get(), &o, &out, &r.p, &log.p);
    TriPtr result(out);
    if (s != T4_OK && s != T4_ERR_DOMAIN)
        return fail(s);
    if (!c.log.empty() && !writeFile(c.log, log.str()))
        return kInput;
    if (int e = writeTriangulation(c.out, result.get()))
        return e;
    if (emitReport(c, r.str()))
        return kInput;
    return s == T4_OK ? kOk : fail(s);
}

// One batch line, run in isolation; returns a compact JSON object.
std::string batchLine(const Config& c, size_t lineNo, const std::string& sig) {
    using nlohmann::ordered_json;
    ordered_json j = {{"line", lineNo}, {"isosig", sig}, {"command", c.command}};
    t4_triangulation* raw = nullptr;
    t4_status s = t4_from_isosig(sig.c_str(), &raw);
    TriPtr tri(raw);
    Owned r;
    if (s == T4_OK) {
        auto o = options(c);
        if (c.command == "validate")
            s = t4_validate(tri.get(), &r.p);
        else if (c.command == "info")
            s = t4_info(tri.get(), &r.p);
        else if (c.command == "color")
            s = t4_color(tri.get(), &o, &r.p);
        else
            s = t4_trisect(tri.get(), &o, &r.p);
    }
    j["exit"] = exitFor(s);
    if (r.p)
        j["report"] = ordered_json::parse(r.str());
    if (s != T4_OK && s != T4_ERR_DOMAIN)
        j["error"] = t4_last_error();
    return j.dump();
}

int runBatch(const Config& c, const std::string& listFile) {
    std::string text;
    if (!readText(listFile, text)) {
        std::cerr << "error: cannot read " << listFile << "\n";
        return kInput;
    }
    if (c.command != "validate" && c.command != "info" && c.command != "color" && c.command != "trisect") {
        std::cerr << "error: batch runs validate, info, color or trisect\n";
        return kInput;
    }
    std::vector<std::pair<size_t, std::string>> work;
    std::istringstream in(text);
    std::string line;
    for (size_t n = 1; std::getline(in, line); ++n) {
        auto a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos || line[a] == '#')
            continue;
        auto b = line.find_last_not_of(" \t\r");
        work.push_back({n, line.substr(a, b - a + 1)});
    }
    std::vector<std::string> results(work.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < work.size();)
            results[i] = batchLine(c, work[i].first, work[i].second);
    };
    size_t jobs = std::max<size_t>(1, std::min(c.jobs, work.size()));
    std::vector<std::thread> pool;
    for (size_t k = 1; k < jobs; ++k)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    std::string all;
    for (const auto& r : results)
        all += r + "\n";
    if (!c.out.empty())
        return writeFile(c.out, all) ? kOk : kInput;
    std::cout << all;
    return kOk;
}

void addInput(CLI::App* sub, Config& c) {
    sub->add_option("file", c.positional, "Gluing table file or a file holding one signature");
    sub->add_option("--input", c.input, "Gluing table file");
    sub->add_option("--isosig", c.isosig, "Isomorphism signature");
}

void addColoring(CLI::App* sub, Config& c) {
    sub->add_option("--coloring", c.coloring, "Coloring file: 'vertex color' lines or JSON with a coloring");
    sub->add_flag("--find-coloring", c.findColoring, "Search for a tricoloring first");
}

void addSearch(CLI::App* sub, Config& c) {
    sub->add_option("--seed", c.seed, "Seed for collapse order shuffles");
    sub->add_option("--retries", c.retries, "Collapse attempts per piece");
    sub->add_flag("--conservative-moves", c.conservative, "Skip pairs whose apexes are already joined by an edge");
    sub->add_flag("--precolored", c.precolored, "Use the given coloring as is, without fallback");
    sub->add_option("--coloring-limit", c.coloringLimit, "Direct colorings tried before the subdivision route");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Trisections of triangulated 4-manifolds from tricolorings"};
    app.require_subcommand(1);
    Config c;
    std::string batchFile;

    auto* validate = app.add_subcommand("validate", "Check that the input is a closed combinatorial 4-manifold");
    addInput(validate, c);
    validate->add_option("--json", c.json, "Write the report here instead of stdout");

    auto* info = app.add_subcommand("info", "Face counts, Euler characteristic and orientability");
    addInput(info, c);
    info->add_option("--json", c.json, "Write the report here instead of stdout");

    auto* color = app.add_subcommand("color", "Find or check tricolorings");
    addInput(color, c);
    color->add_option("--coloring", c.coloring, "Coloring to check");
    color->add_option("--coloring-limit", c.coloringLimit, "Stop after this many colorings");
    color->add_option("--out", c.out, "Write the first coloring here");
    color->add_option("--json", c.json, "Write the report here instead of stdout");

    auto* subdivide = app.add_subcommand("subdivide", "Flag subdivision with its tricoloring");
    addInput(subdivide, c);
    subdivide->add_option("--out", c.out, "Write the subdivided gluing table (.json for JSON)");
    subdivide->add_option("--json", c.json, "Write the report and coloring here instead of stdout");

    auto* makeTs = app.add_subcommand("make-ts", "Replace double pentachora by quadra pentachora");
    addInput(makeTs, c);
    addColoring(makeTs, c);
    makeTs->add_flag("--conservative-moves", c.conservative, "Skip pairs whose apexes are already joined by an edge");
    makeTs->add_option("--out", c.out, "Write the resulting gluing table (.json for JSON)");
    makeTs->add_option("--json", c.json, "Write the report, coloring and quadra groups here");

    auto* trisect = app.add_subcommand("trisect", "Verify a trisection and report its genera");
    addInput(trisect, c);
    addColoring(trisect, c);
    addSearch(trisect, c);
    trisect->add_option("--json", c.json, "Write the report here instead of stdout");

    auto* diagram = app.add_subcommand("diagram", "Trace and render the trisection diagram");
    addInput(diagram, c);
    addColoring(diagram, c);
    addSearch(diagram, c);
    diagram->add_option("--out", c.out, "Write the SVG here");
    diagram->add_option("--svg", c.svg, "Write the SVG here");
    diagram->add_option("--json", c.json, "Write the curve system here instead of stdout");

    auto* simplify = app.add_subcommand("simplify", "Reduce vertices by color-preserving edge collapses");
    addInput(simplify, c);
    addColoring(simplify, c);
    addSearch(simplify, c);
    simplify->add_option("--target-vertices", c.targetVertices, "Stop at this many vertices");
    simplify->add_option("--max-steps", c.maxSteps, "Give up after this many moves");
    simplify->add_option("--log", c.log, "Write the move log (JSON lines) here");
    simplify->add_option("--out", c.out, "Write the resulting gluing table (.json for JSON)");
    simplify->add_option("--json", c.json, "Write the report here instead of stdout");

    auto* batch = app.add_subcommand("batch", "Run one command over a file of signatures");
    batch->add_option("list", batchFile, "File with one signature per line")->required();
    batch->add_option("--command", c.command, "validate, info, color or trisect");
    batch->add_option("--jobs", c.jobs, "Worker threads");
    batch->add_option("--out", c.out, "Write the JSON lines here instead of stdout");
    addSearch(batch, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInput;
    }

    if (validate->parsed())
        return runValidate(c);
    if (info->parsed())
        return runInfo(c);
    if (color->parsed())
        return runColor(c);
    if (subdivide->parsed())
        return runSubdivide(c);
    if (makeTs->parsed())
        return runMakeTs(c);
    if (trisect->parsed())
        return runTrisect(c);
    if (diagram->parsed())
        return runDiagram(c);
    if (simplify->parsed())
        return runSimplify(c);
    return runBatch(c, batchFile);
}
