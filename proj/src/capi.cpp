#include "trisect4/trisect4.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "trisect4/error.hpp"
#include "trisect4/io.hpp"
#include "trisect4/isosig.hpp"
#include "trisect4/pipeline.hpp"

using namespace trisect4;

struct t4_triangulation {
    ColoredInput in;
};

namespace {

thread_local std::string lastError;

char* dupString(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p)
        std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void put(char** out, const std::string& s) {
    if (out)
        *out = dupString(s);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

t4_status statusOf(ErrorKind k) {
    switch (k) {
        case ErrorKind::Input: return T4_ERR_INPUT;
        case ErrorKind::Parse: return T4_ERR_PARSE;
        case ErrorKind::Dimension: return T4_ERR_DIMENSION;
        case ErrorKind::Structure: return T4_ERR_STRUCTURE;
        case ErrorKind::Site: return T4_ERR_SITE;
        case ErrorKind::Collapse: return T4_ERR_COLLAPSE;
        case ErrorKind::Tracing: return T4_ERR_TRACING;
        case ErrorKind::Bound: return T4_ERR_BOUND;
    }
    return T4_ERR_INTERNAL;
}

template <class F>
t4_status guarded(F&& f) {
    lastError.clear();
    try {
        return f();
    } catch (const Error& e) {
        lastError = e.what();
        return statusOf(e.kind());
    } catch (const std::exception& e) {
        lastError = e.what();
        return T4_ERR_INTERNAL;
    }
}

t4_status nullArgument() {
    lastError = "null argument";
    return T4_ERR_INPUT;
}

PipelineOptions pipelineOptions(const t4_options* o) {
    t4_options d;
    t4_options_init(&d);
    if (!o)
        o = &d;
    PipelineOptions p;
    p.seed = o->seed;
    p.retries = o->retries;
    p.conservative = o->conservative != 0;
    p.precolored = o->precolored != 0;
    p.coloringLimit = o->coloring_limit;
    return p;
}

t4_triangulation* wrap(ColoredInput in) { return new t4_triangulation{std::move(in)}; }

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n"), b = s.find_last_not_of(" \t\r\n");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

}  // namespace

extern "C" {

void t4_options_init(t4_options* opt) {
    if (!opt)
        return;
    opt->seed = 0;
    opt->retries = 64;
    opt->conservative = 0;
    opt->precolored = 0;
    opt->coloring_limit = 64;
    opt->target_vertices = 3;
    opt->max_steps = 1000;
}

const char* t4_version(void) { return "1.0.0"; }

const char* t4_last_error(void) { return lastError.c_str(); }

int t4_is_input_error(t4_status s) { return s == T4_ERR_INPUT || s == T4_ERR_PARSE || s == T4_ERR_DIMENSION; }

void t4_string_free(char* s) { std::free(s); }

t4_status t4_from_isosig(const char* sig, t4_triangulation** out) {
    if (!sig || !out)
        return nullArgument();
    return guarded([&] {
        *out = wrap({decodeIsoSig(trim(sig)), {}, {}});
        return T4_OK;
    });
}

t4_status t4_from_gluings(const char* text, t4_triangulation** out) {
    if (!text || !out)
        return nullArgument();
    return guarded([&] {
        *out = wrap({parseGluingAuto(text), {}, {}});
        return T4_OK;
    });
}

t4_status t4_from_file(const char* path, t4_triangulation** out) {
    if (!path || !out)
        return nullArgument();
    return guarded([&] {
        std::string text = readFile(path);
        std::string t = trim(text);
        bool single = !t.empty() && t.find_first_of(" \t\r\n") == std::string::npos && t[0] != '{';
        *out = wrap({single ? decodeIsoSig(t) : parseGluingAuto(text), {}, {}});
        return T4_OK;
    });
}

t4_triangulation* t4_clone(const t4_triangulation* t) { return t ? new t4_triangulation(*t) : nullptr; }

void t4_free(t4_triangulation* t) { delete t; }

size_t t4_size(const t4_triangulation* t) { return t ? t->in.tri.size() : 0; }

t4_status t4_isosig(const t4_triangulation* t, char** out) {
    if (!t || !out)
        return nullArgument();
    return guarded([&] {
        put(out, encodeIsoSig(t->in.tri));
        return T4_OK;
    });
}

t4_status t4_gluings(const t4_triangulation* t, int as_json, char** out) {
    if (!t || !out)
        return nullArgument();
    return guarded([&] {
        put(out, as_json ? formatGluingJson(t->in.tri) : formatGluingText(t->in.tri));
        return T4_OK;
    });
}

t4_status t4_set_coloring(t4_triangulation* t, const char* text) {
    if (!t || !text)
        return nullArgument();
    return guarded([&] {
        Skeleton skel(t->in.tri);
        std::string s = trim(text);
        std::optional<QuadraDecomposition> quadra;
        Tricoloring c;
        if (!s.empty() && s[0] == '{') {
            Json j;
            try {
                j = Json::parse(s);
                c = j.at("coloring").get<Tricoloring>();
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorKind::Input, std::string("malformed coloring JSON: ") + e.what());
            }
            if (j.contains("quadra"))
                quadra = quadraFromJson(j.at("quadra"));
        } else {
            c = parseColoringText(s, skel.count(0));
        }
        if (c.size() != skel.count(0))
            throw Error(ErrorKind::Input, "coloring has " + std::to_string(c.size()) + " entries, expected " +
                                              std::to_string(skel.count(0)));
        for (size_t v = 0; v < c.size(); ++v)
            if (c[v] < 0 || c[v] > 2)
                throw Error(ErrorKind::Input, "vertex " + std::to_string(v) + " has no color in 0..2");
        t->in.coloring = std::move(c);
        t->in.quadra = std::move(quadra);
        return T4_OK;
    });
}

int t4_has_coloring(const t4_triangulation* t) { return t && t->in.coloring ? 1 : 0; }

t4_status t4_coloring_text(const t4_triangulation* t, char** out) {
    if (!t || !out)
        return nullArgument();
    if (!t->in.coloring) {
        lastError = "no coloring attached";
        return T4_ERR_INPUT;
    }
    put(out, formatColoringText(*t->in.coloring));
    return T4_OK;
}

t4_status t4_validate(const t4_triangulation* t, char** report) {
    if (!t)
        return nullArgument();
    return guarded([&] {
        auto r = validate(t->in.tri);
        put(report, dump(validationJson(r)));
        return r.isValid ? T4_OK : T4_ERR_DOMAIN;
    });
}

t4_status t4_info(const t4_triangulation* t, char** report) {
    if (!t)
        return nullArgument();
    return guarded([&] {
        auto r = validate(t->in.tri);
        Json j = infoJson(t->in.tri, r);
        j["isosig"] = t->in.tri.isClosedConsistent() ? Json(encodeIsoSig(t->in.tri)) : Json(nullptr);
        put(report, dump(j));
        return T4_OK;
    });
}

t4_status t4_color(t4_triangulation* t, const t4_options* opt, char** report) {
    if (!t)
        return nullArgument();
    return guarded([&] {
        Skeleton skel(t->in.tri);
        Json j;
        if (t->in.coloring) {
            auto check = checkTricoloring(t->in.tri, skel, *t->in.coloring);
            j = {{"mode", "check"}, {"tricoloring", check.isTricoloring}, {"offending", check.offending}};
            Json details = coloringJson(skel, *t->in.coloring);
            for (auto& [k, v] : details.items())
                j[k] = v;
            put(report, dump(j));
            return check.isTricoloring ? T4_OK : T4_ERR_DOMAIN;
        }
        size_t limit = pipelineOptions(opt).coloringLimit;
        auto found = findTricolorings(t->in.tri, skel, limit);
        j = {{"mode", "search"}, {"count", found.size()}, {"limit", limit}, {"colorings", found}};
        if (!found.empty()) {
            j["first"] = coloringJson(skel, found.front());
            t->in.coloring = found.front();
            t->in.quadra.reset();
        }
        put(report, dump(j));
        return found.empty() ? T4_ERR_DOMAIN : T4_OK;
    });
}

t4_status t4_subdivide(const t4_triangulation* t, t4_triangulation** out, char** report) {
    if (!t)
        return nullArgument();
    return guarded([&] {
        if (!t->in.tri.isClosedConsistent())
            throw Error(ErrorKind::Structure, "flag subdivision needs a closed triangulation");
        auto fs = flagSubdivide(t->in.tri);
        Skeleton skel(fs.tri);
        Json j = {{"pentachora", fs.tri.size()}, {"sourcePentachora", t->in.tri.size()}};
        Json details = coloringJson(skel, fs.coloring);
        for (auto& [k, v] : details.items())
            j[k] = v;
        put(report, dump(j));
        if (out)
            *out = wrap({std::move(fs.tri), std::move(fs.coloring), {}});
        return T4_OK;
    });
}

t4_status t4_make_ts(const t4_triangulation* t, const t4_options* opt, t4_triangulation** out, char** report) {
    if (!t)
        return nullArgument();
    return guarded([&] {
        if (!t->in.coloring)
            throw Error(ErrorKind::Input, "make-ts needs a tricoloring");
        auto po = pipelineOptions(opt);
        auto ts = makeTs(t->in.tri, *t->in.coloring, po.conservative);
        Json j = {{"pentachora", ts.tri.size()},
                  {"sourcePentachora", t->in.tri.size()},
                  {"pairsMoved", ts.pairsMoved},
                  {"pairsSkipped", ts.pairsSkipped},
                  {"coloring", ts.coloring},
                  {"quadra", quadraJson(ts.quadra)}};
        put(report, dump(j));
        if (out)
            *out = wrap({std::move(ts.tri), std::move(ts.coloring), std::move(ts.quadra)});
        return T4_OK;
    });
}

t4_status t4_trisect(const t4_triangulation* t, const t4_options* opt, char** report) {
    if (!t)
        return nullArgument();
    return guarded([&] {
        auto r = trisectRoute(t->in, pipelineOptions(opt));
        Json j = routeJson(r);
        if (r.summary.status == TsStatus::TsVerified)
            genusBoundCheck(r.summary, r.route == "pipeline" ? std::optional<size_t>(r.sourcePentachora)
                                                             : std::nullopt);
        put(report, dump(j));
        return r.summary.status == TsStatus::TsVerified ? T4_OK : T4_ERR_DOMAIN;
    });
}

t4_status t4_diagram(const t4_triangulation* t, const t4_options* opt, char** report, char** svg) {
    if (!t)
        return nullArgument();
    return guarded([&] {
        auto d = diagramRun(t->in, pipelineOptions(opt));
        put(report, dump(diagramJson(d)));
        put(svg, diagramSvg(d));
        return T4_OK;
    });
}

t4_status t4_simplify(const t4_triangulation* t, const t4_options* opt, t4_triangulation** out, char** report,
                      char** log) {
    if (!t)
        return nullArgument();
    return guarded([&] {
        t4_options d;
        t4_options_init(&d);
        const t4_options* o = opt ? opt : &d;
        auto po = pipelineOptions(o);
        auto r = trisectRoute(t->in, po);
        if (r.summary.status != TsStatus::TsVerified)
            throw Error(ErrorKind::Structure, "simplify needs a ts-tricoloring: status " + statusName(r.summary.status));
        SimplifyOptions so;
        so.targetVertices = o->target_vertices;
        so.maxSteps = o->max_steps;
        so.retries = o->retries;
        so.seed = o->seed;
        size_t before = Skeleton(r.tri).count(0);
        auto res = simplifyVertices(r.tri, r.coloring, so);
        auto after = verifyTs(res.tri, res.coloring, o->retries, o->seed);
        Json j = {{"route", r.route},
                  {"pentachora", res.tri.size()},
                  {"verticesBefore", before},
                  {"verticesAfter", Skeleton(res.tri).count(0)},
                  {"collapses", res.collapses},
                  {"summary", summaryJson(after)},
                  {"coloring", res.coloring}};
        put(report, dump(j));
        std::string lines;
        for (const auto& l : res.log)
            lines += l + "\n";
        put(log, lines);
        if (out)
            *out = wrap({std::move(res.tri), std::move(res.coloring), {}});
        return after.status == TsStatus::TsVerified ? T4_OK : T4_ERR_DOMAIN;
    });
}

}  // extern "C"
