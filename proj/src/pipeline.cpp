#include "trisect4/pipeline.hpp"

#include "trisect4/error.hpp"

namespace trisect4 {

namespace {

Json boundJson(const TrisectionSummary& s, size_t sourcePentachora, bool pipeline) {
    Json j = {{"sigmaGenus", s.sigmaGenus}, {"limit", s.pentachora / 2}};
    bool holds = size_t(s.sigmaGenus) <= s.pentachora / 2;
    if (pipeline) {
        j["pipelineLimit"] = 60 * sourcePentachora;
        holds = holds && size_t(s.sigmaGenus) <= 60 * sourcePentachora;
    }
    j["holds"] = holds;
    return j;
}

}  // namespace

TrisectRoute trisectRoute(const ColoredInput& in, const PipelineOptions& opt) {
    if (!in.tri.isClosedConsistent())
        throw Error(ErrorKind::Structure, "triangulation is not closed: every facet must be glued exactly once");
    TrisectRoute r;
    r.sourcePentachora = in.tri.size();
    Skeleton skel(in.tri);

    auto accept = [&](const std::string& route, const Tricoloring& c, const TrisectionSummary& s) {
        r.route = route;
        r.tri = in.tri;
        r.coloring = c;
        r.summary = s;
        if (route == "given")
            r.quadra = in.quadra;
    };

    if (in.coloring) {
        auto s = verifyTs(in.tri, *in.coloring, opt.retries, opt.seed);
        if (s.status == TsStatus::TsVerified || opt.precolored) {
            accept("given", *in.coloring, s);
            return r;
        }
        r.firstAttempt = s;
    } else if (opt.precolored) {
        throw Error(ErrorKind::Input, "a precolored run needs a coloring");
    } else {
        for (const auto& c : findTricolorings(in.tri, skel, opt.coloringLimit)) {
            auto s = verifyTs(in.tri, c, opt.retries, opt.seed);
            if (s.status == TsStatus::TsVerified) {
                accept("direct", c, s);
                return r;
            }
            if (!r.firstAttempt)
                r.firstAttempt = s;
        }
    }

    auto flag = flagSubdivide(in.tri);
    auto ts = makeTs(flag.tri, flag.coloring, opt.conservative);
    r.route = "pipeline";
    r.summary = verifyTs(ts.tri, ts.coloring, opt.retries, opt.seed);
    r.tri = std::move(ts.tri);
    r.coloring = std::move(ts.coloring);
    r.quadra = std::move(ts.quadra);
    return r;
}

Json routeJson(const TrisectRoute& r) {
    Json j = {{"route", r.route}, {"sourcePentachora", r.sourcePentachora}, {"summary", summaryJson(r.summary)}};
    if (r.summary.status == TsStatus::TsVerified)
        j["genusBound"] = boundJson(r.summary, r.sourcePentachora, r.route == "pipeline");
    if (r.firstAttempt)
        j["firstAttempt"] = summaryJson(*r.firstAttempt);
    j["coloring"] = r.coloring;
    return j;
}

DiagramRun diagramRun(const ColoredInput& in, const PipelineOptions& opt) {
    DiagramRun d;
    d.route = trisectRoute(in, opt);
    if (d.route.summary.status != TsStatus::TsVerified)
        throw Error(ErrorKind::Structure, "no ts-tricoloring available: status " + statusName(d.route.summary.status));
    if (d.route.quadra) {
        d.tri = d.route.tri;
        d.coloring = d.route.coloring;
        d.quadra = *d.route.quadra;
        d.summary = d.route.summary;
    } else {
        // The diagram needs the quadra structure, which the 2-4 moves provide.
        auto ts = makeTs(d.route.tri, d.route.coloring, opt.conservative);
        d.tri = std::move(ts.tri);
        d.coloring = std::move(ts.coloring);
        d.quadra = std::move(ts.quadra);
        d.summary = verifyTs(d.tri, d.coloring, opt.retries, opt.seed);
        if (d.summary.status != TsStatus::TsVerified)
            throw Error(ErrorKind::Structure, "2-4 moves lost ts verification: " + statusName(d.summary.status));
    }
    Skeleton skel(d.tri);
    d.sigma = centralSurface(d.tri, skel, d.coloring);
    d.annuli = annulusDecomposition(d.tri, skel, d.coloring, d.quadra);
    for (int f = 0; f < 3; ++f)
        d.discs[size_t(f)] = meridianDiscs(d.tri, skel, d.coloring, d.quadra, f);
    d.raw = traceCurves(d.discs, d.annuli, d.sigma);
    d.cleaned = cleanupParallel(d.raw, d.annuli, d.sigma);
    return d;
}

Json diagramJson(const DiagramRun& d) {
    Json disc = Json::array(), raw = Json::array();
    for (int f = 0; f < 3; ++f) {
        disc.push_back(d.discs[size_t(f)].size());
        raw.push_back(d.raw.families[size_t(f)].size());
    }
    Json rawPatterns = Json::array();
    for (const auto& p : d.raw.patterns)
        rawPatterns.push_back(
            {{"group", p.group}, {"coreCurves", p.coreCurves}, {"boundaryParallelArcs", p.boundaryParallelArcs},
             {"transverseArcs", p.transverseArcs}});
    return {{"route", d.route.route},
            {"pentachora", d.tri.size()},
            {"summary", summaryJson(d.summary)},
            {"discs", disc},
            {"rawCurves", raw},
            {"rawPatterns", rawPatterns},
            {"rawIntersections", d.raw.intersections},
            {"curveSystem", Json::parse(curveSystemJson(d.cleaned, d.annuli))}};
}

std::string diagramSvg(const DiagramRun& d) {
    DiagramLegend lg;
    lg.sigmaGenus = d.summary.sigmaGenus;
    lg.handlebodyGenera = d.summary.handlebodyGenera;
    lg.title = "trisection diagram, " + std::to_string(d.tri.size()) + " pentachora";
    return renderSvg(d.cleaned, d.sigma, d.annuli, lg);
}

}  // namespace trisect4
