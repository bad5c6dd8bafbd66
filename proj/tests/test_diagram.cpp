#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "trisect4/construction.hpp"
#include "trisect4/diagram.hpp"
#include "trisect4/isosig.hpp"
#include "trisect4/pipeline.hpp"
#include "trisect4/trisection.hpp"

using namespace trisect4;

namespace {

struct Setup {
    TsResult ts;
    Skeleton sk;
    QuadSurface sigma;
    std::vector<Annulus> annuli;
    std::array<std::vector<MeridianDisc>, 3> discs;
    TrisectionSummary summary;

    Setup(const Triangulation& t, const Tricoloring& c)
        : ts(makeTs(t, c)), sk(ts.tri), sigma(centralSurface(ts.tri, sk, ts.coloring)),
          annuli(annulusDecomposition(ts.tri, sk, ts.coloring, ts.quadra)), summary(verifyTs(ts.tri, ts.coloring)) {
        for (int f = 0; f < 3; ++f)
            discs[size_t(f)] = meridianDiscs(ts.tri, sk, ts.coloring, ts.quadra, f);
    }
};

Setup fromSig(const char* sig) {
    auto t = decodeIsoSig(sig);
    Skeleton sk(t);
    return Setup(t, findTricolorings(t, sk, 1).at(0));
}

void checkPatterns(const CurveSystem& raw) {
    REQUIRE_FALSE(raw.patterns.empty());
    std::set<size_t> transverseCounts;
    for (const auto& p : raw.patterns) {
        int torus = -1;
        for (int f = 0; f < 3; ++f)
            if (p.transverseArcs[size_t(f)] > 0) {
                CHECK(torus == -1);
                torus = f;
            }
        REQUIRE(torus >= 0);
        transverseCounts.insert(p.transverseArcs[size_t(torus)]);
        CHECK(p.coreCurves[size_t(torus)] == 0);
        int a = (torus + 1) % 3, b = (torus + 2) % 3;
        bool coreAndParallel = (p.coreCurves[size_t(a)] >= 1 && p.boundaryParallelArcs[size_t(b)] > 0) ||
                               (p.coreCurves[size_t(b)] >= 1 && p.boundaryParallelArcs[size_t(a)] > 0);
        CHECK(coreAndParallel);
    }
    CHECK(transverseCounts.size() == 1);
}

bool closedArcs(const Curve& c) {
    if (c.arcs.empty())
        return false;
    for (size_t i = 0; i < c.arcs.size(); ++i) {
        const auto& a = c.arcs[i];
        const auto& b = c.arcs[(i + 1) % c.arcs.size()];
        if (a.edges[1] != b.edges[0] || a.params[1] != b.params[0])
            return false;
    }
    return true;
}

}  // namespace

TEST_CASE("spine marks are distinct per family") {
    std::set<Fraction> spine, crossbar;
    for (int f = 0; f < 3; ++f) {
        spine.insert(spineMark(f));
        crossbar.insert(crossbarMark(f));
        CHECK(spineMark(f) > Fraction(0));
        CHECK(spineMark(f) < Fraction(1));
        CHECK(crossbarMark(f) > Fraction(0));
        CHECK(crossbarMark(f) < Fraction(1));
    }
    CHECK(spine.size() == 3);
    CHECK(crossbar.size() == 3);
}

TEST_CASE("annuli of make_ts on T_B") {
    auto s = fromSig(fixtures::kTB);
    CHECK(s.annuli.size() == s.ts.quadra.groups.size());
    for (const auto& a : s.annuli)
        for (size_t k = 0; k < 4; ++k)
            CHECK(std::count(a.squares.begin(), a.squares.end(), a.squares[k]) == 1);
}

TEST_CASE("meridian discs have one dual element each") {
    auto s = fromSig(fixtures::kTB);
    for (int f = 0; f < 3; ++f) {
        std::set<DualElement> duals;
        for (const auto& d : s.discs[size_t(f)]) {
            CHECK(d.family == f);
            CHECK_FALSE(d.pieces.empty());
            CHECK_FALSE(d.boundary.empty());
            duals.insert(d.dual);
        }
        CHECK(duals.size() == s.discs[size_t(f)].size());
    }
}

TEST_CASE("curve systems are embedded, closed and complete") {
    for (auto sig : {fixtures::kTB, fixtures::kTC}) {
        CAPTURE(sig);
        auto s = fromSig(sig);
        auto raw = traceCurves(s.discs, s.annuli, s.sigma);
        CHECK(raw.embedded);
        CHECK(raw.transverse);
        checkPatterns(raw);
        auto clean = cleanupParallel(raw, s.annuli, s.sigma);
        CHECK(clean.embedded);
        CHECK(clean.transverse);
        for (int f = 0; f < 3; ++f) {
            CHECK(clean.families[size_t(f)].size() >= size_t(s.summary.sigmaGenus));
            CHECK(clean.families[size_t(f)].size() <= raw.families[size_t(f)].size());
            for (const auto& c : clean.families[size_t(f)])
                CHECK(closedArcs(c));
        }
    }
}

TEST_CASE("cleanup is idempotent and removes duplicates") {
    auto s = fromSig(fixtures::kTB);
    auto raw = traceCurves(s.discs, s.annuli, s.sigma);
    auto once = cleanupParallel(raw, s.annuli, s.sigma);
    auto twice = cleanupParallel(once, s.annuli, s.sigma);
    CHECK(curveSystemJson(once, s.annuli) == curveSystemJson(twice, s.annuli));
    auto doubled = once;
    for (auto& fam : doubled.families) {
        auto copy = fam;
        fam.insert(fam.end(), copy.begin(), copy.end());
    }
    auto cleaned = cleanupParallel(doubled, s.annuli, s.sigma);
    CHECK(curveSystemJson(cleaned, s.annuli) == curveSystemJson(once, s.annuli));
}

TEST_CASE("recount reproduces the traced statistics") {
    auto s = fromSig(fixtures::kTC);
    auto raw = traceCurves(s.discs, s.annuli, s.sigma);
    auto again = raw;
    again.patterns.clear();
    again.intersections = {};
    recountCurveSystem(again, s.annuli, s.sigma);
    CHECK(curveSystemJson(again, s.annuli) == curveSystemJson(raw, s.annuli));
}

TEST_CASE("diagram of the S4 pipeline") {
    auto f = flagSubdivide(fixtures::s4());
    Setup s(f.tri, f.coloring);
    CHECK(s.summary.sigmaGenus == 61);
    auto raw = traceCurves(s.discs, s.annuli, s.sigma);
    CHECK(raw.embedded);
    checkPatterns(raw);
    auto clean = cleanupParallel(raw, s.annuli, s.sigma);
    for (const auto& fam : clean.families)
        CHECK(fam.size() >= 61);
}

TEST_CASE("svg rendering is deterministic and handles an empty system") {
    auto s = fromSig(fixtures::kTB);
    auto clean = cleanupParallel(traceCurves(s.discs, s.annuli, s.sigma), s.annuli, s.sigma);
    DiagramLegend legend{s.summary.sigmaGenus, s.summary.handlebodyGenera, "T_B"};
    auto a = renderSvg(clean, s.sigma, s.annuli, legend);
    CHECK(a == renderSvg(clean, s.sigma, s.annuli, legend));
    CHECK(a.find("<svg") != std::string::npos);
    CHECK(a.find("<polyline") != std::string::npos);
    CHECK(a.find("</svg>") != std::string::npos);

    CurveSystem empty;
    auto e = renderSvg(empty, QuadSurface{}, {}, DiagramLegend{0, {0, 0, 0}, "empty"});
    CHECK(e.find("</svg>") != std::string::npos);
    CHECK(e.find("empty") != std::string::npos);
    CHECK(e.find("<polyline") == std::string::npos);
}

TEST_CASE("diagram runs are reproducible") {
    ColoredInput in{decodeIsoSig(fixtures::kTB), std::nullopt, std::nullopt};
    PipelineOptions opt;
    auto a = diagramRun(in, opt), b = diagramRun(in, opt);
    CHECK(diagramJson(a).dump() == diagramJson(b).dump());
    CHECK(diagramSvg(a) == diagramSvg(b));
    CHECK(a.tri.size() == 12);
    CHECK(a.summary.sigmaGenus == 4);
}
