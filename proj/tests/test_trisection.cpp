#include <doctest.h>

#include "fixtures.hpp"
#include "trisect4/construction.hpp"
#include "trisect4/isosig.hpp"
#include "trisect4/skeleton.hpp"
#include "trisect4/trisection.hpp"

using namespace trisect4;

namespace {

// Cell counts of the central surface read off the skeleton: vertices are
// triangle classes with one vertex of each color, edges are tetrahedron
// classes colored (2,1,1), faces are pentachora.
std::array<size_t, 3> sigmaCellOracle(const Triangulation& t, const Tricoloring& c) {
    Skeleton sk(t);
    auto colorsOf = [&](const FaceSlot& s, int dim) {
        std::array<int, 3> n{};
        unsigned m = faces::mask(dim, s.face);
        for (int v = 0; v < 5; ++v)
            if (m & (1u << v))
                ++n[size_t(c[sk.classOf(0, s.pent, v)])];
        return n;
    };
    size_t v = 0, e = 0;
    for (const auto& cl : sk.classes(2))
        v += colorsOf(cl.representative(), 2) == std::array<int, 3>{1, 1, 1};
    for (const auto& cl : sk.classes(3)) {
        auto n = colorsOf(cl.representative(), 3);
        std::sort(n.begin(), n.end());
        e += n == std::array<int, 3>{1, 1, 2};
    }
    return {v, e, t.size()};
}

}  // namespace

TEST_CASE("central surface of S4 by hand") {
    auto t = fixtures::s4();
    auto c = fixtures::s4Coloring();
    CHECK(sigmaCellOracle(t, c) == std::array<size_t, 3>{4, 4, 2});
    Skeleton sk(t);
    auto q = centralSurface(t, sk, c);
    CHECK(q.vertices == 4);
    CHECK(q.edges == 4);
    CHECK(q.quads.size() == 2);
    CHECK(q.euler == 2);
    CHECK(q.connected());
    CHECK(q.genus() == 0);
}

TEST_CASE("central surface cell counts match the skeleton oracle") {
    for (auto sig : {fixtures::kTA, fixtures::kTB, fixtures::kTC}) {
        auto t = decodeIsoSig(sig);
        Skeleton sk(t);
        auto c = findTricolorings(t, sk, 1).at(0);
        auto q = centralSurface(t, sk, c);
        auto o = sigmaCellOracle(t, c);
        CHECK(q.vertices == o[0]);
        CHECK(q.edges == o[1]);
        CHECK(q.quads.size() == o[2]);
    }
    auto f = flagSubdivide(fixtures::s4());
    auto ts = makeTs(f.tri, f.coloring);
    Skeleton sk(ts.tri);
    auto q = centralSurface(ts.tri, sk, ts.coloring);
    auto o = sigmaCellOracle(ts.tri, ts.coloring);
    CHECK(q.vertices == o[0]);
    CHECK(q.edges == o[1]);
}

TEST_CASE("S4 is ts-verified with genus 0") {
    auto s = verifyTs(fixtures::s4(), fixtures::s4Coloring());
    CHECK(s.status == TsStatus::TsVerified);
    CHECK(s.sigmaGenus == 0);
    CHECK(s.sigmaComponents == 1);
    CHECK(s.handlebodyGenera == std::array<long, 3>{0, 0, 0});
    for (const auto& g : s.pieceGenera)
        CHECK(g == 0);
    CHECK(s.euler == 2);
    CHECK(s.eulerResidual == 0);
    CHECK(genusBoundCheck(s));
}

TEST_CASE("T_A gives three disjoint tori and no trisection") {
    auto t = decodeIsoSig(fixtures::kTA);
    Skeleton sk(t);
    auto c = findTricolorings(t, sk, 1).at(0);
    auto s = verifyTs(t, c);
    CHECK(s.status == TsStatus::CTricolored);
    CHECK(s.sigmaComponents == 3);
    CHECK(s.sigmaComponentGenera == std::vector<int>{1, 1, 1});
    CHECK(s.gammaConnected == std::array<bool, 3>{true, true, true});
}

TEST_CASE("T_B and T_C trisect S1 x S3 with genus 1") {
    for (auto sig : {fixtures::kTB, fixtures::kTC}) {
        CAPTURE(sig);
        auto t = decodeIsoSig(sig);
        Skeleton sk(t);
        auto c = findTricolorings(t, sk, 1).at(0);
        auto s = verifyTs(t, c);
        CHECK(s.status == TsStatus::TsVerified);
        CHECK(s.sigmaGenus == 1);
        CHECK(s.sigmaComponents == 1);
        CHECK(s.handlebodyGenera == std::array<long, 3>{1, 1, 1});
        for (const auto& g : s.pieceGenera)
            CHECK(g == 1);
        CHECK(s.euler == 2 + s.sigmaGenus - 3);
        CHECK(genusBoundCheck(s));
    }
}

TEST_CASE("color permutations do not change the verdict") {
    auto t = decodeIsoSig(fixtures::kTB);
    Skeleton sk(t);
    auto c = findTricolorings(t, sk, 1).at(0);
    std::array<std::array<int, 3>, 3> perms{{{1, 0, 2}, {2, 1, 0}, {1, 2, 0}}};
    for (const auto& p : perms) {
        Tricoloring pc;
        for (int x : c)
            pc.push_back(p[size_t(x)]);
        auto s = verifyTs(t, pc);
        CHECK(s.status == TsStatus::TsVerified);
        CHECK(s.sigmaGenus == 1);
    }
}

TEST_CASE("spine collapse is reproducible for a seed") {
    auto f = flagSubdivide(fixtures::s4());
    auto ts = makeTs(f.tri, f.coloring);
    Skeleton sk(ts.tri);
    auto sp = spineComplex(ts.tri, sk, ts.coloring, 0, 1);
    auto a = collapseToGraph(sp, 64, 5), b = collapseToGraph(sp, 64, 5);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->steps == b->steps);
    CHECK(a->components == 1);
}

TEST_CASE("a non-tricoloring is reported as such") {
    auto s = verifyTs(fixtures::s4(), {0, 0, 0, 1, 2});
    CHECK(s.status == TsStatus::NotTricolored);
}
