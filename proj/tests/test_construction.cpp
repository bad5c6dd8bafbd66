#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "trisect4/construction.hpp"
#include "trisect4/isosig.hpp"
#include "trisect4/skeleton.hpp"
#include "trisect4/trisection.hpp"
#include "trisect4/validation.hpp"

using namespace trisect4;

TEST_CASE("flag subdivision of S4") {
    auto f = flagSubdivide(fixtures::s4());
    CHECK(f.tri.size() == 120);
    auto r = validate(f.tri);
    CHECK(r.isValid);
    CHECK(r.eulerCharacteristic == 2);
    Skeleton sk(f.tri);
    CHECK(checkTricoloring(f.tri, sk, f.coloring).isTricoloring);
    CHECK(monochromaticGraph(sk, f.coloring, 0).connected);
    CHECK(monochromaticGraph(sk, f.coloring, 2).connected);
    auto g1 = monochromaticGraph(sk, f.coloring, 1);
    CHECK(g1.edges.empty());
    // Color 1 sits at the barycenters of edges.
    CHECK(g1.nodes.size() == 10);
}

TEST_CASE("flag subdivision multiplies by 60 and keeps chi") {
    for (auto sig : {fixtures::kTA, fixtures::kTD}) {
        auto t = decodeIsoSig(sig);
        auto f = flagSubdivide(t);
        CHECK(f.tri.size() == 60 * t.size());
        auto r = validate(f.tri);
        CHECK(r.isValid);
        CHECK(r.eulerCharacteristic == validate(t).eulerCharacteristic);
    }
}

TEST_CASE("flag indices are a bijection onto 0..59") {
    std::set<int> seen;
    for (int f = 0; f < 5; ++f)
        for (int g = 0; g < 5; ++g)
            for (int h = 0; h < 5; ++h)
                if (f != g && g != h && f != h)
                    seen.insert(flagIndex(f, g, h));
    CHECK(seen.size() == 60);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == 59);
}

TEST_CASE("double pentachora pair every pentachoron once") {
    auto f = flagSubdivide(fixtures::s4());
    Skeleton sk(f.tri);
    auto pairs = doublePentachoronDecomposition(f.tri, sk, f.coloring);
    CHECK(pairs.size() == 60);
    std::vector<int> used(f.tri.size(), 0);
    for (const auto& d : pairs) {
        ++used[d.first];
        ++used[d.second];
        CHECK(f.tri.adjacent(d.first, d.apexFirst)->pent == d.second);
    }
    CHECK(std::all_of(used.begin(), used.end(), [](int u) { return u == 1; }));
}

TEST_CASE("make_ts on the flag subdivision of S4") {
    auto f = flagSubdivide(fixtures::s4());
    auto ts = makeTs(f.tri, f.coloring);
    CHECK(ts.tri.size() == 240);
    CHECK(ts.quadra.coversAll);
    CHECK(ts.quadra.groups.size() == 60);
    CHECK(ts.pairsMoved == 60);
    auto r = validate(ts.tri);
    CHECK(r.isValid);
    CHECK(r.eulerCharacteristic == 2);
    auto s = verifyTs(ts.tri, ts.coloring);
    CHECK(s.status == TsStatus::TsVerified);
    CHECK(s.sigmaGenus == 61);
}

TEST_CASE("quadra groups share exactly one common edge") {
    auto t = decodeIsoSig(fixtures::kTB);
    Skeleton sk(t);
    auto c = findTricolorings(t, sk, 1).at(0);
    auto ts = makeTs(t, c);
    CHECK(ts.tri.size() == 12);
    Skeleton tsk(ts.tri);
    for (const auto& g : ts.quadra.groups) {
        size_t containing = 0;
        for (size_t p = 0; p < ts.tri.size(); ++p)
            for (int e = 0; e < 10; ++e)
                if (tsk.classOf(1, p, e) == g.commonEdge) {
                    ++containing;
                    break;
                }
        CHECK(containing == 4);
    }
}

TEST_CASE("twoFourMove adds two pentachora") {
    auto t = fixtures::s4();
    Skeleton sk(t);
    auto pairs = doublePentachoronDecomposition(t, sk, fixtures::s4Coloring());
    REQUIRE(pairs.size() == 1);
    auto m = twoFourMove(t, pairs[0]);
    CHECK(m.size() == 4);
    CHECK(validate(m).eulerCharacteristic == 2);
}
