#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "trisect4/isosig.hpp"
#include "trisect4/skeleton.hpp"

using namespace trisect4;

namespace {

// Independent check of the (2,2,1) pattern straight from the local vertices.
bool brutePattern(const std::array<int, 5>& col) {
    std::array<int, 3> n{};
    for (int c : col)
        ++n[size_t(c)];
    std::sort(n.begin(), n.end());
    return n == std::array<int, 3>{1, 2, 2};
}

Tricoloring relabelColors(Tricoloring c) {
    std::array<int, 3> map{-1, -1, -1};
    int next = 0;
    for (int& x : c) {
        if (map[size_t(x)] < 0)
            map[size_t(x)] = next++;
        x = map[size_t(x)];
    }
    return c;
}

}  // namespace

TEST_CASE("S4 tricolorings match brute force over 3^5 assignments") {
    auto t = fixtures::s4();
    Skeleton sk(t);
    std::set<Tricoloring> oracle;
    size_t raw = 0;
    for (int code = 0; code < 243; ++code) {
        std::array<int, 5> col{};
        for (int v = 0, x = code; v < 5; ++v, x /= 3)
            col[size_t(v)] = x % 3;
        if (!brutePattern(col))
            continue;
        ++raw;
        oracle.insert(relabelColors(Tricoloring(col.begin(), col.end())));
    }
    CHECK(raw == 90);
    CHECK(oracle.size() == 15);
    auto found = findTricolorings(t, sk, 1000);
    std::set<Tricoloring> got;
    for (const auto& c : found) {
        CHECK(checkTricoloring(t, sk, c).isTricoloring);
        got.insert(relabelColors(c));
    }
    CHECK(found.size() == 15);
    CHECK(got == oracle);
}

TEST_CASE("the S4 coloring is a c-tricoloring") {
    auto t = fixtures::s4();
    Skeleton sk(t);
    auto c = fixtures::s4Coloring();
    CHECK(checkTricoloring(t, sk, c).isTricoloring);
    CHECK(isCTricoloring(sk, c));
    auto g2 = monochromaticGraph(sk, c, 2);
    CHECK(g2.nodes.size() == 1);
    CHECK(g2.edges.empty());
    CHECK(singletonVertex(sk, c, 0) == 4);
}

TEST_CASE("a bad pattern is reported per pentachoron") {
    auto t = fixtures::s4();
    Skeleton sk(t);
    auto ck = checkTricoloring(t, sk, {0, 0, 0, 1, 2});
    CHECK_FALSE(ck.isTricoloring);
    CHECK(ck.offending.size() == 2);
}

TEST_CASE("T_A: monochromatic graphs are circles") {
    auto t = decodeIsoSig(fixtures::kTA);
    Skeleton sk(t);
    auto cs = findTricolorings(t, sk, 64);
    REQUIRE_FALSE(cs.empty());
    for (int k = 0; k < 3; ++k) {
        auto g = monochromaticGraph(sk, cs[0], k);
        CHECK(g.connected);
        CHECK(g.betti1 == 1);
    }
}

TEST_CASE("coloring verdicts are invariant under color permutations and relabelling") {
    std::mt19937_64 rng(11);
    for (auto sig : {fixtures::kTA, fixtures::kTB, fixtures::kTC}) {
        auto t = decodeIsoSig(sig);
        Skeleton sk(t);
        auto c = findTricolorings(t, sk, 1).at(0);
        std::array<int, 3> perm{2, 0, 1};
        Tricoloring pc;
        for (int x : c)
            pc.push_back(perm[size_t(x)]);
        CHECK(checkTricoloring(t, sk, pc).isTricoloring);
        CHECK(isCTricoloring(sk, pc) == isCTricoloring(sk, c));

        std::vector<uint32_t> order(t.size());
        std::iota(order.begin(), order.end(), 0u);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<Perm5> maps;
        for (size_t i = 0; i < t.size(); ++i)
            maps.push_back(fixtures::randomPerm(rng));
        auto r = t.relabelled(order, maps);
        Skeleton rs(r);
        Tricoloring rc(rs.count(0), -1);
        for (size_t p = 0; p < t.size(); ++p)
            for (int v = 0; v < 5; ++v)
                rc[rs.classOf(0, order[p], maps[p][v])] = c[sk.classOf(0, p, v)];
        CHECK(checkTricoloring(r, rs, rc).isTricoloring);
        CHECK(isCTricoloring(rs, rc) == isCTricoloring(sk, c));
        CHECK(findTricolorings(r, rs, 64).size() == findTricolorings(t, sk, 64).size());
    }
}

TEST_CASE("T_D has a single vertex and so no tricoloring") {
    auto t = decodeIsoSig(fixtures::kTD);
    Skeleton sk(t);
    CHECK(findTricolorings(t, sk, 64).empty());
}
