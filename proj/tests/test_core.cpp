#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "trisect4/error.hpp"
#include "trisect4/io.hpp"
#include "trisect4/isosig.hpp"
#include "trisect4/skeleton.hpp"
#include "trisect4/validation.hpp"

using namespace trisect4;

TEST_CASE("perm composition applies the right factor first") {
    Perm5 p(1, 2, 3, 4, 0), q = Perm5::transposition(0, 1);
    auto pq = p * q;
    for (int i = 0; i < 5; ++i)
        CHECK(pq[i] == p[q[i]]);
    CHECK(p * p.inverse() == Perm5());
    CHECK(q.sign() == -1);
    CHECK(p.sign() == 1);
}

TEST_CASE("lexicographic perm index covers S5") {
    std::set<Perm5> seen;
    for (int i = 0; i < 120; ++i) {
        auto p = Perm5::fromOrderedIndex(i);
        CHECK(p.isValid());
        CHECK(p.orderedIndex() == i);
        seen.insert(p);
    }
    CHECK(seen.size() == 120);
    CHECK(Perm5::fromOrderedIndex(0) == Perm5());
    CHECK(Perm5::fromOrderedIndex(119) == Perm5(4, 3, 2, 1, 0));
}

TEST_CASE("face masks: facets are indexed by the omitted vertex") {
    for (int f = 0; f < 5; ++f)
        CHECK(faces::mask(3, f) == (0x1Fu ^ (1u << f)));
    CHECK(faces::mask(1, 0) == 0b00011u);
    CHECK(faces::mask(1, 9) == 0b11000u);
    CHECK(faces::mask(2, 0) == 0b00111u);
    for (int d = 0; d < 4; ++d)
        for (int i = 0; i < faces::count(d); ++i) {
            CHECK(faces::dimOf(faces::mask(d, i)) == d);
            CHECK(faces::index(faces::mask(d, i)) == i);
        }
}

TEST_CASE("join stores both directions and unjoin clears both") {
    Triangulation t(2);
    Perm5 g(1, 0, 2, 3, 4);
    t.join(0, 0, 1, g);
    REQUIRE(t.isGlued(1, 1));
    CHECK(t.adjacent(1, 1)->pent == 0);
    CHECK(t.adjacent(1, 1)->gluing == g.inverse());
    t.unjoin(1, 1);
    CHECK_FALSE(t.isGlued(0, 0));
}

TEST_CASE("S4 skeleton counts") {
    auto t = fixtures::s4();
    Skeleton sk(t);
    CHECK(sk.count(0) == 5);
    CHECK(sk.count(1) == 10);
    CHECK(sk.count(2) == 10);
    CHECK(sk.count(3) == 5);
    CHECK(sk.eulerCharacteristic() == 2);
    auto r = validate(t);
    CHECK(r.isValid);
    CHECK(r.isOrientable);
}

TEST_CASE("six pentachoron fixtures") {
    for (auto sig : {fixtures::kTA, fixtures::kTB, fixtures::kTC}) {
        CAPTURE(sig);
        auto t = decodeIsoSig(sig);
        auto r = validate(t);
        CHECK(t.size() == 6);
        CHECK(r.isValid);
        CHECK(r.isOrientable);
        CHECK(r.classCounts == std::array<size_t, 5>{3, 12, 18, 15, 6});
        CHECK(r.eulerCharacteristic == 0);
    }
    auto d = validate(decodeIsoSig(fixtures::kTD));
    CHECK(d.isValid);
    CHECK(d.classCounts[0] == 1);
    CHECK(d.eulerCharacteristic == 0);
}

TEST_CASE("fixture signatures are canonical") {
    for (auto sig : {fixtures::kTA, fixtures::kTB, fixtures::kTC, fixtures::kTD})
        CHECK(encodeIsoSig(decodeIsoSig(sig)) == sig);
    CHECK(encodeIsoSig(fixtures::s4()) == "cPkbbbbaaaaaaaa");
}

TEST_CASE("isosig is invariant under relabelling") {
    std::mt19937_64 rng(7);
    for (auto sig : {fixtures::kTA, fixtures::kTB, fixtures::kTC, fixtures::kTD})
        for (int k = 0; k < 20; ++k) {
            auto t = fixtures::randomRelabel(decodeIsoSig(sig), rng);
            CHECK(encodeIsoSig(t) == sig);
            CHECK(validate(t).isValid);
        }
}

TEST_CASE("distinct fixtures are not isomorphic") {
    auto a = decodeIsoSig(fixtures::kTA), b = decodeIsoSig(fixtures::kTB), c = decodeIsoSig(fixtures::kTC);
    CHECK_FALSE(isIsomorphic(a, b));
    CHECK_FALSE(isIsomorphic(b, c));
    std::mt19937_64 rng(3);
    CHECK(isIsomorphic(a, fixtures::randomRelabel(a, rng)));
}

TEST_CASE("malformed signatures raise parse errors") {
    for (auto bad : {"", "zzzz", "gLAAMQ", "cMkabbb2aHaua2"}) {
        CAPTURE(bad);
        try {
            decodeIsoSig(bad);
            FAIL("accepted");
        } catch (const Error& e) {
            CHECK((e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::Input || e.kind() == ErrorKind::Dimension));
        }
    }
}

TEST_CASE("gluing text and JSON round trip") {
    for (auto sig : {fixtures::kTA, fixtures::kTD}) {
        auto t = decodeIsoSig(sig);
        CHECK(parseGluingText(formatGluingText(t)) == t);
        CHECK(parseGluingJson(formatGluingJson(t)) == t);
        CHECK(parseGluingAuto(formatGluingJson(t)) == t);
    }
}

TEST_CASE("malformed gluing files are rejected") {
    CHECK_THROWS_AS(parseGluingText("pentachora 1\n0 0 -> 0 0 : 0123\n"), Error);
    CHECK_THROWS_AS(parseGluingText("0 0 -> 1 0 : 01234\n"), Error);
    CHECK_THROWS_AS(parseGluingText("pentachora 1\n0 0 -> 3 0 : 01234\n"), Error);
    CHECK_THROWS_AS(parseGluingJson("{\"pentachora\": 2"), Error);
}

TEST_CASE("an open triangulation fails validation") {
    Triangulation t(2);
    t.join(0, 0, 1, Perm5());
    auto r = validate(t);
    CHECK_FALSE(r.isValid);
    CHECK_FALSE(r.failures.empty());
}

TEST_CASE("coloring text round trip") {
    Tricoloring c{0, 2, 1, 1};
    CHECK(parseColoringText(formatColoringText(c), 4) == c);
    CHECK_THROWS_AS(parseColoringText("0 3\n", 4), Error);
    CHECK_THROWS_AS(parseColoringText("7 0\n", 4), Error);
}
