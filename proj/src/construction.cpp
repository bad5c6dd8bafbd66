#include "trisect4/construction.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>

#include "rebuild.hpp"
#include "trisect4/error.hpp"

namespace trisect4 {

namespace {

struct Flag {
    int f, g, h;
    std::array<unsigned, 5> names;  // bitmask of the original face each vertex is the barycentre of
};

const std::vector<Flag>& flags() {
    static const std::vector<Flag> table = [] {
        std::vector<Flag> t;
        for (int f = 0; f < 5; ++f)
            for (int g = 0; g < 5; ++g)
                for (int h = 0; h < 5; ++h) {
                    if (f == g || g == h || f == h)
                        continue;
                    unsigned facet = 0x1Fu ^ (1u << f);
                    unsigned tri = facet ^ (1u << g);
                    unsigned edge = tri ^ (1u << h);
                    unsigned a = 1u << std::countr_zero(edge);
                    unsigned b = edge ^ a;
                    t.push_back({f, g, h, {a, b, tri, facet, 0x1Fu}});
                }
        return t;
    }();
    return table;
}

int positionOf(const std::array<unsigned, 5>& names, unsigned name) {
    for (int i = 0; i < 5; ++i)
        if (names[size_t(i)] == name)
            return i;
    return -1;
}

}  // namespace

int flagIndex(int f, int g, int h) {
    const auto& t = flags();
    for (size_t i = 0; i < t.size(); ++i)
        if (t[i].f == f && t[i].g == g && t[i].h == h)
            return int(i);
    throw Error(ErrorKind::Input, "flag indices must be pairwise distinct vertices 0..4");
}

ColoredTriangulation flagSubdivide(const Triangulation& tri) {
    if (!tri.isClosedConsistent())
        throw Error(ErrorKind::Input, "flag subdivision needs a closed consistent triangulation");
    const auto& fl = flags();
    const size_t nf = fl.size();
    std::map<std::array<unsigned, 5>, int> bySortedNames;
    for (size_t i = 0; i < nf; ++i) {
        auto key = fl[i].names;
        std::sort(key.begin(), key.end());
        bySortedNames[key] = int(i);
    }
    // Flags of one pentachoron sharing four names are glued along the facet
    // opposite the fifth; the facet opposite the pentachoron barycentre lies
    // in an original facet.
    Triangulation out(tri.size() * nf);
    for (size_t p = 0; p < tri.size(); ++p)
        for (size_t x = 0; x < nf; ++x) {
            const auto& X = fl[x];
            const size_t px = p * nf + x;
            for (int i = 0; i < 4; ++i) {
                if (out.isGlued(px, i))
                    continue;
                for (size_t y = 0; y < nf; ++y) {
                    if (y == x)
                        continue;
                    const auto& Y = fl[y];
                    std::array<int, 5> img{};
                    int missing = -1, shared = 0;
                    for (int v = 0; v < 5; ++v) {
                        if (v == i)
                            continue;
                        img[size_t(v)] = positionOf(Y.names, X.names[size_t(v)]);
                        if (img[size_t(v)] >= 0)
                            ++shared;
                    }
                    if (shared != 4)
                        continue;
                    for (int w = 0; w < 5; ++w)
                        if (positionOf(X.names, Y.names[size_t(w)]) < 0)
                            missing = w;
                    img[size_t(i)] = missing;
                    out.join(px, i, p * nf + y, Perm5(img[0], img[1], img[2], img[3], img[4]));
                    break;
                }
            }
            if (out.isGlued(px, 4))
                continue;
            const auto& a = *tri.adjacent(p, X.f);
            std::array<unsigned, 5> mapped{};
            for (int v = 0; v < 5; ++v)
                mapped[size_t(v)] = a.gluing.imageMask(X.names[size_t(v)]);
            auto key = mapped;
            std::sort(key.begin(), key.end());
            const int y = bySortedNames.at(key);
            std::array<int, 5> img{};
            for (int v = 0; v < 5; ++v)
                img[size_t(v)] = positionOf(fl[size_t(y)].names, mapped[size_t(v)]);
            out.join(px, 4, a.pent * nf + size_t(y), Perm5(img[0], img[1], img[2], img[3], img[4]));
        }

    Skeleton skel(out);
    Tricoloring c(skel.count(0));
    for (size_t v = 0; v < c.size(); ++v) {
        const auto& rep = skel.classes(0)[v].representative();
        int weight = std::popcount(fl[rep.pent % nf].names[rep.face]);
        c[v] = weight == 1 ? 0 : weight == 3 ? 1 : 2;
    }
    return {std::move(out), std::move(c)};
}

std::vector<DoublePentachoron> doublePentachoronDecomposition(const Triangulation& tri, const Skeleton& skel,
                                                              const Tricoloring& c) {
    if (!checkTricoloring(tri, skel, c).isTricoloring)
        throw Error(ErrorKind::Input, "input is not tricolored");
    std::vector<DoublePentachoron> pairs;
    for (size_t p = 0; p < tri.size(); ++p) {
        const int s = singletonVertex(skel, c, p);
        const auto& a = tri.adjacent(p, s);
        if (!a)
            throw Error(ErrorKind::Structure, "bicolor facet of pentachoron " + std::to_string(p) + " is unglued");
        if (a->pent == p)
            throw Error(ErrorKind::Structure,
                        "bicolor facet of pentachoron " + std::to_string(p) + " is glued to the same pentachoron");
        if (singletonVertex(skel, c, a->pent) != a->facet)
            throw Error(ErrorKind::Structure, "bicolor facet of pentachoron " + std::to_string(p) +
                                                  " is glued to a non-bicolor facet");
        if (a->pent > p)
            pairs.push_back({uint32_t(p), a->pent, uint8_t(s), a->facet, c[skel.classOf(0, p, s)]});
    }
    return pairs;
}

namespace {

// Replace the pair by four pentachora P_w, w in the shared facet: P_w is the
// first pentachoron with vertex w replaced by the second apex.
std::array<detail::Rebuilder::Handle, 4> applyTwoFour(detail::Rebuilder& rb, const Triangulation& tri,
                                                      const DoublePentachoron& pair, std::array<uint8_t, 4>& ws) {
    const size_t s = pair.first, t = pair.second;
    const int u = pair.apexFirst;
    const auto& across = tri.adjacent(s, u);
    if (s == t || !across || across->pent != t || across->facet != pair.apexSecond)
        throw Error(ErrorKind::Structure, "not a double pentachoron");
    const Perm5 rho = across->gluing;
    rb.remove(s);
    rb.remove(t);
    std::array<detail::Rebuilder::Handle, 4> h{};
    int k = 0;
    for (int w = 0; w < 5; ++w) {
        if (w == u)
            continue;
        ws[size_t(k)] = uint8_t(w);
        h[size_t(k)] = rb.addFresh();
        for (int v = 0; v < 5; ++v)
            rb.setOrigin(h[size_t(k)], v,
                         v == w ? detail::VertexOrigin{uint32_t(t), uint8_t(rho[u])}
                                : detail::VertexOrigin{uint32_t(s), uint8_t(v)});
        rb.relocate(s, w, h[size_t(k)], w, Perm5());
        rb.relocate(t, rho[w], h[size_t(k)], u, rho * Perm5::transposition(u, w));
        ++k;
    }
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            rb.join(h[size_t(a)], ws[size_t(b)], h[size_t(b)], Perm5::transposition(ws[size_t(a)], ws[size_t(b)]));
    return h;
}

}  // namespace

Triangulation twoFourMove(const Triangulation& tri, const DoublePentachoron& pair) {
    if (pair.first >= tri.size() || pair.second >= tri.size() || pair.apexFirst > 4 || pair.apexSecond > 4)
        throw Error(ErrorKind::Structure, "malformed double pentachoron");
    detail::Rebuilder rb(tri);
    std::array<uint8_t, 4> ws{};
    applyTwoFour(rb, tri, pair, ws);
    return rb.build().tri;
}

TsResult makeTs(const Triangulation& tri, const Tricoloring& c, bool conservative) {
    Skeleton skel(tri);
    auto pairs = doublePentachoronDecomposition(tri, skel, c);

    std::set<std::pair<uint32_t, uint32_t>> joined;  // vertex classes joined by an edge
    if (conservative)
        for (const auto& e : skel.classes(1)) {
            unsigned m = faces::mask(1, e.representative().face);
            uint32_t a = skel.classOf(0, e.representative().pent, std::countr_zero(m));
            uint32_t b = skel.classOf(0, e.representative().pent, 31 - std::countl_zero(m));
            joined.insert(std::minmax(a, b));
        }

    TsResult res;
    detail::Rebuilder rb(tri);
    struct Pending {
        std::array<detail::Rebuilder::Handle, 4> h;
        std::array<uint8_t, 4> ws;
        uint32_t origin;
    };
    std::vector<Pending> pending;
    for (size_t i = 0; i < pairs.size(); ++i) {
        const auto& pr = pairs[i];
        if (conservative) {
            uint32_t a = skel.classOf(0, pr.first, pr.apexFirst), b = skel.classOf(0, pr.second, pr.apexSecond);
            if (joined.count(std::minmax(a, b))) {
                ++res.pairsSkipped;
                continue;
            }
        }
        Pending pd{};
        pd.h = applyTwoFour(rb, tri, pr, pd.ws);
        pd.origin = uint32_t(i);
        pending.push_back(pd);
        ++res.pairsMoved;
    }
    auto built = rb.build();
    Skeleton newSkel(built.tri);
    res.coloring = detail::transferColoring(skel, c, newSkel, built, -1);
    res.tri = std::move(built.tri);
    for (const auto& pd : pending) {
        const auto& pr = pairs[pd.origin];
        QuadraGroup g;
        g.origin = pd.origin;
        g.apex = pr.apexFirst;
        g.apexColor = pr.apexColor;
        g.replaced = pd.ws;
        for (int k = 0; k < 4; ++k)
            g.pents[size_t(k)] = built.freshIndex[pd.h[size_t(k)].index];
        unsigned edge = (1u << g.apex) | (1u << g.replaced[0]);
        g.commonEdge = newSkel.classOfMask(g.pents[0], edge);
        for (int k = 0; k < 4; ++k)
            if (newSkel.classOfMask(g.pents[size_t(k)], (1u << g.apex) | (1u << g.replaced[size_t(k)])) !=
                g.commonEdge)
                throw Error(ErrorKind::Structure, "quadra group does not share its common edge");
        if (newSkel.classes(1)[g.commonEdge].degree() != 4)
            throw Error(ErrorKind::Structure, "common edge of a quadra group has degree " +
                                                  std::to_string(newSkel.classes(1)[g.commonEdge].degree()));
        res.quadra.groups.push_back(g);
    }
    res.quadra.coversAll = res.pairsSkipped == 0;
    return res;
}

}  // namespace trisect4
