#include "trisect4/trisection.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>

#include "trisect4/error.hpp"

namespace trisect4 {

int QuadSurface::genus() const {
    int g = 0;
    for (const auto& c : components)
        g += c.genus;
    return g;
}

unsigned quadCornerMask(const QuadSurface::Quad& q, int corner) {
    static constexpr int xs[4] = {0, 1, 1, 0}, ys[4] = {0, 0, 1, 1};
    return (1u << q.pairI[size_t(xs[corner & 3])]) | (1u << q.pairJ[size_t(ys[corner & 3])]) | (1u << q.singleton);
}

QuadSurface centralSurface(const Triangulation& tri, const Skeleton& skel, const Tricoloring& c) {
    QuadSurface s;
    const size_t n = tri.size();
    std::vector<int> quadOf(n, -1);
    for (size_t p = 0; p < n; ++p) {
        const int sv = singletonVertex(skel, c, p);
        if (sv < 0)
            throw Error(ErrorKind::Input, "central surface needs a tricoloring");
        auto col = slotColors(skel, c, p);
        QuadSurface::Quad q;
        q.pent = uint32_t(p);
        q.singleton = uint8_t(sv);
        const int k = col[size_t(sv)];
        q.colorI = k == 0 ? 1 : 0;
        q.colorJ = k == 2 ? 1 : 2;
        int ni = 0, nj = 0;
        for (int v = 0; v < 5; ++v) {
            if (col[size_t(v)] == q.colorI)
                q.pairI[size_t(ni++)] = uint8_t(v);
            else if (col[size_t(v)] == q.colorJ)
                q.pairJ[size_t(nj++)] = uint8_t(v);
        }
        q.sideFacet = {q.pairJ[1], q.pairI[0], q.pairJ[0], q.pairI[1]};
        for (int e = 0; e < 4; ++e) {
            q.corners[size_t(e)] = skel.classOfMask(p, quadCornerMask(q, e));
            q.sides[size_t(e)] = skel.classOf(3, p, q.sideFacet[size_t(e)]);
        }
        quadOf[p] = int(s.quads.size());
        s.quads.push_back(q);
    }

    // Components and coherent orientation by propagation across sides.
    s.orientation.assign(n, 0);
    s.componentOf.assign(n, 0);
    for (size_t start = 0; start < n; ++start) {
        if (s.orientation[start])
            continue;
        QuadSurface::Component comp;
        s.orientation[start] = 1;
        std::vector<size_t> stack{start};
        while (!stack.empty()) {
            size_t p = stack.back();
            stack.pop_back();
            comp.quads.push_back(uint32_t(p));
            s.componentOf[p] = uint32_t(s.components.size());
            const auto& qp = s.quads[p];
            for (int e = 0; e < 4; ++e) {
                const auto& a = tri.adjacent(p, qp.sideFacet[size_t(e)]);
                if (!a)
                    continue;
                const auto& qq = s.quads[a->pent];
                int side = -1;
                for (int f = 0; f < 4; ++f)
                    if (qq.sideFacet[size_t(f)] == a->facet)
                        side = f;
                if (side < 0)
                    throw Error(ErrorKind::Structure, "tricolor facet glued to a non-tricolor facet");
                unsigned from = a->gluing.imageMask(quadCornerMask(qp, e));
                unsigned to = a->gluing.imageMask(quadCornerMask(qp, e + 1));
                int want;
                if (from == quadCornerMask(qq, side) && to == quadCornerMask(qq, side + 1))
                    want = -s.orientation[p];
                else if (to == quadCornerMask(qq, side) && from == quadCornerMask(qq, side + 1))
                    want = s.orientation[p];
                else
                    throw Error(ErrorKind::Structure, "central surface sides do not match across a gluing");
                if (!s.orientation[a->pent]) {
                    s.orientation[a->pent] = want;
                    stack.push_back(a->pent);
                } else if (s.orientation[a->pent] != want) {
                    comp.orientable = false;
                }
            }
        }
        std::sort(comp.quads.begin(), comp.quads.end());
        s.components.push_back(std::move(comp));
    }

    std::set<uint32_t> allV, allE;
    for (auto& comp : s.components) {
        std::set<uint32_t> vs, es;
        for (uint32_t p : comp.quads)
            for (int e = 0; e < 4; ++e) {
                vs.insert(s.quads[p].corners[size_t(e)]);
                es.insert(s.quads[p].sides[size_t(e)]);
            }
        comp.vertices = vs.size();
        comp.edges = es.size();
        comp.euler = long(comp.vertices) - long(comp.edges) + long(comp.quads.size());
        comp.genus = int(comp.orientable ? (2 - comp.euler) / 2 : 2 - comp.euler);
        s.orientable = s.orientable && comp.orientable;
        allV.insert(vs.begin(), vs.end());
        allE.insert(es.begin(), es.end());
    }
    s.vertices = allV.size();
    s.edges = allE.size();
    s.euler = long(s.vertices) - long(s.edges) + long(n);
    return s;
}

SpineComplex spineComplex(const Triangulation& tri, const Skeleton& skel, const Tricoloring& c, int i, int j) {
    if (i == j || i < 0 || j < 0 || i > 2 || j > 2)
        throw Error(ErrorKind::Input, "spine pair must be two distinct colors");
    if (i > j)
        std::swap(i, j);
    SpineComplex s;
    s.i = i;
    s.j = j;
    auto colorOf = [&](size_t p, int v) { return c[skel.classOf(0, p, v)]; };

    std::vector<int> vIndex(skel.count(1), -1), sIndex(skel.count(2), -1);
    auto vertexFor = [&](size_t p, unsigned mask) {
        uint32_t e = skel.classOfMask(p, mask);
        if (vIndex[e] < 0) {
            vIndex[e] = int(s.vertices.size());
            s.vertices.push_back(e);
        }
        return uint32_t(vIndex[e]);
    };
    // Vertices and segments in class order.
    for (uint32_t e = 0; e < skel.count(1); ++e) {
        const auto& rep = skel.classes(1)[e].representative();
        unsigned m = faces::mask(1, rep.face);
        int a = colorOf(rep.pent, std::countr_zero(m)), b = colorOf(rep.pent, 31 - std::countl_zero(m));
        if (std::min(a, b) == i && std::max(a, b) == j)
            vertexFor(rep.pent, m);
    }
    for (uint32_t t = 0; t < skel.count(2); ++t) {
        const auto& rep = skel.classes(2)[t].representative();
        unsigned m = faces::mask(2, rep.face);
        int ci = 0, cj = 0;
        std::array<int, 3> vs{};
        int k = 0;
        for (int v = 0; v < 5; ++v)
            if (m & (1u << v)) {
                vs[size_t(k++)] = v;
                int col = colorOf(rep.pent, v);
                ci += col == i;
                cj += col == j;
            }
        if (ci + cj != 3 || ci == 0 || cj == 0)
            continue;
        // The odd one out joins the two i-j edges of the triangle.
        int odd = -1;
        for (int v : vs)
            if ((colorOf(rep.pent, v) == i) == (ci == 1))
                odd = v;
        std::array<uint32_t, 2> ends{};
        int e = 0;
        for (int v : vs)
            if (v != odd)
                ends[size_t(e++)] = vertexFor(rep.pent, (1u << v) | (1u << odd));
        sIndex[t] = int(s.segments.size());
        s.segments.push_back(t);
        s.segmentEnds.push_back(ends);
    }
    std::vector<char> seenFacet(skel.count(3), 0);
    for (uint32_t f = 0; f < skel.count(3); ++f) {
        const auto& rep = skel.classes(3)[f].representative();
        unsigned m = 0x1Fu ^ (1u << rep.face);
        int ci = 0, cj = 0;
        for (int v = 0; v < 5; ++v)
            if (m & (1u << v)) {
                ci += colorOf(rep.pent, v) == i;
                cj += colorOf(rep.pent, v) == j;
            }
        if (ci != 2 || cj != 2)
            continue;
        SpineComplex::Square sq;
        sq.facetClass = f;
        int k = 0;
        for (int v = 0; v < 5; ++v)
            if (m & (1u << v))
                sq.boundary[size_t(k++)] = uint32_t(sIndex[skel.classOfMask(rep.pent, m ^ (1u << v))]);
        s.squares.push_back(sq);
    }
    (void)tri;
    return s;
}

std::optional<SpineGraph> collapseToGraph(const SpineComplex& s, int retries, uint64_t seed) {
    const size_t ns = s.squares.size();
    std::vector<uint32_t> order(ns);
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < std::max(retries, 1); ++attempt) {
        std::iota(order.begin(), order.end(), 0u);
        if (attempt > 0)
            std::shuffle(order.begin(), order.end(), rng);
        std::vector<int> incidence(s.segments.size(), 0);
        for (const auto& sq : s.squares)
            for (uint32_t b : sq.boundary)
                ++incidence[b];
        std::vector<char> squareAlive(ns, 1), segmentAlive(s.segments.size(), 1);
        SpineGraph g;
        g.attempt = attempt;
        size_t remaining = ns;
        for (bool progress = true; progress && remaining;) {
            progress = false;
            for (uint32_t sq : order) {
                if (!squareAlive[sq])
                    continue;
                for (uint32_t b : s.squares[sq].boundary) {
                    if (incidence[b] != 1)
                        continue;
                    squareAlive[sq] = 0;
                    segmentAlive[b] = 0;
                    for (uint32_t other : s.squares[sq].boundary)
                        --incidence[other];
                    g.steps.push_back({sq, b});
                    --remaining;
                    progress = true;
                    break;
                }
            }
        }
        if (remaining)
            continue;
        UnionFind uf(s.vertices.size());
        for (uint32_t k = 0; k < s.segments.size(); ++k)
            if (segmentAlive[k]) {
                g.residualSegments.push_back(k);
                uf.unite(s.segmentEnds[k][0], s.segmentEnds[k][1]);
            }
        g.vertices = s.vertices.size();
        g.edges = g.residualSegments.size();
        for (size_t v = 0; v < g.vertices; ++v)
            if (uf.find(v) == v)
                ++g.components;
        g.betti1 = long(g.edges) - long(g.vertices) + long(g.components);
        return g;
    }
    return std::nullopt;
}

std::string statusName(TsStatus s) {
    switch (s) {
        case TsStatus::NotTricolored: return "not-tricolored";
        case TsStatus::Tricolored: return "tricolored";
        case TsStatus::CTricolored: return "c-tricolored";
        case TsStatus::TsVerified: return "ts-verified";
        case TsStatus::TsInconclusive: return "ts-inconclusive";
    }
    return "unknown";
}

TrisectionSummary verifyTs(const Triangulation& tri, const Tricoloring& c, int retries, uint64_t seed) {
    TrisectionSummary r;
    r.pentachora = tri.size();
    Skeleton skel(tri);
    r.euler = skel.eulerCharacteristic();
    try {
        if (!checkTricoloring(tri, skel, c).isTricoloring) {
            r.detail = "coloring violates the (2,2,1) pattern";
            return r;
        }
    } catch (const Error& e) {
        r.detail = e.what();
        return r;
    }
    r.status = TsStatus::Tricolored;
    bool connected = true;
    for (int k = 0; k < 3; ++k) {
        auto g = monochromaticGraph(skel, c, k);
        r.handlebodyGenera[size_t(k)] = g.betti1;
        r.gammaConnected[size_t(k)] = g.connected;
        connected = connected && g.connected;
    }
    auto sigma = centralSurface(tri, skel, c);
    r.sigmaGenus = sigma.genus();
    r.sigmaComponents = sigma.components.size();
    r.sigmaOrientable = sigma.orientable;
    r.sigmaVertices = sigma.vertices;
    r.sigmaEdges = sigma.edges;
    for (const auto& comp : sigma.components)
        r.sigmaComponentGenera.push_back(comp.genus);

    bool collapsed = true;
    for (size_t k = 0; k < 3; ++k) {
        auto sc = spineComplex(tri, skel, c, kPiecePairs[k][0], kPiecePairs[k][1]);
        r.spineSquares[k] = sc.squares.size();
        if (auto g = collapseToGraph(sc, retries, seed + k))
            r.pieceGenera[k] = g->betti1;
        else
            collapsed = false;
    }
    long sum = r.handlebodyGenera[0] + r.handlebodyGenera[1] + r.handlebodyGenera[2];
    r.eulerResidual = r.euler - (2 + r.sigmaGenus - sum);

    if (!connected) {
        r.detail = "a monochromatic graph is disconnected";
        return r;
    }
    r.status = TsStatus::CTricolored;
    if (!sigma.connected()) {
        r.detail = "central surface has " + std::to_string(sigma.components.size()) + " components";
        return r;
    }
    if (!collapsed) {
        r.status = TsStatus::TsInconclusive;
        r.detail = "greedy collapse got stuck on every attempt";
        return r;
    }
    r.status = TsStatus::TsVerified;
    return r;
}

bool genusBoundCheck(const TrisectionSummary& s, std::optional<size_t> sourcePentachora) {
    if (s.status != TsStatus::TsVerified)
        throw Error(ErrorKind::Input, "genus bounds apply to ts-verified triangulations only");
    if (2 * size_t(s.sigmaGenus) > s.pentachora)
        throw Error(ErrorKind::Bound, "central surface genus " + std::to_string(s.sigmaGenus) + " exceeds n/2 for n=" +
                                          std::to_string(s.pentachora));
    if (sourcePentachora && size_t(s.sigmaGenus) > 60 * *sourcePentachora)
        throw Error(ErrorKind::Bound, "central surface genus " + std::to_string(s.sigmaGenus) + " exceeds 60m for m=" +
                                          std::to_string(*sourcePentachora));
    return true;
}

}  // namespace trisect4
