#include "trisect4/moves.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>

#include <json.hpp>

#include "rebuild.hpp"
#include "trisect4/error.hpp"
#include "trisect4/trisection.hpp"
#include "trisect4/validation.hpp"

namespace trisect4 {

std::string moveName(MoveKind k) {
    switch (k) {
        case MoveKind::P15: return "p15";
        case MoveKind::P51: return "p51";
        case MoveKind::P24: return "p24";
        case MoveKind::P42: return "p42";
        case MoveKind::P33: return "p33";
        case MoveKind::M02: return "m02";
        case MoveKind::M20: return "m20";
        case MoveKind::Collapse: return "collapse";
    }
    return "unknown";
}

std::string verdictName(ColorVerdict v) {
    switch (v) {
        case ColorVerdict::PreservesTricoloring: return "preserves-tricoloring";
        case ColorVerdict::PreservesC: return "preserves-c";
        case ColorVerdict::MayBreakC: return "may-break-c";
        case ColorVerdict::NotColorable: return "not-colorable";
    }
    return "unknown";
}

MoveSite siteForClass(const Skeleton& skel, MoveKind kind, uint32_t classId) {
    int dim = 4;
    switch (kind) {
        case MoveKind::P15: return {kind, classId, 0};
        case MoveKind::P51:
        case MoveKind::M20: dim = 0; break;
        case MoveKind::P42:
        case MoveKind::Collapse: dim = 1; break;
        case MoveKind::P33: dim = 2; break;
        case MoveKind::P24:
        case MoveKind::M02: dim = 3; break;
    }
    if (classId >= skel.count(dim))
        throw Error(ErrorKind::Site, "no class " + std::to_string(classId) + " in dimension " + std::to_string(dim));
    const auto& rep = skel.classes(dim)[classId].representative();
    return {kind, rep.pent, rep.face};
}

namespace {

MoveResult toMoveResult(detail::Rebuilder::Result&& r) {
    MoveResult m;
    m.tri = std::move(r.tri);
    m.origins.resize(r.origins.size());
    for (size_t p = 0; p < r.origins.size(); ++p)
        for (int v = 0; v < 5; ++v)
            if (const auto& o = r.origins[p][size_t(v)])
                m.origins[p][size_t(v)] = std::pair<uint32_t, uint8_t>{o->pent, o->vertex};
    return m;
}

// A Pachner move seen inside the boundary of a 5-simplex with vertices 0..5:
// the old pentachora are the facets omitting the indices in `old`, the new
// ones those omitting the rest. Pentachoron "omit 5" is the site pentachoron
// with its own labels.
struct OmegaSite {
    std::vector<int> old, fresh;
    std::array<size_t, 6> pent{};
    std::array<std::array<int, 6>, 6> label{};  // label[i][w]: vertex of pent[i] that is Omega vertex w
};

OmegaSite locateOmega(const Triangulation& tri, size_t p0, std::vector<int> old) {
    OmegaSite s;
    std::sort(old.begin(), old.end());
    s.old = old;
    for (int j = 0; j < 6; ++j)
        if (!std::binary_search(old.begin(), old.end(), j))
            s.fresh.push_back(j);
    s.pent[5] = p0;
    for (int w = 0; w < 5; ++w)
        s.label[5][size_t(w)] = w;
    for (int i : old) {
        if (i == 5)
            continue;
        const auto& a = tri.adjacent(p0, i);
        if (!a)
            throw Error(ErrorKind::Site, "site touches an unglued facet");
        s.pent[size_t(i)] = a->pent;
        for (int w = 0; w < 5; ++w)
            if (w != i)
                s.label[size_t(i)][size_t(w)] = a->gluing[w];
        s.label[size_t(i)][5] = a->gluing[i];
    }
    for (size_t x = 0; x < old.size(); ++x)
        for (size_t y = x + 1; y < old.size(); ++y)
            if (s.pent[size_t(old[x])] == s.pent[size_t(old[y])])
                throw Error(ErrorKind::Site, "site pentachora are not distinct");
    for (int i : old)
        for (int k : old) {
            if (i == k)
                continue;
            const auto& a = tri.adjacent(s.pent[size_t(i)], s.label[size_t(i)][size_t(k)]);
            if (!a || a->pent != s.pent[size_t(k)] || a->facet != s.label[size_t(k)][size_t(i)])
                throw Error(ErrorKind::Site, "site pentachora do not form a 5-simplex star");
            for (int w = 0; w < 6; ++w)
                if (w != i && w != k && a->gluing[s.label[size_t(i)][size_t(w)]] != s.label[size_t(k)][size_t(w)])
                    throw Error(ErrorKind::Site, "site gluings do not match a 5-simplex star");
        }
    return s;
}

MoveResult applyOmega(const Triangulation& tri, const OmegaSite& s) {
    detail::Rebuilder rb(tri);
    for (int i : s.old)
        rb.remove(s.pent[size_t(i)]);
    auto pos = [](int j, int w) { return w - (w > j ? 1 : 0); };
    auto omegaAt = [](int j, int x) { return x + (x >= j ? 1 : 0); };
    std::map<int, detail::Rebuilder::Handle> h;
    for (int j : s.fresh) {
        h[j] = rb.addFresh();
        for (int x = 0; x < 5; ++x) {
            const int w = omegaAt(j, x);
            std::optional<detail::VertexOrigin> o;
            for (int i : s.old)
                if (i != w) {
                    o = detail::VertexOrigin{uint32_t(s.pent[size_t(i)]), uint8_t(s.label[size_t(i)][size_t(w)])};
                    break;
                }
            rb.setOrigin(h[j], x, o);
        }
    }
    for (size_t a = 0; a < s.fresh.size(); ++a)
        for (size_t b = a + 1; b < s.fresh.size(); ++b) {
            const int j = s.fresh[a], k = s.fresh[b];
            std::array<int, 5> img{};
            for (int x = 0; x < 5; ++x) {
                int w = omegaAt(j, x);
                img[size_t(x)] = w == k ? pos(k, j) : pos(k, w);
            }
            rb.join(h[j], pos(j, k), h[k], Perm5(img[0], img[1], img[2], img[3], img[4]));
        }
    for (int j : s.fresh)
        for (int i : s.old) {
            std::array<int, 5> img{};
            for (int x = 0; x < 5; ++x) {
                int w = omegaAt(j, x);
                img[size_t(x)] = s.label[size_t(i)][size_t(w == i ? j : w)];
            }
            rb.relocate(s.pent[size_t(i)], s.label[size_t(i)][size_t(j)], h[j], pos(j, i),
                        Perm5(img[0], img[1], img[2], img[3], img[4]));
        }
    auto built = rb.build();
    // The inverse removes the simplex spanned by the old indices.
    const int j0 = s.fresh.front();
    unsigned mask = 0;
    for (int i : s.old)
        mask |= 1u << pos(j0, i);
    static constexpr MoveKind inverseKind[6] = {MoveKind::P15, MoveKind::P51, MoveKind::P42,
                                                MoveKind::P33, MoveKind::P24, MoveKind::P15};
    const int dim = std::popcount(mask) - 1;
    MoveSite inv{inverseKind[s.old.size()], built.freshIndex[h[j0].index], dim == 4 ? 0 : faces::index(mask)};
    auto out = toMoveResult(std::move(built));
    out.inverse = inv;
    return out;
}

std::vector<int> localVertices(unsigned mask) {
    std::vector<int> v;
    for (int i = 0; i < 5; ++i)
        if (mask & (1u << i))
            v.push_back(i);
    return v;
}

std::vector<int> complementWithFive(unsigned mask) {
    std::vector<int> v{5};
    for (int i = 0; i < 5; ++i)
        if (!(mask & (1u << i)))
            v.push_back(i);
    return v;
}

OmegaSite omegaFor(const Triangulation& tri, const MoveSite& site) {
    if (site.pent >= tri.size())
        throw Error(ErrorKind::Site, "no pentachoron " + std::to_string(site.pent));
    Skeleton skel(tri);
    auto requireDegree = [&](int dim, size_t want) {
        size_t d = skel.classes(dim)[skel.classOf(dim, site.pent, site.face)].degree();
        if (d != want)
            throw Error(ErrorKind::Site, moveName(site.kind) + " needs degree " + std::to_string(want) + ", found " +
                                             std::to_string(d));
    };
    auto checkFace = [&](int dim) {
        if (site.face < 0 || site.face >= faces::count(dim))
            throw Error(ErrorKind::Site, "face index out of range");
    };
    switch (site.kind) {
        case MoveKind::P15: return locateOmega(tri, site.pent, {5});
        case MoveKind::P24:
            checkFace(3);
            return locateOmega(tri, site.pent, {5, site.face});
        case MoveKind::P33: {
            checkFace(2);
            requireDegree(2, 3);
            return locateOmega(tri, site.pent, complementWithFive(faces::mask(2, site.face)));
        }
        case MoveKind::P42: {
            checkFace(1);
            requireDegree(1, 4);
            return locateOmega(tri, site.pent, complementWithFive(faces::mask(1, site.face)));
        }
        case MoveKind::P51: {
            checkFace(0);
            requireDegree(0, 5);
            return locateOmega(tri, site.pent, complementWithFive(1u << site.face));
        }
        default: break;
    }
    throw Error(ErrorKind::Site, moveName(site.kind) + " is not a Pachner move");
}

MoveResult zeroTwo(const Triangulation& tri, size_t pa, int f) {
    const auto& a = tri.adjacent(pa, f);
    if (!a)
        throw Error(ErrorKind::Site, "m02 needs a glued facet");
    detail::Rebuilder rb(tri);
    rb.detach(pa, f);
    rb.detach(a->pent, a->facet);
    auto x = rb.addFresh(), y = rb.addFresh();
    for (int v = 0; v < 5; ++v) {
        std::optional<detail::VertexOrigin> o;
        if (v != f)
            o = detail::VertexOrigin{uint32_t(pa), uint8_t(v)};
        rb.setOrigin(x, v, o);
        rb.setOrigin(y, v, o);
    }
    rb.join(rb.kept(pa), f, x, Perm5());
    rb.join(y, f, rb.kept(a->pent), a->gluing);
    for (int h = 0; h < 5; ++h)
        if (h != f)
            rb.join(x, h, y, Perm5());
    auto built = rb.build();
    const uint32_t xi = built.freshIndex[x.index];
    auto out = toMoveResult(std::move(built));
    out.inverse = MoveSite{MoveKind::M20, xi, f};
    return out;
}

struct TwoZeroSite {
    size_t x, y;
    int vx, vy;
    Perm5 lambda;
};

TwoZeroSite locateTwoZero(const Triangulation& tri, size_t p, int v) {
    Skeleton skel(tri);
    const auto& cls = skel.classes(0)[skel.classOf(0, p, v)];
    if (cls.degree() != 2 || cls.members[0].pent == cls.members[1].pent)
        throw Error(ErrorKind::Site, "m20 needs a vertex in exactly two distinct pentachora");
    TwoZeroSite s{cls.members[0].pent, cls.members[1].pent, cls.members[0].face, cls.members[1].face, Perm5()};
    std::optional<Perm5> lambda;
    for (int h = 0; h < 5; ++h) {
        if (h == s.vx)
            continue;
        const auto& a = tri.adjacent(s.x, h);
        if (!a || a->pent != s.y || a->gluing[s.vx] != s.vy)
            throw Error(ErrorKind::Site, "m20 site is not a pillow");
        if (lambda && *lambda != a->gluing)
            throw Error(ErrorKind::Site, "m20 pillow gluings disagree");
        lambda = a->gluing;
    }
    s.lambda = *lambda;
    const auto& outX = tri.adjacent(s.x, s.vx);
    const auto& outY = tri.adjacent(s.y, s.vy);
    if (!outX || !outY)
        throw Error(ErrorKind::Site, "m20 pillow has unglued faces");
    if (outX->pent == s.x || outX->pent == s.y || outY->pent == s.x || outY->pent == s.y)
        throw Error(ErrorKind::Site, "m20 pillow faces are glued to the pillow itself");
    return s;
}

MoveResult twoZero(const Triangulation& tri, size_t p, int v) {
    auto s = locateTwoZero(tri, p, v);
    const auto& outX = *tri.adjacent(s.x, s.vx);
    const auto& outY = *tri.adjacent(s.y, s.vy);
    detail::Rebuilder rb(tri);
    rb.remove(s.x);
    rb.remove(s.y);
    rb.detach(outX.pent, outX.facet);
    rb.detach(outY.pent, outY.facet);
    Perm5 perm = outY.gluing * s.lambda * outX.gluing.inverse();
    rb.join(rb.kept(outX.pent), outX.facet, rb.kept(outY.pent), perm);
    auto built = rb.build();
    const auto a = uint32_t(built.newIndexOfOld[outX.pent]);
    auto out = toMoveResult(std::move(built));
    out.inverse = MoveSite{MoveKind::M02, a, outX.facet};
    return out;
}

}  // namespace

MoveResult applyMove(const Triangulation& tri, const MoveSite& site) {
    if (site.pent >= tri.size())
        throw Error(ErrorKind::Site, "no pentachoron " + std::to_string(site.pent));
    switch (site.kind) {
        case MoveKind::M02:
            if (site.face < 0 || site.face > 4)
                throw Error(ErrorKind::Site, "facet index out of range");
            return zeroTwo(tri, site.pent, site.face);
        case MoveKind::M20:
            if (site.face < 0 || site.face > 4)
                throw Error(ErrorKind::Site, "vertex index out of range");
            return twoZero(tri, site.pent, site.face);
        case MoveKind::Collapse: {
            Skeleton skel(tri);
            if (site.face < 0 || site.face >= 10)
                throw Error(ErrorKind::Site, "edge index out of range");
            return collapseEdge(tri, skel.classOf(1, site.pent, site.face));
        }
        default: return applyOmega(tri, omegaFor(tri, site));
    }
}

namespace {

std::array<int, 3> colorCounts(const std::vector<int>& cols) {
    std::array<int, 3> n{};
    for (int x : cols)
        ++n[size_t(x)];
    return n;
}

bool isPattern221(const std::vector<int>& cols) {
    auto n = colorCounts(cols);
    std::sort(n.begin(), n.end());
    return n == std::array<int, 3>{1, 2, 2};
}

}  // namespace

ColorClassification classifyColorPreservation(const Triangulation& tri, const Tricoloring& c, const MoveSite& site) {
    Skeleton skel(tri);
    if (!checkTricoloring(tri, skel, c).isTricoloring)
        throw Error(ErrorKind::Input, "classification needs a tricoloring");
    const bool isC = isCTricoloring(skel, c);
    ColorClassification r;
    auto good = [&](std::string why) {
        r.verdict = isC ? ColorVerdict::PreservesC : ColorVerdict::PreservesTricoloring;
        r.reason = std::move(why);
        return r;
    };
    auto colorAt = [&](size_t p, int v) { return c[skel.classOf(0, p, v)]; };

    switch (site.kind) {
        case MoveKind::M02: {
            if (site.pent >= tri.size() || site.face < 0 || site.face > 4)
                throw Error(ErrorKind::Site, "facet index out of range");
            std::vector<int> cols;
            for (int v = 0; v < 5; ++v)
                if (v != site.face)
                    cols.push_back(colorAt(site.pent, v));
            auto n = colorCounts(cols);
            for (int k = 0; k < 3; ++k) {
                auto m = n;
                ++m[size_t(k)];
                auto sorted = m;
                std::sort(sorted.begin(), sorted.end());
                if (sorted == std::array<int, 3>{1, 2, 2})
                    r.newVertexColors.push_back(k);
            }
            // On a facet colored i,i,j,j the new vertex can only take the
            // missing color, which leaves it isolated in its graph.
            bool allPresent = std::all_of(r.newVertexColors.begin(), r.newVertexColors.end(),
                                          [&](int k) { return n[size_t(k)] > 0; });
            if (!allPresent) {
                r.verdict = ColorVerdict::MayBreakC;
                r.reason = "facet is bicolor; the new vertex has no neighbour of its color";
                return r;
            }
            return good("new vertex joins a vertex of its color in the facet");
        }
        case MoveKind::M20: {
            if (site.pent >= tri.size() || site.face < 0 || site.face > 4)
                throw Error(ErrorKind::Site, "vertex index out of range");
            locateTwoZero(tri, site.pent, site.face);
            return good("removing a pillow vertex keeps the facet edges");
        }
        case MoveKind::Collapse: {
            r.verdict = ColorVerdict::MayBreakC;
            r.reason = "collapses are rechecked by the caller";
            return r;
        }
        default: break;
    }

    const OmegaSite s = omegaFor(tri, site);
    std::array<int, 6> col{};
    bool hasFresh = false;
    for (int w = 0; w < 6; ++w) {
        col[size_t(w)] = -1;
        for (int i : s.old)
            if (i != w) {
                col[size_t(w)] = colorAt(s.pent[size_t(i)], s.label[size_t(i)][size_t(w)]);
                break;
            }
        hasFresh = hasFresh || col[size_t(w)] < 0;
    }
    if (hasFresh) {
        // p15: the cone vertex takes the color seen once on the pentachoron.
        std::vector<int> cols(col.begin(), col.begin() + 5);
        auto n = colorCounts(cols);
        for (int k = 0; k < 3; ++k)
            if (n[size_t(k)] == 1)
                r.newVertexColors.push_back(k);
        return good("cone vertex takes the singleton color and joins the singleton vertex");
    }
    auto omegaPattern = [&](std::initializer_list<int> omit) {
        std::vector<int> cols;
        for (int w = 0; w < 6; ++w)
            if (std::find(omit.begin(), omit.end(), w) == omit.end())
                cols.push_back(col[size_t(w)]);
        return cols;
    };
    const auto all = colorCounts(omegaPattern({}));
    const bool rrbbgg = all == std::array<int, 3>{2, 2, 2};
    for (int j : s.fresh)
        if (!isPattern221(omegaPattern({j}))) {
            r.verdict = ColorVerdict::NotColorable;
            r.reason = "a new pentachoron would violate the (2,2,1) pattern";
            return r;
        }
    switch (site.kind) {
        case MoveKind::P51: return good("the removed vertex only had neighbours inside one pentachoron");
        case MoveKind::P24: return good("only edges are added");
        case MoveKind::P42: {
            unsigned m = faces::mask(1, site.face);
            int a = std::countr_zero(m), b = 31 - std::countl_zero(m);
            if (col[size_t(a)] != col[size_t(b)])
                return good("the removed edge is bicolor");
            r.verdict = ColorVerdict::MayBreakC;
            r.reason = "the removed edge is monochromatic";
            return r;
        }
        case MoveKind::P33: {
            if (!rrbbgg) {
                r.verdict = ColorVerdict::NotColorable;
                r.reason = "the six vertices are not colored in three pairs";
                return r;
            }
            auto tri3 = localVertices(faces::mask(2, site.face));
            std::set<int> seen;
            for (int v : tri3)
                seen.insert(col[size_t(v)]);
            if (seen.size() == 3)
                return good("the exchanged triangles have one vertex of each color");
            r.verdict = ColorVerdict::MayBreakC;
            r.reason = "the exchanged triangles are not tricolor";
            return r;
        }
        default: break;
    }
    throw Error(ErrorKind::Site, "unsupported move");
}

ColoredMove applyColoredMove(const Triangulation& tri, const Tricoloring& c, const MoveSite& site, size_t choice) {
    ColoredMove out;
    out.classification = classifyColorPreservation(tri, c, site);
    if (out.classification.verdict == ColorVerdict::NotColorable)
        throw Error(ErrorKind::Site, "move site is not colorable: " + out.classification.reason);
    MoveResult m = applyMove(tri, site);
    int fresh = -1;
    if (!out.classification.newVertexColors.empty())
        fresh = out.classification.newVertexColors.at(std::min(choice, out.classification.newVertexColors.size() - 1));
    Skeleton oldSkel(tri), newSkel(m.tri);
    out.coloring.assign(newSkel.count(0), fresh);
    for (size_t v = 0; v < out.coloring.size(); ++v)
        for (const auto& slot : newSkel.classes(0)[v].members)
            if (const auto& o = m.origins[slot.pent][slot.face]) {
                out.coloring[v] = c[oldSkel.classOf(0, o->first, o->second)];
                break;
            }
    out.tri = std::move(m.tri);
    return out;
}

BubbleSearch findBubbleSphere(const Skeleton& skel, uint32_t edgeClass) {
    BubbleSearch res;
    // Links: one per triangle class containing the edge, joining its other
    // two edge classes.
    struct Link {
        uint32_t triangle, a, b;
    };
    std::vector<Link> links;
    for (uint32_t t = 0; t < skel.count(2); ++t) {
        const auto& rep = skel.classes(2)[t].representative();
        unsigned m = faces::mask(2, rep.face);
        std::vector<uint32_t> others;
        int hits = 0;
        for (int v = 0; v < 5; ++v)
            if (m & (1u << v)) {
                uint32_t e = skel.classOfMask(rep.pent, m ^ (1u << v));
                if (e == edgeClass)
                    ++hits;
                else
                    others.push_back(e);
            }
        if (hits == 0)
            continue;
        if (hits > 1) {
            // The triangle wraps around the edge; refuse as a degenerate chain.
            res.oddChain = BubbleWitness{edgeClass, {t}, {}};
            continue;
        }
        links.push_back({t, others[0], others[1]});
    }
    std::map<uint32_t, std::vector<size_t>> incident;
    for (size_t l = 0; l < links.size(); ++l) {
        incident[links[l].a].push_back(l);
        if (links[l].b != links[l].a)
            incident[links[l].b].push_back(l);
    }
    auto consider = [&](BubbleWitness w) {
        auto& slot = w.triangles.size() % 2 == 0 ? res.witness : res.oddChain;
        if (!slot || w.triangles.size() < slot->triangles.size())
            slot = std::move(w);
    };
    for (size_t l = 0; l < links.size(); ++l) {
        const auto& start = links[l];
        if (start.a == start.b) {
            consider({edgeClass, {start.triangle}, {start.a}});
            continue;
        }
        // Shortest path from b back to a avoiding link l closes a chain.
        std::map<uint32_t, std::pair<uint32_t, size_t>> prev;  // node -> (previous node, link)
        std::deque<uint32_t> queue{start.b};
        prev[start.b] = {start.b, SIZE_MAX};
        while (!queue.empty() && !prev.count(start.a)) {
            uint32_t x = queue.front();
            queue.pop_front();
            for (size_t k : incident[x]) {
                if (k == l)
                    continue;
                uint32_t y = links[k].a == x ? links[k].b : links[k].a;
                if (prev.count(y))
                    continue;
                prev[y] = {x, k};
                queue.push_back(y);
            }
        }
        if (!prev.count(start.a))
            continue;
        BubbleWitness w;
        w.edge = edgeClass;
        w.triangles.push_back(start.triangle);
        w.links.push_back(start.b);
        std::vector<std::pair<uint32_t, uint32_t>> path;  // (triangle, node reached)
        for (uint32_t x = start.a; x != start.b; x = prev[x].first)
            path.push_back({links[prev[x].second].triangle, x});
        std::reverse(path.begin(), path.end());
        for (const auto& [t, node] : path) {
            w.triangles.push_back(t);
            w.links.push_back(node);
        }
        consider(std::move(w));
    }
    return res;
}

MoveResult collapseEdge(const Triangulation& tri, uint32_t edgeClass, bool force) {
    Skeleton skel(tri);
    if (edgeClass >= skel.count(1))
        throw Error(ErrorKind::Site, "no edge class " + std::to_string(edgeClass));
    const auto& cls = skel.classes(1)[edgeClass];
    {
        const auto& rep = cls.representative();
        unsigned m = faces::mask(1, rep.face);
        if (skel.classOf(0, rep.pent, std::countr_zero(m)) == skel.classOf(0, rep.pent, 31 - std::countl_zero(m)))
            throw Error(ErrorKind::Collapse, "edge ends on a single vertex class");
    }
    if (!force && findBubbleSphere(skel, edgeClass).blocksCollapse())
        throw Error(ErrorKind::Collapse, "edge lies on a closed chain of triangles (bubble)");

    const size_t n = tri.size();
    std::vector<int> edgeIn(n, -1);
    for (const auto& m : cls.members) {
        if (edgeIn[m.pent] >= 0)
            throw Error(ErrorKind::Collapse, "pentachoron " + std::to_string(m.pent) + " contains the edge twice");
        edgeIn[m.pent] = m.face;
    }
    if (cls.members.size() == n)
        throw Error(ErrorKind::Collapse, "every pentachoron contains the edge");

    detail::Rebuilder rb(tri);
    for (size_t p = 0; p < n; ++p)
        if (edgeIn[p] >= 0)
            rb.remove(p);

    struct Landing {
        size_t q;
        int g;
        Perm5 perm;
    };
    std::map<std::pair<size_t, int>, Landing> landing;
    for (size_t p = 0; p < n; ++p) {
        if (edgeIn[p] >= 0)
            continue;
        for (int f = 0; f < 5; ++f) {
            const auto& a = tri.adjacent(p, f);
            if (!a || edgeIn[a->pent] < 0)
                continue;
            size_t q = a->pent;
            int g = a->facet;
            Perm5 phi = a->gluing;
            std::set<std::pair<size_t, int>> visited;
            while (edgeIn[q] >= 0) {
                if (!visited.insert({q, g}).second)
                    throw Error(ErrorKind::Collapse, "face-pairing propagation cycles");
                unsigned em = faces::mask(1, edgeIn[q]);
                int x = std::countr_zero(em), y = 31 - std::countl_zero(em);
                if (g != x && g != y)
                    throw Error(ErrorKind::Collapse, "propagation reached a facet containing the edge");
                const int other = g == x ? y : x;
                phi = Perm5::transposition(x, y) * phi;
                const auto& b = tri.adjacent(q, other);
                if (!b)
                    throw Error(ErrorKind::Collapse, "propagation reached an unglued facet");
                phi = b->gluing * phi;
                q = b->pent;
                g = b->facet;
            }
            if (q == p && g == f)
                throw Error(ErrorKind::Collapse, "collapse glues a facet to itself");
            landing[{p, f}] = {q, g, phi};
        }
    }
    for (const auto& [from, to] : landing) {
        auto back = landing.find({to.q, to.g});
        if (back == landing.end() || back->second.q != from.first || back->second.g != from.second ||
            back->second.perm != to.perm.inverse())
            throw Error(ErrorKind::Collapse, "propagated gluings are not symmetric");
        rb.detach(from.first, from.second);
    }
    for (const auto& [from, to] : landing)
        if (from < std::pair<size_t, int>{to.q, to.g})
            rb.join(rb.kept(from.first), from.second, rb.kept(to.q), to.perm);
    return toMoveResult(rb.build());
}

SimplifyResult simplifyVertices(const Triangulation& tri, const Tricoloring& c, const SimplifyOptions& opt) {
    SimplifyResult res{tri, c, {}, 0};
    const TsStatus status = verifyTs(tri, c, opt.retries, opt.seed).status;
    auto logLine = [&](nlohmann::ordered_json j) { res.log.push_back(j.dump()); };
    size_t step = 0;
    while (step < opt.maxSteps) {
        Skeleton skel(res.tri);
        if (skel.count(0) <= opt.targetVertices) {
            logLine({{"event", "target-reached"}, {"vertices", skel.count(0)}});
            break;
        }
        std::vector<std::pair<size_t, uint32_t>> candidates;
        for (uint32_t e = 0; e < skel.count(1); ++e) {
            const auto& rep = skel.classes(1)[e].representative();
            unsigned m = faces::mask(1, rep.face);
            uint32_t a = skel.classOf(0, rep.pent, std::countr_zero(m));
            uint32_t b = skel.classOf(0, rep.pent, 31 - std::countl_zero(m));
            if (a != b && res.coloring[a] == res.coloring[b])
                candidates.push_back({skel.classes(1)[e].degree(), e});
        }
        std::sort(candidates.begin(), candidates.end());
        bool done = false;
        for (const auto& [degree, e] : candidates) {
            nlohmann::ordered_json line{{"step", step}, {"edge", e}, {"degree", degree}};
            if (findBubbleSphere(skel, e).blocksCollapse()) {
                line["result"] = "skipped-bubble";
                logLine(line);
                continue;
            }
            MoveResult m;
            try {
                m = collapseEdge(res.tri, e);
            } catch (const Error& err) {
                line["result"] = "skipped-degenerate";
                line["reason"] = err.what();
                logLine(line);
                continue;
            }
            Skeleton newSkel(m.tri);
            Tricoloring nc(newSkel.count(0), -1);
            for (size_t v = 0; v < nc.size(); ++v)
                for (const auto& slot : newSkel.classes(0)[v].members)
                    if (const auto& o = m.origins[slot.pent][slot.face]) {
                        nc[v] = res.coloring[skel.classOf(0, o->first, o->second)];
                        break;
                    }
            if (!validate(m.tri).isValid || verifyTs(m.tri, nc, opt.retries, opt.seed).status != status) {
                line["result"] = "skipped-status";
                logLine(line);
                continue;
            }
            line["result"] = "collapsed";
            line["pentachora_before"] = res.tri.size();
            line["pentachora_after"] = m.tri.size();
            line["vertices_before"] = skel.count(0);
            line["vertices_after"] = newSkel.count(0);
            logLine(line);
            res.tri = std::move(m.tri);
            res.coloring = std::move(nc);
            ++res.collapses;
            ++step;
            done = true;
            break;
        }
        if (!done) {
            logLine({{"event", "stalled"}, {"vertices", skel.count(0)}});
            break;
        }
    }
    return res;
}

}  // namespace trisect4
