#include "trisect4/diagram.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include <json.hpp>

#include "trisect4/error.hpp"

namespace trisect4 {

namespace {

using Point = std::array<Fraction, 2>;

int familyOf(int a, int b) { return std::min(a, b) + std::max(a, b) - 1; }

// Vertices of the central surface and of the spine that pieces are built from.
struct PointKey {
    enum Kind : uint8_t { SigmaEdge, Bend, Spine, Crossbar } kind = SigmaEdge;
    uint32_t a = 0, b = 0;
    Fraction t;
    bool onSigma() const { return kind == SigmaEdge || kind == Bend; }
    friend bool operator<(const PointKey& x, const PointKey& y) {
        if (x.kind != y.kind)
            return x.kind < y.kind;
        if (x.a != y.a)
            return x.a < y.a;
        if (x.b != y.b)
            return x.b < y.b;
        return x.t < y.t;
    }
    friend bool operator==(const PointKey& x, const PointKey& y) {
        return x.kind == y.kind && x.a == y.a && x.b == y.b && x.t == y.t;
    }
};

struct Context {
    const Triangulation& tri;
    const Skeleton& skel;
    const Tricoloring& c;
    QuadSurface sigma;
    std::vector<int> quadOf;
    std::unordered_map<uint64_t, Perm5> triFrames;

    Context(const Triangulation& t, const Skeleton& s, const Tricoloring& col)
        : tri(t), skel(s), c(col), sigma(centralSurface(t, s, col)), quadOf(t.size(), -1) {
        for (size_t k = 0; k < sigma.quads.size(); ++k)
            quadOf[sigma.quads[k].pent] = int(k);
    }
    int color(uint32_t p, int v) const { return c[skel.classOf(0, p, v)]; }

    // Vertex map from a triangle slot to the representative slot of its class.
    const Perm5& triangleFrame(uint32_t p, unsigned mask) {
        uint64_t key = uint64_t(p) * 32 + mask;
        auto it = triFrames.find(key);
        if (it != triFrames.end())
            return it->second;
        const auto& rep = skel.classes(2)[skel.classOfMask(p, mask)].representative();
        unsigned repMask = faces::mask(2, rep.face);
        std::vector<std::pair<uint32_t, unsigned>> stack{{rep.pent, repMask}};
        triFrames.emplace(uint64_t(rep.pent) * 32 + repMask, Perm5());
        while (!stack.empty()) {
            auto [q, m] = stack.back();
            stack.pop_back();
            Perm5 phi = triFrames.at(uint64_t(q) * 32 + m);
            for (int f = 0; f < 5; ++f) {
                if (m & (1u << f))
                    continue;
                const auto& a = tri.adjacent(q, f);
                if (!a)
                    continue;
                unsigned m2 = a->gluing.imageMask(m);
                uint64_t k2 = uint64_t(a->pent) * 32 + m2;
                if (triFrames.emplace(k2, phi * a->gluing.inverse()).second)
                    stack.push_back({a->pent, m2});
            }
        }
        return triFrames.at(key);
    }
};

struct GroupFrame {
    uint32_t index = 0;
    uint8_t apex = 0;
    int k = 0, cX = 0, cY = 0;
    std::array<uint8_t, 2> X{}, Y{};
    std::array<uint32_t, 5> pentAt{};
    std::array<uint8_t, 4> cycle{};  // replaced vertices in annulus order
};

GroupFrame groupFrame(const Context& ctx, const QuadraGroup& g, uint32_t index) {
    auto fail = [&](const std::string& why) {
        throw Error(ErrorKind::Structure, "quadra group " + std::to_string(index) + ": " + why);
    };
    GroupFrame fr;
    fr.index = index;
    fr.apex = g.apex;
    fr.k = g.apexColor;
    unsigned seen = 0;
    for (int k = 0; k < 4; ++k) {
        uint8_t w = g.replaced[size_t(k)];
        if (w > 4 || w == g.apex || (seen & (1u << w)))
            fail("bad replaced vertices");
        seen |= 1u << w;
        uint32_t p = g.pents[size_t(k)];
        if (p >= ctx.tri.size() || ctx.quadOf[p] < 0)
            fail("pentachoron " + std::to_string(p) + " carries no square");
        if (ctx.color(p, g.apex) != fr.k || ctx.color(p, w) != fr.k)
            fail("common edge is not monochromatic of the apex color");
        fr.pentAt[w] = p;
    }
    std::array<int, 5> col{};
    for (int k = 0; k < 4; ++k) {
        uint8_t x = g.replaced[size_t(k)];
        uint8_t other = g.replaced[size_t((k + 1) % 4)];
        col[x] = ctx.color(fr.pentAt[other], x);
    }
    std::vector<uint8_t> tau(g.replaced.begin(), g.replaced.end());
    std::sort(tau.begin(), tau.end());
    std::vector<uint8_t> xs, ys;
    int cMin = 3;
    for (auto x : tau)
        cMin = std::min(cMin, col[x]);
    for (auto x : tau)
        (col[x] == cMin ? xs : ys).push_back(x);
    if (xs.size() != 2 || ys.size() != 2 || col[ys[0]] != col[ys[1]] || cMin == fr.k || col[ys[0]] == fr.k)
        fail("replaced vertices do not form two color pairs");
    fr.cX = cMin;
    fr.cY = col[ys[0]];
    fr.X = {xs[0], xs[1]};
    fr.Y = {ys[0], ys[1]};
    fr.cycle = {fr.X[0], fr.Y[0], fr.X[1], fr.Y[1]};
    return fr;
}

// Coordinates on the square of one pentachoron of a group: kappa runs from
// the first apex to the second, nu along the other doubled pair.
struct SquareFrame {
    uint32_t pent = 0;
    uint8_t A = 0, w = 0, lo = 0, hi = 0, s = 0;
    const QuadSurface::Quad* quad = nullptr;
    bool kappaIsX = false;

    Point toQuad(const Fraction& kappa, const Fraction& nu) const {
        if (kappaIsX)
            return {quad->pairI[1] == w ? kappa : 1 - kappa, nu};
        return {nu, quad->pairJ[1] == w ? kappa : 1 - kappa};
    }
};

SquareFrame squareFrame(const Context& ctx, const GroupFrame& g, uint8_t w) {
    SquareFrame sf;
    sf.pent = g.pentAt[w];
    sf.A = g.apex;
    sf.w = w;
    bool wInX = (w == g.X[0] || w == g.X[1]);
    const auto& na = wInX ? g.Y : g.X;
    const auto& own = wInX ? g.X : g.Y;
    sf.lo = na[0];
    sf.hi = na[1];
    sf.s = own[0] == w ? own[1] : own[0];
    sf.quad = &ctx.sigma.quads[size_t(ctx.quadOf[sf.pent])];
    bool inI = sf.quad->pairI[0] == g.apex || sf.quad->pairI[1] == g.apex;
    bool wI = sf.quad->pairI[0] == w || sf.quad->pairI[1] == w;
    bool inJ = sf.quad->pairJ[0] == g.apex || sf.quad->pairJ[1] == g.apex;
    bool wJ = sf.quad->pairJ[0] == w || sf.quad->pairJ[1] == w;
    if (!((inI && wI) || (inJ && wJ)) || sf.quad->singleton != sf.s)
        throw Error(ErrorKind::Structure,
                    "quadra group " + std::to_string(g.index) + ": square frame does not match the tricoloring");
    sf.kappaIsX = inI && wI;
    return sf;
}

// Mixed rational/integer comparisons recurse forever under C++20 rewriting
// in older boost, so compare against these.
const Fraction kZero(0), kOne(1);

int sideOf(const Point& p) {
    if (p[1] == kZero)
        return 0;
    if (p[0] == kOne)
        return 1;
    if (p[1] == kOne)
        return 2;
    if (p[0] == kZero)
        return 3;
    return -1;
}

struct SigmaEnd {
    PointKey key;
    uint8_t side = 0;
    uint32_t edge = 0;
    Fraction t;
};

SigmaEnd sigmaEnd(const Context& ctx, const SquareFrame& sf, const Point& p) {
    int side = sideOf(p);
    if (side < 0 || ((p[0] == kZero || p[0] == kOne) && (p[1] == kZero || p[1] == kOne)))
        throw Error(ErrorKind::Tracing, "arc endpoint is not interior to a square side");
    const auto& q = *sf.quad;
    bool alongI = (side == 0 || side == 2);
    uint8_t lo = alongI ? q.pairI[0] : q.pairJ[0];
    uint8_t hi = alongI ? q.pairI[1] : q.pairJ[1];
    Fraction t = alongI ? p[0] : p[1];
    int facet = q.sideFacet[size_t(side)];
    uint32_t cls = ctx.skel.classOf(3, sf.pent, facet);
    const auto& rep = ctx.skel.classes(3)[cls].representative();
    if (!(rep.pent == sf.pent && rep.face == facet)) {
        const auto& a = ctx.tri.adjacent(sf.pent, facet);
        if (a && a->gluing[hi] < a->gluing[lo])
            t = 1 - t;
    }
    SigmaEnd e;
    e.key = {PointKey::SigmaEdge, cls, 0, t};
    e.side = uint8_t(side);
    e.edge = cls;
    e.t = t;
    return e;
}

PointKey spinePoint(Context& ctx, uint32_t p, unsigned mask, int lo, int hi, Fraction t) {
    const Perm5& phi = ctx.triangleFrame(p, mask);
    if (phi[hi] < phi[lo])
        t = 1 - t;
    return {PointKey::Spine, ctx.skel.classOfMask(p, mask), 0, t};
}

unsigned bit(int v) { return 1u << v; }

struct RawPiece {
    NormalPiece piece;
    std::vector<PointKey> polygon;
    NormalArc arc;
    std::array<PointKey, 2> ends;
    std::optional<PointKey> dualKey;
};

RawPiece makePiece(Context& ctx, const SquareFrame& sf, NormalPiece::Kind kind, NormalPiece::Block block,
                   const std::vector<std::array<Fraction, 2>>& kappaNu) {
    RawPiece rp;
    rp.piece.kind = kind;
    rp.piece.block = block;
    rp.piece.pent = sf.pent;
    rp.arc.square = sf.pent;
    for (const auto& kn : kappaNu)
        rp.arc.path.push_back(sf.toQuad(kn[0], kn[1]));
    for (int e = 0; e < 2; ++e) {
        auto end = sigmaEnd(ctx, sf, e == 0 ? rp.arc.path.front() : rp.arc.path.back());
        rp.arc.sides[size_t(e)] = end.side;
        rp.arc.edges[size_t(e)] = end.edge;
        rp.arc.params[size_t(e)] = end.t;
        rp.ends[size_t(e)] = end.key;
    }
    return rp;
}

// All pieces of one family inside one group.
void groupPieces(Context& ctx, const GroupFrame& g, int family, std::vector<RawPiece>& out) {
    const Fraction quarter(1, 4), half(1, 2);
    for (uint8_t w : g.cycle) {
        SquareFrame sf = squareFrame(ctx, g, w);
        int wColor = (w == g.X[0] || w == g.X[1]) ? g.cX : g.cY;
        int naColor = wColor == g.cX ? g.cY : g.cX;
        Fraction m = spineMark(family), s0 = crossbarMark(family);
        if (family == familyOf(g.cX, g.cY)) {
            for (Fraction t : {m / 2, 1 - m / 2}) {
                auto rp = makePiece(ctx, sf, NormalPiece::Kind::Triangle, NormalPiece::Block::TorusPrism,
                                    {{Fraction(0), t}, {Fraction(1), t}});
                PointKey p = spinePoint(ctx, sf.pent, bit(sf.s) | bit(sf.lo) | bit(sf.hi), sf.lo, sf.hi, t);
                rp.polygon = {p, rp.ends[0], rp.ends[1]};
                rp.dualKey = p;
                out.push_back(std::move(rp));
            }
        } else if (family == familyOf(naColor, g.k)) {
            for (int top = 0; top < 2; ++top) {
                unsigned barMask = bit(top ? sf.w : sf.A) | bit(sf.lo) | bit(sf.hi);
                Fraction kb = top ? 1 : 0;
                Fraction kq = top ? 1 - m / 4 : m / 4;
                for (int e = 0; e < 2; ++e) {
                    Fraction t = e ? 1 - m / 2 : m / 2;
                    int free = e ? sf.hi : sf.lo;
                    auto rp = makePiece(ctx, sf, NormalPiece::Kind::Square, NormalPiece::Block::Cube,
                                        {{kb, t}, {kq, Fraction(e)}});
                    PointKey p = spinePoint(ctx, sf.pent, barMask, sf.lo, sf.hi, t);
                    PointKey q = spinePoint(ctx, sf.pent, bit(sf.A) | bit(sf.w) | bit(free), sf.A, sf.w, kq);
                    rp.polygon = {p, q, rp.ends[1], rp.ends[0]};
                    rp.dualKey = p;
                    out.push_back(std::move(rp));
                }
            }
            Fraction kc = quarter + s0 / 2;
            auto rp = makePiece(ctx, sf, NormalPiece::Kind::Square, NormalPiece::Block::Cube,
                                {{kc, Fraction(0)}, {s0, half}, {kc, Fraction(1)}});
            PointKey q0 = spinePoint(ctx, sf.pent, bit(sf.A) | bit(sf.w) | bit(sf.lo), sf.A, sf.w, kc);
            PointKey q1 = spinePoint(ctx, sf.pent, bit(sf.A) | bit(sf.w) | bit(sf.hi), sf.A, sf.w, kc);
            PointKey cross{PointKey::Crossbar, g.index, 0, s0};
            PointKey bend{PointKey::Bend, sf.pent, uint32_t(family), s0};
            rp.polygon = {q0, cross, q1, rp.ends[1], bend, rp.ends[0]};
            rp.dualKey = cross;
            out.push_back(std::move(rp));
        } else {
            for (Fraction kv : {m / 4, quarter + s0 / 2, 1 - m / 4}) {
                auto rp = makePiece(ctx, sf, NormalPiece::Kind::Triangle, NormalPiece::Block::BallPrism,
                                    {{kv, Fraction(0)}, {kv, Fraction(1)}});
                PointKey q = spinePoint(ctx, sf.pent, bit(sf.A) | bit(sf.w) | bit(sf.s), sf.A, sf.w, kv);
                rp.polygon = {q, rp.ends[0], rp.ends[1]};
                out.push_back(std::move(rp));
            }
        }
    }
}

NormalArc reversed(NormalArc a) {
    std::reverse(a.path.begin(), a.path.end());
    std::swap(a.sides[0], a.sides[1]);
    std::swap(a.edges[0], a.edges[1]);
    std::swap(a.params[0], a.params[1]);
    return a;
}

// Order the arcs of one disc boundary into a single closed curve.
std::vector<NormalArc> closeUp(const std::vector<const RawPiece*>& pieces) {
    std::map<PointKey, std::vector<size_t>> at;
    for (size_t i = 0; i < pieces.size(); ++i)
        for (const auto& e : pieces[i]->ends)
            at[e].push_back(i);
    for (const auto& [key, v] : at) {
        if (v.size() == 1)
            throw Error(ErrorKind::Tracing, "open chain: unmatched arc endpoint on edge " + std::to_string(key.a));
        if (v.size() > 2)
            throw Error(ErrorKind::Structure, "branching: more than two arcs meet on edge " + std::to_string(key.a));
    }
    std::vector<NormalArc> out;
    std::vector<bool> used(pieces.size(), false);
    size_t cur = 0;
    PointKey from = pieces[0]->ends[0];
    while (!used[cur]) {
        used[cur] = true;
        const RawPiece& rp = *pieces[cur];
        bool forward = rp.ends[0] == from;
        out.push_back(forward ? rp.arc : reversed(rp.arc));
        PointKey to = forward ? rp.ends[1] : rp.ends[0];
        const auto& v = at[to];
        size_t next = v[0] == cur ? v[1] : v[0];
        from = to;
        cur = next;
    }
    if (out.size() != pieces.size())
        throw Error(ErrorKind::Structure, "disc boundary has more than one component");
    return out;
}

long discEuler(const std::vector<const RawPiece*>& pieces) {
    // Arcs on Sigma are told apart by their square; two squares can join the
    // same pair of points.
    using EdgeKey = std::tuple<PointKey, PointKey, uint32_t>;
    std::set<PointKey> verts;
    std::map<EdgeKey, int> edges;
    for (const auto* rp : pieces) {
        const auto& poly = rp->polygon;
        for (size_t i = 0; i < poly.size(); ++i) {
            verts.insert(poly[i]);
            PointKey a = poly[i], b = poly[(i + 1) % poly.size()];
            if (b < a)
                std::swap(a, b);
            bool sigma = a.onSigma() && b.onSigma();
            ++edges[{a, b, sigma ? rp->piece.pent : UINT32_MAX}];
        }
    }
    for (const auto& [e, n] : edges) {
        bool sigma = std::get<2>(e) != UINT32_MAX;
        if (n > 2)
            throw Error(ErrorKind::Structure, "branching: more than two pieces along one normal edge");
        if (sigma != (n == 1))
            throw Error(ErrorKind::Structure, "disc is not properly embedded");
    }
    return long(verts.size()) - long(edges.size()) + long(pieces.size());
}

std::vector<MeridianDisc> buildDiscs(Context& ctx, const std::vector<GroupFrame>& groups, int family) {
    std::vector<RawPiece> raw;
    for (const auto& g : groups)
        groupPieces(ctx, g, family, raw);

    // Pieces of one disc are exactly those linked through spine points.
    UnionFind uf(raw.size());
    std::map<PointKey, size_t> owner;
    for (size_t i = 0; i < raw.size(); ++i)
        for (const auto& v : raw[i].polygon) {
            if (v.onSigma())
                continue;
            auto [it, fresh] = owner.emplace(v, i);
            if (!fresh)
                uf.unite(it->second, i);
        }
    std::map<size_t, std::vector<const RawPiece*>> comps;
    for (size_t i = 0; i < raw.size(); ++i)
        comps[uf.find(i)].push_back(&raw[i]);

    std::vector<MeridianDisc> discs;
    for (auto& [root, pieces] : comps) {
        std::set<PointKey> duals;
        for (const auto* rp : pieces)
            if (rp->dualKey)
                duals.insert(*rp->dualKey);
        if (duals.size() != 1)
            throw Error(ErrorKind::Structure, "disc meets the spine in " + std::to_string(duals.size()) + " points");
        const PointKey& d = *duals.begin();
        if (discEuler(pieces) != 1)
            throw Error(ErrorKind::Structure, "assembled pieces do not form a disc");
        MeridianDisc disc;
        disc.family = family;
        disc.mark = d.kind == PointKey::Crossbar ? crossbarMark(family) : spineMark(family);
        if (d.kind == PointKey::Crossbar)
            disc.dual = {DualElement::Kind::Crossbar, d.a, 0};
        else
            disc.dual = {DualElement::Kind::Segment, d.a, d.t < Fraction(1, 2) ? 0 : 1};
        disc.boundary = closeUp(pieces);
        for (const auto* rp : pieces) {
            NormalPiece np = rp->piece;
            np.dual = disc.dual;
            np.mark = disc.mark;
            disc.pieces.push_back(np);
        }
        discs.push_back(std::move(disc));
    }
    std::sort(discs.begin(), discs.end(), [](const auto& a, const auto& b) { return a.dual < b.dual; });

    // Every edge of the subdivided spine has exactly one dual disc.
    std::set<uint32_t> freeEdges;
    for (const auto& g : groups)
        for (uint8_t w : g.cycle)
            for (uint8_t v : g.cycle)
                if (v != w)
                    freeEdges.insert(ctx.skel.classOfMask(g.pentAt[w], bit(g.apex) | bit(w) | bit(v)));
    std::set<DualElement> expected;
    int a = kPiecePairs[size_t(family)][0], b = kPiecePairs[size_t(family)][1];
    for (size_t t = 0; t < ctx.skel.count(2); ++t) {
        const auto& rep = ctx.skel.classes(2)[t].representative();
        unsigned mask = faces::mask(2, rep.face);
        int na = 0, nb = 0;
        for (int v = 0; v < 5; ++v)
            if (mask & bit(v)) {
                int col = ctx.color(rep.pent, v);
                na += col == a;
                nb += col == b;
            }
        if (na + nb != 3 || na == 0 || nb == 0 || freeEdges.count(uint32_t(t)))
            continue;
        expected.insert({DualElement::Kind::Segment, uint32_t(t), 0});
        expected.insert({DualElement::Kind::Segment, uint32_t(t), 1});
    }
    for (const auto& g : groups)
        if (family != familyOf(g.cX, g.cY))
            expected.insert({DualElement::Kind::Crossbar, g.index, 0});
    std::set<DualElement> got;
    for (const auto& d : discs)
        if (!got.insert(d.dual).second)
            throw Error(ErrorKind::Structure, "two discs are dual to one spine edge");
    if (got != expected)
        throw Error(ErrorKind::Structure, "discs are not in bijection with the edges of the subdivided spine");
    return discs;
}

std::vector<GroupFrame> groupFrames(const Context& ctx, const QuadraDecomposition& q) {
    std::vector<GroupFrame> frames;
    std::vector<int> owner(ctx.tri.size(), -1);
    for (size_t gi = 0; gi < q.groups.size(); ++gi) {
        frames.push_back(groupFrame(ctx, q.groups[gi], uint32_t(gi)));
        for (auto p : q.groups[gi].pents) {
            if (owner[p] >= 0)
                throw Error(ErrorKind::Structure, "pentachoron " + std::to_string(p) + " lies in two quadra groups");
            owner[p] = int(gi);
        }
    }
    for (size_t p = 0; p < owner.size(); ++p)
        if (owner[p] < 0)
            throw Error(ErrorKind::Structure,
                        "quadra decomposition does not cover pentachoron " + std::to_string(p));
    return frames;
}

int orient(const Point& a, const Point& b, const Point& c) {
    Fraction v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    return v > kZero ? 1 : (v < kZero ? -1 : 0);
}

bool within(const Point& a, const Point& b, const Point& p) {
    return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
           p[1] <= std::max(a[1], b[1]);
}

// 0: disjoint, 1: proper crossing, 2: touching or overlapping.
int meet(const Point& a, const Point& b, const Point& c, const Point& d) {
    int o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 * o2 < 0 && o3 * o4 < 0)
        return 1;
    if ((o1 == 0 && within(a, b, c)) || (o2 == 0 && within(a, b, d)) || (o3 == 0 && within(c, d, a)) ||
        (o4 == 0 && within(c, d, b)))
        return 2;
    return 0;
}

using Signature = std::vector<std::array<uint32_t, 3>>;

Signature canonicalSignature(const Curve& cv) {
    Signature fwd, bwd;
    for (const auto& a : cv.arcs)
        fwd.push_back({a.square, a.sides[0], a.sides[1]});
    for (auto it = cv.arcs.rbegin(); it != cv.arcs.rend(); ++it)
        bwd.push_back({it->square, it->sides[1], it->sides[0]});
    Signature best;
    for (const Signature* s : {&fwd, &bwd})
        for (size_t r = 0; r < s->size(); ++r) {
            Signature rot(s->begin() + long(r), s->end());
            rot.insert(rot.end(), s->begin(), s->begin() + long(r));
            if (best.empty() || rot < best)
                best = std::move(rot);
        }
    return best;
}

std::string num(const Fraction& f) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", double(f.numerator()) / double(f.denominator()));
    return buf;
}

nlohmann::json fracJson(const Fraction& f) { return {f.numerator(), f.denominator()}; }

}  // namespace

Fraction spineMark(int family) {
    static const std::array<Fraction, 3> m{Fraction(3, 5), Fraction(2, 5), Fraction(1, 5)};
    return m.at(size_t(family));
}

Fraction crossbarMark(int family) {
    static const std::array<Fraction, 3> m{Fraction(6, 10), Fraction(5, 10), Fraction(4, 10)};
    return m.at(size_t(family));
}

std::vector<Annulus> annulusDecomposition(const Triangulation& tri, const Skeleton& skel, const Tricoloring& c,
                                          const QuadraDecomposition& q) {
    Context ctx(tri, skel, c);
    auto frames = groupFrames(ctx, q);
    std::vector<Annulus> out;
    std::set<uint32_t> edges;
    for (const auto& g : frames) {
        Annulus an;
        an.group = g.index;
        an.apexColor = g.k;
        an.apex = g.apex;
        for (int k = 0; k < 4; ++k) {
            uint8_t w = g.cycle[size_t(k)], next = g.cycle[size_t((k + 1) % 4)];
            uint32_t p = g.pentAt[w];
            squareFrame(ctx, g, w);
            an.swapped[size_t(k)] = w;
            an.squares[size_t(k)] = p;
            const auto& adj = tri.adjacent(p, next);
            if (!adj || adj->pent != g.pentAt[next])
                throw Error(ErrorKind::Structure,
                            "quadra group " + std::to_string(g.index) + ": squares do not close into a cycle");
            an.internalEdges[size_t(k)] = skel.classOf(3, p, next);
            an.boundaryEdges[size_t(2 * k)] = skel.classOf(3, p, w);
            an.boundaryEdges[size_t(2 * k + 1)] = skel.classOf(3, p, g.apex);
        }
        edges.insert(an.internalEdges.begin(), an.internalEdges.end());
        edges.insert(an.boundaryEdges.begin(), an.boundaryEdges.end());
        out.push_back(an);
    }
    if (edges.size() != ctx.sigma.edges || out.size() * 4 != ctx.sigma.quads.size())
        throw Error(ErrorKind::Structure, "annuli do not tile the central surface");
    return out;
}

std::vector<MeridianDisc> meridianDiscs(const Triangulation& tri, const Skeleton& skel, const Tricoloring& c,
                                        const QuadraDecomposition& q, int family) {
    if (family < 0 || family > 2)
        throw Error(ErrorKind::Input, "family index must be 0, 1 or 2");
    Context ctx(tri, skel, c);
    auto frames = groupFrames(ctx, q);
    return buildDiscs(ctx, frames, family);
}

void recountCurveSystem(CurveSystem& cs, const std::vector<Annulus>& annuli, const QuadSurface& sigma) {
    struct Item {
        int family;
        size_t curve;
        const NormalArc* arc;
    };
    std::map<uint32_t, std::vector<Item>> bySquare;
    for (int f = 0; f < 3; ++f)
        for (size_t i = 0; i < cs.families[size_t(f)].size(); ++i)
            for (const auto& a : cs.families[size_t(f)][i].arcs)
                bySquare[a.square].push_back({f, i, &a});
    cs.intersections = {};
    cs.embedded = true;
    cs.transverse = true;
    for (const auto& [sq, items] : bySquare)
        for (size_t x = 0; x < items.size(); ++x)
            for (size_t y = x + 1; y < items.size(); ++y) {
                const Item &A = items[x], &B = items[y];
                if (A.family == B.family && A.curve == B.curve)
                    continue;
                for (size_t i = 0; i + 1 < A.arc->path.size(); ++i)
                    for (size_t j = 0; j + 1 < B.arc->path.size(); ++j) {
                        int r = meet(A.arc->path[i], A.arc->path[i + 1], B.arc->path[j], B.arc->path[j + 1]);
                        if (!r)
                            continue;
                        if (A.family == B.family)
                            cs.embedded = false;
                        else if (r == 2)
                            cs.transverse = false;
                        else {
                            ++cs.intersections[size_t(A.family)][size_t(B.family)];
                            ++cs.intersections[size_t(B.family)][size_t(A.family)];
                        }
                    }
            }

    std::unordered_map<uint32_t, std::pair<size_t, int>> where;
    for (size_t ai = 0; ai < annuli.size(); ++ai)
        for (int k = 0; k < 4; ++k)
            where[annuli[ai].squares[size_t(k)]] = {ai, k};
    std::vector<int> quadOf;
    for (size_t k = 0; k < sigma.quads.size(); ++k) {
        if (quadOf.size() <= sigma.quads[k].pent)
            quadOf.resize(sigma.quads[k].pent + 1, -1);
        quadOf[sigma.quads[k].pent] = int(k);
    }
    auto component = [&](uint32_t square, uint8_t side) {
        auto [ai, k] = where.at(square);
        int omitted = sigma.quads[size_t(quadOf[square])].sideFacet[side];
        return omitted == annuli[ai].swapped[size_t(k)] ? 0 : 1;
    };
    cs.patterns.assign(annuli.size(), {});
    for (size_t ai = 0; ai < annuli.size(); ++ai)
        cs.patterns[ai].group = annuli[ai].group;
    for (int f = 0; f < 3; ++f)
        for (const auto& cv : cs.families[size_t(f)]) {
            size_t n = cv.arcs.size();
            if (n == 0 || !where.count(cv.arcs[0].square))
                continue;
            auto crossesBoundary = [&](size_t i) {
                const auto& a = cv.arcs[i];
                auto [ai, k] = where.at(a.square);
                int omitted = sigma.quads[size_t(quadOf[a.square])].sideFacet[a.sides[1]];
                return omitted == annuli[ai].apex || omitted == annuli[ai].swapped[size_t(k)];
            };
            size_t start = n;
            for (size_t i = 0; i < n; ++i)
                if (crossesBoundary((i + n - 1) % n)) {
                    start = i;
                    break;
                }
            if (start == n) {
                ++cs.patterns[where.at(cv.arcs[0].square).first].coreCurves[size_t(f)];
                continue;
            }
            for (size_t step = 0; step < n;) {
                size_t i = (start + step) % n;
                size_t len = 1;
                while (!crossesBoundary((i + len - 1) % n))
                    ++len;
                const auto& first = cv.arcs[i];
                const auto& last = cv.arcs[(i + len - 1) % n];
                bool same = component(first.square, first.sides[0]) == component(last.square, last.sides[1]);
                auto& pat = cs.patterns[where.at(first.square).first];
                ++(same ? pat.boundaryParallelArcs : pat.transverseArcs)[size_t(f)];
                step += len;
            }
        }
}

CurveSystem traceCurves(const std::array<std::vector<MeridianDisc>, 3>& discs, const std::vector<Annulus>& annuli,
                        const QuadSurface& sigma) {
    CurveSystem cs;
    for (int f = 0; f < 3; ++f)
        for (const auto& d : discs[size_t(f)]) {
            if (d.boundary.empty())
                throw Error(ErrorKind::Tracing, "disc without boundary");
            const auto& first = d.boundary.front();
            const auto& last = d.boundary.back();
            if (first.edges[0] != last.edges[1] || first.params[0] != last.params[1])
                throw Error(ErrorKind::Tracing, "open chain: disc boundary does not close");
            Curve cv;
            cv.family = f;
            cv.arcs = d.boundary;
            cv.dual = d.dual;
            cs.families[size_t(f)].push_back(std::move(cv));
        }
    recountCurveSystem(cs, annuli, sigma);
    return cs;
}

CurveSystem cleanupParallel(const CurveSystem& cs, const std::vector<Annulus>& annuli, const QuadSurface& sigma) {
    CurveSystem out;
    for (int f = 0; f < 3; ++f) {
        std::set<Signature> seen;
        for (const auto& cv : cs.families[size_t(f)])
            if (seen.insert(canonicalSignature(cv)).second)
                out.families[size_t(f)].push_back(cv);
    }
    recountCurveSystem(out, annuli, sigma);
    return out;
}

std::string curveSystemJson(const CurveSystem& cs, const std::vector<Annulus>& annuli) {
    using nlohmann::json;
    json fams = json::array();
    for (int f = 0; f < 3; ++f) {
        json curves = json::array();
        for (const auto& cv : cs.families[size_t(f)]) {
            json arcs = json::array();
            for (const auto& a : cv.arcs) {
                json path = json::array();
                for (const auto& p : a.path)
                    path.push_back({fracJson(p[0]), fracJson(p[1])});
                arcs.push_back({{"square", a.square},
                                {"entry", {{"side", a.sides[0]}, {"edge", a.edges[0]}, {"fraction", fracJson(a.params[0])}}},
                                {"exit", {{"side", a.sides[1]}, {"edge", a.edges[1]}, {"fraction", fracJson(a.params[1])}}},
                                {"path", path}});
            }
            json c = {{"arcs", arcs}};
            if (cv.dual)
                c["dual"] = {{"kind", cv.dual->kind == DualElement::Kind::Crossbar ? "crossbar" : "segment"},
                             {"cell", cv.dual->cell},
                             {"half", cv.dual->half}};
            curves.push_back(c);
        }
        fams.push_back({{"pair", {kPiecePairs[size_t(f)][0], kPiecePairs[size_t(f)][1]}},
                        {"mark", fracJson(spineMark(f))},
                        {"crossbarMark", fracJson(crossbarMark(f))},
                        {"curves", curves}});
    }
    json ann = json::array();
    for (size_t i = 0; i < annuli.size(); ++i) {
        json a = {{"group", annuli[i].group},
                  {"apexColor", annuli[i].apexColor},
                  {"squares", annuli[i].squares},
                  {"internalEdges", annuli[i].internalEdges},
                  {"boundaryEdges", annuli[i].boundaryEdges}};
        if (i < cs.patterns.size()) {
            a["coreCurves"] = cs.patterns[i].coreCurves;
            a["boundaryParallelArcs"] = cs.patterns[i].boundaryParallelArcs;
            a["transverseArcs"] = cs.patterns[i].transverseArcs;
        }
        ann.push_back(a);
    }
    json j = {{"families", fams},
              {"intersections", cs.intersections},
              {"embedded", cs.embedded},
              {"transverse", cs.transverse},
              {"annuli", ann}};
    return j.dump(2) + "\n";
}

std::string renderSvg(const CurveSystem& cs, const QuadSurface& sigma, const std::vector<Annulus>& annuli,
                      const DiagramLegend& legend) {
    static const char* kColors[3] = {"#d62728", "#2ca02c", "#1f77b4"};
    const int unit = 60, margin = 20, rowGap = 16, legendH = 30 + 18 * 4;
    const int width = margin * 2 + 4 * unit + 120;
    const int height = legendH + margin + int(annuli.size()) * (unit + rowGap);

    std::vector<int> quadOf;
    for (size_t k = 0; k < sigma.quads.size(); ++k) {
        if (quadOf.size() <= sigma.quads[k].pent)
            quadOf.resize(sigma.quads[k].pent + 1, -1);
        quadOf[sigma.quads[k].pent] = int(k);
    }
    struct Cell {
        size_t row;
        int col;
        bool kappaIsX, flipKappa, flipNu;
    };
    std::unordered_map<uint32_t, Cell> cells;
    for (size_t r = 0; r < annuli.size(); ++r)
        for (int k = 0; k < 4; ++k) {
            uint32_t p = annuli[r].squares[size_t(k)];
            if (p >= quadOf.size() || quadOf[p] < 0)
                continue;
            const auto& q = sigma.quads[size_t(quadOf[p])];
            uint8_t w = annuli[r].swapped[size_t(k)];
            bool kx = q.pairI[0] == annuli[r].apex || q.pairI[1] == annuli[r].apex;
            bool flipK = kx ? q.pairI[1] != w : q.pairJ[1] != w;
            uint32_t nuZeroEdge = q.sides[kx ? 0 : 3];
            bool flipN = nuZeroEdge != annuli[r].internalEdges[size_t((k + 3) % 4)];
            cells[p] = {r, k, kx, flipK, flipN};
        }

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    os << "<g font-family=\"monospace\" font-size=\"12\">\n";
    int y = margin;
    if (!legend.title.empty())
        os << "<text x=\"" << margin << "\" y=\"" << y << "\">" << legend.title << "</text>\n";
    y += 18;
    os << "<text x=\"" << margin << "\" y=\"" << y << "\">genus " << legend.sigmaGenus << ", handlebody genera "
       << legend.handlebodyGenera[0] << ' ' << legend.handlebodyGenera[1] << ' ' << legend.handlebodyGenera[2]
       << ", annuli " << annuli.size() << "</text>\n";
    for (int f = 0; f < 3; ++f) {
        y += 18;
        os << "<text x=\"" << margin << "\" y=\"" << y << "\" fill=\"" << kColors[f] << "\">pair ("
           << kPiecePairs[size_t(f)][0] << ',' << kPiecePairs[size_t(f)][1] << "): "
           << cs.families[size_t(f)].size() << " curves</text>\n";
    }
    os << "</g>\n";

    const int top = legendH + margin / 2;
    os << "<g fill=\"none\" stroke=\"#999\" stroke-width=\"1\">\n";
    for (size_t r = 0; r < annuli.size(); ++r)
        for (int k = 0; k < 4; ++k)
            os << "<rect x=\"" << margin + k * unit << "\" y=\"" << top + int(r) * (unit + rowGap) << "\" width=\""
               << unit << "\" height=\"" << unit << "\"/>\n";
    os << "</g>\n";

    for (int f = 0; f < 3; ++f) {
        os << "<g fill=\"none\" stroke=\"" << kColors[f] << "\" stroke-width=\"1.5\">\n";
        for (const auto& cv : cs.families[size_t(f)])
            for (const auto& a : cv.arcs) {
                auto it = cells.find(a.square);
                if (it == cells.end())
                    continue;
                const Cell& cell = it->second;
                os << "<polyline points=\"";
                for (size_t i = 0; i < a.path.size(); ++i) {
                    const auto& p = a.path[i];
                    Fraction kappa = cell.kappaIsX ? p[0] : p[1];
                    Fraction nu = cell.kappaIsX ? p[1] : p[0];
                    if (cell.flipKappa)
                        kappa = 1 - kappa;
                    if (cell.flipNu)
                        nu = 1 - nu;
                    Fraction px = Fraction(margin + cell.col * unit) + nu * unit;
                    Fraction py = Fraction(top + int(cell.row) * (unit + rowGap)) + (1 - kappa) * unit;
                    os << (i ? " " : "") << num(px) << ',' << num(py);
                }
                os << "\"/>\n";
            }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace trisect4
