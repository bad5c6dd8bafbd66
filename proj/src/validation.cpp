#include "trisect4/validation.hpp"

#include <algorithm>
#include <bit>

namespace trisect4 {

namespace {

int perm4Sign(const std::array<uint8_t, 4>& p) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (p[size_t(i)] > p[size_t(j)])
                ++inv;
    return inv % 2 ? -1 : 1;
}

unsigned imageMask4(const std::array<uint8_t, 4>& p, unsigned m) {
    unsigned r = 0;
    for (int i = 0; i < 4; ++i)
        if (m & (1u << i))
            r |= 1u << p[size_t(i)];
    return r;
}

// Number of face classes of each dimension 0..2 of a tetrahedral gluing table.
std::array<size_t, 3> linkClassCounts(const VertexLink& link) {
    const size_t n = link.tets.size();
    UnionFind uf(n * 16);
    for (size_t t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const auto& a = link.tets[t].adj[size_t(f)];
            if (!a)
                continue;
            const unsigned faceMask = 0xFu ^ (1u << f);
            for (unsigned m = 1; m < 16; ++m)
                if ((m & faceMask) == m && std::popcount(m) <= 3)
                    uf.unite(t * 16 + m, size_t(a->tet) * 16 + imageMask4(a->gluing, m));
        }
    std::array<size_t, 3> counts{};
    std::vector<char> seen(n * 16, 0);
    for (size_t t = 0; t < n; ++t)
        for (unsigned m = 1; m < 16; ++m) {
            int d = std::popcount(m) - 1;
            if (d > 2)
                continue;
            size_t r = uf.find(t * 16 + m);
            if (!seen[r]) {
                seen[r] = 1;
                ++counts[size_t(d)];
            }
        }
    return counts;
}

}  // namespace

VertexLink vertexLink(const Triangulation& tri, const Skeleton& skel, uint32_t vertexClass) {
    VertexLink link;
    const auto& members = skel.classes(0).at(vertexClass).members;
    std::vector<std::array<int, 5>> index(tri.size());
    for (auto& row : index)
        row.fill(-1);
    for (const auto& m : members) {
        index[m.pent][m.face] = int(link.tets.size());
        link.tets.push_back(VertexLink::Tet{m.pent, m.face, {}});
    }
    auto others = [](int v) {
        std::array<uint8_t, 4> o{};
        int k = 0;
        for (int i = 0; i < 5; ++i)
            if (i != v)
                o[size_t(k++)] = uint8_t(i);
        return o;
    };
    link.closed = true;
    for (auto& tet : link.tets) {
        const auto from = others(tet.vertex);
        for (int x = 0; x < 4; ++x) {
            const int w = from[size_t(x)];
            const auto& a = tri.adjacent(tet.pent, w);
            if (!a) {
                link.closed = false;
                continue;
            }
            const int qv = a->gluing[tet.vertex];
            const int target = index[a->pent][size_t(qv)];
            if (target < 0) {
                link.closed = false;
                continue;
            }
            const auto to = others(qv);
            TetAdjacency ta;
            ta.tet = uint32_t(target);
            for (int y = 0; y < 4; ++y) {
                int img = a->gluing[from[size_t(y)]];
                ta.gluing[size_t(y)] = uint8_t(std::find(to.begin(), to.end(), img) - to.begin());
            }
            ta.face = ta.gluing[size_t(x)];
            tet.adj[size_t(x)] = ta;
        }
    }

    // Connectivity and orientability by sign propagation.
    const size_t n = link.tets.size();
    std::vector<int> sign(n, 0);
    link.orientable = true;
    size_t reached = 0;
    if (n > 0) {
        std::vector<size_t> stack{0};
        sign[0] = 1;
        while (!stack.empty()) {
            size_t t = stack.back();
            stack.pop_back();
            ++reached;
            for (const auto& a : link.tets[t].adj) {
                if (!a)
                    continue;
                int want = perm4Sign(a->gluing) == 1 ? -sign[t] : sign[t];
                if (sign[a->tet] == 0) {
                    sign[a->tet] = want;
                    stack.push_back(a->tet);
                } else if (sign[a->tet] != want) {
                    link.orientable = false;
                }
            }
        }
    }
    link.connected = n > 0 && reached == n;
    auto c = linkClassCounts(link);
    link.euler = long(c[0]) - long(c[1]) + long(c[2]) - long(n);
    return link;
}

std::optional<std::vector<int>> orientation(const Triangulation& tri) {
    const size_t n = tri.size();
    std::vector<int> sign(n, 0);
    for (size_t s = 0; s < n; ++s) {
        if (sign[s])
            continue;
        sign[s] = 1;
        std::vector<size_t> stack{s};
        while (!stack.empty()) {
            size_t p = stack.back();
            stack.pop_back();
            for (int f = 0; f < 5; ++f) {
                const auto& a = tri.adjacent(p, f);
                if (!a || a->pent >= n)
                    continue;
                int want = a->gluing.sign() == 1 ? -sign[p] : sign[p];
                if (!sign[a->pent]) {
                    sign[a->pent] = want;
                    stack.push_back(a->pent);
                } else if (sign[a->pent] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    return sign;
}

bool isOrientable(const Triangulation& tri) { return orientation(tri).has_value(); }

ValidationReport validate(const Triangulation& tri) {
    ValidationReport r;
    const size_t n = tri.size();
    bool involution = true;
    if (n == 0)
        r.failures.push_back("triangulation has no pentachora");
    for (size_t p = 0; p < n; ++p)
        for (int f = 0; f < 5; ++f) {
            const std::string at = "pentachoron " + std::to_string(p) + " facet " + std::to_string(f);
            const auto& a = tri.adjacent(p, f);
            if (!a) {
                r.failures.push_back("unglued facet: " + at);
                continue;
            }
            if (a->pent >= n || !a->gluing.isValid() || a->gluing[f] != a->facet) {
                r.failures.push_back("malformed gluing: " + at);
                involution = false;
                continue;
            }
            if (a->pent == p && a->facet == f) {
                r.failures.push_back("facet glued to itself: " + at);
                involution = false;
                continue;
            }
            const auto& b = tri.adjacent(a->pent, a->facet);
            if (!b || b->pent != p || b->facet != f || b->gluing != a->gluing.inverse()) {
                r.failures.push_back("gluing is not an involution: " + at);
                involution = false;
                continue;
            }
            if (a->pent == p && f < a->facet)
                r.notes.push_back("facets " + std::to_string(f) + " and " + std::to_string(a->facet) +
                                  " of pentachoron " + std::to_string(p) + " are glued together");
        }

    r.isOrientable = involution && isOrientable(tri);
    if (involution && !r.isOrientable)
        r.failures.push_back("triangulation is not orientable");

    Skeleton skel(tri);
    for (int d = 0; d < 5; ++d)
        r.classCounts[size_t(d)] = skel.count(d);
    r.eulerCharacteristic = skel.eulerCharacteristic();

    bool linksOk = involution;
    if (involution) {
        for (uint32_t v = 0; v < skel.count(0); ++v) {
            VertexLink link = vertexLink(tri, skel, v);
            LinkCheck lc{v, link.tets.size(), link.closed, link.connected, link.orientable, link.euler};
            if (!lc.ok()) {
                linksOk = false;
                r.failures.push_back("link of vertex " + std::to_string(v) +
                                     " is not a closed connected orientable 3-manifold candidate (chi=" +
                                     std::to_string(link.euler) + (link.closed ? "" : ", boundary") + ")");
            }
            r.links.push_back(lc);
        }
    }
    r.isValid = r.failures.empty() && linksOk;
    return r;
}

DualGraph dualGraph(const Triangulation& tri) {
    DualGraph g;
    g.nodes = tri.size();
    UnionFind uf(g.nodes);
    for (size_t p = 0; p < g.nodes; ++p)
        for (int f = 0; f < 5; ++f) {
            const auto& a = tri.adjacent(p, f);
            if (!a || a->pent >= g.nodes)
                continue;
            if (a->pent < p || (a->pent == p && a->facet < f))
                continue;
            g.edges.push_back({uint32_t(p), a->pent, uint8_t(f), a->facet});
            uf.unite(p, a->pent);
        }
    size_t comps = 0;
    for (size_t p = 0; p < g.nodes; ++p)
        if (uf.find(p) == p)
            ++comps;
    g.connected = comps == 1;
    return g;
}

}  // namespace trisect4
