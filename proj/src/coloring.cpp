#include "trisect4/coloring.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "trisect4/error.hpp"

namespace trisect4 {

std::array<int, 5> slotColors(const Skeleton& skel, const Tricoloring& c, size_t pent) {
    std::array<int, 5> out{};
    for (int v = 0; v < 5; ++v)
        out[size_t(v)] = c[skel.classOf(0, pent, v)];
    return out;
}

int singletonVertex(const Skeleton& skel, const Tricoloring& c, size_t pent) {
    auto col = slotColors(skel, c, pent);
    std::array<int, 3> count{};
    for (int x : col) {
        if (x < 0 || x > 2)
            return -1;
        ++count[size_t(x)];
    }
    auto sorted = count;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{1, 2, 2})
        return -1;
    for (int v = 0; v < 5; ++v)
        if (count[size_t(col[size_t(v)])] == 1)
            return v;
    return -1;
}

ColoringCheck checkTricoloring(const Triangulation& tri, const Skeleton& skel, const Tricoloring& c) {
    if (c.size() != skel.count(0))
        throw Error(ErrorKind::Input, "coloring has " + std::to_string(c.size()) + " entries, expected " +
                                          std::to_string(skel.count(0)));
    for (size_t v = 0; v < c.size(); ++v)
        if (c[v] < 0 || c[v] > 2)
            throw Error(ErrorKind::Input, "vertex class " + std::to_string(v) + " has no color");
    ColoringCheck r;
    for (size_t p = 0; p < tri.size(); ++p)
        if (singletonVertex(skel, c, p) < 0)
            r.offending.push_back(uint32_t(p));
    r.isTricoloring = r.offending.empty();
    return r;
}

MonochromeGraph monochromaticGraph(const Skeleton& skel, const Tricoloring& c, int k) {
    MonochromeGraph g;
    g.color = k;
    const size_t nv = skel.count(0);
    for (size_t v = 0; v < nv; ++v)
        if (c[v] == k)
            g.nodes.push_back(uint32_t(v));
    UnionFind uf(nv);
    const auto& edges = skel.classes(1);
    for (size_t e = 0; e < edges.size(); ++e) {
        const auto& rep = edges[e].representative();
        unsigned m = faces::mask(1, rep.face);
        int a = std::countr_zero(m);
        int b = 31 - std::countl_zero(m);
        uint32_t va = skel.classOf(0, rep.pent, a), vb = skel.classOf(0, rep.pent, b);
        if (c[va] == k && c[vb] == k) {
            g.edges.push_back(uint32_t(e));
            uf.unite(va, vb);
        }
    }
    for (uint32_t v : g.nodes)
        if (uf.find(v) == v)
            ++g.components;
    g.connected = g.components == 1;
    g.betti1 = long(g.edges.size()) - long(g.nodes.size()) + long(g.components);
    return g;
}

bool isCTricoloring(const Skeleton& skel, const Tricoloring& c) {
    for (int k = 0; k < 3; ++k)
        if (!monochromaticGraph(skel, c, k).connected)
            return false;
    return true;
}

Tricoloring canonicalColoring(const Tricoloring& c) {
    std::array<int, 3> map{-1, -1, -1};
    int next = 0;
    Tricoloring out(c.size());
    for (size_t v = 0; v < c.size(); ++v) {
        int& m = map[size_t(c[v])];
        if (m < 0)
            m = next++;
        out[v] = m;
    }
    return out;
}

namespace {

struct Search {
    const Skeleton& skel;
    size_t limit;
    std::vector<uint32_t> order;
    std::vector<std::vector<uint32_t>> incidences;  // per vertex class, one entry per slot
    std::vector<std::array<int, 3>> counts;
    Tricoloring color;
    std::vector<Tricoloring> found;

    void run(size_t depth, int maxUsed) {
        if (found.size() >= limit)
            return;
        if (depth == order.size()) {
            found.push_back(canonicalColoring(color));
            return;
        }
        const uint32_t v = order[depth];
        // Colors beyond the first unused one are symmetric images.
        for (int k = 0; k <= std::min(maxUsed + 1, 2); ++k) {
            bool ok = true;
            size_t applied = 0;
            for (uint32_t p : incidences[v]) {
                ++applied;
                if (++counts[p][size_t(k)] > 2) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                color[v] = k;
                run(depth + 1, std::max(maxUsed, k));
                color[v] = -1;
            }
            for (size_t i = 0; i < applied; ++i)
                --counts[incidences[v][i]][size_t(k)];
        }
    }
};

}  // namespace

std::vector<Tricoloring> findTricolorings(const Triangulation& tri, const Skeleton& skel, size_t limit) {
    const size_t nv = skel.count(0);
    if (nv < 3 || limit == 0)
        return {};
    Search s{skel, limit, {}, std::vector<std::vector<uint32_t>>(nv), std::vector<std::array<int, 3>>(tri.size()),
             Tricoloring(nv, -1), {}};
    for (size_t p = 0; p < tri.size(); ++p)
        for (int v = 0; v < 5; ++v)
            s.incidences[skel.classOf(0, p, v)].push_back(uint32_t(p));
    s.order.resize(nv);
    std::iota(s.order.begin(), s.order.end(), 0u);
    std::stable_sort(s.order.begin(), s.order.end(),
                     [&](uint32_t a, uint32_t b) { return s.incidences[a].size() > s.incidences[b].size(); });
    s.run(0, -1);
    std::sort(s.found.begin(), s.found.end());
    return s.found;
}

}  // namespace trisect4
