#include "trisect4/triangulation.hpp"

#include <algorithm>
#include <bit>

#include "trisect4/error.hpp"

namespace trisect4 {

void Triangulation::join(size_t p, int f, size_t q, const Perm5& gluing) {
    int g = gluing[f];
    if (p == q && f == g)
        throw Error(ErrorKind::Structure, "facet cannot be glued to itself");
    adj_[p][size_t(f)] = Adjacency{uint32_t(q), uint8_t(g), gluing};
    adj_[q][size_t(g)] = Adjacency{uint32_t(p), uint8_t(f), gluing.inverse()};
}

void Triangulation::unjoin(size_t p, int f) {
    if (auto& a = adj_[p][size_t(f)]) {
        auto& back = adj_[a->pent][a->facet];
        if (back && back->pent == p && back->facet == f)
            back.reset();
        a.reset();
    }
}

bool Triangulation::isClosedConsistent() const {
    for (size_t p = 0; p < size(); ++p)
        for (int f = 0; f < 5; ++f) {
            const auto& a = adj_[p][size_t(f)];
            if (!a || a->pent >= size() || !a->gluing.isValid() || a->gluing[f] != a->facet)
                return false;
            if (a->pent == p && a->facet == f)
                return false;
            const auto& b = adj_[a->pent][a->facet];
            if (!b || b->pent != p || b->facet != f || b->gluing != a->gluing.inverse())
                return false;
        }
    return true;
}

Triangulation Triangulation::relabelled(const std::vector<uint32_t>& order,
                                        const std::vector<Perm5>& vertexMaps) const {
    Triangulation out(size());
    for (size_t p = 0; p < size(); ++p)
        for (int f = 0; f < 5; ++f) {
            const auto& a = adj_[p][size_t(f)];
            if (!a)
                continue;
            const Perm5& mp = vertexMaps[p];
            const Perm5& mq = vertexMaps[a->pent];
            Perm5 g = mq * a->gluing * mp.inverse();
            out.adj_[order[p]][size_t(mp[f])] =
                Adjacency{order[a->pent], uint8_t(mq[a->facet]), g};
        }
    return out;
}

namespace faces {

namespace {

struct Tables {
    unsigned masks[5][10] = {};
    int idx[32] = {};
    Tables() {
        int next[5] = {};
        // Lexicographic order of sorted tuples == numeric order of masks read
        // with vertex 0 as the most significant position.
        for (int dim = 0; dim < 5; ++dim) {
            std::vector<unsigned> ms;
            for (unsigned m = 1; m < 32; ++m)
                if (std::popcount(m) == dim + 1)
                    ms.push_back(m);
            auto key = [](unsigned m) {
                unsigned k = 0;
                for (int i = 0; i < 5; ++i)
                    if (m & (1u << i))
                        k |= 1u << (4 - i);
                return k;
            };
            std::sort(ms.begin(), ms.end(), [&](unsigned a, unsigned b) { return key(a) > key(b); });
            if (dim == 3) {
                for (int f = 0; f < 5; ++f)
                    ms[size_t(f)] = 0x1Fu ^ (1u << f);
            }
            for (unsigned m : ms) {
                masks[dim][next[dim]] = m;
                idx[m] = next[dim]++;
            }
        }
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

unsigned mask(int dim, int index) { return tables().masks[dim][index]; }
int index(unsigned m) { return tables().idx[m]; }
int dimOf(unsigned m) { return std::popcount(m) - 1; }

}  // namespace faces

}  // namespace trisect4
