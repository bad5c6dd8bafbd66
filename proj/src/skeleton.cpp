#include "trisect4/skeleton.hpp"

#include <numeric>

#include "trisect4/error.hpp"

namespace trisect4 {

UnionFind::UnionFind(size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), size_t(0));
}

size_t UnionFind::find(size_t x) {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a == b)
        return false;
    if (rank_[a] < rank_[b])
        std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b])
        ++rank_[a];
    return true;
}

Skeleton::Skeleton(const Triangulation& tri) : pentachora_(tri.size()) {
    const size_t n = tri.size();
    for (int dim = 0; dim < 4; ++dim) {
        const size_t per = size_t(faces::count(dim));
        UnionFind uf(n * per);
        for (size_t p = 0; p < n; ++p)
            for (int f = 0; f < 5; ++f) {
                const auto& a = tri.adjacent(p, f);
                if (!a || a->pent >= n)
                    continue;
                const unsigned facetMask = 0x1Fu ^ (1u << f);
                for (int i = 0; i < faces::count(dim); ++i) {
                    unsigned m = faces::mask(dim, i);
                    if ((m & facetMask) != m)
                        continue;
                    unsigned img = a->gluing.imageMask(m);
                    uf.unite(p * per + size_t(i), size_t(a->pent) * per + size_t(faces::index(img)));
                }
            }
        auto& ids = ids_[dim];
        ids.assign(n * per, UINT32_MAX);
        std::vector<uint32_t> rootId(n * per, UINT32_MAX);
        auto& cls = classes_[dim];
        for (size_t p = 0; p < n; ++p)
            for (size_t i = 0; i < per; ++i) {
                size_t slot = p * per + i;
                size_t r = uf.find(slot);
                if (rootId[r] == UINT32_MAX) {
                    rootId[r] = uint32_t(cls.size());
                    cls.push_back(SimplexClass{dim, {}});
                }
                ids[slot] = rootId[r];
                cls[rootId[r]].members.push_back(FaceSlot{uint32_t(p), uint8_t(i)});
            }
    }
}

long Skeleton::eulerCharacteristic() const {
    return long(count(0)) - long(count(1)) + long(count(2)) - long(count(3)) + long(count(4));
}

std::vector<SimplexClass> simplexClasses(const Triangulation& tri, int dim) {
    if (dim < 0 || dim > 3)
        throw Error(ErrorKind::Dimension, "simplex dimension must be in 0..3");
    return Skeleton(tri).classes(dim);
}

}  // namespace trisect4
