#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "trisect4/error.hpp"
#include "trisect4/skeleton.hpp"
#include "trisect4/triangulation.hpp"

namespace trisect4::detail {

/// Where a vertex of an output pentachoron came from in the input.
struct VertexOrigin {
    uint32_t pent = 0;
    uint8_t vertex = 0;
};

/// Rebuilds a triangulation after a local replacement. Kept pentachora are
/// renumbered in their original order, fresh ones follow. Facets of removed
/// pentachora that face the outside are relocated onto fresh pentachora with
/// a label map (fresh labels -> old labels); every old gluing between
/// surviving slots is then transported.
class Rebuilder {
  public:
    struct Handle {
        bool fresh = false;
        uint32_t index = 0;
    };

    explicit Rebuilder(const Triangulation& old) : old_(old), removed_(old.size(), false), detached_(old.size()) {
        for (auto& d : detached_)
            d.fill(false);
    }

    void remove(size_t p) { removed_[p] = true; }
    bool isRemoved(size_t p) const { return removed_[p]; }
    /// Stop copying the old gluing of this kept slot; the caller rejoins it.
    void detach(size_t p, int f) { detached_[p][size_t(f)] = true; }

    Handle kept(size_t p) const { return {false, uint32_t(p)}; }
    Handle addFresh() {
        origins_.emplace_back();
        return {true, uint32_t(origins_.size() - 1)};
    }

    void relocate(size_t oldP, int oldF, Handle h, int newF, const Perm5& labelMap) {
        relocations_.push_back({{uint32_t(oldP), uint8_t(oldF)}, {h, uint8_t(newF), labelMap}});
    }
    void join(Handle a, int fa, Handle b, const Perm5& perm) { joins_.push_back({a, uint8_t(fa), b, perm}); }
    void setOrigin(Handle h, int v, std::optional<VertexOrigin> o) { origins_[h.index][size_t(v)] = o; }

    struct Result {
        Triangulation tri;
        std::vector<std::array<std::optional<VertexOrigin>, 5>> origins;  // per output pentachoron
        std::vector<int64_t> newIndexOfOld;                               // -1 if removed
        std::vector<uint32_t> freshIndex;                                 // output index of fresh k
    };

    Result build() const {
        Result r;
        r.newIndexOfOld.assign(old_.size(), -1);
        uint32_t next = 0;
        for (size_t p = 0; p < old_.size(); ++p)
            if (!removed_[p])
                r.newIndexOfOld[p] = next++;
        for (size_t k = 0; k < origins_.size(); ++k)
            r.freshIndex.push_back(next++);
        r.tri = Triangulation(next);
        r.origins.resize(next);
        for (size_t p = 0; p < old_.size(); ++p)
            if (!removed_[p])
                for (int v = 0; v < 5; ++v)
                    r.origins[size_t(r.newIndexOfOld[p])][size_t(v)] = VertexOrigin{uint32_t(p), uint8_t(v)};
        for (size_t k = 0; k < origins_.size(); ++k)
            r.origins[r.freshIndex[k]] = origins_[k];

        auto resolve = [&](Handle h) -> size_t {
            return h.fresh ? r.freshIndex[h.index] : size_t(r.newIndexOfOld[h.index]);
        };
        // Old slot -> (new pentachoron, new facet, labelMap new->old).
        std::vector<std::array<std::optional<std::pair<std::pair<size_t, int>, Perm5>>, 5>> where(old_.size());
        for (size_t p = 0; p < old_.size(); ++p)
            if (!removed_[p])
                for (int f = 0; f < 5; ++f)
                    if (!detached_[p][size_t(f)])
                        where[p][size_t(f)] = {{size_t(r.newIndexOfOld[p]), f}, Perm5()};
        for (const auto& rel : relocations_)
            where[rel.from.first][rel.from.second] = {{resolve(rel.to.h), rel.to.facet}, rel.to.labelMap};

        for (size_t p = 0; p < old_.size(); ++p)
            for (int f = 0; f < 5; ++f) {
                const auto& src = where[p][size_t(f)];
                if (!src)
                    continue;
                const auto& a = old_.adjacent(p, f);
                if (!a)
                    continue;
                const auto& dst = where[a->pent][a->facet];
                if (!dst)
                    throw Error(ErrorKind::Structure, "rebuild: gluing of pentachoron " + std::to_string(p) +
                                                          " facet " + std::to_string(f) + " has no destination");
                const auto [np, nf] = src->first;
                const auto [nq, ng] = dst->first;
                Perm5 perm = dst->second.inverse() * a->gluing * src->second;
                if (const auto& existing = r.tri.adjacent(np, nf)) {
                    if (existing->pent != nq || existing->facet != ng || existing->gluing != perm)
                        throw Error(ErrorKind::Structure, "rebuild: conflicting gluings");
                    continue;
                }
                r.tri.join(np, nf, nq, perm);
            }
        for (const auto& j : joins_) {
            size_t a = resolve(j.a), b = resolve(j.b);
            if (r.tri.isGlued(a, j.fa) || r.tri.isGlued(b, j.perm[j.fa]))
                throw Error(ErrorKind::Structure, "rebuild: facet joined twice");
            r.tri.join(a, j.fa, b, j.perm);
        }
        return r;
    }

  private:
    struct Target {
        Handle h;
        uint8_t facet;
        Perm5 labelMap;
    };
    struct Relocation {
        std::pair<uint32_t, uint8_t> from;
        Target to;
    };
    struct Join {
        Handle a;
        uint8_t fa;
        Handle b;
        Perm5 perm;
    };

    const Triangulation& old_;
    std::vector<bool> removed_;
    std::vector<std::array<bool, 5>> detached_;
    std::vector<std::array<std::optional<VertexOrigin>, 5>> origins_;
    std::vector<Relocation> relocations_;
    std::vector<Join> joins_;
};

/// Carry a coloring across a rebuild. Output vertex classes without any
/// origin receive `freshColor`.
inline std::vector<int> transferColoring(const Skeleton& oldSkel, const std::vector<int>& oldColors,
                                         const Skeleton& newSkel, const Rebuilder::Result& r, int freshColor) {
    std::vector<int> out(newSkel.count(0), freshColor);
    for (size_t v = 0; v < out.size(); ++v)
        for (const auto& slot : newSkel.classes(0)[v].members)
            if (const auto& o = r.origins[slot.pent][slot.face]) {
                out[v] = oldColors[oldSkel.classOf(0, o->pent, o->vertex)];
                break;
            }
    return out;
}

}  // namespace trisect4::detail
