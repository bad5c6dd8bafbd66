#pragma once

#include <cstdint>
#include <vector>

#include "trisect4/triangulation.hpp"

namespace trisect4 {

/// One (pentachoron, face) embedding of a singular simplex.
struct FaceSlot {
    uint32_t pent = 0;
    uint8_t face = 0;  // face index within its dimension

    friend bool operator==(const FaceSlot&, const FaceSlot&) = default;
    friend auto operator<=>(const FaceSlot&, const FaceSlot&) = default;
};

/// An equivalence class of k-faces under the face pairings. Members are
/// sorted; the first member is the canonical representative.
struct SimplexClass {
    int dim = 0;
    std::vector<FaceSlot> members;

    const FaceSlot& representative() const { return members.front(); }
    size_t degree() const { return members.size(); }
};

/// All simplex classes of dimensions 0..3 of a triangulation. Classes of each
/// dimension are ordered by their canonical representative. Unglued facets
/// simply induce no identifications, so partial tables are accepted.
class Skeleton {
  public:
    explicit Skeleton(const Triangulation& tri);

    size_t count(int dim) const { return dim == 4 ? pentachora_ : classes_[size_t(dim)].size(); }
    uint32_t classOf(int dim, size_t pent, int face) const {
        return ids_[size_t(dim)][pent * size_t(faces::count(dim)) + size_t(face)];
    }
    uint32_t classOfMask(size_t pent, unsigned mask) const {
        return classOf(faces::dimOf(mask), pent, faces::index(mask));
    }
    const std::vector<SimplexClass>& classes(int dim) const { return classes_[size_t(dim)]; }

    long eulerCharacteristic() const;

  private:
    size_t pentachora_ = 0;
    std::vector<uint32_t> ids_[4];
    std::vector<SimplexClass> classes_[4];
};

/// simplex_classes operation; rejects dimensions outside 0..3.
std::vector<SimplexClass> simplexClasses(const Triangulation& tri, int dim);

/// Minimal union-find over dense integer ids.
class UnionFind {
  public:
    explicit UnionFind(size_t n = 0);
    size_t find(size_t x);
    bool unite(size_t a, size_t b);
    size_t size() const { return parent_.size(); }

  private:
    std::vector<size_t> parent_;
    std::vector<uint8_t> rank_;
};

}  // namespace trisect4
