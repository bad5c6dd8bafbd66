#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trisect4/perm.hpp"

namespace trisect4 {

/// Target of a facet gluing: facet `facet` of pentachoron `pent`, reached
/// through `gluing` (vertex i of the source maps to vertex gluing[i]).
struct Adjacency {
    uint32_t pent = 0;
    uint8_t facet = 0;
    Perm5 gluing;

    friend bool operator==(const Adjacency&, const Adjacency&) = default;
};

/// A singular triangulation of a 4-dimensional pseudo-manifold: n pentachora
/// whose facets are paired by vertex permutations. Facet f of a pentachoron is
/// the tetrahedron omitting vertex f.
///
/// The table is stored one-sidedly so that arbitrary (possibly inconsistent)
/// gluing tables can be loaded and diagnosed by validate(); join() always
/// writes both sides.
class Triangulation {
  public:
    Triangulation() = default;
    explicit Triangulation(size_t n) : adj_(n) {}

    size_t size() const { return adj_.size(); }
    bool empty() const { return adj_.empty(); }

    size_t addPentachoron() {
        adj_.emplace_back();
        return adj_.size() - 1;
    }

    const std::optional<Adjacency>& adjacent(size_t p, int f) const { return adj_[p][size_t(f)]; }
    bool isGlued(size_t p, int f) const { return adj_[p][size_t(f)].has_value(); }

    /// Glue facet f of p to facet gluing[f] of q, writing both directions.
    void join(size_t p, int f, size_t q, const Perm5& gluing);
    void unjoin(size_t p, int f);

    /// One-sided write used by loaders; no consistency checks.
    void setRaw(size_t p, int f, std::optional<Adjacency> a) { adj_[p][size_t(f)] = a; }

    /// True iff every facet is glued and the gluing relation is a
    /// fixed-point-free involution with matching permutations.
    bool isClosedConsistent() const;

    /// Relabel pentachora (pentachoron p becomes order[p]) and vertices
    /// (vertex i of p becomes vertexMaps[p][i]).
    Triangulation relabelled(const std::vector<uint32_t>& order,
                             const std::vector<Perm5>& vertexMaps) const;

    friend bool operator==(const Triangulation&, const Triangulation&) = default;

  private:
    std::vector<std::array<std::optional<Adjacency>, 5>> adj_;
};

// Face tables. A face of a pentachoron is a vertex bitmask; within each
// dimension faces are indexed lexicographically by their sorted vertex tuple,
// except facets (dimension 3), where face index f is the facet omitting f.
namespace faces {

constexpr int count(int dim) {
    constexpr int c[5] = {5, 10, 10, 5, 1};
    return c[dim];
}
unsigned mask(int dim, int index);
int index(unsigned mask);  // index within its own dimension
int dimOf(unsigned mask);

}  // namespace faces

}  // namespace trisect4
