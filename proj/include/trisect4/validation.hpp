#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trisect4/skeleton.hpp"
#include "trisect4/triangulation.hpp"

namespace trisect4 {

/// Gluing of a link tetrahedron face: face `face` of tetrahedron `tet`, with
/// vertex i of the source mapped to gluing[i].
struct TetAdjacency {
    uint32_t tet = 0;
    uint8_t face = 0;
    std::array<uint8_t, 4> gluing{};
};

/// The link of a vertex class as a 3-dimensional gluing table: one
/// tetrahedron per incidence of the vertex in a pentachoron.
struct VertexLink {
    struct Tet {
        uint32_t pent = 0;
        uint8_t vertex = 0;  // the incidence this tetrahedron is dual to
        std::array<std::optional<TetAdjacency>, 4> adj;
    };
    std::vector<Tet> tets;
    bool closed = false;
    bool connected = false;
    bool orientable = false;
    long euler = 0;  // V - E + F - T of the link triangulation

    /// Necessary conditions for a closed connected 3-manifold link.
    bool isClosedManifoldCandidate() const { return closed && connected && orientable && euler == 0; }
};

VertexLink vertexLink(const Triangulation& tri, const Skeleton& skel, uint32_t vertexClass);

struct LinkCheck {
    uint32_t vertexClass = 0;
    size_t tetrahedra = 0;
    bool closed = false;
    bool connected = false;
    bool orientable = false;
    long euler = 0;
    bool ok() const { return closed && connected && orientable && euler == 0; }
};

struct ValidationReport {
    bool isValid = false;
    bool isOrientable = false;
    std::array<size_t, 5> classCounts{};
    long eulerCharacteristic = 0;
    std::vector<LinkCheck> links;
    std::vector<std::string> failures;
    std::vector<std::string> notes;  // non-fatal observations
};

/// Check every structural invariant of a gluing table; never throws.
ValidationReport validate(const Triangulation& tri);

/// Consistent +-1 orientation of pentachora, if one exists. A gluing by an
/// even permutation flips the sign, an odd one keeps it.
std::optional<std::vector<int>> orientation(const Triangulation& tri);
bool isOrientable(const Triangulation& tri);

struct DualGraph {
    struct Edge {
        uint32_t a = 0, b = 0;
        uint8_t facetA = 0, facetB = 0;
    };
    size_t nodes = 0;
    std::vector<Edge> edges;
    bool connected = false;
};

DualGraph dualGraph(const Triangulation& tri);

}  // namespace trisect4
