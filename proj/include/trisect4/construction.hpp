#pragma once

#include <cstdint>
#include <vector>

#include "trisect4/coloring.hpp"
#include "trisect4/triangulation.hpp"

namespace trisect4 {

struct ColoredTriangulation {
    Triangulation tri;
    Tricoloring coloring;
};

/// Flag subdivision: one pentachoron per flag edge < triangle < facet of
/// each input pentachoron (60 per pentachoron). Original vertices get color
/// 0, triangle barycentres color 1, facet and pentachoron barycentres color 2.
ColoredTriangulation flagSubdivide(const Triangulation& tri);

/// Flag index of (f, g, h) for pairwise distinct f, g, h: the facet omits f,
/// the triangle omits f and g, the edge omits f, g and h.
int flagIndex(int f, int g, int h);

struct DoublePentachoron {
    uint32_t first = 0, second = 0;
    uint8_t apexFirst = 0, apexSecond = 0;  // vertex opposite the shared facet
    int apexColor = 0;
};

/// Pair every pentachoron with the one across its bicolor facet. Throws
/// Error(Input) if c is not a tricoloring and Error(Structure) if the
/// bicolor facets do not match up.
std::vector<DoublePentachoron> doublePentachoronDecomposition(const Triangulation& tri, const Skeleton& skel,
                                                              const Tricoloring& c);

struct QuadraGroup {
    std::array<uint32_t, 4> pents{};
    uint32_t commonEdge = 0;  // edge class shared by exactly these four
    int apexColor = 0;
    uint32_t origin = 0;  // index of the double pentachoron it replaced
    // Pentachoron pents[k] is the first pentachoron of the pair with vertex
    // replaced[k] swapped for the second apex; the first apex stays at
    // vertex `apex`. The common edge is {apex, replaced[k]} in each.
    uint8_t apex = 0;
    std::array<uint8_t, 4> replaced{};
};

struct QuadraDecomposition {
    std::vector<QuadraGroup> groups;
    bool coversAll = false;
};

/// The 2-4 move on one double pentachoron; pentachoron count grows by two.
Triangulation twoFourMove(const Triangulation& tri, const DoublePentachoron& pair);

struct TsResult {
    Triangulation tri;
    Tricoloring coloring;
    QuadraDecomposition quadra;
    size_t pairsMoved = 0;
    size_t pairsSkipped = 0;
};

/// Replace every double pentachoron by a quadra pentachoron. In conservative
/// mode pairs whose apex classes are already joined by an edge of their color
/// are left alone.
TsResult makeTs(const Triangulation& tri, const Tricoloring& c, bool conservative = false);

}  // namespace trisect4
