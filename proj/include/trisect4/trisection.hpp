#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trisect4/coloring.hpp"
#include "trisect4/skeleton.hpp"
#include "trisect4/triangulation.hpp"

namespace trisect4 {

/// The central surface: one square per pentachoron whose corners are the
/// tricolor triangles and whose sides are the tricolor facets.
struct QuadSurface {
    struct Quad {
        uint32_t pent = 0;
        uint8_t singleton = 0;
        int colorI = 0, colorJ = 0;           // the two doubled colors, colorI < colorJ
        std::array<uint8_t, 2> pairI{}, pairJ{};  // local vertices, increasing
        // Corner k is the triangle {pairI[x], pairJ[y], singleton} with
        // (x, y) = (0,0), (1,0), (1,1), (0,1). Side k joins corners k and k+1.
        std::array<uint32_t, 4> corners{};   // triangle classes
        std::array<uint32_t, 4> sides{};     // facet classes
        std::array<uint8_t, 4> sideFacet{};  // local facet of side k
    };
    struct Component {
        std::vector<uint32_t> quads;
        size_t vertices = 0, edges = 0;
        long euler = 0;
        bool orientable = true;
        int genus = 0;
    };

    std::vector<Quad> quads;
    size_t vertices = 0, edges = 0;
    long euler = 0;
    bool orientable = true;
    std::vector<Component> components;
    std::vector<uint32_t> componentOf;  // per quad
    std::vector<int> orientation;       // +-1 per quad, coherent when orientable

    bool connected() const { return components.size() == 1; }
    int genus() const;  // sum over components
};

/// Corner (x, y) of a quad as a local triangle mask.
unsigned quadCornerMask(const QuadSurface::Quad& q, int corner);

QuadSurface centralSurface(const Triangulation& tri, const Skeleton& skel, const Tricoloring& c);

/// Spine of the 3-dimensional piece between colors i < j: squares in the
/// bicolor facets {i,i,j,j}, segments in the triangles with colors
/// {i,i,j} or {i,j,j}, vertices at the midpoints of the i-j edges.
struct SpineComplex {
    int i = 0, j = 1;
    std::vector<uint32_t> vertices;  // edge classes
    std::vector<uint32_t> segments;  // triangle classes
    std::vector<std::array<uint32_t, 2>> segmentEnds;  // indices into vertices
    struct Square {
        uint32_t facetClass = 0;
        std::array<uint32_t, 4> boundary{};  // indices into segments
    };
    std::vector<Square> squares;
};

SpineComplex spineComplex(const Triangulation& tri, const Skeleton& skel, const Tricoloring& c, int i, int j);

struct SpineGraph {
    size_t vertices = 0, edges = 0, components = 0;
    long betti1 = 0;
    std::vector<uint32_t> residualSegments;             // indices into SpineComplex::segments
    std::vector<std::pair<uint32_t, uint32_t>> steps;   // (square, free segment) in collapse order
    int attempt = 0;
};

/// Greedy elementary collapses of all squares. Attempt 0 uses the natural
/// order, later attempts shuffle it with a generator seeded from `seed`.
/// Absent when every attempt gets stuck.
std::optional<SpineGraph> collapseToGraph(const SpineComplex& s, int retries, uint64_t seed);

enum class TsStatus { NotTricolored, Tricolored, CTricolored, TsVerified, TsInconclusive };
std::string statusName(TsStatus s);

struct TrisectionSummary {
    TsStatus status = TsStatus::NotTricolored;
    size_t pentachora = 0;
    long euler = 0;
    std::array<long, 3> handlebodyGenera{};  // b1 of Gamma_0..2
    std::array<bool, 3> gammaConnected{};
    // Pieces (0,1), (0,2), (1,2); absent when the collapse was inconclusive.
    std::array<std::optional<long>, 3> pieceGenera{};
    std::array<size_t, 3> spineSquares{};
    int sigmaGenus = 0;
    size_t sigmaComponents = 0;
    std::vector<int> sigmaComponentGenera;
    bool sigmaOrientable = true;
    size_t sigmaVertices = 0, sigmaEdges = 0;
    long eulerResidual = 0;  // chi - (2 + g - g0 - g1 - g2)
    std::string detail;
};

constexpr std::array<std::array<int, 2>, 3> kPiecePairs{{{0, 1}, {0, 2}, {1, 2}}};

TrisectionSummary verifyTs(const Triangulation& tri, const Tricoloring& c, int retries = 64, uint64_t seed = 0);

/// Throws Error(Bound) unless g(Sigma) <= n/2 and, when the triangulation
/// came from the full pipeline on m pentachora, g(Sigma) <= 60m.
bool genusBoundCheck(const TrisectionSummary& s, std::optional<size_t> sourcePentachora = std::nullopt);

}  // namespace trisect4
