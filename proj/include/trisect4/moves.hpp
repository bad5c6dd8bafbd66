#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trisect4/coloring.hpp"
#include "trisect4/skeleton.hpp"
#include "trisect4/triangulation.hpp"

namespace trisect4 {

enum class MoveKind { P15, P51, P24, P42, P33, M02, M20, Collapse };
std::string moveName(MoveKind k);

/// A move location inside one pentachoron. `face` is read in the dimension
/// the move acts on: ignored for p15, a facet for p24 and m02, a triangle
/// index for p33, an edge index for p42 and collapse, a vertex for p51 and
/// m20.
struct MoveSite {
    MoveKind kind = MoveKind::P15;
    uint32_t pent = 0;
    int face = 0;
};

/// Site at the canonical representative of a simplex class (vertex class for
/// p51/m20, edge class for p42/collapse, triangle class for p33, facet class
/// for p24/m02, pentachoron for p15).
MoveSite siteForClass(const Skeleton& skel, MoveKind kind, uint32_t classId);

/// Output of a move plus, for every output vertex, the input vertex it came
/// from (absent for vertices the move creates).
struct MoveResult {
    Triangulation tri;
    std::vector<std::array<std::optional<std::pair<uint32_t, uint8_t>>, 5>> origins;
    std::optional<MoveSite> inverse;  // site of the inverse move, when there is one
};

/// Throws Error(Site) when the precondition of the move fails.
MoveResult applyMove(const Triangulation& tri, const MoveSite& site);

enum class ColorVerdict { PreservesTricoloring, PreservesC, MayBreakC, NotColorable };
std::string verdictName(ColorVerdict v);

struct ColorClassification {
    ColorVerdict verdict = ColorVerdict::NotColorable;
    std::vector<int> newVertexColors;  // admissible colors of a created vertex
    std::string reason;
};

ColorClassification classifyColorPreservation(const Triangulation& tri, const Tricoloring& c, const MoveSite& site);

struct ColoredMove {
    Triangulation tri;
    Tricoloring coloring;
    ColorClassification classification;
};

/// Apply a move and carry the coloring along; a created vertex takes
/// newVertexColors[choice]. Throws Error(Site) for not-colorable sites.
ColoredMove applyColoredMove(const Triangulation& tri, const Tricoloring& c, const MoveSite& site, size_t choice = 0);

// Bubble spheres around an edge.
struct BubbleWitness {
    uint32_t edge = 0;
    std::vector<uint32_t> triangles;  // F_1..F_m, m = 2k
    std::vector<uint32_t> links;      // E_1..E_m: the edge shared by F_i and F_{i+1}
};

struct BubbleSearch {
    std::optional<BubbleWitness> witness;  // shortest even closed chain
    std::optional<BubbleWitness> oddChain; // shortest odd closed chain, if any
    bool blocksCollapse() const { return witness.has_value() || oddChain.has_value(); }
};

BubbleSearch findBubbleSphere(const Skeleton& skel, uint32_t edgeClass);

/// Collapse an edge class with distinct endpoint classes. Throws
/// Error(Collapse) when every pentachoron contains the edge, when a
/// pentachoron contains it twice, when face-pairing propagation cycles, and
/// (unless forced) when a bubble chain exists.
MoveResult collapseEdge(const Triangulation& tri, uint32_t edgeClass, bool force = false);

struct SimplifyOptions {
    size_t targetVertices = 3;
    size_t maxSteps = 1000;
    int retries = 64;
    uint64_t seed = 0;
};

struct SimplifyResult {
    Triangulation tri;
    Tricoloring coloring;
    std::vector<std::string> log;  // JSON lines
    size_t collapses = 0;
};

/// Greedy best-effort sequence of bubble-free monochromatic edge collapses,
/// accepting only collapses that keep the trisection status.
SimplifyResult simplifyVertices(const Triangulation& tri, const Tricoloring& c, const SimplifyOptions& opt = {});

}  // namespace trisect4
