#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "trisect4/skeleton.hpp"
#include "trisect4/triangulation.hpp"

namespace trisect4 {

/// Color (0, 1 or 2) of each vertex class, indexed by class id.
using Tricoloring = std::vector<int>;

struct ColoringCheck {
    bool isTricoloring = false;
    std::vector<uint32_t> offending;  // pentachora violating the (2,2,1) pattern
};

/// Throws Error(Input) if some vertex class has no color in 0..2.
ColoringCheck checkTricoloring(const Triangulation& tri, const Skeleton& skel, const Tricoloring& c);

struct MonochromeGraph {
    int color = 0;
    std::vector<uint32_t> nodes;  // vertex classes
    std::vector<uint32_t> edges;  // edge classes
    size_t components = 0;
    bool connected = false;
    long betti1 = 0;
};

MonochromeGraph monochromaticGraph(const Skeleton& skel, const Tricoloring& c, int k);
bool isCTricoloring(const Skeleton& skel, const Tricoloring& c);

/// Up to `limit` tricolorings, one per orbit of the color permutations,
/// each relabelled so colors first appear in increasing order along the
/// vertex classes. Deterministic.
std::vector<Tricoloring> findTricolorings(const Triangulation& tri, const Skeleton& skel, size_t limit);

/// First-appearance relabelling of colors along class order.
Tricoloring canonicalColoring(const Tricoloring& c);

// Per-pentachoron views of a tricoloring.
std::array<int, 5> slotColors(const Skeleton& skel, const Tricoloring& c, size_t pent);
/// The vertex whose color appears once; its opposite facet is the unique
/// bicolor facet. Returns -1 if the pattern is violated.
int singletonVertex(const Skeleton& skel, const Tricoloring& c, size_t pent);

}  // namespace trisect4
