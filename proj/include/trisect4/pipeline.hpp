#pragma once

#include <optional>
#include <string>

#include "trisect4/construction.hpp"
#include "trisect4/diagram.hpp"
#include "trisect4/moves.hpp"
#include "trisect4/report.hpp"

namespace trisect4 {

struct PipelineOptions {
    uint64_t seed = 0;
    int retries = 64;
    bool conservative = false;
    bool precolored = false;     // use the given coloring as is; never fall back
    size_t coloringLimit = 64;   // direct colorings tried before falling back
};

/// A triangulation with whatever coloring data travels with it.
struct ColoredInput {
    Triangulation tri;
    std::optional<Tricoloring> coloring;
    std::optional<QuadraDecomposition> quadra;
};

struct TrisectRoute {
    std::string route;  // "given", "direct" or "pipeline"
    Triangulation tri;
    Tricoloring coloring;
    std::optional<QuadraDecomposition> quadra;
    TrisectionSummary summary;
    std::optional<TrisectionSummary> firstAttempt;  // when the final route differs from it
    size_t sourcePentachora = 0;
};

/// Try the given coloring, else direct colorings, else flag subdivision
/// followed by the 2-4 moves. Throws Error(Structure) on invalid input.
TrisectRoute trisectRoute(const ColoredInput& in, const PipelineOptions& opt);

Json routeJson(const TrisectRoute& r);

struct DiagramRun {
    TrisectRoute route;
    Triangulation tri;
    Tricoloring coloring;
    QuadraDecomposition quadra;
    TrisectionSummary summary;
    std::vector<Annulus> annuli;
    QuadSurface sigma;
    std::array<std::vector<MeridianDisc>, 3> discs;
    CurveSystem raw, cleaned;
};

DiagramRun diagramRun(const ColoredInput& in, const PipelineOptions& opt);
Json diagramJson(const DiagramRun& d);
std::string diagramSvg(const DiagramRun& d);

}  // namespace trisect4
