#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "trisect4/construction.hpp"
#include "trisect4/trisection.hpp"

namespace trisect4 {

using Fraction = boost::rational<int64_t>;

/// Sigma restricted to one quadra group: four squares in cyclic order.
struct Annulus {
    uint32_t group = 0;
    int apexColor = 0;
    uint8_t apex = 0;                          // local vertex of the first apex in every square
    std::array<uint8_t, 4> swapped{};          // local vertex of the second apex, per square
    std::array<uint32_t, 4> squares{};         // pentachora, cyclic order
    std::array<uint32_t, 4> internalEdges{};   // facet class between squares k and k+1
    std::array<uint32_t, 8> boundaryEdges{};   // facet classes on the annulus boundary
};

/// Throws Error(Structure) unless the groups cover every pentachoron and
/// each group's squares close up into a cycle.
std::vector<Annulus> annulusDecomposition(const Triangulation& tri, const Skeleton& skel, const Tricoloring& c,
                                          const QuadraDecomposition& q);

/// Family index f handles the piece between colors kPiecePairs[f].
/// Marks on subdivided spine 1-cubes (from the end towards the midpoint) and
/// on the internal edge of each "H".
Fraction spineMark(int family);
Fraction crossbarMark(int family);

/// The spine element a meridian disc is dual to.
struct DualElement {
    enum class Kind { Segment, Crossbar } kind = Kind::Segment;
    uint32_t cell = 0;  // triangle class for segments, group for crossbars
    int half = 0;       // which half of a subdivided segment
    friend auto operator<=>(const DualElement&, const DualElement&) = default;
};

struct NormalPiece {
    enum class Kind { Triangle, Square } kind = Kind::Triangle;
    enum class Block { TorusPrism, BallPrism, Cube } block = Block::TorusPrism;
    uint32_t pent = 0;
    DualElement dual;
    Fraction mark;  // where the piece meets its spine element
};

/// A piece's trace on a Sigma square: a polyline in quad coordinates
/// (x towards pairI[1], y towards pairJ[1]) from one side to another.
struct NormalArc {
    uint32_t square = 0;
    std::vector<std::array<Fraction, 2>> path;
    std::array<uint8_t, 2> sides{};    // quad sides of the two endpoints
    std::array<uint32_t, 2> edges{};   // facet classes of those sides
    std::array<Fraction, 2> params{};  // canonical positions along those edges
};

struct MeridianDisc {
    int family = 0;
    DualElement dual;
    Fraction mark;
    std::vector<NormalPiece> pieces;
    std::vector<NormalArc> boundary;  // one closed curve, in order
};

/// All meridian discs of one family. Throws Error(Structure) on branching
/// and Error(Tracing) when a boundary does not close up.
std::vector<MeridianDisc> meridianDiscs(const Triangulation& tri, const Skeleton& skel, const Tricoloring& c,
                                        const QuadraDecomposition& q, int family);

struct Curve {
    int family = 0;
    std::vector<NormalArc> arcs;
    std::optional<DualElement> dual;
};

struct AnnulusPattern {
    uint32_t group = 0;
    std::array<size_t, 3> coreCurves{};
    std::array<size_t, 3> boundaryParallelArcs{};
    std::array<size_t, 3> transverseArcs{};
};

struct CurveSystem {
    std::array<std::vector<Curve>, 3> families;
    std::array<std::array<long, 3>, 3> intersections{};  // transverse crossings between families
    std::vector<AnnulusPattern> patterns;
    bool embedded = true;    // no two curves of one family meet
    bool transverse = true;  // curves of different families only cross
};

std::string curveSystemJson(const CurveSystem& cs, const std::vector<Annulus>& annuli);

CurveSystem traceCurves(const std::array<std::vector<MeridianDisc>, 3>& discs, const std::vector<Annulus>& annuli,
                        const QuadSurface& sigma);

/// Keep one curve per class of curves of a family that run through the
/// same cyclic sequence of squares and sides.
CurveSystem cleanupParallel(const CurveSystem& cs, const std::vector<Annulus>& annuli, const QuadSurface& sigma);

/// Recount crossings between families and the per-annulus pattern.
void recountCurveSystem(CurveSystem& cs, const std::vector<Annulus>& annuli, const QuadSurface& sigma);

struct DiagramLegend {
    int sigmaGenus = 0;
    std::array<long, 3> handlebodyGenera{};
    std::string title;
};

std::string renderSvg(const CurveSystem& cs, const QuadSurface& sigma, const std::vector<Annulus>& annuli,
                      const DiagramLegend& legend);

}  // namespace trisect4
