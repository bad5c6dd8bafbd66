#include "trisect4/report.hpp"

#include "trisect4/error.hpp"

namespace trisect4 {

Json validationJson(const ValidationReport& r) {
    Json links = Json::array();
    for (const auto& l : r.links)
        links.push_back({{"vertex", l.vertexClass},
                         {"tetrahedra", l.tetrahedra},
                         {"closed", l.closed},
                         {"connected", l.connected},
                         {"orientable", l.orientable},
                         {"euler", l.euler}});
    return {{"valid", r.isValid},
            {"orientable", r.isOrientable},
            {"classCounts", r.classCounts},
            {"euler", r.eulerCharacteristic},
            {"failures", r.failures},
            {"notes", r.notes},
            {"links", links}};
}

Json infoJson(const Triangulation& tri, const ValidationReport& r) {
    return {{"pentachora", tri.size()},
            {"vertices", r.classCounts[0]},
            {"classCounts", r.classCounts},
            {"euler", r.eulerCharacteristic},
            {"orientable", r.isOrientable},
            {"valid", r.isValid}};
}

Json monochromeJson(const MonochromeGraph& g) {
    return {{"color", g.color},
            {"nodes", g.nodes.size()},
            {"edges", g.edges.size()},
            {"components", g.components},
            {"connected", g.connected},
            {"betti1", g.betti1}};
}

Json coloringJson(const Skeleton& skel, const Tricoloring& c) {
    Json graphs = Json::array();
    for (int k = 0; k < 3; ++k)
        graphs.push_back(monochromeJson(monochromaticGraph(skel, c, k)));
    return {{"coloring", c}, {"cTricoloring", isCTricoloring(skel, c)}, {"graphs", graphs}};
}

Json quadraJson(const QuadraDecomposition& q) {
    Json groups = Json::array();
    for (const auto& g : q.groups)
        groups.push_back({{"pentachora", g.pents},
                          {"commonEdge", g.commonEdge},
                          {"apexColor", g.apexColor},
                          {"origin", g.origin},
                          {"apex", g.apex},
                          {"replaced", g.replaced}});
    return {{"coversAll", q.coversAll}, {"groups", groups}};
}

QuadraDecomposition quadraFromJson(const Json& j) {
    QuadraDecomposition q;
    try {
        q.coversAll = j.at("coversAll").get<bool>();
        for (const auto& g : j.at("groups")) {
            QuadraGroup qg;
            qg.pents = g.at("pentachora").get<std::array<uint32_t, 4>>();
            qg.commonEdge = g.at("commonEdge").get<uint32_t>();
            qg.apexColor = g.at("apexColor").get<int>();
            qg.origin = g.at("origin").get<uint32_t>();
            qg.apex = g.at("apex").get<uint8_t>();
            qg.replaced = g.at("replaced").get<std::array<uint8_t, 4>>();
            q.groups.push_back(qg);
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Input, std::string("malformed quadra decomposition: ") + e.what());
    }
    return q;
}

Json summaryJson(const TrisectionSummary& s) {
    Json pieces = Json::array();
    for (size_t k = 0; k < 3; ++k)
        pieces.push_back({{"pair", kPiecePairs[k]},
                          {"genus", s.pieceGenera[k] ? Json(*s.pieceGenera[k]) : Json(nullptr)},
                          {"spineSquares", s.spineSquares[k]}});
    return {{"status", statusName(s.status)},
            {"pentachora", s.pentachora},
            {"euler", s.euler},
            {"handlebodyGenera", s.handlebodyGenera},
            {"gammaConnected", s.gammaConnected},
            {"pieces", pieces},
            {"sigma",
             {{"genus", s.sigmaGenus},
              {"components", s.sigmaComponents},
              {"componentGenera", s.sigmaComponentGenera},
              {"orientable", s.sigmaOrientable},
              {"vertices", s.sigmaVertices},
              {"edges", s.sigmaEdges}}},
            {"eulerResidual", s.eulerResidual},
            {"detail", s.detail}};
}

}  // namespace trisect4
