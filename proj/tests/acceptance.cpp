// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "trisect4/construction.hpp"
#include "trisect4/diagram.hpp"
#include "trisect4/error.hpp"
#include "trisect4/isosig.hpp"
#include "trisect4/moves.hpp"
#include "trisect4/skeleton.hpp"
#include "trisect4/trisection.hpp"
#include "trisect4/validation.hpp"

using namespace trisect4;

namespace {

const char* kTA = "gLAAMQacbdcdefffcaTava4acavayaWaZa2a";
const char* kTB = "gLMPMQccdeeeffffaaaa9aaaaaaaaaaaaa9a";
const char* kTC = "gLwMQQcceeeffeffaaaaaaaaaaLaLaLaLaLa";

struct Check {
    std::vector<std::string> failures;
    std::ostringstream notes;
    void expect(bool ok, const std::string& what) {
        if (!ok)
            failures.push_back(what);
    }
};

Triangulation s4() {
    Triangulation t(2);
    for (int f = 0; f < 5; ++f)
        t.join(0, f, 1, Perm5());
    return t;
}

const Tricoloring kCS4{0, 0, 1, 1, 2};

Tricoloring firstColoring(const Triangulation& t) {
    Skeleton sk(t);
    auto cs = findTricolorings(t, sk, 1);
    if (cs.empty())
        throw std::runtime_error("no tricoloring");
    return cs[0];
}

bool allEqual(const std::array<long, 3>& a, long v) { return a[0] == v && a[1] == v && a[2] == v; }

bool allPieces(const TrisectionSummary& s, long v) {
    for (const auto& g : s.pieceGenera)
        if (!g || *g != v)
            return false;
    return true;
}

void criterion1(Check& c) {
    auto s = verifyTs(s4(), kCS4);
    c.expect(s.status == TsStatus::TsVerified, "status " + statusName(s.status));
    c.expect(s.sigmaComponents == 1 && s.sigmaGenus == 0, "sigma not a sphere");
    c.expect(allEqual(s.handlebodyGenera, 0) && allPieces(s, 0), "a handlebody genus is nonzero");
    c.expect(s.euler == 2 && s.euler == 2 + s.sigmaGenus - 0 && s.eulerResidual == 0, "Euler identity");
    c.notes << "g=" << s.sigmaGenus << " chi=" << s.euler;
}

void criterion2(Check& c) {
    auto t = decodeIsoSig(kTA);
    Skeleton sk(t);
    c.expect(t.size() == 6 && sk.count(0) == 3, "T_A size");
    auto cs = findTricolorings(t, sk, 64);
    c.expect(!cs.empty(), "no tricoloring");
    if (cs.empty())
        return;
    for (int k = 0; k < 3; ++k) {
        auto g = monochromaticGraph(sk, cs[0], k);
        c.expect(g.connected && g.betti1 == 1, "Gamma_" + std::to_string(k) + " is not a circle");
    }
    auto s = verifyTs(t, cs[0]);
    c.expect(s.sigmaComponents == 3, "components " + std::to_string(s.sigmaComponents));
    c.expect(s.sigmaComponentGenera == std::vector<int>{1, 1, 1}, "component genera");
    c.expect(s.status != TsStatus::TsVerified, "T_A verified");
    c.notes << "status " << statusName(s.status) << ", " << s.sigmaComponents << " tori";
}

void criterion3(Check& c) {
    for (auto sig : {kTB, kTC}) {
        auto t = decodeIsoSig(sig);
        Skeleton sk(t);
        c.expect(t.size() == 6 && sk.count(0) == 3, std::string(sig) + " size");
        auto s = verifyTs(t, firstColoring(t));
        c.expect(s.status == TsStatus::TsVerified, std::string(sig) + " " + statusName(s.status));
        c.expect(s.sigmaComponents == 1 && s.sigmaGenus == 1, std::string(sig) + " sigma");
        c.expect(allEqual(s.handlebodyGenera, 1) && allPieces(s, 1), std::string(sig) + " genera");
        c.expect(s.euler == 0 && s.euler == 2 + s.sigmaGenus - 3, std::string(sig) + " Euler identity");
    }
    c.notes << "both ts-verified, g=1";
}

void criterion4(Check& c) {
    auto f = flagSubdivide(s4());
    Skeleton sk(f.tri);
    c.expect(f.tri.size() == 120, "flag size " + std::to_string(f.tri.size()));
    c.expect(monochromaticGraph(sk, f.coloring, 0).connected, "Gamma_0");
    c.expect(monochromaticGraph(sk, f.coloring, 2).connected, "Gamma_2");
    c.expect(monochromaticGraph(sk, f.coloring, 1).edges.empty(), "Gamma_1 has edges");
    auto ts = makeTs(f.tri, f.coloring);
    c.expect(ts.tri.size() == 240, "make_ts size " + std::to_string(ts.tri.size()));
    auto s = verifyTs(ts.tri, ts.coloring);
    c.expect(s.status == TsStatus::TsVerified, "make_ts " + statusName(s.status));
    c.notes << "120 -> 240, g=" << s.sigmaGenus;
}

void criterion5(Check& c) {
    std::vector<std::pair<std::string, TrisectionSummary>> runs;
    runs.push_back({"S4", verifyTs(s4(), kCS4)});
    for (auto sig : {kTB, kTC}) {
        auto t = decodeIsoSig(sig);
        auto col = firstColoring(t);
        auto s = verifyTs(t, col);
        c.expect(s.sigmaGenus == 1, std::string(sig) + " genus not 1");
        runs.push_back({sig, s});
        auto m = makeTs(t, col);
        runs.push_back({std::string("make_ts ") + sig, verifyTs(m.tri, m.coloring)});
    }
    auto f = flagSubdivide(s4());
    auto ts = makeTs(f.tri, f.coloring);
    auto pipe = verifyTs(ts.tri, ts.coloring);
    c.expect(pipe.sigmaGenus <= 120, "pipeline genus " + std::to_string(pipe.sigmaGenus));
    c.expect(genusBoundCheck(pipe, 2), "pipeline bound from source");
    runs.push_back({"pipeline S4", pipe});
    for (const auto& [name, s] : runs) {
        c.expect(s.status == TsStatus::TsVerified, name + " not verified");
        c.expect(2 * size_t(s.sigmaGenus) <= s.pentachora, name + " exceeds n/2");
        c.expect(genusBoundCheck(s), name + " bound check");
    }
    c.notes << runs.size() << " verified runs, pipeline g=" << pipe.sigmaGenus << " <= 120";
}

void criterion6(Check& c) {
    std::mt19937_64 rng(2024);
    std::vector<std::pair<Triangulation, Tricoloring>> starts{{s4(), kCS4}};
    for (auto sig : {kTA, kTB, kTC}) {
        auto t = decodeIsoSig(sig);
        starts.push_back({t, firstColoring(t)});
    }
    const MoveKind forward[] = {MoveKind::P15, MoveKind::P24, MoveKind::M02};
    size_t trips = 0, preservesC = 0;
    for (int seq = 0; seq < 100; ++seq) {
        auto [t, col] = starts[size_t(seq) % starts.size()];
        const long chi = validate(t).eulerCharacteristic;
        auto inspect = [&](const ColoredMove& cm, const std::string& what) {
            auto r = validate(cm.tri);
            c.expect(r.isValid && r.isOrientable && r.eulerCharacteristic == chi, what + " broke validity");
            if (cm.classification.verdict == ColorVerdict::PreservesC) {
                ++preservesC;
                Skeleton sk(cm.tri);
                c.expect(isCTricoloring(sk, cm.coloring), what + " preserves-c refuted");
            }
        };
        for (int k = 0, len = 1 + int(rng() % 4); k < len; ++k) {
            MoveSite site{forward[rng() % 3], uint32_t(rng() % t.size()), int(rng() % 5)};
            std::optional<MoveSite> inv;
            try {
                if (classifyColorPreservation(t, col, site).verdict == ColorVerdict::NotColorable)
                    continue;
                inv = applyMove(t, site).inverse;
            } catch (const Error&) {
                continue;
            }
            if (!inv) {
                c.expect(false, moveName(site.kind) + " has no inverse");
                continue;
            }
            auto up = applyColoredMove(t, col, site, rng() % 2);
            inspect(up, moveName(site.kind));
            auto down = applyColoredMove(up.tri, up.coloring, *inv);
            inspect(down, moveName(inv->kind));
            c.expect(encodeIsoSig(down.tri) == encodeIsoSig(t), moveName(site.kind) + " round trip");
            ++trips;
            t = std::move(up.tri);
            col = std::move(up.coloring);
        }
    }
    c.expect(trips >= 100, "too few moves applied");
    c.notes << "100 sequences, " << trips << " round trips, " << preservesC << " preserves-c rechecks";
}

void criterion7(Check& c) {
    auto f = flagSubdivide(s4());
    auto ts = makeTs(f.tri, f.coloring);
    auto tri = ts.tri;
    auto col = ts.coloring;
    size_t collapses = 0;
    for (int step = 0; step < 30; ++step) {
        Skeleton sk(tri);
        std::optional<MoveResult> done;
        for (uint32_t e = 0; e < sk.count(1) && !done; ++e) {
            const auto& rep = sk.classes(1)[e].representative();
            unsigned m = faces::mask(1, rep.face);
            int a = std::countr_zero(m), b = 31 - std::countl_zero(m);
            uint32_t u = sk.classOf(0, rep.pent, a), v = sk.classOf(0, rep.pent, b);
            if (u == v || col[u] != col[v] || findBubbleSphere(sk, e).blocksCollapse())
                continue;
            try {
                done = collapseEdge(tri, e);
            } catch (const Error&) {
            }
        }
        if (!done)
            break;
        Skeleton after(done->tri);
        c.expect(after.count(0) + 1 == sk.count(0), "vertex count did not drop by one");
        Tricoloring next(after.count(0), -1);
        for (size_t p = 0; p < done->tri.size(); ++p)
            for (int v = 0; v < 5; ++v)
                if (const auto& o = done->origins[p][size_t(v)])
                    next[after.classOf(0, p, v)] = col[sk.classOf(0, o->first, o->second)];
        auto r = validate(done->tri);
        c.expect(r.isValid && r.eulerCharacteristic == 2, "collapse broke validity or chi");
        c.expect(verifyTs(done->tri, next).status == TsStatus::TsVerified, "collapse lost ts-verified");
        tri = std::move(done->tri);
        col = std::move(next);
        ++collapses;
    }
    c.expect(collapses >= 1, "no admissible collapse");
    c.notes << collapses << " collapses, " << Skeleton(ts.tri).count(0) << " -> " << Skeleton(tri).count(0)
            << " vertices";
}

void criterion8(Check& c) {
    auto run = [&](const std::string& name, const Triangulation& t, const Tricoloring& col) {
        auto ts = makeTs(t, col);
        Skeleton sk(ts.tri);
        auto s = verifyTs(ts.tri, ts.coloring);
        c.expect(s.status == TsStatus::TsVerified, name + " not verified");
        auto sigma = centralSurface(ts.tri, sk, ts.coloring);
        auto annuli = annulusDecomposition(ts.tri, sk, ts.coloring, ts.quadra);
        std::array<std::vector<MeridianDisc>, 3> discs;
        for (int f = 0; f < 3; ++f)
            discs[size_t(f)] = meridianDiscs(ts.tri, sk, ts.coloring, ts.quadra, f);
        auto raw = traceCurves(discs, annuli, sigma);
        std::set<size_t> rawTransverse, cleanTransverse;
        for (const auto& p : raw.patterns) {
            int torus = -1, core = -1, parallel = -1;
            for (int f = 0; f < 3; ++f) {
                if (p.transverseArcs[size_t(f)] > 0 && p.coreCurves[size_t(f)] == 0)
                    torus = f;
            }
            for (int f = 0; f < 3; ++f) {
                if (f == torus)
                    continue;
                if (p.coreCurves[size_t(f)] > 0 && core < 0)
                    core = f;
                else if (p.boundaryParallelArcs[size_t(f)] > 0)
                    parallel = f;
            }
            c.expect(torus >= 0 && core >= 0 && parallel >= 0, name + " annulus pattern");
            if (torus >= 0)
                rawTransverse.insert(p.transverseArcs[size_t(torus)]);
        }
        c.expect(rawTransverse.size() == 1, name + " transverse count varies");
        c.expect(raw.embedded && raw.transverse, name + " raw system not embedded");
        auto clean = cleanupParallel(raw, annuli, sigma);
        auto again = cleanupParallel(clean, annuli, sigma);
        c.expect(curveSystemJson(clean, annuli) == curveSystemJson(again, annuli), name + " cleanup not idempotent");
        c.expect(clean.embedded && clean.transverse, name + " clean system not embedded");
        for (int f = 0; f < 3; ++f) {
            c.expect(clean.families[size_t(f)].size() >= size_t(s.sigmaGenus), name + " too few curves");
            for (const auto& cv : clean.families[size_t(f)]) {
                bool closed = !cv.arcs.empty();
                for (size_t i = 0; i < cv.arcs.size() && closed; ++i) {
                    const auto& a = cv.arcs[i];
                    const auto& b = cv.arcs[(i + 1) % cv.arcs.size()];
                    closed = a.edges[1] == b.edges[0] && a.params[1] == b.params[0];
                }
                c.expect(closed, name + " open curve");
            }
        }
        for (const auto& p : clean.patterns)
            for (int f = 0; f < 3; ++f)
                if (p.transverseArcs[size_t(f)] > 0)
                    cleanTransverse.insert(p.transverseArcs[size_t(f)]);
        c.notes << name << ": " << annuli.size() << " annuli, g=" << s.sigmaGenus << ", transverse arcs per annulus raw";
        for (auto x : rawTransverse)
            c.notes << " " << x;
        c.notes << " clean";
        for (auto x : cleanTransverse)
            c.notes << " " << x;
        c.notes << ", curves " << clean.families[0].size() << "/" << clean.families[1].size() << "/"
                << clean.families[2].size() << "; ";
    };
    auto tb = decodeIsoSig(kTB);
    run("T_B", tb, firstColoring(tb));
    auto f = flagSubdivide(s4());
    run("S4 pipeline", f.tri, f.coloring);
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion9(Check& c) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("trisect4_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    {
        std::ofstream list(dir / "list.txt");
        list << kTA << "\n" << kTB << "\nnot-a-signature\n" << kTC << "\n";
    }
    const std::string cli = TRISECT4_CLI;
    const std::string d = dir.string() + "/";
    const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
        {"info --isosig " + std::string(kTA) + " --json {}info.json", {"info.json"}},
        {"color --isosig " + std::string(kTB) + " --json {}color.json --out {}color.txt", {"color.json", "color.txt"}},
        {"trisect --isosig " + std::string(kTB) + " --json {}trisect.json", {"trisect.json"}},
        {"trisect --isosig " + std::string(kTA) + " --json {}trisectA.json", {"trisectA.json"}},
        {"make-ts --isosig " + std::string(kTB) + " --find-coloring --out {}ts.tri --json {}ts.json",
         {"ts.tri", "ts.json"}},
        {"diagram --isosig " + std::string(kTB) + " --svg {}d.svg --json {}d.json", {"d.svg", "d.json"}},
        {"simplify {}ts.tri --coloring {}ts.json --log {}s.log --out {}s.tri --json {}s.json --seed 3",
         {"s.log", "s.tri", "s.json"}},
        {"batch {}list.txt --jobs 3 --out {}batch.jsonl", {"batch.jsonl"}},
    };
    size_t compared = 0;
    for (const auto& [args, outputs] : commands) {
        std::string line = args;
        for (size_t at; (at = line.find("{}")) != std::string::npos;)
            line.replace(at, 2, d);
        std::array<std::vector<std::string>, 2> runs;
        for (auto& r : runs) {
            int rc = std::system((cli + " " + line + " > /dev/null 2>&1").c_str());
            c.expect(rc == 0, "`" + args + "` exited " + std::to_string(rc));
            for (const auto& o : outputs)
                r.push_back(slurp(dir / o));
        }
        for (size_t i = 0; i < outputs.size(); ++i) {
            c.expect(!runs[0][i].empty(), outputs[i] + " is empty");
            c.expect(runs[0][i] == runs[1][i], outputs[i] + " differs between runs");
            ++compared;
        }
    }
    std::string batch = slurp(dir / "batch.jsonl");
    c.expect(std::count(batch.begin(), batch.end(), '\n') == 4, "batch line count");
    fs::remove_all(dir);
    c.notes << compared << " artifacts byte-identical across two runs";
}

void criterion10(Check& c) {
    auto t = s4();
    Skeleton sk(t);
    auto q = centralSurface(t, sk, kCS4);
    c.expect(q.vertices == 4 && q.edges == 4 && q.quads.size() == 2, "S4 sigma cells");
    c.expect(long(q.vertices) - long(q.edges) + long(q.quads.size()) == 2 && q.genus() == 0, "S4 sigma genus");

    std::set<Tricoloring> oracle;
    for (int code = 0; code < 243; ++code) {
        Tricoloring col(5);
        std::array<int, 3> n{};
        for (int v = 0, x = code; v < 5; ++v, x /= 3)
            ++n[size_t(col[size_t(v)] = x % 3)];
        std::sort(n.begin(), n.end());
        if (n != std::array<int, 3>{1, 2, 2})
            continue;
        oracle.insert(canonicalColoring(col));
    }
    std::set<Tricoloring> found;
    for (const auto& col : findTricolorings(t, sk, 1000))
        found.insert(canonicalColoring(col));
    c.expect(oracle.size() == 15, "brute force count " + std::to_string(oracle.size()));
    c.expect(found == oracle, "search differs from brute force");
    c.notes << "sigma V=4 E=4 F=2, " << found.size() << " colorings up to color permutation";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"S4 baseline", criterion1},
        {"T_A three tori", criterion2},
        {"T_B and T_C genus one", criterion3},
        {"construction counts", criterion4},
        {"genus bounds", criterion5},
        {"move algebra", criterion6},
        {"edge collapse", criterion7},
        {"diagram structure", criterion8},
        {"determinism", criterion9},
        {"oracle cross-checks", criterion10},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        bool ok = c.failures.empty();
        failed += !ok;
        std::printf("criterion %zu (%s): %s", i + 1, criteria[i].first.c_str(), ok ? "PASS" : "FAIL");
        if (ok)
            std::printf("  [%s]\n", c.notes.str().c_str());
        else
            for (const auto& f : c.failures)
                std::printf("\n    %s", f.c_str());
        if (!ok)
            std::printf("\n");
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
