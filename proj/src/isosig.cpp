#include "trisect4/isosig.hpp"

#include <algorithm>
#include <vector>

#include "trisect4/error.hpp"

namespace trisect4 {

namespace {

constexpr unsigned kCharsPerPerm = 2;  // 120 permutations fit in 12 bits

char sigChar(unsigned c) {
    if (c < 26) return char('a' + c);
    if (c < 52) return char('A' + (c - 26));
    if (c < 62) return char('0' + (c - 52));
    return c == 62 ? '+' : '-';
}

int sigValue(char c) {
    if (c >= 'a' && c <= 'z') return c - 'a';
    if (c >= 'A' && c <= 'Z') return c - 'A' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '-') return 63;
    return -1;
}

void appendValue(std::string& s, size_t val, unsigned nChars) {
    for (; nChars > 0; --nChars) {
        s += sigChar(unsigned(val & 0x3F));
        val >>= 6;
    }
}

void appendTrits(std::string& s, const char* trits, size_t nTrits) {
    unsigned c = 0;
    if (nTrits >= 1) c |= unsigned(trits[0]);
    if (nTrits >= 2) c |= unsigned(trits[1]) << 2;
    if (nTrits >= 3) c |= unsigned(trits[2]) << 4;
    s += sigChar(c);
}

class Reader {
  public:
    explicit Reader(std::string_view s) : s_(s) {}
    bool done() const { return pos_ >= s_.size(); }
    size_t pos() const { return pos_; }

    size_t value(unsigned nChars) {
        size_t v = 0;
        for (unsigned i = 0; i < nChars; ++i)
            v |= size_t(next()) << (6 * i);
        return v;
    }
    unsigned next() {
        if (pos_ >= s_.size())
            throw Error(ErrorKind::Parse, "signature truncated at position " + std::to_string(pos_));
        int v = sigValue(s_[pos_]);
        if (v < 0)
            throw Error(ErrorKind::Parse, "invalid signature character at position " + std::to_string(pos_));
        ++pos_;
        return unsigned(v);
    }

  private:
    std::string_view s_;
    size_t pos_ = 0;
};

void decodeComponent(Reader& in, Triangulation& tri) {
    const size_t startPos = in.pos();
    unsigned nChars = 1;
    size_t nSimp = in.next();
    if (nSimp == 63) {
        nChars = in.next();
        if (nChars == 0 || nChars > 8)
            throw Error(ErrorKind::Parse, "invalid width marker at position " + std::to_string(startPos));
        nSimp = in.value(nChars);
    }
    const size_t base = tri.size();
    if (nSimp == 0)
        return;
    for (size_t i = 0; i < nSimp; ++i)
        tri.addPentachoron();

    // Facet actions: 0 boundary, 1 new pentachoron, 2 join to a seen one.
    std::vector<char> actions;
    size_t facetsCovered = 0, nJoins = 0;
    const size_t totalFacets = 5 * nSimp;
    while (facetsCovered < totalFacets) {
        size_t at = in.pos();
        unsigned c = in.next();
        for (int t = 0; t < 3 && facetsCovered < totalFacets; ++t) {
            unsigned trit = (c >> (2 * t)) & 3u;
            if (trit == 3)
                throw Error(ErrorKind::Parse, "invalid facet action at position " + std::to_string(at));
            actions.push_back(char(trit));
            facetsCovered += (trit == 0 ? 1 : 2);
            if (trit == 2)
                ++nJoins;
        }
        if (facetsCovered > totalFacets)
            throw Error(ErrorKind::Dimension,
                        "facet actions overrun pentachoron facets near position " + std::to_string(at));
    }
    std::vector<size_t> dest(nJoins);
    for (auto& d : dest) {
        size_t at = in.pos();
        d = in.value(nChars);
        if (d >= nSimp)
            throw Error(ErrorKind::Parse, "join destination out of range at position " + std::to_string(at));
    }
    std::vector<Perm5> gluings(nJoins);
    for (auto& g : gluings) {
        size_t at = in.pos();
        size_t idx = in.value(kCharsPerPerm);
        if (idx >= 120)
            throw Error(ErrorKind::Dimension, "permutation index out of range at position " + std::to_string(at));
        g = Perm5::fromOrderedIndex(int(idx));
    }

    size_t actionPos = 0, joinPos = 0, nextUnused = 1;
    for (size_t p = 0; p < nSimp; ++p)
        for (int f = 0; f < 5; ++f) {
            if (tri.isGlued(base + p, f))
                continue;
            if (actionPos >= actions.size())
                throw Error(ErrorKind::Parse, "signature ends before all facets are described");
            switch (actions[actionPos++]) {
                case 0:
                    break;
                case 1:
                    if (nextUnused >= nSimp)
                        throw Error(ErrorKind::Parse, "signature introduces too many pentachora");
                    tri.join(base + p, f, base + nextUnused++, Perm5::identity());
                    break;
                default: {
                    const Perm5& g = gluings[joinPos];
                    size_t q = dest[joinPos++];
                    if (q >= nextUnused || tri.isGlued(base + q, g[f]) || (q == p && g[f] == f))
                        throw Error(ErrorKind::Parse, "inconsistent join in signature at " + std::to_string(p) + ":" + std::to_string(f) + " -> " + std::to_string(q) + " " + g.str());
                    tri.join(base + p, f, base + q, g);
                }
            }
        }
    if (nextUnused != nSimp)
        throw Error(ErrorKind::Parse, "signature describes a disconnected component");
}

}  // namespace

Triangulation decodeIsoSig(std::string_view sig) {
    if (sig.empty())
        throw Error(ErrorKind::Parse, "empty signature");
    Triangulation tri;
    Reader in(sig);
    while (!in.done())
        decodeComponent(in, tri);
    return tri;
}

std::string isoSigFrom(const Triangulation& tri, size_t start, const Perm5& vertices) {
    const size_t n = tri.size();
    std::vector<long> image(n, -1), preImage(n, -1);
    std::vector<Perm5> vertexMap(n);
    std::vector<char> actions;
    std::vector<size_t> joinDest;
    std::vector<int> joinGluing;
    actions.reserve(5 * n);

    image[start] = 0;
    vertexMap[start] = vertices.inverse();
    preImage[0] = long(start);
    size_t nextUnused = 1;

    for (size_t simpImg = 0; simpImg < nextUnused; ++simpImg) {
        const size_t src = size_t(preImage[simpImg]);
        for (int facetImg = 0; facetImg < 5; ++facetImg) {
            const int facetSrc = vertexMap[src].preImageOf(facetImg);
            const auto& a = tri.adjacent(src, facetSrc);
            if (!a) {
                actions.push_back(0);
                continue;
            }
            const size_t dst = a->pent;
            if (image[dst] >= 0 &&
                (image[dst] < image[src] ||
                 (dst == src && vertexMap[src][a->facet] < vertexMap[src][facetSrc])))
                continue;  // already recorded from the other side
            if (image[dst] < 0) {
                image[dst] = long(nextUnused);
                preImage[nextUnused++] = long(dst);
                vertexMap[dst] = vertexMap[src] * a->gluing.inverse();
                actions.push_back(1);
                continue;
            }
            joinDest.push_back(size_t(image[dst]));
            joinGluing.push_back((vertexMap[dst] * a->gluing * vertexMap[src].inverse()).orderedIndex());
            actions.push_back(2);
        }
    }

    const size_t nComp = nextUnused;
    std::string out;
    unsigned nChars = 1;
    if (nComp >= 63) {
        nChars = 0;
        for (size_t tmp = nComp; tmp > 0; tmp >>= 6)
            ++nChars;
        out += sigChar(63);
        out += sigChar(nChars);
    }
    appendValue(out, nComp, nChars);
    for (size_t i = 0; i < actions.size(); i += 3)
        appendTrits(out, actions.data() + i, std::min<size_t>(3, actions.size() - i));
    for (size_t d : joinDest)
        appendValue(out, d, nChars);
    for (int g : joinGluing)
        appendValue(out, size_t(g), kCharsPerPerm);
    return out;
}

std::string encodeIsoSig(const Triangulation& tri) {
    const size_t n = tri.size();
    if (n == 0)
        return "a";
    // Component labels via BFS over the dual graph.
    std::vector<long> comp(n, -1);
    std::vector<std::vector<size_t>> members;
    for (size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0)
            continue;
        long c = long(members.size());
        members.emplace_back();
        std::vector<size_t> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            size_t p = stack.back();
            stack.pop_back();
            members[size_t(c)].push_back(p);
            for (int f = 0; f < 5; ++f)
                if (const auto& a = tri.adjacent(p, f); a && comp[a->pent] < 0) {
                    comp[a->pent] = c;
                    stack.push_back(a->pent);
                }
        }
    }
    std::vector<std::string> sigs;
    for (const auto& m : members) {
        std::string best;
        for (size_t p : m)
            for (int i = 0; i < 120; ++i) {
                std::string s = isoSigFrom(tri, p, Perm5::fromOrderedIndex(i));
                if (best.empty() || s < best)
                    best = std::move(s);
            }
        sigs.push_back(std::move(best));
    }
    std::sort(sigs.begin(), sigs.end());
    std::string out;
    for (auto& s : sigs)
        out += s;
    return out;
}

bool isIsomorphic(const Triangulation& a, const Triangulation& b) {
    return a.size() == b.size() && encodeIsoSig(a) == encodeIsoSig(b);
}

}  // namespace trisect4
