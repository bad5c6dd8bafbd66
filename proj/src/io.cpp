#include "trisect4/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "trisect4/error.hpp"

namespace trisect4 {

namespace {

std::string_view trim(std::string_view s) {
    auto hash = s.find('#');
    if (hash != std::string_view::npos)
        s = s.substr(0, hash);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

Perm5 parsePerm(std::string_view digits, const std::string& where) {
    if (digits.size() != 5)
        throw Error(ErrorKind::Parse, where + ": permutation must have five digits");
    std::array<uint8_t, 5> img{};
    for (size_t i = 0; i < 5; ++i) {
        if (digits[i] < '0' || digits[i] > '4')
            throw Error(ErrorKind::Parse, where + ": permutation digit out of range");
        img[i] = uint8_t(digits[i] - '0');
    }
    Perm5 p(img);
    if (!p.isValid())
        throw Error(ErrorKind::Parse, where + ": not a permutation");
    return p;
}

void place(Triangulation& tri, long p, long f, long q, long g, const Perm5& perm, const std::string& where) {
    const long n = long(tri.size());
    if (p < 0 || p >= n || q < 0 || q >= n)
        throw Error(ErrorKind::Parse, where + ": pentachoron index out of range");
    if (f < 0 || f > 4 || g < 0 || g > 4)
        throw Error(ErrorKind::Parse, where + ": facet index out of range");
    if (tri.isGlued(size_t(p), int(f)))
        throw Error(ErrorKind::Parse, where + ": facet slot listed twice");
    if (perm[int(f)] != g)
        throw Error(ErrorKind::Parse, where + ": permutation does not map facet to facet");
    tri.setRaw(size_t(p), int(f), Adjacency{uint32_t(q), uint8_t(g), perm});
}

}  // namespace

Triangulation parseGluingText(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    size_t lineNo = 0;
    bool haveHeader = false;
    Triangulation tri;
    while (std::getline(in, raw)) {
        ++lineNo;
        std::string_view line = trim(raw);
        if (line.empty())
            continue;
        const std::string where = "line " + std::to_string(lineNo);
        std::istringstream ls{std::string(line)};
        if (!haveHeader) {
            std::string word;
            long n = -1;
            if (!(ls >> word >> n) || word != "pentachora" || n < 0)
                throw Error(ErrorKind::Parse, where + ": expected header `pentachora <n>`");
            tri = Triangulation(size_t(n));
            haveHeader = true;
            continue;
        }
        long p, f, q, g;
        std::string arrow, colon, digits;
        if (!(ls >> p >> f >> arrow >> q >> g >> colon >> digits) || arrow != "->" || colon != ":")
            throw Error(ErrorKind::Parse, where + ": expected `p f -> p' f' : i0i1i2i3i4`");
        std::string rest;
        if (ls >> rest)
            throw Error(ErrorKind::Parse, where + ": trailing characters");
        place(tri, p, f, q, g, parsePerm(digits, where), where);
    }
    if (!haveHeader)
        throw Error(ErrorKind::Parse, "missing header `pentachora <n>`");
    return tri;
}

std::string formatGluingText(const Triangulation& tri) {
    std::ostringstream out;
    out << "pentachora " << tri.size() << '\n';
    for (size_t p = 0; p < tri.size(); ++p)
        for (int f = 0; f < 5; ++f)
            if (const auto& a = tri.adjacent(p, f))
                out << p << ' ' << f << " -> " << a->pent << ' ' << int(a->facet) << " : " << a->gluing.str() << '\n';
    return out.str();
}

Triangulation parseGluingJson(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
    }
    try {
        long n = j.at("pentachora").get<long>();
        if (n < 0)
            throw Error(ErrorKind::Parse, "negative pentachoron count");
        Triangulation tri{size_t(n)};
        size_t k = 0;
        for (const auto& g : j.at("gluings")) {
            const std::string where = "gluing " + std::to_string(k++);
            place(tri, g.at("p").get<long>(), g.at("f").get<long>(), g.at("q").get<long>(), g.at("g").get<long>(),
                  parsePerm(g.at("perm").get<std::string>(), where), where);
        }
        return tri;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("malformed gluing JSON: ") + e.what());
    }
}

std::string formatGluingJson(const Triangulation& tri) {
    nlohmann::json gl = nlohmann::json::array();
    for (size_t p = 0; p < tri.size(); ++p)
        for (int f = 0; f < 5; ++f)
            if (const auto& a = tri.adjacent(p, f))
                gl.push_back({{"p", p}, {"f", f}, {"q", a->pent}, {"g", a->facet}, {"perm", a->gluing.str()}});
    nlohmann::ordered_json j;
    j["pentachora"] = tri.size();
    j["gluings"] = gl;
    return j.dump(2) + "\n";
}

Triangulation parseGluingAuto(std::string_view text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)))
            continue;
        return c == '{' ? parseGluingJson(text) : parseGluingText(text);
    }
    throw Error(ErrorKind::Parse, "empty input");
}

std::vector<int> parseColoringText(std::string_view text, size_t vertexClasses) {
    std::vector<int> colors(vertexClasses, -1);
    std::istringstream in{std::string(text)};
    std::string raw;
    size_t lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        std::string_view line = trim(raw);
        if (line.empty())
            continue;
        const std::string where = "coloring line " + std::to_string(lineNo);
        std::istringstream ls{std::string(line)};
        long v, c;
        std::string rest;
        if (!(ls >> v >> c) || (ls >> rest))
            throw Error(ErrorKind::Parse, where + ": expected `vclass_id color`");
        if (v < 0 || size_t(v) >= vertexClasses)
            throw Error(ErrorKind::Input, where + ": no vertex class " + std::to_string(v));
        if (c < 0 || c > 2)
            throw Error(ErrorKind::Input, where + ": color must be 0, 1 or 2");
        if (colors[size_t(v)] != -1)
            throw Error(ErrorKind::Input, where + ": vertex class colored twice");
        colors[size_t(v)] = int(c);
    }
    return colors;
}

std::string formatColoringText(const std::vector<int>& colors) {
    std::ostringstream out;
    for (size_t v = 0; v < colors.size(); ++v)
        out << v << ' ' << colors[v] << '\n';
    return out.str();
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Input, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace trisect4
