#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "trisect4/triangulation.hpp"
#include "trisect4/coloring.hpp"

namespace fixtures {

inline constexpr const char* kTA = "gLAAMQacbdcdefffcaTava4acavayaWaZa2a";
inline constexpr const char* kTB = "gLMPMQccdeeeffffaaaa9aaaaaaaaaaaaa9a";
inline constexpr const char* kTC = "gLwMQQcceeeffeffaaaaaaaaaaLaLaLaLaLa";
inline constexpr const char* kTD = "cMkabbb2aHaua2a";

// Two pentachora glued along all five facets by the identity.
inline trisect4::Triangulation s4() {
    trisect4::Triangulation t(2);
    for (int f = 0; f < 5; ++f)
        t.join(0, f, 1, trisect4::Perm5());
    return t;
}

inline trisect4::Tricoloring s4Coloring() { return {0, 0, 1, 1, 2}; }

inline trisect4::Perm5 randomPerm(std::mt19937_64& rng) {
    std::array<uint8_t, 5> a{0, 1, 2, 3, 4};
    std::shuffle(a.begin(), a.end(), rng);
    return trisect4::Perm5(a);
}

inline trisect4::Triangulation randomRelabel(const trisect4::Triangulation& t, std::mt19937_64& rng) {
    std::vector<uint32_t> order(t.size());
    std::iota(order.begin(), order.end(), 0u);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<trisect4::Perm5> maps;
    for (size_t i = 0; i < t.size(); ++i)
        maps.push_back(randomPerm(rng));
    return t.relabelled(order, maps);
}

}  // namespace fixtures
