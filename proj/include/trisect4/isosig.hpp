#pragma once

#include <string>
#include <string_view>

#include "trisect4/triangulation.hpp"

namespace trisect4 {

/// Decode a dimension-4 isomorphism signature. Throws Error(Parse) with the
/// offending character position on malformed input, and Error(Dimension) when
/// the string is well-formed base-64 but cannot be a 4-dimensional signature.
Triangulation decodeIsoSig(std::string_view sig);

/// Canonical signature: for each connected component the lexicographically
/// smallest encoding over all starting pentachora and vertex labellings;
/// component signatures are sorted and concatenated.
std::string encodeIsoSig(const Triangulation& tri);

/// Encoding of the component containing `start`, where canonical vertex i of
/// the starting pentachoron is its original vertex vertices[i].
std::string isoSigFrom(const Triangulation& tri, size_t start, const Perm5& vertices);

bool isIsomorphic(const Triangulation& a, const Triangulation& b);

}  // namespace trisect4
