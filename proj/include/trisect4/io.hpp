#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "trisect4/triangulation.hpp"

namespace trisect4 {

// Gluing table text format:
//
//   # comment
//   pentachora 2
//   0 0 -> 1 0 : 01234
//
// One line per facet slot; the five digits are the images of 0..4. Unlisted
// slots stay unglued so that validate() can report them.
Triangulation parseGluingText(std::string_view text);
std::string formatGluingText(const Triangulation& tri);

// JSON equivalent: {"pentachora": n, "gluings": [{"p","f","q","g","perm"}]}.
Triangulation parseGluingJson(std::string_view text);
std::string formatGluingJson(const Triangulation& tri);

/// Picks the JSON or text parser from the first non-blank character.
Triangulation parseGluingAuto(std::string_view text);

// Coloring files: one `vclass_id color` pair per line, `#` comments.
std::vector<int> parseColoringText(std::string_view text, size_t vertexClasses);
std::string formatColoringText(const std::vector<int>& colors);

std::string readFile(const std::string& path);

}  // namespace trisect4
