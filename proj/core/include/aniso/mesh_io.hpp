#pragma once

// Plain-text forest format:
//
//   aniso-mesh v1
//   v <x> <y>                 one per distinct vertex, 17 significant digits
//   t <i> <j> <k> <parent>    one per node in id order; parent -1 for roots
//   leaf <n>                  one per leaf node
//
// Blank lines and lines starting with '#' are ignored on input.

#include <iosfwd>
#include <string>

#include "aniso/forest.hpp"

namespace aniso {

inline constexpr const char* kMeshHeader = "aniso-mesh v1";

/// Shortest-round-trip is not required; always 17 significant digits.
std::string format_double(double v);

void write_mesh(const RefinementForest& forest, std::ostream& out);
std::string mesh_to_string(const RefinementForest& forest);

/// Throws ParseError with the offending line number. Cached errors are zero.
RefinementForest read_mesh(std::istream& in);
RefinementForest mesh_from_string(const std::string& text);

}  // namespace aniso
