#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sawlab/graph.hpp"

namespace sawlab {

/// Curated models with exact normal forms:
///
///   zd<d>            Z^d, coordinate vectors
///   dihedral         D_inf on the line Z (H = all shifts)
///   dihedral_line    the same line as a periodic cover with H = even shifts
///   tree3            Z * Z_2, reduced words
///   heisenberg       unitriangular coordinates (a, b, c)
///   lamplighter      (marker, sorted lamp positions)
///   hexagonal        periodic cover, 2 orbits
///   square_octagon   periodic cover, 4 orbits
///   cylinder<m>      Z x C_m, m >= 3
///   ladder<m>        D_inf x J_m, m >= 3
///   grandparent      3-regular tree with a fixed end plus grandparent edges
///   pg:<preset>      any shipped periodic graph document
///
/// Throws InputError on unknown names or bad parameters.
OraclePtr model(std::string_view id);

/// Parameterised lookup: catalog("zd", 2), catalog("cylinder_zd", 8),
/// catalog("ladder_dihedral", 5); parameterless presets ignore `param`.
OraclePtr catalog(std::string_view name, std::optional<long> param = std::nullopt);

std::vector<std::string> model_names();

/// Height of a grandparent-model vertex towards the fixed end.
std::int64_t grandparent_level(const Vertex& v);

/// Name of the presentation preset whose generators label this model's edges.
std::optional<std::string> presentation_for_model(std::string_view id);

}  // namespace sawlab
