#pragma once

#include "tropint/cycle.hpp"
#include "tropint/function.hpp"
#include "tropint/matroid.hpp"

#include <iosfwd>
#include <string>

namespace tropint {

/// Interchange format for cycles and complexes: a JSON document with fields
/// ambient_dim, rays (homogeneous rational row vectors, entries "p/q" in
/// lowest terms), lineality, maximal_cells (sorted 0-based index lists),
/// weights aligned with maximal_cells, and an optional local_cone index
/// list. Rationals are bit-exact.
std::string write_cycle(const TropicalCycle& x);
TropicalCycle read_cycle(const std::string& text);

/// Cycle format plus vertex_values and ray_slopes arrays; ray_slopes lists
/// the ray-type rows in pool order followed by the lineality rows.
std::string write_function(const RationalFunctionOnCycle& f);
RationalFunctionOnCycle read_function(const std::string& text);

/// Matroid file: n, rank and sorted basis index lists, or a rational matrix
/// block for column matroids.
std::string write_matroid(const Matroid& m);
Matroid read_matroid(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace tropint
