#pragma once

#include "tropint/cycle.hpp"
#include "tropint/function.hpp"

#include <vector>

namespace tropint {

/// Record of how the weight of one intersection cell was computed: the
/// relative-interior base point, the generic displacement vector, and the
/// contributing star-cone pairs with the displacement in rel int(ρ1 − ρ2).
struct IntersectionWitness {
    Polyhedron cell;
    QVec point;
    ZVec displacement;
    struct Pair {
        Polyhedron rho1;
        Polyhedron rho2;
        Int lattice_index_value;
        Int term;
    };
    std::vector<Pair> pairs;
};

/// Stable intersection in R^n by the local Minkowski criterion: a cell of the
/// (dim x + dim y - n)-skeleton of X∩Y survives iff some ρ1 - ρ2 of star
/// cones is full-dimensional; weights are Σ ω(ρ1)ω(ρ2)·((Λ_ρ1+Λ_ρ2):Λ_ρ1+ρ2)
/// over pairs whose Minkowski difference contains the generic displacement in
/// its relative interior. Returns the empty cycle when dim x + dim y < n.
TropicalCycle stable_intersect(const TropicalCycle& x, const TropicalCycle& y,
                               std::vector<IntersectionWitness>* witnesses = nullptr);

/// Intersection via the diagonal: cuts X × Y with the n functions
/// max{x_i, y_i} and forgets the last n coordinates. Serves as the
/// correctness oracle for stable_intersect.
TropicalCycle diagonal_intersect(const TropicalCycle& x, const TropicalCycle& y);

/// Forget the last (ambient - target_dim) coordinates; weights transported
/// with the lattice index of the projection on each cell. Every maximal cell
/// must inject.
TropicalCycle pushforward_forget_coordinates(const TropicalCycle& x, size_t target_dim);

}  // namespace tropint
