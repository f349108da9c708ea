#pragma once

#include "tropint/complex.hpp"

#include <optional>
#include <vector>

namespace tropint {

/// Weighted pure polyhedral complex. Balancing is checkable, not enforced.
/// The optional local cone restricts balancing checks to codimension-one
/// cells containing it.
struct TropicalCycle {
    PolyhedralComplex complex;
    std::vector<Int> weights;
    std::optional<Polyhedron> local_cone;

    size_t ambient_dim() const { return complex.ambient_dim(); }
    int dim() const { return complex.dim(); }
    bool is_empty() const { return complex.size() == 0; }
};

/// R^n with weight 1.
TropicalCycle unit_cycle(size_t n);

TropicalCycle empty_cycle(size_t n);

/// Drop zero-weight maximal cells.
TropicalCycle normalized(const TropicalCycle& x);

/// Primitive generator of Λ_σ/Λ_τ positive on σ, with lattice bases of both
/// cells from the same unimodular transform.
struct LatticeNormal {
    ZVec vector;
    std::vector<ZVec> tau_lattice_basis;
    std::vector<ZVec> sigma_lattice_basis;
};

/// u_{σ/τ} for a codimension-one face τ of σ, via the Hermite normal form of
/// the equation matrix of τ. Throws NotAFace if τ is not a facet of σ.
LatticeNormal lattice_normal(const Polyhedron& tau, const Polyhedron& sigma);

struct BalanceReport {
    bool balanced = true;
    /// Codimension-one cells violating the balancing condition.
    std::vector<Polyhedron> offending;
};

BalanceReport balancing_report(const TropicalCycle& x);
bool is_balanced(const TropicalCycle& x);

/// Star fan of the cycle around the cell tau, kept in ambient coordinates
/// with V_tau appended to the lineality space.
TropicalCycle star(const TropicalCycle& x, const Polyhedron& tau);

/// Maximal cones of the star of x at a point, with their weights.
struct StarCone {
    Polyhedron cone;
    Int weight;
};
std::vector<StarCone> star_at_point(const TropicalCycle& x, const QVec& p);

TropicalCycle cartesian_product(const TropicalCycle& x, const TropicalCycle& y);

/// Pieces σ∩σ' of full dimension together with the maximal cell of x that
/// contains each piece.
struct Refinement {
    PolyhedralComplex complex;
    std::vector<size_t> parent;  // index of the containing maximal cell of x
};
Refinement common_refinement(const PolyhedralComplex& x, const PolyhedralComplex& y);

/// Refine the cycle's complex by another complex, transferring weights to the
/// pieces. Requires |x| ⊆ |y| for completeness of the cover.
TropicalCycle refine_cycle(const TropicalCycle& x, const PolyhedralComplex& y);

PolyhedralComplex k_skeleton(const TropicalCycle& x, int k);

/// Does the union of the pieces cover the whole cell? Pieces must be
/// full-dimensional sub-polyhedra of the cell.
bool support_covers(const Polyhedron& cell, const std::vector<Polyhedron>& pieces);

/// Is the point in the support of the cycle?
bool in_support(const TropicalCycle& x, const QVec& point);

/// Cycle equality: equal supports and weights agreeing on the common
/// refinement.
bool equal_cycles(const TropicalCycle& a, const TropicalCycle& b);

/// Space of weight vectors making the complex balanced.
struct WeightSpace {
    size_t dimension = 0;
    std::vector<QVec> basis;
    std::vector<ZVec> lattice_basis;
};
WeightSpace weight_space(const TropicalCycle& x);

bool is_irreducible(const TropicalCycle& x);

/// V_X intersected with the nonnegative orthant, as a cone in R^N.
Polyhedron weight_cone(const TropicalCycle& x);

}  // namespace tropint
