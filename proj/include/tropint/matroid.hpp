#pragma once

#include "tropint/cycle.hpp"
#include "tropint/linalg.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tropint {

/// Matroid on ground set {0..n-1} presented by its bases (stored as
/// bitmasks). The basis-exchange axiom is verified on construction for
/// ground sizes up to 12; larger matroids carry exchange_verified() = false.
class Matroid {
  public:
    static Matroid from_bases(size_t ground_size, const std::vector<std::vector<size_t>>& bases);
    /// Column matroid of a rational matrix; the realization is kept for
    /// linear-algebra fundamental circuits.
    static Matroid from_matrix(const QMat& m);
    static Matroid uniform(size_t rank, size_t ground_size);

    size_t ground_size() const { return n_; }
    size_t rank() const { return rank_; }
    const std::vector<std::uint32_t>& basis_masks() const { return bases_; }
    std::vector<std::vector<size_t>> bases() const;
    const std::optional<QMat>& realization() const { return realization_; }
    bool exchange_verified() const { return exchange_verified_; }

    bool is_basis(std::uint32_t mask) const;
    /// Independent = contained in some basis.
    bool is_independent(std::uint32_t mask) const;
    bool has_loops() const;

    /// All minimal dependent sets, sorted.
    std::vector<std::vector<size_t>> circuits() const;

    /// C(e, I) = {e} ∪ {i ∈ I : (I \ {i}) ∪ {e} independent}. For realized
    /// matroids computed by solving e as a combination of I's columns.
    /// Throws NotDependent when I ∪ {e} is independent.
    std::vector<size_t> fundamental_circuit(const std::vector<size_t>& independent_set,
                                            size_t e) const;

  private:
    size_t n_ = 0;
    size_t rank_ = 0;
    std::vector<std::uint32_t> bases_;  // sorted
    std::optional<QMat> realization_;
    bool exchange_verified_ = false;
};

/// Matroid of the complete graph K_k; ground set = edges in lexicographic
/// order (0,1),(0,2),...,(1,2),... — this fixes the coordinate convention
/// for the moduli of rational curves.
Matroid complete_graph_matroid(size_t k);

/// Convex hull of the basis incidence vectors.
Polyhedron matroid_polytope(const Matroid& m);

/// Membership test straight from the circuit definition: the minimum of w
/// over every circuit is attained at least twice.
bool bergman_membership_by_circuits(const Matroid& m, const QVec& w,
                                    const std::vector<std::vector<size_t>>& circuits);

/// Bergman fan of a loop-free matroid: dimension rank(M), all weights 1,
/// lineality containing (1,...,1), balanced.
struct BergmanFan {
    TropicalCycle cycle;
};

/// Circuit-driven computation: enumerates the partitions of the ground set
/// into rank many classes whose transversals are all bases; each valid
/// partition spans one maximal cone.
BergmanFan bergman_fan_rincon(const Matroid& m);

/// Oracle method: rank-skeleton of the normal fan of the matroid polytope,
/// keeping the cones whose face's bases cover the ground set.
BergmanFan bergman_fan_normal(const Matroid& m);

}  // namespace tropint
