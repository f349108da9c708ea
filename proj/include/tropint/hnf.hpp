#pragma once

#include "tropint/arith.hpp"
#include "tropint/errors.hpp"
#include "tropint/linalg.hpp"

#include <vector>

namespace tropint {

/// Result of a Hermite normal form computation: hnf = input * transform,
/// with transform unimodular and hnf of the shape (0 | T), T upper triangular
/// with positive diagonal and row entries right of the diagonal reduced
/// modulo it. For rank-deficient input the triangular block covers rank(m)
/// rows and all remaining columns of hnf are zero.
struct HnfResult {
    ZMat hnf;
    ZMat transform;
    /// Column indices of the pivot columns, one per pivoted row (top to bottom).
    std::vector<size_t> pivot_cols;
    /// Row indices carrying a pivot, in pivot-column order.
    std::vector<size_t> pivot_rows;

    size_t rank() const { return pivot_cols.size(); }
};

/// Column-operation Hermite normal form. Deterministic; exact.
HnfResult hnf(const ZMat& m);

/// Lattice basis of ker(m) ∩ Z^cols: the columns of the HNF transform over
/// the zero columns of the normal form. Empty list for a trivial kernel.
std::vector<ZVec> kernel_lattice_basis(const ZMat& m);

/// Lattice basis of (R-span of the input) ∩ Z^n. Saturates the generated
/// lattice; result is HNF-canonical.
std::vector<ZVec> lattice_basis_of_span(const std::vector<ZVec>& vectors);
std::vector<ZVec> lattice_basis_of_span(const std::vector<QVec>& vectors);

/// Index [B : A] of the lattice generated by generators_a inside the lattice
/// generated by generators_b. Both must span the same rational vector space
/// (else SpanMismatch) and A must be a sublattice of B.
Int lattice_index(const std::vector<ZVec>& generators_a, const std::vector<ZVec>& generators_b);

/// Canonical basis of the lattice *generated* by the given vectors (no
/// saturation): nonzero columns of the column-style HNF.
std::vector<ZVec> lattice_basis_of_generated(const std::vector<ZVec>& vectors, size_t dim);

}  // namespace tropint
