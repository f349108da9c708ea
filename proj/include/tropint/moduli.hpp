#pragma once

#include "tropint/cycle.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace tropint {

/// Rational n-marked tropical curve as its bounded-edge splits with lengths.
/// Splits are stored on the side not containing leaf n, sorted, with
/// 2 <= |I| <= n-2; pairwise compatibility is validated on construction.
class RationalCurve {
  public:
    RationalCurve(size_t n, std::vector<std::pair<std::vector<size_t>, Rat>> splits);

    size_t leaves() const { return n_; }
    const std::vector<std::pair<std::vector<size_t>, Rat>>& splits() const { return splits_; }
    size_t bounded_edges() const { return splits_.size(); }

    bool operator==(const RationalCurve& o) const {
        return n_ == o.n_ && splits_ == o.splits_;
    }

  private:
    size_t n_;
    std::vector<std::pair<std::vector<size_t>, Rat>> splits_;
};

/// Curve text format: "(2,3) + (2,3,4)" with an optional ": length" suffix
/// per split.
RationalCurve parse_curve(size_t n, const std::string& text);
std::string curve_to_string(const RationalCurve& c);

/// Explicit tree of a curve: internal vertices with leaf attachments, used
/// for local structure computations. branch_shadows[v] lists, for every
/// edge or leaf at vertex v, the set of leaves behind it.
struct CurveTree {
    size_t n = 0;
    size_t vertex_count = 0;
    std::vector<size_t> leaf_vertex;                       // leaf i-1 -> vertex
    std::vector<std::array<size_t, 2>> edges;              // bounded edges (split order)
    std::vector<std::vector<std::vector<size_t>>> branch_shadows;
    std::vector<size_t> valence;                           // leaves + bounded edges
};
CurveTree curve_tree(const RationalCurve& c);

/// Metric vector in R^{C(n,2)}, entries d(i,j) for i<j in lexicographic
/// order d(1,2), d(1,3), ..., d(n-1,n).
struct MetricVector {
    size_t n = 0;
    QVec d;
};

size_t pair_index(size_t n, size_t i, size_t j);  // 1-based i < j

/// d(i,j) = sum of the lengths of the splits separating i from j.
MetricVector curve_to_metric(const RationalCurve& c);

/// Tree reconstruction from a metric equivalent to a curve metric modulo
/// Im(Φ_n), Φ_n(a) = (a_i + a_j). Throws NotATreeMetric when the four-point
/// condition fails after the positivity shift.
RationalCurve metric_to_curve(const MetricVector& m);

struct FourPointResult {
    bool ok = true;
    std::array<size_t, 4> witness = {0, 0, 0, 0};  // 1-based leaves on failure
};
FourPointResult four_point_check(const MetricVector& m);

/// Moduli Prüfer sequence of order n: entries in {n+1, ..., n+d+1}, each
/// occurring at least twice; ordered means first occurrences ascend.
struct PrueferSequence {
    size_t n = 0;
    std::vector<size_t> entries;

    size_t edge_count() const { return entries.size() + 1 - n; }
    bool is_ordered() const;
    bool operator==(const PrueferSequence& o) const {
        return n == o.n && entries == o.entries;
    }
    bool operator<(const PrueferSequence& o) const { return entries < o.entries; }
};

/// Combinatorial type only; returns the ordered representative.
PrueferSequence curve_to_pruefer(const RationalCurve& c);

/// Splits from a moduli sequence (unit lengths).
RationalCurve pruefer_to_curve(const PrueferSequence& p);

/// All ordered sequences of order n and length n-3 (each label exactly
/// twice), lexicographically. The visitor form streams them.
void enumerate_m0n_cones(size_t n, const std::function<void(const PrueferSequence&)>& visit);
std::vector<PrueferSequence> enumerate_m0n_cones(size_t n);

// -- matroid coordinates --

/// Ambient dimension C(n-1,2) of the moduli fan coordinates.
size_t moduli_ambient_dim(size_t n);

/// Ray v_I in matroid coordinates: the indicator vector of the edges of
/// K_{n-1} with both ends in I (I on the side without leaf n).
ZVec split_matroid_coords(size_t n, const std::vector<size_t>& split);

/// Σ length · v_I for the curve's splits.
QVec curve_to_moduli_point(const RationalCurve& c);

/// Inverse of the coordinate map modulo the lineality: recovers the curve
/// through its metric.
RationalCurve curve_from_moduli_point(size_t n, const QVec& w);

/// The moduli fan of rational n-marked curves in R^{C(n-1,2)}: maximal cones
/// from the Prüfer enumeration, all weights 1, lineality (1,...,1).
TropicalCycle m0n(size_t n);

/// Product of Psi classes ψ_1^{k_1}···ψ_n^{k_n}·M_n: the subfan of curves
/// with val(V) = K(I_V) + 3 at every vertex, weighted by ∏K(I_V)!/∏k_i!.
/// Throws DegreeTooLarge when Σk_i > n-3.
TropicalCycle psi_product(size_t n, const std::vector<Int>& k);

/// All maximal cones of the moduli fan containing the cone of tau, carrying
/// the local restriction marker.
TropicalCycle local_m0n(const RationalCurve& tau);

/// Basis of the span of the cones containing tau: for every higher-valent
/// vertex the rays v_{I_i ∪ I_j} (i, j != 1) minus one, plus the rays of tau.
struct LocalBasis {
    std::vector<ZVec> vectors;   // in matroid coordinates
    size_t dimension = 0;        // dim V(tau) modulo the lineality
};
LocalBasis local_basis(const RationalCurve& tau);

/// Exact verification of the two local-generation identities at a vertex, in
/// metric coordinates R^{C(n,2)} with their Φ_n correction terms.
struct LemmaReport {
    bool identity_sum = false;        // Σ_{v∈W_p} v relation
    bool identity_rays = false;       // representation of every separating ray
    size_t checked_rays = 0;
};
LemmaReport lemma_relations_check(const RationalCurve& tau, size_t vertex);

}  // namespace tropint
