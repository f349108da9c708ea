#pragma once

#include "tropint/arith.hpp"
#include "tropint/errors.hpp"
#include "tropint/hnf.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tropint {

/// Minimal generators of a cone {x : ineq_i · x >= 0, eq_j · x = 0},
/// computed by the double description method. All vectors primitive integer.
struct DualDescription {
    std::vector<ZVec> rays;
    std::vector<ZVec> lineality;
};
DualDescription dual_description(const std::vector<ZVec>& ineqs, const std::vector<ZVec>& eqs,
                                 size_t dim);

/// A constraint ⟨x, normal⟩ >= offset (inequality) or = offset (equation).
struct Constraint {
    ZVec normal;
    Rat offset;
};

/// Rational polyhedron with dual descriptions, canonical after construction.
///
/// Internally the polyhedron lives as its homogenization cone in R^{n+1}:
/// coordinate 0 distinguishes vertices (positive) from rays (zero).
/// Constraint rows (a0, a) read ⟨a, x⟩ >= -a0 on the dehomogenized side.
/// Generators are reduced modulo the lineality lattice and sorted, so equal
/// point sets compare equal.
class Polyhedron {
  public:
    Polyhedron() = default;

    static Polyhedron from_h(size_t ambient_dim, const std::vector<Constraint>& inequalities,
                             const std::vector<Constraint>& equations);
    static Polyhedron from_v(size_t ambient_dim, const std::vector<QVec>& vertices,
                             const std::vector<QVec>& rays, const std::vector<QVec>& lineality);
    /// Cone at the origin spanned by the given rays and lineality.
    static Polyhedron cone_from_generators(size_t ambient_dim, const std::vector<QVec>& rays,
                                           const std::vector<QVec>& lineality = {});
    static Polyhedron empty(size_t ambient_dim);
    static Polyhedron full_space(size_t ambient_dim);
    /// Construct directly from homogeneous constraint rows (a0, a).
    static Polyhedron from_hom_constraints(size_t ambient_dim, const std::vector<ZVec>& ineq_rows,
                                           const std::vector<ZVec>& eq_rows);
    /// Construct from homogeneous generators (leading coordinate 0 or positive).
    static Polyhedron from_hom_generators(size_t ambient_dim, const std::vector<ZVec>& generators,
                                          const std::vector<ZVec>& lineality);

    size_t ambient_dim() const { return ambient_; }
    int dim() const { return dim_; }
    bool is_empty() const { return dim_ < 0; }
    /// A cone in the strict sense: the only vertex is the origin.
    bool is_cone() const;
    bool is_bounded() const;

    const std::vector<ZVec>& hom_generators() const { return gens_; }
    const std::vector<ZVec>& hom_lineality() const { return lin_; }
    const std::vector<ZVec>& hom_inequalities() const { return ineqs_; }
    const std::vector<ZVec>& hom_equations() const { return eqs_; }

    std::vector<QVec> vertices() const;
    std::vector<ZVec> rays() const;
    std::vector<ZVec> lineality() const;
    std::vector<Constraint> inequalities() const;
    std::vector<Constraint> equations() const;
    /// Integer matrix rows whose kernel is V_σ, the span of the polyhedron.
    std::vector<ZVec> equation_normals() const;
    /// Lattice basis of Λ_σ = V_σ ∩ Z^n.
    const std::vector<ZVec>& span_lattice() const { return span_lattice_; }

    bool contains(const QVec& point) const;
    bool contains_in_relint(const QVec& point) const;
    /// Vertex barycenter plus the sum of the primitive rays; deterministic.
    QVec relative_interior_point() const;

    std::vector<Polyhedron> facets() const;
    /// Is other a face of this polyhedron?
    bool has_face(const Polyhedron& other) const;

    bool operator==(const Polyhedron& o) const {
        return ambient_ == o.ambient_ && gens_ == o.gens_ && lin_ == o.lin_;
    }
    bool operator<(const Polyhedron& o) const;

  private:
    size_t ambient_ = 0;
    int dim_ = -1;
    std::vector<ZVec> gens_;  // homogeneous, canonical, sorted
    std::vector<ZVec> lin_;   // canonical lattice basis of the lineality space
    std::vector<ZVec> ineqs_;
    std::vector<ZVec> eqs_;
    std::vector<ZVec> span_lattice_;

    void finish(DualDescription gens, size_t nhom);
};

Polyhedron intersect_polyhedra(const Polyhedron& a, const Polyhedron& b);

/// All k-dimensional faces, canonical, no duplicates.
std::vector<Polyhedron> faces(const Polyhedron& p, int k);

/// All k-cells of the complex generated by the given polyhedra, deduplicated.
std::vector<Polyhedron> skeleton(const std::vector<Polyhedron>& cells, int k);

/// Maximal cones of the normal fan of a bounded polytope; cone i is the
/// closure of the linear forms maximized at vertex i.
std::vector<Polyhedron> normal_fan(const Polyhedron& polytope);

/// Cone generated by all generators of two cones (their Minkowski sum).
Polyhedron minkowski_sum_cones(const Polyhedron& a, const Polyhedron& b);

/// The cone -c.
Polyhedron negated_cone(const Polyhedron& c);

/// Cartesian product a × b (general polyhedra).
Polyhedron product_polyhedra(const Polyhedron& a, const Polyhedron& b);

}  // namespace tropint
