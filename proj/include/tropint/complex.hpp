#pragma once

#include "tropint/polyhedron.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace tropint {

/// A pure rational polyhedral complex, identified with its list of maximal
/// cells. Cells may be stored directly or as index sets into a shared pool of
/// homogeneous generators; in the latter case Polyhedron values are built on
/// first access and cached (moduli fans have thousands of cones and most uses
/// never touch the polyhedral side).
class PolyhedralComplex {
  public:
    PolyhedralComplex() = default;

    static PolyhedralComplex from_cells(size_t ambient_dim, std::vector<Polyhedron> maximal_cells);

    /// Cells as index lists into a pool of homogeneous generator rows
    /// (leading coordinate 0 for rays, positive for vertices); lineality is
    /// shared by every cell.
    static PolyhedralComplex from_indexed_cells(size_t ambient_dim, std::vector<ZVec> generators,
                                                std::vector<ZVec> lineality,
                                                std::vector<std::vector<size_t>> cells);

    /// Fan from rays (dehomogenized directions); the apex vertex is implied.
    static PolyhedralComplex from_fan_rays(size_t ambient_dim, const std::vector<QVec>& rays,
                                           std::vector<std::vector<size_t>> cones,
                                           const std::vector<QVec>& lineality = {});

    size_t ambient_dim() const { return ambient_; }
    size_t size() const;
    const Polyhedron& cell(size_t i) const;

    int dim() const;
    bool is_pure() const;

    /// Shared pool form for serialization: homogeneous generator rows,
    /// lineality rows and per-cell sorted index lists. Built from the cells
    /// if the complex was not constructed in indexed form.
    struct IndexedForm {
        std::vector<ZVec> generators;
        std::vector<ZVec> lineality;
        std::vector<std::vector<size_t>> cells;
    };
    IndexedForm indexed_form() const;

    /// Was this complex constructed over a shared generator pool?
    bool has_indexed_form() const;

  private:
    size_t ambient_ = 0;

    struct Store {
        std::vector<std::optional<Polyhedron>> cells;
        std::vector<ZVec> pool;
        std::vector<ZVec> pool_lineality;
        std::vector<std::vector<size_t>> index_cells;
        mutable std::mutex mu;
    };
    std::shared_ptr<Store> store_;
};

/// Codimension-one cells of a complex with their adjacent maximal cells.
struct CodimOneData {
    std::vector<Polyhedron> cells;
    std::vector<std::vector<size_t>> adjacent_maximal;
};

/// Incidence by facet enumeration and canonical-form deduplication. When
/// local_cone is given, only codimension-one cells containing it are kept.
CodimOneData codim_one_data(const PolyhedralComplex& complex,
                            const std::optional<Polyhedron>& local_cone = std::nullopt);

}  // namespace tropint
