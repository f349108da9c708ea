#include "tropint/complex.hpp"

#include "tropint/linalg.hpp"
#include "tropint/util.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropint {

PolyhedralComplex PolyhedralComplex::from_cells(size_t ambient_dim,
                                                std::vector<Polyhedron> maximal_cells) {
    PolyhedralComplex c;
    c.ambient_ = ambient_dim;
    c.store_ = std::make_shared<Store>();
    c.store_->cells.reserve(maximal_cells.size());
    std::set<Polyhedron> seen;
    for (auto& p : maximal_cells) {
        if (!seen.insert(p).second) throw TropError("duplicate maximal cell in complex");
        c.store_->cells.emplace_back(std::move(p));
    }
    return c;
}

PolyhedralComplex PolyhedralComplex::from_indexed_cells(size_t ambient_dim,
                                                        std::vector<ZVec> generators,
                                                        std::vector<ZVec> lineality,
                                                        std::vector<std::vector<size_t>> cells) {
    PolyhedralComplex c;
    c.ambient_ = ambient_dim;
    c.store_ = std::make_shared<Store>();
    c.store_->cells.resize(cells.size());
    c.store_->pool = std::move(generators);
    c.store_->pool_lineality = std::move(lineality);
    c.store_->index_cells = std::move(cells);
    return c;
}

PolyhedralComplex PolyhedralComplex::from_fan_rays(size_t ambient_dim,
                                                   const std::vector<QVec>& rays,
                                                   std::vector<std::vector<size_t>> cones,
                                                   const std::vector<QVec>& lineality) {
    std::vector<ZVec> pool;
    pool.reserve(rays.size() + 1);
    for (const auto& r : rays) {
        QVec h(ambient_dim + 1, Rat(0));
        for (size_t i = 0; i < ambient_dim; ++i) h[i + 1] = r[i];
        pool.push_back(primitive(h));
    }
    // apex vertex, shared by every cone
    ZVec apex(ambient_dim + 1, Int(0));
    apex[0] = 1;
    size_t apex_idx = pool.size();
    pool.push_back(apex);
    for (auto& cone : cones) cone.push_back(apex_idx);
    std::vector<ZVec> lin;
    for (const auto& l : lineality) {
        QVec h(ambient_dim + 1, Rat(0));
        for (size_t i = 0; i < ambient_dim; ++i) h[i + 1] = l[i];
        lin.push_back(primitive(h));
    }
    return from_indexed_cells(ambient_dim, std::move(pool), std::move(lin), std::move(cones));
}

size_t PolyhedralComplex::size() const { return store_ ? store_->cells.size() : 0; }

bool PolyhedralComplex::has_indexed_form() const {
    return store_ && !store_->index_cells.empty();
}

const Polyhedron& PolyhedralComplex::cell(size_t i) const {
    std::lock_guard<std::mutex> lock(store_->mu);
    auto& slot = store_->cells[i];
    if (!slot.has_value()) {
        std::vector<ZVec> gens;
        for (size_t g : store_->index_cells[i]) gens.push_back(store_->pool[g]);
        slot = Polyhedron::from_hom_generators(ambient_, gens, store_->pool_lineality);
    }
    return *slot;
}

int PolyhedralComplex::dim() const {
    int d = -1;
    for (size_t i = 0; i < size(); ++i) d = std::max(d, cell(i).dim());
    return d;
}

bool PolyhedralComplex::is_pure() const {
    if (size() == 0) return true;
    int d = cell(0).dim();
    for (size_t i = 1; i < size(); ++i)
        if (cell(i).dim() != d) return false;
    return true;
}

PolyhedralComplex::IndexedForm PolyhedralComplex::indexed_form() const {
    IndexedForm out;
    if (!store_) return out;
    {
        std::lock_guard<std::mutex> lock(store_->mu);
        if (!store_->index_cells.empty()) {
            out.generators = store_->pool;
            out.lineality = store_->pool_lineality;
            out.cells = store_->index_cells;
            for (auto& c : out.cells) std::sort(c.begin(), c.end());
            return out;
        }
    }
    std::map<ZVec, size_t, bool (*)(const ZVec&, const ZVec&)> pool_index(lex_less);
    std::vector<ZVec> lin;
    for (size_t i = 0; i < size(); ++i) {
        const Polyhedron& p = cell(i);
        std::vector<size_t> idx;
        for (const auto& g : p.hom_generators()) {
            auto it = pool_index.find(g);
            if (it == pool_index.end())
                it = pool_index.emplace(g, pool_index.size()).first;
            idx.push_back(it->second);
        }
        std::sort(idx.begin(), idx.end());
        out.cells.push_back(std::move(idx));
        if (i == 0) lin = p.lineality();
    }
    out.generators.resize(pool_index.size());
    for (const auto& [g, i] : pool_index) out.generators[i] = g;
    for (const auto& l : lin) {
        ZVec h(ambient_ + 1, Int(0));
        for (size_t i = 0; i < ambient_; ++i) h[i + 1] = l[i];
        out.lineality.push_back(h);
    }
    return out;
}

namespace {

// For a shared-pool complex of simplicial cones the facets are combinatorial:
// drop one ray of the cone. Dedupe by pool index set and build each distinct
// facet once. Returns false when some cell does not qualify.
bool indexed_simplicial_codim_one(const PolyhedralComplex& complex,
                                  const std::optional<Polyhedron>& local_cone,
                                  CodimOneData& out) {
    PolyhedralComplex::IndexedForm form = complex.indexed_form();
    if (form.cells.empty()) return true;
    {
        std::set<ZVec> rows;
        for (const auto& g : form.generators)
            if (!rows.insert(g).second) return false;
    }
    size_t lineality_rank = rank_of_rows(form.lineality, complex.ambient_dim() + 1);
    for (size_t i = 0; i < complex.size(); ++i) {
        const Polyhedron& cell = complex.cell(i);
        size_t nrays = 0, nverts = 0;
        for (size_t g : form.cells[i]) (form.generators[g][0] == 0 ? nrays : nverts)++;
        bool simplicial_cone =
            nverts == 1 && cell.dim() == static_cast<int>(nrays + lineality_rank);
        if (!simplicial_cone) return false;
    }
    // with a local cone, only facets containing all of its ray indices can
    // qualify; in a simplicial fan an extreme ray lies in a face iff it is
    // one of its generators
    std::vector<size_t> required;
    if (local_cone.has_value()) {
        for (const auto& g : local_cone->hom_generators()) {
            if (g[0] != 0) continue;
            size_t found = form.generators.size();
            for (size_t i = 0; i < form.generators.size(); ++i)
                if (form.generators[i] == g) {
                    found = i;
                    break;
                }
            if (found == form.generators.size()) return false;  // not pool-representable
            required.push_back(found);
        }
    }
    std::map<std::vector<size_t>, std::vector<size_t>> facet_cells;
    for (size_t i = 0; i < complex.size(); ++i) {
        for (size_t drop : form.cells[i]) {
            if (form.generators[drop][0] != 0) continue;  // keep the apex
            bool admissible = true;
            for (size_t need : required)
                if (need == drop) admissible = false;
            if (!admissible) continue;
            std::vector<size_t> subset;
            for (size_t g : form.cells[i])
                if (g != drop) subset.push_back(g);
            facet_cells[subset].push_back(i);
        }
    }
    for (auto& [subset, adjacent] : facet_cells) {
        if (!required.empty()) {
            bool has_all = true;
            for (size_t need : required)
                if (std::find(subset.begin(), subset.end(), need) == subset.end())
                    has_all = false;
            if (!has_all) continue;
        }
        std::vector<ZVec> gens;
        for (size_t g : subset) gens.push_back(form.generators[g]);
        Polyhedron facet =
            Polyhedron::from_hom_generators(complex.ambient_dim(), gens, form.lineality);
        if (local_cone.has_value() &&
            !(intersect_polyhedra(facet, *local_cone) == *local_cone))
            continue;
        out.cells.push_back(std::move(facet));
        out.adjacent_maximal.push_back(adjacent);
    }
    return true;
}

}  // namespace

CodimOneData codim_one_data(const PolyhedralComplex& complex,
                            const std::optional<Polyhedron>& local_cone) {
    CodimOneData out;
    if (complex.has_indexed_form() && indexed_simplicial_codim_one(complex, local_cone, out))
        return out;
    out = CodimOneData{};
    std::vector<std::vector<Polyhedron>> cell_facets(complex.size());
    parallel_for(complex.size(), [&](size_t i) { cell_facets[i] = complex.cell(i).facets(); });
    std::map<Polyhedron, size_t> index;
    for (size_t i = 0; i < complex.size(); ++i) {
        for (auto& f : cell_facets[i]) {
            if (local_cone.has_value()) {
                // keep only codim-one cells containing the local cone
                if (!(intersect_polyhedra(f, *local_cone) == *local_cone)) continue;
            }
            auto it = index.find(f);
            if (it == index.end()) {
                it = index.emplace(std::move(f), out.cells.size()).first;
                out.cells.push_back(it->first);
                out.adjacent_maximal.emplace_back();
            }
            out.adjacent_maximal[it->second].push_back(i);
        }
    }
    return out;
}

}  // namespace tropint
