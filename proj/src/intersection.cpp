#include "tropint/intersection.hpp"

#include "tropint/hnf.hpp"
#include "tropint/linalg.hpp"
#include "tropint/util.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropint {

namespace {

enum class Position { Outside, Boundary, RelInt };

Position classify(const Polyhedron& cone, const QVec& v) {
    QVec h(cone.ambient_dim() + 1);
    h[0] = 1;
    for (size_t i = 0; i < cone.ambient_dim(); ++i) h[i + 1] = v[i];
    for (const auto& row : cone.hom_equations())
        if (dot(row, h) != 0) return Position::Outside;
    bool boundary = false;
    for (const auto& row : cone.hom_inequalities()) {
        ZVec a(row.begin() + 1, row.end());
        if (is_zero(a)) continue;
        Rat val = dot(row, h);
        if (val < 0) return Position::Outside;
        if (val == 0) boundary = true;
    }
    return boundary ? Position::Boundary : Position::RelInt;
}

// moment-curve displacement vectors give a deterministic generic direction
QVec moment_vector(size_t n, int t) {
    QVec v(n);
    Rat p = 1;
    for (size_t i = 0; i < n; ++i) {
        v[i] = p;
        p *= t;
    }
    return v;
}

const int kPrimes[] = {2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,
                       41,  43,  47,  53,  59,  61,  67,  71,  73,  79,  83,  89,
                       97,  101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151};

}  // namespace

TropicalCycle stable_intersect(const TropicalCycle& x, const TropicalCycle& y,
                               std::vector<IntersectionWitness>* witnesses) {
    const size_t n = x.ambient_dim();
    if (y.ambient_dim() != n)
        throw AmbientMismatch("stable intersection of cycles in different ambient spaces");
    if (x.is_empty() || y.is_empty()) return empty_cycle(n);
    const int d = x.dim() + y.dim() - static_cast<int>(n);
    if (d < 0) return empty_cycle(n);

    // d-skeleton of the intersection complex X ∩ Y
    std::vector<Polyhedron> pieces;
    for (size_t i = 0; i < x.complex.size(); ++i)
        for (size_t j = 0; j < y.complex.size(); ++j) {
            Polyhedron piece = intersect_polyhedra(x.complex.cell(i), y.complex.cell(j));
            if (piece.dim() >= d) pieces.push_back(std::move(piece));
        }
    std::vector<Polyhedron> cells = skeleton(pieces, d);

    std::vector<Polyhedron> out_cells;
    std::vector<Int> out_weights;
    for (const auto& sigma : cells) {
        QVec p = sigma.relative_interior_point();
        std::vector<StarCone> sx = star_at_point(x, p);
        std::vector<StarCone> sy = star_at_point(y, p);

        struct PairData {
            size_t i, j;
            Polyhedron difference;
        };
        std::vector<PairData> pairs;
        bool complete = false;
        for (size_t i = 0; i < sx.size(); ++i)
            for (size_t j = 0; j < sy.size(); ++j) {
                Polyhedron diff = minkowski_sum_cones(sx[i].cone, negated_cone(sy[j].cone));
                if (diff.dim() == static_cast<int>(n)) complete = true;
                pairs.push_back({i, j, std::move(diff)});
            }
        if (!complete) continue;

        // deterministic generic displacement: first moment vector avoiding
        // every boundary
        QVec v;
        bool found = false;
        for (int t : kPrimes) {
            v = moment_vector(n, t);
            bool ok = true;
            for (const auto& pd : pairs)
                if (classify(pd.difference, v) == Position::Boundary) ok = false;
            if (ok) {
                found = true;
                break;
            }
        }
        if (!found) throw TropError("no generic displacement vector found");

        Int weight = 0;
        IntersectionWitness wit;
        for (const auto& pd : pairs) {
            if (classify(pd.difference, v) != Position::RelInt) continue;
            const Polyhedron& r1 = sx[pd.i].cone;
            const Polyhedron& r2 = sy[pd.j].cone;
            std::vector<ZVec> sum_gens = r1.span_lattice();
            const auto& l2 = r2.span_lattice();
            sum_gens.insert(sum_gens.end(), l2.begin(), l2.end());
            std::vector<QVec> span_q;
            for (const auto& g : sum_gens) span_q.push_back(to_rational(g));
            Int idx = lattice_index(sum_gens, lattice_basis_of_span(span_q));
            Int term = sx[pd.i].weight * sy[pd.j].weight * idx;
            weight += term;
            if (witnesses) wit.pairs.push_back({r1, r2, idx, term});
        }
        if (weight == 0) continue;
        out_cells.push_back(sigma);
        out_weights.push_back(weight);
        if (witnesses) {
            wit.cell = sigma;
            wit.point = p;
            wit.displacement = primitive(v);
            witnesses->push_back(std::move(wit));
        }
    }

    TropicalCycle out;
    out.complex = PolyhedralComplex::from_cells(n, std::move(out_cells));
    out.weights = std::move(out_weights);
    return out;
}

TropicalCycle pushforward_forget_coordinates(const TropicalCycle& x, size_t target_dim) {
    const size_t n = x.ambient_dim();
    if (target_dim > n) throw AmbientMismatch("pushforward target exceeds ambient dimension");
    auto project = [&](const QVec& v) { return QVec(v.begin(), v.begin() + target_dim); };

    std::map<Polyhedron, Int> image;
    for (size_t c = 0; c < x.complex.size(); ++c) {
        const Polyhedron& cell = x.complex.cell(c);
        std::vector<QVec> verts, rays, lin;
        for (const auto& v : cell.vertices()) verts.push_back(project(v));
        for (const auto& r : cell.rays()) {
            QVec pr = project(to_rational(r));
            if (!is_zero(pr)) rays.push_back(std::move(pr));
        }
        for (const auto& l : cell.lineality()) {
            QVec pl = project(to_rational(l));
            if (!is_zero(pl)) lin.push_back(std::move(pl));
        }
        Polyhedron img = Polyhedron::from_v(target_dim, verts, rays, lin);
        if (img.dim() != cell.dim())
            throw TropError("a cell does not inject under the projection");
        // weight times the index of the projected lattice in the image lattice
        std::vector<ZVec> projected;
        for (const auto& b : cell.span_lattice()) {
            ZVec pb(b.begin(), b.begin() + target_dim);
            projected.push_back(std::move(pb));
        }
        std::vector<QVec> span_q;
        for (const auto& b : projected) span_q.push_back(to_rational(b));
        Int idx = projected.empty() ? Int(1)
                                    : lattice_index(projected, lattice_basis_of_span(span_q));
        image[img] += x.weights[c] * idx;
    }
    std::vector<Polyhedron> cells;
    std::vector<Int> weights;
    for (auto& [cell, w] : image) {
        if (w == 0) continue;
        cells.push_back(cell);
        weights.push_back(w);
    }
    TropicalCycle out;
    out.complex = PolyhedralComplex::from_cells(target_dim, std::move(cells));
    out.weights = std::move(weights);
    return out;
}

TropicalCycle diagonal_intersect(const TropicalCycle& x, const TropicalCycle& y) {
    const size_t n = x.ambient_dim();
    if (y.ambient_dim() != n)
        throw AmbientMismatch("diagonal intersection of cycles in different ambient spaces");
    if (x.is_empty() || y.is_empty()) return empty_cycle(n);
    if (x.dim() + y.dim() < static_cast<int>(n)) return empty_cycle(n);

    TropicalCycle product = cartesian_product(x, y);
    for (size_t i = 0; i < n && !product.is_empty(); ++i) {
        // ψ_i = max{x_i, y_i} on R^n × R^n
        ZVec e1(2 * n, Int(0)), e2(2 * n, Int(0));
        e1[i] = 1;
        e2[n + i] = 1;
        TropicalPolynomial psi(TropicalMode::Max, {{e1, Rat(0)}, {e2, Rat(0)}});
        product = divisor(psi, product);
    }
    if (product.is_empty()) return empty_cycle(n);
    return pushforward_forget_coordinates(product, n);
}

}  // namespace tropint
