#include "tropint/cycle.hpp"

#include "tropint/hnf.hpp"
#include "tropint/linalg.hpp"
#include "tropint/util.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace tropint {

TropicalCycle unit_cycle(size_t n) {
    TropicalCycle x;
    x.complex = PolyhedralComplex::from_cells(n, {Polyhedron::full_space(n)});
    x.weights = {Int(1)};
    return x;
}

TropicalCycle empty_cycle(size_t n) {
    TropicalCycle x;
    x.complex = PolyhedralComplex::from_cells(n, {});
    return x;
}

TropicalCycle normalized(const TropicalCycle& x) {
    bool has_zero = false;
    for (const auto& w : x.weights)
        if (w == 0) has_zero = true;
    if (!has_zero) return x;
    std::vector<Polyhedron> cells;
    std::vector<Int> weights;
    for (size_t i = 0; i < x.complex.size(); ++i) {
        if (x.weights[i] == 0) continue;
        cells.push_back(x.complex.cell(i));
        weights.push_back(x.weights[i]);
    }
    TropicalCycle out;
    out.complex = PolyhedralComplex::from_cells(x.ambient_dim(), std::move(cells));
    out.weights = std::move(weights);
    out.local_cone = x.local_cone;
    return out;
}

LatticeNormal lattice_normal(const Polyhedron& tau, const Polyhedron& sigma) {
    if (tau.dim() != sigma.dim() - 1 || !sigma.has_face(tau))
        throw NotAFace("tau is not a codimension-one face of sigma");
    const size_t n = sigma.ambient_dim();
    const size_t d = static_cast<size_t>(sigma.dim());

    // A = (z, equations of sigma) with ker A = V_tau, ker(A minus z) = V_sigma
    std::vector<ZVec> a_sigma = sigma.equation_normals();
    const auto& sigma_span = sigma.span_lattice();
    ZVec z;
    for (const auto& cand : tau.equation_normals()) {
        bool nonzero_on_sigma = false;
        for (const auto& w : sigma_span)
            if (dot(cand, w) != 0) nonzero_on_sigma = true;
        if (nonzero_on_sigma) {
            z = cand;
            break;
        }
    }
    if (z.empty()) throw NotAFace("no separating equation found");
    std::vector<ZVec> rows = {z};
    rows.insert(rows.end(), a_sigma.begin(), a_sigma.end());
    HnfResult r = hnf(ZMat::from_rows(rows, n));

    LatticeNormal out;
    for (size_t j = 0; j + 1 < d; ++j) out.tau_lattice_basis.push_back(r.transform.col(j));
    out.sigma_lattice_basis = out.tau_lattice_basis;
    out.vector = r.transform.col(d - 1);
    out.sigma_lattice_basis.push_back(out.vector);

    // fix the sign: u must point from tau into sigma
    QVec v = sub(sigma.relative_interior_point(), tau.relative_interior_point());
    QMat system(n, d);
    for (size_t i = 0; i < n; ++i) {
        system(i, 0) = Rat(out.vector[i]);
        for (size_t j = 0; j + 1 < d; ++j) system(i, j + 1) = Rat(out.tau_lattice_basis[j][i]);
    }
    auto sol = solve(system, v);
    if (!sol.has_value() || (*sol)[0] == 0)
        throw TropError("lattice normal sign fix failed");
    if ((*sol)[0] < 0) {
        out.vector = negate(out.vector);
        out.sigma_lattice_basis.back() = out.vector;
    }
    return out;
}

BalanceReport balancing_report(const TropicalCycle& xin) {
    TropicalCycle x = normalized(xin);
    BalanceReport report;
    if (x.is_empty()) return report;
    if (!x.complex.is_pure()) throw TropError("cycle complex is not pure-dimensional");
    CodimOneData c1 = codim_one_data(x.complex, x.local_cone);
    std::vector<char> bad(c1.cells.size(), 0);
    parallel_for(c1.cells.size(), [&](size_t t) {
        const Polyhedron& tau = c1.cells[t];
        QVec sum(x.ambient_dim(), Rat(0));
        for (size_t si : c1.adjacent_maximal[t]) {
            LatticeNormal ln = lattice_normal(tau, x.complex.cell(si));
            for (size_t i = 0; i < sum.size(); ++i) sum[i] += Rat(x.weights[si] * ln.vector[i]);
        }
        // balanced at tau iff the weighted sum lies in V_tau
        for (const auto& g : tau.equation_normals()) {
            if (dot(g, sum) != 0) {
                bad[t] = 1;
                break;
            }
        }
    });
    for (size_t t = 0; t < c1.cells.size(); ++t) {
        if (bad[t]) {
            report.balanced = false;
            report.offending.push_back(c1.cells[t]);
        }
    }
    return report;
}

bool is_balanced(const TropicalCycle& x) { return balancing_report(x).balanced; }

TropicalCycle star(const TropicalCycle& x, const Polyhedron& tau) {
    QVec p = tau.relative_interior_point();
    std::vector<QVec> tau_span;
    for (const auto& b : tau.span_lattice()) tau_span.push_back(to_rational(b));
    std::vector<Polyhedron> cones;
    std::vector<Int> weights;
    for (size_t i = 0; i < x.complex.size(); ++i) {
        const Polyhedron& sigma = x.complex.cell(i);
        if (!sigma.has_face(tau)) continue;
        std::vector<QVec> gens;
        for (const auto& v : sigma.vertices()) gens.push_back(sub(v, p));
        for (const auto& r : sigma.rays()) gens.push_back(to_rational(r));
        std::vector<QVec> lin = tau_span;
        for (const auto& l : sigma.lineality()) lin.push_back(to_rational(l));
        cones.push_back(Polyhedron::cone_from_generators(x.ambient_dim(), gens, lin));
        weights.push_back(x.weights[i]);
    }
    TropicalCycle out;
    out.complex = PolyhedralComplex::from_cells(x.ambient_dim(), std::move(cones));
    out.weights = std::move(weights);
    return out;
}

std::vector<StarCone> star_at_point(const TropicalCycle& x, const QVec& p) {
    std::vector<StarCone> out;
    for (size_t i = 0; i < x.complex.size(); ++i) {
        const Polyhedron& sigma = x.complex.cell(i);
        if (!sigma.contains(p)) continue;
        std::vector<QVec> gens;
        for (const auto& v : sigma.vertices()) gens.push_back(sub(v, p));
        for (const auto& r : sigma.rays()) gens.push_back(to_rational(r));
        std::vector<QVec> lin;
        for (const auto& l : sigma.lineality()) lin.push_back(to_rational(l));
        out.push_back({Polyhedron::cone_from_generators(x.ambient_dim(), gens, lin),
                       x.weights[i]});
    }
    return out;
}

TropicalCycle cartesian_product(const TropicalCycle& x, const TropicalCycle& y) {
    std::vector<Polyhedron> cells;
    std::vector<Int> weights;
    for (size_t i = 0; i < x.complex.size(); ++i)
        for (size_t j = 0; j < y.complex.size(); ++j) {
            cells.push_back(product_polyhedra(x.complex.cell(i), y.complex.cell(j)));
            weights.push_back(x.weights[i] * y.weights[j]);
        }
    TropicalCycle out;
    out.complex =
        PolyhedralComplex::from_cells(x.ambient_dim() + y.ambient_dim(), std::move(cells));
    out.weights = std::move(weights);
    return out;
}

Refinement common_refinement(const PolyhedralComplex& x, const PolyhedralComplex& y) {
    if (x.ambient_dim() != y.ambient_dim())
        throw AmbientMismatch("refining complexes of different ambient dimension");
    const int d = x.dim();
    std::vector<std::vector<Polyhedron>> pieces(x.size());
    parallel_for(x.size(), [&](size_t i) {
        for (size_t j = 0; j < y.size(); ++j) {
            Polyhedron piece = intersect_polyhedra(x.cell(i), y.cell(j));
            if (piece.dim() == d) pieces[i].push_back(std::move(piece));
        }
    });
    Refinement out;
    std::set<Polyhedron> seen;
    std::vector<Polyhedron> cells;
    for (size_t i = 0; i < x.size(); ++i) {
        for (auto& piece : pieces[i]) {
            if (!seen.insert(piece).second) continue;
            cells.push_back(std::move(piece));
            out.parent.push_back(i);
        }
    }
    out.complex = PolyhedralComplex::from_cells(x.ambient_dim(), std::move(cells));
    return out;
}

TropicalCycle refine_cycle(const TropicalCycle& x, const PolyhedralComplex& y) {
    Refinement r = common_refinement(x.complex, y);
    TropicalCycle out;
    out.complex = r.complex;
    out.weights.reserve(r.parent.size());
    for (size_t p : r.parent) out.weights.push_back(x.weights[p]);
    out.local_cone = x.local_cone;
    return out;
}

PolyhedralComplex k_skeleton(const TropicalCycle& x, int k) {
    std::vector<Polyhedron> cells;
    for (size_t i = 0; i < x.complex.size(); ++i) cells.push_back(x.complex.cell(i));
    return PolyhedralComplex::from_cells(x.ambient_dim(), skeleton(cells, k));
}

bool support_covers(const Polyhedron& cell, const std::vector<Polyhedron>& pieces) {
    if (cell.is_empty()) return true;
    if (pieces.empty()) return false;
    if (cell.dim() == 0) {
        for (const auto& p : pieces)
            if (p == cell) return true;
        return false;
    }
    // interior facets of the piece complex must be shared by two pieces;
    // a facet seen once must lie in the boundary of the cell
    std::map<Polyhedron, int> facet_count;
    for (const auto& p : pieces)
        for (auto& f : p.facets()) ++facet_count[f];
    for (const auto& [f, count] : facet_count) {
        if (count != 1) continue;
        bool on_boundary = false;
        for (const auto& row : cell.hom_inequalities()) {
            ZVec a(row.begin() + 1, row.end());
            if (is_zero(a)) continue;
            bool tight = true;
            for (const auto& g : f.hom_generators())
                if (dot(row, g) != 0) tight = false;
            for (const auto& l : f.lineality()) {
                ZVec hl(row.size(), Int(0));
                for (size_t i = 0; i + 1 < row.size(); ++i) hl[i + 1] = l[i];
                if (dot(row, hl) != 0) tight = false;
            }
            if (tight) {
                on_boundary = true;
                break;
            }
        }
        if (!on_boundary) return false;
    }
    return true;
}

bool in_support(const TropicalCycle& x, const QVec& point) {
    for (size_t i = 0; i < x.complex.size(); ++i)
        if (x.complex.cell(i).contains(point)) return true;
    return false;
}

bool equal_cycles(const TropicalCycle& a_in, const TropicalCycle& b_in) {
    TropicalCycle a = normalized(a_in), b = normalized(b_in);
    if (a.ambient_dim() != b.ambient_dim()) return false;
    if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
    if (a.dim() != b.dim()) return false;
    const int d = a.dim();
    // weights must agree on every full-dimensional overlap
    std::vector<std::vector<Polyhedron>> pieces_a(a.complex.size());
    std::vector<std::vector<Polyhedron>> pieces_b(b.complex.size());
    for (size_t i = 0; i < a.complex.size(); ++i) {
        for (size_t j = 0; j < b.complex.size(); ++j) {
            Polyhedron piece = intersect_polyhedra(a.complex.cell(i), b.complex.cell(j));
            if (piece.dim() != d) continue;
            if (a.weights[i] != b.weights[j]) return false;
            pieces_a[i].push_back(piece);
            pieces_b[j].push_back(piece);
        }
    }
    // supports must coincide: every cell covered by overlap pieces
    for (size_t i = 0; i < a.complex.size(); ++i)
        if (!support_covers(a.complex.cell(i), pieces_a[i])) return false;
    for (size_t j = 0; j < b.complex.size(); ++j)
        if (!support_covers(b.complex.cell(j), pieces_b[j])) return false;
    return true;
}

WeightSpace weight_space(const TropicalCycle& x) {
    WeightSpace ws;
    const size_t n_cells = x.complex.size();
    if (n_cells == 0) return ws;
    if (!x.complex.is_pure()) throw TropError("cycle complex is not pure-dimensional");
    CodimOneData c1 = codim_one_data(x.complex, x.local_cone);

    // rows g·u_i per codimension-one cell tau and tau-orthogonal form g
    std::vector<std::vector<ZVec>> chunk(c1.cells.size());
    parallel_for(c1.cells.size(), [&](size_t t) {
        const Polyhedron& tau = c1.cells[t];
        const auto& adj = c1.adjacent_maximal[t];
        std::vector<ZVec> normals;
        normals.reserve(adj.size());
        for (size_t si : adj) normals.push_back(lattice_normal(tau, x.complex.cell(si)).vector);
        for (const auto& g : tau.equation_normals()) {
            ZVec row(n_cells, Int(0));
            bool nonzero = false;
            for (size_t k = 0; k < adj.size(); ++k) {
                row[adj[k]] = dot(g, normals[k]);
                if (row[adj[k]] != 0) nonzero = true;
            }
            if (nonzero) chunk[t].push_back(std::move(row));
        }
    });
    ZMat constraints(0, n_cells);
    for (auto& rows : chunk)
        for (auto& r : rows) constraints.append_row(r);
    ws.lattice_basis = kernel_lattice_basis(constraints);
    ws.dimension = ws.lattice_basis.size();
    for (const auto& v : ws.lattice_basis) ws.basis.push_back(to_rational(v));
    return ws;
}

bool is_irreducible(const TropicalCycle& x_in) {
    TropicalCycle x = normalized(x_in);
    if (x.is_empty()) return false;
    Int g = 0;
    for (const auto& w : x.weights) g = boost::multiprecision::gcd(g, w);
    if (g != 1) return false;
    return weight_space(x).dimension == 1;
}

Polyhedron weight_cone(const TropicalCycle& x) {
    WeightSpace ws = weight_space(x);
    const size_t n = x.complex.size();
    std::vector<Constraint> ineqs, eqs;
    for (size_t i = 0; i < n; ++i) {
        ZVec e(n, Int(0));
        e[i] = 1;
        ineqs.push_back({e, Rat(0)});
    }
    ZMat basis_rows(0, n);
    for (const auto& b : ws.lattice_basis) basis_rows.append_row(b);
    for (const auto& g : kernel_lattice_basis(basis_rows)) eqs.push_back({g, Rat(0)});
    return Polyhedron::from_h(n, ineqs, eqs);
}

}  // namespace tropint
