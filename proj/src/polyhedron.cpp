#include "tropint/polyhedron.hpp"

#include "tropint/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tropint {

namespace {

// zero sets over inequality indices
struct Bits {
    std::vector<std::uint64_t> w;
    explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(size_t i) { w[i / 64] |= (std::uint64_t(1) << (i % 64)); }
    bool subset_of(const Bits& o) const {
        for (size_t i = 0; i < w.size(); ++i)
            if (w[i] & ~o.w[i]) return false;
        return true;
    }
    static Bits intersect(const Bits& a, const Bits& b) {
        Bits r(0);
        r.w.resize(a.w.size());
        for (size_t i = 0; i < a.w.size(); ++i) r.w[i] = a.w[i] & b.w[i];
        return r;
    }
};

struct Ray {
    ZVec v;
    Bits zero;
};

}  // namespace

DualDescription dual_description(const std::vector<ZVec>& ineqs, const std::vector<ZVec>& eqs,
                                 size_t dim) {
    ZMat eqm(0, dim);
    for (const auto& e : eqs) eqm.append_row(e);
    std::vector<ZVec> lineality = kernel_lattice_basis(eqm);
    std::vector<Ray> rays;

    const size_t m = ineqs.size();
    for (size_t t = 0; t < m; ++t) {
        const ZVec& a = ineqs[t];
        size_t hit = lineality.size();
        for (size_t i = 0; i < lineality.size(); ++i) {
            if (dot(a, lineality[i]) != 0) {
                hit = i;
                break;
            }
        }
        if (hit < lineality.size()) {
            ZVec l0 = lineality[hit];
            if (dot(a, l0) < 0) l0 = negate(l0);
            Int al0 = dot(a, l0);
            std::vector<ZVec> new_lin;
            for (size_t i = 0; i < lineality.size(); ++i) {
                if (i == hit) continue;
                new_lin.push_back(
                    primitive(sub(scale(al0, lineality[i]), scale(dot(a, lineality[i]), l0))));
            }
            for (auto& r : rays) {
                r.v = primitive(sub(scale(al0, r.v), scale(dot(a, r.v), l0)));
                r.zero.set(t);
            }
            Ray nr{l0, Bits(m)};
            for (size_t j = 0; j < t; ++j) nr.zero.set(j);
            rays.push_back(std::move(nr));
            lineality = std::move(new_lin);
            continue;
        }
        std::vector<size_t> pos, zer, neg;
        std::vector<Int> val(rays.size());
        for (size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            if (val[i] > 0)
                pos.push_back(i);
            else if (val[i] == 0)
                zer.push_back(i);
            else
                neg.push_back(i);
        }
        if (neg.empty()) {
            for (size_t i : zer) rays[i].zero.set(t);
            continue;
        }
        std::vector<Ray> next;
        for (size_t i : pos) next.push_back(rays[i]);
        for (size_t i : zer) {
            next.push_back(rays[i]);
            next.back().zero.set(t);
        }
        for (size_t p : pos) {
            for (size_t q : neg) {
                Bits common = Bits::intersect(rays[p].zero, rays[q].zero);
                bool adjacent = true;
                for (size_t r = 0; r < rays.size(); ++r) {
                    if (r == p || r == q) continue;
                    if (common.subset_of(rays[r].zero)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                Ray nr{primitive(sub(scale(val[p], rays[q].v), scale(val[q], rays[p].v))),
                       common};
                nr.zero.set(t);
                next.push_back(std::move(nr));
            }
        }
        rays = std::move(next);
    }

    DualDescription out;
    out.lineality = std::move(lineality);
    out.rays.reserve(rays.size());
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    return out;
}

namespace {

// canonical lattice basis together with the pivot row of each basis vector
struct CanonicalLattice {
    std::vector<ZVec> basis;
    std::vector<size_t> pivot_rows;
};

CanonicalLattice canonical_lattice(const std::vector<ZVec>& span_vectors, size_t dim) {
    CanonicalLattice cl;
    cl.basis = lattice_basis_of_generated(lattice_basis_of_span(span_vectors), dim);
    for (const auto& b : cl.basis) {
        size_t pr = 0;
        for (size_t i = 0; i < b.size(); ++i)
            if (b[i] != 0) pr = i;
        cl.pivot_rows.push_back(pr);
    }
    return cl;
}

// unique representative modulo the lattice's span
ZVec reduce_mod(const CanonicalLattice& cl, const ZVec& v) {
    QVec x = to_rational(v);
    for (size_t k = cl.basis.size(); k-- > 0;) {
        size_t pr = cl.pivot_rows[k];
        if (x[pr] == 0) continue;
        Rat c = x[pr] / Rat(cl.basis[k][pr]);
        for (size_t i = 0; i < x.size(); ++i) x[i] -= c * Rat(cl.basis[k][i]);
    }
    return primitive(x);
}

std::vector<ZVec> canonicalize_side(std::vector<ZVec> vectors, const CanonicalLattice& cl) {
    std::vector<ZVec> out;
    for (auto& v : vectors) {
        ZVec r = reduce_mod(cl, v);
        if (!is_zero(r)) out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), [](const ZVec& a, const ZVec& b) { return lex_less(a, b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ZVec hom_point(const QVec& p) {
    QVec h(p.size() + 1);
    h[0] = 1;
    for (size_t i = 0; i < p.size(); ++i) h[i + 1] = p[i];
    return primitive(h);
}

ZVec hom_direction(const QVec& r) {
    QVec h(r.size() + 1);
    h[0] = 0;
    for (size_t i = 0; i < r.size(); ++i) h[i + 1] = r[i];
    return primitive(h);
}

ZVec e0_row(size_t nhom) {
    ZVec e(nhom, Int(0));
    e[0] = 1;
    return e;
}

}  // namespace

void Polyhedron::finish(DualDescription gens, size_t nhom) {
    // detect emptiness: no generator with positive homogenizing coordinate
    bool nonempty = false;
    for (const auto& g : gens.rays) {
        if (g[0] < 0) continue;  // cannot occur with the x0 >= 0 row present
        if (g[0] > 0) nonempty = true;
    }
    if (!nonempty) {
        dim_ = -1;
        gens_.clear();
        lin_.clear();
        ineqs_.clear();
        eqs_.clear();
        span_lattice_.clear();
        return;
    }
    CanonicalLattice cl = canonical_lattice(gens.lineality, nhom);
    gens_ = canonicalize_side(std::move(gens.rays), cl);
    lin_ = cl.basis;

    // dual pass: facet normals and equations of the canonical generators
    std::vector<ZVec> all = gens_;
    DualDescription dual = dual_description(all, lin_, nhom);
    CanonicalLattice dcl = canonical_lattice(dual.lineality, nhom);
    ineqs_ = canonicalize_side(std::move(dual.rays), dcl);
    eqs_ = dcl.basis;

    std::vector<ZVec> span;
    for (const auto& g : gens_) span.push_back(g);
    for (const auto& l : lin_) span.push_back(l);
    dim_ = static_cast<int>(rank_of_rows(span, nhom)) - 1;

    span_lattice_ = kernel_lattice_basis(ZMat::from_rows(equation_normals(), ambient_));
}

Polyhedron Polyhedron::from_hom_constraints(size_t ambient_dim, const std::vector<ZVec>& ineq_rows,
                                            const std::vector<ZVec>& eq_rows) {
    Polyhedron p;
    p.ambient_ = ambient_dim;
    std::vector<ZVec> rows = ineq_rows;
    rows.push_back(e0_row(ambient_dim + 1));
    p.finish(dual_description(rows, eq_rows, ambient_dim + 1), ambient_dim + 1);
    return p;
}

Polyhedron Polyhedron::from_hom_generators(size_t ambient_dim, const std::vector<ZVec>& generators,
                                           const std::vector<ZVec>& lineality) {
    Polyhedron p;
    p.ambient_ = ambient_dim;
    // dualize: generators become constraints of the polar cone
    DualDescription dual = dual_description(generators, lineality, ambient_dim + 1);
    // the polar's rays are our facets, its lineality our equations
    std::vector<ZVec> rows = dual.rays;
    rows.push_back(e0_row(ambient_dim + 1));
    p.finish(dual_description(rows, dual.lineality, ambient_dim + 1), ambient_dim + 1);
    return p;
}

Polyhedron Polyhedron::from_h(size_t ambient_dim, const std::vector<Constraint>& inequalities,
                              const std::vector<Constraint>& equations) {
    auto to_row = [&](const Constraint& c) {
        QVec row(ambient_dim + 1);
        row[0] = -c.offset;
        for (size_t i = 0; i < ambient_dim; ++i) row[i + 1] = Rat(c.normal[i]);
        return primitive(row);
    };
    std::vector<ZVec> ineq_rows, eq_rows;
    for (const auto& c : inequalities) ineq_rows.push_back(to_row(c));
    for (const auto& c : equations) eq_rows.push_back(to_row(c));
    return from_hom_constraints(ambient_dim, ineq_rows, eq_rows);
}

Polyhedron Polyhedron::from_v(size_t ambient_dim, const std::vector<QVec>& vertices,
                              const std::vector<QVec>& rays, const std::vector<QVec>& lineality) {
    std::vector<ZVec> gens, lin;
    for (const auto& v : vertices) gens.push_back(hom_point(v));
    for (const auto& r : rays) {
        ZVec h = hom_direction(r);
        if (!is_zero(h)) gens.push_back(h);
    }
    for (const auto& l : lineality) {
        ZVec h = hom_direction(l);
        if (!is_zero(h)) lin.push_back(h);
    }
    if (gens.empty() || vertices.empty()) return empty(ambient_dim);
    return from_hom_generators(ambient_dim, gens, lin);
}

Polyhedron Polyhedron::cone_from_generators(size_t ambient_dim, const std::vector<QVec>& rays,
                                            const std::vector<QVec>& lineality) {
    std::vector<QVec> origin = {QVec(ambient_dim, Rat(0))};
    return from_v(ambient_dim, origin, rays, lineality);
}

Polyhedron Polyhedron::empty(size_t ambient_dim) {
    Polyhedron p;
    p.ambient_ = ambient_dim;
    p.dim_ = -1;
    return p;
}

Polyhedron Polyhedron::full_space(size_t ambient_dim) {
    return from_hom_constraints(ambient_dim, {}, {});
}

bool Polyhedron::is_cone() const {
    if (is_empty()) return false;
    QVec origin(ambient_, Rat(0));
    size_t nv = 0;
    for (const auto& g : gens_)
        if (g[0] != 0) ++nv;
    return nv == 1 && contains(origin);
}

bool Polyhedron::is_bounded() const {
    if (is_empty()) return true;
    if (!lin_.empty()) return false;
    for (const auto& g : gens_)
        if (g[0] == 0) return false;
    return true;
}

std::vector<QVec> Polyhedron::vertices() const {
    std::vector<QVec> out;
    for (const auto& g : gens_) {
        if (g[0] == 0) continue;
        QVec v(ambient_);
        for (size_t i = 0; i < ambient_; ++i) v[i] = Rat(g[i + 1]) / Rat(g[0]);
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<ZVec> Polyhedron::rays() const {
    std::vector<ZVec> out;
    for (const auto& g : gens_) {
        if (g[0] != 0) continue;
        out.push_back(ZVec(g.begin() + 1, g.end()));
    }
    return out;
}

std::vector<ZVec> Polyhedron::lineality() const {
    std::vector<ZVec> out;
    for (const auto& l : lin_) out.push_back(ZVec(l.begin() + 1, l.end()));
    return out;
}

std::vector<Constraint> Polyhedron::inequalities() const {
    std::vector<Constraint> out;
    for (const auto& row : ineqs_) {
        ZVec a(row.begin() + 1, row.end());
        if (is_zero(a)) continue;  // the facet at infinity
        out.push_back({a, Rat(-row[0])});
    }
    return out;
}

std::vector<Constraint> Polyhedron::equations() const {
    std::vector<Constraint> out;
    for (const auto& row : eqs_) {
        ZVec a(row.begin() + 1, row.end());
        if (is_zero(a)) continue;
        out.push_back({a, Rat(-row[0])});
    }
    return out;
}

std::vector<ZVec> Polyhedron::equation_normals() const {
    std::vector<ZVec> out;
    for (const auto& row : eqs_) {
        ZVec a(row.begin() + 1, row.end());
        if (!is_zero(a)) out.push_back(primitive(a));
    }
    return out;
}

bool Polyhedron::contains(const QVec& point) const {
    if (is_empty()) return false;
    QVec h(ambient_ + 1);
    h[0] = 1;
    for (size_t i = 0; i < ambient_; ++i) h[i + 1] = point[i];
    for (const auto& row : eqs_)
        if (dot(row, h) != 0) return false;
    for (const auto& row : ineqs_)
        if (dot(row, h) < 0) return false;
    return true;
}

bool Polyhedron::contains_in_relint(const QVec& point) const {
    if (is_empty()) return false;
    QVec h(ambient_ + 1);
    h[0] = 1;
    for (size_t i = 0; i < ambient_; ++i) h[i + 1] = point[i];
    for (const auto& row : eqs_)
        if (dot(row, h) != 0) return false;
    for (const auto& row : ineqs_) {
        ZVec a(row.begin() + 1, row.end());
        if (is_zero(a)) continue;
        if (dot(row, h) <= 0) return false;
    }
    return true;
}

QVec Polyhedron::relative_interior_point() const {
    if (is_empty()) throw EmptyPolyhedron("relative interior of an empty polyhedron");
    QVec acc(ambient_, Rat(0));
    Int nv = 0;
    for (const auto& g : gens_)
        if (g[0] != 0) ++nv;
    for (const auto& g : gens_) {
        if (g[0] != 0) {
            for (size_t i = 0; i < ambient_; ++i) acc[i] += Rat(g[i + 1]) / Rat(g[0] * nv);
        } else {
            for (size_t i = 0; i < ambient_; ++i) acc[i] += Rat(g[i + 1]);
        }
    }
    return acc;
}

std::vector<Polyhedron> Polyhedron::facets() const {
    std::vector<Polyhedron> out;
    if (dim_ <= 0) return out;
    for (size_t f = 0; f < ineqs_.size(); ++f) {
        ZVec a(ineqs_[f].begin() + 1, ineqs_[f].end());
        if (is_zero(a)) continue;
        std::vector<ZVec> ineq_rows;
        for (size_t j = 0; j < ineqs_.size(); ++j)
            if (j != f) ineq_rows.push_back(ineqs_[j]);
        std::vector<ZVec> eq_rows = eqs_;
        eq_rows.push_back(ineqs_[f]);
        Polyhedron facet = from_hom_constraints(ambient_, ineq_rows, eq_rows);
        if (!facet.is_empty() && facet.dim() == dim_ - 1) out.push_back(std::move(facet));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool Polyhedron::has_face(const Polyhedron& other) const {
    if (other.is_empty() || is_empty()) return false;
    if (other.ambient_dim() != ambient_) return false;
    if (*this == other) return true;
    // every generator of other must satisfy our constraints
    for (const auto& g : other.gens_) {
        for (const auto& row : eqs_)
            if (dot(row, g) != 0) return false;
        for (const auto& row : ineqs_)
            if (dot(row, g) < 0) return false;
    }
    for (const auto& l : other.lin_) {
        for (const auto& row : eqs_)
            if (dot(row, l) != 0) return false;
        for (const auto& row : ineqs_)
            if (dot(row, l) != 0) return false;
    }
    // other = this ∩ {inequalities tight on other}
    std::vector<ZVec> tight = eqs_, loose;
    for (const auto& row : ineqs_) {
        bool all_tight = true;
        for (const auto& g : other.gens_)
            if (dot(row, g) != 0) all_tight = false;
        (all_tight ? tight : loose).push_back(row);
    }
    Polyhedron face = from_hom_constraints(ambient_, loose, tight);
    return face == other;
}

bool Polyhedron::operator<(const Polyhedron& o) const {
    if (ambient_ != o.ambient_) return ambient_ < o.ambient_;
    if (gens_ != o.gens_) return std::lexicographical_compare(
        gens_.begin(), gens_.end(), o.gens_.begin(), o.gens_.end(),
        [](const ZVec& a, const ZVec& b) { return lex_less(a, b); });
    return std::lexicographical_compare(
        lin_.begin(), lin_.end(), o.lin_.begin(), o.lin_.end(),
        [](const ZVec& a, const ZVec& b) { return lex_less(a, b); });
}

Polyhedron intersect_polyhedra(const Polyhedron& a, const Polyhedron& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw AmbientMismatch("intersecting polyhedra of different ambient dimension");
    if (a.is_empty() || b.is_empty()) return Polyhedron::empty(a.ambient_dim());
    std::vector<ZVec> ineq_rows = a.hom_inequalities();
    ineq_rows.insert(ineq_rows.end(), b.hom_inequalities().begin(), b.hom_inequalities().end());
    std::vector<ZVec> eq_rows = a.hom_equations();
    eq_rows.insert(eq_rows.end(), b.hom_equations().begin(), b.hom_equations().end());
    return Polyhedron::from_hom_constraints(a.ambient_dim(), ineq_rows, eq_rows);
}

std::vector<Polyhedron> faces(const Polyhedron& p, int k) {
    if (p.is_empty() || k < 0 || k > p.dim()) return {};
    std::vector<Polyhedron> level = {p};
    for (int d = p.dim(); d > k; --d) {
        std::set<Polyhedron> next;
        for (const auto& cell : level)
            for (auto& f : cell.facets()) next.insert(std::move(f));
        level.assign(next.begin(), next.end());
    }
    return level;
}

std::vector<Polyhedron> skeleton(const std::vector<Polyhedron>& cells, int k) {
    std::set<Polyhedron> out;
    for (const auto& c : cells)
        for (auto& f : faces(c, k)) out.insert(std::move(f));
    return std::vector<Polyhedron>(out.begin(), out.end());
}

std::vector<Polyhedron> normal_fan(const Polyhedron& polytope) {
    if (polytope.is_empty() || !polytope.is_bounded())
        throw TropError("normal fan requires a nonempty bounded polytope");
    std::vector<QVec> verts = polytope.vertices();
    std::vector<Polyhedron> cones;
    for (size_t j = 0; j < verts.size(); ++j) {
        std::vector<Constraint> ineqs;
        for (size_t i = 0; i < verts.size(); ++i) {
            if (i == j) continue;
            ZVec normal = primitive(sub(verts[j], verts[i]));
            if (is_zero(normal)) continue;
            ineqs.push_back({normal, Rat(0)});
        }
        cones.push_back(Polyhedron::from_h(polytope.ambient_dim(), ineqs, {}));
    }
    return cones;
}

Polyhedron minkowski_sum_cones(const Polyhedron& a, const Polyhedron& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw AmbientMismatch("minkowski sum of cones in different ambient dimensions");
    std::vector<QVec> rays;
    std::vector<QVec> lin;
    for (const auto& r : a.rays()) rays.push_back(to_rational(r));
    for (const auto& r : b.rays()) rays.push_back(to_rational(r));
    for (const auto& l : a.lineality()) lin.push_back(to_rational(l));
    for (const auto& l : b.lineality()) lin.push_back(to_rational(l));
    return Polyhedron::cone_from_generators(a.ambient_dim(), rays, lin);
}

Polyhedron negated_cone(const Polyhedron& c) {
    std::vector<QVec> rays;
    std::vector<QVec> lin;
    for (const auto& r : c.rays()) rays.push_back(to_rational(negate(r)));
    for (const auto& l : c.lineality()) lin.push_back(to_rational(l));
    return Polyhedron::cone_from_generators(c.ambient_dim(), rays, lin);
}

Polyhedron product_polyhedra(const Polyhedron& a, const Polyhedron& b) {
    size_t na = a.ambient_dim(), nb = b.ambient_dim();
    if (a.is_empty() || b.is_empty()) return Polyhedron::empty(na + nb);
    auto pad = [&](const ZVec& row, bool first) {
        // homogeneous row (a0, a) -> (a0, a, 0) or (a0, 0, a)
        ZVec out(na + nb + 1, Int(0));
        out[0] = row[0];
        size_t off = first ? 1 : 1 + na;
        for (size_t i = 1; i < row.size(); ++i) out[off + i - 1] = row[i];
        return out;
    };
    std::vector<ZVec> ineq_rows, eq_rows;
    for (const auto& r : a.hom_inequalities()) ineq_rows.push_back(pad(r, true));
    for (const auto& r : b.hom_inequalities()) ineq_rows.push_back(pad(r, false));
    for (const auto& r : a.hom_equations()) eq_rows.push_back(pad(r, true));
    for (const auto& r : b.hom_equations()) eq_rows.push_back(pad(r, false));
    return Polyhedron::from_hom_constraints(na + nb, ineq_rows, eq_rows);
}

}  // namespace tropint
