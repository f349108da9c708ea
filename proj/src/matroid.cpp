#include "tropint/matroid.hpp"

#include "tropint/util.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

namespace tropint {

namespace {

std::uint32_t to_mask(const std::vector<size_t>& set) {
    std::uint32_t m = 0;
    for (size_t e : set) m |= (std::uint32_t(1) << e);
    return m;
}

std::vector<size_t> from_mask(std::uint32_t mask) {
    std::vector<size_t> out;
    for (size_t e = 0; mask; ++e, mask >>= 1)
        if (mask & 1) out.push_back(e);
    return out;
}

}  // namespace

Matroid Matroid::from_bases(size_t ground_size, const std::vector<std::vector<size_t>>& bases) {
    if (ground_size > 31) throw TropError("ground sets above 31 elements are not supported");
    if (bases.empty()) throw TropError("a matroid needs at least one basis");
    Matroid m;
    m.n_ = ground_size;
    std::set<std::uint32_t> masks;
    for (const auto& b : bases) {
        for (size_t e : b)
            if (e >= ground_size) throw TropError("basis element outside the ground set");
        masks.insert(to_mask(b));
    }
    m.bases_.assign(masks.begin(), masks.end());
    m.rank_ = std::popcount(m.bases_[0]);
    for (std::uint32_t b : m.bases_)
        if (std::popcount(b) != static_cast<int>(m.rank_))
            throw TropError("bases of different cardinality");
    if (ground_size <= 12) {
        for (std::uint32_t b1 : m.bases_)
            for (std::uint32_t b2 : m.bases_) {
                std::uint32_t only1 = b1 & ~b2;
                for (std::uint32_t x = only1; x;) {
                    std::uint32_t xe = x & (~x + 1);
                    x ^= xe;
                    bool found = false;
                    for (std::uint32_t y = b2 & ~b1; y && !found;) {
                        std::uint32_t ye = y & (~y + 1);
                        y ^= ye;
                        if (m.is_basis((b1 ^ xe) | ye)) found = true;
                    }
                    if (!found) throw TropError("basis-exchange axiom fails");
                }
            }
        m.exchange_verified_ = true;
    }
    return m;
}

Matroid Matroid::from_matrix(const QMat& mat) {
    const size_t n = mat.cols();
    if (n > 31) throw TropError("ground sets above 31 elements are not supported");
    size_t r = tropint::rank(mat);
    if (r == 0) throw TropError("zero matrix has no bases");
    std::vector<std::vector<size_t>> bases;
    std::vector<size_t> subset;
    // enumerate r-subsets of columns and keep the independent ones
    std::function<void(size_t)> rec = [&](size_t start) {
        if (subset.size() == r) {
            QMat sub(mat.rows(), r);
            for (size_t j = 0; j < r; ++j)
                for (size_t i = 0; i < mat.rows(); ++i) sub(i, j) = mat(i, subset[j]);
            if (tropint::rank(sub) == r) bases.push_back(subset);
            return;
        }
        for (size_t c = start; c + (r - subset.size()) <= n; ++c) {
            subset.push_back(c);
            rec(c + 1);
            subset.pop_back();
        }
    };
    rec(0);
    Matroid m = from_bases(n, bases);
    m.realization_ = mat;
    return m;
}

Matroid Matroid::uniform(size_t rank, size_t ground_size) {
    std::vector<std::vector<size_t>> bases;
    std::vector<size_t> subset;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (subset.size() == rank) {
            bases.push_back(subset);
            return;
        }
        for (size_t c = start; c + (rank - subset.size()) <= ground_size; ++c) {
            subset.push_back(c);
            rec(c + 1);
            subset.pop_back();
        }
    };
    rec(0);
    return from_bases(ground_size, bases);
}

std::vector<std::vector<size_t>> Matroid::bases() const {
    std::vector<std::vector<size_t>> out;
    for (std::uint32_t b : bases_) out.push_back(from_mask(b));
    return out;
}

bool Matroid::is_basis(std::uint32_t mask) const {
    return std::binary_search(bases_.begin(), bases_.end(), mask);
}

bool Matroid::is_independent(std::uint32_t mask) const {
    for (std::uint32_t b : bases_)
        if ((mask & ~b) == 0) return true;
    return false;
}

bool Matroid::has_loops() const {
    std::uint32_t covered = 0;
    for (std::uint32_t b : bases_) covered |= b;
    return covered != (std::uint32_t(1) << n_) - 1;
}

std::vector<std::vector<size_t>> Matroid::circuits() const {
    std::vector<std::vector<size_t>> out;
    std::vector<std::uint32_t> found;
    // minimal dependent sets have size at most rank+1
    std::vector<size_t> subset;
    std::function<void(size_t)> rec = [&](size_t start) {
        std::uint32_t mask = to_mask(subset);
        if (!subset.empty() && !is_independent(mask)) {
            // dependent: minimal iff every proper subset one smaller is independent
            for (size_t i = 0; i < subset.size(); ++i) {
                if (!is_independent(mask ^ (std::uint32_t(1) << subset[i]))) return;
            }
            found.push_back(mask);
            return;  // supersets are not minimal
        }
        if (subset.size() == rank_ + 1) return;
        for (size_t c = start; c < n_; ++c) {
            subset.push_back(c);
            rec(c + 1);
            subset.pop_back();
        }
    };
    rec(0);
    std::sort(found.begin(), found.end());
    for (std::uint32_t m : found) out.push_back(from_mask(m));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<size_t> Matroid::fundamental_circuit(const std::vector<size_t>& independent_set,
                                                 size_t e) const {
    std::uint32_t imask = to_mask(independent_set);
    if (!is_independent(imask)) throw TropError("the given set is not independent");
    std::uint32_t emask = std::uint32_t(1) << e;
    if (imask & emask) throw NotDependent("element already in the independent set");
    if (is_independent(imask | emask))
        throw NotDependent("adding the element keeps the set independent");

    if (realization_.has_value()) {
        // solve col_e = sum of lambda_i col_i; the support is the circuit
        const QMat& mat = *realization_;
        QMat sys(mat.rows(), independent_set.size());
        QVec rhs(mat.rows());
        for (size_t i = 0; i < mat.rows(); ++i) {
            rhs[i] = mat(i, e);
            for (size_t j = 0; j < independent_set.size(); ++j)
                sys(i, j) = mat(i, independent_set[j]);
        }
        auto sol = solve(sys, rhs);
        if (sol.has_value()) {
            std::vector<size_t> out = {e};
            for (size_t j = 0; j < independent_set.size(); ++j)
                if ((*sol)[j] != 0) out.push_back(independent_set[j]);
            std::sort(out.begin(), out.end());
            return out;
        }
        // fall through: dependent but not in the column span (cannot happen)
    }
    std::vector<size_t> out = {e};
    for (size_t i : independent_set) {
        std::uint32_t swapped = (imask ^ (std::uint32_t(1) << i)) | emask;
        if (is_independent(swapped)) out.push_back(i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Matroid complete_graph_matroid(size_t k) {
    std::vector<std::pair<size_t, size_t>> edges;
    for (size_t a = 0; a < k; ++a)
        for (size_t b = a + 1; b < k; ++b) edges.emplace_back(a, b);
    const size_t n = edges.size();
    std::vector<std::vector<size_t>> bases;
    std::vector<size_t> subset;
    std::function<void(size_t)> rec = [&](size_t start) {
        if (subset.size() == k - 1) {
            // spanning tree test by union-find
            std::vector<size_t> parent(k);
            for (size_t i = 0; i < k; ++i) parent[i] = i;
            std::function<size_t(size_t)> find = [&](size_t v) {
                while (parent[v] != v) v = parent[v] = parent[parent[v]];
                return v;
            };
            bool acyclic = true;
            for (size_t e : subset) {
                size_t ra = find(edges[e].first), rb = find(edges[e].second);
                if (ra == rb) {
                    acyclic = false;
                    break;
                }
                parent[ra] = rb;
            }
            if (acyclic) bases.push_back(subset);
            return;
        }
        for (size_t c = start; c + (k - 1 - subset.size()) <= n; ++c) {
            subset.push_back(c);
            rec(c + 1);
            subset.pop_back();
        }
    };
    rec(0);
    return Matroid::from_bases(n, bases);
}

Polyhedron matroid_polytope(const Matroid& m) {
    std::vector<QVec> points;
    for (std::uint32_t b : m.basis_masks()) {
        QVec p(m.ground_size(), Rat(0));
        for (size_t e = 0; e < m.ground_size(); ++e)
            if (b & (std::uint32_t(1) << e)) p[e] = 1;
        points.push_back(std::move(p));
    }
    return Polyhedron::from_v(m.ground_size(), points, {}, {});
}

bool bergman_membership_by_circuits(const Matroid& m, const QVec& w,
                                    const std::vector<std::vector<size_t>>& circuits) {
    (void)m;
    for (const auto& c : circuits) {
        Rat min = w[c[0]];
        int count = 1;
        for (size_t i = 1; i < c.size(); ++i) {
            if (w[c[i]] < min) {
                min = w[c[i]];
                count = 1;
            } else if (w[c[i]] == min) {
                ++count;
            }
        }
        if (count < 2) return false;
    }
    return true;
}

namespace {

TropicalCycle fan_from_cones(size_t n, std::vector<Polyhedron> cones) {
    TropicalCycle x;
    x.weights.assign(cones.size(), Int(1));
    x.complex = PolyhedralComplex::from_cells(n, std::move(cones));
    return x;
}

}  // namespace

BergmanFan bergman_fan_rincon(const Matroid& m) {
    if (m.has_loops()) throw TropError("Bergman fan requires a loop-free matroid");
    const size_t n = m.ground_size();
    const size_t r = m.rank();

    // enumerate partitions of the ground set into r classes such that every
    // transversal is a basis; pruning keeps partial transversals independent
    std::vector<std::vector<size_t>> classes;
    std::vector<Polyhedron> cones;
    std::set<Polyhedron> seen;

    auto emit = [&]() {
        // cone in class-coordinate space: for every basis B,
        // Σ_i (|B ∩ S_i| - 1) c_i <= 0
        std::vector<Constraint> ineqs;
        for (std::uint32_t b : m.basis_masks()) {
            ZVec normal(r, Int(0));
            bool zero = true;
            for (size_t i = 0; i < r; ++i) {
                int hits = 0;
                for (size_t e : classes[i])
                    if (b & (std::uint32_t(1) << e)) ++hits;
                normal[i] = 1 - hits;  // flipped to a >= 0 constraint
                if (normal[i] != 0) zero = false;
            }
            if (!zero) ineqs.push_back({std::move(normal), Rat(0)});
        }
        Polyhedron class_cone = Polyhedron::from_h(r, ineqs, {});
        if (class_cone.dim() != static_cast<int>(r)) return;  // not maximal
        // expand class coordinates to R^n
        auto expand = [&](const ZVec& c) {
            QVec w(n, Rat(0));
            for (size_t i = 0; i < r; ++i)
                for (size_t e : classes[i]) w[e] = Rat(c[i]);
            return w;
        };
        std::vector<QVec> rays, lin;
        for (const auto& ray : class_cone.rays()) rays.push_back(expand(ray));
        for (const auto& l : class_cone.lineality()) lin.push_back(expand(l));
        Polyhedron cone = Polyhedron::cone_from_generators(n, rays, lin);
        if (seen.insert(cone).second) cones.push_back(std::move(cone));
    };

    // check all transversals through element e placed in class ci
    auto transversals_ok = [&](size_t e, size_t ci) {
        std::function<bool(size_t, std::uint32_t)> rec = [&](size_t c, std::uint32_t acc) {
            if (c == classes.size()) return m.is_independent(acc);
            if (c == ci) return rec(c + 1, acc | (std::uint32_t(1) << e));
            for (size_t x : classes[c]) {
                if (!rec(c + 1, acc | (std::uint32_t(1) << x))) return false;
            }
            return true;
        };
        return rec(0, 0);
    };

    std::function<void(size_t)> assign = [&](size_t e) {
        if (e == n) {
            if (classes.size() == r) emit();
            return;
        }
        // remaining elements must still be able to open the missing classes
        size_t missing = r - classes.size();
        if (n - e < missing) return;
        for (size_t ci = 0; ci < classes.size(); ++ci) {
            if (n - e - 1 < missing) break;
            if (!transversals_ok(e, ci)) continue;
            classes[ci].push_back(e);
            assign(e + 1);
            classes[ci].pop_back();
        }
        if (classes.size() < r) {
            classes.push_back({e});
            if (transversals_ok(e, classes.size() - 1)) assign(e + 1);
            classes.pop_back();
        }
    };
    assign(0);

    std::sort(cones.begin(), cones.end());
    BergmanFan out;
    out.cycle = fan_from_cones(n, std::move(cones));
    return out;
}

BergmanFan bergman_fan_normal(const Matroid& m) {
    if (m.has_loops()) throw TropError("Bergman fan requires a loop-free matroid");
    const size_t n = m.ground_size();
    Polyhedron poly = matroid_polytope(m);
    std::vector<Polyhedron> fan = normal_fan(poly);
    std::vector<Polyhedron> skel = skeleton(fan, static_cast<int>(m.rank()));
    std::vector<Polyhedron> kept;
    for (auto& xi : skel) {
        QVec w = xi.relative_interior_point();
        // bases of maximal w-cost span the face maximized by xi
        Rat best;
        bool first = true;
        std::vector<std::uint32_t> argmax;
        for (std::uint32_t b : m.basis_masks()) {
            Rat cost = 0;
            for (size_t e = 0; e < n; ++e)
                if (b & (std::uint32_t(1) << e)) cost += w[e];
            if (first || cost > best) {
                best = cost;
                argmax.clear();
                first = false;
            }
            if (cost == best) argmax.push_back(b);
        }
        std::uint32_t covered = 0;
        for (std::uint32_t b : argmax) covered |= b;
        if (covered == (std::uint32_t(1) << n) - 1) kept.push_back(std::move(xi));
    }
    std::sort(kept.begin(), kept.end());
    BergmanFan out;
    out.cycle = fan_from_cones(n, std::move(kept));
    return out;
}

}  // namespace tropint
