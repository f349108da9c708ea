#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tropint/cycle.hpp"
#include "tropint/linalg.hpp"

#include <random>

using namespace tropint;

namespace {

QVec qvec(const std::vector<int>& v) {
    QVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

ZVec zvec(const std::vector<int>& v) {
    ZVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

TropicalCycle fan_cycle(size_t n, const std::vector<std::vector<int>>& rays,
                        std::vector<std::vector<size_t>> cones, std::vector<int> weights) {
    std::vector<QVec> qrays;
    for (const auto& r : rays) qrays.push_back(qvec(r));
    TropicalCycle x;
    x.complex = PolyhedralComplex::from_fan_rays(n, qrays, std::move(cones));
    for (int w : weights) x.weights.push_back(w);
    return x;
}

// the standard tropical line in R^2 (max convention)
TropicalCycle standard_line(int w = 1) {
    return fan_cycle(2, {{1, 1}, {-1, 0}, {0, -1}}, {{0}, {1}, {2}}, {w, w, w});
}

}  // namespace

TEST_CASE("four orthants of R2 with weight 1 are balanced") {
    TropicalCycle x = fan_cycle(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}},
                                {{0, 2}, {0, 3}, {1, 2}, {1, 3}}, {1, 1, 1, 1});
    CHECK(is_balanced(x));
}

TEST_CASE("single ray is not balanced") {
    TropicalCycle x = fan_cycle(2, {{1, 0}}, {{0}}, {1});
    BalanceReport r = balancing_report(x);
    CHECK(!r.balanced);
    CHECK(r.offending.size() == 1);
}

TEST_CASE("six-ray curve balancing, weight space and irreducibility") {
    // maximal cells are the six rays themselves
    TropicalCycle x = fan_cycle(2, {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
                                {{0}, {1}, {2}, {3}, {4}, {5}}, {1, 1, 1, 1, 1, 1});
    CHECK(is_balanced(x));
    CHECK(!is_irreducible(x));
    WeightSpace ws = weight_space(x);
    CHECK(ws.dimension == 4);
    // row-equivalent to the printed basis: same row span over Q
    std::vector<ZVec> printed = {zvec({1, -1, 1, 0, 0, 0}), zvec({0, 0, 1, 0, 0, 1}),
                                 zvec({1, 0, 0, 1, 0, 0}), zvec({0, 1, 0, 0, 1, 0})};
    CHECK(rank_of_rows(printed, 6) == 4);
    std::vector<ZVec> stacked = printed;
    for (const auto& b : ws.lattice_basis) stacked.push_back(b);
    CHECK(rank_of_rows(ws.lattice_basis, 6) == 4);
    CHECK(rank_of_rows(stacked, 6) == 4);
    // every basis vector is itself a balancing weight assignment
    for (const auto& b : ws.lattice_basis) {
        TropicalCycle y = x;
        y.weights.assign(b.begin(), b.end());
        CHECK(is_balanced(y));
    }
}

TEST_CASE("standard line is irreducible, multiples are not") {
    TropicalCycle line = standard_line();
    CHECK(is_balanced(line));
    CHECK(is_irreducible(line));
    CHECK(weight_space(line).dimension == 1);
    CHECK(!is_irreducible(standard_line(2)));
}

TEST_CASE("lattice normal of a halfplane pair") {
    // sigma = upper half-plane, tau = x-axis
    Polyhedron sigma = Polyhedron::from_h(2, {{zvec({0, 1}), Rat(0)}}, {});
    Polyhedron tau = Polyhedron::from_h(2, {}, {{zvec({0, 1}), Rat(0)}});
    LatticeNormal ln = lattice_normal(tau, sigma);
    // (0,1) modulo the x-axis lattice
    CHECK(ln.vector[1] == 1);
    CHECK(ln.tau_lattice_basis.size() == 1);
}

TEST_CASE("lattice normals at the vertex of the standard line are the ray directions") {
    TropicalCycle line = standard_line();
    Polyhedron origin = Polyhedron::from_v(2, {qvec({0, 0})}, {}, {});
    std::vector<ZVec> expected = {zvec({1, 1}), zvec({-1, 0}), zvec({0, -1})};
    for (size_t i = 0; i < 3; ++i) {
        LatticeNormal ln = lattice_normal(origin, line.complex.cell(i));
        CHECK(ln.vector == expected[i]);
    }
}

TEST_CASE("lattice normal primitivity on random cone pairs in R4") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-3, 3);
    int done = 0;
    while (done < 12) {
        QVec a = qvec({d(rng), d(rng), d(rng), d(rng)});
        QVec b = qvec({d(rng), d(rng), d(rng), d(rng)});
        Polyhedron sigma = Polyhedron::cone_from_generators(4, {a, b});
        if (sigma.dim() != 2 || !sigma.lineality().empty()) continue;
        auto fs = sigma.facets();
        if (fs.empty()) continue;
        const Polyhedron& tau = fs[0];
        if (tau.dim() != 1) continue;
        ++done;
        LatticeNormal ln = lattice_normal(tau, sigma);
        const ZVec& u = ln.vector;
        CHECK(content(u) == 1);
        // integral, in the span of sigma, not in the span of tau
        CHECK(in_span(sigma.span_lattice(), to_rational(u), 4));
        CHECK(!in_span(tau.span_lattice(), to_rational(u), 4));
        // generates Λ_σ/Λ_τ: brute force over small multiples — no integral w
        // in Λ_σ \ Λ_τ satisfies u ≡ k·w mod Λ_τ for k = 2..6
        for (int k = 2; k <= 6; ++k) {
            // in the basis (tau basis, u) of Λ_σ, u has coordinates (0..0,1);
            // u = k·w mod Λ_τ would force k | 1
            CHECK(1 % k != 0);
        }
        // the same statement verified through the lattice machinery:
        // [Λ_σ : Λ_τ + Z·u] = 1
        std::vector<ZVec> subgens = ln.tau_lattice_basis;
        subgens.push_back(u);
        CHECK(lattice_index(subgens, ln.sigma_lattice_basis) == 1);
        // independent lattice check of Λ_σ itself against the saturation
        std::vector<QVec> span_q;
        for (const auto& g : sigma.span_lattice()) span_q.push_back(to_rational(g));
        CHECK(lattice_index(ln.sigma_lattice_basis, lattice_basis_of_span(span_q)) == 1);
        // sign via evaluation: moving from tau into sigma has positive
        // u-coefficient
        QVec diff = sub(sigma.relative_interior_point(), tau.relative_interior_point());
        QMat sys(4, ln.sigma_lattice_basis.size());
        for (size_t r = 0; r < 4; ++r) {
            for (size_t c = 0; c < ln.tau_lattice_basis.size(); ++c)
                sys(r, c) = Rat(ln.tau_lattice_basis[c][r]);
            sys(r, ln.sigma_lattice_basis.size() - 1) = Rat(u[r]);
        }
        auto sol = solve(sys, diff);
        REQUIRE(sol.has_value());
        CHECK(sol->back() > 0);
    }
}

TEST_CASE("star of a balanced cycle at a codim-one cell is balanced") {
    TropicalCycle line = standard_line();
    Polyhedron origin = Polyhedron::from_v(2, {qvec({0, 0})}, {}, {});
    TropicalCycle st = star(line, origin);
    CHECK(st.complex.size() == 3);
    CHECK(is_balanced(st));

    // unbalanced cycle: star inherits the defect
    TropicalCycle bad = fan_cycle(2, {{1, 1}, {-1, 0}, {0, -1}}, {{0}, {1}, {2}}, {2, 1, 1});
    CHECK(!is_balanced(bad));
    CHECK(!is_balanced(star(bad, origin)));
}

TEST_CASE("cartesian product of balanced cycles is balanced") {
    TropicalCycle line = standard_line();
    TropicalCycle prod = cartesian_product(line, line);
    CHECK(prod.ambient_dim() == 4);
    CHECK(prod.complex.size() == 9);
    CHECK(prod.dim() == 2);
    CHECK(is_balanced(prod));
}

TEST_CASE("refinement preserves cycle equality and weight space dimension") {
    TropicalCycle line = standard_line();
    // cut R^2 along the line x = 1
    std::vector<Polyhedron> halves = {
        Polyhedron::from_h(2, {{zvec({1, 0}), Rat(1)}}, {}),
        Polyhedron::from_h(2, {{zvec({-1, 0}), Rat(-1)}}, {})};
    PolyhedralComplex cut = PolyhedralComplex::from_cells(2, halves);
    TropicalCycle refined = refine_cycle(line, cut);
    CHECK(refined.complex.size() == 4);
    CHECK(is_balanced(refined));
    CHECK(equal_cycles(line, refined));
    CHECK(weight_space(line).dimension == weight_space(refined).dimension);
    // equivalent subdivided cells carry equal weights
    for (size_t i = 0; i < refined.complex.size(); ++i) CHECK(refined.weights[i] == 1);
}

TEST_CASE("weight space basis of glued fans rebalances") {
    // two balanced subfans glued along a shared ray: the x-axis line and the
    // diagonal line through the origin
    TropicalCycle x = fan_cycle(2, {{1, 0}, {-1, 0}, {1, 1}, {-1, -1}}, {{0}, {1}, {2}, {3}},
                                {1, 1, 1, 1});
    CHECK(is_balanced(x));
    WeightSpace ws = weight_space(x);
    CHECK(ws.dimension >= 2);
    for (const auto& b : ws.lattice_basis) {
        TropicalCycle y = x;
        y.weights.assign(b.begin(), b.end());
        CHECK(is_balanced(y));
    }
}

TEST_CASE("weight cone of the six-ray curve") {
    TropicalCycle x = fan_cycle(2, {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
                                {{0}, {1}, {2}, {3}, {4}, {5}}, {1, 1, 1, 1, 1, 1});
    Polyhedron wc = weight_cone(x);
    CHECK(wc.ambient_dim() == 6);
    CHECK(wc.dim() == 4);
    CHECK(wc.contains(qvec({1, 1, 1, 1, 1, 1})));
    CHECK(!wc.contains(qvec({1, -1, 1, 0, 0, 0})));
}

TEST_CASE("zero-weight cells are dropped by normalization") {
    TropicalCycle x = fan_cycle(2, {{1, 1}, {-1, 0}, {0, -1}, {0, 1}}, {{0}, {1}, {2}, {3}},
                                {1, 1, 1, 0});
    CHECK(normalized(x).complex.size() == 3);
    CHECK(is_balanced(x));  // balancing ignores the zero-weight ray
}

TEST_CASE("equal_cycles distinguishes supports and weights") {
    CHECK(!equal_cycles(standard_line(), standard_line(2)));
    TropicalCycle other = fan_cycle(2, {{1, 0}, {-1, 0}}, {{0}, {1}}, {1, 1});
    CHECK(!equal_cycles(standard_line(), other));
    CHECK(equal_cycles(other, other));
    CHECK(equal_cycles(empty_cycle(2), empty_cycle(2)));
}

TEST_CASE("k-skeleton of the product plane") {
    TropicalCycle plane = unit_cycle(2);
    PolyhedralComplex sk = k_skeleton(plane, 2);
    CHECK(sk.size() == 1);
}
