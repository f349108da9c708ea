#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tropint/polyhedron.hpp"

#include <random>
#include <set>

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

Constraint ge(const std::vector<int>& normal, int offset) { return {zvec(normal), Rat(offset)}; }

}  // namespace

TEST_CASE("positive orthant h to v") {
    Polyhedron p = Polyhedron::from_h(2, {ge({1, 0}, 0), ge({0, 1}, 0)}, {});
    CHECK(p.dim() == 2);
    auto rays = p.rays();
    REQUIRE(rays.size() == 2);
    std::set<ZVec> rs(rays.begin(), rays.end());
    CHECK(rs.count(zvec({1, 0})));
    CHECK(rs.count(zvec({0, 1})));
    auto verts = p.vertices();
    REQUIRE(verts.size() == 1);
    CHECK(verts[0] == qvec({0, 0}));
    CHECK(p.is_cone());
}

TEST_CASE("unit square v to h") {
    Polyhedron p = Polyhedron::from_v(
        2, {qvec({0, 0}), qvec({1, 0}), qvec({0, 1}), qvec({1, 1})}, {}, {});
    CHECK(p.dim() == 2);
    CHECK(p.inequalities().size() == 4);
    CHECK(p.equations().empty());
    CHECK(p.is_bounded());
    CHECK(p.contains(QVec{Rat(1, 2), Rat(1, 2)}));
    CHECK(!p.contains(QVec{Rat(2), Rat(0)}));
}

TEST_CASE("infeasible h-description gives the empty polyhedron") {
    Polyhedron p = Polyhedron::from_h(2, {ge({1, 0}, 1), ge({-1, 0}, 0)}, {});
    CHECK(p.is_empty());
    CHECK(p.dim() == -1);
}

TEST_CASE("round trip and membership oracle on random 3d cones") {
    std::mt19937 rng(123);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<QVec> gens;
        for (int i = 0; i < 5; ++i) gens.push_back(qvec({d(rng), d(rng), d(rng)}));
        Polyhedron p = Polyhedron::cone_from_generators(3, gens);
        // round trip through the H-description
        Polyhedron q = Polyhedron::from_h(3, p.inequalities(), p.equations());
        CHECK(p == q);
        // membership agrees between descriptions: test against the generator
        // side by sampling nonnegative combinations and random points
        std::uniform_int_distribution<int> c(0, 3);
        for (int s = 0; s < 50; ++s) {
            QVec pt(3, Rat(0));
            for (const auto& g : gens) {
                Rat coeff = Rat(c(rng));
                for (size_t i = 0; i < 3; ++i) pt[i] += coeff * g[i];
            }
            CHECK(p.contains(pt));
            CHECK(q.contains(pt));
        }
        for (int s = 0; s < 50; ++s) {
            QVec pt = qvec({d(rng), d(rng), d(rng)});
            CHECK(p.contains(pt) == q.contains(pt));
        }
    }
}

TEST_CASE("canonicalization is idempotent") {
    Polyhedron p = Polyhedron::from_v(2, {qvec({0, 0}), qvec({2, 0})}, {qvec({0, 3})}, {});
    Polyhedron q = Polyhedron::from_v(2, p.vertices(),
                                      [&] {
                                          std::vector<QVec> rs;
                                          for (auto& r : p.rays()) rs.push_back(to_rational(r));
                                          return rs;
                                      }(),
                                      [&] {
                                          std::vector<QVec> ls;
                                          for (auto& l : p.lineality())
                                              ls.push_back(to_rational(l));
                                          return ls;
                                      }());
    CHECK(p == q);
}

TEST_CASE("intersection of polyhedra") {
    Polyhedron a = Polyhedron::from_h(2, {ge({1, 0}, 0)}, {});
    Polyhedron b = Polyhedron::from_h(2, {ge({-1, 0}, -1)}, {});
    Polyhedron strip = intersect_polyhedra(a, b);
    CHECK(strip.dim() == 2);
    CHECK(strip.contains(QVec{Rat(1, 2), Rat(7)}));
    CHECK(!strip.contains(QVec{Rat(2), Rat(0)}));

    Polyhedron c = Polyhedron::from_h(2, {ge({1, 0}, 3)}, {});
    CHECK(intersect_polyhedra(a, c) == c);
    Polyhedron e = intersect_polyhedra(Polyhedron::from_h(2, {ge({1, 0}, 3)}, {}),
                                       Polyhedron::from_h(2, {ge({-1, 0}, 0)}, {}));
    CHECK(e.is_empty());
}

TEST_CASE("faces of the unit square") {
    Polyhedron square = Polyhedron::from_v(
        2, {qvec({0, 0}), qvec({1, 0}), qvec({0, 1}), qvec({1, 1})}, {}, {});
    auto edges = faces(square, 1);
    CHECK(edges.size() == 4);
    auto corners = faces(square, 0);
    CHECK(corners.size() == 4);
    for (const auto& e : edges) {
        CHECK(square.has_face(e));
        // each face lies inside the polyhedron
        for (const auto& v : e.vertices()) CHECK(square.contains(v));
    }
}

TEST_CASE("faces of the positive orthant in R3") {
    Polyhedron orthant =
        Polyhedron::from_h(3, {ge({1, 0, 0}, 0), ge({0, 1, 0}, 0), ge({0, 0, 1}, 0)}, {});
    CHECK(faces(orthant, 2).size() == 3);
    CHECK(faces(orthant, 1).size() == 3);
    CHECK(faces(orthant, 0).size() == 1);
}

TEST_CASE("faces of a random simplicial 4-cone match subset brute force") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> d(-3, 3);
    int done = 0;
    while (done < 5) {
        std::vector<QVec> gens;
        for (int i = 0; i < 4; ++i) gens.push_back(qvec({d(rng), d(rng), d(rng), d(rng)}));
        Polyhedron cone = Polyhedron::cone_from_generators(4, gens);
        if (cone.dim() != 4 || cone.inequalities().size() != 4 || !cone.lineality().empty())
            continue;  // want a simplicial full-dimensional pointed cone
        ++done;
        auto twofaces = faces(cone, 2);
        // brute force: every subset of facet inequalities turned to equations
        auto ineqs = cone.inequalities();
        std::set<Polyhedron> expected;
        for (unsigned mask = 0; mask < (1u << ineqs.size()); ++mask) {
            std::vector<Constraint> keep, tight;
            for (size_t i = 0; i < ineqs.size(); ++i)
                ((mask >> i) & 1 ? tight : keep).push_back(ineqs[i]);
            Polyhedron f = Polyhedron::from_h(4, keep, tight);
            if (!f.is_empty() && f.dim() == 2) expected.insert(f);
        }
        std::set<Polyhedron> got(twofaces.begin(), twofaces.end());
        CHECK(got == expected);
    }
}

TEST_CASE("normal fan of a segment") {
    Polyhedron seg = Polyhedron::from_v(1, {qvec({0}), qvec({1})}, {}, {});
    auto fan = normal_fan(seg);
    REQUIRE(fan.size() == 2);
    std::set<ZVec> rays;
    for (const auto& c : fan)
        for (const auto& r : c.rays()) rays.insert(r);
    CHECK(rays.count(zvec({1})));
    CHECK(rays.count(zvec({-1})));
}

TEST_CASE("normal fan of the unit square is the four orthants") {
    Polyhedron square = Polyhedron::from_v(
        2, {qvec({0, 0}), qvec({1, 0}), qvec({0, 1}), qvec({1, 1})}, {}, {});
    auto fan = normal_fan(square);
    REQUIRE(fan.size() == 4);
    for (const auto& c : fan) {
        CHECK(c.dim() == 2);
        CHECK(c.is_cone());
    }
}

TEST_CASE("normal fan is complete: 200 random directions are covered") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-5, 5);
    std::vector<QVec> pts;
    for (int i = 0; i < 7; ++i) pts.push_back(qvec({d(rng), d(rng), d(rng)}));
    Polyhedron poly = Polyhedron::from_v(3, pts, {}, {});
    auto fan = normal_fan(poly);
    std::uniform_int_distribution<int> dir(-20, 20);
    for (int s = 0; s < 200; ++s) {
        QVec w = qvec({dir(rng), dir(rng), dir(rng)});
        bool covered = false;
        for (const auto& c : fan)
            if (c.contains(w)) covered = true;
        CHECK(covered);
    }
}

TEST_CASE("minkowski sum of cones") {
    Polyhedron a = Polyhedron::cone_from_generators(2, {qvec({1, 0})});
    Polyhedron b = Polyhedron::cone_from_generators(2, {qvec({0, 1})});
    Polyhedron s = minkowski_sum_cones(a, b);
    CHECK(s.dim() == 2);
    CHECK(s.contains(qvec({3, 4})));
    CHECK(!s.contains(qvec({-1, 0})));
    Polyhedron d = minkowski_sum_cones(a, negated_cone(a));
    CHECK(d.dim() == 1);
    CHECK(d.contains(qvec({-2, 0})));
}

TEST_CASE("relative interior point lies in the relative interior") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<QVec> pts, rays;
        for (int i = 0; i < 3; ++i) pts.push_back(qvec({d(rng), d(rng), d(rng)}));
        for (int i = 0; i < 2; ++i) rays.push_back(qvec({d(rng), d(rng), d(rng)}));
        Polyhedron p = Polyhedron::from_v(3, pts, rays, {});
        if (p.is_empty()) continue;
        CHECK(p.contains_in_relint(p.relative_interior_point()));
    }
}

TEST_CASE("product of polyhedra") {
    Polyhedron a = Polyhedron::from_h(1, {ge({1}, 0)}, {});
    Polyhedron b = Polyhedron::from_v(2, {qvec({1, 1})}, {}, {});
    Polyhedron p = product_polyhedra(a, b);
    CHECK(p.ambient_dim() == 3);
    CHECK(p.dim() == 1);
    CHECK(p.contains(qvec({5, 1, 1})));
    CHECK(!p.contains(qvec({5, 1, 2})));
}

TEST_CASE("full space and spans") {
    Polyhedron f = Polyhedron::full_space(3);
    CHECK(f.dim() == 3);
    CHECK(f.lineality().size() == 3);
    CHECK(f.span_lattice().size() == 3);
    CHECK(f.contains(qvec({-7, 2, 9})));

    Polyhedron line = Polyhedron::from_v(2, {qvec({0, 0})}, {}, {qvec({2, 2})});
    REQUIRE(line.span_lattice().size() == 1);
    CHECK((line.span_lattice()[0] == zvec({1, 1}) || line.span_lattice()[0] == zvec({-1, -1})));
}
