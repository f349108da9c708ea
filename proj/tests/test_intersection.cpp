#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tropint/intersection.hpp"

#include <map>
#include <random>

using namespace tropint;

namespace {

QVec qvec(const std::vector<int>& v) {
    QVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

TropicalCycle line_at(const QVec& apex) {
    std::vector<Polyhedron> cells;
    for (const auto& dir : {std::vector<int>{1, 1}, {-1, 0}, {0, -1}})
        cells.push_back(Polyhedron::from_v(2, {apex}, {qvec(dir)}, {}));
    TropicalCycle x;
    x.complex = PolyhedralComplex::from_cells(2, std::move(cells));
    x.weights = {1, 1, 1};
    return x;
}

// random balanced fan curve: random rays with positive weights closed up by
// the balancing ray
TropicalCycle random_fan_curve(std::mt19937& rng, int max_rays) {
    std::uniform_int_distribution<int> d(-3, 3), w(1, 2), nr(2, max_rays - 1);
    int k = nr(rng);
    std::map<ZVec, Int> dirs;  // direction -> weight, merged
    for (int i = 0; i < k; ++i) {
        ZVec r(2);
        r[0] = d(rng);
        r[1] = d(rng);
        if (is_zero(r)) continue;
        dirs[primitive(r)] += w(rng);
    }
    ZVec sum(2, Int(0));
    for (const auto& [r, wi] : dirs) sum = add(sum, scale(wi, r));
    if (!is_zero(sum)) dirs[primitive(negate(sum))] += content(sum);
    std::vector<Polyhedron> cells;
    std::vector<Int> weights;
    for (const auto& [r, wi] : dirs) {
        if (wi == 0) continue;
        cells.push_back(Polyhedron::from_v(2, {qvec({0, 0})}, {to_rational(r)}, {}));
        weights.push_back(wi);
    }
    TropicalCycle x;
    x.complex = PolyhedralComplex::from_cells(2, std::move(cells));
    x.weights = std::move(weights);
    return x;
}

}  // namespace

TEST_CASE("line self-intersection is the origin with weight 1") {
    TropicalCycle line = line_at(qvec({0, 0}));
    std::vector<IntersectionWitness> wit;
    TropicalCycle st = stable_intersect(line, line, &wit);
    REQUIRE(st.complex.size() == 1);
    CHECK(st.dim() == 0);
    CHECK(st.weights[0] == 1);
    CHECK(st.complex.cell(0).contains(qvec({0, 0})));
    REQUIRE(wit.size() == 1);
    CHECK(wit[0].pairs.size() == 1);

    TropicalCycle di = diagonal_intersect(line, line);
    CHECK(equal_cycles(st, di));
}

TEST_CASE("intersection with R^n is the identity") {
    TropicalCycle line = line_at(qvec({1, 2}));
    TropicalCycle st = stable_intersect(unit_cycle(2), line);
    CHECK(equal_cycles(st, line));
    CHECK(equal_cycles(stable_intersect(line, unit_cycle(2)), line));
}

TEST_CASE("R1 times R1 in R1") {
    TropicalCycle st = stable_intersect(unit_cycle(1), unit_cycle(1));
    REQUIRE(st.complex.size() == 1);
    CHECK(st.dim() == 1);
    CHECK(st.weights[0] == 1);
    TropicalCycle di = diagonal_intersect(unit_cycle(1), unit_cycle(1));
    CHECK(equal_cycles(st, di));
}

TEST_CASE("two translated lines in general position") {
    TropicalCycle a = line_at(qvec({0, 0}));
    TropicalCycle b = line_at(qvec({3, 1}));
    std::vector<IntersectionWitness> wit;
    TropicalCycle st = stable_intersect(a, b, &wit);
    REQUIRE(st.complex.size() == 1);
    CHECK(st.weights[0] == 1);
    // the diagonal ray of a crosses the horizontal ray of b at (1,1)... the
    // unique intersection point of the two supports
    TropicalCycle di = diagonal_intersect(a, b);
    CHECK(equal_cycles(st, di));
    // witness point lies in both supports
    REQUIRE(wit.size() == 1);
    CHECK(in_support(a, wit[0].point));
    CHECK(in_support(b, wit[0].point));
}

TEST_CASE("low-dimensional product is empty") {
    TropicalCycle pt;
    pt.complex = PolyhedralComplex::from_cells(
        2, {Polyhedron::from_v(2, {qvec({0, 0})}, {}, {})});
    pt.weights = {1};
    CHECK(stable_intersect(pt, pt).is_empty());
    CHECK(diagonal_intersect(pt, pt).is_empty());
}

TEST_CASE("commutativity, dimension, balancing on random curve pairs") {
    std::mt19937 rng(4242);
    int done = 0;
    while (done < 6) {
        TropicalCycle a = random_fan_curve(rng, 6);
        TropicalCycle b = random_fan_curve(rng, 6);
        if (a.is_empty() || b.is_empty()) continue;
        ++done;
        REQUIRE(is_balanced(a));
        REQUIRE(is_balanced(b));
        TropicalCycle ab = stable_intersect(a, b);
        TropicalCycle ba = stable_intersect(b, a);
        CHECK(equal_cycles(ab, ba));
        CHECK(is_balanced(ab));
        if (!ab.is_empty()) CHECK(ab.dim() == 0);
        // oracle equivalence
        TropicalCycle di = diagonal_intersect(a, b);
        CHECK(equal_cycles(ab, di));
    }
}

TEST_CASE("pushforward transports weights with lattice index") {
    // the diagonal line in R^2 with weight 1 maps to R^1 with index 1
    TropicalCycle diag;
    diag.complex = PolyhedralComplex::from_cells(
        2, {Polyhedron::from_v(2, {qvec({0, 0})}, {}, {qvec({1, 1})})});
    diag.weights = {1};
    TropicalCycle img = pushforward_forget_coordinates(diag, 1);
    REQUIRE(img.complex.size() == 1);
    CHECK(img.dim() == 1);
    CHECK(img.weights[0] == 1);

    // the line spanned by (1,2): projection maps its lattice Z(1,2) onto
    // 1·Z, full image lattice, index 1; but (2,1)-direction with doubled
    // lattice picks up index 2
    TropicalCycle skew;
    skew.complex = PolyhedralComplex::from_cells(
        2, {Polyhedron::from_v(2, {qvec({0, 0})}, {}, {qvec({2, 4})})});
    skew.weights = {1};
    CHECK(pushforward_forget_coordinates(skew, 1).weights[0] == 1);
}

TEST_CASE("surface self-intersection in R3 equals the diagonal oracle") {
    // the standard tropical plane: divisor of max(x,y,z,0) on R^3
    TropicalCycle plane = divisor(parse_polynomial("max(x,y,z,0)"), unit_cycle(3));
    REQUIRE(plane.dim() == 2);
    TropicalCycle st = stable_intersect(plane, plane);
    CHECK(!st.is_empty());
    CHECK(st.dim() == 1);
    CHECK(is_balanced(st));
    TropicalCycle di = diagonal_intersect(plane, plane);
    CHECK(equal_cycles(st, di));
}
