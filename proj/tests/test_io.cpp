#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tropint/io.hpp"
#include "tropint/moduli.hpp"

#include <random>

using namespace tropint;

namespace {

QVec qvec(const std::vector<int>& v) {
    QVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return out;
}

}  // namespace

TEST_CASE("cycle serialization round trip is exact") {
    std::vector<QVec> rays = {qvec({1, 1}), qvec({-1, 0}), qvec({0, -1})};
    TropicalCycle line;
    line.complex = PolyhedralComplex::from_fan_rays(2, rays, {{0}, {1}, {2}});
    line.weights = {Int(1), Int(2), Int(3)};
    std::string text = write_cycle(line);
    TropicalCycle back = read_cycle(text);
    CHECK(back.ambient_dim() == 2);
    CHECK(back.weights == line.weights);
    CHECK(equal_cycles(back, line));
    // bit-exact: a second write produces the same document
    CHECK(write_cycle(back) == text);
}

TEST_CASE("rational entries survive bit-exactly") {
    TropicalCycle seg;
    seg.complex = PolyhedralComplex::from_cells(
        1, {Polyhedron::from_v(1, {QVec{Rat(1, 3)}, QVec{Rat(7, 2)}}, {}, {})});
    seg.weights = {Int(5)};
    TropicalCycle back = read_cycle(write_cycle(seg));
    CHECK(equal_cycles(back, seg));
    CHECK(write_cycle(back) == write_cycle(seg));
}

TEST_CASE("local cone markers survive") {
    RationalCurve tau = parse_curve(6, "(1,2) + (3,4)");
    TropicalCycle local = local_m0n(tau);
    TropicalCycle back = read_cycle(write_cycle(local));
    REQUIRE(back.local_cone.has_value());
    CHECK(*back.local_cone == *local.local_cone);
    CHECK(back.complex.size() == local.complex.size());
    CHECK(is_balanced(back));
}

TEST_CASE("function serialization round trip") {
    RationalFunctionOnCycle f =
        RationalFunctionOnCycle::from_polynomial(parse_polynomial("max(x,y,0)"), 2);
    std::string text = write_function(f);
    RationalFunctionOnCycle back = read_function(text);
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> d(-8, 8);
    for (int s = 0; s < 40; ++s) {
        QVec p = qvec({d(rng), d(rng)});
        CHECK(back.evaluate(p) == f.evaluate(p));
    }
    CHECK(write_function(back) == text);
}

TEST_CASE("matroid serialization round trip") {
    Matroid m = complete_graph_matroid(4);
    Matroid back = read_matroid(write_matroid(m));
    CHECK(back.ground_size() == m.ground_size());
    CHECK(back.basis_masks() == m.basis_masks());

    QMat mat(2, 4);
    int vals[2][4] = {{1, -1, 0, 0}, {0, 0, 1, -1}};
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 4; ++j) mat(i, j) = vals[i][j];
    Matroid lin = Matroid::from_matrix(mat);
    Matroid lin_back = read_matroid(write_matroid(lin));
    CHECK(lin_back.basis_masks() == lin.basis_masks());
    CHECK(lin_back.realization().has_value());
}

TEST_CASE("malformed documents are rejected") {
    CHECK_THROWS(read_cycle("{}"));
    CHECK_THROWS(read_cycle("{\"ambient_dim\": 2, \"rays\": [[\"1\",\"0\"]], "
                            "\"maximal_cells\": [[0]], \"weights\": [\"1\",\"2\"]}"));
}
