#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tropint/matroid.hpp"
#include "tropint/moduli.hpp"

#include <random>
#include <set>
#include <sstream>

using namespace tropint;

namespace {

RationalCurve curve(size_t n, const std::vector<std::vector<size_t>>& splits) {
    std::vector<std::pair<std::vector<size_t>, Rat>> s;
    for (const auto& sp : splits) s.emplace_back(sp, Rat(1));
    return RationalCurve(n, std::move(s));
}

std::string metric_string(const MetricVector& m) {
    std::ostringstream os;
    for (size_t i = 0; i < m.d.size(); ++i) {
        if (i) os << " ";
        os << rat_to_string(m.d[i]);
    }
    return os.str();
}

// decode a pooled homogeneous ray back into the split it represents
std::vector<size_t> decode_ray(size_t n, const ZVec& row) {
    std::set<size_t> members;
    size_t idx = 1;
    for (size_t i = 1; i + 1 < n; ++i)
        for (size_t j = i + 1; j < n; ++j, ++idx)
            if (row[idx] != 0) {
                members.insert(i);
                members.insert(j);
            }
    return std::vector<size_t>(members.begin(), members.end());
}

std::set<std::set<std::vector<size_t>>> cone_split_sets(const TropicalCycle& x, size_t n) {
    PolyhedralComplex::IndexedForm form = x.complex.indexed_form();
    std::set<std::set<std::vector<size_t>>> out;
    for (const auto& cone : form.cells) {
        std::set<std::vector<size_t>> splits;
        for (size_t g : cone) {
            if (form.generators[g][0] != 0) continue;  // apex
            splits.insert(decode_ray(n, form.generators[g]));
        }
        out.insert(std::move(splits));
    }
    return out;
}

RationalCurve random_curve(size_t n, std::mt19937& rng) {
    // random trivalent type dropped to a random subset of its splits, with
    // random positive rational lengths
    std::vector<PrueferSequence> cones = enumerate_m0n_cones(n);
    std::uniform_int_distribution<size_t> pick(0, cones.size() - 1);
    RationalCurve maximal = pruefer_to_curve(cones[pick(rng)]);
    std::uniform_int_distribution<int> keep(0, 2), num(1, 7), den(1, 4);
    std::vector<std::pair<std::vector<size_t>, Rat>> splits;
    for (const auto& [s, len] : maximal.splits()) {
        if (keep(rng) == 0) continue;
        splits.emplace_back(s, Rat(num(rng), den(rng)));
    }
    return RationalCurve(n, std::move(splits));
}

}  // namespace

TEST_CASE("metric vector of a single split curve in M06") {
    RationalCurve c = curve(6, {{1, 2, 3, 4}});
    CHECK(metric_string(curve_to_metric(c)) == "0 0 0 1 1 0 0 1 1 0 1 1 1 1 0");
}

TEST_CASE("curve with no bounded edges has the zero metric") {
    RationalCurve c = curve(5, {});
    MetricVector m = curve_to_metric(c);
    for (const auto& v : m.d) CHECK(v == 0);
}

TEST_CASE("metric reconstruction recovers the single split") {
    MetricVector m;
    m.n = 6;
    m.d = QVec(15, Rat(0));
    std::istringstream is("0 0 0 1 1 0 0 1 1 0 1 1 1 1 0");
    for (auto& v : m.d) {
        std::string tok;
        is >> tok;
        v = parse_rational(tok);
    }
    RationalCurve c = metric_to_curve(m);
    REQUIRE(c.splits().size() == 1);
    CHECK(c.splits()[0].first == std::vector<size_t>({1, 2, 3, 4}));
    CHECK(c.splits()[0].second == 1);
}

TEST_CASE("zero metric reconstructs the star curve") {
    MetricVector m;
    m.n = 4;
    m.d = QVec(6, Rat(0));
    CHECK(metric_to_curve(m).splits().empty());
}

TEST_CASE("four point condition") {
    RationalCurve c = curve(6, {{1, 2}, {1, 2, 3}});
    CHECK(four_point_check(curve_to_metric(c)).ok);
    MetricVector bad;
    bad.n = 4;
    bad.d = QVec{Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1)};
    // d(1,2) = d(3,4) = 1, everything else 0: 1+1 > max(0,0)
    FourPointResult r = four_point_check(bad);
    CHECK(!r.ok);
    CHECK_THROWS_AS(metric_to_curve(bad), NotATreeMetric);
}

TEST_CASE("buneman round trip with phi shifts") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<size_t> nn(4, 8);
    std::uniform_int_distribution<int> shift(-5, 5);
    for (int trial = 0; trial < 40; ++trial) {
        size_t n = nn(rng);
        RationalCurve c = random_curve(n, rng);
        MetricVector m = curve_to_metric(c);
        // random Φ_n shift
        QVec a(n);
        for (auto& v : a) v = Rat(shift(rng), 1 + (shift(rng) & 1));
        for (size_t i = 1; i <= n; ++i)
            for (size_t j = i + 1; j <= n; ++j)
                m.d[pair_index(n, i, j)] += a[i - 1] + a[j - 1];
        RationalCurve back = metric_to_curve(m);
        CHECK(back == c);
    }
}

TEST_CASE("pruefer sequence of the example tree") {
    // 4-marked curve: leaves 1,3 at one vertex, 2,4 at the other
    PrueferSequence p = curve_to_pruefer(curve(4, {{1, 3}}));
    CHECK(p.entries == std::vector<size_t>({5, 6, 5, 6}));
    CHECK(p.is_ordered());
}

TEST_CASE("star curve gives the constant sequence") {
    PrueferSequence p = curve_to_pruefer(curve(4, {}));
    CHECK(p.entries == std::vector<size_t>({5, 5, 5}));
}

TEST_CASE("the worked 8-marked example in both directions") {
    std::vector<size_t> entries = {9, 9, 10, 10, 11, 11, 12, 12, 13, 13, 14, 14};
    RationalCurve c = pruefer_to_curve(PrueferSequence{8, entries});
    std::set<std::vector<size_t>> got;
    for (const auto& [s, len] : c.splits()) got.insert(s);
    std::set<std::vector<size_t>> expected = {
        {1, 2}, {3, 4}, {5, 6}, {1, 2, 3, 4}};
    // the fifth split {7,8} normalizes to the complement side {1,...,6}
    expected.insert({1, 2, 3, 4, 5, 6});
    CHECK(got == expected);
    CHECK(curve_to_pruefer(c).entries == entries);
}

TEST_CASE("pruefer validation rejects malformed sequences") {
    CHECK_THROWS(pruefer_to_curve(PrueferSequence{4, {5, 6, 7}}));
    CHECK_THROWS(pruefer_to_curve(PrueferSequence{4, {5, 5, 9, 9}}));
}

TEST_CASE("cone counts follow the double factorial") {
    CHECK(enumerate_m0n_cones(4).size() == 3);
    CHECK(enumerate_m0n_cones(5).size() == 15);
    CHECK(enumerate_m0n_cones(6).size() == 105);
    // lexicographic and ordered
    auto cones = enumerate_m0n_cones(5);
    for (size_t i = 0; i + 1 < cones.size(); ++i) CHECK(cones[i] < cones[i + 1]);
    for (const auto& p : cones) CHECK(p.is_ordered());
}

TEST_CASE("pruefer round trip on all types for n = 5, 6, 7") {
    for (size_t n : {size_t(5), size_t(6), size_t(7)}) {
        for (const auto& p : enumerate_m0n_cones(n)) {
            RationalCurve c = pruefer_to_curve(p);
            CHECK(curve_to_pruefer(c) == p);
        }
    }
}

TEST_CASE("m0n is balanced with unit weights") {
    TropicalCycle m5 = m0n(5);
    CHECK(m5.complex.size() == 15);
    CHECK(m5.ambient_dim() == 6);
    for (const auto& w : m5.weights) CHECK(w == 1);
    CHECK(is_balanced(m5));
    CHECK(m5.dim() == 3);  // n-3 plus the lineality line
}

TEST_CASE("m0n(6) is balanced with unit weights") {
    TropicalCycle m6 = m0n(6);
    CHECK(m6.complex.size() == 105);
    CHECK(is_balanced(m6));
}

TEST_CASE("psi products are balanced subfans of expected dimension") {
    TropicalCycle p1 = psi_product(6, {Int(1), Int(0), Int(0), Int(0), Int(0), Int(0)});
    CHECK(p1.dim() == 3);  // n-3-K plus the lineality line
    CHECK(is_balanced(p1));
    for (const auto& w : p1.weights) CHECK(w == 1);
    TropicalCycle p2 = psi_product(7, {Int(2), Int(0), Int(0), Int(0), Int(0), Int(0), Int(0)});
    CHECK(p2.dim() == 3);
    CHECK(is_balanced(p2));
}

TEST_CASE("m0n support agrees with the bergman fan of the complete graph") {
    TropicalCycle m5 = m0n(5);
    BergmanFan bk4 = bergman_fan_rincon(complete_graph_matroid(4));
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-3, 3), c(0, 2);
    int agreements = 0;
    for (int s = 0; s < 80; ++s) {
        QVec p(6);
        if (s % 2) {
            for (auto& v : p) v = d(rng);
        } else {
            std::uniform_int_distribution<size_t> pick(0, m5.complex.size() - 1);
            const Polyhedron& cone = m5.complex.cell(pick(rng));
            p.assign(6, Rat(0));
            for (const auto& r : cone.rays())
                for (size_t i = 0; i < 6; ++i) p[i] += Rat(c(rng) * r[i]);
            for (size_t i = 0; i < 6; ++i) p[i] += Rat(d(rng));
        }
        CHECK(in_support(m5, p) == in_support(bk4.cycle, p));
        ++agreements;
    }
    CHECK(agreements == 80);
}

TEST_CASE("moduli point conversions invert each other") {
    std::mt19937 rng(55);
    for (int trial = 0; trial < 15; ++trial) {
        RationalCurve c = random_curve(7, rng);
        RationalCurve back = curve_from_moduli_point(7, curve_to_moduli_point(c));
        CHECK(back == c);
    }
}

TEST_CASE("psi products on small moduli spaces") {
    // all exponents zero: the moduli fan itself
    TropicalCycle full = psi_product(5, std::vector<Int>(5, Int(0)));
    CHECK(full.complex.size() == 15);

    // top degree: a single point with multinomial weight
    TropicalCycle pt = psi_product(4, {Int(1), Int(0), Int(0), Int(0)});
    REQUIRE(pt.weights.size() == 1);
    CHECK(pt.weights[0] == 1);
    TropicalCycle pt2 = psi_product(5, {Int(1), Int(1), Int(0), Int(0), Int(0)});
    REQUIRE(pt2.weights.size() == 1);
    CHECK(pt2.weights[0] == 2);
    TropicalCycle pt3 = psi_product(5, {Int(2), Int(0), Int(0), Int(0), Int(0)});
    REQUIRE(pt3.weights.size() == 1);
    CHECK(pt3.weights[0] == 1);

    CHECK_THROWS_AS(psi_product(4, {Int(2), Int(0), Int(0), Int(0)}), DegreeTooLarge);
}

TEST_CASE("psi product matches the brute-force valence filter") {
    // the cautionary unsorted example
    const size_t n = 7;
    std::vector<Int> k = {0, 0, 0, 0, 0, 1, 1};
    TropicalCycle psi = psi_product(n, k);
    CHECK(is_balanced(psi));

    // brute force: all ordered moduli sequences of order 7, length d = 2,
    // filtered by the valence condition
    const size_t d = 2, len = n + d - 1;
    std::set<std::set<std::vector<size_t>>> expected;
    std::vector<size_t> seq(len, 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == len) {
            PrueferSequence p{n, seq};
            std::map<size_t, size_t> occ;
            for (size_t e : seq) ++occ[e];
            if (occ.size() != d + 1) return;
            for (const auto& [e, cnt] : occ)
                if (cnt < 2) return;
            if (!p.is_ordered()) return;
            // valence condition: l(a) = 2 + Σ k over leaf positions of a
            for (const auto& [a, cnt] : occ) {
                Int want = 2;
                for (size_t pos = 0; pos < len; ++pos)
                    if (seq[pos] == a && pos < n) want += k[pos];
                if (Int(cnt) != want) return;
            }
            RationalCurve c = pruefer_to_curve(p);
            std::set<std::vector<size_t>> splits;
            for (const auto& [s, l] : c.splits()) splits.insert(s);
            expected.insert(std::move(splits));
            return;
        }
        for (size_t label = n + 1; label <= n + d + 1; ++label) {
            seq[i] = label;
            rec(i + 1);
        }
        seq[i] = 0;
    };
    rec(0);
    CHECK(!expected.empty());
    CHECK(cone_split_sets(psi, n) == expected);
    // includes the sequence the ordered algorithm alone would miss
    std::set<std::vector<size_t>> special;
    {
        RationalCurve c =
            pruefer_to_curve(PrueferSequence{7, {8, 8, 9, 9, 10, 8, 8, 10}});
        for (const auto& [s, l] : c.splits()) special.insert(s);
    }
    CHECK(expected.count(special) == 1);
}

TEST_CASE("local m0n counts resolutions per vertex") {
    // one 4-valent vertex in M0,6: 3 maximal cones
    RationalCurve tau1 = curve(6, {{1, 2}, {3, 4}});
    TropicalCycle local1 = local_m0n(tau1);
    CHECK(local1.complex.size() == 3);
    CHECK(is_balanced(local1));

    // trivalent: a single cone
    RationalCurve taumax = pruefer_to_curve(enumerate_m0n_cones(6)[0]);
    CHECK(local_m0n(taumax).complex.size() == 1);

    // valence profile (4,4) in M0,8: 3*3 = 9 cones; cross-check by filtering
    RationalCurve tau2 = curve(8, {{1, 2}, {5, 6}, {1, 2, 3, 4}});
    TropicalCycle local2 = local_m0n(tau2);
    CHECK(local2.complex.size() == 9);
    std::set<std::set<std::vector<size_t>>> expected;
    std::set<std::vector<size_t>> tau_splits;
    for (const auto& [s, l] : tau2.splits()) tau_splits.insert(s);
    for (const auto& p : enumerate_m0n_cones(8)) {
        RationalCurve c = pruefer_to_curve(p);
        std::set<std::vector<size_t>> splits;
        for (const auto& [s, l] : c.splits()) splits.insert(s);
        bool refines = true;
        for (const auto& t : tau_splits)
            if (!splits.count(t)) refines = false;
        if (refines) expected.insert(std::move(splits));
    }
    CHECK(cone_split_sets(local2, 8) == expected);
    CHECK(is_balanced(local2));
}

TEST_CASE("local basis dimensions and spans") {
    // the vertex of M0,5: dim = 0 + (C(5,2) - 5) = 5
    RationalCurve vertex5 = curve(5, {});
    LocalBasis b5 = local_basis(vertex5);
    CHECK(b5.dimension == 5);
    CHECK(b5.vectors.size() == 5);

    // a maximal type: basis = its own rays
    RationalCurve max6 = pruefer_to_curve(enumerate_m0n_cones(6)[0]);
    LocalBasis bmax = local_basis(max6);
    CHECK(bmax.dimension == 3);
    CHECK(bmax.vectors.size() == 3);

    // one 4-valent vertex in M0,6
    RationalCurve tau = curve(6, {{1, 2}, {1, 2, 3}});
    LocalBasis bt = local_basis(tau);
    CHECK(bt.dimension == 4);  // dim tau + (C(4,2) - 4)

    // rank check modulo the lineality and span containment of local rays
    for (const RationalCurve& t : {vertex5, max6, tau}) {
        size_t n = t.leaves();
        size_t dim = moduli_ambient_dim(n);
        LocalBasis lb = local_basis(t);
        std::vector<ZVec> stacked = lb.vectors;
        stacked.push_back(ZVec(dim, Int(1)));
        CHECK(rank_of_rows(stacked, dim) == lb.dimension + 1);
        // every ray of every cone containing t lies in the span
        TropicalCycle local = local_m0n(t);
        PolyhedralComplex::IndexedForm form = local.complex.indexed_form();
        for (const auto& gen : form.generators) {
            if (gen[0] != 0) continue;
            std::vector<ZVec> with_ray = stacked;
            with_ray.push_back(ZVec(gen.begin() + 1, gen.end()));
            CHECK(rank_of_rows(with_ray, dim) == lb.dimension + 1);
        }
    }
}

TEST_CASE("lemma relation identities hold") {
    for (auto [n, splits] :
         std::vector<std::pair<size_t, std::vector<std::vector<size_t>>>>{
             {5, {}},
             {6, {{1, 2}}},
             {7, {{1, 2}, {1, 2, 3}}},
             {8, {{1, 2}, {5, 6}}}}) {
        RationalCurve tau = curve(n, splits);
        CurveTree tree = curve_tree(tau);
        for (size_t v = 0; v < tree.vertex_count; ++v) {
            if (tree.valence[v] <= 3) continue;
            LemmaReport rep = lemma_relations_check(tau, v);
            CHECK(rep.identity_sum);
            CHECK(rep.identity_rays);
            CHECK(rep.checked_rays > 0);
        }
    }
}

TEST_CASE("curve strings parse and print") {
    RationalCurve c = parse_curve(13,
                                  "(2,3) + (2,3,4) + (1,12) + (1,2,3,4,12) + "
                                  "(9,10) + (8,9,10) + (11,13) + (8,9,10,11,13)");
    CHECK(c.splits().size() == 8);
    RationalCurve again = parse_curve(13, curve_to_string(c));
    CHECK(again == c);

    RationalCurve with_lengths = parse_curve(5, "(1,2): 3/2 + (1,2,3): 2");
    CHECK(with_lengths.splits()[0].second == Rat(3, 2));
    CHECK(parse_curve(5, curve_to_string(with_lengths)) == with_lengths);

    CHECK_THROWS_AS(parse_curve(5, "(1,2"), ParseError);
    CHECK_THROWS(parse_curve(5, "(1,2) + (1,3)"));  // incompatible splits
}

TEST_CASE("curve tree valences") {
    CurveTree t = curve_tree(curve(6, {{1, 2}, {3, 4}}));
    CHECK(t.vertex_count == 3);
    std::multiset<size_t> vals(t.valence.begin(), t.valence.end());
    CHECK(vals == std::multiset<size_t>({3, 3, 4}));
}
