#include "tropint/hnf.hpp"

#include <algorithm>

namespace tropint {

namespace {

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

struct ColumnOps {
    ZMat& h;
    ZMat& u;

    void swap_cols(size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < h.rows(); ++i) std::swap(h(i, a), h(i, b));
        for (size_t i = 0; i < u.rows(); ++i) std::swap(u(i, a), u(i, b));
    }
    void negate_col(size_t a) {
        for (size_t i = 0; i < h.rows(); ++i) h(i, a) = -h(i, a);
        for (size_t i = 0; i < u.rows(); ++i) u(i, a) = -u(i, a);
    }
    // col_a -= q * col_b
    void submul_col(size_t a, const Int& q, size_t b) {
        if (q == 0) return;
        for (size_t i = 0; i < h.rows(); ++i) h(i, a) -= q * h(i, b);
        for (size_t i = 0; i < u.rows(); ++i) u(i, a) -= q * u(i, b);
    }
};

}  // namespace

HnfResult hnf(const ZMat& m) {
    const size_t rows = m.rows(), n = m.cols();
    HnfResult res;
    res.hnf = m;
    res.transform = ZMat::identity(n);
    ColumnOps ops{res.hnf, res.transform};
    ZMat& h = res.hnf;

    size_t c = n;  // active region is [0, c)
    for (size_t ii = rows; ii-- > 0;) {
        if (c == 0) break;
        const size_t i = ii;
        // gather the gcd of row i over the active region at column c-1,
        // always reducing against the current smallest pivot
        while (true) {
            size_t best = c;
            for (size_t j = 0; j < c; ++j) {
                if (h(i, j) == 0) continue;
                if (best == c ||
                    boost::multiprecision::abs(h(i, j)) < boost::multiprecision::abs(h(i, best)))
                    best = j;
            }
            if (best == c) break;  // row is zero on the active region
            ops.swap_cols(best, c - 1);
            if (h(i, c - 1) < 0) ops.negate_col(c - 1);
            bool clean = true;
            for (size_t j = 0; j < c - 1; ++j) {
                if (h(i, j) == 0) continue;
                ops.submul_col(j, floor_div(h(i, j), h(i, c - 1)), c - 1);
                if (h(i, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(i, c - 1) == 0) continue;  // no pivot for this row
        // reduce entries of row i to the right of its pivot
        for (size_t j = c; j < n; ++j) ops.submul_col(j, floor_div(h(i, j), h(i, c - 1)), c - 1);
        res.pivot_cols.push_back(c - 1);
        res.pivot_rows.push_back(i);
        --c;
    }
    std::reverse(res.pivot_cols.begin(), res.pivot_cols.end());
    std::reverse(res.pivot_rows.begin(), res.pivot_rows.end());
    return res;
}

std::vector<ZVec> kernel_lattice_basis(const ZMat& m) {
    HnfResult r = hnf(m);
    size_t zero_cols = m.cols() - r.rank();
    std::vector<ZVec> basis;
    basis.reserve(zero_cols);
    for (size_t j = 0; j < zero_cols; ++j) basis.push_back(r.transform.col(j));
    return basis;
}

std::vector<ZVec> lattice_basis_of_span(const std::vector<ZVec>& vectors) {
    if (vectors.empty()) return {};
    const size_t n = vectors[0].size();
    ZMat m = ZMat::from_rows(vectors, n);
    std::vector<ZVec> orth = kernel_lattice_basis(m);
    ZMat m2(0, n);
    for (const auto& v : orth) m2.append_row(v);
    return kernel_lattice_basis(m2);
}

std::vector<ZVec> lattice_basis_of_span(const std::vector<QVec>& vectors) {
    std::vector<ZVec> cleared;
    cleared.reserve(vectors.size());
    for (const auto& v : vectors) cleared.push_back(primitive(v));
    return lattice_basis_of_span(cleared);
}

std::vector<ZVec> lattice_basis_of_generated(const std::vector<ZVec>& vectors, size_t dim) {
    ZMat m(dim, vectors.size());
    for (size_t j = 0; j < vectors.size(); ++j)
        for (size_t i = 0; i < dim; ++i) m(i, j) = vectors[j][i];
    HnfResult r = hnf(m);
    size_t zero_cols = vectors.size() - r.rank();
    std::vector<ZVec> basis;
    for (size_t j = zero_cols; j < vectors.size(); ++j) basis.push_back(r.hnf.col(j));
    return basis;
}

Int lattice_index(const std::vector<ZVec>& generators_a, const std::vector<ZVec>& generators_b) {
    if (generators_a.empty() && generators_b.empty()) return 1;
    size_t n = generators_a.empty() ? generators_b[0].size() : generators_a[0].size();
    std::vector<ZVec> ba = lattice_basis_of_generated(generators_a, n);
    std::vector<ZVec> bb = lattice_basis_of_generated(generators_b, n);
    if (ba.size() != bb.size()) throw SpanMismatch("lattice generators span different spaces");
    size_t r = ba.size();
    if (r == 0) return 1;
    std::vector<ZVec> all = ba;
    all.insert(all.end(), bb.begin(), bb.end());
    if (rank_of_rows(all, n) != r) throw SpanMismatch("lattice generators span different spaces");
    // restrict both bases to a common set of independent coordinate rows
    QMat probe(r, n);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < n; ++j) probe(i, j) = Rat(bb[i][j]);
    // pick pivot columns of the echelon form of bb
    QMat ech = probe;
    std::vector<size_t> coords;
    {
        size_t row = 0;
        for (size_t c2 = 0; c2 < n && row < r; ++c2) {
            size_t p = row;
            while (p < r && ech(p, c2) == 0) ++p;
            if (p == r) continue;
            if (p != row)
                for (size_t j = 0; j < n; ++j) std::swap(ech(row, j), ech(p, j));
            Rat inv = Rat(1) / ech(row, c2);
            for (size_t j = 0; j < n; ++j) ech(row, j) *= inv;
            for (size_t i2 = 0; i2 < r; ++i2) {
                if (i2 == row || ech(i2, c2) == 0) continue;
                Rat f = ech(i2, c2);
                for (size_t j = 0; j < n; ++j) ech(i2, j) -= f * ech(row, j);
            }
            coords.push_back(c2);
            ++row;
        }
    }
    QMat ma(r, r), mb(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            ma(i, j) = Rat(ba[i][coords[j]]);
            mb(i, j) = Rat(bb[i][coords[j]]);
        }
    Rat idx = det(ma) / det(mb);
    if (idx < 0) idx = -idx;
    if (denominator(idx) != 1)
        throw std::invalid_argument("first lattice is not a sublattice of the second");
    return numerator(idx);
}

}  // namespace tropint
