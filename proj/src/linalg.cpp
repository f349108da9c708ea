#include "tropint/linalg.hpp"

namespace tropint {

QMat to_rational(const ZMat& m) {
    QMat q(m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
    return q;
}

// Row echelon in place; returns pivot columns.
static std::vector<size_t> echelonize(QMat& m) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
        Rat inv = Rat(1) / m(r, c);
        for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

size_t rank(QMat m) { return echelonize(m).size(); }

size_t rank_of_rows(const std::vector<QVec>& rows, size_t cols) {
    return rank(QMat::from_rows(rows, cols));
}

size_t rank_of_rows(const std::vector<ZVec>& rows, size_t cols) {
    QMat m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j) m(i, j) = Rat(rows[i][j]);
    return rank(m);
}

Rat det(QMat m) {
    if (m.rows() != m.cols()) return 0;
    Rat d = 1;
    size_t n = m.rows();
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            for (size_t j = 0; j < n; ++j) std::swap(m(c, j), m(p, j));
            d = -d;
        }
        d *= m(c, c);
        Rat inv = Rat(1) / m(c, c);
        for (size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) * inv;
            for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

std::vector<QVec> kernel(const QMat& m) {
    QMat e = m;
    std::vector<size_t> pivots = echelonize(e);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        QVec v(m.cols(), Rat(0));
        v[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -e(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVec> solve(const QMat& m, const QVec& b) {
    QMat aug(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<size_t> pivots = echelonize(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
    QVec x(m.cols(), Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, m.cols());
    return x;
}

bool in_span(const std::vector<QVec>& span_vectors, const QVec& v, size_t dim) {
    QMat m(span_vectors.size(), dim);
    for (size_t i = 0; i < span_vectors.size(); ++i)
        for (size_t j = 0; j < dim; ++j) m(i, j) = span_vectors[i][j];
    size_t r = rank(m);
    m.append_row(v);
    return rank(m) == r;
}

bool in_span(const std::vector<ZVec>& span_vectors, const QVec& v, size_t dim) {
    std::vector<QVec> q;
    q.reserve(span_vectors.size());
    for (const auto& w : span_vectors) q.push_back(to_rational(w));
    return in_span(q, v, dim);
}

}  // namespace tropint
