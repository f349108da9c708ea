#pragma once

#include "tropint/arith.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace tropint {

/// Dense exact matrix, row-major.
template <typename T>
class Mat {
  public:
    Mat() = default;
    Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Mat identity(size_t n) {
        Mat m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Mat from_rows(const std::vector<std::vector<T>>& rows, size_t cols) {
        Mat m(rows.size(), cols);
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    std::vector<T> col(size_t j) const {
        std::vector<T> c(rows_);
        for (size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void append_row(const std::vector<T>& r) {
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    Mat transposed() const {
        Mat t(cols_, rows_);
        for (size_t i = 0; i < rows_; ++i)
            for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Mat operator*(const Mat& a, const Mat& b) {
        Mat c(a.rows(), b.cols());
        for (size_t i = 0; i < a.rows(); ++i)
            for (size_t k = 0; k < a.cols(); ++k) {
                if (a(i, k) == 0) continue;
                for (size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using ZMat = Mat<Int>;
using QMat = Mat<Rat>;

QMat to_rational(const ZMat& m);

// Exact Gaussian elimination. Pivot choice is first-nonzero, so results are
// deterministic for a given input.

size_t rank(QMat m);
size_t rank_of_rows(const std::vector<QVec>& rows, size_t cols);
size_t rank_of_rows(const std::vector<ZVec>& rows, size_t cols);

Rat det(QMat m);

/// Basis of the right kernel {x : m x = 0}.
std::vector<QVec> kernel(const QMat& m);

/// One solution of m x = b, or nullopt if inconsistent.
std::optional<QVec> solve(const QMat& m, const QVec& b);

/// Is v in the rational span of the given vectors?
bool in_span(const std::vector<QVec>& span_vectors, const QVec& v, size_t dim);
bool in_span(const std::vector<ZVec>& span_vectors, const QVec& v, size_t dim);

}  // namespace tropint
