#pragma once

#include <vector>

#include "scalar.hpp"

namespace grsat {

/// Small dense matrix over the coefficient field. Row-major.
template <Field K>
class Mat {
public:
    Mat() : r_(0), c_(0) {}
    Mat(size_t r, size_t c, K zero) : r_(r), c_(c), a_(r * c, zero) {}

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    K& at(size_t i, size_t j) { return a_[i * c_ + j]; }
    const K& at(size_t i, size_t j) const { return a_[i * c_ + j]; }

    bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    static Mat identity(size_t n, K zero, K one) {
        Mat m(n, n, zero);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = one;
        return m;
    }

    Mat transposed() const {
        Mat m(c_, r_, c_ * r_ ? a_[0] - a_[0] : K());
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    /// this * o
    Mat mul(const Mat& o, K zero) const {
        Mat m(r_, o.c_, zero);
        for (size_t i = 0; i < r_; ++i)
            for (size_t k = 0; k < c_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (size_t j = 0; j < o.c_; ++j)
                    m.at(i, j) += at(i, k) * o.at(k, j);
            }
        return m;
    }

    /// In-place reduced row echelon form; returns pivot columns in order.
    /// Pivoting is deterministic: leftmost column, first usable row.
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t row = 0;
        for (size_t col = 0; col < c_ && row < r_; ++col) {
            size_t sel = row;
            while (sel < r_ && at(sel, col).is_zero()) ++sel;
            if (sel == r_) continue;
            if (sel != row)
                for (size_t j = 0; j < c_; ++j) std::swap(at(sel, j), at(row, j));
            K inv = at(row, col).inv();
            for (size_t j = col; j < c_; ++j) at(row, j) = at(row, j) * inv;
            for (size_t i = 0; i < r_; ++i) {
                if (i == row || at(i, col).is_zero()) continue;
                K f = at(i, col);
                for (size_t j = col; j < c_; ++j)
                    at(i, j) = at(i, j) - f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    size_t rank() const {
        Mat tmp = *this;
        return tmp.rref().size();
    }

    /// Basis of the right kernel {x : A x = 0}, canonical from the RREF.
    /// Each column of the result is one basis vector.
    Mat right_kernel(K zero, K one) const {
        Mat R = *this;
        auto pivots = R.rref();
        std::vector<bool> is_pivot(c_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<size_t> free_cols;
        for (size_t j = 0; j < c_; ++j)
            if (!is_pivot[j]) free_cols.push_back(j);
        Mat ker(c_, free_cols.size(), zero);
        for (size_t k = 0; k < free_cols.size(); ++k) {
            size_t f = free_cols[k];
            ker.at(f, k) = one;
            for (size_t i = 0; i < pivots.size(); ++i)
                ker.at(pivots[i], k) = zero - R.at(i, f);
        }
        return ker;
    }

private:
    size_t r_, c_;
    std::vector<K> a_;
};

/// Solve x * A = b for a single row vector b, if possible.
/// Returns false when b is not in the row space of A.
template <Field K>
bool solve_left(const Mat<K>& A, const std::vector<K>& b, std::vector<K>& x, K zero, K one) {
    // transpose to a column problem: A^T x^T = b^T, then eliminate
    size_t n = A.rows(), m = A.cols();
    Mat<K> aug(m, n + 1, zero);
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = A.at(j, i);
        aug.at(i, n) = b[i];
    }
    auto pivots = aug.rref();
    x.assign(n, zero);
    for (size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == n) return false; // inconsistent
        x[pivots[i]] = aug.at(i, n);
    }
    (void)one;
    return true;
}

} // namespace grsat
