#pragma once

// Dense matrices over exact scalars (Int or Rat), row-major.
// Vectors x are rows; a quadratic form A evaluates as x A x^t.

#include "wtc/numeric.hpp"

#include <cassert>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace wtc {

template <class T>
class Mat {
  public:
    Mat() : rows_(0), cols_(0) {}
    Mat(int rows, int cols, T fill = T(0))
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
        assert(rows >= 0 && cols >= 0);
    }
    Mat(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
        data_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& r : rows) {
            assert(static_cast<int>(r.size()) == cols_);
            for (const auto& v : r) data_.push_back(v);
        }
    }

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<size_t>(i) * cols_ + j];
    }
    const T& operator()(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<size_t>(i) * cols_ + j];
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator*(const Mat& o) const {
        assert(cols_ == o.rows_);
        Mat r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == T(0)) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }
    Mat operator+(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }
    Mat operator-(const Mat& o) const {
        assert(rows_ == o.rows_ && cols_ == o.cols_);
        Mat r = *this;
        for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }
    Mat operator*(const T& c) const {
        Mat r = *this;
        for (auto& v : r.data_) v *= c;
        return r;
    }

    Mat transposed() const {
        Mat r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    void swap_rows(int i, int j) {
        for (int k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(int i, int j) {
        for (int k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

    std::vector<T> row(int i) const {
        std::vector<T> r(cols_);
        for (int j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Mat& m) {
        for (int i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "[");
            for (int j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
        }
        return os << "]";
    }

  private:
    int rows_, cols_;
    std::vector<T> data_;
};

using IntMat = Mat<Int>;
using RatMat = Mat<Rat>;

inline RatMat to_rat(const IntMat& a) {
    RatMat r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = Rat(a(i, j));
    return r;
}

// Determinant by fraction-free expansion for small n, Gaussian for larger.
inline Rat det(const RatMat& a) {
    assert(a.rows() == a.cols());
    int n = a.rows();
    RatMat m = a;
    Rat d(1);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m(i, k) != 0) { piv = i; break; }
        if (piv < 0) return Rat(0);
        if (piv != k) { m.swap_rows(piv, k); d = -d; }
        d *= m(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rat f = m(i, k) / m(k, k);
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

inline Int det(const IntMat& a) {
    Rat d = det(to_rat(a));
    assert(d.get_den() == 1);
    return d.get_num();
}

inline int rank(RatMat m) {
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int piv = -1;
        for (int i = r; i < m.rows(); ++i)
            if (m(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        m.swap_rows(piv, r);
        for (int i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Rat f = m(i, c) / m(r, c);
            for (int j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

inline int rank(const IntMat& m) { return rank(to_rat(m)); }

// Solve a*x = b for square nonsingular a; returns empty vector if singular.
inline std::vector<Rat> solve(RatMat a, std::vector<Rat> b) {
    assert(a.rows() == a.cols() && static_cast<int>(b.size()) == a.rows());
    int n = a.rows();
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (a(i, k) != 0) { piv = i; break; }
        if (piv < 0) return {};
        if (piv != k) { a.swap_rows(piv, k); std::swap(b[piv], b[k]); }
        for (int i = k + 1; i < n; ++i) {
            if (a(i, k) == 0) continue;
            Rat f = a(i, k) / a(k, k);
            for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<Rat> x(n);
    for (int i = n - 1; i >= 0; --i) {
        Rat s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

// Inverse of a square rational matrix; throws on singular input.
inline RatMat inverse(const RatMat& a) {
    assert(a.rows() == a.cols());
    int n = a.rows();
    RatMat m = a, inv = RatMat::identity(n);
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (m(i, k) != 0) { piv = i; break; }
        if (piv < 0) throw std::invalid_argument("inverse: singular matrix");
        if (piv != k) { m.swap_rows(piv, k); inv.swap_rows(piv, k); }
        Rat p = m(k, k);
        for (int j = 0; j < n; ++j) { m(k, j) /= p; inv(k, j) /= p; }
        for (int i = 0; i < n; ++i) {
            if (i == k || m(i, k) == 0) continue;
            Rat f = m(i, k);
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

// Basis of the null space {x : m x^t = 0} as row vectors (x on the right as
// a column; returned as rows of the basis).
inline std::vector<std::vector<Rat>> nullspace(RatMat m) {
    int nr = m.rows(), nc = m.cols();
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        int piv = -1;
        for (int i = r; i < nr; ++i)
            if (m(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        m.swap_rows(piv, r);
        Rat p = m(r, c);
        for (int j = c; j < nc; ++j) m(r, j) /= p;
        for (int i = 0; i < nr; ++i) {
            if (i == r || m(i, c) == 0) continue;
            Rat f = m(i, c);
            for (int j = c; j < nc; ++j) m(i, j) -= f * m(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(nc, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (int c = 0; c < nc; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rat> v(nc, Rat(0));
        v[c] = 1;
        for (int i = 0; i < r; ++i) v[pivot_col[i]] = -m(i, c);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace wtc
