#ifndef PREPROJ_MATRIX_HPP
#define PREPROJ_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "ratfun.hpp"

namespace preproj {

// Dense row-major matrix over an exact field T (CycNum or RatFun).
// T must provide is_zero(), the field operations and construction from long.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0L)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatchError("ragged matrix initializer");
            for (const auto& x : row) a_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1L);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const { return {a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_}; }

    Matrix transpose() const {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        x.require_same_shape(y);
        Matrix out = x;
        for (std::size_t k = 0; k < out.a_.size(); ++k) out.a_[k] = out.a_[k] + y.a_[k];
        return out;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        x.require_same_shape(y);
        Matrix out = x;
        for (std::size_t k = 0; k < out.a_.size(); ++k) out.a_[k] = out.a_[k] - y.a_[k];
        return out;
    }
    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw DimensionMismatchError("matrix product shape mismatch");
        Matrix out(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const T& xik = x(i, k);
                if (xik.is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j)
                    if (!y(k, j).is_zero()) out(i, j) = out(i, j) + xik * y(k, j);
            }
        return out;
    }
    friend Matrix operator*(const T& s, const Matrix& x) {
        Matrix out = x;
        for (auto& v : out.a_) v = s * v;
        return out;
    }
    friend Matrix operator*(const Matrix& x, const T& s) {
        Matrix out = x;
        for (auto& v : out.a_) v = v * s;
        return out;
    }

    friend std::vector<T> operator*(const Matrix& x, const std::vector<T>& v) {
        if (x.cols_ != v.size()) throw DimensionMismatchError("matrix-vector shape mismatch");
        std::vector<T> out(x.rows_, T(0L));
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k)
                if (!x(i, k).is_zero() && !v[k].is_zero()) out[i] = out[i] + x(i, k) * v[k];
        return out;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }

    void require_same_shape(const Matrix& y) const {
        if (rows_ != y.rows_ || cols_ != y.cols_) throw DimensionMismatchError("matrix shapes differ");
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> a_;
};

using RatMatrix = Matrix<RatFun>;

// Solves M X = B by Gauss-Jordan elimination with first-nonzero pivoting.
template <class T>
Matrix<T> mat_solve(Matrix<T> m, Matrix<T> b) {
    if (!m.is_square()) throw DimensionMismatchError("coefficient matrix is not square");
    if (b.rows() != m.rows()) throw DimensionMismatchError("right-hand side has the wrong number of rows");
    const std::size_t n = m.rows(), r = b.cols();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col).is_zero()) ++piv;
        if (piv == n) throw SingularMatrixError();
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            for (std::size_t j = 0; j < r; ++j) std::swap(b(piv, j), b(col, j));
        }
        const T inv = T(1L) / m(col, col);
        for (std::size_t j = col; j < n; ++j) m(col, j) = m(col, j) * inv;
        for (std::size_t j = 0; j < r; ++j) b(col, j) = b(col, j) * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || m(i, col).is_zero()) continue;
            const T f = m(i, col);
            for (std::size_t j = col; j < n; ++j)
                if (!m(col, j).is_zero()) m(i, j) = m(i, j) - f * m(col, j);
            for (std::size_t j = 0; j < r; ++j)
                if (!b(col, j).is_zero()) b(i, j) = b(i, j) - f * b(col, j);
        }
    }
    return b;
}

template <class T>
std::vector<T> mat_solve(const Matrix<T>& m, const std::vector<T>& v) {
    Matrix<T> b(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) b(i, 0) = v[i];
    Matrix<T> x = mat_solve(m, std::move(b));
    std::vector<T> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = x(i, 0);
    return out;
}

template <class T>
Matrix<T> mat_inverse(const Matrix<T>& m) {
    if (!m.is_square()) throw DimensionMismatchError("only square matrices have inverses");
    return mat_solve(m, Matrix<T>::identity(m.rows()));
}

template <class T>
T determinant(Matrix<T> m) {
    if (!m.is_square()) throw DimensionMismatchError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    T det(1L);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m(piv, col).is_zero()) ++piv;
        if (piv == n) return T(0L);
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
            det = -det;
        }
        det = det * m(col, col);
        const T inv = T(1L) / m(col, col);
        for (std::size_t i = col + 1; i < n; ++i) {
            if (m(i, col).is_zero()) continue;
            const T f = m(i, col) * inv;
            for (std::size_t j = col; j < n; ++j)
                if (!m(col, j).is_zero()) m(i, j) = m(i, j) - f * m(col, j);
        }
    }
    return det;
}

// Inverse through cofactors and Cramer's rule; only for n <= 4, used to
// cross-check the elimination path.
template <class T>
Matrix<T> mat_inverse_adjugate(const Matrix<T>& m) {
    if (!m.is_square()) throw DimensionMismatchError("only square matrices have inverses");
    const std::size_t n = m.rows();
    if (n > 4) throw PreconditionError("adjugate inverse is limited to 4x4 matrices");
    const T det = determinant(m);
    if (det.is_zero()) throw SingularMatrixError();
    Matrix<T> out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Matrix<T> minor(n - 1, n - 1);
            for (std::size_t r = 0, rr = 0; r < n; ++r) {
                if (r == i) continue;
                for (std::size_t c = 0, cc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor(rr, cc++) = m(r, c);
                }
                ++rr;
            }
            T cof = n == 1 ? T(1L) : determinant(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            out(j, i) = cof / det;
        }
    }
    return out;
}

// Row sums (the vector a matrix Hilbert series projects to).
template <class T>
std::vector<T> row_sums(const Matrix<T>& m) {
    std::vector<T> out(m.rows(), T(0L));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] = out[i] + m(i, j);
    return out;
}

}  // namespace preproj

#endif  // PREPROJ_MATRIX_HPP
