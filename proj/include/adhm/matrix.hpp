#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "adhm/errors.hpp"
#include "adhm/scalar.hpp"

namespace adhm {

inline bool is_zero_value(const GaussianRational& x) { return x.is_zero(); }
inline bool is_zero_value(const QuadExt& x) { return x.is_zero(); }
inline bool is_zero_value(const Integer& x) { return sgn(x) == 0; }
inline bool is_zero_value(long x) { return x == 0; }

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw ShapeMismatch("ragged matrix initializer");
            for (const auto& x : row) data_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix diagonal(const std::vector<T>& entries) {
        Matrix m(entries.size(), entries.size());
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
        return m;
    }
    static Matrix column(const std::vector<T>& entries) {
        Matrix m(entries.size(), 1);
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!is_zero_value(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<T> row(std::size_t i) const { return {data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_}; }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
        return c;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw ShapeMismatch("block out of range");
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw ShapeMismatch("block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o, "add");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o, "subtract");
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : data_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
    Matrix operator-() const {
        Matrix r = *this;
        for (auto& x : r.data_) x = -x;
        return r;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw ShapeMismatch("multiply " + a.shape_string() + " by " + b.shape_string());
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (is_zero_value(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void require_same_shape(const Matrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw ShapeMismatch(std::string(op) + " " + shape_string() + " and " + o.shape_string());
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i == 0 ? "[" : ", [");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j == 0 ? "" : ", ") << m(i, j);
        os << "]";
    }
    return os << "]";
}

using MatrixC = Matrix<GaussianRational>;
using MatrixQ = Matrix<QuadExt>;
using IntMatrix = Matrix<Integer>;

template <class U, class T>
Matrix<U> convert(const Matrix<T>& m) {
    Matrix<U> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = U(m(i, j));
    return r;
}

/// Throws NotSplitOverQi when an entry is irrational.
MatrixC to_base(const MatrixQ& m);

enum class MatOp { Add, Subtract, Multiply, Commutator };

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
    return a * b - b * a;
}

template <class T>
Matrix<T> mat_arith(MatOp op, const Matrix<T>& a, const Matrix<T>& b) {
    switch (op) {
        case MatOp::Add: return a + b;
        case MatOp::Subtract: return a - b;
        case MatOp::Multiply: return a * b;
        case MatOp::Commutator: return commutator(a, b);
    }
    throw InvalidArgument("unknown matrix op");
}

// ---- field linear algebra (T must be a field: GaussianRational or QuadExt) ----

/// Reduced row echelon form; returns pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && is_zero_value(m(p, c))) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        const T inv = T(1) / m(r, c);
        for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero_value(m(i, c))) continue;
            const T f = m(i, c);
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
    return row_reduce(m).size();
}

/// Basis of the right null space, one vector per column of the result.
template <class T>
Matrix<T> null_space(Matrix<T> m) {
    const auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free.push_back(c);
    Matrix<T> basis(m.cols(), free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        basis(free[k], k) = T(1);
        for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -m(r, free[k]);
    }
    return basis;
}

/// Throws SingularGroupElement when m is not invertible.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw ShapeMismatch("inverse of non-square " + m.shape_string());
    const std::size_t n = m.rows();
    Matrix<T> aug(n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix<T>::identity(n));
    const auto pivots = row_reduce(aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
        throw SingularGroupElement("matrix is singular");
    return aug.block(0, n, n, n);
}

template <class T>
T det2(const Matrix<T>& m) {
    if (m.rows() != 2 || m.cols() != 2) throw ShapeMismatch("det2 needs 2x2, got " + m.shape_string());
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

template <class T>
T trace(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw ShapeMismatch("trace of non-square " + m.shape_string());
    T t(0);
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

}  // namespace adhm
