#ifndef CUBIC_QLINALG_HPP
#define CUBIC_QLINALG_HPP

#include <cstddef>
#include <vector>

#include "cubic/rational.hpp"

namespace cubic {

// Dense matrix over Q. Sizes here are tiny (a handful of variables), so
// plain Gaussian elimination with exact rationals is the right tool.
class QMatrix {
 public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

    static QMatrix identity(std::size_t n);
    static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
    static QMatrix from_columns(const std::vector<std::vector<Rational>>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QMatrix transpose() const;
    QMatrix operator*(const QMatrix& rhs) const;
    std::vector<Rational> apply(const std::vector<Rational>& x) const;  // M * x

    std::size_t rank() const;
    Rational determinant() const;  // square only
    QMatrix inverse() const;       // throws SingularMatrixError

    // Reduced row echelon form (pivots are 1, pivot columns cleared).
    QMatrix rref() const;

    bool operator==(const QMatrix& rhs) const {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
    }

 private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

// Invertible square change of coordinates. Column j is the image of the
// j-th new basis vector.
class LinearChange {
 public:
    explicit LinearChange(QMatrix m);
    const QMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.rows(); }
    LinearChange inverse() const { return LinearChange(m_.inverse()); }
    LinearChange operator*(const LinearChange& rhs) const { return LinearChange(m_ * rhs.m_); }

 private:
    QMatrix m_;
};

// Symmetric matrix with the symmetry checked on construction.
class SymmetricMatrix {
 public:
    explicit SymmetricMatrix(QMatrix m);
    const QMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.rows(); }
    const Rational& at(std::size_t i, std::size_t j) const { return m_.at(i, j); }

 private:
    QMatrix m_;
};

}  // namespace cubic

#endif
