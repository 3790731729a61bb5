#include "cubic/qlinalg.hpp"

#include "cubic/errors.hpp"

namespace cubic {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    if (rows.empty()) return QMatrix();
    QMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw DimensionMismatch("ragged row list");
        for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

QMatrix QMatrix::from_columns(const std::vector<std::vector<Rational>>& cols) {
    if (cols.empty()) return QMatrix();
    QMatrix m(cols[0].size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != m.rows()) throw DimensionMismatch("ragged column list");
        for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product shape mismatch");
    QMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out.at(i, j) += at(i, k) * rhs.at(k, j);
        }
    return out;
}

std::vector<Rational> QMatrix::apply(const std::vector<Rational>& x) const {
    if (x.size() != cols_) throw DimensionMismatch("matrix-vector shape mismatch");
    std::vector<Rational> out(rows_, Rational(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) out[i] += at(i, j) * x[j];
    return out;
}

namespace {

// Forward elimination; returns the number of pivots found.
std::size_t eliminate(QMatrix& m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < m.rows() && m.at(pivot, c) == 0) ++pivot;
        if (pivot == m.rows()) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < m.cols(); ++j) swap(m.at(pivot, j), m.at(r, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m.at(i, c) == 0) continue;
            Rational f = m.at(i, c) / m.at(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace

std::size_t QMatrix::rank() const {
    QMatrix work = *this;
    return eliminate(work);
}

Rational QMatrix::determinant() const {
    if (rows_ != cols_) throw DimensionMismatch("determinant of a non-square matrix");
    QMatrix work = *this;
    Rational det(1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
        std::size_t pivot = r;
        while (pivot < rows_ && work.at(pivot, c) == 0) ++pivot;
        if (pivot == rows_) return Rational(0);
        if (pivot != r) {
            for (std::size_t j = 0; j < cols_; ++j) swap(work.at(pivot, j), work.at(r, j));
            det = -det;
        }
        det *= work.at(r, c);
        for (std::size_t i = r + 1; i < rows_; ++i) {
            if (work.at(i, c) == 0) continue;
            Rational f = work.at(i, c) / work.at(r, c);
            for (std::size_t j = c; j < cols_; ++j) work.at(i, j) -= f * work.at(r, j);
        }
        ++r;
    }
    return det;
}

QMatrix QMatrix::inverse() const {
    if (rows_ != cols_) throw DimensionMismatch("inverse of a non-square matrix");
    std::size_t n = rows_;
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, n + i) = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && aug.at(pivot, c) == 0) ++pivot;
        if (pivot == n) throw SingularMatrixError("matrix is singular");
        if (pivot != c)
            for (std::size_t j = 0; j < 2 * n; ++j) swap(aug.at(pivot, j), aug.at(c, j));
        Rational inv = Rational(1) / aug.at(c, c);
        for (std::size_t j = 0; j < 2 * n; ++j) aug.at(c, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || aug.at(i, c) == 0) continue;
            Rational f = aug.at(i, c);
            for (std::size_t j = 0; j < 2 * n; ++j) aug.at(i, j) -= f * aug.at(c, j);
        }
    }
    QMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
    return out;
}

QMatrix QMatrix::rref() const {
    QMatrix work = *this;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t pivot = r;
        while (pivot < rows_ && work.at(pivot, c) == 0) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < cols_; ++j) swap(work.at(pivot, j), work.at(r, j));
        Rational inv = Rational(1) / work.at(r, c);
        for (std::size_t j = c; j < cols_; ++j) work.at(r, j) *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == r || work.at(i, c) == 0) continue;
            Rational f = work.at(i, c);
            for (std::size_t j = c; j < cols_; ++j) work.at(i, j) -= f * work.at(r, j);
        }
        ++r;
    }
    return work;
}

LinearChange::LinearChange(QMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionMismatch("coordinate change must be square");
    if (m_.determinant() == 0) throw SingularMatrixError("coordinate change must be invertible");
}

SymmetricMatrix::SymmetricMatrix(QMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw DimensionMismatch("symmetric matrix must be square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
        for (std::size_t j = i + 1; j < m_.cols(); ++j)
            if (m_.at(i, j) != m_.at(j, i)) throw ValidationError("matrix is not symmetric");
}

}  // namespace cubic
