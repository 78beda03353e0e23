#include "lgcalc/linalg.hpp"

#include <algorithm>

namespace lg {

QMatrix QMatrix::identity(std::size_t n) {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols) {
    if (cols.empty()) return QMatrix(0, 0);
    QMatrix m(cols[0].size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != cols[0].size()) throw Error("linalg: ragged column set");
        for (std::size_t r = 0; r < cols[c].size(); ++r) m.at(r, c) = cols[c][r];
    }
    return m;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = a_[r][c];
    return t;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw Error("linalg: dimension mismatch in product");
    QMatrix p(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (a_[r][k].is_zero()) continue;
            for (std::size_t c = 0; c < o.cols_; ++c)
                if (!o.a_[k][c].is_zero()) p.at(r, c) += a_[r][k] * o.a_[k][c];
        }
    return p;
}

QVector QMatrix::apply(const QVector& x) const {
    if (x.size() != cols_) throw Error("linalg: dimension mismatch in apply");
    QVector y(rows_, Rational(0));
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!a_[r][c].is_zero()) y[r] += a_[r][c] * x[c];
    return y;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("linalg: dimension mismatch in sum");
    QMatrix s = *this;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) s.at(r, c) += o.a_[r][c];
    return s;
}

QMatrix QMatrix::operator-(const QMatrix& o) const { return *this + o.scaled(Rational(-1)); }

QMatrix QMatrix::scaled(const Rational& c) const {
    QMatrix s = *this;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t k = 0; k < cols_; ++k) s.at(r, k) *= c;
    return s;
}

bool QMatrix::is_zero() const {
    for (const auto& row : a_)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

Rational QMatrix::trace() const {
    if (rows_ != cols_) throw Error("linalg: trace of non-square matrix");
    Rational t = 0;
    for (std::size_t i = 0; i < rows_; ++i) t += a_[i][i];
    return t;
}

Rational QMatrix::determinant() const {
    if (rows_ != cols_) throw Error("linalg: determinant of non-square matrix");
    QMatrix m = *this;
    Rational det = 1;
    for (std::size_t col = 0, row = 0; col < m.cols_ && row < m.rows_; ++col, ++row) {
        std::size_t piv = row;
        while (piv < m.rows_ && m.a_[piv][col].is_zero()) ++piv;
        if (piv == m.rows_) return Rational(0);
        if (piv != row) {
            std::swap(m.a_[piv], m.a_[row]);
            det = -det;
        }
        det *= m.a_[row][col];
        Rational inv = Rational(1) / m.a_[row][col];
        for (std::size_t r = row + 1; r < m.rows_; ++r) {
            if (m.a_[r][col].is_zero()) continue;
            Rational f = m.a_[r][col] * inv;
            for (std::size_t c = col; c < m.cols_; ++c) m.a_[r][c] -= f * m.a_[row][c];
        }
    }
    return det;
}

std::optional<QMatrix> QMatrix::inverse() const {
    if (rows_ != cols_) throw Error("linalg: inverse of non-square matrix");
    // Augment with identity and reduce.
    QMatrix aug(rows_, 2 * cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = a_[r][c];
        aug.at(r, cols_ + r) = 1;
    }
    auto pivots = rref_in_place(aug);
    if (pivots.size() != rows_ || (rows_ > 0 && pivots.back() >= cols_)) return std::nullopt;
    for (std::size_t i = 0; i < pivots.size(); ++i)
        if (pivots[i] != i) return std::nullopt;
    QMatrix inv(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) inv.at(r, c) = aug.at(r, cols_ + c);
    return inv;
}

std::vector<std::size_t> rref_in_place(QMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t piv = row;
        while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(piv, c), m.at(row, c));
        Rational inv = Rational(1) / m.at(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m.at(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            Rational f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(QMatrix m) { return rref_in_place(m).size(); }

std::vector<QVector> kernel_basis(const QMatrix& a) {
    QMatrix m = a;
    auto pivots = rref_in_place(m);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<QVector> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        QVector v(a.cols(), Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
    if (b.size() != a.rows()) throw Error("linalg: rhs length mismatch");
    QMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    auto pivots = rref_in_place(aug);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // 0 = 1 row
    QVector x(a.cols(), Rational(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, a.cols());
    return x;
}

std::size_t span_rank(const std::vector<QVector>& vectors) {
    if (vectors.empty()) return 0;
    return rank(QMatrix::from_columns(vectors));
}

bool in_span(const std::vector<QVector>& basis, const QVector& v) {
    bool zero = std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
    if (zero) return true;
    if (basis.empty()) return false;
    return solve(QMatrix::from_columns(basis), v).has_value();
}

std::vector<std::size_t> quotient_representatives(const std::vector<QVector>& sub,
                                                  const std::vector<QVector>& space) {
    std::vector<QVector> acc = sub;
    std::size_t r = span_rank(acc);
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < space.size(); ++i) {
        acc.push_back(space[i]);
        std::size_t r2 = span_rank(acc);
        if (r2 > r) {
            reps.push_back(i);
            r = r2;
        } else {
            acc.pop_back();
        }
    }
    return reps;
}

std::size_t intersection_dim(const std::vector<QVector>& a, const std::vector<QVector>& b) {
    // dim(A ∩ B) = dim A + dim B − dim(A + B)
    std::size_t da = span_rank(a), db = span_rank(b);
    std::vector<QVector> all = a;
    all.insert(all.end(), b.begin(), b.end());
    return da + db - span_rank(all);
}

}  // namespace lg
