#pragma once

#include <optional>
#include <vector>

#include "lgcalc/rational.hpp"

namespace lg {

using QVector = std::vector<Rational>;

/** Dense exact-rational matrix. Vectors are columns; A acts as x -> A x. */
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows, QVector(cols, Rational(0))) {}

    static QMatrix identity(std::size_t n);
    /** Matrix whose columns are the given vectors (all the same length). */
    static QMatrix from_columns(const std::vector<QVector>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rational& at(std::size_t r, std::size_t c) { return a_[r][c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return a_[r][c]; }

    QMatrix transpose() const;
    QMatrix operator*(const QMatrix& o) const;
    QVector apply(const QVector& x) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix scaled(const Rational& c) const;
    bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool is_zero() const;

    /** Trace (square only). */
    Rational trace() const;
    /** Determinant by fraction-free-ish Gaussian elimination (square only). */
    Rational determinant() const;
    /** Inverse; nullopt when singular (square only). */
    std::optional<QMatrix> inverse() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<QVector> a_;
};

/** Reduced row echelon form; returns the pivot column indices. */
std::vector<std::size_t> rref_in_place(QMatrix& m);

std::size_t rank(QMatrix m);

/** Basis of the null space {x : A x = 0}. */
std::vector<QVector> kernel_basis(const QMatrix& a);

/** One solution of A x = b, or nullopt when inconsistent. */
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

/** Rank of the span of a set of vectors. */
std::size_t span_rank(const std::vector<QVector>& vectors);

/** True when v lies in the span of `basis`. */
bool in_span(const std::vector<QVector>& basis, const QVector& v);

/**
 * Representatives of span(space) / span(sub): the subset of `space` vectors
 * that strictly enlarge span(sub) when added greedily in order. The returned
 * indices refer to positions in `space`.
 */
std::vector<std::size_t> quotient_representatives(const std::vector<QVector>& sub,
                                                  const std::vector<QVector>& space);

/** dim( span(a) ∩ span(b) ). */
std::size_t intersection_dim(const std::vector<QVector>& a, const std::vector<QVector>& b);

}  // namespace lg
