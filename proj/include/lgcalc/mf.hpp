#pragma once

// Matrix factorizations of a potential W over a polynomial ring: the objects
// are pairs of polynomial matrices with d_ev.d_od = W.I and d_od.d_ev = W.I,
// morphisms are parity-homogeneous block maps, and the Hom complex carries
// the differential d(f) = d_N.f - (-1)^{|f|} f.d_M.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lgcalc/linalg.hpp"
#include "lgcalc/poly.hpp"
#include "lgcalc/rational.hpp"
#include "lgcalc/ring.hpp"

namespace lg {

/** Dense matrix of polynomials over one ring (rows or cols may be zero). */
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);

    static PolyMatrix identity(const RingPtr& ring, std::size_t n);
    /** p times the identity. */
    static PolyMatrix scalar(const RingPtr& ring, const Poly& p, std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const RingPtr& ring() const { return ring_; }

    const Poly& at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Poly value);

    bool is_zero() const;
    Poly trace() const;
    PolyMatrix transpose() const;
    PolyMatrix scaled(const Rational& c) const;
    PolyMatrix mul_poly(const Poly& p) const;
    /** Entrywise substitution; `images` define the target ring. */
    PolyMatrix substitute(const std::vector<Poly>& images) const;

    PolyMatrix operator+(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;
    PolyMatrix operator-() const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    bool operator==(const PolyMatrix& o) const;

    std::string str() const;

private:
    RingPtr ring_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Poly> data_;
};

/** Kronecker product; block (i,j) of the result is A(i,j) * B. */
PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b);

/** A polynomial ring together with a potential W (curvature of the zero
 *  differential).  In Z grading W must be homogeneous of charge 2. */
struct CurvedAlgebra {
    RingPtr ring;
    Poly potential;
};

CurvedAlgebra make_curved_algebra(RingPtr ring, Poly potential);

struct MatrixFactorization;
using MFPtr = std::shared_ptr<const MatrixFactorization>;

/** Free Z/2-graded module M_ev (+) M_od with odd d_M, d_M^2 = W.
 *
 *  d_od : M_ev -> M_od is rank_od x rank_ev; d_ev : M_od -> M_ev is
 *  rank_ev x rank_od.  Optional internal charges (one per generator) pin the
 *  Z-grading: entry (i,j) of a degree-1 map must have charge t_j - t_i + 1. */
struct MatrixFactorization {
    CurvedAlgebra algebra;
    std::size_t rank_ev = 0, rank_od = 0;
    PolyMatrix d_od;  // block M_ev -> M_od
    PolyMatrix d_ev;  // block M_od -> M_ev
    std::optional<std::vector<long>> degrees_ev, degrees_od;

    std::size_t total_rank() const { return rank_ev + rank_od; }
    bool operator==(const MatrixFactorization& o) const;
};

/** Shapes are checked here; the composition identities belong to validate_mf. */
MFPtr make_mf(CurvedAlgebra algebra, PolyMatrix d_od, PolyMatrix d_ev,
              std::optional<std::vector<long>> degrees_ev = std::nullopt,
              std::optional<std::vector<long>> degrees_od = std::nullopt);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> failures;

    void fail(std::string witness);
};

/** Checks d_ev.d_od = W.I, d_od.d_ev = W.I entry by entry, plus charge
 *  homogeneity when internal degrees are present.  Never throws on bad data;
 *  every failed entry is listed with its witness value. */
ValidationReport validate_mf(const MatrixFactorization& m);

enum class Parity { Even, Odd };

inline Parity flip(Parity p) { return p == Parity::Even ? Parity::Odd : Parity::Even; }
inline int parity_sign(Parity p) { return p == Parity::Even ? 1 : -1; }

/** Parity-homogeneous module map f : M -> N, stored as four blocks.
 *
 *  b_ee : N_ev x M_ev   b_oo : N_od x M_od   (even part)
 *  b_eo : N_ev x M_od   b_oe : N_od x M_ev   (odd part)
 *
 *  The off-parity pair is identically zero and kept only so composition is a
 *  single uniform block formula. */
struct Morphism {
    MFPtr source, target;
    Parity parity = Parity::Even;
    PolyMatrix b_ee, b_oo, b_eo, b_oe;

    static Morphism even(MFPtr source, MFPtr target, PolyMatrix b_ee, PolyMatrix b_oo);
    static Morphism odd(MFPtr source, MFPtr target, PolyMatrix b_eo, PolyMatrix b_oe);
    static Morphism identity(MFPtr m);
    static Morphism zero(MFPtr source, MFPtr target, Parity parity);

    bool is_zero() const;
    Morphism scaled(const Rational& c) const;
    Morphism operator+(const Morphism& o) const;
    Morphism operator-(const Morphism& o) const;
    bool operator==(const Morphism& o) const;
};

/** d_{M,N}(f) = d_N.f - (-1)^{|f|} f.d_M; flips parity, squares to zero. */
Morphism hom_diff(const Morphism& f);

/** g after f; parities add mod 2.  Requires target(f) = source(g). */
Morphism compose(const Morphism& g, const Morphism& f);

/** Tensor product over the same ring: a factorization of W_M + W_N.
 *
 *  Generator order: ev = (ev(x)ev then od(x)od), od = (od(x)ev then ev(x)od);
 *  d(m(x)n) = d_M m (x) n + (-1)^{|m|} m (x) d_N n. */
MFPtr tensor_mf(const MFPtr& m, const MFPtr& n);

/** Basis of Ext classes of parity p between M and N inside the slice of
 *  morphisms whose entries have total degree <= degree_bound: exact kernel of
 *  hom_diff modulo the image of the one-lower slice.  Stabilizes once the
 *  bound passes the saturation degree of a graded example. */
std::vector<Morphism> ext_basis(const MFPtr& m, const MFPtr& n, Parity parity,
                                unsigned degree_bound);

}  // namespace lg
