#pragma once

// Correlators of the affine Landau-Ginzburg B-model: the algebraic
// Grothendieck residue on the Milnor algebra (the closed 1-point correlator),
// the boundary-bulk map tau_M, the Kapustin-Li disc correlator and pairing,
// and Gram-matrix nondegeneracy reports for that pairing.

#include <cstddef>
#include <string>
#include <vector>

#include "lgcalc/form.hpp"
#include "lgcalc/groebner.hpp"
#include "lgcalc/linalg.hpp"
#include "lgcalc/mf.hpp"
#include "lgcalc/poly.hpp"
#include "lgcalc/rational.hpp"

namespace lg {

/** Determinant of the n x n matrix of second partials of w, exact. */
Poly hessian(const Poly& w);

/**
 * The residue functional on the Milnor algebra Q_W = R/(dW) of an isolated
 * quasi-homogeneous singularity.  Q_W is graded by qh weight with
 * one-dimensional socle in the top weight, spanned by the class of
 * hessian(W); socle_rep is that class in normal form.  The functional kills
 * every quotient-basis monomial below the top weight and is pinned on the
 * socle by residue(hessian(W)) = mu, which reproduces the contour values
 * (one variable, W = x^d: residue(x^{d-2}) = 1/d).
 */
struct ResidueFunctional {
    Poly w;
    GroebnerBasis jacobian_gb;
    QuotientBasis quotient;
    Poly socle_rep;  // normal form of hessian(w); nonzero, spans the socle
    long mu = 0;     // Milnor number = quotient dimension
};

/** Builds the functional.  Throws Error when the ring has no qh weights, w is
 *  not quasi-homogeneous for them, the critical locus is not isolated, or the
 *  Hessian normal form vanishes. */
ResidueFunctional make_residue_functional(const Poly& w);

/**
 * Algebraic Grothendieck residue of h dy^1 ^ ... ^ dy^n: the socle coefficient
 * of NF(h) under the normalization residue(hessian) = mu.  Linear; exactly
 * zero on the Jacobian ideal.  The (2 pi i)^n of the contour picture is
 * absorbed, so values are rational.
 */
Rational residue(const Poly& h, const ResidueFunctional& rf);

/**
 * Boundary-bulk map
 *   tau_M(alpha) = sum_{k=0}^{n} (1/k!) Str(alpha . (del d_M)^k)
 * where del d_M is the supermatrix of 1-forms sum_i (del entry / del y_i) dy^i
 * over the (even, odd) generator basis, powers are matrix products with wedge
 * entries applied on the right, and Str X = sum_r (-1)^{p(r)} X_rr.  Terms of
 * form degree > n vanish, so the sum is finite.  The global sign is a
 * convention; see kl_convention().
 */
Form boundary_bulk(const MFPtr& m, const Morphism& alpha);

/** Disc 1-point correlator: residue of the top-degree component of
 *  boundary_bulk(m, alpha) (the 1/n! already lives in tau_M).  Zero on exact
 *  endomorphisms alpha = hom_diff(beta). */
Rational kapustin_li(const MFPtr& m, const Morphism& alpha);

/** <alpha, beta> = kapustin_li(N, compose(alpha, beta)) for alpha : M -> N and
 *  beta : N -> M.  On closed classes the swapped order agrees up to the Koszul
 *  sign (-1)^{|alpha| |beta|}.  Throws Error on a brane mismatch. */
Rational kl_pairing(const Morphism& alpha, const Morphism& beta);

/** Identifier of the sign/normalization convention behind these values. */
const char* kl_convention();

/** One Ext class of a report: a closed representative from brane `source` to
 *  brane `target` (indices into the report's brane list). */
struct KLClass {
    std::size_t source = 0, target = 0;
    Parity parity = Parity::Even;
    Morphism rep;
};

struct NondegeneracyReport {
    std::vector<KLClass> classes;
    QMatrix gram;  // gram(a,b) = kl_pairing(rep_a, rep_b) where composable, else 0
    std::size_t rank = 0;
    bool nondegenerate = false;  // rank == classes.size()
    std::string convention;      // sign convention the values are quoted in
};

/**
 * Ext bases in both parities for every ordered brane pair (morphism entries of
 * total degree <= degree_bound), the Gram matrix of kl_pairing on all classes,
 * its exact rank, and the verdict rank == #classes.  All branes must share one
 * ring and potential.
 */
NondegeneracyReport nondegeneracy_report(const std::vector<MFPtr>& branes,
                                         unsigned degree_bound);

}  // namespace lg
