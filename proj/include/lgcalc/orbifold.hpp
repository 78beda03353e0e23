#pragma once

// Finite-group orbifolds of affine LG models: matrix group actions, the
// twisted group ring R x| C[G], fixed loci, the delta-decomposition in the
// doubled ring, the deformed Koszul bimodule, conjugacy bookkeeping, the
// orbifold closed-state-space spectrum, and equivariant factorizations.
//
// Conventions.  A group element is an invertible rational matrix acting on
// points; the induced left action on functions is the pullback along the
// inverse, group_apply(G, g, p) = p(g^{-1} y).  The doubled ring R (x) R has
// the left copy of each variable first (suffix _l) and the right copy second
// (suffix _r).  The twisted diagonal of g is the zero locus of the linear
// forms L^g_i = g(y_i)(x)1 - 1(x)y_i; delta identities that are only
// well-defined along that locus (Leibniz, equivariance) hold after
// twisted_diagonal_restrict.

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lgcalc/linalg.hpp"
#include "lgcalc/mf.hpp"
#include "lgcalc/poly.hpp"
#include "lgcalc/ring.hpp"

namespace lg {

/** Finite matrix group with precomputed multiplication data. */
struct GroupAction {
    std::vector<QMatrix> elements;  // n x n invertible, pairwise distinct
    std::size_t identity_index = 0;
    std::vector<std::vector<std::size_t>> mult_table;  // [g][h] = index of g.h
    std::vector<std::size_t> inverse_table;

    std::size_t order() const { return elements.size(); }
    std::size_t dim() const { return elements.empty() ? 0 : elements[0].rows(); }
};

using ActionPtr = std::shared_ptr<const GroupAction>;

/** Builds the tables from the matrices alone; throws Error when the list is
 *  not a finite matrix group (duplicates, no identity, not closed, or a
 *  missing inverse). */
ActionPtr make_group_action(std::vector<QMatrix> elements);

/** Re-checks every axiom from the stored data (consistent tables, identity,
 *  inverses, associativity via the table), W-invariance of every element, and
 *  in Z grading that each matrix preserves the R-charge weights.  Never
 *  throws on bad data; failures are listed with witnesses. */
ValidationReport validate_action(const GroupAction& g, const Poly& w);

/** Left action of element `idx` on a polynomial: substitute y -> g^{-1} y. */
Poly group_apply(const GroupAction& g, std::size_t idx, const Poly& p);

/** Element of the twisted group ring R x| C[G]: finitely many summands
 *  r (x) g stored as coefficients per group index. */
struct GroupRingElement {
    ActionPtr action;
    std::map<std::size_t, Poly> coeffs;  // group index -> coefficient

    bool is_zero() const;
    GroupRingElement operator+(const GroupRingElement& o) const;
    GroupRingElement operator-(const GroupRingElement& o) const;
    GroupRingElement scaled(const Rational& c) const;
    bool operator==(const GroupRingElement& o) const;
};

/** The element r (x) g. */
GroupRingElement group_ring_element(ActionPtr action, std::size_t g, Poly coeff);

/** Bilinear extension of (r (x) g) . (s (x) h) = r g(s) (x) gh. */
GroupRingElement twisted_mul(const GroupRingElement& a, const GroupRingElement& b);

/** Rational basis of the fixed subspace ker(g - 1) of the point action. */
std::vector<QVector> fixed_locus(const GroupAction& g, std::size_t idx);

/** The doubled ring R (x) R: left copies of the variables (suffix _l), then
 *  right copies (suffix _r).  Grading data is dropped. */
RingPtr doubled_ring(const RingPtr& ring);

/** p (x) 1 and 1 (x) p. */
Poly left_embed(const Poly& p, const RingPtr& doubled);
Poly right_embed(const Poly& p, const RingPtr& doubled);

/**
 * The coefficients delta^g_i(r) of the exact decomposition
 *   g(r)(x)1 - 1(x)r = sum_i delta^g_i(r) . (g(y_i)(x)1 - 1(x)y_i)
 * computed by iterated single-variable divided differences in the doubled
 * ring (left arguments first).  The reconstruction identity holds on the
 * nose; the twisted Leibniz rule
 *   delta^g_i(rs) = (g(r)(x)1) delta^g_i(s) + delta^g_i(r) (1(x)s)
 * holds exactly in one variable and along the twisted diagonal in general.
 */
std::vector<Poly> delta_decompose(const GroupAction& g, std::size_t idx, const Poly& r);

/** (f x h)-action on the doubled ring: f on the left factor, h^{-1} on the
 *  right factor (the bimodule convention). */
Poly doubled_apply(const GroupAction& g, std::size_t f, std::size_t h, const Poly& p);

/** Restriction to the twisted diagonal of g: substitute each right variable
 *  by the matching linear form in left variables (1(x)y_i -> g(y_i)(x)1).
 *  A doubled polynomial lies in the twisted-diagonal ideal iff this is 0. */
Poly twisted_diagonal_restrict(const GroupAction& g, std::size_t idx, const Poly& p);

/**
 * Deformed Koszul complex of the sector g: on (R(x)R) (x) Lambda(dy^1..dy^n)
 * the contraction d^K with tau_g = sum_i L^g_i d/dy^i and the wedge
 * d^K_W = sum_i delta^g_i(W) dy^i ^ - are built on the slice of coefficients
 * of total degree <= degree_bound, and (d^K + d^K_W)^2 = (W(x)1 - 1(x)W) . id
 * is checked exactly on every slice element, together with the
 * (f x h)-equivariance of the delta coefficients across sectors (checked
 * along the target twisted diagonal; that part holds for any W).  The square
 * identity needs g(W) = W — a non-invariant potential is reported as such
 * instead of a wall of square defects.  Failures carry witnesses.
 */
ValidationReport koszul_square_check(const GroupAction& g, std::size_t idx, const Poly& w,
                                     unsigned degree_bound = 3);

struct ConjugacyData {
    std::vector<std::vector<std::size_t>> classes;       // partition of 0..|G|-1
    std::vector<std::size_t> representatives;            // least index per class
    std::vector<std::vector<std::size_t>> centralizers;  // of each representative
};

ConjugacyData conjugacy_data(const GroupAction& g);

/** One twisted sector, labeled by a conjugacy-class representative. */
struct SectorData {
    std::size_t g = 0;
    std::vector<QVector> fixed_basis;  // basis of Y^g; empty for a point sector
    RingPtr sector_ring;               // coordinates t0..t{m-1} on Y^g; null for a point
    Poly w_g;                          // W restricted along fixed_basis; null for a point
    long mu_g = 0;                     // dim J_g (1 for a point sector)
    bool point_sector = false;         // Y^g = {0}: J_g = Q, "zero-locus-trivial"
    std::vector<std::size_t> centralizer;
    std::size_t invariant_dim = 0;     // dim (J_g . vol)^{C_g} by character averaging
};

struct OrbifoldSpectrum {
    std::vector<SectorData> sectors;  // one per conjugacy class
    std::size_t total = 0;            // sum of invariant dimensions
    bool abelian = false;
    std::string note;  // representative-labeling caveat for nonabelian groups
};

/**
 * Closed-state-space spectrum sum_[g] (J_g . vol)^{C_g}: per conjugacy class
 * the Jacobi ring of W_g on Y^g, the centralizer action twisted by the
 * determinant on the volume form of Y^g, and the invariant dimension by
 * character averaging.  Throws Error when a sector's critical locus is not
 * isolated (e.g. W_g = 0 on a positive-dimensional Y^g).
 */
OrbifoldSpectrum orbifold_spectrum(const GroupAction& g, const Poly& w);

/** Parity-preserving group action on the generators of a factorization. */
struct EquivariantStructure {
    std::vector<QMatrix> rho_ev, rho_od;  // one pair per group element
};

/** Checks rho is a representation (identity, products per the mult table) and
 *  that the differential intertwines: rho(g) . g(d_M) = d_M . rho(g) for all
 *  g, blockwise (equivalently rho(g) g(d_M) rho(g)^{-1} = d_M).  Failures are
 *  listed with witnesses. */
ValidationReport validate_equivariant_mf(const MFPtr& m, const GroupAction& g,
                                         const EquivariantStructure& rho);

}  // namespace lg
