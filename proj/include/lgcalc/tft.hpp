#pragma once

// Finite-dimensional open 2d TFTs over Q and their canonical closed sector:
// a linear category A presented by structure constants, the quotient
// V = A/[A,A] with its operator-trace pairing <[a],[b]> = Tr(x -> a x b),
// Frobenius data on V, and exact verification of the closed-sector axioms
// (trace cyclicity, pairing symmetry and rank, Frobenius laws, the Cardy
// condition, and multiplicativity of the boundary-bulk adjoint).
//
// Morphisms compose diagrammatically: A(E,F) (x) A(F,G) -> A(E,G), and bases
// are ordered per hom space.  Everything is exact rational linear algebra.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lgcalc/linalg.hpp"
#include "lgcalc/mf.hpp"

namespace lg {

/** Bilinear composition on one brane triple: tensor[k](i,j) is the
 *  coefficient of output basis vector k in (basis_i . basis_j). */
using CompositionTensor = std::vector<QMatrix>;

/** Linear category with finitely many branes and finite-dimensional hom
 *  spaces, given by structure constants over Q. */
struct FiniteOpenCategory {
    std::vector<std::string> branes;
    std::vector<std::vector<std::size_t>> hom_dims;           // [e][f] = dim A(e,f)
    std::vector<std::vector<std::vector<CompositionTensor>>> comp;  // [e][f][g]
    std::vector<QVector> identities;                          // id_e in A(e,e) coordinates

    std::size_t brane_count() const { return branes.size(); }
    std::size_t dim(std::size_t e, std::size_t f) const { return hom_dims[e][f]; }
};

/** a . b for a in A(e,f), b in A(f,g), in coordinates. */
QVector compose_vec(const FiniteOpenCategory& a, std::size_t e, std::size_t f, std::size_t g,
                    const QVector& x, const QVector& y);

/** Shape consistency, identity laws, and associativity on all basis triples
 *  over all brane quadruples.  Witnesses name the offending indices. */
ValidationReport validate_category(const FiniteOpenCategory& a);

/** One brane whose endomorphism algebra has the given structure constants. */
FiniteOpenCategory one_object_category(CompositionTensor product, QVector identity);

/** Branes of the given ranks with all hom spaces Hom(Q^m, Q^n) and matrix
 *  composition (a Morita block: the closed sector is one-dimensional). */
FiniteOpenCategory matrix_category(const std::vector<std::size_t>& sizes);

/** Matrix endomorphism algebras with zero cross-homs (a direct sum). */
FiniteOpenCategory block_category(const std::vector<std::size_t>& sizes);

/** Closed Frobenius data on V: product tensor, unit, and trace (the closed
 *  1-point correlator) in V-basis coordinates. */
struct FrobeniusData {
    CompositionTensor product;  // [k](a,b) = coeff of class k in v_a . v_b
    QVector unit;
    QVector trace;
};

/** The canonical closed sector V = A/[A,A] with explicit class data. */
struct ClosedSector {
    // class representatives: endomorphism basis vector `index` of End(brane)
    struct ClassRep {
        std::size_t brane = 0, index = 0;
    };
    std::vector<ClassRep> v_basis;
    std::vector<std::size_t> endo_offset;  // block offset of End(e) in Q^N
    std::size_t total_endo_dim = 0;        // N = sum of endomorphism dims
    QMatrix projection;                    // dim V x N: coordinates of a class
    QMatrix pairing;                       // <[rep_a], [rep_b]> operator traces
    std::optional<FrobeniusData> frobenius;

    std::size_t dim() const { return v_basis.size(); }
};

/** Boundary-bulk map of one endomorphism: class coordinates of alpha in
 *  End(brane). */
QVector project_endo(const ClosedSector& cs, std::size_t brane, const QVector& alpha);

/**
 * Builds V = A/[A,A]: the commutator span of all ab - ba over composable
 * pairs, class representatives chosen greedily among endomorphism basis
 * vectors, the projection by exact linear solves, and the pairing matrix
 * <[a],[b]> = Tr(x -> a x b on A(E,F)).  Throws Error when validate_category
 * fails.  No Frobenius data is attached here.
 */
ClosedSector commutator_quotient(const FiniteOpenCategory& a);

/**
 * Attaches Frobenius data to the sector.  `open_trace` (one functional per
 * brane on End(E) coordinates) must be cyclic and have nondegenerate pairing
 * theta(x.y) on every A(E,F) x A(F,E); when absent, the regular trace
 * theta_E(r) = sum_G Tr(x -> x.r on A(G,E)) is used, which works exactly for
 * (split) semisimple categories.  The closed trace is theta at the class
 * representatives and the product is defined by the Cardy composite on
 * representatives; cardy_check then certifies representative independence.
 * On failure the report carries witnesses and the sector is left untouched.
 */
ValidationReport derive_frobenius(const FiniteOpenCategory& a, ClosedSector& cs,
                                  const std::optional<std::vector<QVector>>& open_trace = std::nullopt);

struct PairingReport {
    ValidationReport checks;
    std::size_t rank = 0;
    bool nondegenerate = false;
};

/** Re-verifies the closed pairing from scratch: commutator classes project to
 *  zero and pair to zero against everything (trace cyclicity), the two
 *  evaluation orders of the operator trace agree, the matrix is symmetric,
 *  and the rank is reported. */
PairingReport pairing_checks(const FiniteOpenCategory& a, const ClosedSector& cs);

struct CardyReport {
    ValidationReport checks;
    bool adjoint_checked = false;  // condition (2): needs invertible pairings
};

/**
 * The Cardy condition, exactly, on all basis pairs of End(E) x End(F) for all
 * ordered brane pairs: P_c(T(a) (x) T(b)) = sum_i T(a e_i b eps_i), with
 * {e_i}, {eps_i} dual bases of A(E,F), A(F,E) under the open pairing
 * theta_V(T(x.y)) (checked square and nondegenerate first).  Also checks the
 * boundary-bulk adjoint T^dagger is an algebra map (unit and products) when
 * the pairings are invertible.  Throws Error when `cs` carries no Frobenius
 * data.
 */
CardyReport cardy_check(const FiniteOpenCategory& a, const ClosedSector& cs);

/** Frobenius laws of the closed sector: commutativity, associativity, unit,
 *  nondegeneracy of (u,v) -> trace(u.v), and agreement of that form with the
 *  operator-trace pairing.  A sector without Frobenius data fails with a
 *  single "not checked" witness. */
ValidationReport frobenius_check(const ClosedSector& cs);

}  // namespace lg
