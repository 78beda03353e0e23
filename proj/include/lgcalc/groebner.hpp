#pragma once

#include <vector>

#include "lgcalc/poly.hpp"

namespace lg {

enum class MonomialOrder { DegRevLex, DegLex, Lex };

/** strict a < b under the given monomial order. */
bool monomial_less(const Exps& a, const Exps& b, MonomialOrder order);

struct Lead {
    Exps mono;
    Rational coeff;
};

/** Leading term under `order`; throws on the zero polynomial. */
Lead leading_term(const Poly& p, MonomialOrder order);

/**
 * A reduced Groebner basis: every element is monic, no term of any element is
 * divisible by the leading monomial of another. `generators` keeps the input
 * ideal generators (zeros dropped), `basis` the reduced basis sorted by
 * descending leading monomial.
 */
struct GroebnerBasis {
    RingPtr ring;
    MonomialOrder order = MonomialOrder::DegRevLex;
    std::vector<Poly> generators;
    std::vector<Poly> basis;
};

/**
 * Buchberger's algorithm with the product (coprime leading monomials) and
 * chain pair-elimination criteria, followed by minimalization and full
 * inter-reduction. Deterministic for a given input ordering.
 */
GroebnerBasis buchberger(const std::vector<Poly>& generators,
                         MonomialOrder order = MonomialOrder::DegRevLex);

/** Remainder of full multivariate division by the basis: no term of the
 *  result is divisible by any basis leading monomial. Ideal membership is
 *  normal_form(p) == 0. */
Poly normal_form(const Poly& p, const GroebnerBasis& gb);

/**
 * Monomial basis of R/I. `finite` is false when the quotient is
 * infinite-dimensional (some variable has no pure power among the leading
 * monomials); in that case `monomials` is empty.
 */
struct QuotientBasis {
    bool finite = false;
    std::vector<Exps> monomials;  // ascending under the basis order
    std::size_t dimension() const { return monomials.size(); }
};

QuotientBasis quotient_basis(const GroebnerBasis& gb);

/**
 * Milnor number: dim_Q R/(dW/dy_1, ..., dW/dy_n). Throws Error when W is
 * constant or the critical locus is not isolated (infinite quotient).
 */
long milnor_number(const Poly& w);

}  // namespace lg
