#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgcalc/rational.hpp"
#include "lgcalc/ring.hpp"

namespace lg {

/** Exponent vector; size always equals the ring's variable count. */
using Exps = std::vector<unsigned>;

inline unsigned total_degree(const Exps& e) {
    unsigned d = 0;
    for (unsigned x : e) d += x;
    return d;
}

/** Degree-lexicographic term order used for canonical storage. */
struct DegLexLess {
    bool operator()(const Exps& a, const Exps& b) const {
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;  // lexicographic on exponent vectors
    }
};

/** Result of an rcharge homogeneity query. */
struct RchargeDegree {
    enum Kind { Zero, Homogeneous, Inhomogeneous } kind = Zero;
    long degree = 0;  // meaningful only when kind == Homogeneous

    static RchargeDegree zero() { return {Zero, 0}; }
    static RchargeDegree homogeneous(long d) { return {Homogeneous, d}; }
    static RchargeDegree inhomogeneous() { return {Inhomogeneous, 0}; }
    bool operator==(const RchargeDegree&) const = default;
};

/**
 * Immutable sparse multivariate polynomial with exact rational coefficients.
 *
 * Terms are kept in a map ordered by DegLexLess, which fixes a canonical form:
 * structural equality coincides with mathematical equality and printing is
 * deterministic. All mutating operators return fresh values; stored terms
 * never have zero coefficients.
 */
class Poly {
public:
    Poly() = default;
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    /** The zero polynomial over `ring`. */
    static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
    /** A constant polynomial. */
    static Poly constant(RingPtr ring, const Rational& c);
    /** The monomial c * prod(var_i ^ exps_i). */
    static Poly monomial(RingPtr ring, const Exps& exps, const Rational& c = 1);
    /** The generator with the given index. */
    static Poly variable(RingPtr ring, std::size_t index);
    /** The generator with the given name. */
    static Poly variable(RingPtr ring, const std::string& name);

    const RingPtr& ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }
    /** Coefficient of the constant term (0 if absent). */
    Rational constant_term() const;
    /** Coefficient of an arbitrary monomial (0 if absent). */
    Rational coefficient(const Exps& e) const;
    std::size_t term_count() const { return terms_.size(); }
    /** Total degree; -1 (as long) for the zero polynomial. */
    long degree() const;

    const std::map<Exps, Rational, DegLexLess>& terms() const { return terms_; }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rational& c) const;
    Poly pow(unsigned n) const;

    bool operator==(const Poly& o) const { return same_ring(ring_, o.ring_) && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /** Partial derivative with respect to variable `index`. */
    Poly partial(std::size_t index) const;

    /**
     * Algebra-map substitution: variable i is replaced by images[i]. All images
     * must share one ring, which becomes the result's ring.
     */
    Poly substitute(const std::vector<Poly>& images) const;

    /** Transplant onto a structurally different ring via a variable-index map:
     *  variable i of *this becomes variable var_map[i] of `target`. */
    Poly rename(RingPtr target, const std::vector<std::size_t>& var_map) const;

    /**
     * rcharge degree per the ring's rcharge weights: Zero for the zero
     * polynomial, Homogeneous(d) when every term has weighted degree d,
     * Inhomogeneous otherwise. Throws if the ring carries no rcharge weights.
     */
    RchargeDegree rcharge_degree() const;

    /** Quasi-homogeneous degree per ring qh_weights; nullopt when inhomogeneous
     *  or weights are absent. Zero polynomial reports degree 0. */
    std::optional<Rational> qh_degree() const;

    /** Weighted degree of a single exponent vector under the ring's qh weights. */
    Rational qh_weight_of(const Exps& e) const;

    /** Deterministic text form that re-parses under the expression grammar. */
    std::string str() const;

    friend std::ostream& operator<<(std::ostream& os, const Poly& p);

    /** Internal: add c * x^e in place (used by builders); keeps canonical form. */
    void add_term(const Exps& e, const Rational& c);

private:
    void check_ring() const {
        if (!ring_) throw Error("poly: missing ring");
    }

    RingPtr ring_;
    std::map<Exps, Rational, DegLexLess> terms_;
};

/** Total ordering on polynomials over one ring (for deterministic containers). */
bool poly_less(const Poly& a, const Poly& b);

}  // namespace lg
