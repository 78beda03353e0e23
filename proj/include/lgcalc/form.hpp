#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "lgcalc/poly.hpp"

namespace lg {

/** Index subset dy^{i1} ^ ... ^ dy^{ik} encoded as a bitmask (i ascending). */
using FormMask = std::uint64_t;

inline int mask_popcount(FormMask m) { return __builtin_popcountll(m); }

/**
 * Sign (+1/-1) of merging two disjoint ascending index sets a, b into one
 * ascending set with a's generators written first: dy^a ^ dy^b = sign dy^{a|b}.
 */
int merge_sign(FormMask a, FormMask b);

/** Comparator: by form degree, then by mask value (deterministic iteration). */
struct MaskLess {
    bool operator()(FormMask a, FormMask b) const {
        int pa = mask_popcount(a), pb = mask_popcount(b);
        if (pa != pb) return pa < pb;
        return a < b;
    }
};

/**
 * Polynomial differential form: a finite sum of components p_I dy^I with
 * exact polynomial coefficients. Values are immutable; components with zero
 * coefficient are never stored.
 */
class Form {
public:
    Form() = default;
    explicit Form(RingPtr ring) : ring_(std::move(ring)) {}

    static Form zero(RingPtr ring) { return Form(std::move(ring)); }
    /** A 0-form from a polynomial. */
    static Form from_poly(const Poly& p);
    /** The basis 1-form dy^index. */
    static Form d_generator(RingPtr ring, std::size_t index);
    /** p dy^I for an explicit mask. */
    static Form component(const Poly& p, FormMask mask);

    const RingPtr& ring() const { return ring_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<FormMask, Poly, MaskLess>& components() const { return comps_; }

    /** Coefficient polynomial of dy^I (zero polynomial if absent). */
    Poly coefficient(FormMask mask) const;

    /** Restriction to homogeneous form degree k. */
    Form degree_part(int k) const;
    /** Largest k with a nonzero degree-k part; -1 for the zero form. */
    int top_degree() const;

    Form operator-() const;
    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form scaled(const Rational& c) const;
    Form mul_poly(const Poly& p) const;

    bool operator==(const Form& o) const {
        return same_ring(ring_, o.ring_) && comps_ == o.comps_;
    }
    bool operator!=(const Form& o) const { return !(*this == o); }

    std::string str() const;

    /** Internal: accumulate p dy^mask, dropping zero results. */
    void add_component(FormMask mask, const Poly& p);

private:
    RingPtr ring_;
    std::map<FormMask, Poly, MaskLess> comps_;
};

/** Graded wedge product (Koszul sign carried by index-merge parity). */
Form wedge(const Form& a, const Form& b);

/** Exterior derivative of a polynomial: sum_i (d p / d y_i) dy^i. */
Form exterior_d(const Poly& p);

/** Exterior derivative of a form: d(p dy^I) = dp ^ dy^I summed over parts. */
Form exterior_d(const Form& f);

}  // namespace lg
