#pragma once

// Truncated Hochschild chains of a curved algebra (R, W) and of its category
// of factorizations, the trace map between them, the HKR comparison with
// polynomial forms, and windowed homology tables.
//
// Chains of (R, W) are rational combinations of monomial tensor words
// (m_0, ..., m_k) with k <= L.  The differential is
//     b(w)   = sum_{i<k} (-1)^i (.., m_i m_{i+1}, ..) + (-1)^k (m_k m_0, ..)
//     d_W(w) = sum_{i<=k} (-1)^i (m_0, .., m_i, W, m_{i+1}, ..)
// and words longer than L+1 factors fall out of the window.
//
// Category chains are cyclic words of composable morphisms, slot i mapping
// brane path[i] to path[i+1 mod n]; they are stored expanded into elementary
// slots (matrix unit times monomial), which makes equality canonical.  Signs
// follow the conventions file.

#include <map>
#include <string>
#include <vector>

#include "lgcalc/form.hpp"
#include "lgcalc/mf.hpp"
#include "lgcalc/poly.hpp"
#include "lgcalc/rational.hpp"

namespace lg {

using TensorWord = std::vector<Exps>;

/** Rational combination of monomial tensor words over one curved algebra. */
class TensorChain {
public:
    TensorChain(CurvedAlgebra algebra, unsigned truncation);

    /** Multilinear expansion of a word of polynomials (throws if too long). */
    static TensorChain word(const CurvedAlgebra& algebra, unsigned truncation,
                            const std::vector<Poly>& factors);

    const CurvedAlgebra& algebra() const { return algebra_; }
    unsigned truncation() const { return truncation_; }
    const std::map<TensorWord, Rational>& words() const { return words_; }

    /** Canonical accumulation; silently drops words beyond the truncation. */
    void add_word(const TensorWord& w, const Rational& c);

    bool is_zero() const { return words_.empty(); }
    TensorChain operator+(const TensorChain& o) const;
    TensorChain operator-(const TensorChain& o) const;
    TensorChain scaled(const Rational& c) const;
    bool operator==(const TensorChain& o) const;

private:
    CurvedAlgebra algebra_;
    unsigned truncation_ = 0;
    std::map<TensorWord, Rational> words_;
};

/** Cyclic bar boundary (adjacent merges, wrap-around term; zero in length 0). */
TensorChain hochschild_boundary_b(const TensorChain& c);

/** Insertion of W into each of the k+1 gaps with alternating signs. */
TensorChain hochschild_w_insertion(const TensorChain& c);

/** Full differential b + d_W of the truncated complex. */
TensorChain hochschild_diff(const TensorChain& c);

/** phi(r_0, .., r_k) = (1/k!) r_0 dr_1 ^ ... ^ dr_k, extended linearly. */
Form hkr(const TensorChain& c);

// ---------------------------------------------------------------------------
// Category chains

/** Elementary slot: the morphism E_{row,col} * monomial between two branes.
 *  Row indexes the target's basis, col the source's basis, both in the order
 *  (even generators, then odd generators). */
struct CatSlot {
    std::size_t row = 0, col = 0;
    Exps mono;
    auto operator<=>(const CatSlot&) const = default;
};

/** Cyclic word: slot i maps branes[path[i]] -> branes[path[(i+1) % n]]. */
struct CatWord {
    std::vector<std::size_t> path;
    std::vector<CatSlot> slots;
    auto operator<=>(const CatWord&) const = default;
};

class CatChain {
public:
    CatChain(std::vector<MFPtr> branes, unsigned truncation);

    /** Expand a cyclic word of morphisms (slot i: source(f[i+1]) = target(f[i]),
     *  cyclically) into elementary slots.  Throws on a non-composable cycle. */
    static CatChain word(unsigned truncation, const std::vector<Morphism>& factors);

    const std::vector<MFPtr>& branes() const { return branes_; }
    unsigned truncation() const { return truncation_; }
    const std::map<CatWord, Rational>& words() const { return words_; }

    void add_word(const CatWord& w, const Rational& c);

    bool is_zero() const { return words_.empty(); }
    CatChain operator+(const CatChain& o) const;
    CatChain operator-(const CatChain& o) const;
    CatChain scaled(const Rational& c) const;
    bool operator==(const CatChain& o) const;

    /** Parity of one elementary slot (target-row parity + source-col parity). */
    int slot_parity(const CatWord& w, std::size_t i) const;

private:
    std::vector<MFPtr> branes_;
    unsigned truncation_ = 0;
    std::map<CatWord, Rational> words_;
};

/** Hochschild differential of the dg-category of factorizations: graded
 *  adjacent merges with wrap-around plus the internal differential hom_diff
 *  applied slot by slot.  Signs, with q_i = p_i + 1 and F_i = p_0 + q_1 +
 *  ... + q_i (mod 2): merge (i, i+1) composes compose(w[i+1], w[i]) with
 *  (-1)^{F_i + p_i p_{i+1}}; the wrap composes compose(w[0], w[k]) placed
 *  first with (-1)^{q_k F_{k-1} + 1 + p_k p_0}; hom_diff at slot 0 carries
 *  +1 and at slot i >= 1 carries (-1)^{F_{i-1} + 1}.  Squares to zero. */
CatChain cat_diff(const CatChain& c);

/** Trace word of one cyclic morphism word: contract matrix indices around the
 *  cycle, weight each closed index cycle by the supertrace sign
 *  (-1)^{p(i_0)} of the basis index at the starting brane, and emit the
 *  entry monomials as a tensor word. */
TensorChain trace_word(const CurvedAlgebra& algebra, unsigned truncation,
                       const std::vector<Morphism>& factors);

/** The comparison map from category chains to algebra chains: sum over all
 *  insertions of brane-differential slots into the gaps between fixed slots
 *  (the cyclic seam counted once, at the word end), traced as in trace_word.
 *  An insertion in the gap after fixed slot j-1 carries the prefix sign
 *  (-1)^{q_0 + ... + q_{j-1}}, and each word is normalised by the
 *  parity-class sign (-1)^{sum_{i<j} p_i p_j + sum_i i p_i}.  Satisfies
 *  hochschild_diff(psi(c)) == psi(cat_diff(c)) exactly on words of <= L
 *  factors, L the truncation. */
TensorChain psi(const CatChain& c);

// ---------------------------------------------------------------------------
// Homology tables

/** Homology of (forms, dW ^ -): zero below the top degree, Milnor number in
 *  degree n with monomial * volume-form basis.  Errors on a non-isolated
 *  critical locus. */
struct StateSpaceTable {
    std::size_t nvars = 0;
    std::vector<std::size_t> dims;      // by form degree 0..n
    std::vector<Exps> basis_monomials;  // coefficients of the volume form
    std::size_t milnor = 0;
};

StateSpaceTable state_space_homology(const Poly& w);

/** One graded piece of the windowed Hochschild homology. */
struct HomologyRow {
    Rational degree;     // internal degree (see below)
    long length = -1;    // word length k in the classical W = 0 table, else -1
    std::size_t dim = 0;
    bool reliable = false;
};

struct TruncatedHomology {
    unsigned length_bound = 0, degree_bound = 0;
    bool classical = false;  // W = 0: rows keyed by (word length, polynomial degree)
    std::vector<HomologyRow> rows;
};

/** Homology of the truncated complex (length <= L, total word degree <= D).
 *
 *  W = 0: the boundary preserves polynomial degree, so the table is exact per
 *  (k, degree) with k <= L-1 reliable (k = L misses boundaries from above).
 *
 *  W != 0: requires qh weights on the ring with qh(W) = 1; rows are graded by
 *  tau = k - 2 qh(word), which both b and d_W lower by one.  Dropping words of
 *  degree > D is a quotient complex (no part of the differential lowers
 *  degree), so the degree cap is honest; dropping words of more than L+1
 *  factors is not.  A row tau is marked reliable when no word of the
 *  degree-<=D quotient in slices tau and tau+1 has k >= L, i.e. the length
 *  frontier is invisible there; on reliable rows the reported dimension is
 *  exactly dim H_tau of the degree-<=D quotient complex (which matches the
 *  degree-capped forms complex (Omega, dW^) under the HKR map). */
TruncatedHomology hh_truncated_homology(const Poly& w, unsigned length_bound,
                                        unsigned degree_bound);

}  // namespace lg
