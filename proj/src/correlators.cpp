#include "lgcalc/correlators.hpp"

#include <utility>

namespace lg {

namespace {

/** Laplace expansion along the first row; matrices here are tiny (n x n for
 *  n = number of variables). */
Poly poly_det(const PolyMatrix& a) {
    const std::size_t n = a.rows();
    if (n == 0) return Poly::constant(a.ring(), 1);
    if (n == 1) return a.at(0, 0);
    Poly out = Poly::zero(a.ring());
    for (std::size_t j = 0; j < n; ++j) {
        if (a.at(0, j).is_zero()) continue;
        PolyMatrix minor(a.ring(), n - 1, n - 1);
        for (std::size_t r = 1; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.set(r - 1, c < j ? c : c - 1, a.at(r, c));
            }
        const Poly term = a.at(0, j) * poly_det(minor);
        out = (j % 2 == 0) ? out + term : out - term;
    }
    return out;
}

/** The unique top-qh-weight monomial of the quotient basis (the socle). */
Exps socle_monomial(const ResidueFunctional& rf) {
    const auto& monos = rf.quotient.monomials;
    if (monos.empty()) throw Error("residue: quotient basis is empty");
    std::size_t best = 0, ties = 1;
    Rational top = rf.w.qh_weight_of(monos[0]);
    for (std::size_t i = 1; i < monos.size(); ++i) {
        const Rational wt = rf.w.qh_weight_of(monos[i]);
        if (wt == top) {
            ++ties;
        } else if (top < wt) {
            top = wt;
            best = i;
            ties = 1;
        }
    }
    if (ties != 1) throw Error("residue: top-weight subspace of the quotient is not one-dimensional");
    return monos[best];
}

int basis_parity(const MatrixFactorization& m, std::size_t idx) {
    return idx < m.rank_ev ? 0 : 1;
}

/** Entry of the odd differential as a supermatrix over the (ev, od) basis. */
Poly diff_super_entry(const MatrixFactorization& m, std::size_t r, std::size_t c) {
    const std::size_t re = m.rank_ev;
    if (r < re && c >= re) return m.d_ev.at(r, c - re);
    if (r >= re && c < re) return m.d_od.at(r - re, c);
    return Poly::zero(m.algebra.ring);
}

/** Entry of a morphism as a supermatrix (rows over target, cols over source). */
Poly morphism_super_entry(const Morphism& f, std::size_t r, std::size_t c) {
    const std::size_t rt = f.target->rank_ev, rs = f.source->rank_ev;
    if (r < rt) return c < rs ? f.b_ee.at(r, c) : f.b_eo.at(r, c - rs);
    return c < rs ? f.b_oe.at(r - rt, c) : f.b_oo.at(r - rt, c - rs);
}

/** Square matrix of forms; products wedge the entries. */
struct FormMatrix {
    RingPtr ring;
    std::size_t n = 0;
    std::vector<Form> data;

    FormMatrix(RingPtr r, std::size_t size)
        : ring(std::move(r)), n(size), data(n * n, Form(ring)) {}

    Form& at(std::size_t r, std::size_t c) { return data[r * n + c]; }
    const Form& at(std::size_t r, std::size_t c) const { return data[r * n + c]; }

    FormMatrix operator*(const FormMatrix& o) const {
        FormMatrix out(ring, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) {
                Form acc = Form::zero(ring);
                for (std::size_t k = 0; k < n; ++k) acc = acc + wedge(at(r, k), o.at(k, c));
                out.at(r, c) = acc;
            }
        return out;
    }
};

bool same_mf(const MFPtr& a, const MFPtr& b) {
    return a == b || (a && b && *a == *b);
}

/** kapustin_li against a prebuilt functional (reports reuse one build). */
Rational kapustin_li_with(const MFPtr& m, const Morphism& alpha, const ResidueFunctional& rf) {
    const std::size_t n = m->algebra.ring->nvars();
    const FormMask full = n >= 64 ? ~0ull : (1ull << n) - 1;
    return residue(boundary_bulk(m, alpha).coefficient(full), rf);
}

}  // namespace

Poly hessian(const Poly& w) {
    const RingPtr& ring = w.ring();
    if (!ring) throw Error("hessian: polynomial has no ring");
    const std::size_t n = ring->nvars();
    PolyMatrix h(ring, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h.set(i, j, w.partial(i).partial(j));
    return poly_det(h);
}

ResidueFunctional make_residue_functional(const Poly& w) {
    const RingPtr& ring = w.ring();
    if (!ring) throw Error("residue: potential has no ring");
    if (!ring->qh_weights) throw Error("residue: ring carries no qh weights");
    if (!w.qh_degree()) throw Error("residue: potential is not quasi-homogeneous");

    std::vector<Poly> partials;
    for (std::size_t i = 0; i < ring->nvars(); ++i) partials.push_back(w.partial(i));
    ResidueFunctional rf;
    rf.w = w;
    rf.jacobian_gb = buchberger(partials);
    rf.quotient = quotient_basis(rf.jacobian_gb);
    if (!rf.quotient.finite) throw Error("residue: critical locus is not isolated");
    rf.mu = static_cast<long>(rf.quotient.dimension());
    rf.socle_rep = normal_form(hessian(w), rf.jacobian_gb);
    if (rf.socle_rep.is_zero()) throw Error("residue: Hessian normal form is zero");
    if (rf.socle_rep.coefficient(socle_monomial(rf)).is_zero())
        throw Error("residue: Hessian class misses the socle");
    return rf;
}

Rational residue(const Poly& h, const ResidueFunctional& rf) {
    require_same_ring(h.ring(), rf.w.ring(), "residue");
    const Poly nf = normal_form(h, rf.jacobian_gb);
    if (nf.is_zero()) return Rational(0);
    const Exps socle = socle_monomial(rf);
    return nf.coefficient(socle) * Rational(rf.mu) / rf.socle_rep.coefficient(socle);
}

Form boundary_bulk(const MFPtr& m, const Morphism& alpha) {
    if (!m) throw Error("boundary_bulk: null factorization");
    if (!same_mf(alpha.source, m) || !same_mf(alpha.target, m))
        throw Error("boundary_bulk: morphism is not an endomorphism of the factorization");
    const RingPtr& ring = m->algebra.ring;
    const std::size_t total = m->total_rank(), n = ring->nvars();

    FormMatrix a(ring, total), dd(ring, total);
    for (std::size_t r = 0; r < total; ++r)
        for (std::size_t c = 0; c < total; ++c) {
            a.at(r, c) = Form::from_poly(morphism_super_entry(alpha, r, c));
            dd.at(r, c) = exterior_d(diff_super_entry(*m, r, c));
        }

    auto str = [&](const FormMatrix& x) {
        Form t = Form::zero(ring);
        for (std::size_t r = 0; r < total; ++r)
            t = basis_parity(*m, r) == 0 ? t + x.at(r, r) : t - x.at(r, r);
        return t;
    };

    Form tau = str(a);
    FormMatrix acc = a;
    Rational kfact(1);
    for (std::size_t k = 1; k <= n; ++k) {
        acc = acc * dd;
        kfact = kfact * Rational(static_cast<long>(k));
        tau = tau + str(acc).scaled(Rational(1) / kfact);
    }
    return tau;
}

Rational kapustin_li(const MFPtr& m, const Morphism& alpha) {
    if (!m) throw Error("kapustin_li: null factorization");
    return kapustin_li_with(m, alpha, make_residue_functional(m->algebra.potential));
}

Rational kl_pairing(const Morphism& alpha, const Morphism& beta) {
    if (!same_mf(alpha.source, beta.target) || !same_mf(alpha.target, beta.source))
        throw Error("kl_pairing: brane mismatch");
    return kapustin_li(alpha.target, compose(alpha, beta));
}

const char* kl_convention() {
    return "str(ev|od); tau = sum 1/k! str(alpha (dd)^k), right wedge powers; Res(hess) = mu";
}

NondegeneracyReport nondegeneracy_report(const std::vector<MFPtr>& branes,
                                         unsigned degree_bound) {
    NondegeneracyReport rep;
    rep.convention = kl_convention();
    if (branes.empty()) {
        rep.nondegenerate = true;
        return rep;
    }
    for (const auto& b : branes) {
        if (!b) throw Error("nondegeneracy_report: null brane");
        require_same_ring(b->algebra.ring, branes[0]->algebra.ring, "nondegeneracy_report");
        if (!(b->algebra.potential == branes[0]->algebra.potential))
            throw Error("nondegeneracy_report: branes over different potentials");
    }
    const ResidueFunctional rf = make_residue_functional(branes[0]->algebra.potential);

    for (std::size_t i = 0; i < branes.size(); ++i)
        for (std::size_t j = 0; j < branes.size(); ++j)
            for (Parity par : {Parity::Even, Parity::Odd})
                for (const Morphism& f : ext_basis(branes[i], branes[j], par, degree_bound))
                    rep.classes.push_back({i, j, par, f});

    const std::size_t nc = rep.classes.size();
    QMatrix gram(nc, nc);
    for (std::size_t a = 0; a < nc; ++a)
        for (std::size_t b = 0; b < nc; ++b) {
            const KLClass& ca = rep.classes[a];
            const KLClass& cb = rep.classes[b];
            // The pairing couples Hom(M,N) with Hom(N,M); other pairs stay 0.
            if (ca.source != cb.target || ca.target != cb.source) continue;
            gram.at(a, b) = kapustin_li_with(branes[ca.target], compose(ca.rep, cb.rep), rf);
        }
    rep.gram = gram;
    rep.rank = rank(gram);
    rep.nondegenerate = rep.rank == nc;
    return rep;
}

}  // namespace lg
