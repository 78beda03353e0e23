#include "lgcalc/groebner.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace lg {

namespace {

bool divides(const Exps& a, const Exps& b) {  // a | b
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Exps lcm_exps(const Exps& a, const Exps& b) {
    Exps l(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
    return l;
}

bool coprime(const Exps& a, const Exps& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

Poly monic(const Poly& p, MonomialOrder order) {
    Lead lt = leading_term(p, order);
    return p.scaled(Rational(1) / lt.coeff);
}

/** Full division remainder of p by (polys, their cached leads). */
Poly reduce(const Poly& p, const std::vector<Poly>& basis, const std::vector<Lead>& leads,
            MonomialOrder order) {
    Poly rem = Poly::zero(p.ring());
    Poly work = p;
    const std::size_t n = p.ring()->nvars();
    while (!work.is_zero()) {
        Lead lt = leading_term(work, order);
        bool reduced = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (!divides(leads[i].mono, lt.mono)) continue;
            Exps q(n);
            for (std::size_t k = 0; k < n; ++k) q[k] = lt.mono[k] - leads[i].mono[k];
            Rational c = lt.coeff / leads[i].coeff;
            work = work - basis[i] * Poly::monomial(p.ring(), q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lt.mono, lt.coeff);
            work.add_term(lt.mono, -lt.coeff);
        }
    }
    return rem;
}

}  // namespace

Lead leading_term(const Poly& p, MonomialOrder order) {
    if (p.is_zero()) throw Error("groebner: leading term of zero");
    auto it = p.terms().begin();
    Lead best{it->first, it->second};
    for (++it; it != p.terms().end(); ++it)
        if (monomial_less(best.mono, it->first, order)) best = {it->first, it->second};
    return best;
}

bool monomial_less(const Exps& a, const Exps& b, MonomialOrder order) {
    if (a.size() != b.size()) throw Error("groebner: exponent length mismatch");
    unsigned da = total_degree(a), db = total_degree(b);
    switch (order) {
        case MonomialOrder::Lex:
            return a < b;
        case MonomialOrder::DegLex:
            if (da != db) return da < db;
            return a < b;
        case MonomialOrder::DegRevLex:
            if (da != db) return da < db;
            for (std::size_t i = a.size(); i-- > 0;)
                if (a[i] != b[i]) return a[i] > b[i];
            return false;
    }
    throw Error("groebner: bad order tag");
}

GroebnerBasis buchberger(const std::vector<Poly>& generators, MonomialOrder order) {
    GroebnerBasis out;
    out.order = order;
    for (const auto& g : generators) {
        if (!out.ring) out.ring = g.ring();
        require_same_ring(out.ring, g.ring(), "groebner generators");
        if (!g.is_zero()) out.generators.push_back(g);
    }
    if (!out.ring) throw Error("groebner: no generators");
    if (out.generators.empty()) return out;  // the zero ideal

    std::vector<Poly> basis;
    std::vector<Lead> leads;
    for (const auto& g : out.generators) {
        basis.push_back(monic(g, order));
        leads.push_back(leading_term(basis.back(), order));
    }

    // Pair queue and the "already considered" set used by the chain criterion.
    std::set<std::pair<std::size_t, std::size_t>> pending, done;
    auto push_pairs_for = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i) pending.insert({i, j});
    };
    for (std::size_t j = 1; j < basis.size(); ++j) push_pairs_for(j);

    while (!pending.empty()) {
        auto [i, j] = *pending.begin();
        pending.erase(pending.begin());
        done.insert({i, j});

        // Product criterion: coprime leading monomials reduce to zero.
        if (coprime(leads[i].mono, leads[j].mono)) continue;

        // Chain criterion: lcm divisible by a third leading monomial whose
        // pairs with i and j were both already handled.
        Exps l = lcm_exps(leads[i].mono, leads[j].mono);
        bool chained = false;
        for (std::size_t k = 0; k < basis.size() && !chained; ++k) {
            if (k == i || k == j || !divides(leads[k].mono, l)) continue;
            auto key = [&](std::size_t a, std::size_t b) {
                return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
            };
            if (done.count(key(i, k)) && done.count(key(j, k))) chained = true;
        }
        if (chained) continue;

        const std::size_t n = out.ring->nvars();
        Exps qi(n), qj(n);
        for (std::size_t k = 0; k < n; ++k) {
            qi[k] = l[k] - leads[i].mono[k];
            qj[k] = l[k] - leads[j].mono[k];
        }
        Poly s = basis[i] * Poly::monomial(out.ring, qi, Rational(1) / leads[i].coeff) -
                 basis[j] * Poly::monomial(out.ring, qj, Rational(1) / leads[j].coeff);
        Poly r = reduce(s, basis, leads, order);
        if (r.is_zero()) continue;
        basis.push_back(monic(r, order));
        leads.push_back(leading_term(basis.back(), order));
        push_pairs_for(basis.size() - 1);
    }

    // Minimalize: drop elements whose lead is divisible by another lead.
    std::vector<Poly> minimal;
    std::vector<Lead> min_leads;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j) continue;
            if (!divides(leads[j].mono, leads[i].mono)) continue;
            if (leads[j].mono == leads[i].mono && j > i) continue;  // keep first of equals
            redundant = true;
        }
        if (!redundant) {
            minimal.push_back(basis[i]);
            min_leads.push_back(leads[i]);
        }
    }

    // Inter-reduce tails to the unique reduced basis.
    std::vector<Poly> reduced(minimal.size(), Poly::zero(out.ring));
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        std::vector<Lead> other_leads;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) {
                others.push_back(minimal[j]);
                other_leads.push_back(min_leads[j]);
            }
        reduced[i] = monic(reduce(minimal[i], others, other_leads, order), order);
    }

    std::sort(reduced.begin(), reduced.end(), [&](const Poly& a, const Poly& b) {
        return monomial_less(leading_term(b, order).mono, leading_term(a, order).mono, order);
    });
    out.basis = std::move(reduced);
    return out;
}

Poly normal_form(const Poly& p, const GroebnerBasis& gb) {
    require_same_ring(p.ring(), gb.ring, "normal form");
    if (gb.basis.empty()) return p;
    std::vector<Lead> leads;
    leads.reserve(gb.basis.size());
    for (const auto& g : gb.basis) leads.push_back(leading_term(g, gb.order));
    return reduce(p, gb.basis, leads, gb.order);
}

QuotientBasis quotient_basis(const GroebnerBasis& gb) {
    QuotientBasis qb;
    const std::size_t n = gb.ring->nvars();
    std::vector<Exps> lead_monos;
    for (const auto& g : gb.basis) lead_monos.push_back(leading_term(g, gb.order).mono);

    // Constant in the ideal: the quotient is the zero ring.
    for (const auto& m : lead_monos)
        if (total_degree(m) == 0) {
            qb.finite = true;
            return qb;
        }

    // Zero-dimensionality: every variable must show up as a pure power lead.
    std::vector<unsigned> box(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
        unsigned best = 0;
        for (const auto& m : lead_monos) {
            bool pure = m[v] > 0;
            for (std::size_t k = 0; k < n && pure; ++k)
                if (k != v && m[k] > 0) pure = false;
            if (pure && (best == 0 || m[v] < best)) best = m[v];
        }
        if (best == 0) return qb;  // infinite-dimensional
        box[v] = best;
    }

    // Standard monomials live in the box below the pure-power bounds.
    qb.finite = true;
    Exps cur(n, 0);
    while (true) {
        bool standard = true;
        for (const auto& m : lead_monos)
            if (divides(m, cur)) {
                standard = false;
                break;
            }
        if (standard) qb.monomials.push_back(cur);
        std::size_t i = 0;
        while (i < n) {
            if (++cur[i] < box[i]) break;
            cur[i] = 0;
            ++i;
        }
        if (i == n) break;
    }
    std::sort(qb.monomials.begin(), qb.monomials.end(),
              [&](const Exps& a, const Exps& b) { return monomial_less(a, b, gb.order); });
    return qb;
}

long milnor_number(const Poly& w) {
    if (w.is_constant()) throw Error("milnor number: constant potential");
    std::vector<Poly> jac;
    for (std::size_t i = 0; i < w.ring()->nvars(); ++i) jac.push_back(w.partial(i));
    GroebnerBasis gb = buchberger(jac, MonomialOrder::DegRevLex);
    QuotientBasis qb = quotient_basis(gb);
    if (!qb.finite)
        throw Error("milnor number: critical locus is not isolated");
    return static_cast<long>(qb.dimension());
}

}  // namespace lg
