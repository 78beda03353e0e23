#include "lgcalc/orbifold.hpp"

#include <algorithm>
#include <utility>

#include "lgcalc/form.hpp"
#include "lgcalc/groebner.hpp"

namespace lg {

namespace {

std::string idx_str(std::size_t i) { return std::to_string(i); }

/** Index of `m` in `elements`, or npos. */
std::size_t find_element(const std::vector<QMatrix>& elements, const QMatrix& m) {
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == m) return i;
    return static_cast<std::size_t>(-1);
}

void require_element(const GroupAction& g, std::size_t idx, const char* where) {
    if (idx >= g.order()) throw Error(std::string(where) + ": group index " + idx_str(idx) + " out of range");
}

void require_action_ring(const GroupAction& g, const RingPtr& ring, const char* where) {
    if (!ring) throw Error(std::string(where) + ": polynomial has no ring");
    if (ring->nvars() != g.dim())
        throw Error(std::string(where) + ": group acts on " + idx_str(g.dim()) + " variables but the ring has " +
                    idx_str(ring->nvars()));
}

bool same_action(const ActionPtr& a, const ActionPtr& b) {
    return a == b || (a && b && a->elements == b->elements);
}

void prune_zeros(std::map<std::size_t, Poly>& coeffs) {
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
}

/** sigma_g(p) = p(M_g y): substitution along the matrix itself (not the
 *  inverse); used for invariance checks, where the direction is immaterial. */
Poly matrix_substitute(const QMatrix& m, const Poly& p) {
    const RingPtr& r = p.ring();
    std::vector<Poly> images;
    images.reserve(r->nvars());
    for (std::size_t i = 0; i < r->nvars(); ++i) {
        Poly row = Poly::zero(r);
        for (std::size_t j = 0; j < r->nvars(); ++j)
            if (!m.at(i, j).is_zero()) row = row + Poly::variable(r, j).scaled(m.at(i, j));
        images.push_back(std::move(row));
    }
    return p.substitute(images);
}

/** Constant-entry PolyMatrix over `ring` from a rational matrix. */
PolyMatrix promote(const RingPtr& ring, const QMatrix& q) {
    PolyMatrix out(ring, q.rows(), q.cols());
    for (std::size_t r = 0; r < q.rows(); ++r)
        for (std::size_t c = 0; c < q.cols(); ++c)
            if (!q.at(r, c).is_zero()) out.set(r, c, Poly::constant(ring, q.at(r, c)));
    return out;
}

/** Entrywise group_apply. */
PolyMatrix action_on_matrix(const GroupAction& g, std::size_t idx, const PolyMatrix& m) {
    PolyMatrix out(m.ring(), m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (!m.at(r, c).is_zero()) out.set(r, c, group_apply(g, idx, m.at(r, c)));
    return out;
}

/** Contraction with tau = sum_i lin[i] d/dy^i: ascending removal signs. */
Form contract_linear(const std::vector<Poly>& lin, const Form& a) {
    Form out(a.ring());
    for (const auto& [mask, p] : a.components()) {
        int pos = 0;
        for (std::size_t i = 0; i < lin.size(); ++i) {
            if (!(mask >> i & 1ull)) continue;
            ++pos;  // 1-based position of dy^i inside the ascending wedge
            out.add_component(mask & ~(1ull << i), (lin[i] * p).scaled(pos % 2 ? 1 : -1));
        }
    }
    return out;
}

/** M_f restricted to a g-fixed subspace: solves M_f . B = B . R columnwise. */
QMatrix restrict_to_subspace(const QMatrix& m, const QMatrix& basis_cols) {
    std::vector<QVector> sols;
    sols.reserve(basis_cols.cols());
    for (std::size_t c = 0; c < basis_cols.cols(); ++c) {
        QVector col(basis_cols.rows());
        for (std::size_t r = 0; r < basis_cols.rows(); ++r) col[r] = basis_cols.at(r, c);
        auto x = solve(basis_cols, m.apply(col));
        if (!x) throw Error("orbifold: centralizer element does not preserve the fixed locus");
        sols.push_back(*x);
    }
    return QMatrix::from_columns(sols);
}

}  // namespace

ActionPtr make_group_action(std::vector<QMatrix> elements) {
    if (elements.empty()) throw Error("group: needs at least one element");
    const std::size_t n = elements[0].rows();
    for (const auto& m : elements)
        if (m.rows() != n || m.cols() != n)
            throw Error("group: elements must be square matrices of one size");
    for (std::size_t i = 0; i < elements.size(); ++i)
        for (std::size_t j = i + 1; j < elements.size(); ++j)
            if (elements[i] == elements[j])
                throw Error("group: elements " + idx_str(i) + " and " + idx_str(j) + " coincide");

    auto g = std::make_shared<GroupAction>();
    g->elements = std::move(elements);
    g->identity_index = find_element(g->elements, QMatrix::identity(n));
    if (g->identity_index == static_cast<std::size_t>(-1)) throw Error("group: missing identity");

    const std::size_t order = g->elements.size();
    g->mult_table.assign(order, std::vector<std::size_t>(order, 0));
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            std::size_t p = find_element(g->elements, g->elements[a] * g->elements[b]);
            if (p == static_cast<std::size_t>(-1))
                throw Error("group: not closed, product of elements " + idx_str(a) + " and " + idx_str(b) +
                            " is missing");
            g->mult_table[a][b] = p;
        }
    g->inverse_table.assign(order, 0);
    for (std::size_t a = 0; a < order; ++a) {
        bool found = false;
        for (std::size_t b = 0; b < order && !found; ++b)
            if (g->mult_table[a][b] == g->identity_index && g->mult_table[b][a] == g->identity_index) {
                g->inverse_table[a] = b;
                found = true;
            }
        if (!found) throw Error("group: element " + idx_str(a) + " has no inverse");
    }
    return g;
}

ValidationReport validate_action(const GroupAction& g, const Poly& w) {
    ValidationReport rep;
    const std::size_t order = g.order();
    if (order == 0) {
        rep.fail("action: no elements");
        return rep;
    }
    const std::size_t n = g.dim();
    for (std::size_t i = 0; i < order; ++i)
        if (g.elements[i].rows() != n || g.elements[i].cols() != n)
            rep.fail("action: element " + idx_str(i) + " is not " + idx_str(n) + "x" + idx_str(n));
    if (g.mult_table.size() != order || g.inverse_table.size() != order || g.identity_index >= order) {
        rep.fail("action: tables do not match the element count");
        return rep;
    }
    for (const auto& row : g.mult_table)
        if (row.size() != order) {
            rep.fail("action: ragged multiplication table");
            return rep;
        }
    for (const auto& row : g.mult_table)
        for (std::size_t v : row)
            if (v >= order) {
                rep.fail("action: multiplication table index out of range");
                return rep;
            }
    for (std::size_t v : g.inverse_table)
        if (v >= order) {
            rep.fail("action: inverse table index out of range");
            return rep;
        }
    if (!rep.ok) return rep;  // shape failures make the checks below meaningless

    if (!(g.elements[g.identity_index] == QMatrix::identity(n)))
        rep.fail("action: identity slot " + idx_str(g.identity_index) + " does not hold the identity matrix");
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = i + 1; j < order; ++j)
            if (g.elements[i] == g.elements[j])
                rep.fail("action: elements " + idx_str(i) + " and " + idx_str(j) + " coincide");

    // Closure: the stored table must reproduce the matrix products.
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b)
            if (!(g.elements[a] * g.elements[b] == g.elements[g.mult_table[a][b]]))
                rep.fail("action: product of elements " + idx_str(a) + " and " + idx_str(b) +
                         " is not an element of the set");
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b)
            for (std::size_t c = 0; c < order; ++c)
                if (g.mult_table[g.mult_table[a][b]][c] != g.mult_table[a][g.mult_table[b][c]]) {
                    rep.fail("action: associativity fails at (" + idx_str(a) + "," + idx_str(b) + "," + idx_str(c) +
                             ")");
                    a = b = order - 1;  // one witness is enough
                    break;
                }
    for (std::size_t a = 0; a < order; ++a)
        if (g.mult_table[a][g.inverse_table[a]] != g.identity_index ||
            g.mult_table[g.inverse_table[a]][a] != g.identity_index)
            rep.fail("action: inverse table wrong at element " + idx_str(a));

    if (!w.ring()) {
        rep.fail("action: potential has no ring");
        return rep;
    }
    if (w.ring()->nvars() != n) {
        rep.fail("action: potential ring has " + idx_str(w.ring()->nvars()) + " variables, the group acts on " +
                 idx_str(n));
        return rep;
    }
    for (std::size_t a = 0; a < order; ++a)
        if (matrix_substitute(g.elements[a], w) != w)
            rep.fail("action: element " + idx_str(a) + " does not preserve the potential");

    // In Z grading the action must preserve the charge decomposition.
    if (w.ring()->grading == Grading::Z && w.ring()->rcharge_weights) {
        const auto& wt = *w.ring()->rcharge_weights;
        for (std::size_t a = 0; a < order; ++a)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (!g.elements[a].at(i, j).is_zero() && wt[i] != wt[j])
                        rep.fail("action: element " + idx_str(a) + " mixes variables " + idx_str(i) + " and " +
                                 idx_str(j) + " of different charge");
    }
    return rep;
}

Poly group_apply(const GroupAction& g, std::size_t idx, const Poly& p) {
    require_element(g, idx, "group_apply");
    require_action_ring(g, p.ring(), "group_apply");
    return matrix_substitute(g.elements[g.inverse_table[idx]], p);
}

bool GroupRingElement::is_zero() const {
    for (const auto& [gi, c] : coeffs)
        if (!c.is_zero()) return false;
    return true;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
    if (!same_action(action, o.action)) throw Error("group ring: mismatched group actions");
    GroupRingElement out{action ? action : o.action, coeffs};
    for (const auto& [gi, c] : o.coeffs) {
        auto it = out.coeffs.find(gi);
        if (it == out.coeffs.end())
            out.coeffs.emplace(gi, c);
        else
            it->second = it->second + c;
    }
    prune_zeros(out.coeffs);
    return out;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const { return *this + o.scaled(-1); }

GroupRingElement GroupRingElement::scaled(const Rational& c) const {
    GroupRingElement out{action, {}};
    if (c.is_zero()) return out;
    for (const auto& [gi, p] : coeffs)
        if (!p.is_zero()) out.coeffs.emplace(gi, p.scaled(c));
    return out;
}

bool GroupRingElement::operator==(const GroupRingElement& o) const {
    if (!same_action(action, o.action)) return false;
    return (*this - o).is_zero();
}

GroupRingElement group_ring_element(ActionPtr action, std::size_t g, Poly coeff) {
    if (!action) throw Error("group ring: null group action");
    require_element(*action, g, "group ring");
    require_action_ring(*action, coeff.ring(), "group ring");
    GroupRingElement out{std::move(action), {}};
    if (!coeff.is_zero()) out.coeffs.emplace(g, std::move(coeff));
    return out;
}

GroupRingElement twisted_mul(const GroupRingElement& a, const GroupRingElement& b) {
    if (!same_action(a.action, b.action)) throw Error("group ring: mismatched group actions");
    ActionPtr action = a.action ? a.action : b.action;
    if (!action) throw Error("group ring: null group action");
    GroupRingElement out{action, {}};
    for (const auto& [gi, r] : a.coeffs)
        for (const auto& [hi, s] : b.coeffs) {
            std::size_t prod = action->mult_table[gi][hi];
            Poly term = r * group_apply(*action, gi, s);
            auto it = out.coeffs.find(prod);
            if (it == out.coeffs.end())
                out.coeffs.emplace(prod, std::move(term));
            else
                it->second = it->second + term;
        }
    prune_zeros(out.coeffs);
    return out;
}

std::vector<QVector> fixed_locus(const GroupAction& g, std::size_t idx) {
    require_element(g, idx, "fixed_locus");
    return kernel_basis(g.elements[idx] - QMatrix::identity(g.dim()));
}

RingPtr doubled_ring(const RingPtr& ring) {
    if (!ring) throw Error("doubled_ring: null ring");
    RingSpec spec;
    spec.variables.reserve(2 * ring->nvars());
    for (const auto& v : ring->variables) spec.variables.push_back(v + "_l");
    for (const auto& v : ring->variables) spec.variables.push_back(v + "_r");
    return make_ring(std::move(spec));
}

Poly left_embed(const Poly& p, const RingPtr& doubled) {
    if (!p.ring() || !doubled) throw Error("left_embed: null ring");
    const std::size_t n = p.ring()->nvars();
    if (doubled->nvars() != 2 * n) throw Error("left_embed: ring is not the double");
    std::vector<std::size_t> var_map(n);
    for (std::size_t i = 0; i < n; ++i) var_map[i] = i;
    return p.rename(doubled, var_map);
}

Poly right_embed(const Poly& p, const RingPtr& doubled) {
    if (!p.ring() || !doubled) throw Error("right_embed: null ring");
    const std::size_t n = p.ring()->nvars();
    if (doubled->nvars() != 2 * n) throw Error("right_embed: ring is not the double");
    std::vector<std::size_t> var_map(n);
    for (std::size_t i = 0; i < n; ++i) var_map[i] = n + i;
    return p.rename(doubled, var_map);
}

std::vector<Poly> delta_decompose(const GroupAction& g, std::size_t idx, const Poly& r) {
    require_element(g, idx, "delta_decompose");
    require_action_ring(g, r.ring(), "delta_decompose");
    const RingPtr& base = r.ring();
    const std::size_t n = base->nvars();
    RingPtr dbl = doubled_ring(base);

    std::vector<Poly> lv, rv;  // g(y_i)(x)1 and 1(x)y_i
    lv.reserve(n);
    rv.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        lv.push_back(left_embed(group_apply(g, idx, Poly::variable(base, i)), dbl));
        rv.push_back(Poly::variable(dbl, n + i));
    }

    // Telescope through the argument tuples (v_1..v_{i-1}, l_i..l_n): slot i
    // contributes prefix(right vars) . divided-difference . suffix(left images).
    std::vector<Poly> out(n, Poly::zero(dbl));
    for (const auto& [e, c] : r.terms()) {
        std::vector<Poly> suffix(n + 1, Poly::constant(dbl, 1));
        for (std::size_t j = n; j-- > 0;) suffix[j] = lv[j].pow(e[j]) * suffix[j + 1];
        Poly prefix = Poly::constant(dbl, 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (e[i] > 0) {
                Poly dd = Poly::zero(dbl);
                for (unsigned t = 0; t < e[i]; ++t) dd = dd + lv[i].pow(t) * rv[i].pow(e[i] - 1 - t);
                out[i] = out[i] + (prefix * dd * suffix[i + 1]).scaled(c);
            }
            prefix = prefix * rv[i].pow(e[i]);
        }
    }
    return out;
}

Poly doubled_apply(const GroupAction& g, std::size_t f, std::size_t h, const Poly& p) {
    require_element(g, f, "doubled_apply");
    require_element(g, h, "doubled_apply");
    if (!p.ring()) throw Error("doubled_apply: polynomial has no ring");
    const std::size_t n = g.dim();
    const RingPtr& dbl = p.ring();
    if (dbl->nvars() != 2 * n) throw Error("doubled_apply: ring is not the double");
    const QMatrix& mf = g.elements[g.inverse_table[f]];  // f's function action
    const QMatrix& mh = g.elements[h];                   // h^{-1}'s function action
    std::vector<Poly> images(2 * n, Poly());
    for (std::size_t i = 0; i < n; ++i) {
        Poly li = Poly::zero(dbl), ri = Poly::zero(dbl);
        for (std::size_t j = 0; j < n; ++j) {
            if (!mf.at(i, j).is_zero()) li = li + Poly::variable(dbl, j).scaled(mf.at(i, j));
            if (!mh.at(i, j).is_zero()) ri = ri + Poly::variable(dbl, n + j).scaled(mh.at(i, j));
        }
        images[i] = std::move(li);
        images[n + i] = std::move(ri);
    }
    return p.substitute(images);
}

Poly twisted_diagonal_restrict(const GroupAction& g, std::size_t idx, const Poly& p) {
    require_element(g, idx, "twisted_diagonal_restrict");
    if (!p.ring()) throw Error("twisted_diagonal_restrict: polynomial has no ring");
    const std::size_t n = g.dim();
    const RingPtr& dbl = p.ring();
    if (dbl->nvars() != 2 * n) throw Error("twisted_diagonal_restrict: ring is not the double");
    const QMatrix& minv = g.elements[g.inverse_table[idx]];
    std::vector<Poly> images(2 * n, Poly());
    for (std::size_t i = 0; i < n; ++i) {
        images[i] = Poly::variable(dbl, i);
        Poly ri = Poly::zero(dbl);
        for (std::size_t j = 0; j < n; ++j)
            if (!minv.at(i, j).is_zero()) ri = ri + Poly::variable(dbl, j).scaled(minv.at(i, j));
        images[n + i] = std::move(ri);
    }
    return p.substitute(images);
}

ValidationReport koszul_square_check(const GroupAction& g, std::size_t idx, const Poly& w, unsigned degree_bound) {
    require_element(g, idx, "koszul_square_check");
    require_action_ring(g, w.ring(), "koszul_square_check");
    const RingPtr& base = w.ring();
    const std::size_t n = base->nvars();
    if (n >= 20) throw Error("koszul_square_check: too many variables for the exterior slice");
    RingPtr dbl = doubled_ring(base);

    std::vector<Poly> lin;  // L_i = g(y_i)(x)1 - 1(x)y_i
    lin.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        lin.push_back(left_embed(group_apply(g, idx, Poly::variable(base, i)), dbl) -
                      Poly::variable(dbl, n + i));
    std::vector<Poly> dw = delta_decompose(g, idx, w);
    Form omega = Form::zero(dbl);
    for (std::size_t i = 0; i < n; ++i) omega = omega + Form::component(dw[i], 1ull << i);
    Poly curvature = left_embed(w, dbl) - right_embed(w, dbl);

    ValidationReport rep;

    // Exact reconstruction g(W)(x)1 - 1(x)W = sum_i delta_i(W) L_i, stated
    // against the curvature so a defect names the sector data directly.
    {
        Poly recon = Poly::zero(dbl);
        for (std::size_t i = 0; i < n; ++i) recon = recon + dw[i] * lin[i];
        Poly lhs = left_embed(group_apply(g, idx, w), dbl) - right_embed(w, dbl);
        if (recon != lhs) rep.fail("koszul: delta reconstruction fails for the potential");
    }

    auto dk = [&](const Form& a) { return contract_linear(lin, a) + wedge(omega, a); };

    // The anticommutator of contraction and wedge is sum_i delta_i(W) L_i =
    // g(W)(x)1 - 1(x)W, so the square equals the curvature exactly when the
    // sector element preserves W; report that cause directly.
    const bool invariant = group_apply(g, idx, w) == w;
    if (!invariant) rep.fail("koszul: potential is not invariant under the sector element");

    // (d^K + d^K_W)^2 = (W(x)1 - 1(x)W) id on every p dy^I with p a doubled
    // monomial of degree <= degree_bound; linearity extends the identity.
    if (invariant) {
        const FormMask full = (1ull << n) - 1;
        std::vector<Exps> slice;
        Exps cur(2 * n, 0);
        auto enumerate = [&](auto&& self, std::size_t pos, unsigned left) -> void {
            if (pos == 2 * n) {
                slice.push_back(cur);
                return;
            }
            for (unsigned e = 0; e <= left; ++e) {
                cur[pos] = e;
                self(self, pos + 1, left - e);
            }
            cur[pos] = 0;
        };
        enumerate(enumerate, 0, degree_bound);
        for (const auto& e : slice) {
            Poly mono = Poly::monomial(dbl, e);
            for (FormMask mask = 0; mask <= full; ++mask) {
                Form a = Form::component(mono, mask);
                Form got = dk(dk(a));
                Form want = a.mul_poly(curvature);
                if (got != want) {
                    rep.fail("koszul: square defect on " + mono.str() + " dy-mask " + idx_str(mask));
                    if (rep.failures.size() > 8) return rep;
                }
            }
        }
    }

    // Sector equivariance: transporting delta^g by (f x h) lands in the
    // sector fgh up to the twisted diagonal.  Substituting (u,v) ->
    // (M_{f^-1} u, M_h v) into the reconstruction identity rewrites its linear
    // factors as sum_j (M_h)_{ij} L^{fgh}_j, so the transported coefficients
    // satisfy sum_i (M_h)_{ij} Phi(delta^g_i(w)) = delta^{fgh}_j(h^{-1} w)
    // mod I_{fgh} (coefficients along a regular sequence are unique mod the
    // ideal, nothing stronger).
    for (std::size_t f = 0; f < g.order(); ++f)
        for (std::size_t h = 0; h < g.order(); ++h) {
            std::size_t tgt = g.mult_table[f][g.mult_table[idx][h]];
            const QMatrix& trans = g.elements[h];
            std::vector<Poly> dt = delta_decompose(g, tgt, group_apply(g, g.inverse_table[h], w));
            std::vector<Poly> phi;
            phi.reserve(n);
            for (std::size_t i = 0; i < n; ++i) phi.push_back(doubled_apply(g, f, h, dw[i]));
            for (std::size_t j = 0; j < n; ++j) {
                Poly lhs = Poly::zero(dbl);
                for (std::size_t i = 0; i < n; ++i)
                    if (!trans.at(i, j).is_zero()) lhs = lhs + phi[i].scaled(trans.at(i, j));
                if (!twisted_diagonal_restrict(g, tgt, lhs - dt[j]).is_zero()) {
                    rep.fail("koszul: equivariance fails at (f,h)=(" + idx_str(f) + "," + idx_str(h) +
                             ") component " + idx_str(j));
                    if (rep.failures.size() > 8) return rep;
                }
            }
        }
    return rep;
}

ConjugacyData conjugacy_data(const GroupAction& g) {
    const std::size_t order = g.order();
    if (order == 0) throw Error("conjugacy: empty group");
    ConjugacyData out;
    std::vector<bool> seen(order, false);
    for (std::size_t x = 0; x < order; ++x) {
        if (seen[x]) continue;
        std::vector<std::size_t> cls;
        for (std::size_t f = 0; f < order; ++f) {
            std::size_t y = g.mult_table[g.mult_table[f][x]][g.inverse_table[f]];
            if (!seen[y]) {
                seen[y] = true;
                cls.push_back(y);
            }
        }
        std::sort(cls.begin(), cls.end());
        out.representatives.push_back(cls.front());  // x itself: least unseen index
        out.classes.push_back(std::move(cls));
    }
    for (std::size_t rep : out.representatives) {
        std::vector<std::size_t> cz;
        for (std::size_t f = 0; f < order; ++f)
            if (g.mult_table[f][rep] == g.mult_table[rep][f]) cz.push_back(f);
        out.centralizers.push_back(std::move(cz));
    }
    return out;
}

OrbifoldSpectrum orbifold_spectrum(const GroupAction& g, const Poly& w) {
    require_action_ring(g, w.ring(), "orbifold_spectrum");
    const std::size_t n = g.dim();
    ConjugacyData cd = conjugacy_data(g);

    OrbifoldSpectrum out;
    out.abelian = true;
    for (std::size_t a = 0; a < g.order() && out.abelian; ++a)
        for (std::size_t b = a + 1; b < g.order(); ++b)
            if (g.mult_table[a][b] != g.mult_table[b][a]) {
                out.abelian = false;
                break;
            }
    if (!out.abelian)
        out.note = "nonabelian group: sectors are labeled by least-index class representatives; other "
                   "representatives give canonically isomorphic summands";

    for (std::size_t k = 0; k < cd.classes.size(); ++k) {
        SectorData s;
        s.g = cd.representatives[k];
        s.centralizer = cd.centralizers[k];
        s.fixed_basis = fixed_locus(g, s.g);
        const std::size_t m = s.fixed_basis.size();

        if (m == 0) {
            // Y^g = {0}: the sector Jacobi ring is Q, the volume form is
            // trivial, and every centralizer element acts as the identity.
            s.point_sector = true;
            s.mu_g = 1;
            s.invariant_dim = 1;
        } else {
            RingSpec spec;
            for (std::size_t a = 0; a < m; ++a) spec.variables.push_back("t" + idx_str(a));
            s.sector_ring = make_ring(std::move(spec));
            QMatrix basis = QMatrix::from_columns(s.fixed_basis);  // n x m

            std::vector<Poly> images;
            images.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                Poly row = Poly::zero(s.sector_ring);
                for (std::size_t a = 0; a < m; ++a)
                    if (!basis.at(i, a).is_zero()) row = row + Poly::variable(s.sector_ring, a).scaled(basis.at(i, a));
                images.push_back(std::move(row));
            }
            s.w_g = w.substitute(images);

            std::vector<Poly> partials;
            partials.reserve(m);
            for (std::size_t a = 0; a < m; ++a) partials.push_back(s.w_g.partial(a));
            GroebnerBasis gb = buchberger(partials);
            QuotientBasis qb = quotient_basis(gb);
            if (!qb.finite)
                throw Error("orbifold: sector of element " + idx_str(s.g) + " has a non-isolated critical locus");
            s.mu_g = static_cast<long>(qb.dimension());

            // dim (J_g . vol)^{C_g} by character averaging; the volume form of
            // Y^g contributes det of the restricted function action.
            Rational acc(0);
            for (std::size_t f : s.centralizer) {
                QMatrix rinv = restrict_to_subspace(g.elements[g.inverse_table[f]], basis);
                std::vector<Poly> timg;
                timg.reserve(m);
                for (std::size_t a = 0; a < m; ++a) {
                    Poly row = Poly::zero(s.sector_ring);
                    for (std::size_t b = 0; b < m; ++b)
                        if (!rinv.at(a, b).is_zero())
                            row = row + Poly::variable(s.sector_ring, b).scaled(rinv.at(a, b));
                    timg.push_back(std::move(row));
                }
                Rational tr(0);
                for (const auto& mono : qb.monomials) {
                    Poly image = normal_form(Poly::monomial(s.sector_ring, mono).substitute(timg), gb);
                    tr += image.coefficient(mono);
                }
                acc += rinv.determinant() * tr;
            }
            acc = acc / Rational(static_cast<long>(s.centralizer.size()));
            if (!acc.is_integer() || acc.sign() < 0)
                throw Error("orbifold: invariant dimension " + acc.str() + " is not a nonnegative integer");
            s.invariant_dim = static_cast<std::size_t>(acc.to_long());
        }
        out.total += s.invariant_dim;
        out.sectors.push_back(std::move(s));
    }
    return out;
}

ValidationReport validate_equivariant_mf(const MFPtr& m, const GroupAction& g, const EquivariantStructure& rho) {
    if (!m) throw Error("equivariant: null factorization");
    ValidationReport rep;
    const std::size_t order = g.order();
    if (order == 0) {
        rep.fail("equivariant: empty group");
        return rep;
    }
    if (!m->algebra.ring || m->algebra.ring->nvars() != g.dim()) {
        rep.fail("equivariant: group dimension does not match the ring");
        return rep;
    }
    if (rho.rho_ev.size() != order || rho.rho_od.size() != order) {
        rep.fail("equivariant: need one matrix pair per group element");
        return rep;
    }
    for (std::size_t a = 0; a < order; ++a) {
        if (rho.rho_ev[a].rows() != m->rank_ev || rho.rho_ev[a].cols() != m->rank_ev)
            rep.fail("equivariant: even block of element " + idx_str(a) + " has the wrong shape");
        if (rho.rho_od[a].rows() != m->rank_od || rho.rho_od[a].cols() != m->rank_od)
            rep.fail("equivariant: odd block of element " + idx_str(a) + " has the wrong shape");
    }
    if (!rep.ok) return rep;

    if (!(rho.rho_ev[g.identity_index] == QMatrix::identity(m->rank_ev)) ||
        !(rho.rho_od[g.identity_index] == QMatrix::identity(m->rank_od)))
        rep.fail("equivariant: identity does not act as the identity");
    for (std::size_t a = 0; a < order; ++a)
        for (std::size_t b = 0; b < order; ++b) {
            std::size_t p = g.mult_table[a][b];
            if (!(rho.rho_ev[a] * rho.rho_ev[b] == rho.rho_ev[p]) ||
                !(rho.rho_od[a] * rho.rho_od[b] == rho.rho_od[p]))
                rep.fail("equivariant: rho(" + idx_str(a) + ") rho(" + idx_str(b) + ") != rho(product)");
        }

    // Intertwining without inverses: rho(g).g(d) = d.rho(g) blockwise.
    const RingPtr& ring = m->algebra.ring;
    for (std::size_t a = 0; a < order; ++a) {
        PolyMatrix od = action_on_matrix(g, a, m->d_od);
        PolyMatrix ev = action_on_matrix(g, a, m->d_ev);
        if (!(promote(ring, rho.rho_od[a]) * od == m->d_od * promote(ring, rho.rho_ev[a])))
            rep.fail("equivariant: d_od does not intertwine at element " + idx_str(a));
        if (!(promote(ring, rho.rho_ev[a]) * ev == m->d_ev * promote(ring, rho.rho_od[a])))
            rep.fail("equivariant: d_ev does not intertwine at element " + idx_str(a));
    }
    return rep;
}

}  // namespace lg
