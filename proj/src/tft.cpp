#include "lgcalc/tft.hpp"

#include <sstream>
#include <string>

namespace lg {
namespace {

constexpr std::size_t kMaxWitness = 10;

QVector unit_vec(std::size_t n, std::size_t i) {
    QVector v(n, Rational(0));
    v[i] = Rational(1);
    return v;
}

bool vec_is_zero(const QVector& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

void vec_add_scaled(QVector& dst, const QVector& src, const Rational& c) {
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = dst[i] + c * src[i];
}

Rational dot(const QVector& a, const QVector& b) {
    Rational acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
    return acc;
}

std::string pair_str(const FiniteOpenCategory& a, std::size_t e, std::size_t f) {
    return "(" + a.branes[e] + ", " + a.branes[f] + ")";
}

/** Tr(x -> alpha . x . beta) over A(e,f), alpha in End(e), beta in End(f). */
Rational operator_trace(const FiniteOpenCategory& a, std::size_t e, std::size_t f,
                        const QVector& alpha, const QVector& beta) {
    const std::size_t d = a.dim(e, f);
    Rational acc(0);
    for (std::size_t k = 0; k < d; ++k) {
        QVector ax = compose_vec(a, e, e, f, alpha, unit_vec(d, k));
        QVector axb = compose_vec(a, e, f, f, ax, beta);
        acc = acc + axb[k];
    }
    return acc;
}

/** Only the shape axioms; the laws are unsafe to evaluate before these hold. */
bool check_shapes(const FiniteOpenCategory& a, ValidationReport& rep) {
    const std::size_t nb = a.brane_count();
    if (nb == 0) {
        rep.fail("category: no branes");
        return false;
    }
    if (a.hom_dims.size() != nb) {
        rep.fail("category: hom_dims has " + std::to_string(a.hom_dims.size()) + " rows for " +
                 std::to_string(nb) + " branes");
        return false;
    }
    for (std::size_t e = 0; e < nb; ++e)
        if (a.hom_dims[e].size() != nb) {
            rep.fail("category: hom_dims row " + std::to_string(e) + " has the wrong length");
            return false;
        }
    if (a.comp.size() != nb) {
        rep.fail("category: composition tensor is missing brane slots");
        return false;
    }
    bool ok = true;
    for (std::size_t e = 0; e < nb && ok; ++e) {
        if (a.comp[e].size() != nb) {
            rep.fail("category: composition tensor is ragged at brane " + a.branes[e]);
            return false;
        }
        for (std::size_t f = 0; f < nb && ok; ++f) {
            if (a.comp[e][f].size() != nb) {
                rep.fail("category: composition tensor is ragged at " + pair_str(a, e, f));
                return false;
            }
            for (std::size_t g = 0; g < nb && ok; ++g) {
                const CompositionTensor& t = a.comp[e][f][g];
                if (t.size() != a.dim(e, g)) {
                    rep.fail("category: tensor " + pair_str(a, e, f) + " . A(" + a.branes[f] + ", " +
                             a.branes[g] + ") has " + std::to_string(t.size()) + " output slots for dim " +
                             std::to_string(a.dim(e, g)));
                    ok = false;
                    break;
                }
                for (const QMatrix& m : t)
                    if (m.rows() != a.dim(e, f) || m.cols() != a.dim(f, g)) {
                        rep.fail("category: tensor entry at " + pair_str(a, e, f) + " x " +
                                 pair_str(a, f, g) + " has the wrong shape");
                        ok = false;
                        break;
                    }
            }
        }
    }
    if (!ok) return false;
    if (a.identities.size() != nb) {
        rep.fail("category: " + std::to_string(a.identities.size()) + " identity vectors for " +
                 std::to_string(nb) + " branes");
        return false;
    }
    for (std::size_t e = 0; e < nb; ++e) {
        if (a.dim(e, e) == 0) {
            rep.fail("category: brane " + a.branes[e] + " has no endomorphisms");
            ok = false;
        } else if (a.identities[e].size() != a.dim(e, e)) {
            rep.fail("category: identity of " + a.branes[e] + " has the wrong length");
            ok = false;
        }
    }
    return ok;
}

}  // namespace

QVector compose_vec(const FiniteOpenCategory& a, std::size_t e, std::size_t f, std::size_t g,
                    const QVector& x, const QVector& y) {
    const CompositionTensor& t = a.comp[e][f][g];
    QVector out(a.dim(e, g), Rational(0));
    for (std::size_t k = 0; k < out.size(); ++k) {
        Rational acc(0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < y.size(); ++j) {
                if (y[j].is_zero()) continue;
                const Rational& c = t[k].at(i, j);
                if (!c.is_zero()) acc = acc + x[i] * y[j] * c;
            }
        }
        out[k] = acc;
    }
    return out;
}

ValidationReport validate_category(const FiniteOpenCategory& a) {
    ValidationReport rep;
    if (!check_shapes(a, rep)) return rep;
    const std::size_t nb = a.brane_count();

    for (std::size_t e = 0; e < nb; ++e)
        for (std::size_t f = 0; f < nb; ++f)
            for (std::size_t j = 0; j < a.dim(e, f); ++j) {
                const QVector b = unit_vec(a.dim(e, f), j);
                if (compose_vec(a, e, e, f, a.identities[e], b) != b)
                    rep.fail("category: left identity of " + a.branes[e] + " fails on basis vector " +
                             std::to_string(j) + " of A" + pair_str(a, e, f));
                if (compose_vec(a, e, f, f, b, a.identities[f]) != b)
                    rep.fail("category: right identity of " + a.branes[f] + " fails on basis vector " +
                             std::to_string(j) + " of A" + pair_str(a, e, f));
            }

    std::size_t witnesses = 0;
    for (std::size_t e = 0; e < nb; ++e)
        for (std::size_t f = 0; f < nb; ++f)
            for (std::size_t g = 0; g < nb; ++g)
                for (std::size_t h = 0; h < nb; ++h)
                    for (std::size_t i = 0; i < a.dim(e, f); ++i)
                        for (std::size_t j = 0; j < a.dim(f, g); ++j)
                            for (std::size_t k = 0; k < a.dim(g, h); ++k) {
                                const QVector x = unit_vec(a.dim(e, f), i);
                                const QVector y = unit_vec(a.dim(f, g), j);
                                const QVector z = unit_vec(a.dim(g, h), k);
                                const QVector lhs =
                                    compose_vec(a, e, g, h, compose_vec(a, e, f, g, x, y), z);
                                const QVector rhs =
                                    compose_vec(a, e, f, h, x, compose_vec(a, f, g, h, y, z));
                                if (lhs != rhs) {
                                    rep.fail("category: associativity fails at A" + pair_str(a, e, f) +
                                             " x A" + pair_str(a, f, g) + " x A" + pair_str(a, g, h) +
                                             " basis (" + std::to_string(i) + ", " + std::to_string(j) +
                                             ", " + std::to_string(k) + ")");
                                    if (++witnesses >= kMaxWitness) return rep;
                                }
                            }
    return rep;
}

FiniteOpenCategory one_object_category(CompositionTensor product, QVector identity) {
    FiniteOpenCategory a;
    a.branes = {"A"};
    a.hom_dims = {{identity.size()}};
    a.comp = {{{std::move(product)}}};
    a.identities = {std::move(identity)};
    return a;
}

namespace {

CompositionTensor matrix_tensor(std::size_t ne, std::size_t nf, std::size_t ng) {
    CompositionTensor t(ne * ng, QMatrix(ne * nf, nf * ng));
    for (std::size_t p = 0; p < ne; ++p)
        for (std::size_t q = 0; q < nf; ++q)
            for (std::size_t s = 0; s < ng; ++s)
                t[p * ng + s].at(p * nf + q, q * ng + s) = Rational(1);
    return t;
}

FiniteOpenCategory matrix_like_category(const std::vector<std::size_t>& sizes, bool cross_homs) {
    if (sizes.empty()) throw Error("tft: matrix category needs at least one brane");
    for (std::size_t n : sizes)
        if (n == 0) throw Error("tft: matrix category brane of rank zero");
    FiniteOpenCategory a;
    const std::size_t nb = sizes.size();
    for (std::size_t e = 0; e < nb; ++e) a.branes.push_back("B" + std::to_string(e));
    a.hom_dims.assign(nb, std::vector<std::size_t>(nb, 0));
    for (std::size_t e = 0; e < nb; ++e)
        for (std::size_t f = 0; f < nb; ++f)
            a.hom_dims[e][f] = (cross_homs || e == f) ? sizes[e] * sizes[f] : 0;
    a.comp.assign(nb, std::vector<std::vector<CompositionTensor>>(
                          nb, std::vector<CompositionTensor>(nb)));
    for (std::size_t e = 0; e < nb; ++e)
        for (std::size_t f = 0; f < nb; ++f)
            for (std::size_t g = 0; g < nb; ++g) {
                const std::size_t def = a.dim(e, f), dfg = a.dim(f, g), deg = a.dim(e, g);
                if (def > 0 && dfg > 0 && deg > 0)
                    a.comp[e][f][g] = matrix_tensor(sizes[e], sizes[f], sizes[g]);
                else
                    a.comp[e][f][g].assign(deg, QMatrix(def, dfg));
            }
    for (std::size_t e = 0; e < nb; ++e) {
        QVector id(sizes[e] * sizes[e], Rational(0));
        for (std::size_t p = 0; p < sizes[e]; ++p) id[p * sizes[e] + p] = Rational(1);
        a.identities.push_back(std::move(id));
    }
    return a;
}

}  // namespace

FiniteOpenCategory matrix_category(const std::vector<std::size_t>& sizes) {
    return matrix_like_category(sizes, true);
}

FiniteOpenCategory block_category(const std::vector<std::size_t>& sizes) {
    return matrix_like_category(sizes, false);
}

QVector project_endo(const ClosedSector& cs, std::size_t brane, const QVector& alpha) {
    QVector embedded(cs.total_endo_dim, Rational(0));
    const std::size_t off = cs.endo_offset[brane];
    for (std::size_t i = 0; i < alpha.size(); ++i) embedded[off + i] = alpha[i];
    return cs.projection.apply(embedded);
}

ClosedSector commutator_quotient(const FiniteOpenCategory& a) {
    const ValidationReport axioms = validate_category(a);
    if (!axioms.ok) throw Error("tft: category axioms fail: " + axioms.failures.front());

    const std::size_t nb = a.brane_count();
    ClosedSector cs;
    cs.endo_offset.assign(nb, 0);
    std::size_t n = 0;
    for (std::size_t e = 0; e < nb; ++e) {
        cs.endo_offset[e] = n;
        n += a.dim(e, e);
    }
    cs.total_endo_dim = n;

    // span of all ab - ba, a in A(e,f), b in A(f,e), inside the endomorphism sum
    std::vector<QVector> span;
    for (std::size_t e = 0; e < nb; ++e)
        for (std::size_t f = 0; f < nb; ++f) {
            const std::size_t de = a.dim(e, f), df = a.dim(f, e);
            for (std::size_t i = 0; i < de; ++i)
                for (std::size_t j = 0; j < df; ++j) {
                    const QVector xy = compose_vec(a, e, f, e, unit_vec(de, i), unit_vec(df, j));
                    const QVector yx = compose_vec(a, f, e, f, unit_vec(df, j), unit_vec(de, i));
                    QVector w(n, Rational(0));
                    for (std::size_t t = 0; t < xy.size(); ++t) w[cs.endo_offset[e] + t] = xy[t];
                    for (std::size_t t = 0; t < yx.size(); ++t)
                        w[cs.endo_offset[f] + t] = w[cs.endo_offset[f] + t] - yx[t];
                    if (!vec_is_zero(w)) span.push_back(std::move(w));
                }
        }

    std::vector<QVector> units;
    units.reserve(n);
    for (std::size_t t = 0; t < n; ++t) units.push_back(unit_vec(n, t));
    const std::vector<std::size_t> reps = quotient_representatives(span, units);
    for (std::size_t t : reps) {
        std::size_t e = nb;
        while (e > 0 && cs.endo_offset[e - 1] > t) --e;
        --e;
        cs.v_basis.push_back({e, t - cs.endo_offset[e]});
    }
    const std::size_t dv = cs.v_basis.size();

    // projection: invert [independent commutators | representatives] once; the
    // last dv rows of the inverse read off class coordinates
    const std::vector<std::size_t> indep = quotient_representatives({}, span);
    if (indep.size() + dv != n) throw Error("tft: commutator span rank is inconsistent");
    QMatrix basis(n, n);
    for (std::size_t c = 0; c < indep.size(); ++c)
        for (std::size_t r = 0; r < n; ++r) basis.at(r, c) = span[indep[c]][r];
    for (std::size_t c = 0; c < dv; ++c) basis.at(reps[c], indep.size() + c) = Rational(1);
    const auto inv = basis.inverse();
    if (!inv) throw Error("tft: commutator complement is not a complement");
    cs.projection = QMatrix(dv, n);
    for (std::size_t r = 0; r < dv; ++r)
        for (std::size_t c = 0; c < n; ++c) cs.projection.at(r, c) = inv->at(indep.size() + r, c);

    cs.pairing = QMatrix(dv, dv);
    for (std::size_t p = 0; p < dv; ++p)
        for (std::size_t q = 0; q < dv; ++q) {
            const auto& [e, i] = cs.v_basis[p];
            const auto& [f, j] = cs.v_basis[q];
            cs.pairing.at(p, q) = operator_trace(a, e, f, unit_vec(a.dim(e, e), i),
                                                 unit_vec(a.dim(f, f), j));
        }
    return cs;
}

ValidationReport derive_frobenius(const FiniteOpenCategory& a, ClosedSector& cs,
                                  const std::optional<std::vector<QVector>>& open_trace) {
    ValidationReport rep;
    const std::size_t nb = a.brane_count();
    const std::size_t dv = cs.dim();

    std::vector<QVector> theta(nb);
    if (open_trace) {
        if (open_trace->size() != nb) {
            rep.fail("frobenius: open trace has the wrong number of branes");
            return rep;
        }
        for (std::size_t e = 0; e < nb; ++e) {
            if ((*open_trace)[e].size() != a.dim(e, e)) {
                rep.fail("frobenius: open trace at brane " + a.branes[e] + " has the wrong length");
                return rep;
            }
            theta[e] = (*open_trace)[e];
        }
    } else {
        // regular trace: theta_E(r) = sum_G Tr(x -> x . r on A(G, E))
        for (std::size_t e = 0; e < nb; ++e) {
            theta[e] = QVector(a.dim(e, e), Rational(0));
            for (std::size_t r = 0; r < a.dim(e, e); ++r) {
                Rational acc(0);
                for (std::size_t g = 0; g < nb; ++g) {
                    const std::size_t d = a.dim(g, e);
                    for (std::size_t x = 0; x < d; ++x)
                        acc = acc + compose_vec(a, g, e, e, unit_vec(d, x),
                                                unit_vec(a.dim(e, e), r))[x];
                }
                theta[e][r] = acc;
            }
        }
    }

    // cyclicity: theta(xy) = theta(yx) for all composable basis pairs
    for (std::size_t e = 0; e < nb; ++e)
        for (std::size_t f = 0; f < nb; ++f) {
            const std::size_t de = a.dim(e, f), df = a.dim(f, e);
            for (std::size_t i = 0; i < de; ++i)
                for (std::size_t j = 0; j < df; ++j) {
                    const Rational lhs =
                        dot(theta[e], compose_vec(a, e, f, e, unit_vec(de, i), unit_vec(df, j)));
                    const Rational rhs =
                        dot(theta[f], compose_vec(a, f, e, f, unit_vec(df, j), unit_vec(de, i)));
                    if (!(lhs == rhs)) {
                        rep.fail("frobenius: the open trace is not cyclic on A" + pair_str(a, e, f) +
                                 " x A" + pair_str(a, f, e) + " basis (" + std::to_string(i) + ", " +
                                 std::to_string(j) + ")");
                        if (rep.failures.size() >= kMaxWitness) return rep;
                    }
                }
        }
    if (!rep.ok) return rep;

    // open pairing theta(x . y) on A(e,f) x A(f,e) must be square and invertible
    std::vector<std::vector<QMatrix>> binv(nb, std::vector<QMatrix>(nb));
    for (std::size_t e = 0; e < nb; ++e)
        for (std::size_t f = 0; f < nb; ++f) {
            const std::size_t de = a.dim(e, f), df = a.dim(f, e);
            if (de != df) {
                rep.fail("frobenius: A" + pair_str(a, e, f) + " and A" + pair_str(a, f, e) +
                         " have different dimensions, the open pairing cannot be perfect");
                continue;
            }
            if (de == 0) continue;
            QMatrix b(de, de);
            for (std::size_t i = 0; i < de; ++i)
                for (std::size_t j = 0; j < de; ++j)
                    b.at(i, j) =
                        dot(theta[e], compose_vec(a, e, f, e, unit_vec(de, i), unit_vec(df, j)));
            auto ib = b.inverse();
            if (!ib) {
                rep.fail("frobenius: the open pairing is degenerate between " + a.branes[e] + " and " +
                         a.branes[f]);
                continue;
            }
            binv[e][f] = std::move(*ib);
        }
    if (!rep.ok) return rep;

    FrobeniusData fd;
    fd.trace = QVector(dv, Rational(0));
    for (std::size_t p = 0; p < dv; ++p) fd.trace[p] = theta[cs.v_basis[p].brane][cs.v_basis[p].index];

    // product by the Cardy composite on representatives:
    //   v_p . v_q = sum_i T(rep_p . e_i . rep_q . eps_i),  eps_i dual to e_i
    fd.product.assign(dv, QMatrix(dv, dv));
    for (std::size_t p = 0; p < dv; ++p)
        for (std::size_t q = 0; q < dv; ++q) {
            const auto& [e, ia] = cs.v_basis[p];
            const auto& [f, ib] = cs.v_basis[q];
            const std::size_t d = a.dim(e, f);
            const QVector alpha = unit_vec(a.dim(e, e), ia);
            const QVector beta = unit_vec(a.dim(f, f), ib);
            QVector acc(dv, Rational(0));
            for (std::size_t s = 0; s < d; ++s) {
                const QVector as = compose_vec(a, e, e, f, alpha, unit_vec(d, s));
                const QVector asb = compose_vec(a, e, f, f, as, beta);
                for (std::size_t t = 0; t < d; ++t) {
                    const Rational& c = binv[e][f].at(t, s);
                    if (c.is_zero()) continue;
                    const QVector full = compose_vec(a, e, f, e, asb, unit_vec(d, t));
                    vec_add_scaled(acc, project_endo(cs, e, full), c);
                }
            }
            for (std::size_t k = 0; k < dv; ++k) fd.product[k].at(p, q) = acc[k];
        }

    // unit: the u with u . v_q = v_q for every class
    QMatrix system(dv * dv, dv);
    QVector rhs(dv * dv, Rational(0));
    for (std::size_t q = 0; q < dv; ++q)
        for (std::size_t k = 0; k < dv; ++k) {
            for (std::size_t p = 0; p < dv; ++p) system.at(q * dv + k, p) = fd.product[k].at(p, q);
            rhs[q * dv + k] = (k == q) ? Rational(1) : Rational(0);
        }
    auto unit = solve(system, rhs);
    if (!unit) {
        rep.fail("frobenius: the derived product has no unit");
        return rep;
    }
    fd.unit = std::move(*unit);
    cs.frobenius = std::move(fd);
    return rep;
}

PairingReport pairing_checks(const FiniteOpenCategory& a, const ClosedSector& cs) {
    PairingReport pr;
    const std::size_t nb = a.brane_count();
    const std::size_t dv = cs.dim();

    // commutator classes vanish, and pair to zero against every class by the
    // operator trace itself (independent of the stored projection)
    for (std::size_t e = 0; e < nb; ++e)
        for (std::size_t f = 0; f < nb; ++f) {
            const std::size_t de = a.dim(e, f), df = a.dim(f, e);
            for (std::size_t i = 0; i < de; ++i)
                for (std::size_t j = 0; j < df; ++j) {
                    const QVector xy = compose_vec(a, e, f, e, unit_vec(de, i), unit_vec(df, j));
                    const QVector yx = compose_vec(a, f, e, f, unit_vec(df, j), unit_vec(de, i));
                    QVector cls = project_endo(cs, e, xy);
                    vec_add_scaled(cls, project_endo(cs, f, yx), Rational(-1));
                    if (!vec_is_zero(cls))
                        pr.checks.fail("pairing: commutator class of basis (" + std::to_string(i) +
                                       ", " + std::to_string(j) + ") on A" + pair_str(a, e, f) +
                                       " is nonzero");
                    for (std::size_t q = 0; q < dv; ++q) {
                        const auto& [g, ig] = cs.v_basis[q];
                        const QVector beta = unit_vec(a.dim(g, g), ig);
                        const Rational tr =
                            operator_trace(a, e, g, xy, beta) - operator_trace(a, f, g, yx, beta);
                        if (!tr.is_zero())
                            pr.checks.fail("pairing: trace is not cyclic: commutator of A" +
                                           pair_str(a, e, f) + " basis (" + std::to_string(i) + ", " +
                                           std::to_string(j) + ") pairs to " + tr.str() +
                                           " with class " + std::to_string(q));
                    }
                    if (pr.checks.failures.size() >= kMaxWitness) {
                        pr.rank = rank(cs.pairing);
                        pr.nondegenerate = pr.rank == dv;
                        return pr;
                    }
                }
        }

    // each entry by two independent evaluation orders, then symmetry
    for (std::size_t p = 0; p < dv; ++p)
        for (std::size_t q = 0; q < dv; ++q) {
            const auto& [e, i] = cs.v_basis[p];
            const auto& [f, j] = cs.v_basis[q];
            const QVector alpha = unit_vec(a.dim(e, e), i);
            const QVector beta = unit_vec(a.dim(f, f), j);
            const Rational direct = operator_trace(a, e, f, alpha, beta);
            const std::size_t d = a.dim(e, f);
            QMatrix left(d, d), right(d, d);
            for (std::size_t k = 0; k < d; ++k) {
                const QVector lk = compose_vec(a, e, e, f, alpha, unit_vec(d, k));
                const QVector rk = compose_vec(a, e, f, f, unit_vec(d, k), beta);
                for (std::size_t r = 0; r < d; ++r) {
                    left.at(r, k) = lk[r];
                    right.at(r, k) = rk[r];
                }
            }
            const Rational factored = d > 0 ? (left * right).trace() : Rational(0);
            if (!(direct == factored))
                pr.checks.fail("pairing: the two evaluation orders disagree at classes (" +
                               std::to_string(p) + ", " + std::to_string(q) + ")");
            if (!(cs.pairing.at(p, q) == direct))
                pr.checks.fail("pairing: stored entry (" + std::to_string(p) + ", " +
                               std::to_string(q) + ") does not match its operator trace");
        }
    if (!(cs.pairing == cs.pairing.transpose())) pr.checks.fail("pairing: matrix is not symmetric");

    pr.rank = rank(cs.pairing);
    pr.nondegenerate = pr.rank == dv;
    return pr;
}

CardyReport cardy_check(const FiniteOpenCategory& a, const ClosedSector& cs) {
    if (!cs.frobenius) throw Error("tft: the Cardy check needs Frobenius data on the closed sector");
    CardyReport cr;
    const FrobeniusData& fd = *cs.frobenius;
    const std::size_t nb = a.brane_count();
    const std::size_t dv = cs.dim();

    if (fd.product.size() != dv || fd.unit.size() != dv || fd.trace.size() != dv) {
        cr.checks.fail("cardy: Frobenius data does not match the closed sector dimension");
        return cr;
    }
    for (const QMatrix& m : fd.product)
        if (m.rows() != dv || m.cols() != dv) {
            cr.checks.fail("cardy: product tensor entry has the wrong shape");
            return cr;
        }

    auto v_mul = [&](const QVector& u, const QVector& v) {
        QVector out(dv, Rational(0));
        for (std::size_t k = 0; k < dv; ++k) {
            Rational acc(0);
            for (std::size_t p = 0; p < dv; ++p) {
                if (u[p].is_zero()) continue;
                for (std::size_t q = 0; q < dv; ++q) acc = acc + u[p] * v[q] * fd.product[k].at(p, q);
            }
            out[k] = acc;
        }
        return out;
    };
    // the open pairing of condition (1): closed trace after boundary-bulk
    auto theta_v = [&](const QVector& cls) { return dot(fd.trace, cls); };

    // dual bases first: theta_V(T(x.y)) must be square and invertible
    std::vector<std::vector<QMatrix>> binv(nb, std::vector<QMatrix>(nb));
    std::vector<std::vector<bool>> usable(nb, std::vector<bool>(nb, false));
    for (std::size_t e = 0; e < nb; ++e)
        for (std::size_t f = 0; f < nb; ++f) {
            const std::size_t de = a.dim(e, f), df = a.dim(f, e);
            if (de != df) {
                cr.checks.fail("cardy: no dual bases, A" + pair_str(a, e, f) + " and A" +
                               pair_str(a, f, e) + " have different dimensions");
                continue;
            }
            if (de == 0) {
                usable[e][f] = true;
                continue;
            }
            QMatrix b(de, de);
            for (std::size_t i = 0; i < de; ++i)
                for (std::size_t j = 0; j < de; ++j)
                    b.at(i, j) = theta_v(
                        project_endo(cs, e, compose_vec(a, e, f, e, unit_vec(de, i), unit_vec(df, j))));
            auto ib = b.inverse();
            if (!ib) {
                cr.checks.fail("cardy: no dual bases, the open pairing is degenerate between " +
                               a.branes[e] + " and " + a.branes[f]);
                continue;
            }
            binv[e][f] = std::move(*ib);
            usable[e][f] = true;
        }

    // Cardy on all basis pairs of End(e) x End(f) per usable ordered pair
    std::size_t witnesses = 0;
    for (std::size_t e = 0; e < nb; ++e)
        for (std::size_t f = 0; f < nb; ++f) {
            if (!usable[e][f]) continue;
            const std::size_t d = a.dim(e, f);
            for (std::size_t ia = 0; ia < a.dim(e, e); ++ia)
                for (std::size_t jb = 0; jb < a.dim(f, f); ++jb) {
                    const QVector alpha = unit_vec(a.dim(e, e), ia);
                    const QVector beta = unit_vec(a.dim(f, f), jb);
                    const QVector lhs =
                        v_mul(project_endo(cs, e, alpha), project_endo(cs, f, beta));
                    QVector rhs(dv, Rational(0));
                    for (std::size_t s = 0; s < d; ++s) {
                        const QVector as = compose_vec(a, e, e, f, alpha, unit_vec(d, s));
                        const QVector asb = compose_vec(a, e, f, f, as, beta);
                        for (std::size_t t = 0; t < d; ++t) {
                            const Rational& c = binv[e][f].at(t, s);
                            if (c.is_zero()) continue;
                            const QVector full = compose_vec(a, e, f, e, asb, unit_vec(d, t));
                            vec_add_scaled(rhs, project_endo(cs, e, full), c);
                        }
                    }
                    if (lhs != rhs) {
                        cr.checks.fail("cardy: fails at branes " + pair_str(a, e, f) +
                                       " on endomorphism basis (" + std::to_string(ia) + ", " +
                                       std::to_string(jb) + ")");
                        if (++witnesses >= kMaxWitness) return cr;
                    }
                }
        }

    // condition (2): the adjoint of boundary-bulk is a map of algebras,
    // defined whenever the closed trace form and the brane-diagonal open
    // pairings are invertible
    QMatrix closed_form(dv, dv);
    for (std::size_t p = 0; p < dv; ++p)
        for (std::size_t q = 0; q < dv; ++q)
            closed_form.at(p, q) = theta_v(v_mul(unit_vec(dv, p), unit_vec(dv, q)));
    const auto closed_inv = closed_form.inverse();
    bool diag_ok = true;
    for (std::size_t e = 0; e < nb; ++e) diag_ok = diag_ok && usable[e][e];
    if (closed_inv && diag_ok) {
        cr.adjoint_checked = true;
        for (std::size_t e = 0; e < nb; ++e) {
            const std::size_t d = a.dim(e, e);
            // adjoint matrix: theta_V(T(x . adj(u))) = form(T(x), u) for all x
            QMatrix adj(d, dv);
            for (std::size_t q = 0; q < dv; ++q) {
                QVector r(d, Rational(0));
                for (std::size_t i = 0; i < d; ++i)
                    r[i] = dot(closed_form.apply(unit_vec(dv, q)),
                               project_endo(cs, e, unit_vec(d, i)));
                const QVector y = binv[e][e].apply(r);
                for (std::size_t i = 0; i < d; ++i) adj.at(i, q) = y[i];
            }
            if (adj.apply(fd.unit) != a.identities[e])
                cr.checks.fail("cardy: the adjoint at brane " + a.branes[e] +
                               " does not send the closed unit to the identity");
            for (std::size_t p = 0; p < dv; ++p)
                for (std::size_t q = 0; q < dv; ++q) {
                    const QVector lhs = adj.apply(v_mul(unit_vec(dv, p), unit_vec(dv, q)));
                    const QVector rhs =
                        compose_vec(a, e, e, e, adj.apply(unit_vec(dv, p)), adj.apply(unit_vec(dv, q)));
                    if (lhs != rhs) {
                        cr.checks.fail("cardy: the adjoint at brane " + a.branes[e] +
                                       " is not multiplicative on classes (" + std::to_string(p) +
                                       ", " + std::to_string(q) + ")");
                        if (++witnesses >= kMaxWitness) return cr;
                    }
                }
        }
    }
    return cr;
}

ValidationReport frobenius_check(const ClosedSector& cs) {
    ValidationReport rep;
    if (!cs.frobenius) {
        rep.fail("frobenius: not checked, the sector carries no Frobenius data");
        return rep;
    }
    const FrobeniusData& fd = *cs.frobenius;
    const std::size_t dv = cs.dim();
    if (fd.product.size() != dv || fd.unit.size() != dv || fd.trace.size() != dv) {
        rep.fail("frobenius: data does not match the closed sector dimension");
        return rep;
    }
    for (const QMatrix& m : fd.product)
        if (m.rows() != dv || m.cols() != dv) {
            rep.fail("frobenius: product tensor entry has the wrong shape");
            return rep;
        }

    auto v_mul = [&](const QVector& u, const QVector& v) {
        QVector out(dv, Rational(0));
        for (std::size_t k = 0; k < dv; ++k) {
            Rational acc(0);
            for (std::size_t p = 0; p < dv; ++p)
                for (std::size_t q = 0; q < dv; ++q)
                    acc = acc + u[p] * v[q] * fd.product[k].at(p, q);
            out[k] = acc;
        }
        return out;
    };

    for (std::size_t k = 0; k < dv; ++k)
        if (!(fd.product[k] == fd.product[k].transpose())) {
            rep.fail("frobenius: product is not commutative in coordinate " + std::to_string(k));
            break;
        }
    for (std::size_t p = 0; p < dv; ++p)
        for (std::size_t q = 0; q < dv; ++q)
            for (std::size_t r = 0; r < dv; ++r) {
                const QVector lhs = v_mul(v_mul(unit_vec(dv, p), unit_vec(dv, q)), unit_vec(dv, r));
                const QVector rhs = v_mul(unit_vec(dv, p), v_mul(unit_vec(dv, q), unit_vec(dv, r)));
                if (lhs != rhs) {
                    rep.fail("frobenius: product is not associative at (" + std::to_string(p) + ", " +
                             std::to_string(q) + ", " + std::to_string(r) + ")");
                    if (rep.failures.size() >= kMaxWitness) return rep;
                }
            }
    for (std::size_t q = 0; q < dv; ++q) {
        if (v_mul(fd.unit, unit_vec(dv, q)) != unit_vec(dv, q))
            rep.fail("frobenius: unit fails on the left of class " + std::to_string(q));
        if (v_mul(unit_vec(dv, q), fd.unit) != unit_vec(dv, q))
            rep.fail("frobenius: unit fails on the right of class " + std::to_string(q));
    }

    QMatrix form(dv, dv);
    for (std::size_t p = 0; p < dv; ++p)
        for (std::size_t q = 0; q < dv; ++q)
            form.at(p, q) = dot(fd.trace, v_mul(unit_vec(dv, p), unit_vec(dv, q)));
    const std::size_t r = rank(form);
    if (r != dv)
        rep.fail("frobenius: the trace form is degenerate, rank " + std::to_string(r) + " of " +
                 std::to_string(dv));
    if (!(form == cs.pairing))
        rep.fail("frobenius: the trace form differs from the operator-trace pairing");
    return rep;
}

}  // namespace lg
