#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <vector>

#include "lgcalc/form.hpp"
#include "lgcalc/hochschild.hpp"
#include "lgcalc/mf.hpp"
#include "lgcalc/parser.hpp"
#include "test_util.hpp"

using namespace lg;

namespace {

RingPtr ring_x(std::optional<Rational> qh_weight = std::nullopt) {
    RingSpec spec;
    spec.variables = {"x"};
    spec.grading = Grading::Z2;
    if (qh_weight) spec.qh_weights = std::vector<Rational>{*qh_weight};
    return make_ring(spec);
}

RingPtr ring_xy() {
    RingSpec spec;
    spec.variables = {"x", "y"};
    spec.grading = Grading::Z2;
    return make_ring(spec);
}

PolyMatrix mat1(const Poly& p) {
    PolyMatrix m(p.ring(), 1, 1);
    m.set(0, 0, p);
    return m;
}

MFPtr koszul1(const Poly& a, const Poly& b) {
    return make_mf(make_curved_algebra(a.ring(), a * b), mat1(a), mat1(b));
}

/** Rank-(2,2) Koszul factorization of a1 b1 + a2 b2. */
MFPtr koszul2(const Poly& a1, const Poly& b1, const Poly& a2, const Poly& b2) {
    const RingPtr& ring = a1.ring();
    PolyMatrix dev(ring, 2, 2), dod(ring, 2, 2);
    dev.set(0, 0, a1);
    dev.set(0, 1, -b2);
    dev.set(1, 0, a2);
    dev.set(1, 1, b1);
    dod.set(0, 0, b1);
    dod.set(0, 1, b2);
    dod.set(1, 0, -a2);
    dod.set(1, 1, a1);
    return make_mf(make_curved_algebra(ring, a1 * b1 + a2 * b2), dod, dev);
}

Morphism rand_endo(const MFPtr& m, Parity p) {
    const RingPtr& R = m->algebra.ring;
    auto fill = [&](std::size_t r, std::size_t c) {
        PolyMatrix b(R, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) b.set(i, j, lgtest::rand_poly(R, 2, 2));
        return b;
    };
    if (p == Parity::Even)
        return Morphism::even(m, m, fill(m->rank_ev, m->rank_ev), fill(m->rank_od, m->rank_od));
    return Morphism::odd(m, m, fill(m->rank_ev, m->rank_od), fill(m->rank_od, m->rank_ev));
}

TensorChain rand_tensor_word(const CurvedAlgebra& alg, unsigned truncation, int factors) {
    std::vector<Poly> f;
    for (int i = 0; i < factors; ++i) f.push_back(lgtest::rand_poly(alg.ring, 2, 3));
    return TensorChain::word(alg, truncation, f);
}

TensorChain chop(const TensorChain& c, std::size_t max_factors) {
    TensorChain out(c.algebra(), c.truncation());
    for (const auto& [w, x] : c.words())
        if (w.size() <= max_factors) out.add_word(w, x);
    return out;
}

/**
 * Independent oracle for the tau-graded homology of the degree-capped forms
 * complex (Omega_{<=D}, dW ^ -) in one variable, W = x^d.  Word degree of
 * x^a dx is a+1; dW ^ x^e = d x^{e+d-1} dx is kept iff e+d <= D.  A zero-form
 * x^e is a cycle iff its image leaves the cap; a one-form x^a dx is always a
 * cycle and is a boundary iff a >= d-1.
 */
std::map<Rational, std::size_t> forms_window_dims(unsigned d, unsigned D) {
    std::map<Rational, std::size_t> dims;
    long dl = static_cast<long>(d);
    for (unsigned e = 0; e <= D; ++e)
        if (e + d > D) dims[Rational(-2 * static_cast<long>(e), dl)] += 1;
    for (unsigned a = 0; a + 1 <= D; ++a)
        if (a + 1 < d) dims[Rational(1) - Rational(2 * static_cast<long>(a) + 2, dl)] += 1;
    return dims;
}

}  // namespace

TEST_CASE("cyclic bar boundary on a hand-expanded word") {
    RingPtr r = ring_xy();
    CurvedAlgebra alg = make_curved_algebra(r, Poly::zero(r));
    const unsigned L = 4;
    Poly one = parse_poly("1", r), x = parse_poly("x", r), y = parse_poly("y", r);

    TensorChain c = TensorChain::word(alg, L, {one, x, y});
    // b(1,x,y) = (x,y) - (1,xy) + (y,x): two merges and the wrap-around.
    TensorChain expect(alg, L);
    expect.add_word({Exps{1, 0}, Exps{0, 1}}, Rational(1));
    expect.add_word({Exps{0, 0}, Exps{1, 1}}, Rational(-1));
    expect.add_word({Exps{0, 1}, Exps{1, 0}}, Rational(1));
    CHECK(hochschild_boundary_b(c) == expect);
}

TEST_CASE("truncated differential squares to zero inside the window") {
    const unsigned L = 4;
    for (int rep = 0; rep < 30; ++rep) {
        RingPtr r = rep % 2 ? ring_x() : ring_xy();
        CurvedAlgebra alg = make_curved_algebra(r, lgtest::rand_poly(r, 2, 3));
        // Words of <= L-1 factors: d^2 never touches the length frontier.
        TensorChain c = rand_tensor_word(alg, L, lgtest::rand_int(1, static_cast<int>(L) - 1));
        CHECK(hochschild_diff(hochschild_diff(c)).is_zero());
    }
}

TEST_CASE("HKR map on forms: examples and chain-map identities") {
    RingPtr r = ring_xy();
    CurvedAlgebra alg = make_curved_algebra(r, Poly::zero(r));
    const unsigned L = 4;
    Poly one = parse_poly("1", r), x = parse_poly("x", r), y = parse_poly("y", r);

    SUBCASE("a single factor maps to itself as a zero-form") {
        Poly p = parse_poly("3*x^2*y - 1/2", r);
        CHECK(hkr(TensorChain::word(alg, L, {p})) == Form::from_poly(p));
    }
    SUBCASE("(1, x, y) -> (1/2) dx ^ dy") {
        Form dx = Form::d_generator(r, 0), dy = Form::d_generator(r, 1);
        CHECK(hkr(TensorChain::word(alg, L, {one, x, y})) ==
              wedge(dx, dy).scaled(Rational(1, 2)));
    }
    SUBCASE("(1, x, x) -> 0 by the nilpotent wedge") {
        CHECK(hkr(TensorChain::word(alg, L, {one, x, x})).is_zero());
    }
    SUBCASE("hkr annihilates the bar boundary") {
        for (int rep = 0; rep < 20; ++rep) {
            TensorChain c = rand_tensor_word(alg, L, lgtest::rand_int(1, static_cast<int>(L) + 1));
            CHECK(hkr(hochschild_boundary_b(c)).is_zero());
        }
    }
    SUBCASE("(dW ^) O hkr = hkr O d_W exactly") {
        for (const char* wtxt : {"x^2", "x^3", "x^2-y^2", "x^3+y^3"}) {
            Poly w = parse_poly(wtxt, r);
            CurvedAlgebra cw = make_curved_algebra(r, w);
            Form dw = exterior_d(w);
            for (int rep = 0; rep < 25; ++rep) {
                // <= L factors: one insertion stays within the window.
                TensorChain c = rand_tensor_word(cw, L, lgtest::rand_int(1, static_cast<int>(L)));
                CHECK(wedge(dw, hkr(c)) == hkr(hochschild_w_insertion(c)));
            }
        }
    }
}

TEST_CASE("trace words of cyclic morphism words") {
    RingPtr r = ring_x();
    Poly x = parse_poly("x", r);
    MFPtr k = koszul1(x, x);  // W = x^2
    const CurvedAlgebra& alg = k->algebra;
    const unsigned L = 4;

    Morphism diag_1_x = Morphism::even(k, k, mat1(parse_poly("1", r)), mat1(x));
    Morphism diag_x_1 = Morphism::even(k, k, mat1(x), mat1(parse_poly("1", r)));

    SUBCASE("supertrace weights: diag(1, x) -> (1) - (x)") {
        TensorChain expect(alg, L);
        expect.add_word({Exps{0}}, Rational(1));
        expect.add_word({Exps{1}}, Rational(-1));
        CHECK(trace_word(alg, L, {diag_1_x}) == expect);
    }
    SUBCASE("supertrace of the identity vanishes on a balanced brane") {
        CHECK(trace_word(alg, L, {Morphism::identity(k)}).is_zero());
    }
    SUBCASE("two slots: diag pair -> (1,x) - (x,1)") {
        TensorChain expect(alg, L);
        expect.add_word({Exps{0}, Exps{1}}, Rational(1));
        expect.add_word({Exps{1}, Exps{0}}, Rational(-1));
        CHECK(trace_word(alg, L, {diag_1_x, diag_x_1}) == expect);
    }
}

TEST_CASE("category differential: anchor and square") {
    RingPtr r = ring_x();
    Poly x = parse_poly("x", r);
    MFPtr k = koszul1(x, x * x);  // W = x^3
    const unsigned L = 4;

    SUBCASE("one slot reduces to hom_diff with sign +1") {
        for (int rep = 0; rep < 10; ++rep) {
            Morphism f = rand_endo(k, rep % 2 ? Parity::Odd : Parity::Even);
            CHECK(cat_diff(CatChain::word(L, {f})) == CatChain::word(L, {hom_diff(f)}));
        }
    }
    SUBCASE("cat_diff squares to zero, rank-1 and rank-2 branes") {
        RingPtr r2 = ring_xy();
        MFPtr k2 = koszul2(parse_poly("x", r2), parse_poly("x^2", r2), parse_poly("y", r2),
                           parse_poly("y^2", r2));  // W = x^3 + y^3
        for (const MFPtr& brane : {k, k2}) {
            for (int rep = 0; rep < 10; ++rep) {
                std::vector<Morphism> f;
                int n = lgtest::rand_int(1, 3);
                for (int i = 0; i < n; ++i)
                    f.push_back(rand_endo(brane, lgtest::rand_int(0, 1) ? Parity::Odd
                                                                        : Parity::Even));
                CatChain c = CatChain::word(L, f);
                CHECK(cat_diff(cat_diff(c)).is_zero());
            }
        }
    }
}

TEST_CASE("psi is a chain map from category chains to algebra chains") {
    RingPtr r = ring_x();
    Poly x = parse_poly("x", r);
    const unsigned L = 4;
    for (const MFPtr& brane : {koszul1(x, x), koszul1(x, x * x)}) {  // x^2, x^3
        for (int rep = 0; rep < 12; ++rep) {
            std::vector<Morphism> f;
            int n = lgtest::rand_int(1, 3);
            for (int i = 0; i < n; ++i)
                f.push_back(rand_endo(brane, lgtest::rand_int(0, 1) ? Parity::Odd
                                                                    : Parity::Even));
            CatChain c = CatChain::word(L, f);
            CHECK(chop(hochschild_diff(psi(c)), L) == chop(psi(cat_diff(c)), L));
        }
    }
}

TEST_CASE("zero-insertion part of psi rotates cyclically") {
    // With r(a_0,..,a_k) = (a_k, a_0, .., a_{k-1}) applied to the word and to
    // each output tensor word, the no-insertion component obeys
    //   psi_0(r a) = (-1)^{(k+1) p_k + sum_{j<k} p_j} r(psi_0(a)).
    RingPtr r2 = ring_xy();
    MFPtr brane = koszul2(parse_poly("x", r2), parse_poly("x^2", r2), parse_poly("y", r2),
                          parse_poly("y^2", r2));
    const unsigned L = 4;
    int nontrivial = 0;
    for (int rep = 0; rep < 20; ++rep) {
        std::size_t n = static_cast<std::size_t>(lgtest::rand_int(2, 4));
        std::vector<Morphism> f;
        std::vector<int> par;
        for (std::size_t i = 0; i < n; ++i) {
            Parity p = lgtest::rand_int(0, 1) ? Parity::Odd : Parity::Even;
            par.push_back(p == Parity::Odd ? 1 : 0);
            f.push_back(rand_endo(brane, p));
        }
        std::vector<Morphism> g;
        g.push_back(f[n - 1]);
        for (std::size_t i = 0; i + 1 < n; ++i) g.push_back(f[i]);

        TensorChain a0 = chop(psi(CatChain::word(L, f)), n);
        TensorChain b = chop(psi(CatChain::word(L, g)), n);
        TensorChain a(a0.algebra(), a0.truncation());
        for (const auto& [w, c] : a0.words()) {
            TensorWord rw;
            rw.push_back(w.back());
            for (std::size_t i = 0; i + 1 < w.size(); ++i) rw.push_back(w[i]);
            a.add_word(rw, c);
        }
        int sign = static_cast<int>(n) * par[n - 1];
        for (std::size_t i = 0; i + 1 < n; ++i) sign += par[i];
        CHECK(b == (sign % 2 == 0 ? a : a.scaled(Rational(-1))));
        if (!b.is_zero()) ++nontrivial;
    }
    CHECK(nontrivial > 0);
}

TEST_CASE("state space of an isolated singularity") {
    SUBCASE("x^3: Milnor number 2 in top form degree") {
        RingPtr r = ring_x();
        StateSpaceTable t = state_space_homology(parse_poly("x^3", r));
        REQUIRE(t.dims.size() == 2);
        CHECK(t.dims[0] == 0);
        CHECK(t.dims[1] == 2);
        CHECK(t.milnor == 2);
        REQUIRE(t.basis_monomials.size() == 2);
        CHECK(t.basis_monomials[0] == Exps{0});
        CHECK(t.basis_monomials[1] == Exps{1});
    }
    SUBCASE("x^2 - y^2: one class in degree two") {
        RingPtr r = ring_xy();
        StateSpaceTable t = state_space_homology(parse_poly("x^2-y^2", r));
        REQUIRE(t.dims.size() == 3);
        CHECK(t.dims[0] == 0);
        CHECK(t.dims[1] == 0);
        CHECK(t.dims[2] == 1);
        CHECK(t.milnor == 1);
    }
    SUBCASE("non-isolated x^2 y is rejected") {
        RingPtr r = ring_xy();
        CHECK_THROWS_AS(state_space_homology(parse_poly("x^2*y", r)), Error);
    }
}

TEST_CASE("windowed homology, classical W = 0 over one variable") {
    RingPtr r = ring_x();
    TruncatedHomology t = hh_truncated_homology(Poly::zero(r), 4, 3);
    CHECK(t.classical);
    // Classical oracle: HH_0 = R (dim 1 per degree), HH_1 = forms x^{t-1} dx
    // (dim 1 for degree >= 1), HH_k = 0 for k >= 2.
    for (const auto& row : t.rows) {
        REQUIRE(row.length >= 0);
        if (row.length >= 4) {
            CHECK_FALSE(row.reliable);  // top length misses boundaries from above
            continue;
        }
        CHECK(row.reliable);
        long deg = row.degree.to_long();
        std::size_t expect = 0;
        if (row.length == 0) expect = 1;
        if (row.length == 1 && deg >= 1) expect = 1;
        CHECK(row.dim == expect);
    }
}

TEST_CASE("windowed homology matches the degree-capped forms complex") {
    auto run = [](unsigned d, unsigned L, unsigned D) {
        RingPtr r = ring_x(Rational(1, static_cast<long>(d)));
        Poly w = parse_poly(d == 2 ? "x^2" : "x^3", r);
        TruncatedHomology t = hh_truncated_homology(w, L, D);
        CHECK_FALSE(t.classical);
        std::map<Rational, std::size_t> oracle = forms_window_dims(d, D);
        std::size_t reliable_rows = 0, nonzero_reliable = 0;
        for (const auto& row : t.rows) {
            if (!row.reliable) continue;
            ++reliable_rows;
            auto it = oracle.find(row.degree);
            std::size_t expect = it == oracle.end() ? 0 : it->second;
            CHECK(row.dim == expect);
            if (row.dim > 0) ++nonzero_reliable;
        }
        CHECK(reliable_rows > 0);
        CHECK(nonzero_reliable > 0);
        return t;
    };

    SUBCASE("W = x^2, L = 4, D = 6") {
        TruncatedHomology t = run(2, 4, 6);
        // Reliable zone is exactly tau <= -4; the degree-boundary classes x^5,
        // x^6 sit at tau = -5, -6, and the true class [dx] at tau = 0 is
        // (honestly) outside the reliable zone.
        std::map<Rational, std::pair<std::size_t, bool>> rows;
        for (const auto& row : t.rows) rows[row.degree] = {row.dim, row.reliable};
        CHECK(rows.at(Rational(-4)) == std::pair<std::size_t, bool>{0, true});
        CHECK(rows.at(Rational(-5)) == std::pair<std::size_t, bool>{1, true});
        CHECK(rows.at(Rational(-6)) == std::pair<std::size_t, bool>{1, true});
        CHECK_FALSE(rows.at(Rational(0)).second);
    }
    SUBCASE("W = x^3, L = 4, D = 8") {
        TruncatedHomology t = run(3, 4, 8);
        std::map<Rational, std::pair<std::size_t, bool>> rows;
        for (const auto& row : t.rows) rows[row.degree] = {row.dim, row.reliable};
        for (long e : {6, 7, 8}) {  // surviving zero-forms x^6, x^7, x^8
            auto [dim, reliable] = rows.at(Rational(-2 * e, 3));
            CHECK(dim == 1);
            CHECK(reliable);
        }
        CHECK(rows.at(Rational(-11, 3)) == std::pair<std::size_t, bool>{0, true});
        CHECK(rows.at(Rational(-13, 3)) == std::pair<std::size_t, bool>{0, true});
    }
}

TEST_CASE("windowed homology at length bound zero lists the coordinate ring") {
    RingPtr r = ring_x(Rational(1, 2));
    TruncatedHomology t = hh_truncated_homology(parse_poly("x^2", r), 0, 2);
    // No differential survives at length 0 (the W-insertion leaves the
    // window), so each monomial of degree <= D is its own class; none of it
    // is reliable.
    REQUIRE(t.rows.size() == 3);
    for (const auto& row : t.rows) {
        CHECK(row.dim == 1);
        CHECK_FALSE(row.reliable);
    }
}
