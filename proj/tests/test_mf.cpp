#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lgcalc/linalg.hpp"
#include "lgcalc/mf.hpp"
#include "lgcalc/parser.hpp"
#include "test_util.hpp"

using namespace lg;

namespace {

RingPtr ring_xy() {
    RingSpec spec;
    spec.variables = {"x", "y"};
    spec.grading = Grading::Z2;
    return make_ring(spec);
}

RingPtr ring_x() {
    RingSpec spec;
    spec.variables = {"x"};
    spec.grading = Grading::Z2;
    return make_ring(spec);
}

PolyMatrix mat1(const Poly& p) {
    PolyMatrix m(p.ring(), 1, 1);
    m.set(0, 0, p);
    return m;
}

/** Rank-(1,1) factorization of a*b with d_od = (a), d_ev = (b). */
MFPtr koszul1(const Poly& a, const Poly& b) {
    return make_mf(make_curved_algebra(a.ring(), a * b), mat1(a), mat1(b));
}

Morphism rand_morphism(const MFPtr& m, const MFPtr& n, Parity p) {
    const RingPtr& R = m->algebra.ring;
    auto fill = [&](std::size_t r, std::size_t c) {
        PolyMatrix b(R, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) b.set(i, j, lgtest::rand_poly(R, 2, 2));
        return b;
    };
    if (p == Parity::Even)
        return Morphism::even(m, n, fill(n->rank_ev, m->rank_ev), fill(n->rank_od, m->rank_od));
    return Morphism::odd(m, n, fill(n->rank_ev, m->rank_od), fill(n->rank_od, m->rank_ev));
}

}  // namespace

TEST_CASE("exact linear algebra over the rationals") {
    QMatrix a(2, 3);
    a.at(0, 0) = Rational(1); a.at(0, 1) = Rational(2); a.at(0, 2) = Rational(3);
    a.at(1, 0) = Rational(2); a.at(1, 1) = Rational(4); a.at(1, 2) = Rational(6);
    CHECK(rank(a) == 1);
    auto ker = kernel_basis(a);
    CHECK(ker.size() == 2);
    for (const auto& v : ker) {
        QVector img = a.apply(v);
        for (const auto& x : img) CHECK(x.is_zero());
    }

    QMatrix b(2, 2);
    b.at(0, 0) = Rational(1); b.at(0, 1) = Rational(1);
    b.at(1, 0) = Rational(1); b.at(1, 1) = Rational(-1);
    CHECK(b.determinant() == Rational(-2));
    auto binv = b.inverse();
    REQUIRE(binv.has_value());
    CHECK(b * *binv == QMatrix::identity(2));
    auto sol = solve(b, QVector{Rational(3), Rational(1)});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == Rational(2));
    CHECK((*sol)[1] == Rational(1));

    // Quotient representatives: span{e1} inside span{e1, e2} leaves e2.
    QVector e1{Rational(1), Rational(0)}, e2{Rational(0), Rational(1)};
    auto reps = quotient_representatives({e1}, {e1 , e2});
    REQUIRE(reps.size() == 1);
    CHECK(reps[0] == 1);
    CHECK(intersection_dim({e1, e2}, {e2}) == 1);
}

TEST_CASE("polynomial matrices multiply blockwise and kron is multiplicative") {
    auto R = ring_xy();
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");
    PolyMatrix a(R, 2, 2), b(R, 2, 2);
    a.set(0, 1, x); a.set(1, 0, y);
    b.set(0, 0, y); b.set(1, 1, x);
    PolyMatrix ab = a * b;
    CHECK(ab.at(0, 1) == x * x);
    CHECK(ab.at(1, 0) == y * y);
    CHECK(ab.at(0, 0).is_zero());
    CHECK((a + (-a)).is_zero());
    CHECK(a.transpose().transpose() == a);
    CHECK(kron(a, b) * kron(b, a) == kron(a * b, b * a));
    CHECK(PolyMatrix::identity(R, 3).trace() == Poly::constant(R, Rational(3)));
}

TEST_CASE("factorization validation: the basic examples") {
    auto R = ring_xy();
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");

    // d_od = (x-y), d_ev = (x+y) factorizes x^2 - y^2.
    auto m = koszul1(x - y, x + y);
    CHECK(validate_mf(*m).ok);
    CHECK(m->rank_ev == 1);
    CHECK(m->rank_od == 1);

    auto R1 = ring_x();
    Poly t = Poly::variable(R1, "x");
    CHECK(validate_mf(*koszul1(t, t)).ok);

    // Broken pair: x*(x+1) != x^2; the witness names the offending entry.
    auto bad = make_mf(make_curved_algebra(R1, t * t), mat1(t),
                       mat1(t + Poly::constant(R1, Rational(1))));
    auto rep = validate_mf(*bad);
    CHECK_FALSE(rep.ok);
    REQUIRE(!rep.failures.empty());
    CHECK(rep.failures[0].find("x^2 + x") != std::string::npos);

    // Zero-rank factorization is vacuously valid.
    auto zero = make_mf(make_curved_algebra(R1, t * t), PolyMatrix(R1, 0, 0), PolyMatrix(R1, 0, 0));
    CHECK(validate_mf(*zero).ok);
}

TEST_CASE("factorization validation: internal charge homogeneity") {
    // Weight-1 coordinates, so x^2 - y^2 has charge 2 and linear entries have
    // charge 1 = t_ev - t_od + 1 with equal internal degrees.
    RingSpec spec;
    spec.variables = {"x", "y"};
    spec.grading = Grading::Z2;
    spec.rcharge_weights = std::vector<long>{1, 1};
    auto R = make_ring(spec);
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");

    auto good = make_mf(make_curved_algebra(R, x * x - y * y), mat1(x - y), mat1(x + y),
                        std::vector<long>{0}, std::vector<long>{0});
    CHECK(validate_mf(*good).ok);

    // Degree bookkeeping off by one: flagged entry by entry.
    auto off = make_mf(make_curved_algebra(R, x * x - y * y), mat1(x - y), mat1(x + y),
                       std::vector<long>{0}, std::vector<long>{1});
    auto rep = validate_mf(*off);
    CHECK_FALSE(rep.ok);
    CHECK(rep.failures.size() == 2);

    // Inhomogeneous entries can never carry a charge.
    auto inhom = make_mf(make_curved_algebra(R, x * x - y * y),
                         mat1(x - y + Poly::constant(R, Rational(1))), mat1(x + y),
                         std::vector<long>{0}, std::vector<long>{0});
    CHECK_FALSE(validate_mf(*inhom).ok);

    // Z-grading also polices the potential's charge (must be 2).
    RingSpec zspec;
    zspec.variables = {"x"};
    zspec.grading = Grading::Z;
    zspec.rcharge_weights = std::vector<long>{2};
    auto RZ = make_ring(zspec);
    Poly u = Poly::variable(RZ, "x");
    CHECK_THROWS_AS(make_curved_algebra(RZ, u * u), Error);  // charge 4
    auto triv = make_mf(make_curved_algebra(RZ, u), mat1(Poly::constant(RZ, Rational(1))),
                        mat1(u), std::vector<long>{0}, std::vector<long>{1});
    CHECK(validate_mf(*triv).ok);
}

TEST_CASE("hom complex differential") {
    auto R1 = ring_x();
    Poly t = Poly::variable(R1, "x");
    auto m = koszul1(t, t);

    CHECK(hom_diff(Morphism::identity(m)).is_zero());

    // d_M as an odd endomorphism maps to 2W.id under the differential.
    Morphism dm = Morphism::odd(m, m, mat1(t), mat1(t));
    Morphism ddm = hom_diff(dm);
    CHECK(ddm.parity == Parity::Even);
    CHECK(ddm.b_ee == mat1((t * t).scaled(Rational(2))));
    CHECK(ddm.b_oo == mat1((t * t).scaled(Rational(2))));

    // The differential squares to zero on random morphisms of both parities,
    // here between two different presentations of factorizations of x^2 - y^2.
    auto R = ring_xy();
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");
    auto a = koszul1(x - y, x + y);
    auto b = tensor_mf(koszul1(x, x), koszul1(y, -y));
    for (int i = 0; i < 10; ++i) {
        for (Parity p : {Parity::Even, Parity::Odd}) {
            Morphism f = rand_morphism(a, b, p);
            CHECK(hom_diff(f).parity == flip(p));
            CHECK(hom_diff(hom_diff(f)).is_zero());
        }
    }
}

TEST_CASE("composition: identities, parity, Leibniz rule") {
    auto R = ring_xy();
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");
    // The Leibniz rule is formal: it holds whatever the three potentials are.
    auto a = koszul1(x - y, x + y);
    auto b = tensor_mf(koszul1(x, x), koszul1(y, y));
    auto c = tensor_mf(koszul1(x + y, x - y), koszul1(y, y));

    for (int i = 0; i < 8; ++i) {
        Parity pf = lgtest::rand_int(0, 1) ? Parity::Odd : Parity::Even;
        Parity pg = lgtest::rand_int(0, 1) ? Parity::Odd : Parity::Even;
        Morphism f = rand_morphism(a, b, pf);
        Morphism g = rand_morphism(b, c, pg);

        CHECK(compose(Morphism::identity(b), f) == f);
        CHECK(compose(f, Morphism::identity(a)) == f);
        Morphism gf = compose(g, f);
        CHECK((gf.parity == Parity::Even) == (pf == pg));

        // hom_diff(g.f) = hom_diff(g).f + (-1)^{|g|} g.hom_diff(f)
        Morphism lhs = hom_diff(gf);
        Morphism rhs = compose(hom_diff(g), f) +
                       compose(g, hom_diff(f)).scaled(Rational(parity_sign(pg)));
        CHECK(lhs == rhs);
    }

    CHECK_THROWS_AS(compose(rand_morphism(a, b, Parity::Even),
                            rand_morphism(b, c, Parity::Even)),
                    Error);
}

TEST_CASE("tensor product of factorizations") {
    auto R = ring_xy();
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");
    auto kx = koszul1(x, x), ky = koszul1(y, y);

    auto t = tensor_mf(kx, ky);
    CHECK(t->rank_ev == 2);
    CHECK(t->rank_od == 2);
    CHECK(t->algebra.potential == x * x + y * y);
    CHECK(validate_mf(*t).ok);

    // Tensoring with the rank-(1,0) unit over W = 0 is the identity.
    auto unit = make_mf(make_curved_algebra(R, Poly::zero(R)), PolyMatrix(R, 0, 1),
                        PolyMatrix(R, 1, 0));
    auto tu = tensor_mf(t, unit);
    CHECK(tu->rank_ev == t->rank_ev);
    CHECK(tu->rank_od == t->rank_od);
    CHECK(tu->d_od == t->d_od);
    CHECK(tu->d_ev == t->d_ev);
    CHECK(tu->algebra.potential == t->algebra.potential);

    // Parity bookkeeping and validity for a random pile of rank-1 pieces.
    auto a = koszul1(x - y, x + y);
    auto ta = tensor_mf(t, a);
    CHECK(ta->rank_ev == t->rank_ev * a->rank_ev + t->rank_od * a->rank_od);
    CHECK(validate_mf(*ta).ok);
    CHECK(ta->algebra.potential == (x * x + y * y) + (x * x - y * y));
}

TEST_CASE("ext classes of the rank-one factorization of x^2") {
    auto R1 = ring_x();
    Poly t = Poly::variable(R1, "x");
    auto m = koszul1(t, t);

    auto even = ext_basis(m, m, Parity::Even, 3);
    REQUIRE(even.size() == 1);
    // The class of the identity: equal constant nonzero diagonal blocks.
    CHECK(even[0].b_ee == even[0].b_oo);
    CHECK(even[0].b_ee.at(0, 0).is_constant());
    CHECK_FALSE(even[0].b_ee.at(0, 0).is_zero());

    auto odd = ext_basis(m, m, Parity::Odd, 3);
    REQUIRE(odd.size() == 1);
    // Representative proportional to blocks (1, -1).
    CHECK(odd[0].b_eo.at(0, 0) == -odd[0].b_oe.at(0, 0));
    CHECK_FALSE(odd[0].b_eo.at(0, 0).is_zero());
    CHECK(hom_diff(odd[0]).is_zero());

    // Dimensions are stable in the degree bound.
    for (unsigned d = 1; d <= 5; ++d) {
        CHECK(ext_basis(m, m, Parity::Even, d).size() == 1);
        CHECK(ext_basis(m, m, Parity::Odd, d).size() == 1);
    }

    // Zero object: no classes at all.
    auto zero = make_mf(make_curved_algebra(R1, t * t), PolyMatrix(R1, 0, 0), PolyMatrix(R1, 0, 0));
    CHECK(ext_basis(zero, zero, Parity::Even, 3).empty());
    CHECK(ext_basis(m, zero, Parity::Odd, 3).empty());
}

TEST_CASE("ext dimensions are presentation-independent") {
    auto R = ring_xy();
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");
    auto t = tensor_mf(koszul1(x, x), koszul1(y, y));

    // Conjugate by swapping the two odd generators: P d_od, d_ev P.
    PolyMatrix p(R, 2, 2);
    p.set(0, 1, Poly::constant(R, Rational(1)));
    p.set(1, 0, Poly::constant(R, Rational(1)));
    auto t2 = make_mf(t->algebra, p * t->d_od, t->d_ev * p);
    CHECK(validate_mf(*t2).ok);

    for (unsigned d = 2; d <= 4; ++d)
        for (Parity par : {Parity::Even, Parity::Odd}) {
            auto b1 = ext_basis(t, t, par, d);
            auto b2 = ext_basis(t2, t2, par, d);
            CHECK(b1.size() == b2.size());
            for (const auto& f : b1) CHECK(hom_diff(f).is_zero());
        }
}
