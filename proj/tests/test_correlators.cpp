#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "lgcalc/correlators.hpp"
#include "lgcalc/mf.hpp"
#include "lgcalc/parser.hpp"
#include "test_util.hpp"

using namespace lg;

namespace {

RingPtr ring_x(long weight_den) {
    RingSpec spec;
    spec.variables = {"x"};
    spec.qh_weights = std::vector<Rational>{Rational(1, weight_den)};
    return make_ring(spec);
}

RingPtr ring_xy(long weight_den) {
    RingSpec spec;
    spec.variables = {"x", "y"};
    spec.qh_weights = std::vector<Rational>{Rational(1, weight_den), Rational(1, weight_den)};
    return make_ring(spec);
}

RingPtr ring_xy_plain() {
    RingSpec spec;
    spec.variables = {"x", "y"};
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

/** The odd endomorphism (b_eo, b_oe) = (1, -1) of a rank-(1,1) brane. */
Morphism odd_generator(const MFPtr& m) {
    const RingPtr& R = m->algebra.ring;
    return Morphism::odd(m, m, mat1(Poly::constant(R, 1)), mat1(Poly::constant(R, -1)));
}

}  // namespace

TEST_CASE("hessian: determinant of second partials") {
    RingPtr R1 = ring_x(2);
    CHECK(hessian(parse_poly("x^2", R1)) == Poly::constant(R1, 2));
    CHECK(hessian(parse_poly("x^3", R1)) == parse_poly("6*x", R1));

    RingPtr R2 = ring_xy_plain();
    CHECK(hessian(parse_poly("x^2 - y^2", R2)) == Poly::constant(R2, -4));
    // mixed partials enter with both orders: det [[2y, 2x], [2x, 0]].
    CHECK(hessian(parse_poly("x^2*y", R2)) == parse_poly("-4*x^2", R2));
    CHECK(hessian(parse_poly("x^3 + y^3", R2)) == parse_poly("36*x*y", R2));
    CHECK(hessian(Poly::constant(R2, 5)).is_zero());
}

TEST_CASE("residue: socle normalization reproduces the contour values") {
    // One variable, W = x^d: residue(x^{d-2}) = 1/d; lower powers die.
    {
        RingPtr R = ring_x(2);
        auto rf = make_residue_functional(parse_poly("x^2", R));
        CHECK(rf.mu == 1);
        CHECK(rf.quotient.dimension() == 1);
        CHECK(residue(Poly::constant(R, 1), rf) == Rational(1, 2));
        CHECK(residue(hessian(rf.w), rf) == Rational(1));
    }
    {
        RingPtr R = ring_x(3);
        auto rf = make_residue_functional(parse_poly("x^3", R));
        CHECK(rf.mu == 2);
        CHECK(residue(parse_poly("x", R), rf) == Rational(1, 3));
        CHECK(residue(Poly::constant(R, 1), rf) == Rational(0));
        CHECK(residue(hessian(rf.w), rf) == Rational(2));
    }
    // Two variables split as products of one-variable contours.
    {
        RingPtr R = ring_xy(3);
        auto rf = make_residue_functional(parse_poly("x^3 + y^3", R));
        CHECK(rf.mu == 4);
        CHECK(rf.socle_rep == parse_poly("36*x*y", R));
        CHECK(residue(parse_poly("x*y", R), rf) == Rational(1, 9));  // (1/3)(1/3)
        CHECK(residue(parse_poly("x", R), rf) == Rational(0));
        CHECK(residue(hessian(rf.w), rf) == Rational(4));
    }
    {
        RingPtr R = ring_xy(2);
        auto rf = make_residue_functional(parse_poly("x^2 - y^2", R));
        CHECK(rf.mu == 1);
        CHECK(residue(Poly::constant(R, 1), rf) == Rational(-1, 4));  // (1/2)(-1/2)
        CHECK(residue(hessian(rf.w), rf) == Rational(1));
    }
}

TEST_CASE("residue: linearity and Jacobian-ideal vanishing") {
    RingPtr R = ring_xy(3);
    Poly w = parse_poly("x^3 + y^3", R);
    auto rf = make_residue_functional(w);
    for (int rep = 0; rep < 12; ++rep) {
        Poly p = lgtest::rand_poly(R, 3, 4), q = lgtest::rand_poly(R, 3, 4);
        Rational a = lgtest::rand_rational(), b = lgtest::rand_rational();
        CHECK(residue(p.scaled(a) + q.scaled(b), rf) ==
              a * residue(p, rf) + b * residue(q, rf));
        CHECK(residue(w.partial(0) * q, rf) == Rational(0));
        CHECK(residue(w.partial(1) * p, rf) == Rational(0));
    }
    // Monomials in the ideal reduce to zero before the socle is consulted.
    CHECK(residue(parse_poly("x^2*y^2", R), rf) == Rational(0));
}

TEST_CASE("residue: rejected inputs") {
    // No qh weights on the ring.
    RingPtr plain = ring_xy_plain();
    CHECK_THROWS_AS(make_residue_functional(parse_poly("x^2 + y^2", plain)), Error);
    // Inhomogeneous for the declared weights.
    RingPtr R = ring_x(3);
    CHECK_THROWS_AS(make_residue_functional(parse_poly("x + x^3", R)), Error);
    // Non-isolated critical locus.
    CHECK_THROWS_AS(make_residue_functional(parse_poly("x^2*y", ring_xy(3))), Error);
    // Smooth potential: the Hessian class cannot span a socle.
    CHECK_THROWS_AS(make_residue_functional(parse_poly("x", ring_x(1))), Error);
}

TEST_CASE("boundary_bulk: supertrace of connection powers") {
    RingPtr R = ring_x(2);
    Poly x = parse_poly("x", R);
    MFPtr m = koszul1(x, x);

    // Identity: supertrace cancels rank against rank in every degree.
    CHECK(boundary_bulk(m, Morphism::identity(m)).is_zero());

    // Odd generator: single wedge power of the off-diagonal connection.
    Form tau = boundary_bulk(m, odd_generator(m));
    CHECK(tau == Form::component(Poly::constant(R, 2), 0b1));
    CHECK(tau.degree_part(0).is_zero());

    // Conic brane over x^2 - y^2: tau(id) = Str((dd)^2)/2 = 2 dx^dy.
    RingPtr R2 = ring_xy(2);
    MFPtr conic = koszul1(parse_poly("x + y", R2), parse_poly("x - y", R2));
    CHECK(validate_mf(*conic).ok);
    Form tid = boundary_bulk(conic, Morphism::identity(conic));
    CHECK(tid == Form::component(Poly::constant(R2, 2), 0b11));

    // Only endomorphisms are accepted.
    MFPtr other = koszul1(x * x, Poly::constant(R, 1));
    CHECK_THROWS_AS(boundary_bulk(m, Morphism::zero(m, other, Parity::Even)), Error);
}

TEST_CASE("kapustin_li: disc correlator values") {
    RingPtr R = ring_x(2);
    Poly x = parse_poly("x", R);
    MFPtr m = koszul1(x, x);
    CHECK(kapustin_li(m, Morphism::identity(m)) == Rational(0));
    CHECK(kapustin_li(m, odd_generator(m)) == Rational(1));

    // Scaling the representative scales the correlator.
    CHECK(kapustin_li(m, odd_generator(m).scaled(Rational(-3, 2))) == Rational(-3, 2));

    RingPtr R2 = ring_xy(2);
    MFPtr conic = koszul1(parse_poly("x + y", R2), parse_poly("x - y", R2));
    CHECK(kapustin_li(conic, Morphism::identity(conic)) == Rational(-1, 2));
}

TEST_CASE("kapustin_li: exact endomorphisms correlate to zero") {
    RingPtr R = ring_x(3);
    MFPtr m = koszul1(parse_poly("x", R), parse_poly("x^2", R));
    for (int rep = 0; rep < 15; ++rep) {
        Morphism beta = rand_endo(m, rep % 2 ? Parity::Even : Parity::Odd);
        CHECK(kapustin_li(m, hom_diff(beta)) == Rational(0));
    }

    RingPtr R2 = ring_xy(3);
    MFPtr m2 = koszul2(parse_poly("x", R2), parse_poly("x^2", R2), parse_poly("y", R2),
                       parse_poly("y^2", R2));
    CHECK(validate_mf(*m2).ok);
    for (int rep = 0; rep < 10; ++rep) {
        Morphism beta = rand_endo(m2, rep % 2 ? Parity::Even : Parity::Odd);
        CHECK(kapustin_li(m2, hom_diff(beta)) == Rational(0));
    }

    // Homotopy invariance: shifting a closed representative changes nothing.
    MFPtr m1 = koszul1(parse_poly("x", ring_x(2)), parse_poly("x", ring_x(2)));
    Morphism gen = odd_generator(m1);
    Morphism shifted = gen + hom_diff(rand_endo(m1, Parity::Even));
    CHECK(kapustin_li(m1, shifted) == kapustin_li(m1, gen));
}

TEST_CASE("kl_pairing: composition pairing") {
    RingPtr R = ring_x(2);
    Poly x = parse_poly("x", R);
    MFPtr m = koszul1(x, x);
    Morphism id = Morphism::identity(m);
    Morphism gen = odd_generator(m);

    CHECK(kl_pairing(id, gen) == Rational(1));
    CHECK(kl_pairing(gen, id) == Rational(1));  // (-1)^{0*1} = +1
    CHECK(kl_pairing(id, id) == Rational(0));
    CHECK(kl_pairing(gen, gen) == Rational(0));

    // Pairing against an exact morphism vanishes for closed first argument.
    RingPtr R3 = ring_x(3);
    MFPtr a = koszul1(parse_poly("x", R3), parse_poly("x^2", R3));
    MFPtr b = koszul1(parse_poly("x^2", R3), parse_poly("x", R3));
    std::vector<Morphism> closed = ext_basis(a, b, Parity::Even, 4);
    auto odd_cross = ext_basis(a, b, Parity::Odd, 4);
    closed.insert(closed.end(), odd_cross.begin(), odd_cross.end());
    REQUIRE(!closed.empty());
    for (const Morphism& alpha : closed)
        for (int rep = 0; rep < 5; ++rep) {
            const RingPtr& R3b = b->algebra.ring;
            auto fill = [&](std::size_t rr, std::size_t cc) {
                PolyMatrix blk(R3b, rr, cc);
                for (std::size_t i = 0; i < rr; ++i)
                    for (std::size_t j = 0; j < cc; ++j) blk.set(i, j, lgtest::rand_poly(R3b, 2, 2));
                return blk;
            };
            Morphism gamma = rep % 2
                ? Morphism::even(b, a, fill(a->rank_ev, b->rank_ev), fill(a->rank_od, b->rank_od))
                : Morphism::odd(b, a, fill(a->rank_ev, b->rank_od), fill(a->rank_od, b->rank_ev));
            CHECK(kl_pairing(alpha, hom_diff(gamma)) == Rational(0));
        }

    // Mismatched branes are rejected.
    CHECK_THROWS_AS(kl_pairing(closed[0], closed[0]), Error);
}

TEST_CASE("kl_pairing: graded symmetry on closed classes") {
    RingPtr R = ring_x(3);
    MFPtr a = koszul1(parse_poly("x", R), parse_poly("x^2", R));
    MFPtr b = koszul1(parse_poly("x^2", R), parse_poly("x", R));
    for (Parity pa : {Parity::Even, Parity::Odd})
        for (Parity pb : {Parity::Even, Parity::Odd}) {
            int sign = (pa == Parity::Odd && pb == Parity::Odd) ? -1 : 1;
            for (const Morphism& alpha : ext_basis(a, b, pa, 4))
                for (const Morphism& beta : ext_basis(b, a, pb, 4))
                    CHECK(kl_pairing(alpha, beta) == kl_pairing(beta, alpha) * Rational(sign));
        }

    // Two variables: odd classes pair with odd classes and anticommute.
    RingPtr R2 = ring_xy(3);
    MFPtr m2 = koszul2(parse_poly("x", R2), parse_poly("x^2", R2), parse_poly("y", R2),
                       parse_poly("y^2", R2));
    auto odd = ext_basis(m2, m2, Parity::Odd, 4);
    REQUIRE(odd.size() == 2);
    Rational v = kl_pairing(odd[0], odd[1]);
    CHECK(!v.is_zero());
    CHECK(kl_pairing(odd[1], odd[0]) == -v);
    CHECK(kl_pairing(odd[0], odd[0]) == Rational(0));
}

TEST_CASE("nondegeneracy_report: Gram ranks of small brane sets") {
    // Two branes over x^3: one class per ordered pair and parity, full rank.
    RingPtr R = ring_x(3);
    MFPtr m1 = koszul1(parse_poly("x", R), parse_poly("x^2", R));
    MFPtr m2 = koszul1(parse_poly("x^2", R), parse_poly("x", R));
    auto rep = nondegeneracy_report({m1, m2}, 4);
    CHECK(rep.classes.size() == 8);
    CHECK(rep.rank == 8);
    CHECK(rep.nondegenerate);
    CHECK(!rep.convention.empty());
    // Entries only couple Hom(M,N) against Hom(N,M), with opposite parity in
    // one variable; every class must hit some partner.
    for (std::size_t i = 0; i < rep.classes.size(); ++i) {
        bool hit = false;
        for (std::size_t j = 0; j < rep.classes.size(); ++j) {
            const auto& ci = rep.classes[i];
            const auto& cj = rep.classes[j];
            if (!rep.gram.at(i, j).is_zero()) {
                hit = true;
                CHECK(ci.source == cj.target);
                CHECK(ci.target == cj.source);
                CHECK(ci.parity != cj.parity);
            }
        }
        CHECK(hit);
    }
    // Stable once the slice saturates.
    CHECK(nondegeneracy_report({m1, m2}, 6).rank == 8);

    // Single brane over x^2: the two classes {even id, odd generator}.
    RingPtr R2 = ring_x(2);
    MFPtr n = koszul1(parse_poly("x", R2), parse_poly("x", R2));
    auto rep2 = nondegeneracy_report({n}, 4);
    CHECK(rep2.classes.size() == 2);
    CHECK(rep2.classes[0].parity == Parity::Even);
    CHECK(rep2.classes[1].parity == Parity::Odd);
    CHECK(rep2.rank == 2);
    CHECK(rep2.nondegenerate);
    CHECK(rep2.gram.at(0, 0) == Rational(0));
    CHECK(rep2.gram.at(1, 1) == Rational(0));
    CHECK(rep2.gram.at(0, 1) == rep2.gram.at(1, 0));
    CHECK(!rep2.gram.at(0, 1).is_zero());

    // Rank-(2,2) brane over x^3+y^3: 2+2 classes, odd-odd block antisymmetric.
    RingPtr R3 = ring_xy(3);
    MFPtr t = koszul2(parse_poly("x", R3), parse_poly("x^2", R3), parse_poly("y", R3),
                      parse_poly("y^2", R3));
    auto rep3 = nondegeneracy_report({t}, 4);
    CHECK(rep3.classes.size() == 4);
    CHECK(rep3.rank == 4);
    CHECK(rep3.nondegenerate);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            int sign = (rep3.classes[i].parity == Parity::Odd &&
                        rep3.classes[j].parity == Parity::Odd) ? -1 : 1;
            CHECK(rep3.gram.at(i, j) == rep3.gram.at(j, i) * Rational(sign));
        }

    // Empty input: empty report, vacuously nondegenerate.
    auto none = nondegeneracy_report({}, 4);
    CHECK(none.classes.empty());
    CHECK(none.gram.rows() == 0);
    CHECK(none.rank == 0);
    CHECK(none.nondegenerate);

    // Branes over different potentials cannot share a report.
    CHECK_THROWS_AS(nondegeneracy_report({m1, n}, 4), Error);
}
