#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "lgcalc/form.hpp"
#include "lgcalc/parser.hpp"
#include "lgcalc/poly.hpp"
#include "lgcalc/rational.hpp"
#include "lgcalc/ring.hpp"
#include "test_util.hpp"

using lg::Error;
using lg::Exps;
using lg::Form;
using lg::Grading;
using lg::ParseError;
using lg::Poly;
using lg::Rational;
using lg::RingPtr;
using lg::RingSpec;

namespace {

RingPtr ring_xy() {
    RingSpec spec;
    spec.variables = {"x", "y"};
    spec.grading = Grading::Z2;
    return lg::make_ring(spec);
}

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
    Rational a(1, 3), b(1, 6);
    CHECK((a + b).str() == "1/2");
    CHECK((a - b).str() == "1/6");
    CHECK((a * b).str() == "1/18");
    CHECK((a / b).str() == "2");
    CHECK(Rational(-4, 8).str() == "-1/2");
    CHECK(Rational(2, -4).str() == "-1/2");  // sign moves to the numerator
    CHECK(Rational::from_string("6/4").str() == "3/2");
    CHECK(Rational::from_string("-0").is_zero());
    CHECK_THROWS_AS(Rational::from_string("1/0"), Error);
    CHECK_THROWS_AS(Rational::from_string("x"), Error);
    CHECK_THROWS_AS(Rational::from_string("1/2/3"), Error);
    CHECK_THROWS_AS(Rational(1, 0), Error);
    CHECK(Rational(7, 1).is_integer());
    CHECK(Rational(14, 2).to_long() == 7);
    CHECK_THROWS_AS((void)Rational(7, 2).to_long(), Error);
    CHECK(abs(Rational(-3, 5)) == Rational(3, 5));
    CHECK(Rational(2, 3) < Rational(3, 4));
}

TEST_CASE("ring construction validates its data") {
    RingSpec ok;
    ok.variables = {"x", "y_1"};
    ok.grading = Grading::Z2;
    CHECK(lg::make_ring(ok)->nvars() == 2);

    RingSpec dup = ok;
    dup.variables = {"x", "x"};
    CHECK_THROWS_AS(lg::make_ring(dup), Error);

    RingSpec badname = ok;
    badname.variables = {"2x"};
    CHECK_THROWS_AS(lg::make_ring(badname), Error);

    // Z grading demands even integer charges so parities are consistent.
    RingSpec z = ok;
    z.grading = Grading::Z;
    CHECK_THROWS_AS(lg::make_ring(z), Error);  // weights required
    z.rcharge_weights = std::vector<long>{2, 3};
    CHECK_THROWS_AS(lg::make_ring(z), Error);  // odd weight
    z.rcharge_weights = std::vector<long>{2, 2};
    CHECK(lg::make_ring(z)->nvars() == 2);

    RingSpec qh = ok;
    qh.qh_weights = std::vector<Rational>{Rational(1, 2), Rational(0)};
    CHECK_THROWS_AS(lg::make_ring(qh), Error);  // weights must be positive
    qh.qh_weights = std::vector<Rational>{Rational(1, 2), Rational(1, 3)};
    CHECK(lg::make_ring(qh)->nvars() == 2);
}

TEST_CASE("polynomial arithmetic matches hand expansion") {
    auto R = ring_xy();
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");

    CHECK((x + y) * (x - y) == x * x - y * y);
    CHECK((x + y).pow(2) == x * x + x * y.scaled(Rational(2)) + y * y);
    CHECK((x - x).is_zero());
    CHECK(Poly::zero(R).degree() == -1);
    CHECK((x * y).degree() == 2);
    CHECK(Poly::constant(R, Rational(5)).is_constant());

    // Canonical storage: structurally equal iff mathematically equal.
    Poly lhs = (x + y).pow(3);
    Poly rhs = x.pow(3) + (x * x * y).scaled(Rational(3)) + (x * y * y).scaled(Rational(3)) + y.pow(3);
    CHECK(lhs == rhs);

    CHECK(x.partial(0) == Poly::constant(R, Rational(1)));
    Poly p = x * x * y + y.pow(3);
    CHECK(p.partial(0) == (x * y).scaled(Rational(2)));
    CHECK(p.partial(1) == x * x + (y * y).scaled(Rational(3)));

    // Mixing rings is a hard error, not a silent coercion.
    auto R2 = ring_xy();
    RingSpec other;
    other.variables = {"z"};
    other.grading = Grading::Z2;
    auto Rz = lg::make_ring(other);
    CHECK_NOTHROW((void)(x + Poly::variable(R2, "x")));  // structurally same ring is fine
    CHECK_THROWS_AS((void)(x + Poly::variable(Rz, "z")), Error);
}

TEST_CASE("substitution is an algebra map") {
    auto R = ring_xy();
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");
    Poly w = x * x - y * y;

    // Even potential: invariant under (x,y) -> (-x,-y).
    std::vector<Poly> neg = {-x, -y};
    CHECK(w.substitute(neg) == w);

    // (x+y)^2 under x->y, y->x stays symmetric.
    std::vector<Poly> swap = {y, x};
    CHECK((x + y).pow(2).substitute(swap) == (x + y).pow(2));
    CHECK((x - y).substitute(swap) == -(x - y));

    // Multiplicativity on random samples.
    for (int i = 0; i < 25; ++i) {
        Poly a = lgtest::rand_poly(R, 3, 3), b = lgtest::rand_poly(R, 3, 3);
        std::vector<Poly> img = {lgtest::rand_poly(R, 2, 2), lgtest::rand_poly(R, 2, 2)};
        CHECK((a * b).substitute(img) == a.substitute(img) * b.substitute(img));
        CHECK((a + b).substitute(img) == a.substitute(img) + b.substitute(img));
    }
}

TEST_CASE("charge degrees") {
    RingSpec spec;
    spec.variables = {"x", "y"};
    spec.grading = Grading::Z2;
    spec.rcharge_weights = std::vector<long>{1, 1};
    spec.qh_weights = std::vector<Rational>{Rational(1, 2), Rational(1, 2)};
    auto R = lg::make_ring(spec);
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");

    auto d = (x * x - y * y).rcharge_degree();
    CHECK(d.kind == lg::RchargeDegree::Homogeneous);
    CHECK(d.degree == 2);
    CHECK((x * x + y.pow(3)).rcharge_degree().kind == lg::RchargeDegree::Inhomogeneous);
    CHECK(Poly::zero(R).rcharge_degree().kind == lg::RchargeDegree::Zero);

    auto q = (x * x - y * y).qh_degree();
    REQUIRE(q.has_value());
    CHECK(*q == Rational(1));
    CHECK_FALSE((x * x + y.pow(3)).qh_degree().has_value());
}

TEST_CASE("forms: wedge algebra and exterior derivative") {
    auto R = ring_xy();
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");
    Form dx = Form::d_generator(R, 0), dy = Form::d_generator(R, 1);

    CHECK(wedge(dx, dy) == -wedge(dy, dx));
    CHECK(wedge(dx, dx).is_zero());
    CHECK(lg::exterior_d(x * x) == dx.mul_poly(x.scaled(Rational(2))));

    // d o d = 0 on function-level forms.
    for (int i = 0; i < 20; ++i) {
        Poly p = lgtest::rand_poly(R, 4, 4);
        CHECK(lg::exterior_d(lg::exterior_d(p)).is_zero());
    }

    // Graded commutativity alpha ^ beta = (-1)^{|a||b|} beta ^ alpha.
    Form a = dx.mul_poly(lgtest::rand_poly(R, 2, 2));
    Form b = dy.mul_poly(lgtest::rand_poly(R, 2, 2));
    CHECK(wedge(a, b) == -wedge(b, a));
    Form f = Form::from_poly(lgtest::rand_poly(R, 2, 2));
    CHECK(wedge(f, a) == wedge(a, f));

    // Leibniz: d(p q) = dp q + p dq (degree 0, no sign).
    for (int i = 0; i < 10; ++i) {
        Poly p = lgtest::rand_poly(R, 3, 3), q = lgtest::rand_poly(R, 3, 3);
        CHECK(lg::exterior_d(p * q) == lg::exterior_d(p).mul_poly(q) + lg::exterior_d(q).mul_poly(p));
    }

    CHECK(Form::zero(R).top_degree() == -1);
    CHECK(wedge(a, b).top_degree() == 2);
}

TEST_CASE("parser: grammar, round trips, errors") {
    auto R = ring_xy();
    Poly x = Poly::variable(R, "x"), y = Poly::variable(R, "y");

    CHECK(lg::parse_poly("x^2 - y^2", R) == x * x - y * y);
    CHECK(lg::parse_poly("3*x^2*y - 1/2*y + 4", R) ==
          (x * x * y).scaled(Rational(3)) - y.scaled(Rational(1, 2)) + Poly::constant(R, Rational(4)));
    CHECK(lg::parse_poly("-(x + y)*(x - y)", R) == y * y - x * x);
    CHECK(lg::parse_poly("x^0", R) == Poly::constant(R, Rational(1)));
    CHECK(lg::parse_poly("0", R).is_zero());
    CHECK(lg::parse_poly("2/4", R) == Poly::constant(R, Rational(1, 2)));

    // str() emits the same grammar it parses.
    for (int i = 0; i < 30; ++i) {
        Poly p = lgtest::rand_poly(R, 4, 4);
        CHECK(lg::parse_poly(p.str(), R) == p);
    }

    // Errors carry position (1-based line/column).
    try {
        lg::parse_poly("x +\n* y", R);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 1);
    }
    CHECK_THROWS_AS(lg::parse_poly("x + z", R), ParseError);   // unknown variable
    CHECK_THROWS_AS(lg::parse_poly("2x", R), ParseError);      // implicit product rejected
    CHECK_THROWS_AS(lg::parse_poly("x^-1", R), ParseError);    // exponents are naturals
    CHECK_THROWS_AS(lg::parse_poly("1/0", R), ParseError);     // zero denominator
    CHECK_THROWS_AS(lg::parse_poly("(x", R), ParseError);
    CHECK_THROWS_AS(lg::parse_poly("", R), ParseError);
    CHECK_THROWS_AS(lg::parse_poly("x & y", R), ParseError);
}
