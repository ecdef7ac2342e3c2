#include <catch2/catch_amalgamated.hpp>

#include <map>

#include "quadtor/curve.hpp"
#include "quadtor/tate.hpp"
#include "quadtor/divpoly.hpp"
#include "quadtor/roots.hpp"

using namespace quadtor;

namespace {
Curve make_curve(long a1, long a2, long a3, long a4, long a6) {
    return Curve(Rat(a1), Rat(a2), Rat(a3), Rat(a4), Rat(a6));
}
} // namespace

TEST_CASE("curve invariants") {
    const Curve E = make_curve(0, 0, 0, 0, 1);
    CHECK(E.disc == -432);
    CHECK(E.j == 0);
    CHECK(E.b2 == 0);
    CHECK(E.b6 == 4);

    const Curve F = make_curve(0, 0, 0, -1, 0);
    CHECK(F.disc == 64);
    CHECK(F.j == 1728);

    CHECK_THROWS_AS(make_curve(0, 0, 0, 0, 0), DomainError);
    CHECK_THROWS_AS(make_curve(0, 0, 0, -3, 2), DomainError); // (x-1)^2(x+2)
}

TEST_CASE("group law on y^2 = x^3 + 1") {
    const Curve E = make_curve(0, 0, 0, 0, 1);
    const Point P = Point::rational(Rat(2), Rat(3));
    REQUIRE(point_on_curve(E, P));

    const Point P2 = point_add(E, P, P);
    CHECK(P2 == Point::rational(Rat(0), Rat(1)));
    const Point P3 = point_add(E, P2, P);
    CHECK(P3 == Point::rational(Rat(-1), Rat(0)));
    CHECK(point_add(E, P3, P3).is_infinity());
    CHECK(point_add(E, P, point_neg(E, P)).is_infinity());
    CHECK(scalar_mul(E, 6, P).is_infinity());
    CHECK(scalar_mul(E, 5, P) == point_neg(E, P));

    const auto ord = order_at_most(E, P, 16);
    REQUIRE(ord.has_value());
    CHECK(*ord == 6);
}

TEST_CASE("points of infinite order are not assigned an order") {
    const Curve E = make_curve(0, 0, 0, 0, 17);
    const Point P = Point::rational(Rat(2), Rat(5));
    REQUIRE(point_on_curve(E, P));
    CHECK_FALSE(order_at_most(E, P, 16).has_value());
}

TEST_CASE("group law over a quadratic field") {
    const Curve E = make_curve(0, 0, 0, 0, 1);
    const auto F = TowerField::make({Int(-3)});
    const auto s = TowerElement::sqrt_of_label(F, Int(-3)).value();
    // (1 + sqrt(-3))/2 is a 2-torsion x-coordinate: x^3 + 1 factors there
    const auto half = Rat(1, 2) * (TowerElement::one(F) + s);
    const Point T = Point::affine(half, TowerElement::zero(F));
    REQUIRE(point_on_curve(E, T));
    CHECK(point_add(E, T, T).is_infinity());

    const Point P = Point::rational(Rat(2), Rat(3), F);
    const Point S = point_add(E, T, P);
    CHECK(point_on_curve(E, S));
    CHECK(scalar_mul(E, 6, S).is_infinity());
    const auto ord = order_at_most(E, S, 16);
    REQUIRE(ord.has_value());
    CHECK(*ord == 6);
}

TEST_CASE("model changes round trip") {
    const Curve E = make_curve(1, 1, 1, 0, 0);
    const Point P = Point::rational(Rat(0), Rat(0));
    REQUIRE(point_on_curve(E, P));

    auto [Eb, f] = to_b_form(E);
    CHECK(Eb.a1 == 0);
    CHECK(Eb.a3 == 0);
    CHECK(Eb.j == E.j);
    const Point Q = iso_map_point(f, P);
    CHECK(point_on_curve(Eb, Q));
    CHECK(iso_map_point(iso_inverse(f), Q) == P);

    auto [Es, g] = to_short_form(E);
    CHECK(Es.a1 == 0);
    CHECK(Es.a2 == 0);
    CHECK(Es.a3 == 0);
    CHECK(Es.j == E.j);
    const Point R = iso_map_point(g, P);
    CHECK(point_on_curve(Es, R));
    CHECK(iso_map_point(iso_inverse(g), R) == P);

    const Isomorphism h = iso_compose(iso_inverse(f), f);
    CHECK(iso_map_point(h, P) == P);
}

TEST_CASE("quadratic twists") {
    const Curve E = make_curve(0, 0, 0, 0, 1);
    const Curve Et = quadratic_twist(E, Int(-3));
    CHECK(Et.a1 == 0);
    CHECK(Et.a2 == 0);
    CHECK(Et.a3 == 0);
    CHECK(Et.a4 == 0);
    CHECK(Et.a6 == -27);
    CHECK(Et.j == E.j);

    CHECK_THROWS_AS(quadratic_twist(E, Int(1)), DomainError);
    CHECK_THROWS_AS(quadratic_twist(E, Int(12)), DomainError);

    // (3, 0) on the twist comes back to (-1, 0) on E
    const auto F = TowerField::make({Int(-3)});
    const Point Pt = Point::rational(Rat(3), Rat(0));
    REQUIRE(point_on_curve(Et, Pt));
    const Point back = twist_point_to_curve(E, Int(-3), Pt, F);
    CHECK(point_on_curve(E, back));
    CHECK(back == Point::rational(Rat(-1), Rat(0), F));

    // a point with nonzero y picks up the sqrt(D) factor in transport
    const Curve E2 = make_curve(0, 0, 0, 0, 16);
    const Curve E2t = quadratic_twist(E2, Int(-3)); // y^2 = x^3 - 432
    const Point Qt = Point::rational(Rat(12), Rat(36));
    REQUIRE(point_on_curve(E2t, Qt));
    const Point qb = twist_point_to_curve(E2, Int(-3), Qt, F);
    CHECK(point_on_curve(E2, qb));
    CHECK_FALSE(qb.is_rational_point());

    CHECK_THROWS_AS(twist_point_to_curve(E, Int(-3), Pt, TowerField::rationals()), DomainError);
}

TEST_CASE("tate normal form") {
    const Curve E = make_curve(0, 0, 0, 0, 1);
    const Point P = Point::rational(Rat(2), Rat(3)); // order 6
    const TateForm tf = tate_normal_form(E, P);
    CHECK(tf.N == 6);
    CHECK(tf.b == Rat(-2, 9));
    CHECK(tf.c == Rat(-1, 3));
    CHECK(tf.curve().j == E.j);
    CHECK(iso_map_point(tf.iso, P) ==
          Point::rational(Rat(0), Rat(0), iso_map_point(tf.iso, P).field()));
    CHECK(tate_parameter(tf) == Rat(-1, 3));

    // order-2 and order-3 points are rejected
    CHECK_THROWS_AS(tate_normal_form(E, Point::rational(Rat(-1), Rat(0))), DomainError);
    CHECK_THROWS_AS(tate_normal_form(E, Point::rational(Rat(0), Rat(1))), DomainError);
}

TEST_CASE("division polynomials") {
    const Curve E = make_curve(0, 0, 0, 0, 1);
    CHECK(two_division_cubic(E) == Poly{Rat(4), Rat(0), Rat(0), Rat(4)});
    CHECK(division_polynomial(E, 1) == Poly::one());
    CHECK(division_polynomial(E, 2) == Poly::one());
    CHECK(division_polynomial(E, 3) == Poly{Rat(0), Rat(12), Rat(0), Rat(0), Rat(3)});

    // x-coordinates with rational values: order 3 at x=0, order 6 at x=2
    const auto r3 = rational_roots(division_polynomial(E, 3));
    REQUIRE(r3.size() == 1);
    CHECK(r3.count(Rat(0)) == 1);
    const auto r6 = rational_roots(division_polynomial(E, 6));
    CHECK(r6.count(Rat(0)) == 1);
    CHECK(r6.count(Rat(2)) == 1);
    CHECK(r6.count(Rat(-1)) == 0); // 2-torsion factor is divided out

    CHECK(division_polynomial(E, 5).degree() == 12);
    CHECK(division_polynomial(E, 6).degree() == 16);
    CHECK(division_polynomial(E, 7).degree() == 24);
    CHECK(division_polynomial(E, 9).degree() == 40);
    CHECK(division_polynomial(E, 16).degree() == 126);
    CHECK_THROWS_AS(division_polynomial(E, 17), DomainError);
    CHECK_THROWS_AS(division_polynomial(E, 0), DomainError);
}

TEST_CASE("division polynomial roots match scalar multiplication") {
    const Curve E = make_curve(1, 1, 1, -10, -10);
    // scan small x for rational points and tabulate their orders
    std::map<int, Point> by_order;
    for (long xi = -20; xi <= 20; ++xi) {
        const Rat x0(xi);
        // y^2 + (a1 x + a3) y - (x^3 + a2 x^2 + a4 x + a6) = 0
        const Rat lin = E.a1 * x0 + E.a3;
        const Rat rhs = ((x0 + E.a2) * x0 + E.a4) * x0 + E.a6;
        const auto disc = rat_sqrt(lin * lin + 4 * rhs);
        if (!disc) continue;
        const Point P = Point::rational(x0, (*disc - lin) / 2);
        REQUIRE(point_on_curve(E, P));
        if (auto ord = order_at_most(E, P, 16)) by_order.emplace(*ord, P);
    }
    REQUIRE(by_order.count(4) == 1);
    REQUIRE(by_order.count(2) == 1);
    const Point gen = by_order.at(4);
    // its x-coordinate is a root of the fourth division polynomial and of
    // no odd one
    CHECK(rational_roots(division_polynomial(E, 4)).count(gen.x().rational_value()) == 1);
    CHECK(rational_roots(division_polynomial(E, 3)).count(gen.x().rational_value()) == 0);
    // the doubled generator is 2-torsion, which lives in the cubic factor
    const Point twice = point_add(E, gen, gen);
    CHECK(order_at_most(E, twice, 4).value() == 2);
    CHECK(rational_roots(two_division_cubic(E)).count(twice.x().rational_value()) == 1);
    CHECK(rational_roots(division_polynomial(E, 4)).count(twice.x().rational_value()) == 0);
}
