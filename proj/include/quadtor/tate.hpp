#pragma once

#include "quadtor/curve.hpp"

namespace quadtor {

// Tate normal form T_{b,c} : y^2 + (1-c)xy - by = x^3 - bx^2 with the
// distinguished point (0,0) of exact order N >= 4, together with the
// coordinate change that produced it.
struct TateForm {
    Rat b, c;
    int N = 0;
    Isomorphism iso; // source curve -> T_{b,c}

    Curve curve() const { return Curve(1 - c, -b, -b, Rat(0), Rat(0)); }
};

// Translate P to (0,0), shear the tangent there horizontal (kills a4),
// then scale so a2 = a3 (forcing the T_{b,c} shape).
inline TateForm tate_normal_form(const Curve& E, const Point& P) {
    if (P.is_infinity() || !P.is_rational_point())
        throw DomainError("tate_normal_form requires a rational affine point");
    const auto ord = order_at_most(E, P, 12);
    if (!ord) throw DomainError("tate_normal_form: point is not torsion of order <= 12");
    if (*ord < 4) throw DomainError("tate_normal_form: point order below 4");

    Isomorphism move;
    move.r = P.x().rational_value();
    move.t = P.y().rational_value();
    Curve E1 = iso_apply(E, move);
    if (E1.a6 != 0) throw ConsistencyError("translation did not put P at the origin");
    if (E1.a3 == 0) throw ConsistencyError("origin point of order 2 after translation");

    Isomorphism shear;
    shear.s = E1.a4 / E1.a3;
    Curve E2 = iso_apply(E1, shear);
    if (E2.a4 != 0) throw ConsistencyError("shear did not kill a4");
    if (E2.a2 == 0) throw ConsistencyError("origin point of order 3 after shear");

    Isomorphism scale;
    scale.u = E2.a3 / E2.a2;
    Curve E3 = iso_apply(E2, scale);
    if (E3.a2 != E3.a3 || E3.a4 != 0 || E3.a6 != 0)
        throw ConsistencyError("scaling did not reach the Tate shape");

    TateForm tf;
    tf.b = -E3.a2;
    tf.c = 1 - E3.a1;
    tf.N = *ord;
    tf.iso = iso_compose(iso_compose(move, shear), scale);

    const Point origin = Point::rational(Rat(0), Rat(0));
    if (order_at_most(E3, origin, 12) != std::optional<int>(*ord))
        throw ConsistencyError("(0,0) does not have the expected order in Tate form");
    return tf;
}

// Parameter t of the one-parameter families: N=4 has c=0 and b=t; N=6 has
// c=t and b=t^2+t; N=8 has b=ct with c=(2t-1)(t-1)/t.
inline Rat tate_parameter(const TateForm& tf) {
    switch (tf.N) {
        case 4: {
            if (tf.c != 0) throw ConsistencyError("N=4 Tate form must have c=0");
            return tf.b;
        }
        case 6: {
            const Rat t = tf.c;
            if (tf.b != t * t + t) throw ConsistencyError("N=6 relation b=t^2+t failed");
            return t;
        }
        case 8: {
            if (tf.c == 0) throw ConsistencyError("N=8 Tate form must have c!=0");
            const Rat t = tf.b / tf.c;
            if (t == 0) throw ConsistencyError("N=8 parameter vanished");
            if (tf.c != (2 * t - 1) * (t - 1) / t || tf.b != (2 * t - 1) * (t - 1))
                throw ConsistencyError("N=8 parametrization relations failed");
            return t;
        }
        default:
            throw DomainError("tate_parameter defined for N in {4,6,8}");
    }
}

} // namespace quadtor
