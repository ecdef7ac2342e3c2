#pragma once

#include <optional>
#include <string>
#include <utility>

#include "quadtor/rational.hpp"
#include "quadtor/tower.hpp"

namespace quadtor {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// over Q, with the standard invariants cached at construction.
struct Curve {
    Rat a1, a2, a3, a4, a6;
    Rat b2, b4, b6, b8, c4, c6, disc, j;

    Curve(const Rat& a1_, const Rat& a2_, const Rat& a3_, const Rat& a4_, const Rat& a6_)
        : a1(a1_), a2(a2_), a3(a3_), a4(a4_), a6(a6_) {
        b2 = a1 * a1 + 4 * a2;
        b4 = 2 * a4 + a1 * a3;
        b6 = a3 * a3 + 4 * a6;
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        c4 = b2 * b2 - 24 * b4;
        c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
        disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
        if (disc == 0) throw DomainError("singular model");
        j = c4 * c4 * c4 / disc;
        if (4 * b8 != b2 * b6 - b4 * b4 || 1728 * disc != c4 * c4 * c4 - c6 * c6)
            throw ConsistencyError("curve invariant relations failed");
    }

    bool is_b_form() const { return a1 == 0 && a3 == 0; }

    friend bool operator==(const Curve& A, const Curve& B) {
        return A.a1 == B.a1 && A.a2 == B.a2 && A.a3 == B.a3 && A.a4 == B.a4 && A.a6 == B.a6;
    }

    std::string describe() const {
        return "[" + a1.get_str() + "," + a2.get_str() + "," + a3.get_str() + "," +
               a4.get_str() + "," + a6.get_str() + "]";
    }
};

inline Curve new_curve(const Rat& a1, const Rat& a2, const Rat& a3, const Rat& a4, const Rat& a6) {
    return Curve(a1, a2, a3, a4, a6);
}

// Point of E over a tower field: infinity or affine with exact coordinates.
class Point {
  public:
    static Point infinity(const TowerPtr& F) { return Point(F); }
    static Point affine(TowerElement x, TowerElement y) {
        if (!same_field(x.field(), y.field())) throw DomainError("point coordinate field mismatch");
        Point p(x.field());
        p.inf_ = false;
        p.x_ = std::move(x);
        p.y_ = std::move(y);
        return p;
    }
    static Point rational(const Rat& x, const Rat& y, const TowerPtr& F = TowerField::rationals()) {
        return affine(TowerElement::from_rational(F, x), TowerElement::from_rational(F, y));
    }

    bool is_infinity() const { return inf_; }
    const TowerElement& x() const {
        if (inf_) throw DomainError("coordinate of point at infinity");
        return x_;
    }
    const TowerElement& y() const {
        if (inf_) throw DomainError("coordinate of point at infinity");
        return y_;
    }
    const TowerPtr& field() const { return F_; }
    bool is_rational_point() const { return inf_ || (x_.is_rational() && y_.is_rational()); }

    // embed into a larger tower containing this point's field's generators
    Point promote(const TowerPtr& big) const {
        if (inf_) return infinity(big);
        return affine(x_.promote(big), y_.promote(big));
    }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.x_ == b.x_ && a.y_ == b.y_;
    }

    std::string describe() const {
        if (inf_) return "O";
        return "(" + x_.describe() + ", " + y_.describe() + ")";
    }

  private:
    explicit Point(const TowerPtr& F) : F_(F), inf_(true) {}

    TowerPtr F_;
    bool inf_;
    TowerElement x_, y_;
};

inline bool point_on_curve(const Curve& E, const Point& P) {
    if (P.is_infinity()) return true;
    const TowerElement& x = P.x();
    const TowerElement& y = P.y();
    const TowerElement lhs = y * y + E.a1 * (x * y) + E.a3 * y;
    const TowerElement rhs = x * x * x + E.a2 * (x * x) + E.a4 * x + TowerElement::from_rational(P.field(), E.a6);
    return lhs == rhs;
}

inline Point point_neg(const Curve& E, const Point& P) {
    if (P.is_infinity()) return P;
    return Point::affine(P.x(), -P.y() - E.a1 * P.x() - E.a3);
}

inline Point point_add(const Curve& E, const Point& P, const Point& Q) {
    if (!same_field(P.field(), Q.field())) throw DomainError("point field mismatch");
    if (P.is_infinity()) return Q;
    if (Q.is_infinity()) return P;
    const TowerElement &x1 = P.x(), &y1 = P.y(), &x2 = Q.x(), &y2 = Q.y();
    TowerElement lambda = TowerElement::zero(P.field());
    if (x1 == x2) {
        if (Q == point_neg(E, P)) return Point::infinity(P.field());
        // tangent line; the denominator is nonzero since P is not 2-torsion here
        const TowerElement den = Rat(2) * y1 + E.a1 * x1 + E.a3;
        lambda = (Rat(3) * (x1 * x1) + Rat(2) * (E.a2 * x1) + E.a4 - E.a1 * y1) * den.inverse();
    } else {
        lambda = (y2 - y1) * (x2 - x1).inverse();
    }
    const TowerElement nu = y1 - lambda * x1;
    const TowerElement x3 = lambda * lambda + E.a1 * lambda - E.a2 - x1 - x2;
    const TowerElement y3 = -(lambda + E.a1) * x3 - nu - E.a3;
    return Point::affine(x3, y3);
}

inline Point scalar_mul(const Curve& E, long n, const Point& P) {
    if (n < 0) return scalar_mul(E, -n, point_neg(E, P));
    Point acc = Point::infinity(P.field());
    Point base = P;
    while (n > 0) {
        if (n & 1) acc = point_add(E, acc, base);
        base = point_add(E, base, base);
        n >>= 1;
    }
    return acc;
}

// least k <= bound with k*P = O, if any
inline std::optional<int> order_at_most(const Curve& E, const Point& P, int bound) {
    Point Q = P;
    for (int k = 1; k <= bound; ++k) {
        if (Q.is_infinity()) return k;
        Q = point_add(E, Q, P);
    }
    return std::nullopt;
}

// Standard Weierstrass substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct Isomorphism {
    Rat u{1}, r{0}, s{0}, t{0};

    bool is_identity() const { return u == 1 && r == 0 && s == 0 && t == 0; }
};

inline Isomorphism iso_compose(const Isomorphism& f, const Isomorphism& g) {
    // apply f : E -> E1, then g : E1 -> E2
    Isomorphism h;
    h.u = f.u * g.u;
    h.r = f.u * f.u * g.r + f.r;
    h.s = f.u * g.s + f.s;
    h.t = f.u * f.u * f.u * g.t + f.s * f.u * f.u * g.r + f.t;
    return h;
}

inline Isomorphism iso_inverse(const Isomorphism& f) {
    Isomorphism h;
    h.u = Rat(1) / f.u;
    h.r = -f.r / (f.u * f.u);
    h.s = -f.s / f.u;
    h.t = (f.r * f.s - f.t) / (f.u * f.u * f.u);
    return h;
}

inline Curve iso_apply(const Curve& E, const Isomorphism& f) {
    const Rat &u = f.u, &r = f.r, &s = f.s, &t = f.t;
    const Rat u2 = u * u, u3 = u2 * u;
    Curve out((E.a1 + 2 * s) / u,
              (E.a2 - s * E.a1 + 3 * r - s * s) / u2,
              (E.a3 + r * E.a1 + 2 * t) / u3,
              (E.a4 - s * E.a3 + 2 * r * E.a2 - (t + r * s) * E.a1 + 3 * r * r - 2 * s * t) / (u2 * u2),
              (E.a6 + r * E.a4 + r * r * E.a2 + r * r * r - t * E.a3 - t * t - r * t * E.a1) / (u3 * u3));
    if (out.disc * pow_int(num(u), 12) / pow_int(den(u), 12) != E.disc)
        throw ConsistencyError("isomorphism discriminant rule failed");
    return out;
}

// point transport along f : E -> E'
inline Point iso_map_point(const Isomorphism& f, const Point& P) {
    if (P.is_infinity()) return P;
    const Rat u2inv = Rat(1) / (f.u * f.u);
    const Rat u3inv = u2inv / f.u;
    const TowerElement xr = P.x() - f.r;
    return Point::affine(xr * u2inv, (P.y() - f.s * xr - f.t) * u3inv);
}

// completed square: a1' = a3' = 0, i.e. y^2 = x^3 + (b2/4)x^2 + (b4/2)x + b6/4
inline std::pair<Curve, Isomorphism> to_b_form(const Curve& E) {
    Isomorphism f;
    f.s = -E.a1 / 2;
    f.t = -E.a3 / 2;
    return {iso_apply(E, f), f};
}

// short form y^2 = x^3 + Ax + B with A = -c4/48, B = -c6/864
inline std::pair<Curve, Isomorphism> to_short_form(const Curve& E) {
    Isomorphism f;
    f.r = -E.b2 / 12;
    f.s = -E.a1 / 2;
    f.t = -(E.a3 + f.r * E.a1) / 2;
    Curve out = iso_apply(E, f);
    if (out.a4 != -E.c4 / 48 || out.a6 != -E.c6 / 864)
        throw ConsistencyError("short form coefficients unexpected");
    return {out, f};
}

// Quadratic twist by a squarefree D != 1, as the standard model
// y^2 = x^3 + A D^2 x + B D^3 built from the short form of E.
inline Curve quadratic_twist(const Curve& E, const Int& D) {
    if (D == 1) throw DomainError("twist by the trivial label");
    const SquarefreeLabel label(D); // validates squarefree and nonzero
    (void)label;
    const Curve Es = to_short_form(E).first;
    const Rat d(D);
    return Curve(Rat(0), Rat(0), Rat(0), Es.a4 * d * d, Es.a6 * d * d * d);
}

// Transport a rational point of the twist E_D into E over a tower F
// containing sqrt(D): (x, y) on y^2 = x^3 + AD^2x + BD^3 maps to
// (x/D, y sqrt(D)/D^2) on the short model of E.
inline Point twist_point_to_curve(const Curve& E, const Int& D, const Point& Pt, const TowerPtr& F) {
    if (Pt.is_infinity()) return Point::infinity(F);
    auto sq = TowerElement::sqrt_of_label(F, D);
    if (!sq) throw DomainError("tower does not contain sqrt of the twist label");
    auto [Es, f] = to_short_form(E);
    const Rat d(D);
    const TowerElement xs = Pt.x().promote(F) * (Rat(1) / d);
    const TowerElement ys = Pt.y().promote(F) * (Rat(1) / (d * d)) * (*sq);
    const Point onEs = Point::affine(xs, ys);
    if (!point_on_curve(Es, onEs)) throw ConsistencyError("twist point map left the curve");
    return iso_map_point(iso_inverse(f), onEs);
}

} // namespace quadtor
