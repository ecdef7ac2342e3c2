#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "quadtor/curve.hpp"
#include "quadtor/divpoly.hpp"
#include "quadtor/groups.hpp"
#include "quadtor/roots.hpp"
#include "quadtor/tables.hpp"

namespace quadtor {

// Torsion subgroup C_n x C_m with explicit generators: none for the trivial
// group, one of order m for cyclic groups, two of orders n and m otherwise.
struct TorsionData {
    GroupStructure structure;
    std::vector<Point> generators;
    TowerPtr field;
};

inline Point promote_point(const Point& P, const TowerPtr& F) {
    if (P.is_infinity()) return Point::infinity(F);
    return Point::affine(P.x().promote(F), P.y().promote(F));
}

namespace detail {

inline void push_unique(std::vector<Point>& v, const Point& p) {
    if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(p);
}

} // namespace detail

// All Q over the field of P with 2Q = P.  E must be a b-form model and P an
// affine point on it.  For a point with rational coordinates the halves come
// from the halving quartic; otherwise they are recovered through a 2-isogeny
// when E has a 2-torsion point over the field, and by cyclic arithmetic when
// it does not (in which case P must be odd torsion).
inline std::vector<Point> halve_point(const Curve& E, const Point& P) {
    if (!E.is_b_form()) throw DomainError("halve_point requires a b-form model");
    if (P.is_infinity()) throw DomainError("halve_point requires an affine point");
    const TowerPtr F = P.field();
    std::vector<Point> halves;

    if (P.is_rational_point()) {
        // shift P to the origin: y^2 = x^3 + A x^2 + B x + y0^2
        const Rat x0 = P.x().rational_value(), y0 = P.y().rational_value();
        const Rat A = E.a2 + 3 * x0;
        const Rat B = E.a4 + 2 * E.a2 * x0 + 3 * x0 * x0;
        const Poly q({A * A - 4 * B, -8 * y0, -2 * A, Rat(0), Rat(1)});
        for (const auto& alpha : roots_in_tower(q, F)) {
            const TowerElement qx = (alpha * alpha - A) * Rat(1, 2);
            const Point Q = Point::affine(qx + x0, alpha * qx - y0);
            if (!point_on_curve(E, Q) || !(scalar_mul(E, 2, Q) == P))
                throw ConsistencyError("halving quartic produced a bad point");
            detail::push_unique(halves, Q);
        }
        return halves;
    }

    const Poly cubic({E.a6, E.a4, E.a2, Rat(1)});
    const auto two_torsion_x = roots_in_tower(cubic, F);
    if (!two_torsion_x.empty()) {
        // shift a 2-torsion point to the origin and chase P through the
        // associated 2-isogeny: y^2 = x (x^2 + a x + b)
        const TowerElement xT = two_torsion_x.front();
        const TowerElement a = xT * Rat(3) + E.a2;
        const TowerElement b = xT * xT * Rat(3) + xT * (2 * E.a2) + E.a4;
        const TowerElement xP = P.x() - xT;
        if (!is_square_with_witness(xP)) return halves;
        const TowerElement tr = a * Rat(2) + xP * Rat(4);
        const TowerElement nrm = a * a - b * Rat(4);
        const auto wd = is_square_with_witness(tr * tr - nrm * Rat(4));
        if (!wd) return halves;
        for (int s1 : {1, -1}) {
            const TowerElement X = (tr + *wd * Rat(s1)) * Rat(1, 2);
            if (X.is_zero()) continue;
            const auto w2 = is_square_with_witness((a - X) * (a - X) - b * Rat(4));
            if (!w2) continue;
            for (int s2 : {1, -1}) {
                const TowerElement xq = (X - a + *w2 * Rat(s2)) * Rat(1, 2);
                const auto w3 = is_square_with_witness(xq * (xq * xq + a * xq + b));
                if (!w3) continue;
                for (int s3 : {1, -1}) {
                    const Point Q = Point::affine(xq + xT, *w3 * Rat(s3));
                    if (point_on_curve(E, Q) && scalar_mul(E, 2, Q) == P)
                        detail::push_unique(halves, Q);
                }
            }
        }
        return halves;
    }

    // no 2-torsion over F: only odd-order points are halvable, and uniquely so
    const auto ord = order_at_most(E, P, 16);
    if (!ord) throw DomainError("halving a non-torsion point needs 2-torsion over the field");
    if (*ord % 2 == 0) throw ConsistencyError("even order without 2-torsion");
    halves.push_back(scalar_mul(E, (*ord + 1) / 2, P));
    return halves;
}

// Squarefree labels of the quadratic fields cut out by the halving quartic of
// a rational affine point: one label per irreducible quadratic factor, from
// its discriminant.  Rational roots and irreducible quartic factors add none.
inline std::vector<Int> halving_fields(const Curve& E, const Point& P) {
    if (P.is_infinity() || !P.is_rational_point())
        throw DomainError("halving_fields requires an affine rational point");
    const auto [Eb, f] = to_b_form(E);
    const Point Pb =
        iso_map_point(f, Point::rational(P.x().rational_value(), P.y().rational_value()));
    const Rat x0 = Pb.x().rational_value(), y0 = Pb.y().rational_value();
    const Rat A = Eb.a2 + 3 * x0;
    const Rat B = Eb.a4 + 2 * Eb.a2 * x0 + 3 * x0 * x0;
    const Poly q({A * A - 4 * B, -8 * y0, -2 * A, Rat(0), Rat(1)});
    std::vector<Int> out;
    for (const auto& fac : factor_quartic_over_Q(q).factors) {
        if (fac.degree() != 2) continue;
        const Rat delta = fac.coeff(1) * fac.coeff(1) - 4 * fac.coeff(0);
        const Int d = squarefree_part(delta).first;
        if (d == 1) throw ConsistencyError("irreducible quadratic with square discriminant");
        if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
    return out;
}

namespace detail {

struct TwoSylow {
    std::vector<Point> elements; // every point of 2-power order over F
    int a = 0, b = 0;            // subgroup shape C_{2^a} x C_{2^b}, a <= b
    std::vector<Point> gens;
};

// 2-power torsion of a b-form model over F: seed with the 2-torsion (roots of
// the 2-division cubic in F) and close under halving, level by level, up to
// point order 16.
inline TwoSylow two_sylow(const Curve& E, const TowerPtr& F) {
    TwoSylow S;
    std::vector<Point>& elems = S.elements;
    elems.push_back(Point::infinity(F));
    const Poly cubic({E.a6, E.a4, E.a2, Rat(1)});
    std::vector<Point> frontier;
    for (const auto& x : roots_in_tower(cubic, F)) {
        const Point T = Point::affine(x, TowerElement::zero(F));
        elems.push_back(T);
        frontier.push_back(T);
    }
    std::vector<std::size_t> sizes{1, elems.size()};
    while (!frontier.empty() && sizes.size() <= 4) {
        std::vector<Point> next;
        for (const auto& p : frontier)
            for (const auto& q : halve_point(E, p))
                if (std::find(elems.begin(), elems.end(), q) == elems.end()) {
                    elems.push_back(q);
                    next.push_back(q);
                }
        if (next.empty()) break;
        sizes.push_back(elems.size());
        frontier = std::move(next);
    }
    for (std::size_t j = 1; j < sizes.size(); ++j) {
        const std::size_t ratio = sizes[j] / sizes[j - 1];
        if (sizes[j] % sizes[j - 1] != 0 || (ratio != 1 && ratio != 2 && ratio != 4))
            throw ConsistencyError("halving levels are not nested 2-groups");
        if (ratio == 4) ++S.a;
        if (ratio >= 2) ++S.b;
    }
    if (S.b == 0) return S;
    const int n2 = 1 << S.a, m2 = 1 << S.b;
    auto order_of = [&](const Point& p) {
        const auto o = order_at_most(E, p, 16);
        if (!o) throw ConsistencyError("unbounded order in 2-power closure");
        return *o;
    };
    const Point* big = nullptr;
    for (const auto& p : elems)
        if (!big && order_of(p) == m2) big = &p;
    if (!big) throw ConsistencyError("missing maximal 2-power order");
    if (S.a > 0) {
        const Point halfBig = scalar_mul(E, m2 / 2, *big);
        const Point* small = nullptr;
        for (const auto& p : elems) {
            if (order_of(p) != n2) continue;
            if (scalar_mul(E, n2 / 2, p) == halfBig) continue; // dependent
            small = &p;
            break;
        }
        if (!small) throw ConsistencyError("no independent generator in 2-power closure");
        S.gens = {*small, *big};
    } else {
        S.gens = {*big};
    }
    return S;
}

struct OddPiece {
    int p, e;  // cyclic piece of order p^e
    Point gen;
};

// Odd torsion of a b-form model over Q, one cyclic piece per prime in
// {3, 5, 7}, with a 9-cycle upgrade when present.
inline std::vector<OddPiece> odd_parts_over_Q(const Curve& E) {
    std::vector<OddPiece> out;
    const Poly rhs({E.a6, E.a4, E.a2, Rat(1)});
    auto point_of_order = [&](int target, const Poly& psi) -> std::optional<Point> {
        for (const auto& x0 : rational_roots(psi)) {
            const Rat fx = rhs.eval(x0);
            const auto w = rat_sqrt(fx);
            if (!w) continue;
            const Point P = Point::rational(x0, *w);
            const auto o = order_at_most(E, P, target);
            if (o && *o == target) return P;
        }
        return std::nullopt;
    };
    for (int p : {3, 5, 7}) {
        auto found = point_of_order(p, division_polynomial(E, p));
        if (!found) continue;
        OddPiece piece{p, 1, *found};
        if (p == 3) {
            if (auto nine = point_of_order(9, division_polynomial(E, 9))) {
                piece.e = 2;
                piece.gen = *nine;
            }
        }
        out.push_back(piece);
    }
    return out;
}

// Stitch the 2-power part and the per-prime odd pieces into C_n x C_m with a
// generator pair: at every prime the larger piece feeds m, a second piece
// feeds n.
inline std::pair<GroupStructure, std::vector<Point>> assemble(
    const Curve& E, const TowerPtr& F, const TwoSylow& syl,
    std::map<int, std::vector<OddPiece>> odd) {
    long n = 1, m = 1;
    Point gn = Point::infinity(F), gm = Point::infinity(F);
    if (syl.b > 0) {
        m = 1L << syl.b;
        gm = syl.gens.back();
        if (syl.a > 0) {
            n = 1L << syl.a;
            gn = syl.gens.front();
        }
    }
    for (auto& [p, pieces] : odd) {
        if (pieces.empty()) continue;
        if (pieces.size() > 2) throw ConsistencyError("odd torsion of rank above two");
        std::stable_sort(pieces.begin(), pieces.end(),
                         [](const OddPiece& A, const OddPiece& B) { return A.e > B.e; });
        long q = 1;
        for (int i = 0; i < pieces[0].e; ++i) q *= p;
        m *= q;
        gm = point_add(E, gm, pieces[0].gen);
        if (pieces.size() == 2) {
            q = 1;
            for (int i = 0; i < pieces[1].e; ++i) q *= p;
            n *= q;
            gn = point_add(E, gn, pieces[1].gen);
        }
    }
    const GroupStructure H(static_cast<int>(n), static_cast<int>(m));
    std::vector<Point> gens;
    if (n > 1)
        gens = {gn, gm};
    else if (m > 1)
        gens = {gm};
    return {H, gens};
}

} // namespace detail

// Exhaustively check a TorsionData claim against the curve: generators on the
// curve with the stated exact orders, and all n*m combinations distinct.
inline void verify_group(const Curve& E, const TorsionData& td) {
    const int n = td.structure.n, m = td.structure.m;
    const std::size_t want = n > 1 ? 2 : (m > 1 ? 1 : 0);
    if (td.generators.size() != want) throw ConsistencyError("generator count mismatch");
    for (const auto& g : td.generators) {
        if (g.is_infinity() || !point_on_curve(E, g))
            throw ConsistencyError("generator not an affine point of the curve");
    }
    if (m > 1) {
        const auto o = order_at_most(E, td.generators.back(), m);
        if (!o || *o != m) throw ConsistencyError("bad order for the large generator");
    }
    if (n > 1) {
        const auto o = order_at_most(E, td.generators.front(), n);
        if (!o || *o != n) throw ConsistencyError("bad order for the small generator");
    }
    std::vector<Point> all;
    Point Pi = Point::infinity(td.field);
    for (int i = 0; i < n; ++i) {
        Point Pj = Pi;
        for (int j = 0; j < m; ++j) {
            if (std::find(all.begin(), all.end(), Pj) != all.end())
                throw ConsistencyError("generators are dependent");
            all.push_back(Pj);
            if (j + 1 < m) Pj = point_add(E, Pj, td.generators.back());
        }
        if (i + 1 < n) Pi = point_add(E, Pi, td.generators.front());
    }
}

// Torsion subgroup of E over Q.
inline TorsionData torsion_over_Q(const Curve& E) {
    const TowerPtr F = TowerField::rationals();
    const auto [Eb, f] = to_b_form(E);
    const auto syl = detail::two_sylow(Eb, F);
    std::map<int, std::vector<detail::OddPiece>> odd;
    for (const auto& pc : detail::odd_parts_over_Q(Eb)) odd[pc.p].push_back(pc);
    auto [H, gens] = detail::assemble(Eb, F, syl, std::move(odd));
    const Isomorphism inv = iso_inverse(f);
    std::vector<Point> out;
    for (const auto& g : gens) out.push_back(iso_map_point(inv, g));
    TorsionData td{H, std::move(out), F};
    verify_group(E, td);
    if (!tables().over_Q.count(H))
        throw ConsistencyError("rational torsion outside the classification");
    return td;
}

// Torsion subgroup of E over the quadratic field with squarefree label D.
// The odd part combines the odd torsion of E and of its D-twist over Q; the
// 2-power part is closed under halving directly over the field.
inline TorsionData torsion_over_quadratic(const Curve& E, const Int& D) {
    if (D == 1) throw DomainError("D = 1 does not define a quadratic field");
    const TowerPtr F = TowerField::make({D});
    const GroupStructure G = torsion_over_Q(E).structure;
    const auto [Eb, f] = to_b_form(E);
    const auto syl = detail::two_sylow(Eb, F);
    std::map<int, std::vector<detail::OddPiece>> odd;
    for (const auto& pc : detail::odd_parts_over_Q(Eb))
        odd[pc.p].push_back({pc.p, pc.e, promote_point(pc.gen, F)});
    const Curve Et = quadratic_twist(E, D);
    for (const auto& pc : detail::odd_parts_over_Q(Et)) {
        const Point onE = twist_point_to_curve(E, D, pc.gen, F);
        odd[pc.p].push_back({pc.p, pc.e, iso_map_point(f, onE)});
    }
    auto [H, gens] = detail::assemble(Eb, F, syl, std::move(odd));
    const Isomorphism inv = iso_inverse(f);
    std::vector<Point> out;
    for (const auto& g : gens) out.push_back(iso_map_point(inv, g));
    TorsionData td{H, std::move(out), F};
    verify_group(E, td);
    if (!tables().base_change_quadratic.count(H))
        throw ConsistencyError("quadratic torsion outside the classification");
    const auto it = tables().growth_targets.find(G);
    if (it == tables().growth_targets.end() || !it->second.count(H))
        throw ConsistencyError("quadratic torsion not reachable from the rational group");
    return td;
}

// Torsion subgroup of E over a multiquadratic tower: odd pieces come from the
// twists attached to every quadratic subfield, the 2-power part from halving
// closure over the full tower.
inline TorsionData torsion_over_tower(const Curve& E, const TowerPtr& F) {
    if (F->k() == 0) return torsion_over_Q(E);
    const auto [Eb, f] = to_b_form(E);
    const auto syl = detail::two_sylow(Eb, F);
    std::map<int, std::vector<detail::OddPiece>> odd;
    for (const auto& pc : detail::odd_parts_over_Q(Eb))
        odd[pc.p].push_back({pc.p, pc.e, promote_point(pc.gen, F)});
    for (const auto& [mask, d] : F->quad_subfields()) {
        const Curve Et = quadratic_twist(E, d);
        for (const auto& pc : detail::odd_parts_over_Q(Et)) {
            const Point onE = twist_point_to_curve(E, d, pc.gen, F);
            odd[pc.p].push_back({pc.p, pc.e, iso_map_point(f, onE)});
        }
    }
    auto [H, gens] = detail::assemble(Eb, F, syl, std::move(odd));
    const Isomorphism inv = iso_inverse(f);
    std::vector<Point> out;
    for (const auto& g : gens) out.push_back(iso_map_point(inv, g));
    TorsionData td{H, std::move(out), F};
    verify_group(E, td);
    if (!tables().over_two_tower.count(H))
        throw ConsistencyError("tower torsion outside the classification");
    return td;
}

} // namespace quadtor
