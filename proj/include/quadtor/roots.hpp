#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "quadtor/poly.hpp"
#include "quadtor/rational.hpp"
#include "quadtor/tower.hpp"

namespace quadtor {

namespace detail {

using u64 = std::uint64_t;

// All moduli are < 2^31, so products fit in u64.
inline u64 mulmod(u64 a, u64 b, u64 p) { return (a * b) % p; }
inline u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}
inline u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

using ModPoly = std::vector<u64>; // ascending, trimmed

inline void mp_trim(ModPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline ModPoly mp_reduce(const std::vector<Int>& g, u64 p) {
    ModPoly f(g.size());
    const Int P(static_cast<unsigned long>(p));
    for (std::size_t i = 0; i < g.size(); ++i) {
        Int m = g[i] % P;
        if (m < 0) m += P;
        f[i] = m.get_ui();
    }
    mp_trim(f);
    return f;
}

inline ModPoly mp_derivative(const ModPoly& f, u64 p) {
    if (f.size() <= 1) return {};
    ModPoly d(f.size() - 1);
    for (std::size_t i = 1; i < f.size(); ++i) d[i - 1] = mulmod(f[i], i % p, p);
    mp_trim(d);
    return d;
}

inline ModPoly mp_rem(ModPoly a, const ModPoly& b, u64 p) {
    const u64 binv = invmod(b.back(), p);
    while (a.size() >= b.size()) {
        const u64 f = mulmod(a.back(), binv, p);
        const std::size_t k = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            const u64 t = mulmod(f, b[i], p);
            a[k + i] = (a[k + i] + p - t) % p;
        }
        mp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline int mp_gcd_degree(ModPoly a, ModPoly b, u64 p) {
    while (!b.empty()) {
        ModPoly r = mp_rem(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return static_cast<int>(a.size()) - 1;
}

inline u64 mp_eval(const ModPoly& f, u64 x, u64 p) {
    u64 acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = (mulmod(acc, x, p) + f[i]) % p;
    return acc;
}

// Quadratic Hensel lift of a simple root r mod p until the modulus exceeds
// the rational-reconstruction target, then Wang reconstruction against the
// height bounds |num| <= nb (constant term), |den| <= db (leading
// coefficient). The caller verifies the candidate exactly.
inline std::optional<Rat> lift_and_reconstruct(const std::vector<Int>& g, u64 p, u64 r,
                                               const Int& nb, const Int& db) {
    Int M(static_cast<unsigned long>(p));
    Int x(static_cast<unsigned long>(r));
    const Int target = 2 * nb * db + 1;
    while (M < target) {
        const Int M2 = M * M;
        Int fx(0), dfx(0);
        for (std::size_t i = g.size(); i-- > 0;) {
            dfx = (dfx * x + fx) % M2;
            fx = (fx * x + g[i]) % M2;
        }
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), dfx.get_mpz_t(), M2.get_mpz_t()) == 0)
            return std::nullopt; // cannot happen for a simple root
        x = (x - fx * inv) % M2;
        if (x < 0) x += M2;
        M = M2;
    }
    Int r0 = M, r1 = x, t0 = 0, t1 = 1;
    while (r1 > nb) {
        const Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Int t2 = t0 - q * t1;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0) return std::nullopt;
    Int at1 = abs(t1);
    if (at1 > db) return std::nullopt;
    return Rat(r1) / Rat(t1);
}

} // namespace detail

// Exactly the rational roots of p, found by a root scan modulo one suitable
// word-size prime, quadratic Hensel lifting, rational reconstruction, and
// exact verification. Soundness rests on the final exact evaluation;
// completeness on the root bounds and on the poly being squarefree mod the
// chosen prime (so distinct rational roots stay distinct residues).
inline std::set<Rat> rational_roots(const Poly& p) {
    if (p.is_zero()) throw DomainError("rational_roots: zero polynomial");
    std::set<Rat> out;
    if (p.degree() == 0) return out;

    auto [g, scale] = p.primitive_integer();
    (void)scale;
    // strip powers of x
    std::size_t z = 0;
    while (z < g.size() && g[z] == 0) ++z;
    if (z > 0) {
        out.insert(Rat(0));
        g.erase(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(z));
    }
    if (g.size() <= 1) return out;
    if (g.size() == 2) {
        out.insert(Rat(-g[0]) / Rat(g[1]));
        return out;
    }

    std::vector<Rat> as_rat(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) as_rat[i] = Rat(g[i]);
    const Poly gp{std::vector<Rat>(as_rat)};

    const Int nb = abs(g.front());
    const Int db = abs(g.back());

    // small polynomials get a small scan prime; ψ-sized ones a larger one
    Int prime(g.size() <= 9 ? 8191 : 65521);
    for (int attempt = 0;; ++attempt) {
        mpz_nextprime(prime.get_mpz_t(), prime.get_mpz_t());
        if (attempt >= 12) {
            // persistent gcd with the derivative: input has repeated factors;
            // reduce exactly and retry (rare, small degrees in practice)
            const Poly h = poly_gcd(gp, gp.derivative());
            if (h.degree() <= 0)
                throw ConsistencyError("rational_roots: no usable prime for squarefree input");
            for (const Rat& r : rational_roots(gp.exact_div(h))) out.insert(r);
            return out;
        }
        const detail::u64 pw = prime.get_ui();
        if (g.back() % prime == 0) continue;
        const detail::ModPoly fp = detail::mp_reduce(g, pw);
        if (detail::mp_gcd_degree(fp, detail::mp_derivative(fp, pw), pw) != 0) continue;

        for (detail::u64 x = 0; x < pw; ++x) {
            if (detail::mp_eval(fp, x, pw) != 0) continue;
            auto cand = detail::lift_and_reconstruct(g, pw, x, nb, db);
            if (cand && gp.eval(*cand) == 0) out.insert(*cand);
        }
        return out;
    }
}

// Factorization of a polynomial of degree 1..4 into monic irreducible
// factors over Q times a rational unit.
struct QuarticFactorization {
    Rat unit;
    std::vector<Poly> factors; // monic, irreducible, with multiplicity

    Poly reassemble() const {
        Poly p = Poly::constant(unit);
        for (const Poly& f : factors) p = p * f;
        return p;
    }
};

namespace detail {

// canonical order: by degree, then lexicographically on coefficients
inline bool poly_less(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i) {
        const std::size_t k = static_cast<std::size_t>(i);
        if (a.coeff(k) != b.coeff(k)) return a.coeff(k) < b.coeff(k);
    }
    return false;
}

// depressed form of a monic quartic w = x^4+ax^3+bx^2+cx+d: returns
// (p, q, r) with w(y - a/4) = y^4 + p y^2 + q y + r
inline std::tuple<Rat, Rat, Rat> depress_quartic(const Poly& w) {
    const Rat a = w.coeff(3);
    const Poly d = w.shifted(-a / 4);
    if (d.coeff(3) != 0 || d.coeff(4) != 1)
        throw ConsistencyError("quartic depression failed");
    return {d.coeff(2), d.coeff(1), d.coeff(0)};
}

inline Poly resolvent_cubic(const Rat& p, const Rat& q, const Rat& r) {
    return Poly({-q * q, p * p - 4 * r, 2 * p, Rat(1)});
}

} // namespace detail

inline QuarticFactorization factor_quartic_over_Q(const Poly& input) {
    if (input.degree() < 1 || input.degree() > 4)
        throw DomainError("factor_quartic_over_Q: degree must be 1..4");
    QuarticFactorization out;
    out.unit = input.lead();
    Poly w = input.monic();

    for (const Rat& r : rational_roots(w)) {
        const Poly lin({-r, Rat(1)});
        while (true) {
            auto [q, rem] = w.divmod(lin);
            if (!rem.is_zero()) break;
            out.factors.push_back(lin);
            w = q;
            if (w.degree() == 0) break;
        }
    }

    if (w.degree() == 2 || w.degree() == 3) {
        out.factors.push_back(w); // no rational roots left: irreducible
    } else if (w.degree() == 4) {
        auto [p, q, r] = detail::depress_quartic(w);
        const Rat shift = w.coeff(3) / 4; // x = y - shift
        std::optional<std::pair<Poly, Poly>> split;
        if (q == 0) {
            // biquadratic: y^4+py^2+r = (y^2+u1)(y^2+u2) iff p^2-4r is a square
            if (auto s = rat_sqrt(p * p - 4 * r)) {
                split = {Poly({(p - *s) / 2, Rat(0), Rat(1)}),
                         Poly({(p + *s) / 2, Rat(0), Rat(1)})};
            }
        }
        if (!split) {
            for (const Rat& z : rational_roots(detail::resolvent_cubic(p, q, r))) {
                if (z == 0) continue;
                auto alpha = rat_sqrt(z);
                if (!alpha) continue;
                const Rat beta = (p + z - q / *alpha) / 2;
                const Rat gamma = (p + z + q / *alpha) / 2;
                const Poly f1({beta, *alpha, Rat(1)});
                const Poly f2({gamma, -*alpha, Rat(1)});
                if (f1 * f2 == Poly({r, q, p, Rat(0), Rat(1)})) {
                    split = {f1, f2};
                    break;
                }
            }
        }
        if (split) {
            out.factors.push_back(split->first.shifted(shift));
            out.factors.push_back(split->second.shifted(shift));
        } else {
            out.factors.push_back(w);
        }
    }

    std::sort(out.factors.begin(), out.factors.end(), detail::poly_less);
    if (!(out.reassemble() == input))
        throw ConsistencyError("factor_quartic_over_Q: product check failed");
    return out;
}

// All roots of p (degree 1..4, rational coefficients) lying in the
// multiquadratic tower F. Linear factors give rational roots; quadratics
// contribute via a discriminant square test; an irreducible quartic can
// only split over a quadratic subfield, which is detected through rational
// resolvent roots z with sqrt(z) in F (the biquadratic case goes through
// the inner quadratic directly).
inline std::vector<TowerElement> roots_in_tower(const Poly& input, const TowerPtr& F) {
    if (input.degree() < 1 || input.degree() > 4)
        throw DomainError("roots_in_tower: degree must be 1..4");
    std::vector<TowerElement> out;
    auto push = [&](const TowerElement& r) {
        for (const TowerElement& e : out)
            if (e == r) return;
        if (!input.eval(r).is_zero())
            throw ConsistencyError("roots_in_tower: candidate fails evaluation");
        out.push_back(r);
    };

    const QuarticFactorization fac = factor_quartic_over_Q(input);
    for (const Poly& f : fac.factors) {
        if (f.degree() == 1) {
            push(TowerElement::from_rational(F, -f.coeff(0)));
        } else if (f.degree() == 2) {
            const Rat b = f.coeff(1), c = f.coeff(0);
            if (auto w = is_square_in(F, b * b - 4 * c)) {
                const TowerElement mb = TowerElement::from_rational(F, -b);
                push((mb + *w) * Rat(1, 2));
                push((mb - *w) * Rat(1, 2));
            }
        } else if (f.degree() == 3) {
            // an irreducible cubic has no root in a 2-power-degree field
            continue;
        } else {
            auto [p, q, r] = detail::depress_quartic(f);
            const Rat shift = f.coeff(3) / 4; // roots in x are y - shift
            if (q == 0) {
                if (auto w = is_square_in(F, p * p - 4 * r)) {
                    const TowerElement mp = TowerElement::from_rational(F, -p);
                    for (int sign : {+1, -1}) {
                        const TowerElement u = (mp + Rat(sign) * (*w)) * Rat(1, 2);
                        if (auto v = is_square_with_witness(u)) {
                            push(*v - shift);
                            push(-*v - shift);
                        }
                    }
                }
            } else {
                for (const Rat& z : rational_roots(detail::resolvent_cubic(p, q, r))) {
                    if (z == 0) continue;
                    auto alpha = is_square_in(F, z);
                    if (!alpha) continue;
                    const TowerElement ainv = alpha->inverse();
                    const TowerElement pz = TowerElement::from_rational(F, p + z);
                    const TowerElement beta = (pz - Rat(q) * ainv) * Rat(1, 2);
                    const TowerElement gamma = (pz + Rat(q) * ainv) * Rat(1, 2);
                    // y^2 + alpha y + beta and y^2 - alpha y + gamma over F
                    for (int sign : {+1, -1}) {
                        const TowerElement a2 = Rat(sign) * (*alpha);
                        const TowerElement cc = (sign > 0) ? beta : gamma;
                        if (auto w = is_square_with_witness(a2 * a2 - Rat(4) * cc)) {
                            push((-a2 + *w) * Rat(1, 2) - shift);
                            push((-a2 - *w) * Rat(1, 2) - shift);
                        }
                    }
                }
            }
        }
    }
    return out;
}

} // namespace quadtor
