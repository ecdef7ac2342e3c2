#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "quadtor/errors.hpp"

namespace quadtor {

// All exact arithmetic is backed by GMP. mpq_class maintains the canonical
// form we rely on everywhere: gcd(num, den) = 1, den > 0, zero = 0/1.
using Int = mpz_class;
using Rat = mpq_class;

inline Int num(const Rat& r) { return r.get_num(); }
inline Int den(const Rat& r) { return r.get_den(); }

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Exact square root of a rational if it exists: num and den must both be
// perfect squares (they are coprime, so no cross cancellation is possible).
inline std::optional<Rat> rat_sqrt(const Rat& r) {
    if (r < 0) return std::nullopt;
    const Int n = num(r), d = den(r);
    if (!is_perfect_square(n) || !is_perfect_square(d)) return std::nullopt;
    return Rat(isqrt(n), isqrt(d));
}

inline bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace detail {

// Pollard-Brent rho; n must be odd, composite, > 1 and not a perfect power
// of interest. Returns a non-trivial factor.
inline Int pollard_rho(const Int& n) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), 2)) return Int(2);
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(0xC0FFEEu);
    while (true) {
        Int y = rng.get_z_range(n - 3) + 2;
        Int c = rng.get_z_range(n - 1) + 1;
        Int m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = std::min(m, Int(r - k));
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            do {
                ys = (ys * ys + c) % n;
                Int d = abs(x - ys);
                mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_into(Int n, std::map<Int, int>& out) {
    if (n <= 1) return;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            out[Int(p)] += 1;
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    // wheel over 17, 19, ... up to 10^5
    for (unsigned long p = 17; p <= 100000 && n > 1; p += 2) {
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            do {
                out[Int(p)] += 1;
                mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            } while (mpz_divisible_ui_p(n.get_mpz_t(), p));
        }
    }
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out[n] += 1;
        return;
    }
    if (is_perfect_square(n)) {
        std::map<Int, int> half;
        factor_into(isqrt(n), half);
        for (auto& [p, e] : half) out[p] += 2 * e;
        return;
    }
    Int g = pollard_rho(n);
    factor_into(g, out);
    factor_into(n / g, out);
}

} // namespace detail

// Prime factorization of |n| as p -> exponent. n must be nonzero.
inline std::map<Int, int> factor(const Int& n) {
    if (n == 0) throw DomainError("factor: zero has no factorization");
    std::map<Int, int> out;
    detail::factor_into(abs(n), out);
    return out;
}

inline bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    for (const auto& [p, e] : factor(n))
        if (e > 1) return false;
    return true;
}

// Nonzero squarefree integer; d = 1 denotes the rationals themselves.
class SquarefreeLabel {
  public:
    explicit SquarefreeLabel(Int d) : d_(std::move(d)) {
        if (d_ == 0) throw DomainError("SquarefreeLabel: zero");
        if (!is_squarefree(d_)) throw DomainError("SquarefreeLabel: not squarefree");
    }
    const Int& value() const { return d_; }
    bool is_rational() const { return d_ == 1; }
    friend bool operator==(const SquarefreeLabel& a, const SquarefreeLabel& b) {
        return a.d_ == b.d_;
    }

  private:
    Int d_;
};

// Canonical order on field labels: |d| ascending, negative before positive.
// Shared by tower generators and growth sets so reports are deterministic.
inline bool label_less(const Int& a, const Int& b) {
    const Int aa = abs(a), ab = abs(b);
    if (aa != ab) return aa < ab;
    return a < b;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Decompose r = d * q^2 with d squarefree and q > 0 rational.
inline std::pair<Int, Rat> squarefree_part(const Rat& r) {
    if (r == 0) throw DomainError("squarefree_part: zero input");
    // r = n/m reduced, so n and m share no primes: the squarefree part of
    // r is sf(n) * sf(m) (a prime of m with odd exponent contributes p via
    // n/m = n*m / m^2).
    Int d(1);
    for (const auto& [p, e] : factor(num(r)))
        if (e % 2) d *= p;
    for (const auto& [p, e] : factor(den(r)))
        if (e % 2) d *= p;
    if (r < 0) d = -d;
    auto q = rat_sqrt(r / Rat(d));
    if (!q) throw ConsistencyError("squarefree_part: residue not a square");
    return {d, *q};
}

} // namespace quadtor
