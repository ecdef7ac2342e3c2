#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "quadtor/rational.hpp"
#include "quadtor/tower.hpp"

namespace quadtor {

// Dense univariate polynomial over Q, coefficients ascending. The zero
// polynomial has an empty coefficient vector and degree -1.
class Poly {
  public:
    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<Rat> coeffs) : c_(coeffs) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly({Rat(1)}); }
    static Poly x() { return Poly({Rat(0), Rat(1)}); }
    static Poly constant(const Rat& a) { return Poly({a}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const Rat& lead() const {
        if (is_zero()) throw DomainError("lead of zero polynomial");
        return c_.back();
    }
    // coefficient of x^i, zero beyond the stored range
    Rat coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
    const std::vector<Rat>& coeffs() const { return c_; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rat> r(std::max(a.c_.size(), b.c_.size()), Rat(0));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) {
        std::vector<Rat> r = a.c_;
        for (Rat& x : r) x = -x;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rat> r(a.c_.size() + b.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const Rat& s, const Poly& a) {
        if (s == 0) return Poly();
        std::vector<Rat> r = a.c_;
        for (Rat& x : r) x *= s;
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Rat& s) { return s * a; }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }
    TowerElement eval(const TowerElement& x) const {
        TowerElement acc = TowerElement::zero(x.field());
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<Rat> r(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = Rat(static_cast<long>(i)) * c_[i];
        return Poly(std::move(r));
    }

    // Euclidean division by a nonzero divisor; returns (quotient, remainder).
    std::pair<Poly, Poly> divmod(const Poly& d) const {
        if (d.is_zero()) throw DomainError("polynomial division by zero");
        Poly r = *this;
        std::vector<Rat> q;
        if (degree() >= d.degree()) q.assign(static_cast<std::size_t>(degree() - d.degree()) + 1, Rat(0));
        while (!r.is_zero() && r.degree() >= d.degree()) {
            const std::size_t k = static_cast<std::size_t>(r.degree() - d.degree());
            Rat f = r.lead() / d.lead();
            q[k] = f;
            // r -= f * x^k * d
            for (std::size_t i = 0; i < d.c_.size(); ++i) r.c_[k + i] -= f * d.c_[i];
            r.trim();
        }
        return {Poly(std::move(q)), r};
    }
    friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
    friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

    // Division known to be exact; remainder must vanish.
    Poly exact_div(const Poly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw ConsistencyError("exact_div left a remainder");
        return q;
    }

    Poly monic() const {
        if (is_zero()) throw DomainError("monic of zero polynomial");
        return (Rat(1) / lead()) * *this;
    }

    // Taylor shift: returns p(x + s).
    Poly shifted(const Rat& s) const {
        Poly acc;
        const Poly lin({s, Rat(1)});
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + Poly::constant(c_[i]);
        return acc;
    }

    // p = scale * G with G primitive over Z (content 1, positive leading
    // coefficient); returns (G's coefficients, scale).
    std::pair<std::vector<Int>, Rat> primitive_integer() const {
        if (is_zero()) throw DomainError("primitive form of zero polynomial");
        Int l(1);
        for (const Rat& r : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den().get_mpz_t());
        std::vector<Int> g(c_.size());
        Int content(0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            Rat scaled = c_[i] * Rat(l);
            g[i] = num(scaled); // den is 1 by choice of l
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), g[i].get_mpz_t());
        }
        if (g.back() < 0) content = -content;
        for (Int& x : g) x /= content;
        return {std::move(g), Rat(content) / Rat(l)};
    }

    std::string describe() const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].get_str();
            if (i == 1) s += "*x";
            if (i > 1) s += "*x^" + std::to_string(i);
        }
        return s;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rat> c_;
};

inline Poly poly_gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

} // namespace quadtor
