#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quadtor/rational.hpp"

namespace quadtor {

class TowerField;
using TowerPtr = std::shared_ptr<const TowerField>;

// Multiquadratic field Q(sqrt(d1), ..., sqrt(dk)), k <= 3. Generators are
// squarefree, != 1, pairwise multiplicatively independent (no nonempty
// subset has a square product), and stored in canonical label order.
class TowerField : public std::enable_shared_from_this<TowerField> {
  public:
    static TowerPtr rationals() {
        static const TowerPtr q = TowerPtr(new TowerField({}));
        return q;
    }

    static TowerPtr make(std::vector<Int> gens) {
        std::sort(gens.begin(), gens.end(), label_less);
        for (const Int& d : gens) {
            if (d == 1 || d == 0) throw DependencyError("tower generator must be a nonunit");
            if (!is_squarefree(d)) throw DomainError("tower generator must be squarefree");
        }
        if (gens.size() > 3) throw DomainError("tower limited to 3 generators");
        // multiplicative independence: every nonempty subset product must
        // have a nontrivial squarefree part
        const std::size_t k = gens.size();
        for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
            Int prod(1);
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (std::size_t{1} << i)) prod *= gens[i];
            if (squarefree_part(Rat(prod)).first == 1)
                throw DependencyError("tower generators multiplicatively dependent");
        }
        return TowerPtr(new TowerField(std::move(gens)));
    }

    std::size_t k() const { return gens_.size(); }
    std::size_t dim() const { return std::size_t{1} << gens_.size(); }
    const std::vector<Int>& gens() const { return gens_; }
    bool is_rationals() const { return gens_.empty(); }

    // Subtower spanned by all generators but the last.
    const TowerPtr& sub() const { return sub_; }

    // Labels of the quadratic subfields, one per nonempty generator subset,
    // paired with the basis mask realizing sqrt(label) up to a rational.
    std::vector<std::pair<std::size_t, Int>> quad_subfields() const {
        std::vector<std::pair<std::size_t, Int>> out;
        for (std::size_t mask = 1; mask < dim(); ++mask) {
            Int prod(1);
            for (std::size_t i = 0; i < k(); ++i)
                if (mask & (std::size_t{1} << i)) prod *= gens_[i];
            out.emplace_back(mask, squarefree_part(Rat(prod)).first);
        }
        return out;
    }

    friend bool operator==(const TowerField& a, const TowerField& b) {
        return a.gens_ == b.gens_;
    }

    std::string describe() const {
        if (gens_.empty()) return "Q";
        std::string s = "Q(";
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (i) s += ",";
            s += "sqrt(" + gens_[i].get_str() + ")";
        }
        return s + ")";
    }

  private:
    explicit TowerField(std::vector<Int> gens) : gens_(std::move(gens)) {
        if (!gens_.empty())
            sub_ = TowerPtr(new TowerField(
                std::vector<Int>(gens_.begin(), gens_.end() - 1)));
        else
            sub_ = nullptr;
    }

    std::vector<Int> gens_;
    TowerPtr sub_; // built eagerly; fields are immutable after construction
};

inline bool same_field(const TowerPtr& a, const TowerPtr& b) {
    return a == b || (a && b && *a == *b);
}

// Element of a tower, as 2^k rational coordinates indexed by generator
// subsets: coords[mask] multiplies prod_{i in mask} sqrt(d_i).
class TowerElement {
  public:
    TowerElement() = default; // invalid until assigned; kept for containers

    static TowerElement from_rational(const TowerPtr& F, const Rat& r) {
        TowerElement x(F);
        x.c_[0] = r;
        return x;
    }
    static TowerElement zero(const TowerPtr& F) { return from_rational(F, Rat(0)); }
    static TowerElement one(const TowerPtr& F) { return from_rational(F, Rat(1)); }

    // Basis monomial prod_{i in mask} sqrt(d_i), scaled by coeff.
    static TowerElement monomial(const TowerPtr& F, std::size_t mask, const Rat& coeff) {
        if (mask >= F->dim()) throw DomainError("monomial mask out of range");
        TowerElement x(F);
        x.c_[mask] = coeff;
        return x;
    }

    // sqrt(d) for d a squarefree label realized inside F: d must equal the
    // squarefree part of some generator-subset product.
    static std::optional<TowerElement> sqrt_of_label(const TowerPtr& F, const Int& d) {
        if (d == 1) return one(F);
        for (const auto& [mask, label] : F->quad_subfields()) {
            if (label == d) {
                Int prod(1);
                for (std::size_t i = 0; i < F->k(); ++i)
                    if (mask & (std::size_t{1} << i)) prod *= F->gens()[i];
                // prod = d * q^2  =>  sqrt(d) = monomial(mask) / q
                auto [sf, q] = squarefree_part(Rat(prod));
                return monomial(F, mask, Rat(1) / q);
            }
        }
        return std::nullopt;
    }

    const TowerPtr& field() const { return F_; }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const {
        for (const Rat& r : c_)
            if (r != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    const Rat& rational_value() const {
        if (!is_rational()) throw DomainError("element is not rational");
        return c_[0];
    }

    friend bool operator==(const TowerElement& a, const TowerElement& b) {
        if (!same_field(a.F_, b.F_)) return false;
        return a.c_ == b.c_;
    }

    friend TowerElement operator+(const TowerElement& a, const TowerElement& b) {
        TowerElement r = a.check_same(b);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend TowerElement operator-(const TowerElement& a, const TowerElement& b) {
        TowerElement r = a.check_same(b);
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }
    friend TowerElement operator-(const TowerElement& a) {
        TowerElement r = a;
        for (Rat& x : r.c_) x = -x;
        return r;
    }
    friend TowerElement operator*(const TowerElement& a, const TowerElement& b) {
        TowerElement r = a.check_same(b);
        const auto& gens = a.F_->gens();
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if (b.c_[j] == 0) continue;
                // sqrt-monomials multiply via symmetric difference, squaring
                // out the shared generators
                Rat coeff = a.c_[i] * b.c_[j];
                std::size_t shared = i & j;
                for (std::size_t g = 0; g < gens.size(); ++g)
                    if (shared & (std::size_t{1} << g)) coeff *= Rat(gens[g]);
                r.c_[i ^ j] += coeff;
            }
        }
        return r;
    }
    friend TowerElement operator*(const Rat& s, const TowerElement& a) {
        TowerElement r = a;
        for (Rat& x : r.c_) x *= s;
        return r;
    }
    friend TowerElement operator*(const TowerElement& a, const Rat& s) { return s * a; }
    friend TowerElement operator+(const TowerElement& a, const Rat& s) {
        TowerElement r = a;
        r.c_[0] += s;
        return r;
    }
    friend TowerElement operator-(const TowerElement& a, const Rat& s) { return a + (-s); }

    // Exact inverse by norm descent: with x = u + v*sqrt(d_top),
    // 1/x = (u - v*sqrt(d_top)) / (u^2 - v^2*d_top) and the denominator
    // lives in the subtower.
    TowerElement inverse() const {
        if (is_zero()) throw DomainError("inverse of zero");
        if (F_->is_rationals()) return from_rational(F_, Rat(1) / c_[0]);
        auto [lo, hi] = split();
        const Int& d = F_->gens().back();
        TowerElement n = lo * lo - Rat(d) * (hi * hi); // norm, in subtower
        TowerElement ninv = n.inverse();
        return join(F_, lo * ninv, -(hi * ninv));
    }
    friend TowerElement operator/(const TowerElement& a, const TowerElement& b) {
        return a * b.inverse();
    }

    // Galois conjugation negating sqrt(d_i).
    TowerElement conj(std::size_t i) const {
        TowerElement r = *this;
        for (std::size_t m = 0; m < c_.size(); ++m)
            if (m & (std::size_t{1} << i)) r.c_[m] = -r.c_[m];
        return r;
    }

    // View over the top generator: x = lo + hi*sqrt(d_top), both in sub().
    std::pair<TowerElement, TowerElement> split() const {
        if (F_->is_rationals()) throw DomainError("split at rational level");
        const TowerPtr& S = F_->sub();
        TowerElement lo(S), hi(S);
        const std::size_t half = c_.size() / 2;
        for (std::size_t i = 0; i < half; ++i) {
            lo.c_[i] = c_[i];
            hi.c_[i] = c_[i + half];
        }
        return {lo, hi};
    }
    static TowerElement join(const TowerPtr& F, const TowerElement& lo, const TowerElement& hi) {
        TowerElement r(F);
        const std::size_t half = r.c_.size() / 2;
        for (std::size_t i = 0; i < half; ++i) {
            r.c_[i] = lo.c_[i];
            r.c_[i + half] = hi.c_[i];
        }
        return r;
    }

    // Embed into a larger tower whose generator list contains F's.
    TowerElement promote(const TowerPtr& big) const {
        if (same_field(F_, big)) return *this;
        std::vector<std::size_t> pos(F_->k());
        for (std::size_t i = 0; i < F_->k(); ++i) {
            auto it = std::find(big->gens().begin(), big->gens().end(), F_->gens()[i]);
            if (it == big->gens().end())
                throw DomainError("promote: not a subtower by generators");
            pos[i] = static_cast<std::size_t>(it - big->gens().begin());
        }
        TowerElement r(big);
        for (std::size_t m = 0; m < c_.size(); ++m) {
            if (c_[m] == 0) continue;
            std::size_t big_mask = 0;
            for (std::size_t i = 0; i < F_->k(); ++i)
                if (m & (std::size_t{1} << i)) big_mask |= std::size_t{1} << pos[i];
            r.c_[big_mask] += c_[m];
        }
        return r;
    }

    std::string describe() const {
        std::string s;
        bool first = true;
        for (std::size_t m = 0; m < c_.size(); ++m) {
            if (c_[m] == 0) continue;
            if (!first) s += " + ";
            first = false;
            s += c_[m].get_str();
            for (std::size_t i = 0; i < F_->k(); ++i)
                if (m & (std::size_t{1} << i))
                    s += "*sqrt(" + F_->gens()[i].get_str() + ")";
        }
        return first ? "0" : s;
    }

  private:
    explicit TowerElement(const TowerPtr& F) : F_(F), c_(F->dim(), Rat(0)) {}

    TowerElement check_same(const TowerElement& b) const {
        if (!same_field(F_, b.F_)) throw DomainError("tower field mismatch");
        return TowerElement(F_);
    }

    TowerPtr F_;
    std::vector<Rat> c_;
};

// Square testing with witness, by recursive norm descent. For
// x = a + b*sqrt(d) over the subtower L:
//   b = 0: x is a square iff a or a/d is a square in L (witness w or
//          w*sqrt(d) respectively);
//   else:  the norm n = a^2 - b^2 d must be a square N^2 in L, and then
//          u^2 = (a + N)/2 or (a - N)/2 for the witness u + (b/2u) sqrt(d).
inline std::optional<TowerElement> is_square_with_witness(const TowerElement& x) {
    const TowerPtr& F = x.field();
    if (F->is_rationals()) {
        auto r = rat_sqrt(x.rational_value());
        if (!r) return std::nullopt;
        return TowerElement::from_rational(F, *r);
    }
    auto [a, b] = x.split();
    const Int& d = F->gens().back();
    if (b.is_zero()) {
        if (auto w = is_square_with_witness(a))
            return TowerElement::join(F, *w, TowerElement::zero(F->sub()));
        if (auto w = is_square_with_witness(a * (Rat(1) / Rat(d))))
            return TowerElement::join(F, TowerElement::zero(F->sub()), *w);
        return std::nullopt;
    }
    auto N = is_square_with_witness(a * a - Rat(d) * (b * b));
    if (!N) return std::nullopt;
    for (int sign : {+1, -1}) {
        TowerElement half = (a + Rat(sign) * (*N)) * Rat(1, 2);
        if (auto u = is_square_with_witness(half)) {
            if (u->is_zero()) continue; // degenerate branch; try the other sign
            TowerElement v = b * Rat(1, 2) * u->inverse();
            TowerElement w = TowerElement::join(F, *u, v);
            if (w * w == x) return w;
        }
    }
    return std::nullopt;
}

// Convenience: test a rational inside an arbitrary tower.
inline std::optional<TowerElement> is_square_in(const TowerPtr& F, const Rat& r) {
    return is_square_with_witness(TowerElement::from_rational(F, r));
}

} // namespace quadtor
