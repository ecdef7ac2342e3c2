#pragma once

#include <string>
#include <tuple>

#include "quadtor/errors.hpp"

namespace quadtor {

// Torsion group shape C_n x C_m with n | m; n = 1 means the cyclic group C_m.
struct GroupStructure {
    int n = 1, m = 1;

    GroupStructure() = default;
    GroupStructure(int n_, int m_) : n(n_), m(m_) {
        if (n < 1 || m < 1 || m % n != 0)
            throw DomainError("group structure requires n >= 1 and n | m");
    }

    long order() const { return static_cast<long>(n) * m; }
    bool is_trivial() const { return n == 1 && m == 1; }

    friend bool operator==(const GroupStructure& a, const GroupStructure& b) {
        return a.n == b.n && a.m == b.m;
    }
    friend bool operator!=(const GroupStructure& a, const GroupStructure& b) { return !(a == b); }
    friend bool operator<(const GroupStructure& a, const GroupStructure& b) {
        return std::tie(a.n, a.m) < std::tie(b.n, b.m);
    }

    // compact fixture form, e.g. "1x7", "2x12"
    std::string key() const { return std::to_string(n) + "x" + std::to_string(m); }
    // display form, e.g. "C7", "C2xC12"
    std::string display() const {
        if (n == 1) return "C" + std::to_string(m);
        return "C" + std::to_string(n) + "xC" + std::to_string(m);
    }

    static GroupStructure parse(const std::string& s) {
        const auto pos = s.find('x');
        if (pos == std::string::npos || pos == 0 || pos + 1 >= s.size())
            throw ParseError("bad group structure '" + s + "'");
        int a = 0, b = 0;
        try {
            std::size_t usedA = 0, usedB = 0;
            a = std::stoi(s.substr(0, pos), &usedA);
            b = std::stoi(s.substr(pos + 1), &usedB);
            if (usedA != pos || usedB != s.size() - pos - 1) throw std::invalid_argument(s);
        } catch (const std::exception&) {
            throw ParseError("bad group structure '" + s + "'");
        }
        try {
            return GroupStructure(a, b);
        } catch (const DomainError& e) {
            throw ParseError("bad group structure '" + s + "': " + e.what());
        }
    }
};

inline int valuation(int v, int p) {
    int e = 0;
    while (v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

// Subgroup embedding test, prime by prime: C_n x C_m embeds in C_n' x C_m'
// iff at every prime the sorted exponent pairs dominate componentwise.
inline bool embeds_in(const GroupStructure& g, const GroupStructure& h) {
    for (int p = 2; p <= g.m; ++p) {
        bool prime = true;
        for (int q = 2; q * q <= p; ++q)
            if (p % q == 0) { prime = false; break; }
        if (!prime) continue;
        if (valuation(g.n, p) > valuation(h.n, p)) return false;
        if (valuation(g.m, p) > valuation(h.m, p)) return false;
    }
    return true;
}

} // namespace quadtor
