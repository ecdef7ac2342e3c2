#pragma once

#include <vector>

#include "quadtor/curve.hpp"
#include "quadtor/poly.hpp"

namespace quadtor {

// psi_2^2 as a polynomial in x: 4x^3 + b2 x^2 + 2 b4 x + b6. Its roots are
// the x-coordinates of the 2-torsion, and y^2 = f(x)/4 on the completed
// square model.
inline Poly two_division_cubic(const Curve& E) {
    return Poly({E.b6, 2 * E.b4, E.b2, Rat(4)});
}

// Univariate division polynomial convention: returns psi_n for odd n and
// psi_n / psi_2 for even n, both polynomials in x alone. Roots over a field
// are exactly the x-coordinates of affine points P with nP = O (for even n
// the 2-torsion x-coordinates live in the psi_2 factor that was divided
// out, except those of higher even order).
inline Poly division_polynomial(const Curve& E, int n) {
    if (n < 1 || n > 16) throw DomainError("division_polynomial supports n = 1..16");
    const Rat &b2 = E.b2, &b4 = E.b4, &b6 = E.b6, &b8 = E.b8;
    const Poly f = two_division_cubic(E);
    const Poly f2 = f * f;

    std::vector<Poly> P(static_cast<std::size_t>(n) + 3);
    P[0] = Poly::zero();
    P[1] = Poly::one();
    P[2] = Poly::one();
    P[3] = Poly({b8, 3 * b6, 3 * b4, b2, Rat(3)});
    if (P.size() > 4)
        P[4] = Poly({b4 * b8 - b6 * b6, b2 * b8 - b4 * b6, 10 * b8, 10 * b6, 5 * b4, b2, Rat(2)});

    const auto limit = static_cast<std::size_t>(n);
    for (std::size_t k = 5; k <= limit; ++k) {
        if (k % 2 == 0) {
            const std::size_t m = k / 2;
            P[k] = P[m] * (P[m + 2] * (P[m - 1] * P[m - 1]) - P[m - 2] * (P[m + 1] * P[m + 1]));
        } else {
            const std::size_t m = (k - 1) / 2;
            const Poly cube_m = P[m] * P[m] * P[m];
            const Poly cube_m1 = P[m + 1] * P[m + 1] * P[m + 1];
            if (m % 2 == 0)
                P[k] = f2 * P[m + 2] * cube_m - P[m - 1] * cube_m1;
            else
                P[k] = P[m + 2] * cube_m - f2 * P[m - 1] * cube_m1;
        }
    }
    return P[limit];
}

} // namespace quadtor
