#include "culog/quadratic.hpp"

namespace culog {

namespace {

// Fundamental solution of x^2 - d y^2 = +-1 via the continued fraction of
// sqrt(d); the sign is (-1)^period.
void pell_fundamental(long d, Int& x, Int& y, int& norm) {
    Int a0 = sqrt(Int(d));
    if (a0 * a0 == d) throw UsageError("pell: d is a square");
    Int P = 0, Q = 1, a = a0;
    Int pm1 = 1, p = a0, qm1 = 0, q = 1;
    long k = 1;
    for (;;) {
        P = a * Q - P;
        Q = (d - P * P) / Q;
        if (Q == 1 && k > 0 && P == a0) {
            // period closes on the next step a = 2*a0; current convergent is
            // p_{k-1}/q_{k-1}
            break;
        }
        a = (a0 + P) / Q;
        Int pn = a * p + pm1, qn = a * q + qm1;
        pm1 = p;
        p = pn;
        qm1 = q;
        q = qn;
        ++k;
    }
    x = p;
    y = q;
    norm = (p * p - Int(d) * q * q == 1) ? 1 : -1;
}

}  // namespace

QuadraticUnit fundamental_unit(long d) {
    Int x, y;
    int n;
    pell_fundamental(d, x, y, n);
    if (x * x - Int(d) * y * y != Int(n)) throw UsageError("pell solution check failed");
    if (d % 4 == 1) {
        // the unit of the maximal order may be a cube root: (a + b sqrt d)/2
        // with a(a^2 - 3n0)/2 = x for n0 = N(eps0); solve the cubic for a.
        for (int n0 : {1, -1}) {
            Int target = 2 * x;
            // a ~ cbrt(2x); scan a small window
            Int guess;
            mpz_root(guess.get_mpz_t(), target.get_mpz_t(), 3);
            for (Int a = guess - 2; a <= guess + 2; ++a) {
                if (a <= 0) continue;
                if (a * a * a - 3 * n0 * a != target) continue;
                Int den = a * a - n0;
                if (den == 0 || (2 * y) % den != 0) continue;
                Int b = 2 * y / den;
                if (b <= 0) continue;
                if (a * a - Int(d) * b * b != 4 * n0) continue;
                if (mod_pos(a - b, Int(2)) != 0) continue;
                if (mod_pos(a, Int(2)) == 0) return {a / 2, b / 2, Int(1), n0};
                return {a, b, Int(2), n0};
            }
        }
    }
    return {x, y, Int(1), n};
}

CycloElement sqrt_in_cyclo(const AbelianField& F, long d) {
    if (F.degree() != 2) throw UsageError("sqrt_in_cyclo: not a quadratic field");
    long f = F.conductor();
    CycloElement s = CycloElement::zero(f);
    for (long a = 1; a < f; ++a) {
        if (gcd_long(a, f) != 1) continue;
        if (F.subgroup_contains(a))
            s = s + CycloElement::zeta_power(f, a);
        else
            s = s - CycloElement::zeta_power(f, a);
    }
    // Gauss sum squares to the discriminant f; rescale to sqrt(d)
    CycloElement s2 = s * s;
    if (!s2.is_rational() || s2.rational_value() != Rat(f))
        throw UsageError("gauss sum does not square to the conductor");
    if (f == d) return s;
    if (f == 4 * d) return s / CycloElement::from_rational(f, Rat(2));
    throw UsageError("conductor does not match the quadratic discriminant");
}

CycloElement fundamental_unit_cyclo(const AbelianField& F, long d) {
    QuadraticUnit u = fundamental_unit(d);
    long f = F.conductor();
    CycloElement r = sqrt_in_cyclo(F, d);
    CycloElement num =
        CycloElement::from_rational(f, Rat(u.a)) + r * CycloElement::from_rational(f, Rat(u.b));
    return num / CycloElement::from_rational(f, Rat(u.den));
}

}  // namespace culog
