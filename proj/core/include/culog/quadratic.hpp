#pragma once

#include "culog/abelian.hpp"
#include "culog/cyclo.hpp"

namespace culog {

// Fundamental unit (a + b*sqrt(d))/den of the maximal order of Q(sqrt(d)),
// den in {1, 2}, normalized > 1 with a, b > 0.
struct QuadraticUnit {
    Int a, b, den;
    int norm;  // N(eps) = +1 or -1
};

QuadraticUnit fundamental_unit(long d);

// sqrt(d) inside Q(zeta_f) for F = Q(sqrt(d)) of conductor f (Gauss sum).
CycloElement sqrt_in_cyclo(const AbelianField& F, long d);

CycloElement fundamental_unit_cyclo(const AbelianField& F, long d);

}  // namespace culog
