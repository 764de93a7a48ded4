#pragma once

#include <vector>

#include "culog/integers.hpp"

namespace culog {

// Dense polynomial with Int coefficients, index = degree.
using Poly = std::vector<Int>;

void poly_trim(Poly& p);
long poly_deg(const Poly& p);  // -1 for zero
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Int& c);

// Remainder of a mod monic m (exact over Z).
Poly poly_rem_monic(Poly a, const Poly& m);

// Exact quotient a / b when b divides a over Z; throws otherwise.
Poly poly_div_exact(const Poly& a, const Poly& b);

// n-th cyclotomic polynomial, cached.
const Poly& cyclotomic(long n);

Int poly_content(const Poly& p);

}  // namespace culog
