#include "culog/cyclo.hpp"
#include "culog/quadratic.hpp"
#include "doctest.h"

using namespace culog;

namespace {

CycloElement one_minus_zeta(long f, long a) {
    return CycloElement::one(f) - CycloElement::zeta_power(f, a);
}

}  // namespace

TEST_CASE("eta expands as the product over H") {
    AbelianField F5 = AbelianField::real_quadratic(5);
    CHECK(eta(F5) == one_minus_zeta(5, 1) * one_minus_zeta(5, 4));
    AbelianField F9 = AbelianField::max_real_cyclotomic(9);
    CHECK(eta(F9) == one_minus_zeta(9, 1) * one_minus_zeta(9, 8));
    CHECK(eta(F5).invariant_under(F5));
    CHECK(eta(F9).invariant_under(F9));
}

TEST_CASE("eta display uses the short lift") {
    CHECK(eta(AbelianField::real_quadratic(5)).to_string() == "2 - z - z^4 (f=5)");
    CHECK(eta(AbelianField::real_quadratic(2)).to_string() == "2 - z + z^3 (f=8)");
}

TEST_CASE("eta absolute norms: p on prime powers, unit otherwise") {
    CHECK(absolute_norm(eta(AbelianField::real_quadratic(5)), AbelianField::real_quadratic(5)) == 5);
    CHECK(absolute_norm(eta(AbelianField::real_quadratic(2)), AbelianField::real_quadratic(2)) == 2);
    AbelianField F9 = AbelianField::max_real_cyclotomic(9);
    CHECK(absolute_norm(eta(F9), F9) == 3);
    AbelianField F6 = AbelianField::real_quadratic(6);  // conductor 24
    Rat n = absolute_norm(eta(F6), F6);
    CHECK((n == 1 || n == -1));
}

TEST_CASE("eta(Q(sqrt5)) = (5 - sqrt5)/2") {
    AbelianField F = AbelianField::real_quadratic(5);
    CycloElement s = sqrt_in_cyclo(F, 5);
    CHECK(s * s == CycloElement::from_rational(5, Rat(5)));
    CycloElement expect =
        (CycloElement::from_rational(5, Rat(5)) - s) * CycloElement::from_rational(5, Rat(1, 2));
    CHECK(eta(F) == expect);
}

TEST_CASE("eta_twisted matches the Artin exponent") {
    AbelianField F2 = AbelianField::real_quadratic(2);
    CycloElement s = sqrt_in_cyclo(F2, 2);
    CycloElement expect = CycloElement::from_rational(8, Rat(3)) - s - s;  // 3 - 2 sqrt2
    CHECK(eta_twisted(F2, 3).evaluate() == expect);
    // 3 splits in Q(sqrt13): trivial exponent
    CHECK(eta_twisted(AbelianField::real_quadratic(13), 3).evaluate() ==
          CycloElement::one(13));
    CHECK_THROWS_AS(eta_twisted(AbelianField::real_quadratic(3), 3), UsageError);
}

TEST_CASE("relative norm: conjugate-product oracle and Eq. (1)") {
    AbelianField K = AbelianField::max_real_cyclotomic(13);
    AbelianField L = AbelianField::real_quadratic(13);
    CHECK(relative_norm(eta(K), K, L) == eta(L));
    CycloElement x = eta(K);
    CHECK(relative_norm(x, K, K) == x);
    CHECK(eta_norm_identity(K, L));
    // conductor 40 lattice: every pair satisfies Eq. (1)
    AbelianField F = AbelianField::max_real_cyclotomic(40);
    for (const auto& A : F.subfield_lattice())
        for (const auto& B : F.subfield_lattice()) {
            if (B.conductor() <= 1 || !A.contains(B)) continue;
            CHECK(eta_norm_identity(A, B));
        }
}

TEST_CASE("galois action composes and fixes the field") {
    CycloElement x = eta(AbelianField::max_real_cyclotomic(9)) +
                     CycloElement::zeta_power(9, 2);
    CHECK(x.galois_act(2).galois_act(4) == x.galois_act(8));
    CHECK(x.galois_act(1) == x);
}

TEST_CASE("lift and descend round-trip") {
    CycloElement x = eta(AbelianField::real_quadratic(5));
    CHECK(x.lift_to(40).descend_to(5) == x);
    CHECK(x.lift_to(40).conductor_tag() == 40);
    CHECK_THROWS_AS(CycloElement::zeta_power(40, 1).descend_to(5), UsageError);
}

TEST_CASE("field arithmetic: inverses, powers, denominators") {
    CycloElement x = eta(AbelianField::real_quadratic(5));
    CHECK(x * x.inverse() == CycloElement::one(5));
    CHECK(x.pow(3) == x * x * x);
    CHECK(x.pow(-2) * x.pow(2) == CycloElement::one(5));
    CycloElement half = CycloElement::from_rational(5, Rat(1, 2));
    CHECK(half + half == CycloElement::one(5));
    CHECK((x / x) == CycloElement::one(5));
}

TEST_CASE("conductor tags must agree") {
    CycloElement a = CycloElement::zeta_power(5, 1), b = CycloElement::zeta_power(8, 1);
    CHECK_THROWS_AS(a * b, UsageError);
    CHECK_THROWS_AS(a + b, UsageError);
}
