#include <algorithm>

#include "culog/units.hpp"
#include "doctest.h"

using namespace culog;

TEST_CASE("circular basis includes the rational primes of the conductor") {
    CircularBasis B = circular_basis(AbelianField::real_quadratic(3));  // f = 12
    CHECK(std::count(B.labels.begin(), B.labels.end(), "p=2") == 1);
    CHECK(std::count(B.labels.begin(), B.labels.end(), "p=3") == 1);
    CHECK(B.etas.size() == B.labels.size());
}

TEST_CASE("is_log_unit: eta~ yes, eta no, over Q(sqrt 2)") {
    AbelianField F = AbelianField::real_quadratic(2);
    Places P(F, 3, 8);
    CHECK(is_log_unit(P, eta_twisted(F, 3).evaluate()).ok);
    LogUnitVerdict v = is_log_unit(P, eta(F));
    CHECK(!v.ok);
    CHECK(v.witness_p == 2);  // eta has a pole-free divisor concentrated at 2
}

TEST_CASE("log valuation of ell itself vanishes") {
    AbelianField F = AbelianField::real_quadratic(2);
    Places P(F, 3, 8);
    CHECK(P.log_valuation(CycloElement::from_rational(8, Rat(3)), 3, 0).is_zero());
}

TEST_CASE("Car ranks: the three curated cases plus the ramified quadratic") {
    struct Case {
        AbelianField F;
        int kase;
        long rank;
    };
    std::vector<Case> cases = {
        {AbelianField::real_quadratic(13), 1, 0},     // 3 split
        {AbelianField::max_real_cyclotomic(9), 2, 3}, // 3 ramified, prime power
        {AbelianField::real_quadratic(2), 3, 1},      // 3 inert
        {AbelianField::real_quadratic(3), 2, 2},      // 3 ramified, f = 12
    };
    for (const auto& c : cases) {
        CarRankReport R = car_rank_check(c.F, 3, 6);
        CHECK(R.kase == c.kase);
        CHECK(R.rank == c.rank);
        CHECK(R.pass);
    }
}

TEST_CASE("residue functionals are homomorphisms mod ell^t") {
    // q = 1 mod lcm(5, 3^4)
    long f = 5, ell = 3;
    int t = 4;
    long L = f * 81;
    long q = 0;
    for (long c = 1 + L;; c += L)
        if (is_prime(c)) {
            q = c;
            break;
        }
    ResidueFunctional R = make_residue_functional(f, q, ell, t);
    CycloElement x = eta(AbelianField::real_quadratic(5));
    CycloElement y = x.galois_act(2);
    Int mod = pow_int(ell, static_cast<unsigned long>(t));
    CHECK(mod_pos(R(x) + R(y), mod) == R(x * y));
    CHECK(mod_pos(2 * R(CycloElement::from_rational(5, Rat(2))), mod) ==
          R(CycloElement::from_rational(5, Rat(4))));
    CHECK_THROWS_AS(make_residue_functional(5, 11, 3, 4), UsageError);
}

TEST_CASE("scolie: universal norm compatibility in both cases") {
    ScolieReport a = scolie_check(AbelianField::real_quadratic(2), 3);
    CHECK(a.pass);
    CHECK(!a.first_case);
    ScolieReport b = scolie_check(AbelianField::real_quadratic(3), 3);
    CHECK(b.pass);
    CHECK(b.first_case);
}

TEST_CASE("kernel free rank is stable from m to m+2") {
    for (long d : {2L, 13L, 3L}) {
        AbelianField F = AbelianField::real_quadratic(d);
        CircularBasis B = circular_basis(F);
        Places Pm(F, 3, 6), Pm2(F, 3, 8);
        CircularKernel Km = circular_log_units(B, F, Pm);
        CircularKernel Km2 = circular_log_units(B, F, Pm2);
        CHECK(Km.free_count == Km2.free_count);
    }
}
