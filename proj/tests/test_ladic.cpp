#include <random>

#include "culog/errors.hpp"
#include "culog/padic.hpp"
#include "culog/unramified.hpp"
#include "doctest.h"

using namespace culog;

namespace {

// Independent oracle: log(1+t) = sum (-1)^(k+1) t^k / k summed in exact
// rational arithmetic until the tail valuation clears the target precision.
Int series_log_1p(long t, long ell, int m) {
    Rat acc = 0;
    Rat tk = 1;
    for (long k = 1;; ++k) {
        tk *= t;
        long v = valuation(Int(t), Int(ell)) * k - valuation(Int(k), Int(ell));
        if (v >= m + 8 && k > m + 8) break;
        acc += Rat((k % 2) ? 1 : -1) * tk / k;
    }
    Int mod = pow_int(ell, static_cast<unsigned long>(m));
    Int den_inv;
    REQUIRE(inv_mod(acc.get_den(), mod, den_inv));
    return mod_pos(acc.get_num() * den_inv, mod);
}

}  // namespace

TEST_CASE("iwasawa log of 4 matches the rational series") {
    PadicValue v = iwasawa_log(Int(4), 3, 5);
    CHECK(v.value() == 48);
    CHECK(v.to_string() == "48 mod 3^5");
    CHECK(v.value() == series_log_1p(3, 3, 5));
    for (int m : {4, 6, 8})
        CHECK(iwasawa_log(Int(4), 3, m).value() == series_log_1p(3, 3, m));
    // 26 = 1 + 25 for ell = 5
    CHECK(iwasawa_log(Int(26), 5, 6).value() == series_log_1p(25, 5, 6));
}

TEST_CASE("iwasawa log kills ell and roots of unity") {
    CHECK(iwasawa_log(Int(3), 3, 8).is_zero());
    CHECK(iwasawa_log(Rat(-1), 3, 8).is_zero());
    CHECK(iwasawa_log(Rat(1, 9), 3, 8).is_zero());
}

TEST_CASE("iwasawa log is additive") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        long a = 1 + static_cast<long>(rng() % 500), b = 1 + static_cast<long>(rng() % 500);
        PadicValue la = iwasawa_log(Int(a), 3, 8), lb = iwasawa_log(Int(b), 3, 8);
        PadicValue lab = iwasawa_log(Int(Int(a) * Int(b)), 3, 8);
        CHECK(lab.congruent(la + lb, 8));
        CHECK(iwasawa_log(Rat(a, b), 3, 8).congruent(la - lb, 8));
    }
    CHECK(iwasawa_log(Int(2), 3, 8).scale(2).congruent(iwasawa_log(Int(4), 3, 8), 8));
}

TEST_CASE("teichmuller lifts") {
    PadicValue w = teichmuller(PadicValue(3, Int(2), 6));
    CHECK(w.value() == pow_int(3, 6) - 1);  // omega(2) = -1
    PadicValue w5 = teichmuller(PadicValue(5, Int(2), 6));
    CHECK(pow_mod(w5.value(), 4, pow_int(5, 6)) == 1);
    CHECK(mod_pos(w5.value(), Int(5)) == 2);
}

TEST_CASE("precision bookkeeping") {
    PadicValue a(3, Int(10), 6), b(3, Int(4), 4);
    CHECK((a + b).prec() == 4);
    CHECK((a * b).prec() == 4);
    PadicValue c(3, Int(18), 6);
    CHECK(c.valuation() == 2);
    PadicValue d = c.shift_down(2);
    CHECK(d.prec() == 4);
    CHECK(d.value() == 2);
    CHECK_THROWS_AS(PadicValue(3, Int(1), 6).shift_down(1), PrecisionError);
    CHECK(a.is_unit());
    CHECK(!c.is_unit());
}

TEST_CASE("inverse requires a unit") {
    CHECK_THROWS_AS(PadicValue(3, Int(6), 5).inverse(), UsageError);
    PadicValue u(3, Int(7), 5);
    CHECK((u * u.inverse()).value() == 1);
}

TEST_CASE("unramified ring: modulus, trace, dual basis") {
    LocalRing R(3, 2, 8);
    // generator satisfies its modulus polynomial
    LocalElt w = R.gen();
    LocalElt acc = R.zero();
    LocalElt p = R.one();
    for (const Int& c : R.modulus_poly()) {
        acc = R.add(acc, R.scale(p, c));
        p = R.mul(p, w);
    }
    CHECK(R.is_zero(acc));
    // x = sum Tr(v_i^* x) w^i for random x
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10; ++t) {
        LocalElt x{{Int(rng() % 6561), Int(rng() % 6561)}};
        LocalElt rebuilt = R.zero();
        LocalElt wi = R.one();
        for (long i = 0; i < R.degree(); ++i) {
            PadicValue tr = R.trace(R.mul(R.dual_basis()[i], x));
            rebuilt = R.add(rebuilt, R.scale(wi, tr.value()));
            wi = R.mul(wi, w);
        }
        CHECK(R.equal(rebuilt, x));
    }
}

TEST_CASE("unramified ring: log is additive on units") {
    LocalRing R(3, 2, 8);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        LocalElt a{{Int(1 + 3 * (rng() % 2000)), Int(rng() % 6561)}};
        LocalElt b{{Int(1 + 3 * (rng() % 2000)), Int(rng() % 6561)}};
        if (!R.is_unit(a) || !R.is_unit(b)) continue;
        LocalElt lhs = R.log_unit(R.mul(a, b));
        LocalElt rhs = R.add(R.log_unit(a), R.log_unit(b));
        // the series is exact only up to the precision guard
        CHECK(R.valuation(R.sub(lhs, rhs)) >= R.prec() - kPrecisionGuard);
    }
}

TEST_CASE("roots in the residue extension") {
    CHECK(smallest_irreducible(3, 2) == std::vector<long>({1, 0, 1}));
    LocalRing R(3, 2, 6);
    // x^2 - x - 1 is irreducible mod 3; its roots live in F_9
    auto roots = R.roots_of({Int(-1), Int(-1), Int(1)});
    REQUIRE(roots.size() == 2);
    for (const auto& r : roots) {
        LocalElt v = R.sub(R.sub(R.mul(r, r), r), R.one());
        CHECK(R.is_zero(v));
    }
}
