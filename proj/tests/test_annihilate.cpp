#include "culog/annihilate.hpp"
#include "culog/quadratic.hpp"
#include "doctest.h"

using namespace culog;

TEST_CASE("group algebra: ring axioms and translation") {
    AbelianField F = AbelianField::max_real_cyclotomic(9);
    GroupAlgebra A(F, 3, 6);
    GroupAlgebraElement a = A.zero(), b = A.zero();
    for (size_t i = 0; i < F.galois_group().size(); ++i) {
        a.coeff[i] = A.ring().from_int(Int(2 * i + 1));
        b.coeff[i] = A.ring().from_int(Int(7 * i + 3));
    }
    CHECK(A.equal(A.mul(a, A.one()), a));
    CHECK(A.equal(A.mul(a, b), A.mul(b, a)));  // G abelian
    GroupAlgebraElement c = A.add(a, b);
    CHECK(A.equal(A.mul(c, c), A.add(A.add(A.mul(a, a), A.mul(b, b)),
                                     A.scale(A.mul(a, b), A.ring().from_int(Int(2))))));
    // augmentation is a ring map
    Int mod = pow_int(3, 6);
    CHECK(mod_pos(A.augmentation(a).c[0] * A.augmentation(b).c[0], mod) ==
          A.augmentation(A.mul(a, b)).c[0]);
    // translate by tau = multiply by the group element
    GaloisElement tau = F.galois_group()[1];
    GroupAlgebraElement delta = A.zero();
    delta.coeff[F.coset_index(tau)] = A.ring().one();
    CHECK(A.equal(A.translate(tau, a), A.mul(delta, a)));
}

TEST_CASE("theta: norm-one units have augmentation zero") {
    AbelianField F = AbelianField::real_quadratic(2);
    ThetaMap T(F, 3, 8);
    CycloElement eps = eta_twisted(F, 3).evaluate();  // 3 - 2 sqrt2, norm 1
    GroupAlgebraElement th = T.theta(eps);
    CHECK(T.algebra().ring().is_zero(T.algebra().augmentation(th)));
    // theta(eps^tau) = tau . theta(eps)
    for (const auto& tau : F.galois_group())
        CHECK(T.algebra().equal(T.theta(eps.galois_act(tau)), T.algebra().translate(tau, th)));
    CHECK_THROWS_AS(ThetaMap(AbelianField::real_quadratic(3), 3, 8), UsageError);
}

TEST_CASE("log_lambda is a homomorphism") {
    AbelianField F = AbelianField::real_quadratic(13);
    ThetaMap T(F, 3, 8);
    CycloElement u = eta(F).galois_act(2);
    CycloElement v = fundamental_unit_cyclo(F, 13);
    const LocalRing& R = T.algebra().ring();
    CHECK(R.equal(T.log_lambda(u * v), R.add(T.log_lambda(u), T.log_lambda(v))));
}

TEST_CASE("solomon element is integral over Q(sqrt 2)") {
    ThetaMap T(AbelianField::real_quadratic(2), 3, 8);
    auto S = T.solomon();
    CHECK(S.integral);
    CHECK(S.elt.m == 7);
}

TEST_CASE("battery morphisms are G-equivariant") {
    AbelianField F = AbelianField::real_quadratic(13);
    GroupAlgebra A(F, 3, 8);
    auto battery = morphism_battery(F, 3, 8, 2, 2, 17);
    CHECK(battery.size() >= 4);
    CycloElement eps = eta(F).galois_act(2) * eta(F);
    for (const auto& rho : battery) {
        GroupAlgebraElement base = rho_apply(A, rho, eps);
        for (const auto& tau : F.galois_group()) {
            GroupAlgebraElement lhs = rho_apply(A, rho, eps.galois_act(tau));
            GroupAlgebraElement rhs = A.translate(tau, base);
            // compare mod ell^prec of the morphism
            Int mod = pow_int(3, static_cast<unsigned long>(rho.prec));
            REQUIRE(lhs.coeff.size() == rhs.coeff.size());
            for (size_t i = 0; i < lhs.coeff.size(); ++i)
                for (size_t j = 0; j < lhs.coeff[i].c.size(); ++j)
                    CHECK(mod_pos(lhs.coeff[i].c[j] - rhs.coeff[i].c[j], mod) == 0);
        }
    }
}

TEST_CASE("rho tables match direct evaluation") {
    AbelianField F = AbelianField::real_quadratic(13);
    GroupAlgebra A(F, 3, 8);
    CircularBasis B = circular_basis(F);
    auto battery = morphism_battery(F, 3, 8, 1, 0, 17);
    REQUIRE(!battery.empty());
    const auto& rho = battery.front();
    RhoTable t = rho_table(rho, B, F);
    long n = static_cast<long>(B.etas.size()) * F.degree();
    for (long j = 0; j < n; ++j) {
        std::vector<Int> alpha(n, Int(0));
        alpha[j] = 1;
        CycloElement base = B.etas[j / F.degree()];
        if (base.conductor_tag() != F.conductor()) base = base.lift_to(F.conductor());
        CycloElement eps = base.galois_act(F.galois_group()[j % F.degree()]);
        GroupAlgebraElement direct = rho_apply(A, rho, eps);
        GroupAlgebraElement combined = rho_combine(A, t, alpha);
        Int mod = pow_int(3, static_cast<unsigned long>(rho.prec));
        for (size_t i = 0; i < direct.coeff.size(); ++i)
            CHECK(mod_pos(direct.coeff[i].c[0] - combined.coeff[i].c[0], mod) == 0);
    }
}

TEST_CASE("theorem checks pass on the curated fields") {
    TpcReport t = tpc_check(AbelianField::real_quadratic(67), 3, 8, 42);
    CHECK(t.pass);
    CHECK(t.module == "Z/3");
    CHECK(t.failures == 0);
    CHECK(!t.violation);
    CHECK(t.checks > 0);
    TpcReport c = cor10_check(AbelianField::real_quadratic(79), 3, 8, 42);
    CHECK(c.pass);
    CHECK(c.module == "Z/3");
    SolomonReport s = solomon_check(AbelianField::real_quadratic(2), 3, 8);
    CHECK(s.pass);
    CHECK(s.integral);
    CHECK(s.d == 2);  // 3 inert
}
