#include <random>

#include "culog/classgroup.hpp"
#include "culog/logclass.hpp"
#include "doctest.h"

using namespace culog;

TEST_CASE("prime splitting in quadratic fields") {
    AbelianField F = AbelianField::real_quadratic(5);
    SplittingData s2 = factor_prime(F, 2);
    CHECK(s2.g == 1);
    CHECK(s2.e == 1);
    CHECK(s2.fdeg == 2);  // 2 inert
    SplittingData s5 = factor_prime(F, 5);
    CHECK(s5.e == 2);  // ramified
    SplittingData s11 = factor_prime(F, 11);
    CHECK(s11.g == 2);  // split
}

TEST_CASE("conductor-discriminant formula") {
    CHECK(field_discriminant(AbelianField::real_quadratic(5)) == 5);
    CHECK(field_discriminant(AbelianField::real_quadratic(2)) == 8);
    CHECK(field_discriminant(AbelianField::max_real_cyclotomic(9)) == 81);
    // cyclic quartic of conductor 40: character conductors 5, 40, 40
    CHECK(field_discriminant(parse_field_spec("f=40;H=39,11")) == 8000);
    CHECK(minkowski_bound(AbelianField::real_quadratic(79)) > 1);
}

TEST_CASE("class group golden values at ell = 3") {
    for (auto [d, structure] : std::vector<std::pair<long, std::string>>{
             {5, "trivial"}, {2, "trivial"}, {79, "Z/3"}}) {
        AbelianField F = AbelianField::real_quadratic(d);
        Places P(F, 3, 6);
        ClassGroupData cg = class_group(F, P);
        CHECK(cg.cl->structure() == structure);
    }
}

TEST_CASE("element search norms agree with the field norm") {
    AbelianField F = AbelianField::real_quadratic(10);
    ElementSearch search(F, 3);
    long seen = 0;
    search.run(40, [&](const std::vector<long>& c, const Int& nrm) {
        CycloElement x = search.materialize(c);
        Rat exact = absolute_norm(x, F);
        CHECK(exact.get_den() == 1);
        CHECK(exact.get_num() == nrm);
        return ++seen >= 25;
    });
    CHECK(seen == 25);
}

TEST_CASE("gaussian period generates the field") {
    for (long d : {5L, 13L, 10L}) {
        AbelianField F = AbelianField::real_quadratic(d);
        CycloElement theta = gaussian_period(F);
        CHECK(theta.invariant_under(F));
        std::vector<Int> mp = period_min_poly(F, theta);
        REQUIRE(mp.size() == 3);  // monic quadratic
        CHECK(mp[2] == 1);
        CycloElement acc = CycloElement::zero(theta.conductor_tag());
        CycloElement p = CycloElement::one(theta.conductor_tag());
        for (const Int& c : mp) {
            acc = acc + p * CycloElement::from_rational(theta.conductor_tag(), Rat(c));
            p = p * theta;
        }
        CHECK(acc.is_zero());
    }
}

TEST_CASE("subquotient invariants via SNF") {
    ZMat gens = ZMat::identity(2);
    ZMat rels = ZMat::zero(2, 2);
    rels.a[0][0] = 3;
    rels.a[1][1] = 9;
    auto M = subquotient(gens, rels, 3, 5);
    CHECK(M.invariants() == std::vector<long>({2, 1}));  // Z/9 x Z/3
    CHECK(M.structure() == "Z/9 x Z/3");
    CHECK(M.order() == 27);
    // is_zero and coords are a homomorphism
    std::vector<Int> a{Int(1), Int(2)}, b{Int(2), Int(5)}, ab{Int(3), Int(7)};
    auto ca = M.coords(a), cb = M.coords(b), cab = M.coords(ab);
    for (size_t i = 0; i < ca.size(); ++i) {
        Int mod = pow_int(3, static_cast<unsigned long>(M.invariants()[i]));
        CHECK(mod_pos(ca[i] + cb[i], mod) == cab[i]);
    }
    CHECK(M.is_zero({Int(3), Int(9)}));  // generator orders 3 and 9
    CHECK(!M.is_zero({Int(1), Int(0)}));
}

TEST_CASE("logarithmic class groups: goldens and principal divisors") {
    AbelianField F = AbelianField::real_quadratic(67);
    Places P(F, 3, 8);
    ClassGroupData cg = class_group(F, P);
    LogClassData L = log_class_group(F, P, cg);
    CHECK(L.cl_tilde->structure() == "Z/3");
    // principal log divisors have trivial class in cl_star
    long tested = 0;
    for (const auto& x : cg.relation_elements) {
        if (tested >= 4) break;
        DivisorVec dv = log_divisor_on_columns(L, P, x);
        std::vector<Int> cls = class_of_divisor(L, dv);  // invariant coordinates
        for (size_t i = 0; i < cls.size(); ++i)
            CHECK(mod_pos(cls[i], pow_int(3, L.cl_star->invariants()[i])) == 0);
        ++tested;
    }
    CHECK(tested > 0);
    AbelianField F5 = AbelianField::real_quadratic(5);
    Places P5(F5, 3, 8);
    ClassGroupData cg5 = class_group(F5, P5);
    CHECK(log_class_group(F5, P5, cg5).cl_tilde->structure() == "trivial");
}

TEST_CASE("class_of_divisor is a homomorphism; galois action permutes places") {
    AbelianField F = AbelianField::real_quadratic(67);
    Places P(F, 3, 8);
    ClassGroupData cg = class_group(F, P);
    LogClassData L = log_class_group(F, P, cg);
    std::mt19937_64 rng(3);
    Int mod = pow_int(3, 8);
    for (int t = 0; t < 6; ++t) {
        DivisorVec a(L.columns.size()), b(L.columns.size()), ab(L.columns.size());
        for (size_t i = 0; i < a.size(); ++i) {
            a[i] = Int(rng() % 100);
            b[i] = Int(rng() % 100);
            ab[i] = mod_pos(a[i] + b[i], mod);
        }
        auto ca = class_of_divisor(L, a), cb = class_of_divisor(L, b),
             cab = class_of_divisor(L, ab);
        for (size_t i = 0; i < ca.size(); ++i) {
            Int mi = pow_int(3, static_cast<unsigned long>(L.cl_star->invariants()[i]));
            CHECK(mod_pos(ca[i] + cb[i], mi) == cab[i]);
        }
        // tau then tau^-1 is the identity on divisors
        for (const auto& tau : F.galois_group()) {
            DivisorVec back =
                galois_act_divisor(L, P, F.inv(tau), galois_act_divisor(L, P, tau, a));
            CHECK(back == a);
        }
    }
}

TEST_CASE("auxiliary prime search on Q(sqrt 79)") {
    AbelianField F = AbelianField::real_quadratic(79);
    Places P(F, 3, 6);
    ClassGroupData cg = class_group(F, P);
    LogClassData L = log_class_group(F, P, cg);
    DivisorVec target(L.columns.size(), Int(0));
    AuxPrimeResult r = find_auxiliary_prime(F, P, L, target, 1, 1000000);
    CHECK(r.p == 73);
    CHECK(r.p % 3 == 1);
    CHECK(F.artin_symbol(r.p).residue == 1);  // completely split
}
