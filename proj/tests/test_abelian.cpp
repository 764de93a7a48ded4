#include <algorithm>

#include "culog/abelian.hpp"
#include "doctest.h"

using namespace culog;

TEST_CASE("conductor minimality is enforced") {
    try {
        AbelianField::from_subgroup(10, {9});
        FAIL("expected UsageError");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("true conductor is 5") != std::string::npos);
    }
    AbelianField F = AbelianField::from_subgroup_minimized(10, {9});
    CHECK(F.conductor() == 5);
    CHECK(F.degree() == 2);
}

TEST_CASE("real quadratic conductors follow d mod 4") {
    CHECK(AbelianField::real_quadratic(5).conductor() == 5);
    CHECK(AbelianField::real_quadratic(2).conductor() == 8);
    CHECK(AbelianField::real_quadratic(3).conductor() == 12);
    CHECK(AbelianField::real_quadratic(13).conductor() == 13);
    CHECK(AbelianField::real_quadratic(6).conductor() == 24);
    for (long d : {2L, 3L, 5L, 6L, 79L}) CHECK(AbelianField::real_quadratic(d).degree() == 2);
}

TEST_CASE("subgroup arithmetic is a group") {
    AbelianField F = AbelianField::max_real_cyclotomic(40);
    CHECK(F.degree() == 8);
    const auto& G = F.galois_group();
    CHECK(G.size() == 8);
    CHECK(G[0].residue == 1);
    for (auto a : G) {
        CHECK(F.mul(a, F.inv(a)).residue == 1);
        for (auto b : G) {
            GaloisElement ab = F.mul(a, b);
            CHECK(std::find(G.begin(), G.end(), ab) != G.end());
            CHECK(ab == F.mul(b, a));
        }
        long n = F.order(a);
        GaloisElement p{1};
        for (long i = 0; i < n; ++i) p = F.mul(p, a);
        CHECK(p.residue == 1);
    }
}

TEST_CASE("artin symbols match quadratic residues") {
    AbelianField F5 = AbelianField::real_quadratic(5);
    CHECK(F5.artin_symbol(11).residue == 1);  // 11 = 1 mod 5, split
    CHECK(F5.artin_symbol(7).residue != 1);   // 7 = 2 mod 5, non-residue
    AbelianField F13 = AbelianField::real_quadratic(13);
    CHECK(F13.artin_symbol(3).residue == 1);  // 3 = 4^2 mod 13
    CHECK(F13.artin_symbol(2).residue != 1);
}

TEST_CASE("field spec parsing") {
    CHECK(parse_field_spec("d=5") == AbelianField::real_quadratic(5));
    AbelianField F = parse_field_spec("f=40;H=39,11");
    CHECK(F.conductor() == 40);
    CHECK(F.degree() == 4);
    CHECK_THROWS_AS(parse_field_spec("q=3"), UsageError);
}

TEST_CASE("fields_of_conductor returns exactly the real fields of that conductor") {
    for (long f : {5L, 8L, 12L, 40L}) {
        auto fields = fields_of_conductor(f, 8);
        CHECK(!fields.empty());
        for (const auto& F : fields) {
            CHECK(F.conductor() == f);
            CHECK(F.degree() >= 2);
            CHECK(F.subgroup_contains(f - 1));  // real: -1 in H
        }
    }
    auto c12 = fields_of_conductor(12, 8);
    REQUIRE(c12.size() == 1);  // only Q(sqrt 3)
    CHECK(c12[0] == AbelianField::real_quadratic(3));
}

TEST_CASE("subfield lattice of a biquadratic field") {
    std::vector<long> H;
    for (long a = 1; a < 104; ++a) {
        // Q(sqrt2, sqrt13): a square mod 13 and a = +-1 mod 8
        long r8 = a % 8, r13 = a % 13;
        if (gcd_long(a, 104) != 1 || (r8 != 1 && r8 != 7)) continue;
        for (long s : {1L, 3L, 4L, 9L, 10L, 12L})
            if (r13 == s) H.push_back(a);
    }
    AbelianField K = AbelianField::from_subgroup(104, H);
    CHECK(K.degree() == 4);
    auto lat = K.subfield_lattice();
    CHECK(lat.size() == 4);  // three quadratics + K itself
    CHECK(std::count_if(lat.begin(), lat.end(),
                        [](const AbelianField& L) { return L.degree() == 2; }) == 3);
    CHECK(K.contains(AbelianField::real_quadratic(2)));
    CHECK(K.contains(AbelianField::real_quadratic(13)));
    CHECK(K.contains(AbelianField::real_quadratic(26)));
}

TEST_CASE("decomposition data at ell") {
    AbelianField F = AbelianField::real_quadratic(13);
    auto dec = F.decomposition_data(3);  // 3 splits
    CHECK(dec.places_above == 2);
    CHECK(dec.subgroup.size() == 1);
    CHECK(dec.fixed_field->degree() == 2);
    auto dec2 = AbelianField::real_quadratic(2).decomposition_data(3);  // 3 inert
    CHECK(dec2.places_above == 1);
    CHECK(dec2.subgroup.size() == 2);
}

TEST_CASE("caps are enforced") {
    CHECK_THROWS_AS(AbelianField::max_real_cyclotomic(4096, FieldCaps{12, 2000}), CapError);
    CHECK_THROWS_AS(AbelianField::max_real_cyclotomic(64, FieldCaps{12, 2000}), CapError);
}
