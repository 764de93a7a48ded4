#include <fstream>

#include "culog/formats.hpp"
#include "culog/verify.hpp"
#include "doctest.h"

using namespace culog;

TEST_CASE("element records round-trip") {
    CycloElement e = eta(AbelianField::real_quadratic(5));
    std::string rec = element_record(e);
    CHECK(parse_element_record(rec) == e);
    CycloElement q = CycloElement::from_rational(5, Rat(2, 3));
    CHECK(parse_element_record(element_record(q)) == q);
    CHECK_THROWS_AS(parse_element_record("f=5; den=1"), UsageError);
    CHECK_THROWS_AS(parse_element_record("num=[1]; den=1"), UsageError);
}

TEST_CASE("padic records round-trip and range-check") {
    PadicValue v(3, Int(48), 5);
    CHECK(padic_record(v) == "l=3 m=5 v=48");
    PadicValue w = parse_padic_record("l=3 m=5 v=48");
    CHECK(w.value() == 48);
    CHECK(w.prec() == 5);
    CHECK(w.ell() == 3);
    CHECK_THROWS_AS(parse_padic_record("l=3 m=5 v=243"), UsageError);
    CHECK_THROWS_AS(parse_padic_record("l=3 m=5"), UsageError);
}

TEST_CASE("fnv1a digests") {
    CHECK(fnv1a_digest("") == "cbf29ce484222325");
    CHECK(fnv1a_digest("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a_digest("abc") != fnv1a_digest("abd"));
}

TEST_CASE("units files parse with comments, digests, and line numbers") {
    UnitsFile U = parse_units_data("# demo\n\nunit: f=5; num=[2,-1,0,-1]; den=1\n");
    REQUIRE(U.units.size() == 1);
    CHECK(U.units[0] == parse_element_record("f=5; num=[2,-1,0,-1]; den=1"));
    CHECK(U.digest.size() == 16);
    try {
        parse_units_data("unit: f=5; num=[1]; den=1\nbogus line\n");
        FAIL("expected UsageError");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    UnitsFile fx = read_units_file("data/units_f7.txt");
    CHECK(fx.units.size() == 2);
    for (const auto& u : fx.units) {
        CHECK(u.conductor_tag() == 7);
        Rat n = absolute_norm(u, AbelianField::max_real_cyclotomic(7));
        CHECK((n == 1 || n == -1));  // genuine units
    }
}

TEST_CASE("run config validation") {
    RunConfig cfg;
    cfg.d = 5;
    cfg.validate();
    RunConfig even = cfg;
    even.ells = {2};
    CHECK_THROWS_AS(even.validate(), UsageError);
    RunConfig shallow = cfg;
    shallow.m = 3;
    CHECK_THROWS_AS(shallow.validate(), UsageError);
    RunConfig none;
    CHECK_THROWS_AS(select_fields(none), UsageError);
}

TEST_CASE("reports are deterministic and sorted") {
    RunConfig cfg;
    cfg.d = 5;
    cfg.m = 6;
    Report a, b;
    a.config = cfg;
    b.config = cfg;
    CHECK(run_suite("eta-units", cfg, a) == 0);
    CHECK(run_suite("eta-units", cfg, b) == 0);
    CHECK(a.to_json(false) == b.to_json(false));
    CHECK(a.to_json(false).find("\"schema\": \"culog-report-v1\"") != std::string::npos);
    CHECK(a.failures() == 0);
    CHECK_THROWS_AS(run_suite("bogus", cfg, a), UsageError);
}

TEST_CASE("verify reads units files into the digest table") {
    RunConfig cfg;
    cfg.d = 5;
    cfg.m = 6;
    cfg.units_paths = {"data/units_f7.txt"};
    Report rep;
    rep.config = cfg;
    CHECK(run_suite("eta-units", cfg, rep) == 0);
    REQUIRE(rep.input_digests.size() == 1);
    CHECK(rep.input_digests[0].first == "data/units_f7.txt");
    std::ifstream in("data/units_f7.txt");
    std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(rep.input_digests[0].second == fnv1a_digest(raw));
}
