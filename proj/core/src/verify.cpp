#include "culog/verify.hpp"

#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "culog/annihilate.hpp"
#include "culog/formats.hpp"

namespace culog {

std::vector<AbelianField> select_fields(const RunConfig& cfg) {
    FieldCaps caps{std::max(cfg.degmax, 12L), std::max(cfg.fmax + 1, 2000L)};
    std::vector<AbelianField> out;
    if (cfg.d) out.push_back(AbelianField::real_quadratic(cfg.d, caps));
    if (cfg.f) out.push_back(AbelianField::from_subgroup(cfg.f, cfg.H, caps));
    if (!cfg.fields_path.empty()) {
        std::ifstream in(cfg.fields_path);
        if (!in) throw UsageError("cannot open fields file " + cfg.fields_path);
        std::string line;
        while (std::getline(in, line)) {
            size_t first = line.find_first_not_of(" \t\r");
            if (first == std::string::npos || line[first] == '#') continue;
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
            out.push_back(parse_field_spec(line.substr(first), caps));
        }
    }
    if (cfg.fmax)
        for (long f = 3; f <= cfg.fmax; ++f)
            for (auto& K : fields_of_conductor(f, cfg.degmax, caps)) out.push_back(std::move(K));
    if (out.empty())
        throw UsageError("no fields selected (use --d, --f/--H, --fields, or --fmax)");
    return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Timer {
    Report& rep;
    std::string key;
    Clock::time_point t0 = Clock::now();
    ~Timer() {
        rep.timings_ms[key] +=
            std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }
};

void suite_eta_units(const RunConfig& cfg, const std::vector<AbelianField>& fields, Report& rep) {
    Timer t{rep, "eta-units"};
    for (const auto& F : fields)
        for (long ell : cfg.ells) {
            CheckResult r{"eta-units", F.describe(), ell, cfg.m, "pass", "", 0};
            CycloElement x = F.conductor() % ell == 0 ? eta(F) : eta_twisted(F, ell).evaluate();
            if (x == CycloElement::one(x.conductor_tag())) {
                r.witness = "eta~ = 1";
            } else {
                Places P(F, ell, cfg.m);
                LogUnitVerdict v = is_log_unit(P, x);
                if (!v.ok) {
                    r.status = "fail";
                    r.witness = "nu~ = " + v.witness_value.get_str() + " at place " +
                                std::to_string(v.witness_index) + " above " +
                                std::to_string(v.witness_p);
                }
            }
            rep.add(std::move(r));
        }
}

void suite_norm_identities(const std::vector<AbelianField>& fields, Report& rep) {
    Timer t{rep, "norm-identities"};
    for (const auto& F : fields) {
        CheckResult r{"norm-identities", F.describe(), 0, 0, "pass", "", 0};
        auto lat = F.subfield_lattice();
        long pairs = 0;
        for (const auto& K : lat)
            for (const auto& L : lat) {
                if (L.conductor() <= 1 || !K.contains(L)) continue;
                ++pairs;
                if (!eta_norm_identity(K, L)) {
                    r.status = "fail";
                    r.witness = "K=" + K.describe() + " L=" + L.describe();
                }
            }
        if (r.status == "pass") r.witness = "pairs=" + std::to_string(pairs);
        rep.add(std::move(r));
    }
}

void suite_scolie(const RunConfig& cfg, const std::vector<AbelianField>& fields, Report& rep) {
    Timer t{rep, "scolie"};
    for (const auto& F : fields)
        for (long ell : cfg.ells) {
            CheckResult r{"scolie", F.describe(), ell, 0, "pass", "", 0};
            try {
                ScolieReport s = scolie_check(F, ell);
                r.witness = "level=" + std::to_string(s.level) + " fc=" + std::to_string(s.fc) +
                            (s.first_case ? " (ramified case)" : " (split/inert case)");
                if (!s.pass) r.status = "fail";
            } catch (const EffortError& e) {
                r.status = "skip";
                r.witness = e.what();
            }
            rep.add(std::move(r));
        }
}

void suite_product_formula(const RunConfig& cfg, const std::vector<AbelianField>& fields,
                           Report& rep, long trials) {
    Timer t{rep, "product-formula"};
    for (const auto& F : fields)
        for (long ell : cfg.ells) {
            CheckResult r{"product-formula", F.describe(), ell, cfg.m, "pass", "", cfg.seed};
            Places P(F, ell, cfg.m);
            ElementSearch search(F, 4);
            std::mt19937_64 rng(cfg.seed ^ (static_cast<uint64_t>(F.conductor()) << 20) ^
                                static_cast<uint64_t>(ell));
            Int tol = pow_int(ell, static_cast<unsigned long>(cfg.m - 4));
            long done = 0;
            while (done < trials) {
                std::vector<long> c(F.degree());
                bool nonzero = false;
                for (auto& v : c) {
                    v = static_cast<long>(rng() % 9) - 4;
                    if (v) nonzero = true;
                }
                if (!nonzero) continue;
                CycloElement x = search.materialize(c);
                if (x.is_zero()) continue;
                std::vector<long> primes = P.support(x);
                bool has_ell = false;
                for (long p : primes) has_ell |= (p == ell);
                if (!has_ell) primes.push_back(ell);
                PadicValue deg = P.divisor_degree(x, primes);
                ++done;
                if (mod_pos(deg.value(), tol) != 0) {
                    r.status = "fail";
                    r.witness = "deg = " + deg.to_string();
                    break;
                }
            }
            if (r.status == "pass") r.witness = "trials=" + std::to_string(done);
            rep.add(std::move(r));
        }
}

void suite_lemma_dec(const RunConfig& cfg, const std::vector<AbelianField>& fields, Report& rep) {
    Timer t{rep, "lemma-dec"};
    for (const auto& F : fields)
        for (long ell : cfg.ells) {
            CheckResult r{"lemma-dec", F.describe(), ell, cfg.m, "pass", "", 0};
            auto dec = F.decomposition_data(ell);
            if (dec.fixed_field->degree() == 1) {
                r.status = "skip";
                r.witness = "case (ii): F deg = Q";
                rep.add(std::move(r));
                continue;
            }
            Places P(F, ell, cfg.m);
            CircularBasis B = circular_basis(F);
            CircularKernel K = circular_log_units(B, F, P);
            NormKernelReport N = norm_kernel_check(B, F, ell, K);
            if (!N.pass) r.status = "fail";
            r.witness = "norm-kernel checked=" + std::to_string(N.checked) +
                        " skipped=" + std::to_string(N.skipped);
            rep.add(std::move(r));
        }
}

void suite_car_ranks(const RunConfig& cfg, const std::vector<AbelianField>& fields, Report& rep) {
    Timer t{rep, "car-ranks"};
    for (const auto& F : fields)
        for (long ell : cfg.ells) {
            CheckResult r{"car-ranks", F.describe(), ell, cfg.m, "pass", "", 0};
            CarRankReport c = car_rank_check(F, ell, std::min(cfg.m, 6));
            r.witness = "case=" + std::to_string(c.kase) +
                        " expected=" + std::to_string(c.expected) +
                        " rank=" + std::to_string(c.rank);
            if (!c.pass) r.status = "fail";
            rep.add(std::move(r));
        }
}

void suite_tpc(const RunConfig& cfg, const std::vector<AbelianField>& fields, Report& rep,
               bool ordinary) {
    const char* name = ordinary ? "cor-cp" : "tpc";
    Timer t{rep, name};
    for (const auto& F : fields)
        for (long ell : cfg.ells) {
            CheckResult r{name, F.describe(), ell, cfg.m, "pass", "", cfg.seed};
            TpcReport R = ordinary ? cor10_check(F, ell, cfg.m, cfg.seed)
                                   : tpc_check(F, ell, cfg.m, cfg.seed);
            if (R.failures > 0 || R.violation) r.status = "fail";
            if (R.module == "trivial")
                r.witness = "pass (trivial module)";
            else
                r.witness = "module=" + R.module + " checks=" + std::to_string(R.checks) +
                            " failures=" + std::to_string(R.failures) +
                            (R.violation ? " THEOREM VIOLATION (check implementation)" : "");
            rep.add(std::move(r));
        }
}

void suite_solomon(const RunConfig& cfg, const std::vector<AbelianField>& fields, Report& rep) {
    Timer t{rep, "solomon"};
    for (const auto& F : fields)
        for (long ell : cfg.ells) {
            CheckResult r{"solomon", F.describe(), ell, cfg.m, "pass", "", 0};
            if (F.conductor() % ell == 0) {
                r.status = "skip";
                r.witness = "ell ramified: theta machinery excluded";
                rep.add(std::move(r));
                continue;
            }
            SolomonReport S = solomon_check(F, ell, cfg.m);
            if (S.failures > 0 || S.violation) r.status = "fail";
            r.witness = "deg=" + std::to_string(S.d) +
                        " solomon-integral=" + (S.integral ? std::string("yes") : "no") +
                        " alphas=" + std::to_string(S.alpha_count) +
                        " checks=" + std::to_string(S.checks) +
                        (S.violation ? " THEOREM VIOLATION (check implementation)" : "");
            rep.add(std::move(r));
        }
}

void suite_units_files(const RunConfig& cfg, Report& rep) {
    for (const auto& path : cfg.units_paths) {
        UnitsFile U = read_units_file(path);
        rep.input_digests.push_back({path, U.digest});
        CheckResult r{"units-file", path, 0, 0, "pass",
                      "units=" + std::to_string(U.units.size()), 0};
        rep.add(std::move(r));
    }
}

}  // namespace

int run_suite(const std::string& suite, const RunConfig& cfg, Report& rep) {
    cfg.validate();
    bool known = suite == "all";
    for (const auto& s : kSuites) known |= (s == suite);
    if (!known) throw UsageError("unknown suite " + suite);
    std::vector<AbelianField> fields = select_fields(cfg);
    suite_units_files(cfg, rep);
    bool all = suite == "all";
    if (all || suite == "eta-units") suite_eta_units(cfg, fields, rep);
    if (all || suite == "norm-identities") suite_norm_identities(fields, rep);
    if (all || suite == "scolie") suite_scolie(cfg, fields, rep);
    if (all || suite == "product-formula") suite_product_formula(cfg, fields, rep, 20);
    if (all || suite == "lemma-dec") suite_lemma_dec(cfg, fields, rep);
    if (all || suite == "car-ranks") suite_car_ranks(cfg, fields, rep);
    if (all || suite == "tpc") suite_tpc(cfg, fields, rep, false);
    if (all || suite == "cor-cp") suite_tpc(cfg, fields, rep, true);
    if (all || suite == "solomon") suite_solomon(cfg, fields, rep);
    return rep.failures() == 0 ? 0 : 5;
}

}  // namespace culog
