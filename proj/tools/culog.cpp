#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "culog/annihilate.hpp"
#include "culog/logclass.hpp"
#include "culog/verify.hpp"

using namespace culog;

namespace {

// Attaches the shared selection/precision flags to a subcommand, bound to cfg.
// Every flag is also accepted as a `key = value` line in --config files; flags
// given on the command line win.
void bind_config(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--ell", cfg.ells, "odd primes ell (comma separated)")->delimiter(',');
    sub->add_option("--m", cfg.m, "working precision ell^m");
    sub->add_option("--d", cfg.d, "real quadratic field Q(sqrt d)");
    sub->add_option("--f", cfg.f, "conductor (with --H)");
    sub->add_option("--H", cfg.H, "generators of H in (Z/f)^x")->delimiter(',');
    sub->add_option("--fmax", cfg.fmax, "sweep all conductors up to this bound");
    sub->add_option("--degmax", cfg.degmax, "degree cap for conductor sweeps");
    sub->add_option("--fields", cfg.fields_path, "file of field specs, one per line");
    sub->add_option("--units", cfg.units_paths, "units file (repeatable)");
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
    sub->add_option("--out", cfg.out_path, "write the JSON report here");
    sub->add_option("--budget", cfg.budget, "candidate budget for searches");
    sub->set_config("--config");
}

int cmd_field(const RunConfig& cfg) {
    for (const auto& F : select_fields(cfg))
        std::cout << F.describe() << " degree=" << F.degree() << " conductor=" << F.conductor()
                  << "\n";
    return 0;
}

int cmd_eta(const RunConfig& cfg) {
    for (const auto& F : select_fields(cfg)) std::cout << eta(F).to_string() << "\n";
    return 0;
}

int cmd_logdiv(const RunConfig& cfg) {
    cfg.validate();
    for (const auto& F : select_fields(cfg))
        for (long ell : cfg.ells) {
            Places P(F, ell, cfg.m);
            CycloElement x = F.conductor() % ell == 0 ? eta(F) : eta_twisted(F, ell).evaluate();
            std::cout << F.describe() << " ell=" << ell << " x=" << x.to_string() << "\n";
            std::vector<long> primes = P.support(x);
            bool has_ell = false;
            for (long p : primes) has_ell |= (p == ell);
            if (!has_ell) primes.push_back(ell);
            std::sort(primes.begin(), primes.end());
            for (long p : primes)
                for (size_t i = 0; i < P.above(p).reps.size(); ++i)
                    std::cout << "  nu~(" << p << "," << i
                              << ") = " << P.log_valuation(x, p, i).to_string() << "\n";
        }
    return 0;
}

int cmd_clgroup(const RunConfig& cfg) {
    cfg.validate();
    for (const auto& F : select_fields(cfg))
        for (long ell : cfg.ells) {
            Places P(F, ell, cfg.m);
            ClassGroupData cg = class_group(F, P);
            std::cout << F.describe() << " ell=" << ell << " Cl = " << cg.cl->structure()
                      << " (precision " << cfg.m << ")\n";
        }
    return 0;
}

int cmd_logclgroup(const RunConfig& cfg) {
    cfg.validate();
    for (const auto& F : select_fields(cfg))
        for (long ell : cfg.ells) {
            Places P(F, ell, cfg.m);
            ClassGroupData cg = class_group(F, P);
            LogClassData L = log_class_group(F, P, cg);
            std::cout << L.cl_tilde->structure() << " (precision " << cfg.m << ")\n";
        }
    return 0;
}

int cmd_verify(const std::string& suite, const RunConfig& cfg) {
    Report rep;
    rep.config = cfg;
    int code = run_suite(suite, cfg, rep);
    std::string json = rep.to_json();
    if (cfg.out_path.empty()) {
        std::cout << json;
    } else {
        std::ofstream out(cfg.out_path);
        if (!out) throw UsageError("cannot write report to " + cfg.out_path);
        out << json;
        long pass = 0, fail = 0, skip = 0;
        for (const auto& r : rep.results) {
            if (r.status == "pass") ++pass;
            if (r.status == "fail") ++fail;
            if (r.status == "skip") ++skip;
        }
        std::cout << "suite " << suite << ": " << pass << " pass, " << fail << " fail, " << skip
                  << " skip -> " << cfg.out_path << "\n";
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"logarithmic circular-unit toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string suite = "all";
    CLI::App* field = app.add_subcommand("field", "resolve and describe the selected fields");
    CLI::App* etac = app.add_subcommand("eta", "print the circular unit eta_F");
    CLI::App* logdiv = app.add_subcommand("logdiv", "log divisor of eta_F (eta~ when ell does not divide f)");
    CLI::App* clg = app.add_subcommand("clgroup", "ell-part of the ordinary class group");
    CLI::App* logclg = app.add_subcommand("logclgroup", "logarithmic class group Cl~");
    CLI::App* verify = app.add_subcommand("verify", "run a verification suite and emit the JSON report");
    for (CLI::App* sub : {field, etac, logdiv, clg, logclg, verify}) bind_config(sub, cfg);
    std::string suites;
    for (const auto& s : kSuites) suites += (suites.empty() ? "" : ", ") + s;
    verify->add_option("suite", suite, "one of: " + suites + ", all");

    try {
        app.parse(argc, argv);
        if (*field) return cmd_field(cfg);
        if (*etac) return cmd_eta(cfg);
        if (*logdiv) return cmd_logdiv(cfg);
        if (*clg) return cmd_clgroup(cfg);
        if (*logclg) return cmd_logclgroup(cfg);
        return cmd_verify(suite, cfg);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 3;
    } catch (const EffortError& e) {
        std::cerr << "effort exhausted: " << e.what() << "\n";
        return 4;
    } catch (const PrecisionError& e) {
        std::cerr << "precision defect: " << e.what() << "\n";
        return 4;
    } catch (const TheoremViolation& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return 5;
    }
}
