#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "culog/errors.hpp"
#include "culog/padic.hpp"

namespace culog {

inline constexpr const char* kToolVersion = "culog 0.1.0";
inline constexpr const char* kReportSchema = "culog-report-v1";

// One batch-run configuration: which fields, which primes, which precision.
struct RunConfig {
    std::vector<long> ells{3};
    int m = kDefaultPrecision;
    long d = 0;                       // Q(sqrt d) selector
    long f = 0;                       // explicit conductor (with H generators)
    std::vector<long> H;
    long fmax = 0;                    // conductor sweep bound
    long degmax = 8;
    std::string fields_path;          // file of field specs, one per line
    std::vector<std::string> units_paths;
    long budget = 1000000;
    uint64_t seed = 1;
    std::string out_path;

    void validate() const;  // UsageError: ells odd primes, m >= 4, caps > 0
};

struct CheckResult {
    std::string check;    // suite name
    std::string field;    // AbelianField::describe()
    long ell = 0;         // 0 for ell-independent exact identities
    int m = 0;
    std::string status;   // "pass" | "fail" | "skip"
    std::string witness;  // detail: module structure, offending place, ...
    uint64_t seed = 0;
};

// Deterministic run report: results sorted by (check, field, ell), timing kept
// apart so golden comparisons can drop it.
struct Report {
    RunConfig config;
    std::vector<CheckResult> results;
    std::map<std::string, double> timings_ms;
    std::vector<std::pair<std::string, std::string>> input_digests;  // (path, fnv1a)

    void add(CheckResult r) { results.push_back(std::move(r)); }
    long failures() const;
    // schema v1 JSON; include_timing = false gives the golden-comparable form
    std::string to_json(bool include_timing = true) const;
};

}  // namespace culog
