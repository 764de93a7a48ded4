#include "culog/report.hpp"

#include <algorithm>

#include "culog/integers.hpp"
#include "json.hpp"

namespace culog {

void RunConfig::validate() const {
    if (ells.empty()) throw UsageError("at least one ell required");
    for (long l : ells)
        if (l == 2 || !is_prime(l)) throw UsageError("ell must be an odd prime");
    if (m < 4) throw UsageError("precision m must be at least 4");
    if (degmax <= 0 || budget <= 0) throw UsageError("caps must be positive");
}

long Report::failures() const {
    long n = 0;
    for (const auto& r : results)
        if (r.status == "fail") ++n;
    return n;
}

std::string Report::to_json(bool include_timing) const {
    using json = nlohmann::ordered_json;
    json root;
    root["schema"] = kReportSchema;
    root["tool"] = kToolVersion;
    json cfg;
    cfg["ells"] = config.ells;
    cfg["m"] = config.m;
    if (config.d) cfg["d"] = config.d;
    if (config.f) {
        cfg["f"] = config.f;
        cfg["H"] = config.H;
    }
    if (config.fmax) cfg["fmax"] = config.fmax;
    cfg["degmax"] = config.degmax;
    if (!config.fields_path.empty()) cfg["fields"] = config.fields_path;
    if (!config.units_paths.empty()) cfg["units"] = config.units_paths;
    cfg["budget"] = config.budget;
    cfg["seed"] = config.seed;
    root["config"] = cfg;
    std::vector<CheckResult> sorted = results;
    std::sort(sorted.begin(), sorted.end(), [](const CheckResult& a, const CheckResult& b) {
        return std::tie(a.check, a.field, a.ell, a.m) < std::tie(b.check, b.field, b.ell, b.m);
    });
    json arr = json::array();
    std::map<std::string, std::array<long, 3>> counts;
    for (const auto& r : sorted) {
        json e;
        e["check"] = r.check;
        e["field"] = r.field;
        if (r.ell) e["ell"] = r.ell;
        if (r.m) e["m"] = r.m;
        e["status"] = r.status;
        if (!r.witness.empty()) e["witness"] = r.witness;
        if (r.seed) e["seed"] = r.seed;
        arr.push_back(std::move(e));
        auto& c = counts[r.check];
        if (r.status == "pass") ++c[0];
        else if (r.status == "fail") ++c[1];
        else ++c[2];
    }
    root["results"] = std::move(arr);
    json sum;
    for (const auto& [check, c] : counts)
        sum[check] = {{"pass", c[0]}, {"fail", c[1]}, {"skip", c[2]}};
    root["summary"] = std::move(sum);
    if (!input_digests.empty()) {
        json dig;
        for (const auto& [path, d] : input_digests) dig[path] = d;
        root["input_digests"] = std::move(dig);
    }
    if (include_timing) {
        json t;
        for (const auto& [k, v] : timings_ms) t[k] = v;
        root["timing_ms"] = std::move(t);
    }
    return root.dump(2) + "\n";
}

}  // namespace culog
