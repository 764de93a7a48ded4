#pragma once

#include <string>
#include <vector>

#include "culog/abelian.hpp"
#include "culog/report.hpp"

namespace culog {

// Field selection: --d, --f/--H, a fields file ("d=5" / "f=40;H=39,11" lines,
// '#' comments), and/or a conductor sweep up to fmax at degree <= degmax.
std::vector<AbelianField> select_fields(const RunConfig& cfg);

inline const std::vector<std::string> kSuites = {
    "eta-units", "norm-identities", "scolie",  "product-formula", "lemma-dec",
    "car-ranks", "tpc",             "cor-cp",  "solomon"};

// Runs one verification suite (or "all") over the selected fields, appending
// to the report. Returns the process exit code: 0 clean, 5 on any failure.
int run_suite(const std::string& suite, const RunConfig& cfg, Report& rep);

}  // namespace culog
