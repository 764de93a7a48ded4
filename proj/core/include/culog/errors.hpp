#pragma once

#include <stdexcept>
#include <string>

namespace culog {

// Exit-code families used by the CLI: 2 = usage, 3 = cap, 4 = effort/rank
// defect, 5 = theorem violation.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

struct CapError : std::runtime_error {
    explicit CapError(const std::string& what) : std::runtime_error(what) {}
};

struct EffortError : std::runtime_error {
    explicit EffortError(const std::string& what) : std::runtime_error(what) {}
};

struct TheoremViolation : std::runtime_error {
    explicit TheoremViolation(const std::string& what) : std::runtime_error(what) {}
};

struct PrecisionError : std::runtime_error {
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace culog
