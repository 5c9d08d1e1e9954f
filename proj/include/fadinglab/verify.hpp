#pragma once

// Self-verification suite: series identities, PDF normalization, reduction
// equalities, moment and capacity-loss oracles, symmetry and trend checks.
// Deterministic for a given seed; every check carries its tolerance so a
// deliberately impossible override can be injected as a negative control.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fadinglab::verify {

struct CheckResult {
    std::string name;
    bool passed = false;
    double tolerance = 0.0;
    double observed = 0.0;  // worst deviation seen (check-specific meaning)
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 20150518;
    std::optional<double> tolerance_override;  // replaces every check tolerance
};

std::vector<CheckResult> run_all_checks(const VerifyOptions& opts = {});

// Machine-readable report: { all_passed, seed, checks[], notes[] }.
nlohmann::json report_json(const std::vector<CheckResult>& results,
                           const VerifyOptions& opts);

} // namespace fadinglab::verify
