#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace markdyn {

struct VerifyOptions {
    std::uint64_t seed = 42;
    long trials = 1000;
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    double max_residual = 0.0;
    long checks = 0;
    std::string detail; ///< extra context (counts, failure notes)
};

using SuiteFn = SuiteResult (*)(const VerifyOptions&);

/// Every module's invariant-and-property suite, by name. The registry is
/// the single source for the verify command; a checklist test pins the
/// expected set of names so a suite cannot silently drop out.
const std::vector<std::pair<std::string, SuiteFn>>& verify_registry();

std::vector<SuiteResult> run_verify(const VerifyOptions& options);

/// One line per suite plus a footer; deterministic for a given seed
/// (no timings, 17-significant-digit residuals).
std::string verify_summary(const std::vector<SuiteResult>& results);

bool all_passed(const std::vector<SuiteResult>& results);

} // namespace markdyn
