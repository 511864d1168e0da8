#ifndef NCBL_SELFTEST_HPP
#define NCBL_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ncbl {

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs the full acceptance battery (15 criteria); one result per criterion.
std::vector<CriterionResult> run_selftest(std::uint64_t seed);

/// "[ 3] PASS tensor-suite: ..." style line.
std::string format_criterion(const CriterionResult& r);

/// Deterministic JSON-lines report (no timing) for the determinism criterion;
/// identical seeds must produce byte-identical strings.
std::string canonical_report(std::uint64_t seed);

}  // namespace ncbl

#endif
