#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "ncbl/selftest.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 42;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    bool all = true;
    for (const ncbl::CriterionResult& r : ncbl::run_selftest(seed)) {
        std::cout << ncbl::format_criterion(r) << "\n" << std::flush;
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
