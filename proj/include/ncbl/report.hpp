#ifndef NCBL_REPORT_HPP
#define NCBL_REPORT_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

namespace ncbl {

/// Outcome of one inequality check. `deficit` is rhs minus lhs in whatever
/// scale the verifier uses (log-domain for trace-of-exp quantities);
/// pass <=> deficit >= -tolerance (scaled).
struct VerificationReport {
    std::string setting;
    double lhs = 0.0;
    double rhs = 0.0;
    double deficit = 0.0;
    bool pass = false;
    bool condition_violated = false;  // frame/cover condition failed; deficit not asserted
    double tolerance = 1e-9;
    double log_constant = 0.0;  // ln C from the inequality, 0 by default
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;
    double millis = 0.0;
    nlohmann::json inputs;  // serialized trial inputs, sufficient for replay

    nlohmann::json to_json(bool with_timing = true) const {
        nlohmann::json j{{"setting", setting}, {"lhs", lhs},
                         {"rhs", rhs},         {"deficit", deficit},
                         {"pass", pass},       {"tolerance", tolerance},
                         {"log_constant", log_constant},
                         {"seed", seed},       {"trial", trial}};
        if (condition_violated) j["condition_violated"] = true;
        if (with_timing) j["millis"] = millis;
        if (!inputs.is_null()) j["inputs"] = inputs;
        return j;
    }
};

}  // namespace ncbl

#endif
