#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace maxproc {

// One verification check: a measured value against a target with an explicit
// tolerance, plus a short free-form detail line.
struct CheckResult {
    std::string id;      // criterion number plus sub-check letter, e.g. "3b"
    std::string name;
    double measured = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::string profile;
    std::uint64_t seed = 0;
    std::vector<CheckResult> checks;
    // wall-clock stage timings; kept out of to_json so the serialized report
    // is byte-identical across reruns
    std::vector<std::pair<std::string, double>> timings;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const CheckResult* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["profile"] = profile;
        j["seed"] = seed;
        j["all_pass"] = all_pass();
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks) {
            j["checks"].push_back({{"id", c.id},
                                   {"name", c.name},
                                   {"measured", c.measured},
                                   {"target", c.target},
                                   {"tolerance", c.tolerance},
                                   {"pass", c.pass},
                                   {"detail", c.detail}});
        }
        return j;
    }
};

}  // namespace maxproc
