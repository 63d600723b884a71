#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace mcpp {

inline constexpr const char* kToolVersion = "0.1.0";

struct TrialRecord {
    int trial = 0;
    uint64_t seed = 0;
    double value = 0.0; // cut value or discrepancy lower bound
    long steps = 0;
    int temperatures = 0;
    bool rounding_converged = false;
    bool step_limit_hit = false;
};

/// Machine-readable outcome of one solver invocation. Field order in the
/// emitted JSON and CSV is fixed; `timestamp` is excluded from the
/// determinism contract.
struct ResultRecord {
    std::string instance;
    std::string subcommand;
    nlohmann::ordered_json parameters;
    std::vector<TrialRecord> trials;
    bool has_best = false;
    double best_value = 0.0;
    int best_trial = -1;
    nlohmann::ordered_json best_solution; // labels array or point array
    std::string version = kToolVersion;
    std::string timestamp;
};

nlohmann::ordered_json to_json(const ResultRecord& record);
ResultRecord result_from_json(const nlohmann::ordered_json& j);

/// JSON text with a trailing newline.
std::string emit_json(const ResultRecord& record);

/// CSV rows: one header, one row per trial; floats carry 17 significant
/// digits.
std::string emit_csv(const ResultRecord& record);

} // namespace mcpp
