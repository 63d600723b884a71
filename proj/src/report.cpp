#include "mcpp/report.hpp"

#include <cstdio>
#include <sstream>

namespace mcpp {

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

nlohmann::ordered_json to_json(const ResultRecord& record) {
    nlohmann::ordered_json j;
    j["instance"] = record.instance;
    j["subcommand"] = record.subcommand;
    j["parameters"] = record.parameters;
    j["trials"] = nlohmann::ordered_json::array();
    for (const TrialRecord& t : record.trials) {
        nlohmann::ordered_json jt;
        jt["trial"] = t.trial;
        jt["seed"] = t.seed;
        jt["value"] = t.value;
        jt["steps"] = t.steps;
        jt["temperatures"] = t.temperatures;
        jt["rounding_converged"] = t.rounding_converged;
        jt["step_limit_hit"] = t.step_limit_hit;
        j["trials"].push_back(std::move(jt));
    }
    if (record.has_best) {
        j["best_value"] = record.best_value;
        j["best_trial"] = record.best_trial;
        j["best_solution"] = record.best_solution;
    } else {
        j["best_value"] = nullptr;
        j["best_trial"] = nullptr;
        j["best_solution"] = nullptr;
    }
    j["version"] = record.version;
    j["timestamp"] = record.timestamp;
    return j;
}

ResultRecord result_from_json(const nlohmann::ordered_json& j) {
    ResultRecord record;
    record.instance = j.at("instance").get<std::string>();
    record.subcommand = j.at("subcommand").get<std::string>();
    record.parameters = j.at("parameters");
    for (const auto& jt : j.at("trials")) {
        TrialRecord t;
        t.trial = jt.at("trial").get<int>();
        t.seed = jt.at("seed").get<uint64_t>();
        t.value = jt.at("value").get<double>();
        t.steps = jt.at("steps").get<long>();
        t.temperatures = jt.at("temperatures").get<int>();
        t.rounding_converged = jt.at("rounding_converged").get<bool>();
        t.step_limit_hit = jt.at("step_limit_hit").get<bool>();
        record.trials.push_back(t);
    }
    record.has_best = !j.at("best_value").is_null();
    if (record.has_best) {
        record.best_value = j.at("best_value").get<double>();
        record.best_trial = j.at("best_trial").get<int>();
        record.best_solution = j.at("best_solution");
    }
    record.version = j.at("version").get<std::string>();
    record.timestamp = j.at("timestamp").get<std::string>();
    return record;
}

std::string emit_json(const ResultRecord& record) {
    return to_json(record).dump(2) + "\n";
}

std::string emit_csv(const ResultRecord& record) {
    std::ostringstream out;
    out << "instance,subcommand,trial,seed,value,steps,temperatures,"
           "rounding_converged,step_limit_hit,best_value,best_trial,version\n";
    const std::string best_value = record.has_best ? fmt17(record.best_value) : "";
    const std::string best_trial = record.has_best ? std::to_string(record.best_trial) : "";
    for (const TrialRecord& t : record.trials) {
        out << record.instance << ',' << record.subcommand << ',' << t.trial << ',' << t.seed
            << ',' << fmt17(t.value) << ',' << t.steps << ',' << t.temperatures << ','
            << (t.rounding_converged ? 1 : 0) << ',' << (t.step_limit_hit ? 1 : 0) << ','
            << best_value << ',' << best_trial << ',' << record.version << '\n';
    }
    if (record.trials.empty())
        out << record.instance << ',' << record.subcommand << ",,,,,,,," << best_value << ','
            << best_trial << ',' << record.version << '\n';
    return out.str();
}

} // namespace mcpp
