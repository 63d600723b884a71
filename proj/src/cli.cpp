#include "mcpp/cli.hpp"

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mcpp/maxcut.hpp"
#include "mcpp/polynomial.hpp"
#include "mcpp/random.hpp"
#include "mcpp/report.hpp"
#include "mcpp/stardisc.hpp"
#include "mcpp/validation.hpp"

namespace mcpp {

namespace {

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct CommonOptions {
    std::string instance;
    int trials = 20;
    uint64_t seed = 0;
    std::optional<double> t1;
    double gamma = 0.95;
    double eps0 = 1e-3;
    std::optional<double> theta;
    double rho = 1.1;
    double tol_eq = 1e-6;
    int max_temps = 500;
    long max_steps = 50000;
    std::string output;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("instance", opt.instance, "instance file")->required();
    cmd->add_option("--trials", opt.trials, "number of independent trials")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", opt.seed, "base seed; trial seeds are derived from it");
    cmd->add_option("--t1", opt.t1, "initial temperature");
    cmd->add_option("--gamma", opt.gamma, "temperature decay factor")
        ->check(CLI::Range(1e-12, 1.0 - 1e-12));
    cmd->add_option("--eps0", opt.eps0, "rounding-distance stopping tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--theta", opt.theta, "step error tolerance");
    cmd->add_option("--rho", opt.rho, "step adjust ratio")->check(CLI::Range(1.0 + 1e-12, 100.0));
    cmd->add_option("--tol-eq", opt.tol_eq, "equilibrium tolerance on the rhs inf-norm")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-temps", opt.max_temps, "temperature budget")->check(CLI::PositiveNumber);
    cmd->add_option("--max-steps", opt.max_steps, "step cap per temperature")
        ->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", opt.output, "output path (default stdout)");
    cmd->add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

void fill_trial_records(ResultRecord& record, const std::vector<TrialResult>& trials,
                        bool negate_value) {
    for (const TrialResult& t : trials) {
        TrialRecord r;
        r.trial = t.trial;
        r.seed = t.seed;
        r.value = negate_value ? -t.trace.value : t.trace.value;
        r.steps = t.trace.total_steps;
        r.temperatures = static_cast<int>(t.trace.temperatures.size());
        r.rounding_converged = t.trace.rounding_converged;
        r.step_limit_hit = t.trace.any_step_limit_hit;
        record.trials.push_back(r);
    }
}

int write_record(const ResultRecord& record, const CommonOptions& opt) {
    const std::string text = opt.format == "csv" ? emit_csv(record) : emit_json(record);
    if (opt.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.output);
        if (!out) {
            std::cerr << "error: cannot write " << opt.output << "\n";
            return 2;
        }
        out << text;
    }
    return 0;
}

nlohmann::ordered_json parameters_json(const CommonOptions& opt, double t1, double theta) {
    nlohmann::ordered_json j;
    j["trials"] = opt.trials;
    j["seed"] = opt.seed;
    j["t1"] = t1;
    j["gamma"] = opt.gamma;
    j["eps0"] = opt.eps0;
    j["theta"] = theta;
    j["rho"] = opt.rho;
    j["tol_eq"] = opt.tol_eq;
    j["max_temps"] = opt.max_temps;
    j["max_steps"] = opt.max_steps;
    return j;
}

int run_maxcut(const CommonOptions& opt, int k) {
    Graph graph;
    try {
        graph = load_gset(opt.instance);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    AnnealSchedule schedule;
    schedule.t1 = opt.t1.value_or(3.0);
    schedule.gamma = opt.gamma;
    schedule.eps0 = opt.eps0;
    schedule.max_temps = opt.max_temps;
    schedule.max_steps_per_temp = opt.max_steps;
    schedule.tol_eq = opt.tol_eq;
    StepController ctrl;
    ctrl.theta_tol = opt.theta.value_or(1e-5);
    ctrl.rho = opt.rho;

    MaxCutResult result = solve_maxkcut(graph, k, opt.trials, schedule, ctrl, opt.seed);

    ResultRecord record;
    record.instance = opt.instance;
    record.subcommand = "maxcut";
    record.parameters = parameters_json(opt, schedule.t1, ctrl.theta_tol);
    record.parameters["k"] = k;
    fill_trial_records(record, result.trials, /*negate_value=*/true);
    record.has_best = true;
    record.best_value = result.best_cut;
    record.best_trial = result.best_trial;
    record.best_solution = result.best_labels;
    record.timestamp = now_iso8601();
    return write_record(record, opt);
}

int run_stardisc(const CommonOptions& opt) {
    PointSet pts;
    try {
        pts = load_pointset(opt.instance);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    AnnealSchedule schedule = default_stardisc_schedule();
    schedule.t1 = opt.t1.value_or(schedule.t1);
    schedule.gamma = opt.gamma;
    schedule.eps0 = opt.eps0;
    schedule.max_temps = opt.max_temps;
    schedule.max_steps_per_temp = opt.max_steps;
    schedule.tol_eq = opt.tol_eq;
    StepController ctrl = default_stardisc_controller(pts);
    ctrl.theta_tol = opt.theta.value_or(ctrl.theta_tol);
    ctrl.rho = opt.rho;

    StarDiscResult result = solve_stardisc(pts, opt.trials, schedule, ctrl, opt.seed);

    ResultRecord record;
    record.instance = opt.instance;
    record.subcommand = "stardisc";
    record.parameters = parameters_json(opt, schedule.t1, ctrl.theta_tol);
    // per-trial value: the exact local discrepancy at the decoded point,
    // taking the better of the two surrogate problems
    // single-point sets have a unique closed box and carry no closed trials
    const bool has_closed = !result.closed_trials.empty();
    for (size_t t = 0; t < result.open_trials.size(); ++t) {
        TrialRecord r;
        r.trial = static_cast<int>(t);
        r.seed = result.open_trials[t].seed;
        r.value = std::max(result.open_values[t], result.closed_values[t]);
        r.steps = result.open_trials[t].trace.total_steps;
        r.temperatures = static_cast<int>(result.open_trials[t].trace.temperatures.size());
        r.rounding_converged = result.open_trials[t].trace.rounding_converged;
        r.step_limit_hit = result.open_trials[t].trace.any_step_limit_hit;
        if (has_closed) {
            r.steps += result.closed_trials[t].trace.total_steps;
            r.temperatures +=
                static_cast<int>(result.closed_trials[t].trace.temperatures.size());
            r.rounding_converged =
                r.rounding_converged && result.closed_trials[t].trace.rounding_converged;
            r.step_limit_hit =
                r.step_limit_hit || result.closed_trials[t].trace.any_step_limit_hit;
        }
        record.trials.push_back(r);
    }
    record.has_best = true;
    record.best_value = result.best_value;
    record.best_trial = result.best_trial;
    record.best_solution = result.best_point;
    record.timestamp = now_iso8601();
    return write_record(record, opt);
}

std::vector<int> parse_size_spec(const std::string& spec) {
    // accepts "2x2x3" or "2,2,3"
    std::vector<int> sizes;
    std::string token;
    std::istringstream in(spec);
    while (std::getline(in, token, spec.find('x') != std::string::npos ? 'x' : ',')) {
        if (token.empty())
            continue;
        sizes.push_back(std::stoi(token));
    }
    if (sizes.empty())
        throw std::runtime_error("empty size spec");
    return sizes;
}

int run_validate(const std::string& size_spec, double temperature, uint64_t seed,
                 const std::string& output) {
    Partition partition({2, 2});
    try {
        partition = Partition(parse_size_spec(size_spec));
    } catch (const std::exception& e) {
        std::cerr << "error: bad --size: " << e.what() << "\n";
        return 1;
    }

    // random multilinear objective: linear terms plus pairwise cross-block terms
    SplitMix64 rng(seed);
    std::vector<Term> terms;
    for (int v = 0; v < partition.size(); ++v)
        terms.push_back({2.0 * rng.uniform() - 1.0, {v}});
    for (int a = 0; a < partition.num_blocks(); ++a)
        for (int b = a + 1; b < partition.num_blocks(); ++b)
            for (int i = 0; i < partition.block_size(a); ++i)
                for (int l = 0; l < partition.block_size(b); ++l)
                    terms.push_back({2.0 * rng.uniform() - 1.0,
                                     {partition.offset(a) + i, partition.offset(b) + l}});
    PolynomialObjective obj(partition, terms);

    CTMCInstance ctmc = build_ctmc(obj, temperature);
    const double balance = check_detailed_balance(ctmc);
    const std::vector<double> stationary = stationary_distribution(ctmc);
    const std::vector<double> boltzmann = boltzmann_distribution(ctmc);
    double stationary_gap = 0.0;
    for (size_t i = 0; i < stationary.size(); ++i)
        stationary_gap = std::max(stationary_gap, std::abs(stationary[i] - boltzmann[i]));

    // equilibrate the mean-field system and compare against the exact mean
    AnnealSchedule schedule;
    StepController ctrl;
    std::vector<double> y = sample_initial(partition, rng.next());
    integrate_to_equilibrium(obj, y, temperature, ctrl, 200000, 1e-12);
    const std::vector<double> exact_mean = boltzmann_mean(ctmc);
    double mean_field_gap = 0.0;
    for (size_t i = 0; i < y.size(); ++i)
        mean_field_gap = std::max(mean_field_gap, std::abs(y[i] - exact_mean[i]));

    Certificate cert = certify_equilibrium(obj, y, temperature);
    LocalOptimalityVerdict verdict =
        check_local_optimality(obj, cert.rounding.to_vector(partition));

    nlohmann::ordered_json j;
    j["size"] = partition.block_sizes();
    j["temperature"] = temperature;
    j["seed"] = seed;
    j["states"] = ctmc.num_states;
    j["detailed_balance_residual"] = balance;
    j["stationary_vs_boltzmann"] = stationary_gap;
    j["mean_field_gap"] = mean_field_gap;
    j["certificate"] = {{"eps", cert.eps},
                        {"lipschitz", cert.lipschitz},
                        {"gap", cert.gap_vacuous ? nlohmann::ordered_json(nullptr)
                                                 : nlohmann::ordered_json(cert.gap)},
                        {"gap_vacuous", cert.gap_vacuous},
                        {"d_hat", cert.d_hat},
                        {"cond_separation", cert.cond_separation},
                        {"cond_temperature", cert.cond_temperature},
                        {"cond_gap", cert.cond_gap},
                        {"concise_bound", cert.concise_bound},
                        {"passes", cert.passes()}};
    j["rounding_locally_optimal"] = verdict.optimal;
    j["version"] = kToolVersion;

    const std::string text = j.dump(2) + "\n";
    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "error: cannot write " << output << "\n";
            return 2;
        }
        out << text;
    }
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"annealed-ODE solver for multiple choice polynomial programming"};
    app.require_subcommand(1);

    CommonOptions maxcut_opt;
    int k = 2;
    CLI::App* maxcut_cmd = app.add_subcommand("maxcut", "solve MAX-k-CUT on a G-Set graph");
    maxcut_cmd->add_option("--k", k, "number of cut classes")->check(CLI::Range(2, 64));
    add_common(maxcut_cmd, maxcut_opt);

    CommonOptions stardisc_opt;
    CLI::App* stardisc_cmd =
        app.add_subcommand("stardisc", "lower-bound the star discrepancy of a point set");
    add_common(stardisc_cmd, stardisc_opt);

    std::string size_spec = "2x2";
    double temperature = 1.0;
    uint64_t validate_seed = 0;
    std::string validate_output;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "exact CTMC checks on a random small instance");
    validate_cmd->add_option("--size", size_spec, "block sizes, e.g. 2x2 or 2,3");
    validate_cmd->add_option("--temp", temperature, "temperature")->check(CLI::PositiveNumber);
    validate_cmd->add_option("--seed", validate_seed, "seed of the random objective");
    validate_cmd->add_option("-o,--output", validate_output, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (maxcut_cmd->parsed())
            return run_maxcut(maxcut_opt, k);
        if (stardisc_cmd->parsed())
            return run_stardisc(stardisc_opt);
        return run_validate(size_spec, temperature, validate_seed, validate_output);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace mcpp
