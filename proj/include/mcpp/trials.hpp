#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

#include "mcpp/random.hpp"
#include "mcpp/solver.hpp"

namespace mcpp {

struct TrialResult {
    int trial = 0;
    uint64_t seed = 0;
    SolveTrace trace;
};

inline int trial_thread_count(int trials) {
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0)
        threads = 1;
    if (const char* env = std::getenv("MCPP_ODE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0)
            threads = std::min(threads, cap);
    }
    return std::min(threads, trials);
}

/// Runs independent annealing trials over a shared read-only objective.
/// Trial t starts from sample_initial(partition, trial_seed(base_seed, t)).
/// Results come back indexed by trial, so the outcome does not depend on
/// the thread count.
inline std::vector<TrialResult> run_trials(const Objective& obj, int trials,
                                           uint64_t base_seed, const AnnealSchedule& schedule,
                                           const StepController& ctrl) {
    std::vector<TrialResult> results(static_cast<size_t>(trials));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int t = next.fetch_add(1);
            if (t >= trials)
                return;
            const uint64_t seed = trial_seed(base_seed, t);
            StepController local_ctrl = ctrl; // controller state is per trial
            SolveTrace trace = anneal(obj, sample_initial(obj.partition(), seed),
                                      schedule, local_ctrl);
            results[static_cast<size_t>(t)] = {t, seed, std::move(trace)};
        }
    };

    const int threads = trial_thread_count(trials);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<size_t>(threads));
        for (int i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }
    return results;
}

/// Index of the best trial by minimal objective value, ties to the lowest
/// trial index (equivalently the lowest derived seed).
inline int best_trial(const std::vector<TrialResult>& results) {
    int best = 0;
    for (size_t t = 1; t < results.size(); ++t)
        if (results[t].trace.value < results[static_cast<size_t>(best)].trace.value)
            best = static_cast<int>(t);
    return best;
}

} // namespace mcpp
