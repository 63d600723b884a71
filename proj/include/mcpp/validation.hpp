#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mcpp/objective.hpp"
#include "mcpp/rounding.hpp"

namespace mcpp {

/// Fully enumerated continuous-time Markov chain over the feasible set of a
/// small partition. Transitions exist only between states differing in a
/// single block; rates are the softmax of the negated block gradient.
struct CTMCInstance {
    struct Transition {
        int from = 0;
        int to = 0;
        double rate = 0.0;
    };

    Partition partition;
    double temperature = 0.0;
    int num_states = 0;
    std::vector<BooleanSolution> states;
    std::vector<double> energy;     // f at each state
    std::vector<Transition> transitions;
    std::vector<double> exit_rate;  // total outflow per state

    BooleanSolution state(int idx) const { return states[static_cast<size_t>(idx)]; }
};

/// Builds the exact chain; refuses when the state count exceeds the budget.
CTMCInstance build_ctmc(const Objective& obj, double temperature, long max_states = 10000);

/// Max over transition pairs of |e^{-f(x)/T} q(x->x') - e^{-f(x')/T} q(x'->x)|
/// with energies shifted by their minimum before exponentiation.
double check_detailed_balance(const CTMCInstance& ctmc);

/// Boltzmann-weighted expected state, computed with max-shift stabilization.
std::vector<double> boltzmann_mean(const CTMCInstance& ctmc);

/// Boltzmann probabilities over the enumerated states.
std::vector<double> boltzmann_distribution(const CTMCInstance& ctmc);

/// Stationary distribution from the linear system pi^T Q = 0, sum pi = 1.
std::vector<double> stationary_distribution(const CTMCInstance& ctmc);

struct ForwardEvolution {
    std::vector<double> distribution;
    std::vector<double> mean; // expected state at t_end
};

/// Explicit stepping of dp/dt = Q^T p. Rejects dt that would break the
/// positivity of the update (1 - dt * exit_rate < 0).
ForwardEvolution integrate_forward_equation(const CTMCInstance& ctmc,
                                            std::vector<double> p0, double t_end, double dt);

struct LocalOptimalityVerdict {
    bool optimal = true;
    int block = -1;                     // first violating block, when not optimal
    std::vector<int> improving_support; // the extended move that improves
    double improvement = 0.0;
};

/// Definition-1 check: for every block j and every extended candidate
/// chi^A/|A|, replacing block j must not decrease f (beyond tolerance).
LocalOptimalityVerdict check_local_optimality(const Objective& obj,
                                              std::span<const double> x,
                                              double tolerance = 1e-10,
                                              long max_candidates = 1 << 20);

struct Certificate {
    double eps = 0.0;  // inf-distance from y_bar to its rounding
    double temperature = 0.0;
    double lipschitz = 0.0; // vertex-enumeration upper bound L
    double gap = 0.0;       // minimal gap g over the extended set
    bool gap_vacuous = false;
    int d_hat = 0;
    bool cond_separation = false; // d_hat * eps < 1/2
    bool cond_temperature = false;
    bool cond_gap = false; // vacuously true when no gradient entries differ
    bool concise_bound = false; // Remark-style single bound on eps
    ExtendedRounding rounding;

    bool passes() const { return cond_separation && cond_temperature && cond_gap; }
};

/// Upper bound on the maximal Lipschitz constant of the block gradients in
/// the inf-norm, by enumerating the vertices of [0,1]^n (exact for
/// multilinear objectives). Guarded by a vertex budget.
double lipschitz_bound(const Objective& obj, long max_vertices = 1 << 16);

/// Minimal nonzero within-block gradient separation over the extended set;
/// nullopt when no two entries ever differ.
std::optional<double> minimal_gap(const Objective& obj, long max_elements = 200000);

/// Evaluates the local-optimality certificate at an equilibrium y_bar.
Certificate certify_equilibrium(const Objective& obj, std::span<const double> y_bar,
                                double temperature);

/// Central finite differences of the multilinear value; validates block
/// gradients of every frontend.
std::vector<double> finite_difference_gradient(const Objective& obj,
                                               std::span<const double> y, double step = 1e-5);

} // namespace mcpp
