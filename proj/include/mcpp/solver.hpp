#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mcpp/kernels.hpp"
#include "mcpp/objective.hpp"
#include "mcpp/rounding.hpp"

namespace mcpp {

/// Two-way step-size control for paired forward Euler steps. The step
/// changes only between pairs and only by the factor rho.
struct StepController {
    double h = 1e-2;        // current step
    double theta_tol = 1e-5; // error tolerance Theta
    double rho = 1.1;        // adjust ratio, > 1
    double h_min = 1e-6;
    double h_max = 0.5; // keeps 1 - h > 0 so trajectories stay interior
};

struct AnnealSchedule {
    double t1 = 3.0;    // initial temperature
    double gamma = 0.95; // geometric decay, in (0,1)
    double eps0 = 1e-3;  // rounding-distance stopping tolerance
    int max_temps = 500;
    long max_steps_per_temp = 50000;
    double tol_eq = 1e-6; // equilibrium detection, inf-norm of the rhs
    int stall_limit = 5;  // stop after this many temps with unchanged rounding
};

struct TemperatureRecord {
    double temperature = 0.0;
    long steps = 0;
    double rhs_norm = 0.0;
    double rounding_distance = 0.0;
    bool step_limit_hit = false;
};

struct SolveTrace {
    std::vector<TemperatureRecord> temperatures;
    long total_steps = 0;
    std::vector<double> y_bar;   // last equilibrium
    ExtendedRounding y_hat;      // its rounding
    BooleanSolution solution;    // greedy booleanization
    double value_bar = 0.0;      // f(y_bar)
    double value_hat = 0.0;      // f(y_hat)
    double value = 0.0;          // f(solution)
    bool rounding_converged = false; // eps < eps0 reached
    bool any_step_limit_hit = false;
};

/// One forward Euler step, y += h * F, in place.
void fe_step(std::span<double> y, double h, std::span<const double> f);

/// Extrapolation error indicator for a pair of equal steps of size h:
/// theta = || y_prev2 + 2h F_prev2 - y_curr ||_2. theta/2 estimates the
/// per-step truncation error.
double error_estimate(std::span<const double> y_prev2, std::span<const double> f_prev2,
                      std::span<const double> y_curr, double h);

/// Dead-band adjustment: shrink by rho above Theta rho^2, grow by rho below
/// Theta / rho^2, clamp to [h_min, h_max].
void adjust_step(double theta, StepController& ctrl);

struct IntegrationResult {
    long steps = 0;
    double rhs_norm = 0.0;
    bool converged = false;
};

/// Generic paired-step driver for dy/dt = F(y). Stops at the first iterate
/// with ||F||_inf <= tol_eq or at the step limit. The observer, when set,
/// sees (theta, h) after every pair.
using RhsFn = std::function<void(std::span<const double>, std::span<double>)>;
using StepObserver = std::function<void(double theta, double h)>;

IntegrationResult integrate_controlled(const RhsFn& f, std::vector<double>& y,
                                       StepController& ctrl, long max_steps, double tol_eq,
                                       const StepObserver& observer = {});

/// Integrates the annealed system at fixed temperature to equilibrium.
IntegrationResult integrate_to_equilibrium(const Objective& obj, std::vector<double>& y,
                                           double temperature, StepController& ctrl,
                                           long max_steps, double tol_eq);

/// Sweeps blocks to the gradient-minimal unit vector until fixed; ties keep
/// the current assignment if it attains the minimum and otherwise go to the
/// lowest index, so a locally optimal Boolean input is a fixed point. The
/// objective value never increases and the result admits no improving
/// single-block unit move.
BooleanSolution greedy_booleanize(const Objective& obj, const ExtendedRounding& y_hat);

/// Full annealing run: integrate at T_s = gamma^(s-1) T_1 from the previous
/// equilibrium, round after each temperature, stop once the rounding
/// distance drops below eps0 (or the budget runs out), then booleanize.
SolveTrace anneal(const Objective& obj, std::vector<double> y0,
                  const AnnealSchedule& schedule, StepController ctrl);

} // namespace mcpp
