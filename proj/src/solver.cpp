#include "mcpp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcpp {

void fe_step(std::span<double> y, double h, std::span<const double> f) {
    for (size_t i = 0; i < y.size(); ++i)
        y[i] += h * f[i];
}

double error_estimate(std::span<const double> y_prev2, std::span<const double> f_prev2,
                      std::span<const double> y_curr, double h) {
    double s = 0.0;
    for (size_t i = 0; i < y_curr.size(); ++i) {
        const double diff = y_prev2[i] + 2.0 * h * f_prev2[i] - y_curr[i];
        s += diff * diff;
    }
    return std::sqrt(s);
}

void adjust_step(double theta, StepController& ctrl) {
    const double r2 = ctrl.rho * ctrl.rho;
    if (theta > ctrl.theta_tol * r2)
        ctrl.h /= ctrl.rho;
    else if (theta < ctrl.theta_tol / r2)
        ctrl.h *= ctrl.rho;
    ctrl.h = std::clamp(ctrl.h, ctrl.h_min, ctrl.h_max);
}

IntegrationResult integrate_controlled(const RhsFn& f, std::vector<double>& y,
                                       StepController& ctrl, long max_steps, double tol_eq,
                                       const StepObserver& observer) {
    IntegrationResult result;
    const size_t n = y.size();
    std::vector<double> f0(n), f1(n), y0(n);

    f(y, f0);
    result.rhs_norm = norm_inf(f0);
    while (!(result.converged = result.rhs_norm <= tol_eq) && result.steps + 2 <= max_steps) {
        const double h = ctrl.h;
        y0 = y;
        fe_step(y, h, f0);
        f(y, f1);
        fe_step(y, h, f1);
        result.steps += 2;

        const double theta = error_estimate(y0, f0, y, h);
        adjust_step(theta, ctrl);
        if (observer)
            observer(theta, h);

        f(y, f0);
        result.rhs_norm = norm_inf(f0);
    }
    return result;
}

IntegrationResult integrate_to_equilibrium(const Objective& obj, std::vector<double>& y,
                                           double temperature, StepController& ctrl,
                                           long max_steps, double tol_eq) {
    std::vector<double> phi(y.size());
    RhsFn f = [&](std::span<const double> state, std::span<double> out) {
        rhs(obj, state, temperature, phi, out);
    };
    return integrate_controlled(f, y, ctrl, max_steps, tol_eq);
}

BooleanSolution greedy_booleanize(const Objective& obj, const ExtendedRounding& y_hat) {
    const Partition& p = obj.partition();
    std::vector<double> x = y_hat.to_vector(p);
    BooleanSolution sol;
    sol.chosen.assign(static_cast<size_t>(p.num_blocks()), -1);
    for (int j = 0; j < p.num_blocks(); ++j) {
        const int off = p.offset(j);
        const int d = p.block_size(j);
        int unit = -1;
        bool boolean = true;
        for (int i = 0; i < d && boolean; ++i) {
            const double v = x[static_cast<size_t>(off + i)];
            if (v == 1.0 && unit < 0)
                unit = i;
            else if (v != 0.0)
                boolean = false;
        }
        if (boolean && unit >= 0)
            sol.chosen[static_cast<size_t>(j)] = unit;
    }

    std::vector<double> phi_j(static_cast<size_t>(p.max_block_size()));
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool changed = false;
        for (int j = 0; j < p.num_blocks(); ++j) {
            const int off = p.offset(j);
            const int d = p.block_size(j);
            auto slot = std::span<double>(phi_j).first(static_cast<size_t>(d));
            obj.block_gradient(x, j, slot);
            int best = 0;
            for (int i = 1; i < d; ++i)
                if (slot[static_cast<size_t>(i)] < slot[static_cast<size_t>(best)])
                    best = i;
            // keep the current assignment when it ties the minimum, so a
            // locally optimal Boolean input is a fixed point
            const int current = sol.chosen[static_cast<size_t>(j)];
            if (current >= 0 && slot[static_cast<size_t>(current)] <= slot[static_cast<size_t>(best)])
                best = current;
            if (sol.chosen[static_cast<size_t>(j)] != best) {
                sol.chosen[static_cast<size_t>(j)] = best;
                changed = true;
            }
            for (int i = 0; i < d; ++i)
                x[static_cast<size_t>(off + i)] = (i == best) ? 1.0 : 0.0;
        }
        if (!changed)
            break;
    }
    return sol;
}

SolveTrace anneal(const Objective& obj, std::vector<double> y0,
                  const AnnealSchedule& schedule, StepController ctrl) {
    if (!(schedule.gamma > 0.0 && schedule.gamma < 1.0))
        throw std::invalid_argument("anneal: gamma must lie in (0,1)");
    const Partition& p = obj.partition();
    SolveTrace trace;
    std::vector<double> y = std::move(y0);

    ExtendedRounding best_rounding;
    double best_eps = std::numeric_limits<double>::infinity();
    std::vector<double> best_y;
    ExtendedRounding prev_rounding;
    bool have_prev = false;
    int stall = 0;

    double temperature = schedule.t1;
    for (int s = 0; s < schedule.max_temps; ++s) {
        IntegrationResult res = integrate_to_equilibrium(obj, y, temperature, ctrl,
                                                         schedule.max_steps_per_temp,
                                                         schedule.tol_eq);
        ExtendedRounding rounding = round_to_extended(p, y);
        const double eps = rounding_distance(p, y, rounding);

        trace.temperatures.push_back({temperature, res.steps, res.rhs_norm, eps, !res.converged});
        trace.total_steps += res.steps;
        trace.any_step_limit_hit = trace.any_step_limit_hit || !res.converged;

        const bool same_rounding = have_prev && rounding.support == prev_rounding.support;
        prev_rounding = rounding;
        have_prev = true;
        if (eps < best_eps) {
            best_eps = eps;
            best_rounding = rounding;
            best_y = y;
        }
        // x is a deterministic function of the rounding, so an unchanged
        // rounding also means an unchanged Boolean solution
        stall = same_rounding ? stall + 1 : 0;

        if (eps < schedule.eps0) {
            trace.rounding_converged = true;
            best_eps = eps;
            best_rounding = std::move(rounding);
            best_y = y;
            break;
        }
        if (stall >= schedule.stall_limit)
            break;
        temperature *= schedule.gamma;
    }

    trace.y_bar = std::move(best_y);
    trace.y_hat = std::move(best_rounding);
    trace.solution = greedy_booleanize(obj, trace.y_hat);
    trace.value_bar = obj.value(trace.y_bar);
    trace.value_hat = obj.value(trace.y_hat.to_vector(p));
    trace.value = obj.value(trace.solution.to_vector(p));
    return trace;
}

} // namespace mcpp
