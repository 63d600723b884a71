#include "mcpp/validation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "mcpp/kernels.hpp"

namespace mcpp {

namespace {

long feasible_count(const Partition& p, long cap) {
    long count = 1;
    for (int d : p.block_sizes()) {
        count *= d;
        if (count > cap)
            return count;
    }
    return count;
}

int state_index(const Partition& p, const BooleanSolution& s) {
    int idx = 0;
    for (int j = 0; j < p.num_blocks(); ++j)
        idx = idx * p.block_size(j) + s.chosen[static_cast<size_t>(j)];
    return idx;
}

} // namespace

CTMCInstance build_ctmc(const Objective& obj, double temperature, long max_states) {
    const Partition& p = obj.partition();
    const long count = feasible_count(p, max_states);
    if (count > max_states)
        throw std::runtime_error("build_ctmc: state space exceeds budget of " +
                                 std::to_string(max_states) + " states");

    CTMCInstance ctmc{p, temperature, static_cast<int>(count), {}, {}, {}, {}};
    ctmc.states.reserve(static_cast<size_t>(count));
    ctmc.energy.reserve(static_cast<size_t>(count));
    ctmc.exit_rate.assign(static_cast<size_t>(count), 0.0);

    BooleanSolution s;
    s.chosen.assign(static_cast<size_t>(p.num_blocks()), 0);
    for (long idx = 0; idx < count; ++idx) {
        ctmc.states.push_back(s);
        ctmc.energy.push_back(obj.value(s.to_vector(p)));
        // advance mixed-radix counter (last block fastest, matching state_index)
        int j = p.num_blocks() - 1;
        while (j >= 0 && ++s.chosen[static_cast<size_t>(j)] == p.block_size(j)) {
            s.chosen[static_cast<size_t>(j)] = 0;
            --j;
        }
    }

    const double beta = 1.0 / temperature;
    std::vector<double> phi_j;
    std::vector<double> rates;
    for (int from = 0; from < ctmc.num_states; ++from) {
        const std::vector<double> x = ctmc.states[static_cast<size_t>(from)].to_vector(p);
        for (int j = 0; j < p.num_blocks(); ++j) {
            const int d = p.block_size(j);
            phi_j.assign(static_cast<size_t>(d), 0.0);
            obj.block_gradient(x, j, phi_j);
            for (double& v : phi_j)
                v = -v;
            rates.assign(static_cast<size_t>(d), 0.0);
            softmax(phi_j, beta, rates);

            BooleanSolution target = ctmc.states[static_cast<size_t>(from)];
            const int here = target.chosen[static_cast<size_t>(j)];
            for (int i = 0; i < d; ++i) {
                if (i == here)
                    continue;
                target.chosen[static_cast<size_t>(j)] = i;
                const int to = state_index(p, target);
                ctmc.transitions.push_back({from, to, rates[static_cast<size_t>(i)]});
                ctmc.exit_rate[static_cast<size_t>(from)] += rates[static_cast<size_t>(i)];
            }
        }
    }
    return ctmc;
}

double check_detailed_balance(const CTMCInstance& ctmc) {
    const double fmin = *std::min_element(ctmc.energy.begin(), ctmc.energy.end());
    const double beta = 1.0 / ctmc.temperature;

    // index forward rates for pair lookup
    std::vector<std::vector<std::pair<int, double>>> out(static_cast<size_t>(ctmc.num_states));
    for (const auto& t : ctmc.transitions)
        out[static_cast<size_t>(t.from)].push_back({t.to, t.rate});

    double residual = 0.0;
    for (const auto& t : ctmc.transitions) {
        double reverse = 0.0;
        for (const auto& [to, rate] : out[static_cast<size_t>(t.to)])
            if (to == t.from) {
                reverse = rate;
                break;
            }
        const double flow_fwd =
            std::exp(-beta * (ctmc.energy[static_cast<size_t>(t.from)] - fmin)) * t.rate;
        const double flow_rev =
            std::exp(-beta * (ctmc.energy[static_cast<size_t>(t.to)] - fmin)) * reverse;
        residual = std::max(residual, std::abs(flow_fwd - flow_rev));
    }
    return residual;
}

std::vector<double> boltzmann_distribution(const CTMCInstance& ctmc) {
    const double fmin = *std::min_element(ctmc.energy.begin(), ctmc.energy.end());
    const double beta = 1.0 / ctmc.temperature;
    std::vector<double> p(static_cast<size_t>(ctmc.num_states));
    double total = 0.0;
    for (int i = 0; i < ctmc.num_states; ++i) {
        p[static_cast<size_t>(i)] = std::exp(-beta * (ctmc.energy[static_cast<size_t>(i)] - fmin));
        total += p[static_cast<size_t>(i)];
    }
    for (double& v : p)
        v /= total;
    return p;
}

std::vector<double> boltzmann_mean(const CTMCInstance& ctmc) {
    const std::vector<double> p = boltzmann_distribution(ctmc);
    std::vector<double> mean(static_cast<size_t>(ctmc.partition.size()), 0.0);
    for (int i = 0; i < ctmc.num_states; ++i) {
        const std::vector<double> x = ctmc.states[static_cast<size_t>(i)].to_vector(ctmc.partition);
        for (size_t l = 0; l < mean.size(); ++l)
            mean[l] += p[static_cast<size_t>(i)] * x[l];
    }
    return mean;
}

std::vector<double> stationary_distribution(const CTMCInstance& ctmc) {
    const int n = ctmc.num_states;
    if (n > 4096)
        throw std::runtime_error("stationary_distribution: dense solve limited to 4096 states");
    // rows of M: (Q^T pi)_x = 0, last row replaced by the normalization
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& t : ctmc.transitions)
        m(t.to, t.from) += t.rate;
    for (int i = 0; i < n; ++i)
        m(i, i) -= ctmc.exit_rate[static_cast<size_t>(i)];
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j)
        m(n - 1, j) = 1.0;
    rhs(n - 1) = 1.0;

    Eigen::VectorXd pi = m.colPivHouseholderQr().solve(rhs);
    return std::vector<double>(pi.data(), pi.data() + n);
}

ForwardEvolution integrate_forward_equation(const CTMCInstance& ctmc, std::vector<double> p0,
                                            double t_end, double dt) {
    if (static_cast<int>(p0.size()) != ctmc.num_states)
        throw std::invalid_argument("integrate_forward_equation: distribution size mismatch");
    const double max_exit = *std::max_element(ctmc.exit_rate.begin(), ctmc.exit_rate.end());
    if (!(dt > 0.0) || 1.0 - dt * max_exit < 0.0)
        throw std::invalid_argument("integrate_forward_equation: unstable dt, need dt <= " +
                                    std::to_string(1.0 / max_exit));

    std::vector<double> p = std::move(p0);
    std::vector<double> dp(p.size());
    const long steps = static_cast<long>(std::ceil(t_end / dt));
    for (long s = 0; s < steps; ++s) {
        const double h = std::min(dt, t_end - static_cast<double>(s) * dt);
        std::fill(dp.begin(), dp.end(), 0.0);
        for (const auto& t : ctmc.transitions) {
            const double flow = t.rate * p[static_cast<size_t>(t.from)];
            dp[static_cast<size_t>(t.to)] += flow;
            dp[static_cast<size_t>(t.from)] -= flow;
        }
        for (size_t i = 0; i < p.size(); ++i)
            p[i] += h * dp[i];
    }

    ForwardEvolution result;
    result.mean.assign(static_cast<size_t>(ctmc.partition.size()), 0.0);
    for (int i = 0; i < ctmc.num_states; ++i) {
        const std::vector<double> x = ctmc.states[static_cast<size_t>(i)].to_vector(ctmc.partition);
        for (size_t l = 0; l < result.mean.size(); ++l)
            result.mean[l] += p[static_cast<size_t>(i)] * x[l];
    }
    result.distribution = std::move(p);
    return result;
}

LocalOptimalityVerdict check_local_optimality(const Objective& obj, std::span<const double> x,
                                              double tolerance, long max_candidates) {
    const Partition& p = obj.partition();
    long budget = 0;
    for (int d : p.block_sizes())
        budget += (1L << d) - 1;
    if (budget > max_candidates)
        throw std::runtime_error("check_local_optimality: candidate budget exceeded");

    const double f0 = obj.value(x);
    std::vector<double> probe(x.begin(), x.end());
    LocalOptimalityVerdict verdict;
    for (int j = 0; j < p.num_blocks(); ++j) {
        const int off = p.offset(j);
        const int d = p.block_size(j);
        for (unsigned mask = 1; mask < (1u << d); ++mask) {
            const double val = 1.0 / std::popcount(mask);
            for (int i = 0; i < d; ++i)
                probe[static_cast<size_t>(off + i)] = (mask >> i) & 1u ? val : 0.0;
            const double f = obj.value(probe);
            if (f < f0 - tolerance) {
                verdict.optimal = false;
                verdict.block = j;
                verdict.improvement = f0 - f;
                for (int i = 0; i < d; ++i)
                    if ((mask >> i) & 1u)
                        verdict.improving_support.push_back(i);
                return verdict;
            }
        }
        for (int i = 0; i < d; ++i)
            probe[static_cast<size_t>(off + i)] = x[static_cast<size_t>(off + i)];
    }
    return verdict;
}

double lipschitz_bound(const Objective& obj, long max_vertices) {
    const Partition& p = obj.partition();
    const int n = p.size();
    if (n >= 63 || (1L << n) > max_vertices)
        throw std::runtime_error("lipschitz_bound: vertex budget exceeded");

    // Each gradient entry is multilinear, so its partial derivative with
    // respect to x_k is the exact difference of gradients at x_k = 1 and 0,
    // and the max of sum_k |d Phi / d x_k| over [0,1]^n sits at a vertex.
    std::vector<double> v(static_cast<size_t>(n));
    std::vector<double> hi(static_cast<size_t>(n)), lo(static_cast<size_t>(n));
    std::vector<double> acc(static_cast<size_t>(n));
    double bound = 0.0;
    for (long vertex = 0; vertex < (1L << n); ++vertex) {
        for (int i = 0; i < n; ++i)
            v[static_cast<size_t>(i)] = (vertex >> i) & 1L ? 1.0 : 0.0;
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int k = 0; k < n; ++k) {
            const double saved = v[static_cast<size_t>(k)];
            v[static_cast<size_t>(k)] = 1.0;
            obj.block_gradients(v, hi);
            v[static_cast<size_t>(k)] = 0.0;
            obj.block_gradients(v, lo);
            v[static_cast<size_t>(k)] = saved;
            for (int l = 0; l < n; ++l)
                acc[static_cast<size_t>(l)] += std::abs(hi[static_cast<size_t>(l)] - lo[static_cast<size_t>(l)]);
        }
        for (int l = 0; l < n; ++l)
            bound = std::max(bound, acc[static_cast<size_t>(l)]);
    }
    return bound;
}

std::optional<double> minimal_gap(const Objective& obj, long max_elements) {
    const Partition& p = obj.partition();
    long count = 1;
    for (int d : p.block_sizes()) {
        count *= (1L << d) - 1;
        if (count > max_elements)
            throw std::runtime_error("minimal_gap: extended-set budget exceeded");
    }

    std::vector<unsigned> masks(static_cast<size_t>(p.num_blocks()), 1u);
    std::vector<double> x(static_cast<size_t>(p.size()));
    std::vector<double> phi(static_cast<size_t>(p.size()));
    std::optional<double> gap;
    for (long e = 0; e < count; ++e) {
        for (int j = 0; j < p.num_blocks(); ++j) {
            const unsigned mask = masks[static_cast<size_t>(j)];
            const double val = 1.0 / std::popcount(mask);
            for (int i = 0; i < p.block_size(j); ++i)
                x[static_cast<size_t>(p.offset(j) + i)] = (mask >> i) & 1u ? val : 0.0;
        }
        obj.block_gradients(x, phi);
        for (int j = 0; j < p.num_blocks(); ++j) {
            const int off = p.offset(j);
            const int d = p.block_size(j);
            for (int a = 0; a < d; ++a)
                for (int b = a + 1; b < d; ++b) {
                    const double diff = std::abs(phi[static_cast<size_t>(off + a)] -
                                                 phi[static_cast<size_t>(off + b)]);
                    if (diff > 1e-12 && (!gap || diff < *gap))
                        gap = diff;
                }
        }
        // next extended element
        int j = p.num_blocks() - 1;
        while (j >= 0) {
            unsigned& mask = masks[static_cast<size_t>(j)];
            if (++mask < (1u << p.block_size(j)))
                break;
            mask = 1u;
            --j;
        }
    }
    return gap;
}

Certificate certify_equilibrium(const Objective& obj, std::span<const double> y_bar,
                                double temperature) {
    const Partition& p = obj.partition();
    Certificate cert;
    cert.temperature = temperature;
    cert.d_hat = p.max_block_size();
    cert.rounding = round_to_extended(p, y_bar);
    cert.eps = rounding_distance(p, y_bar, cert.rounding);
    cert.lipschitz = lipschitz_bound(obj);

    const std::optional<double> gap = minimal_gap(obj);
    cert.gap_vacuous = !gap.has_value();
    cert.gap = gap.value_or(0.0);

    // Strict inequalities hold with a relative safety margin so that cases
    // where the exact quantities are equal (and the conclusion genuinely
    // fails) cannot pass on floating-point rounding of the left-hand side.
    const double margin = 1.0 + 1e-9;

    const double de = cert.d_hat * cert.eps;
    cert.cond_separation = de < 0.5;
    if (cert.eps == 0.0) {
        cert.cond_temperature = true;
    } else if (cert.cond_separation) {
        const double log_term = std::log(1.0 / de - 1.0);
        cert.cond_temperature =
            log_term > 0.0 && cert.eps / log_term * margin < temperature / (2.0 * cert.lipschitz);
    }
    if (cert.gap_vacuous) {
        cert.cond_gap = true; // no differing gradient pairs to separate
    } else {
        cert.cond_gap = cert.cond_separation &&
                        (temperature * std::log((1.0 + de) / (1.0 - de)) +
                         2.0 * cert.lipschitz * cert.eps) *
                                margin <
                            cert.gap;
    }

    const double gap_bound = cert.gap_vacuous
                                 ? std::numeric_limits<double>::infinity()
                                 : cert.gap / (3.0 * cert.d_hat * temperature + 2.0 * cert.lipschitz);
    const double temp_bound = cert.lipschitz > 0.0
                                  ? temperature / (2.0 * cert.lipschitz)
                                  : std::numeric_limits<double>::infinity();
    cert.concise_bound =
        cert.eps * margin < std::min({1.0 / (4.0 * cert.d_hat), temp_bound, gap_bound});
    return cert;
}

std::vector<double> finite_difference_gradient(const Objective& obj, std::span<const double> y,
                                               double step) {
    std::vector<double> probe(y.begin(), y.end());
    std::vector<double> grad(y.size());
    for (size_t i = 0; i < y.size(); ++i) {
        const double saved = probe[i];
        probe[i] = saved + step;
        const double fplus = obj.value(probe);
        probe[i] = saved - step;
        const double fminus = obj.value(probe);
        probe[i] = saved;
        grad[i] = (fplus - fminus) / (2.0 * step);
    }
    return grad;
}

} // namespace mcpp
