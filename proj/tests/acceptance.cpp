// Acceptance suite: one line of output per criterion, nonzero exit when any
// asserted criterion fails. argv[1] names a data directory searched for
// optional benchmark inputs (g1.txt); those criteria SKIP when absent.

#include <algorithm>
#include <numeric>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "mcpp/kernels.hpp"
#include "mcpp/maxcut.hpp"
#include "mcpp/polynomial.hpp"
#include "mcpp/random.hpp"
#include "mcpp/solver.hpp"
#include "mcpp/stardisc.hpp"
#include "mcpp/trials.hpp"
#include "mcpp/validation.hpp"

#include "oracles.hpp"

using namespace mcpp;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", id, name,
                detail.c_str());
    std::fflush(stdout);
    if (!ok)
        ++failures;
}

void report_skip(int id, const char* name, const std::string& reason) {
    std::printf("[SKIP] criterion %2d: %s (%s)\n", id, name, reason.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

// 1. Block sums stay at 1 along long trajectories at mixed temperatures.
void criterion_1() {
    SplitMix64 rng(1001);
    double worst = 0.0;
    for (int inst = 0; inst < 20; ++inst) {
        const int m = 1 + static_cast<int>(rng.next() % 10);
        std::vector<int> sizes;
        for (int j = 0; j < m; ++j)
            sizes.push_back(2 + static_cast<int>(rng.next() % 4));
        Partition p(sizes);
        PolynomialObjective obj = oracles::random_polynomial(p, rng);
        const double temp = std::pow(10.0, 2.0 * rng.uniform() - 1.0); // 0.1 .. 10
        std::vector<double> y = sample_initial(p, rng.next());
        std::vector<double> phi(y.size());
        StepController ctrl;
        RhsFn f = [&](std::span<const double> state, std::span<double> out) {
            rhs(obj, state, temp, phi, out);
        };
        integrate_controlled(f, y, ctrl, 10000, 0.0, [&](double, double) {
            for (double s : block_sums(p, y))
                worst = std::max(worst, std::abs(s - 1.0));
        });
    }
    report(1, "constraint conservation over 10^4 steps", worst <= 1e-12,
           "max |S_j - 1| = " + fmt(worst));
}

// 2. Exact chains: detailed balance and stationarity against the Boltzmann law.
void criterion_2() {
    SplitMix64 rng(1002);
    double worst_balance = 0.0, worst_stationary = 0.0;
    for (int inst = 0; inst < 20; ++inst) {
        std::vector<int> sizes;
        long states = 1;
        while (true) {
            const int d = 2 + static_cast<int>(rng.next() % 3);
            if (states * d > 256 || (sizes.size() >= 2 && rng.uniform() < 0.4))
                break;
            sizes.push_back(d);
            states *= d;
        }
        if (sizes.size() < 2)
            sizes.push_back(2);
        Partition p(sizes);
        PolynomialObjective obj = oracles::random_polynomial(p, rng);
        CTMCInstance ctmc = build_ctmc(obj, 0.2 + 2.0 * rng.uniform());
        worst_balance = std::max(worst_balance, check_detailed_balance(ctmc));
        auto pi = stationary_distribution(ctmc);
        auto boltzmann = boltzmann_distribution(ctmc);
        for (size_t i = 0; i < pi.size(); ++i)
            worst_stationary = std::max(worst_stationary, std::abs(pi[i] - boltzmann[i]));
    }
    report(2, "detailed balance and stationarity",
           worst_balance <= 1e-12 && worst_stationary <= 1e-10,
           "balance " + fmt(worst_balance) + ", stationary " + fmt(worst_stationary));
}

// 3. Single-block equilibria coincide with the exact stationary mean.
void criterion_3() {
    SplitMix64 rng(1003);
    double worst = 0.0;
    for (int d : {2, 3, 5}) {
        Partition p({d});
        std::vector<Term> terms;
        for (int v = 0; v < d; ++v)
            terms.push_back({2.0 * rng.uniform() - 1.0, {v}});
        PolynomialObjective obj(p, terms);
        for (double temp : {0.1, 1.0, 10.0}) {
            std::vector<double> y = sample_initial(p, rng.next());
            StepController ctrl;
            integrate_to_equilibrium(obj, y, temp, ctrl, 500000, 1e-14);
            auto mean = boltzmann_mean(build_ctmc(obj, temp));
            for (size_t i = 0; i < y.size(); ++i)
                worst = std::max(worst, std::abs(y[i] - mean[i]));
        }
    }
    report(3, "single-block mean-field exactness", worst <= 1e-12,
           "max gap " + fmt(worst));
}

// 4. Frontend gradients match finite differences and the naive oracles.
void criterion_4() {
    SplitMix64 rng(1004);
    double worst_fd = 0.0, worst_naive = 0.0;

    for (int rep = 0; rep < 3; ++rep) {
        const int n = 30 + static_cast<int>(rng.next() % 21); // up to 50
        Graph g = oracles::random_graph(n, 0.15, rng, true);
        const int k = 2 + static_cast<int>(rng.next() % 3);
        MaxKCutObjective obj(g, k);
        auto y = sample_initial(obj.partition(), rng.next());
        std::vector<double> phi(y.size());
        obj.block_gradients(y, phi);
        auto dense = oracles::dense_maxcut_gradient(g, k, y);
        auto fd = finite_difference_gradient(obj, y);
        for (size_t i = 0; i < phi.size(); ++i) {
            worst_naive = std::max(worst_naive, std::abs(phi[i] - dense[i]));
            worst_fd = std::max(worst_fd,
                                std::abs(phi[i] - fd[i]) / std::max(1.0, std::abs(phi[i])));
        }
    }

    for (int rep = 0; rep < 3; ++rep) {
        const int n_pts = 20 + static_cast<int>(rng.next() % 31); // up to 50
        const int dim = 2 + static_cast<int>(rng.next() % 4);     // up to 5
        PointSet pts = oracles::random_point_set(n_pts, dim, rng);
        GridIndex grid = preprocess(pts);
        for (DiscrepancyKind kind : {DiscrepancyKind::Open, DiscrepancyKind::Closed}) {
            DiscrepancyObjective obj(grid, kind);
            auto y = sample_initial(obj.partition(), rng.next());
            std::vector<double> phi(y.size());
            obj.block_gradients(y, phi);
            auto naive = oracles::naive_stardisc_gradient(grid, kind, y);
            auto fd = finite_difference_gradient(obj, y);
            for (size_t i = 0; i < phi.size(); ++i) {
                worst_naive = std::max(worst_naive, std::abs(phi[i] - naive[i]));
                worst_fd = std::max(worst_fd,
                                    std::abs(phi[i] - fd[i]) / std::max(1.0, std::abs(phi[i])));
            }
        }
    }

    report(4, "frontend gradient correctness", worst_fd <= 1e-6 && worst_naive <= 1e-10,
           "fd rel " + fmt(worst_fd) + ", naive abs " + fmt(worst_naive));
}

// 5. Surrogate maxima over Boolean states equal the exact grid maxima.
void criterion_5() {
    SplitMix64 rng(1005);
    double worst = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const int n_pts = 2 + static_cast<int>(rng.next() % 5);
        PointSet pts = oracles::random_point_set(n_pts, 2, rng);
        GridIndex grid = preprocess(pts);
        DiscrepancyObjective open_obj(grid, DiscrepancyKind::Open);
        DiscrepancyObjective closed_obj(grid, DiscrepancyKind::Closed);

        double best_open = -1e300, best_closed = -1e300;
        std::vector<double> u(2);
        for (int p1 = 1; p1 <= n_pts + 1; ++p1)
            for (int p2 = 1; p2 <= n_pts + 1; ++p2) {
                u[0] = grid.sorted_value(0, p1);
                u[1] = grid.sorted_value(1, p2);
                best_open = std::max(best_open, eval_D(u, pts));
                if (p1 <= n_pts && p2 <= n_pts)
                    best_closed = std::max(best_closed, eval_Dbar(u, pts));
            }
        worst = std::max(worst,
                         std::abs(oracles::enumerate_surrogate_max(open_obj) - best_open));
        worst = std::max(worst,
                         std::abs(oracles::enumerate_surrogate_max(closed_obj) - best_closed));
    }
    report(5, "surrogate/exact enumeration equivalence", worst <= 1e-12,
           "max deviation " + fmt(worst));
}

// 6. Star-discrepancy solves are sound lower bounds and reach near-exact
//    values on most random instances.
void criterion_6() {
    SplitMix64 rng(1006);
    int good = 0;
    bool sound = true;
    const int sets = 30;
    for (int rep = 0; rep < sets; ++rep) {
        const int n_pts = 8 + static_cast<int>(rng.next() % 9); // 8..16
        const int dim = 2 + static_cast<int>(rng.next() % 2);
        PointSet pts = oracles::random_point_set(n_pts, dim, rng);
        const double exact = exact_star_discrepancy(pts);

        AnnealSchedule schedule = default_stardisc_schedule();
        StepController ctrl = default_stardisc_controller(pts);
        StarDiscResult res = solve_stardisc(pts, 30, schedule, ctrl, rng.next());
        sound = sound && res.best_value <= exact + 1e-12;
        good += res.best_value >= 0.95 * exact - 1e-12;
    }
    report(6, "star-discrepancy soundness and quality",
           sound && good * 10 >= sets * 8,
           std::string("sound ") + (sound ? "yes" : "NO") + ", near-exact " +
               std::to_string(good) + "/" + std::to_string(sets));
}

// 7. Benchmark graph regression, driven by an optional data file.
void criterion_7(const std::filesystem::path& data_dir) {
    const std::filesystem::path path = data_dir / "g1.txt";
    if (!std::filesystem::exists(path)) {
        report_skip(7, "benchmark graph g1 regression (k=2, best of 20 >= 11391)",
                    "data file " + path.string() + " not present in this environment");
        return;
    }
    Graph g = load_gset(path.string());
    AnnealSchedule schedule; // t1 = 3
    StepController ctrl;
    const auto t0 = std::chrono::steady_clock::now();
    MaxCutResult res = solve_maxkcut(g, 2, 20, schedule, ctrl, 1);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(7, "benchmark graph g1 regression (k=2, best of 20 >= 11391)",
           res.best_cut >= 11391.0,
           "best cut " + fmt(res.best_cut) + " in " + fmt(secs) + "s");
}

// 8. Tiny graphs: results always locally optimal, brute-force optimum found
//    on at least 90% of instances.
void criterion_8() {
    SplitMix64 rng(1008);
    const int instances = 50;
    int optimal = 0;
    bool always_local = true;
    for (int inst = 0; inst < instances; ++inst) {
        const int n = 4 + static_cast<int>(rng.next() % 7); // 4..10
        Graph g = oracles::random_graph(n, 0.6, rng, rng.uniform() < 0.3);
        if (g.edges.empty())
            g = make_graph(n, {{0, 1, 1.0}});
        const int k = 2 + static_cast<int>(rng.next() % 2);
        const double brute = oracles::brute_force_max_cut(g, k);

        AnnealSchedule schedule;
        schedule.t1 = 0.5; // moderate start for these scales
        MaxKCutObjective obj(g, k);
        MaxCutResult res = solve_maxkcut(g, k, 20, schedule, StepController{}, rng.next());

        // the Boolean sub-case of local optimality: no single-block
        // unit-vector replacement may improve any trial's solution
        for (const auto& t : res.trials) {
            const double fx = t.trace.value;
            BooleanSolution probe = t.trace.solution;
            for (int j = 0; j < obj.partition().num_blocks(); ++j) {
                const int keep = probe.chosen[static_cast<size_t>(j)];
                for (int i = 0; i < k; ++i) {
                    probe.chosen[static_cast<size_t>(j)] = i;
                    if (obj.value(probe.to_vector(obj.partition())) < fx - 1e-12)
                        always_local = false;
                }
                probe.chosen[static_cast<size_t>(j)] = keep;
            }
        }
        optimal += std::abs(res.best_cut - brute) <= 1e-9;
    }
    report(8, "exhaustive-optimum recovery on tiny graphs",
           always_local && optimal * 10 >= instances * 9,
           std::string("local-opt ") + (always_local ? "yes" : "NO") + ", optimum " +
               std::to_string(optimal) + "/" + std::to_string(instances));
}

// 9. Rounding and greedy contracts on random solves.
void criterion_9() {
    SplitMix64 rng(1009);
    bool monotone = true;
    for (int inst = 0; inst < 30; ++inst) {
        const int m = 2 + static_cast<int>(rng.next() % 4);
        std::vector<int> sizes;
        for (int j = 0; j < m; ++j)
            sizes.push_back(2 + static_cast<int>(rng.next() % 3));
        Partition p(sizes);
        PolynomialObjective obj = oracles::random_polynomial(p, rng);
        AnnealSchedule schedule;
        schedule.t1 = 0.5;
        SolveTrace trace = anneal(obj, sample_initial(p, rng.next()), schedule, StepController{});
        monotone = monotone && trace.value <= trace.value_hat + 1e-12;
    }

    // Planted-rounding recovery under perturbations below the radius.  The
    // multiplicity estimate floor(1/eta + 1/2) only tolerates entrywise noise
    // of order 1/(2 r^2) for a support of size r, so at radius 1/(4 * dhat)
    // we restrict the planted supports to the sizes where recovery is
    // actually guaranteed.
    bool recovered = true;
    Partition p({3, 4, 2, 5});
    const double radius = 0.999 / (4.0 * p.max_block_size());
    for (int rep = 0; rep < 200; ++rep) {
        ExtendedRounding planted;
        for (int j = 0; j < p.num_blocks(); ++j) {
            const int d = p.block_size(j);
            std::vector<int> sizes;
            for (int r = 1; r <= d; ++r) {
                double tol = 1.0 / (r * (2.0 * r - 1.0));
                if (r < d)
                    tol = std::min(tol, 1.0 / (r * (2.0 * r + 1.0)));
                if (tol >= radius)
                    sizes.push_back(r);
            }
            const int r = sizes[rng.next() % sizes.size()];
            std::vector<int> idx(static_cast<size_t>(d));
            std::iota(idx.begin(), idx.end(), 0);
            for (int i = 0; i < r; ++i) {
                const int pick = i + static_cast<int>(rng.next() % static_cast<uint64_t>(d - i));
                std::swap(idx[static_cast<size_t>(i)], idx[static_cast<size_t>(pick)]);
            }
            idx.resize(static_cast<size_t>(r));
            std::sort(idx.begin(), idx.end());
            planted.support.push_back(std::move(idx));
        }
        std::vector<double> y = planted.to_vector(p);
        for (double& v : y)
            v += radius * (2.0 * rng.uniform() - 1.0);
        recovered = recovered && round_to_extended(p, y).support == planted.support;
    }

    report(9, "rounding and greedy contracts", monotone && recovered,
           std::string("greedy monotone ") + (monotone ? "yes" : "NO") +
               ", planted recovery " + (recovered ? "yes" : "NO"));
}

// 10. Whenever the equilibrium certificate passes, the rounding is a local
//     optimum; no counterexamples allowed.
void criterion_10() {
    SplitMix64 rng(1010);
    int passed = 0, counterexamples = 0;
    for (int inst = 0; inst < 100; ++inst) {
        const int m = 1 + static_cast<int>(rng.next() % 3);
        std::vector<int> sizes;
        for (int j = 0; j < m; ++j)
            sizes.push_back(2 + static_cast<int>(rng.next() % 2));
        Partition p(sizes);
        PolynomialObjective obj = oracles::random_polynomial(p, rng);
        AnnealSchedule schedule;
        schedule.t1 = 0.5;
        SolveTrace trace = anneal(obj, sample_initial(p, rng.next()), schedule, StepController{});
        // refine to an exact equilibrium: the certificate hypotheses concern
        // the equilibrium itself, not the integrator's approximation of it
        const double temp = trace.temperatures.back().temperature;
        std::vector<double> y = trace.y_bar;
        StepController refine_ctrl;
        integrate_to_equilibrium(obj, y, temp, refine_ctrl, 500000, 1e-14);
        Certificate cert = certify_equilibrium(obj, y, temp);
        if (cert.passes()) {
            ++passed;
            if (!check_local_optimality(obj, cert.rounding.to_vector(p)).optimal)
                ++counterexamples;
        }
        if (cert.concise_bound && !cert.passes())
            ++counterexamples; // the single bound must imply all three conditions
    }
    report(10, "certificate soundness", counterexamples == 0 && passed > 0,
           std::to_string(passed) + " certified, " + std::to_string(counterexamples) +
               " counterexamples");
}

} // namespace

int main(int argc, char** argv) {
    const std::filesystem::path data_dir = argc > 1 ? argv[1] : "data";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7(data_dir);
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all asserted criteria passed\n");
    return 0;
}
