#include "mcpp/stardisc.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mcpp {

PointSet parse_pointset(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok)
                return true;
        }
        return false;
    };

    if (!next_line())
        throw std::runtime_error("pointset parse: empty input");
    PointSet pts;
    {
        std::istringstream header(line);
        if (!(header >> pts.count >> pts.dimension) || pts.count < 1 || pts.dimension < 1)
            throw std::runtime_error("pointset parse: bad header at line " +
                                     std::to_string(line_no));
    }
    pts.coords.reserve(static_cast<size_t>(pts.count) * static_cast<size_t>(pts.dimension));
    for (int i = 0; i < pts.count; ++i) {
        if (!next_line())
            throw std::runtime_error("pointset parse: expected " + std::to_string(pts.count) +
                                     " rows, input ended at line " + std::to_string(line_no));
        std::istringstream row(line);
        for (int j = 0; j < pts.dimension; ++j) {
            double v = 0.0;
            if (!(row >> v))
                throw std::runtime_error("pointset parse: malformed row at line " +
                                         std::to_string(line_no));
            if (!(v >= 0.0 && v < 1.0))
                throw std::runtime_error("pointset parse: coordinate outside [0,1) at line " +
                                         std::to_string(line_no));
            pts.coords.push_back(v);
        }
    }
    return pts;
}

PointSet parse_pointset(const std::string& text) {
    std::istringstream in(text);
    return parse_pointset(in);
}

PointSet load_pointset(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open point-set file: " + path);
    return parse_pointset(in);
}

GridIndex preprocess(const PointSet& pts) {
    GridIndex grid;
    grid.count = pts.count;
    grid.dimension = pts.dimension;
    grid.sorted.resize(static_cast<size_t>(pts.dimension));
    grid.rank.assign(static_cast<size_t>(pts.count),
                     std::vector<int>(static_cast<size_t>(pts.dimension), 0));

    std::vector<int> order(static_cast<size_t>(pts.count));
    for (int j = 0; j < pts.dimension; ++j) {
        std::iota(order.begin(), order.end(), 0);
        // stable: equal coordinates keep original point order
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return pts.coord(a, j) < pts.coord(b, j);
        });
        auto& col = grid.sorted[static_cast<size_t>(j)];
        col.resize(static_cast<size_t>(pts.count) + 1);
        for (int pos = 0; pos < pts.count; ++pos) {
            col[static_cast<size_t>(pos)] = pts.coord(order[static_cast<size_t>(pos)], j);
            grid.rank[static_cast<size_t>(order[static_cast<size_t>(pos)])]
                     [static_cast<size_t>(j)] = pos + 1;
        }
        col[static_cast<size_t>(pts.count)] = 1.0;
    }
    return grid;
}

double eval_D(std::span<const double> u, const PointSet& pts) {
    int count = 0;
    for (int i = 0; i < pts.count; ++i) {
        bool inside = true;
        for (int j = 0; j < pts.dimension && inside; ++j)
            inside = pts.coord(i, j) < u[static_cast<size_t>(j)];
        count += inside;
    }
    double vol = 1.0;
    for (int j = 0; j < pts.dimension; ++j)
        vol *= u[static_cast<size_t>(j)];
    return vol - static_cast<double>(count) / pts.count;
}

double eval_Dbar(std::span<const double> u, const PointSet& pts) {
    int count = 0;
    for (int i = 0; i < pts.count; ++i) {
        bool inside = true;
        for (int j = 0; j < pts.dimension && inside; ++j)
            inside = pts.coord(i, j) <= u[static_cast<size_t>(j)];
        count += inside;
    }
    double vol = 1.0;
    for (int j = 0; j < pts.dimension; ++j)
        vol *= u[static_cast<size_t>(j)];
    return static_cast<double>(count) / pts.count - vol;
}

DiscrepancyObjective::DiscrepancyObjective(const GridIndex& grid, DiscrepancyKind kind)
    : grid_(grid),
      kind_(kind),
      block_len_(kind == DiscrepancyKind::Open ? grid.count + 1 : grid.count),
      partition_(Partition::uniform(grid.dimension, block_len_)) {}

double DiscrepancyObjective::value(std::span<const double> y) const {
    const int n_pts = grid_.count;
    const int d = grid_.dimension;
    const int len = block_len_;

    // nu = prod_j sum_i y_i ubar_ij; alpha = sum over points of prod_j of a
    // suffix sum of the block state above (Open) or from (Closed) the rank
    double nu = 1.0;
    std::vector<double> suffix(static_cast<size_t>(len) + 1);
    std::vector<double> point_prod(static_cast<size_t>(n_pts), 1.0);
    for (int j = 0; j < d; ++j) {
        const int off = j * len;
        double b = 0.0;
        suffix[static_cast<size_t>(len)] = 0.0;
        for (int p = len - 1; p >= 0; --p)
            suffix[static_cast<size_t>(p)] =
                suffix[static_cast<size_t>(p) + 1] + y[static_cast<size_t>(off + p)];
        for (int p = 0; p < len; ++p)
            b += y[static_cast<size_t>(off + p)] * grid_.sorted_value(j, p + 1);
        nu *= b;
        for (int i = 0; i < n_pts; ++i) {
            const int r = grid_.rank[static_cast<size_t>(i)][static_cast<size_t>(j)];
            const int from = (kind_ == DiscrepancyKind::Open) ? r : r - 1; // 0-based
            point_prod[static_cast<size_t>(i)] *= suffix[static_cast<size_t>(from)];
        }
    }
    double alpha = 0.0;
    for (int i = 0; i < n_pts; ++i)
        alpha += point_prod[static_cast<size_t>(i)];

    const double delta = (kind_ == DiscrepancyKind::Open)
                             ? nu - alpha / n_pts   // delta
                             : alpha / n_pts - nu;  // delta-bar
    return -delta;
}

void DiscrepancyObjective::block_gradients(std::span<const double> y,
                                           std::span<double> phi) const {
    const int n_pts = grid_.count;
    const int d = grid_.dimension;
    const int len = block_len_;

    std::vector<double> b(static_cast<size_t>(d));
    std::vector<double> z(static_cast<size_t>(n_pts) * static_cast<size_t>(d));
    std::vector<double> suffix(static_cast<size_t>(len) + 1);
    for (int j = 0; j < d; ++j) {
        const int off = j * len;
        suffix[static_cast<size_t>(len)] = 0.0;
        for (int p = len - 1; p >= 0; --p)
            suffix[static_cast<size_t>(p)] =
                suffix[static_cast<size_t>(p) + 1] + y[static_cast<size_t>(off + p)];
        double bj = 0.0;
        for (int p = 0; p < len; ++p)
            bj += y[static_cast<size_t>(off + p)] * grid_.sorted_value(j, p + 1);
        b[static_cast<size_t>(j)] = bj;
        for (int i = 0; i < n_pts; ++i) {
            const int r = grid_.rank[static_cast<size_t>(i)][static_cast<size_t>(j)];
            const int from = (kind_ == DiscrepancyKind::Open) ? r : r - 1;
            z[static_cast<size_t>(i) * static_cast<size_t>(d) + static_cast<size_t>(j)] =
                suffix[static_cast<size_t>(from)];
        }
    }

    // products excluding one dimension, assembled via prefix/suffix products
    // rather than dividing out, so near-zero factors stay harmless
    std::vector<double> b_excl(static_cast<size_t>(d));
    {
        std::vector<double> pre(static_cast<size_t>(d) + 1, 1.0), suf(static_cast<size_t>(d) + 1, 1.0);
        for (int j = 0; j < d; ++j)
            pre[static_cast<size_t>(j) + 1] = pre[static_cast<size_t>(j)] * b[static_cast<size_t>(j)];
        for (int j = d - 1; j >= 0; --j)
            suf[static_cast<size_t>(j)] = suf[static_cast<size_t>(j) + 1] * b[static_cast<size_t>(j)];
        for (int j = 0; j < d; ++j)
            b_excl[static_cast<size_t>(j)] = pre[static_cast<size_t>(j)] * suf[static_cast<size_t>(j) + 1];
    }
    std::vector<double> g_excl(static_cast<size_t>(n_pts) * static_cast<size_t>(d));
    {
        std::vector<double> pre(static_cast<size_t>(d) + 1), suf(static_cast<size_t>(d) + 1);
        for (int i = 0; i < n_pts; ++i) {
            const double* zi = &z[static_cast<size_t>(i) * static_cast<size_t>(d)];
            pre[0] = 1.0;
            for (int j = 0; j < d; ++j)
                pre[static_cast<size_t>(j) + 1] = pre[static_cast<size_t>(j)] * zi[j];
            suf[static_cast<size_t>(d)] = 1.0;
            for (int j = d - 1; j >= 0; --j)
                suf[static_cast<size_t>(j)] = suf[static_cast<size_t>(j) + 1] * zi[j];
            for (int j = 0; j < d; ++j)
                g_excl[static_cast<size_t>(i) * static_cast<size_t>(d) + static_cast<size_t>(j)] =
                    pre[static_cast<size_t>(j)] * suf[static_cast<size_t>(j) + 1];
        }
    }

    // d alpha / d x^(j)_i is a rank-ordered partial sum of the excluded
    // products: strictly below rank i for Open, up to rank i for Closed
    const double inv_n = 1.0 / n_pts;
    std::vector<double> h(static_cast<size_t>(len) + 1);
    for (int j = 0; j < d; ++j) {
        const int off = j * len;
        std::fill(h.begin(), h.end(), 0.0);
        for (int i = 0; i < n_pts; ++i) {
            const int r = grid_.rank[static_cast<size_t>(i)][static_cast<size_t>(j)];
            h[static_cast<size_t>(r)] +=
                g_excl[static_cast<size_t>(i) * static_cast<size_t>(d) + static_cast<size_t>(j)];
        }
        for (int p = 1; p <= len; ++p)
            h[static_cast<size_t>(p)] += h[static_cast<size_t>(p) - 1];
        for (int i = 1; i <= len; ++i) {
            const double dnu = grid_.sorted_value(j, i) * b_excl[static_cast<size_t>(j)];
            const double dalpha = (kind_ == DiscrepancyKind::Open)
                                      ? h[static_cast<size_t>(i) - 1]
                                      : h[static_cast<size_t>(i)];
            // phi is the gradient of f = -delta (Open) or -delta-bar (Closed)
            phi[static_cast<size_t>(off + i - 1)] = (kind_ == DiscrepancyKind::Open)
                                                        ? dalpha * inv_n - dnu
                                                        : dnu - dalpha * inv_n;
        }
    }
}

std::vector<double> DiscrepancyObjective::decode(const BooleanSolution& x) const {
    std::vector<double> u(static_cast<size_t>(grid_.dimension));
    for (int j = 0; j < grid_.dimension; ++j)
        u[static_cast<size_t>(j)] = grid_.sorted_value(j, x.chosen[static_cast<size_t>(j)] + 1);
    return u;
}

namespace {

// enumerate the Cartesian product of per-dimension candidate lists
template <typename Eval>
double enumerate_max(const std::vector<std::vector<double>>& candidates, Eval&& eval) {
    const int d = static_cast<int>(candidates.size());
    std::vector<int> idx(static_cast<size_t>(d), 0);
    std::vector<double> u(static_cast<size_t>(d));
    double best = -std::numeric_limits<double>::infinity();
    for (;;) {
        for (int j = 0; j < d; ++j)
            u[static_cast<size_t>(j)] = candidates[static_cast<size_t>(j)][static_cast<size_t>(idx[static_cast<size_t>(j)])];
        best = std::max(best, eval(u));
        int j = 0;
        while (j < d && ++idx[static_cast<size_t>(j)] ==
                            static_cast<int>(candidates[static_cast<size_t>(j)].size())) {
            idx[static_cast<size_t>(j)] = 0;
            ++j;
        }
        if (j == d)
            return best;
    }
}

} // namespace

double exact_star_discrepancy(const PointSet& pts, double max_states) {
    const double states = std::pow(static_cast<double>(pts.count) + 1.0, pts.dimension);
    if (states > max_states)
        throw std::runtime_error("exact_star_discrepancy: (N+1)^d = " + std::to_string(states) +
                                 " exceeds the enumeration budget " + std::to_string(max_states));

    GridIndex grid = preprocess(pts);
    std::vector<std::vector<double>> upper(static_cast<size_t>(pts.dimension));
    std::vector<std::vector<double>> lower(static_cast<size_t>(pts.dimension));
    for (int j = 0; j < pts.dimension; ++j) {
        // duplicates only re-evaluate the same corner; drop them
        std::vector<double> vals = grid.sorted[static_cast<size_t>(j)];
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        upper[static_cast<size_t>(j)] = vals; // Gamma-bar: point values and 1
        if (vals.back() == 1.0)
            vals.pop_back();
        lower[static_cast<size_t>(j)] = vals; // Gamma: point values only
    }

    const double d_open =
        enumerate_max(upper, [&](std::span<const double> u) { return eval_D(u, pts); });
    const double d_closed =
        enumerate_max(lower, [&](std::span<const double> u) { return eval_Dbar(u, pts); });
    return std::max(d_open, d_closed);
}

StepController default_stardisc_controller(const PointSet& pts) {
    StepController ctrl;
    ctrl.theta_tol = 1e-6 * pts.count * pts.dimension;
    return ctrl;
}

AnnealSchedule default_stardisc_schedule() {
    AnnealSchedule schedule;
    schedule.t1 = 1e-4;
    return schedule;
}

StarDiscResult solve_stardisc(const PointSet& pts, int trials, const AnnealSchedule& schedule,
                              const StepController& ctrl, uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("solve_stardisc: trials must be at least 1");
    GridIndex grid = preprocess(pts);
    DiscrepancyObjective open_obj(grid, DiscrepancyKind::Open);

    StarDiscResult result;
    result.open_trials = run_trials(open_obj, trials, seed, schedule, ctrl);
    result.best_value = -std::numeric_limits<double>::infinity();

    auto consider = [&](const DiscrepancyObjective& obj, const std::vector<TrialResult>& runs,
                        std::vector<double>& values, DiscrepancyKind kind) {
        values.reserve(runs.size());
        for (const TrialResult& run : runs) {
            std::vector<double> u = obj.decode(run.trace.solution);
            const double v = (kind == DiscrepancyKind::Open) ? eval_D(u, pts) : eval_Dbar(u, pts);
            values.push_back(v);
            if (v > result.best_value) {
                result.best_value = v;
                result.best_point = u;
                result.best_kind = kind;
                result.best_trial = run.trial;
            }
        }
    };
    consider(open_obj, result.open_trials, result.open_values, DiscrepancyKind::Open);

    if (grid.count < 2) {
        // A single point leaves one closed box per dimension, so there is
        // nothing to anneal; evaluate the unique candidate directly.
        std::vector<double> u(static_cast<size_t>(grid.dimension));
        for (int j = 0; j < grid.dimension; ++j)
            u[static_cast<size_t>(j)] = grid.sorted_value(j, 1);
        const double v = eval_Dbar(u, pts);
        result.closed_values.assign(static_cast<size_t>(trials), v);
        if (v > result.best_value) {
            result.best_value = v;
            result.best_point = u;
            result.best_kind = DiscrepancyKind::Closed;
            result.best_trial = 0;
        }
    } else {
        DiscrepancyObjective closed_obj(grid, DiscrepancyKind::Closed);
        result.closed_trials = run_trials(closed_obj, trials, seed, schedule, ctrl);
        consider(closed_obj, result.closed_trials, result.closed_values, DiscrepancyKind::Closed);
    }
    return result;
}

} // namespace mcpp
