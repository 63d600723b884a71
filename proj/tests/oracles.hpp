#pragma once

// Independent oracles used by the unit and acceptance suites. Everything in
// here deliberately uses the slow, direct definition of each quantity and
// stays off the library's optimized code paths.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mcpp/maxcut.hpp"
#include "mcpp/polynomial.hpp"
#include "mcpp/random.hpp"
#include "mcpp/stardisc.hpp"

namespace oracles {

// Brute-force MAX-k-CUT optimum by enumerating all k^|V| assignments.
inline double brute_force_max_cut(const mcpp::Graph& g, int k) {
    std::vector<int> labels(static_cast<size_t>(g.vertex_count), 0);
    double best = -std::numeric_limits<double>::infinity();
    for (;;) {
        best = std::max(best, mcpp::cut_value(g, labels));
        int v = 0;
        while (v < g.vertex_count && ++labels[static_cast<size_t>(v)] == k) {
            labels[static_cast<size_t>(v)] = 0;
            ++v;
        }
        if (v == g.vertex_count)
            return best;
    }
}

// Dense MAX-k-CUT gradient straight from the definition
// f = -sum_{i<j} w_ij (1 - y_i . y_j).
inline std::vector<double> dense_maxcut_gradient(const mcpp::Graph& g, int k,
                                                 const std::vector<double>& y) {
    std::vector<double> w(static_cast<size_t>(g.vertex_count) * static_cast<size_t>(g.vertex_count),
                          0.0);
    for (const auto& e : g.edges) {
        w[static_cast<size_t>(e.u) * static_cast<size_t>(g.vertex_count) + static_cast<size_t>(e.v)] += e.w;
        w[static_cast<size_t>(e.v) * static_cast<size_t>(g.vertex_count) + static_cast<size_t>(e.u)] += e.w;
    }
    std::vector<double> grad(y.size(), 0.0);
    for (int i = 0; i < g.vertex_count; ++i)
        for (int j = 0; j < g.vertex_count; ++j)
            for (int r = 0; r < k; ++r)
                grad[static_cast<size_t>(i * k + r)] +=
                    w[static_cast<size_t>(i) * static_cast<size_t>(g.vertex_count) + static_cast<size_t>(j)] *
                    y[static_cast<size_t>(j * k + r)];
    return grad;
}

// Naive discrepancy-surrogate gradient, directly expanding the per-entry
// sums and products (O(N^2 d^2) for the alpha part).
inline std::vector<double> naive_stardisc_gradient(const mcpp::GridIndex& grid,
                                                   mcpp::DiscrepancyKind kind,
                                                   const std::vector<double>& y) {
    const int n_pts = grid.count;
    const int d = grid.dimension;
    const int len = (kind == mcpp::DiscrepancyKind::Open) ? n_pts + 1 : n_pts;
    std::vector<double> grad(static_cast<size_t>(len) * static_cast<size_t>(d));

    auto z_entry = [&](int point, int dim) {
        const int r = grid.rank[static_cast<size_t>(point)][static_cast<size_t>(dim)];
        const int from = (kind == mcpp::DiscrepancyKind::Open) ? r + 1 : r; // 1-based position
        double s = 0.0;
        for (int p = from; p <= len; ++p)
            s += y[static_cast<size_t>(dim * len + p - 1)];
        return s;
    };
    auto b_entry = [&](int dim) {
        double s = 0.0;
        for (int p = 1; p <= len; ++p)
            s += y[static_cast<size_t>(dim * len + p - 1)] * grid.sorted_value(dim, p);
        return s;
    };

    for (int j = 0; j < d; ++j) {
        for (int i = 1; i <= len; ++i) {
            double dnu = grid.sorted_value(j, i);
            for (int jp = 0; jp < d; ++jp)
                if (jp != j)
                    dnu *= b_entry(jp);
            double dalpha = 0.0;
            for (int point = 0; point < n_pts; ++point) {
                const int r = grid.rank[static_cast<size_t>(point)][static_cast<size_t>(j)];
                const bool counted =
                    (kind == mcpp::DiscrepancyKind::Open) ? (r < i) : (r <= i);
                if (!counted)
                    continue;
                double prod = 1.0;
                for (int jp = 0; jp < d; ++jp)
                    if (jp != j)
                        prod *= z_entry(point, jp);
                dalpha += prod;
            }
            const double entry = (kind == mcpp::DiscrepancyKind::Open)
                                     ? dalpha / n_pts - dnu  // gradient of -delta
                                     : dnu - dalpha / n_pts; // gradient of -delta-bar
            grad[static_cast<size_t>(j * len + i - 1)] = entry;
        }
    }
    return grad;
}

// Maximum of the surrogate over all Boolean points, by enumeration.
inline double enumerate_surrogate_max(const mcpp::Objective& obj) {
    const mcpp::Partition& p = obj.partition();
    std::vector<int> chosen(static_cast<size_t>(p.num_blocks()), 0);
    std::vector<double> x(static_cast<size_t>(p.size()), 0.0);
    double best = -std::numeric_limits<double>::infinity();
    for (;;) {
        for (int j = 0; j < p.num_blocks(); ++j)
            for (int i = 0; i < p.block_size(j); ++i)
                x[static_cast<size_t>(p.offset(j) + i)] =
                    (i == chosen[static_cast<size_t>(j)]) ? 1.0 : 0.0;
        best = std::max(best, -obj.value(x)); // f = -surrogate
        int j = 0;
        while (j < p.num_blocks() && ++chosen[static_cast<size_t>(j)] == p.block_size(j)) {
            chosen[static_cast<size_t>(j)] = 0;
            ++j;
        }
        if (j == p.num_blocks())
            return best;
    }
}

inline mcpp::PointSet random_point_set(int n_pts, int dim, mcpp::SplitMix64& rng) {
    mcpp::PointSet pts;
    pts.count = n_pts;
    pts.dimension = dim;
    pts.coords.reserve(static_cast<size_t>(n_pts) * static_cast<size_t>(dim));
    for (int i = 0; i < n_pts * dim; ++i)
        pts.coords.push_back(rng.uniform() * 0.999); // keep strictly below 1
    return pts;
}

inline mcpp::Graph random_graph(int n_vertices, double edge_prob, mcpp::SplitMix64& rng,
                                bool signed_weights = false) {
    std::vector<mcpp::Graph::Edge> edges;
    for (int u = 0; u < n_vertices; ++u)
        for (int v = u + 1; v < n_vertices; ++v)
            if (rng.uniform() < edge_prob) {
                const double w = signed_weights ? (rng.uniform() < 0.5 ? -1.0 : 1.0) : 1.0;
                edges.push_back({u, v, w});
            }
    return mcpp::make_graph(n_vertices, std::move(edges));
}

// Random multilinear polynomial objective with linear and cross-block
// quadratic terms.
inline mcpp::PolynomialObjective random_polynomial(const mcpp::Partition& p,
                                                   mcpp::SplitMix64& rng) {
    std::vector<mcpp::Term> terms;
    for (int v = 0; v < p.size(); ++v)
        terms.push_back({2.0 * rng.uniform() - 1.0, {v}});
    for (int a = 0; a < p.num_blocks(); ++a)
        for (int b = a + 1; b < p.num_blocks(); ++b)
            for (int i = 0; i < p.block_size(a); ++i)
                for (int l = 0; l < p.block_size(b); ++l)
                    terms.push_back(
                        {2.0 * rng.uniform() - 1.0, {p.offset(a) + i, p.offset(b) + l}});
    return mcpp::PolynomialObjective(p, std::move(terms));
}

} // namespace oracles
