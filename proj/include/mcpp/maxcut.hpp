#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "mcpp/objective.hpp"
#include "mcpp/solver.hpp"
#include "mcpp/trials.hpp"

namespace mcpp {

/// Edge-weighted undirected graph with CSR adjacency for row traversal.
/// Duplicate edges are merged by summing weights; self-loops are rejected.
struct Graph {
    struct Edge {
        int u = 0, v = 0; // 0-based, u < v
        double w = 0.0;
    };

    int vertex_count = 0;
    std::vector<Edge> edges;
    double total_weight = 0.0;

    // CSR over both directions
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> weight;

    int degree(int v) const { return row_ptr[static_cast<size_t>(v) + 1] - row_ptr[static_cast<size_t>(v)]; }
};

Graph make_graph(int vertex_count, std::vector<Graph::Edge> edges);

/// Parses the G-Set text format: "|V| |E|" then |E| lines "i j w" with
/// 1-based endpoints. Throws std::runtime_error carrying the line number
/// on malformed input.
Graph parse_gset(std::istream& in);
Graph parse_gset(const std::string& text);
Graph load_gset(const std::string& path);

/// Sum of weights over edges whose endpoints carry different labels.
double cut_value(const Graph& g, std::span<const int> labels);

/// The cut objective as a multiple-choice problem: m = |V| blocks of size k,
/// f(x) = -sum_{i<j} w_ij (1 - x_i . x_j). The gradient over block v is the
/// row v of P W, accumulated from the sparse adjacency in O(k deg(v)).
class MaxKCutObjective : public Objective {
public:
    MaxKCutObjective(const Graph& g, int k);

    const Partition& partition() const override { return partition_; }
    double value(std::span<const double> y) const override;
    void block_gradients(std::span<const double> y, std::span<double> phi) const override;
    void block_gradient(std::span<const double> y, int j, std::span<double> phi_j) const override;

    const Graph& graph() const { return graph_; }
    int k() const { return k_; }

private:
    const Graph& graph_;
    int k_;
    Partition partition_;
};

struct MaxCutResult {
    int k = 0;
    std::vector<TrialResult> trials;
    int best_trial = 0;
    double best_cut = 0.0;
    std::vector<int> best_labels;
};

/// Independent seeded trials; the report keeps every trial and the best cut
/// (ties resolved toward the lowest trial index).
MaxCutResult solve_maxkcut(const Graph& g, int k, int trials, const AnnealSchedule& schedule,
                           const StepController& ctrl, uint64_t seed);

} // namespace mcpp
