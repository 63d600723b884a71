#include "mcpp/maxcut.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mcpp {

Graph make_graph(int vertex_count, std::vector<Graph::Edge> edges) {
    Graph g;
    g.vertex_count = vertex_count;

    std::map<std::pair<int, int>, double> merged;
    for (const auto& e : edges) {
        if (e.u == e.v)
            throw std::runtime_error("graph: self-loop on vertex " + std::to_string(e.u + 1));
        if (e.u < 0 || e.v < 0 || e.u >= vertex_count || e.v >= vertex_count)
            throw std::runtime_error("graph: vertex index out of range");
        const std::pair<int, int> key = std::minmax(e.u, e.v);
        merged[key] += e.w;
    }

    g.edges.reserve(merged.size());
    for (const auto& [key, w] : merged) {
        g.edges.push_back({key.first, key.second, w});
        g.total_weight += w;
    }

    // CSR, both directions
    g.row_ptr.assign(static_cast<size_t>(vertex_count) + 1, 0);
    for (const auto& e : g.edges) {
        ++g.row_ptr[static_cast<size_t>(e.u) + 1];
        ++g.row_ptr[static_cast<size_t>(e.v) + 1];
    }
    for (int v = 0; v < vertex_count; ++v)
        g.row_ptr[static_cast<size_t>(v) + 1] += g.row_ptr[static_cast<size_t>(v)];
    g.col.resize(static_cast<size_t>(g.row_ptr.back()));
    g.weight.resize(g.col.size());
    std::vector<int> cursor(g.row_ptr.begin(), g.row_ptr.end() - 1);
    for (const auto& e : g.edges) {
        g.col[static_cast<size_t>(cursor[static_cast<size_t>(e.u)])] = e.v;
        g.weight[static_cast<size_t>(cursor[static_cast<size_t>(e.u)]++)] = e.w;
        g.col[static_cast<size_t>(cursor[static_cast<size_t>(e.v)])] = e.u;
        g.weight[static_cast<size_t>(cursor[static_cast<size_t>(e.v)]++)] = e.w;
    }
    return g;
}

Graph parse_gset(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok)
                return true; // skip blank lines
        }
        return false;
    };

    if (!next_line())
        throw std::runtime_error("gset parse: empty input");
    int nv = 0;
    long ne = 0;
    {
        std::istringstream header(line);
        if (!(header >> nv >> ne) || nv <= 0 || ne < 0)
            throw std::runtime_error("gset parse: bad header at line " + std::to_string(line_no));
    }

    std::vector<Graph::Edge> edges;
    edges.reserve(static_cast<size_t>(ne));
    for (long e = 0; e < ne; ++e) {
        if (!next_line())
            throw std::runtime_error("gset parse: expected " + std::to_string(ne) +
                                     " edges, input ended at line " + std::to_string(line_no));
        std::istringstream row(line);
        int i = 0, j = 0;
        double w = 0.0;
        if (!(row >> i >> j >> w))
            throw std::runtime_error("gset parse: malformed edge at line " + std::to_string(line_no));
        if (i < 1 || j < 1 || i > nv || j > nv)
            throw std::runtime_error("gset parse: vertex index out of range at line " +
                                     std::to_string(line_no));
        if (i == j)
            throw std::runtime_error("gset parse: self-loop at line " + std::to_string(line_no));
        edges.push_back({i - 1, j - 1, w});
    }
    return make_graph(nv, std::move(edges));
}

Graph parse_gset(const std::string& text) {
    std::istringstream in(text);
    return parse_gset(in);
}

Graph load_gset(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file: " + path);
    return parse_gset(in);
}

double cut_value(const Graph& g, std::span<const int> labels) {
    double cut = 0.0;
    for (const auto& e : g.edges)
        if (labels[static_cast<size_t>(e.u)] != labels[static_cast<size_t>(e.v)])
            cut += e.w;
    return cut;
}

MaxKCutObjective::MaxKCutObjective(const Graph& g, int k)
    : graph_(g), k_(k), partition_(Partition::uniform(g.vertex_count, k)) {
    if (k < 2)
        throw std::invalid_argument("MaxKCutObjective: k must be at least 2");
}

double MaxKCutObjective::value(std::span<const double> y) const {
    // f = -w_tot + sum_{i<j} w_ij y_i . y_j
    double f = -graph_.total_weight;
    for (const auto& e : graph_.edges) {
        double dot = 0.0;
        for (int r = 0; r < k_; ++r)
            dot += y[static_cast<size_t>(e.u * k_ + r)] * y[static_cast<size_t>(e.v * k_ + r)];
        f += e.w * dot;
    }
    return f;
}

void MaxKCutObjective::block_gradients(std::span<const double> y, std::span<double> phi) const {
    for (size_t i = 0; i < phi.size(); ++i)
        phi[i] = 0.0;
    for (const auto& e : graph_.edges) {
        for (int r = 0; r < k_; ++r) {
            phi[static_cast<size_t>(e.u * k_ + r)] += e.w * y[static_cast<size_t>(e.v * k_ + r)];
            phi[static_cast<size_t>(e.v * k_ + r)] += e.w * y[static_cast<size_t>(e.u * k_ + r)];
        }
    }
}

void MaxKCutObjective::block_gradient(std::span<const double> y, int j,
                                      std::span<double> phi_j) const {
    for (int r = 0; r < k_; ++r)
        phi_j[static_cast<size_t>(r)] = 0.0;
    for (int idx = graph_.row_ptr[static_cast<size_t>(j)];
         idx < graph_.row_ptr[static_cast<size_t>(j) + 1]; ++idx) {
        const int nb = graph_.col[static_cast<size_t>(idx)];
        const double w = graph_.weight[static_cast<size_t>(idx)];
        for (int r = 0; r < k_; ++r)
            phi_j[static_cast<size_t>(r)] += w * y[static_cast<size_t>(nb * k_ + r)];
    }
}

MaxCutResult solve_maxkcut(const Graph& g, int k, int trials, const AnnealSchedule& schedule,
                           const StepController& ctrl, uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("solve_maxkcut: trials must be at least 1");
    MaxKCutObjective obj(g, k);
    MaxCutResult result;
    result.k = k;
    result.trials = run_trials(obj, trials, seed, schedule, ctrl);
    result.best_trial = best_trial(result.trials);
    const SolveTrace& best = result.trials[static_cast<size_t>(result.best_trial)].trace;
    result.best_labels = best.solution.chosen;
    result.best_cut = -best.value;
    return result;
}

} // namespace mcpp
