#pragma once

#include <istream>
#include <span>
#include <string>
#include <vector>

#include "mcpp/objective.hpp"
#include "mcpp/solver.hpp"
#include "mcpp/trials.hpp"

namespace mcpp {

/// N points in [0,1)^d, row-major.
struct PointSet {
    int count = 0;     // N
    int dimension = 0; // d
    std::vector<double> coords;

    double coord(int i, int j) const {
        return coords[static_cast<size_t>(i) * static_cast<size_t>(dimension) + static_cast<size_t>(j)];
    }
};

/// Parses "N d" followed by N rows of d reals in [0,1).
PointSet parse_pointset(std::istream& in);
PointSet parse_pointset(const std::string& text);
PointSet load_pointset(const std::string& path);

/// Per-dimension sorted coordinate grid with the rank permutation.
/// sorted[j] holds the N point coordinates of dimension j in non-decreasing
/// order plus the appended value 1; rank[i][j] (1-based, in [1,N]) is the
/// position of point i's j-th coordinate in that order. Ties keep original
/// point order, so ranks restricted to points are injective.
struct GridIndex {
    int count = 0;
    int dimension = 0;
    std::vector<std::vector<double>> sorted; // per dimension, length N+1
    std::vector<std::vector<int>> rank;      // [point][dimension], 1-based

    double sorted_value(int j, int pos1) const { // pos1 in [1, N+1]
        return sorted[static_cast<size_t>(j)][static_cast<size_t>(pos1 - 1)];
    }
};

GridIndex preprocess(const PointSet& u);

/// Local discrepancy with the half-open box: D(u) = vol(u) - |[0,u) ∩ U|/N.
double eval_D(std::span<const double> u, const PointSet& pts);
/// Closed-box counterpart: Dbar(u) = |[0,u] ∩ U|/N - vol(u).
double eval_Dbar(std::span<const double> u, const PointSet& pts);

/// Which of the two box conventions an objective encodes.
enum class DiscrepancyKind {
    Open,  // maximize delta over blocks of size N+1 (upper-right corners)
    Closed // maximize delta-bar over blocks of size N (lower-left corners)
};

/// The discrepancy surrogate as a multiple-choice objective over d blocks.
/// The solver minimizes f = -delta (resp. -delta-bar). Gradients run in
/// O(Nd) using per-dimension suffix sums of the state, prefix/suffix
/// products across dimensions (no division), and rank-ordered partial sums.
class DiscrepancyObjective : public Objective {
public:
    DiscrepancyObjective(const GridIndex& grid, DiscrepancyKind kind);

    const Partition& partition() const override { return partition_; }
    double value(std::span<const double> y) const override;
    void block_gradients(std::span<const double> y, std::span<double> phi) const override;

    DiscrepancyKind kind() const { return kind_; }

    /// Decodes a Boolean solution into the grid point it selects.
    std::vector<double> decode(const BooleanSolution& x) const;

private:
    const GridIndex& grid_;
    DiscrepancyKind kind_;
    int block_len_; // N+1 (Open) or N (Closed)
    Partition partition_;
};

/// Exact d*_inf(U) by full enumeration of both critical grids.
/// Refuses when (N+1)^d exceeds max_states (default 10^7).
double exact_star_discrepancy(const PointSet& pts, double max_states = 1e7);

struct StarDiscResult {
    double best_value = 0.0;      // exact local discrepancy at the decoded point
    std::vector<double> best_point;
    DiscrepancyKind best_kind = DiscrepancyKind::Open;
    int best_trial = 0;
    std::vector<TrialResult> open_trials;
    std::vector<TrialResult> closed_trials;
    std::vector<double> open_values;   // exact D at each trial's decoded point
    std::vector<double> closed_values; // exact Dbar likewise
};

/// Controller with the size-scaled error tolerance Theta = 1e-6 N d.
StepController default_stardisc_controller(const PointSet& pts);
AnnealSchedule default_stardisc_schedule();

/// Anneals both surrogate problems, decodes each trial's solution to a grid
/// point, and re-evaluates the local discrepancy exactly there, so the
/// reported value is always a valid lower bound for d*_inf(U).
StarDiscResult solve_stardisc(const PointSet& pts, int trials, const AnnealSchedule& schedule,
                              const StepController& ctrl, uint64_t seed);

} // namespace mcpp
