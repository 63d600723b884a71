#pragma once

#include <span>
#include <vector>

#include "mcpp/partition.hpp"

namespace mcpp {

/// A point of the extended discrete set: per block, a nonempty support set
/// A_j and the represented vector chi^{A_j} / |A_j|.
struct ExtendedRounding {
    std::vector<std::vector<int>> support; // per block, sorted local indices

    std::vector<double> to_vector(const Partition& p) const;
};

/// One chosen index per block, i.e. a feasible Boolean point.
struct BooleanSolution {
    std::vector<int> chosen; // per block, local index of the unit entry

    std::vector<double> to_vector(const Partition& p) const;
};

/// Rounds an interior state to the nearest extended point: per block,
/// eta = max entry, r = floor(1/eta + 1/2), support = indices of the
/// r largest entries (ties broken by lowest index).
ExtendedRounding round_to_extended(const Partition& p, std::span<const double> y);

/// Infinity distance between a state and an extended point.
double rounding_distance(const Partition& p, std::span<const double> y,
                         const ExtendedRounding& r);

} // namespace mcpp
