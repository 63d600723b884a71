#pragma once

#include <span>
#include <vector>

#include "mcpp/partition.hpp"

namespace mcpp {

/// Objective contract for multiple-choice problems.
///
/// An implementation provides the value f(y) of the multilinear extension at
/// any point of [0,1]^n and the block gradients Phi, where Phi over block j
/// holds the partial derivatives of f with respect to the variables of that
/// block. The objective must be affine in each block:
///
///     f(y) = y_j . Phi_j(y) + f(y with block j zeroed)
///
/// and Phi_j(y) must not depend on the entries of block j itself.
/// Implementations must be immutable after construction so a single
/// objective can be shared read-only across concurrent solver runs.
class Objective {
public:
    virtual ~Objective() = default;

    virtual const Partition& partition() const = 0;

    /// Multilinear-extension value at y in [0,1]^n.
    virtual double value(std::span<const double> y) const = 0;

    /// Writes the full flat gradient vector Phi(y) into phi (length n).
    virtual void block_gradients(std::span<const double> y, std::span<double> phi) const = 0;

    /// Writes only Phi over block j into phi_j (length d_j). The default
    /// computes the full gradient and copies the slice; frontends with
    /// sparse structure override this.
    virtual void block_gradient(std::span<const double> y, int j, std::span<double> phi_j) const {
        const Partition& p = partition();
        std::vector<double> full(static_cast<size_t>(p.size()));
        block_gradients(y, full);
        const int off = p.offset(j);
        for (int i = 0; i < p.block_size(j); ++i)
            phi_j[static_cast<size_t>(i)] = full[static_cast<size_t>(off + i)];
    }
};

} // namespace mcpp
