#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "mcpp/objective.hpp"

namespace mcpp {

/// Reformulates an unconstrained pseudo-Boolean problem over n free
/// variables as a multiple-choice objective over 2n variables with n blocks
/// of size 2: block j holds (x_j, 1 - x_j). The gradient over block j is
/// (df/dx_j, 0), so the induced dynamics of the first block entry follow the
/// scalar tanh form.
class UnconstrainedObjective : public Objective {
public:
    using ValueFn = std::function<double(std::span<const double>)>;
    using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

    UnconstrainedObjective(int n, ValueFn value, GradientFn gradient)
        : partition_(Partition::uniform(n, 2)),
          n_(n),
          value_(std::move(value)),
          gradient_(std::move(gradient)) {}

    const Partition& partition() const override { return partition_; }

    double value(std::span<const double> y) const override {
        std::vector<double> x = project(y);
        return value_(x);
    }

    void block_gradients(std::span<const double> y, std::span<double> phi) const override {
        std::vector<double> x = project(y);
        std::vector<double> g(static_cast<size_t>(n_));
        gradient_(x, g);
        for (int j = 0; j < n_; ++j) {
            phi[static_cast<size_t>(2 * j)] = g[static_cast<size_t>(j)];
            phi[static_cast<size_t>(2 * j + 1)] = 0.0;
        }
    }

private:
    // first entry of each block carries the original variable
    std::vector<double> project(std::span<const double> y) const {
        std::vector<double> x(static_cast<size_t>(n_));
        for (int j = 0; j < n_; ++j)
            x[static_cast<size_t>(j)] = y[static_cast<size_t>(2 * j)];
        return x;
    }

    Partition partition_;
    int n_;
    ValueFn value_;
    GradientFn gradient_;
};

} // namespace mcpp
