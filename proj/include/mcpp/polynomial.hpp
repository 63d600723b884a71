#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "mcpp/objective.hpp"

namespace mcpp {

/// One monomial: coeff * prod of the listed flat variable indices.
/// A term may touch each block at most once; that keeps the objective
/// affine per block and the multilinear extension well defined.
struct Term {
    double coeff = 0.0;
    std::vector<int> vars;
};

/// Multilinear polynomial objective built programmatically from terms.
/// Used by the validation machinery and as the generic test objective.
class PolynomialObjective : public Objective {
public:
    PolynomialObjective(Partition partition, std::vector<Term> terms)
        : partition_(std::move(partition)), terms_(std::move(terms)) {
        std::vector<int> block_of(static_cast<size_t>(partition_.size()));
        for (int j = 0; j < partition_.num_blocks(); ++j)
            for (int i = 0; i < partition_.block_size(j); ++i)
                block_of[static_cast<size_t>(partition_.offset(j) + i)] = j;
        for (const Term& t : terms_) {
            std::vector<bool> seen(static_cast<size_t>(partition_.num_blocks()), false);
            for (int v : t.vars) {
                if (v < 0 || v >= partition_.size())
                    throw std::invalid_argument("PolynomialObjective: variable index out of range");
                const int b = block_of[static_cast<size_t>(v)];
                if (seen[static_cast<size_t>(b)])
                    throw std::invalid_argument(
                        "PolynomialObjective: term touches a block twice, not affine per block");
                seen[static_cast<size_t>(b)] = true;
            }
        }
    }

    const Partition& partition() const override { return partition_; }

    double value(std::span<const double> y) const override {
        double f = 0.0;
        for (const Term& t : terms_) {
            double prod = t.coeff;
            for (int v : t.vars)
                prod *= y[static_cast<size_t>(v)];
            f += prod;
        }
        return f;
    }

    void block_gradients(std::span<const double> y, std::span<double> phi) const override {
        for (size_t i = 0; i < phi.size(); ++i)
            phi[i] = 0.0;
        for (const Term& t : terms_) {
            for (size_t k = 0; k < t.vars.size(); ++k) {
                double prod = t.coeff;
                for (size_t l = 0; l < t.vars.size(); ++l)
                    if (l != k)
                        prod *= y[static_cast<size_t>(t.vars[l])];
                phi[static_cast<size_t>(t.vars[k])] += prod;
            }
        }
    }

    const std::vector<Term>& terms() const { return terms_; }

private:
    Partition partition_;
    std::vector<Term> terms_;
};

} // namespace mcpp
