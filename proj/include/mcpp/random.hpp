#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "mcpp/partition.hpp"

namespace mcpp {

/// Minimal splittable counter-based generator. Bit-identical output across
/// platforms, unlike the distributions of <random>.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform draw in (0, 1].
    double uniform() {
        return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
    }

private:
    uint64_t state_;
};

/// Derives the seed of trial t from a base seed.
inline uint64_t trial_seed(uint64_t base_seed, int trial) {
    SplitMix64 g(base_seed + static_cast<uint64_t>(trial));
    return g.next();
}

/// Uniform sample from the interior of each block simplex (symmetric
/// Dirichlet with unit concentration). Deterministic given the seed.
inline std::vector<double> sample_initial(const Partition& p, uint64_t seed) {
    SplitMix64 g(seed);
    std::vector<double> y(static_cast<size_t>(p.size()));
    for (int j = 0; j < p.num_blocks(); ++j) {
        const int off = p.offset(j);
        const int d = p.block_size(j);
        double sum = 0.0;
        for (int i = 0; i < d; ++i) {
            const double e = -std::log(g.uniform());
            y[static_cast<size_t>(off + i)] = e;
            sum += e;
        }
        if (sum <= 0.0) { // all draws hit u == 1; fall back to uniform
            for (int i = 0; i < d; ++i)
                y[static_cast<size_t>(off + i)] = 1.0 / d;
        } else {
            for (int i = 0; i < d; ++i)
                y[static_cast<size_t>(off + i)] /= sum;
        }
    }
    return y;
}

} // namespace mcpp
