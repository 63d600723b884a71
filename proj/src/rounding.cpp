#include "mcpp/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mcpp {

std::vector<double> ExtendedRounding::to_vector(const Partition& p) const {
    std::vector<double> v(static_cast<size_t>(p.size()), 0.0);
    for (int j = 0; j < p.num_blocks(); ++j) {
        const auto& a = support[static_cast<size_t>(j)];
        const double val = 1.0 / static_cast<double>(a.size());
        for (int i : a)
            v[static_cast<size_t>(p.offset(j) + i)] = val;
    }
    return v;
}

std::vector<double> BooleanSolution::to_vector(const Partition& p) const {
    std::vector<double> v(static_cast<size_t>(p.size()), 0.0);
    for (int j = 0; j < p.num_blocks(); ++j)
        v[static_cast<size_t>(p.offset(j) + chosen[static_cast<size_t>(j)])] = 1.0;
    return v;
}

ExtendedRounding round_to_extended(const Partition& p, std::span<const double> y) {
    ExtendedRounding result;
    result.support.resize(static_cast<size_t>(p.num_blocks()));
    for (int j = 0; j < p.num_blocks(); ++j) {
        const int off = p.offset(j);
        const int d = p.block_size(j);
        double eta = y[static_cast<size_t>(off)];
        for (int i = 1; i < d; ++i)
            eta = std::max(eta, y[static_cast<size_t>(off + i)]);
        int r = static_cast<int>(std::floor(1.0 / eta + 0.5));
        r = std::clamp(r, 1, d);

        // indices of the r largest entries, ties by lowest index
        std::vector<int> idx(static_cast<size_t>(d));
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
            return y[static_cast<size_t>(off + a)] > y[static_cast<size_t>(off + b)];
        });
        std::vector<int> a(idx.begin(), idx.begin() + r);
        std::sort(a.begin(), a.end());
        result.support[static_cast<size_t>(j)] = std::move(a);
    }
    return result;
}

double rounding_distance(const Partition& p, std::span<const double> y,
                         const ExtendedRounding& r) {
    double dist = 0.0;
    std::vector<double> v = r.to_vector(p);
    for (size_t i = 0; i < v.size(); ++i)
        dist = std::max(dist, std::abs(v[i] - y[i]));
    return dist;
}

} // namespace mcpp
