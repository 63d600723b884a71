#include "mcpp/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace mcpp {

void softmax(std::span<const double> z, double beta, std::span<double> out) {
    if (z.empty())
        throw std::invalid_argument("softmax: empty input");
    if (!(beta > 0.0))
        throw std::invalid_argument("softmax: beta must be positive");
    double zmax = z[0];
    for (double v : z) {
        if (!std::isfinite(v))
            throw std::invalid_argument("softmax: non-finite input entry");
        zmax = std::max(zmax, v);
    }
    double sum = 0.0;
    for (size_t i = 0; i < z.size(); ++i) {
        out[i] = std::exp(beta * (z[i] - zmax));
        sum += out[i];
    }
    for (size_t i = 0; i < z.size(); ++i)
        out[i] /= sum;
}

void hardmax(std::span<const double> z, std::span<double> out) {
    if (z.empty())
        throw std::invalid_argument("hardmax: empty input");
    double zmax = z[0];
    for (double v : z) {
        if (!std::isfinite(v))
            throw std::invalid_argument("hardmax: non-finite input entry");
        zmax = std::max(zmax, v);
    }
    int r = 0;
    for (double v : z)
        if (v == zmax)
            ++r;
    for (size_t i = 0; i < z.size(); ++i)
        out[i] = (z[i] == zmax) ? 1.0 / r : 0.0;
}

void rhs(const Objective& obj, std::span<const double> y, double temperature,
         std::span<double> phi, std::span<double> out) {
    if (!(temperature > 0.0))
        throw std::invalid_argument("rhs: temperature must be positive");
    const Partition& p = obj.partition();
    obj.block_gradients(y, phi);
    const double beta = 1.0 / temperature;
    for (int j = 0; j < p.num_blocks(); ++j) {
        const int off = p.offset(j);
        const int d = p.block_size(j);
        // reuse phi as the negated softmax argument
        for (int i = 0; i < d; ++i)
            phi[static_cast<size_t>(off + i)] = -phi[static_cast<size_t>(off + i)];
        softmax(phi.subspan(static_cast<size_t>(off), static_cast<size_t>(d)), beta,
                out.subspan(static_cast<size_t>(off), static_cast<size_t>(d)));
        for (int i = 0; i < d; ++i)
            out[static_cast<size_t>(off + i)] -= y[static_cast<size_t>(off + i)];
    }
}

std::vector<double> rhs(const Objective& obj, std::span<const double> y, double temperature) {
    std::vector<double> phi(y.size()), out(y.size());
    rhs(obj, y, temperature, phi, out);
    return out;
}

double norm_inf(std::span<const double> v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

double norm_2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return std::sqrt(s);
}

std::vector<double> block_sums(const Partition& p, std::span<const double> y) {
    std::vector<double> sums(static_cast<size_t>(p.num_blocks()), 0.0);
    for (int j = 0; j < p.num_blocks(); ++j)
        for (int i = 0; i < p.block_size(j); ++i)
            sums[static_cast<size_t>(j)] += y[static_cast<size_t>(p.offset(j) + i)];
    return sums;
}

} // namespace mcpp
