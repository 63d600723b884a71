#pragma once

#include <span>
#include <vector>

#include "mcpp/objective.hpp"

namespace mcpp {

/// Stabilized softmax: out_i = exp(beta z_i) / sum_k exp(beta z_k).
/// Shifts by the maximum entry before exponentiation, so arbitrarily large
/// beta (small temperatures) cannot overflow. Throws on non-finite input.
void softmax(std::span<const double> z, double beta, std::span<double> out);

/// beta -> infinity limit of softmax: 1/r on the argmax set (exact-tie
/// comparison, r = number of maximal entries), 0 elsewhere.
void hardmax(std::span<const double> z, std::span<double> out);

/// Right-hand side of the annealed system: over each block j,
///   F_j = -y_j + softmax(-Phi_j(y), 1/T).
/// phi is scratch of length n. Per-block sums of F vanish whenever the
/// block sums of y equal 1.
void rhs(const Objective& obj, std::span<const double> y, double temperature,
         std::span<double> phi, std::span<double> out);

/// Convenience allocating overload.
std::vector<double> rhs(const Objective& obj, std::span<const double> y, double temperature);

double norm_inf(std::span<const double> v);
double norm_2(std::span<const double> v);

/// Per-block sums of a flat vector.
std::vector<double> block_sums(const Partition& p, std::span<const double> y);

} // namespace mcpp
