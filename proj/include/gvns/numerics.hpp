#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gvns/grid.hpp"

namespace gvns {

// Pairwise summation: halves recursively down to blocks of 64, summed left to
// right. The tree depends only on the length, so results are reproducible.
double pairwise_sum(std::span<const double> a);

// Multi-indices alpha in N^d with |alpha| <= M, ordered by degree then
// lexicographically (axis 0 most significant).
std::vector<Index3> multi_indices(int d, int M);

// v^alpha at every velocity node (flat velocity index).
std::vector<double> velocity_monomial(const PhaseGrid& g, const Index3& alpha);

// Trapezoid running integral of y over t; out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> t, std::span<const double> y);

}  // namespace gvns
