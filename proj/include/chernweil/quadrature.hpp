#pragma once

#include <utility>
#include <vector>

namespace chernweil {

struct QuadratureRule {
    std::vector<double> nodes;    // in (0,1)
    std::vector<double> weights;  // sum to 1
};

/// Gauss-Legendre rule with n points mapped to [0,1]; exact for polynomials of
/// degree <= 2n-1. Rules are cached.
const QuadratureRule& gauss_legendre_01(int n);

/// Smallest node count whose rule integrates the given polynomial degree
/// exactly.
int nodes_for_degree(int poly_degree);

}  // namespace chernweil
